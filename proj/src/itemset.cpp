#include "multipeak/itemset.hpp"

#include <algorithm>
#include <stdexcept>

namespace multipeak {

ItemSet::ItemSet(std::size_t universe)
    : universe_(universe), words_((universe + 63) / 64, 0) {}

ItemSet ItemSet::from_indices(std::size_t universe, std::span<const std::size_t> indices) {
  ItemSet s(universe);
  for (std::size_t i : indices) s.add(i);
  return s;
}

ItemSet ItemSet::full(std::size_t universe) {
  ItemSet s(universe);
  for (auto& w : s.words_) w = ~std::uint64_t{0};
  if (universe % 64 != 0 && !s.words_.empty()) {
    s.words_.back() &= (std::uint64_t{1} << (universe % 64)) - 1;
  }
  return s;
}

std::size_t ItemSet::count() const {
  std::size_t n = 0;
  for (std::uint64_t w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

bool ItemSet::contains(std::size_t item) const {
  if (item >= universe_) throw std::out_of_range("item outside ground set");
  return (words_[item / 64] >> (item % 64)) & 1u;
}

void ItemSet::add(std::size_t item) {
  if (item >= universe_) throw std::out_of_range("item outside ground set");
  words_[item / 64] |= std::uint64_t{1} << (item % 64);
}

void ItemSet::remove(std::size_t item) {
  if (item >= universe_) throw std::out_of_range("item outside ground set");
  words_[item / 64] &= ~(std::uint64_t{1} << (item % 64));
}

void ItemSet::check_same_universe(const ItemSet& other) const {
  if (universe_ != other.universe_) {
    throw std::invalid_argument("item sets over different ground sets");
  }
}

std::size_t ItemSet::intersect_count(const ItemSet& other) const {
  check_same_universe(other);
  std::size_t n = 0;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    n += static_cast<std::size_t>(std::popcount(words_[w] & other.words_[w]));
  }
  return n;
}

std::size_t ItemSet::minus_count(const ItemSet& other) const {
  check_same_universe(other);
  std::size_t n = 0;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    n += static_cast<std::size_t>(std::popcount(words_[w] & ~other.words_[w]));
  }
  return n;
}

bool ItemSet::is_subset_of(const ItemSet& other) const {
  check_same_universe(other);
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if ((words_[w] & ~other.words_[w]) != 0) return false;
  }
  return true;
}

bool ItemSet::intersects(const ItemSet& other) const {
  check_same_universe(other);
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if ((words_[w] & other.words_[w]) != 0) return true;
  }
  return false;
}

ItemSet ItemSet::operator&(const ItemSet& other) const {
  check_same_universe(other);
  ItemSet out(universe_);
  for (std::size_t w = 0; w < words_.size(); ++w) out.words_[w] = words_[w] & other.words_[w];
  return out;
}

ItemSet ItemSet::operator|(const ItemSet& other) const {
  check_same_universe(other);
  ItemSet out(universe_);
  for (std::size_t w = 0; w < words_.size(); ++w) out.words_[w] = words_[w] | other.words_[w];
  return out;
}

ItemSet ItemSet::operator-(const ItemSet& other) const {
  check_same_universe(other);
  ItemSet out(universe_);
  for (std::size_t w = 0; w < words_.size(); ++w) out.words_[w] = words_[w] & ~other.words_[w];
  return out;
}

bool ItemSet::operator==(const ItemSet& other) const {
  return universe_ == other.universe_ && words_ == other.words_;
}

bool ItemSet::lex_less(const ItemSet& a, const ItemSet& b) {
  const auto ia = a.to_indices();
  const auto ib = b.to_indices();
  return std::lexicographical_compare(ia.begin(), ia.end(), ib.begin(), ib.end());
}

std::vector<std::size_t> ItemSet::to_indices() const {
  std::vector<std::size_t> out;
  out.reserve(count());
  for_each([&](std::size_t i) { out.push_back(i); });
  return out;
}

long closeness(const ItemSet& s, const ItemSet& a) {
  const long in = static_cast<long>(s.intersect_count(a));
  const long out = static_cast<long>(s.count()) - in;
  return in - out;
}

}  // namespace multipeak
