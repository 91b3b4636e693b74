#pragma once

#include <bit>
#include <cstdint>
#include <cstddef>
#include <span>
#include <vector>

namespace multipeak {

/// Subset of a fixed ground set {0, ..., m-1}, backed by 64-bit words.
/// Two sets may be combined only when they share the same universe size.
class ItemSet {
 public:
  ItemSet() = default;
  explicit ItemSet(std::size_t universe);

  static ItemSet from_indices(std::size_t universe, std::span<const std::size_t> indices);
  static ItemSet full(std::size_t universe);

  std::size_t universe() const { return universe_; }
  std::size_t count() const;
  bool empty() const { return count() == 0; }

  bool contains(std::size_t item) const;
  void add(std::size_t item);
  void remove(std::size_t item);

  /// |*this ∩ other|, without materializing the intersection.
  std::size_t intersect_count(const ItemSet& other) const;
  /// |*this \ other|.
  std::size_t minus_count(const ItemSet& other) const;

  bool is_subset_of(const ItemSet& other) const;
  bool intersects(const ItemSet& other) const;

  ItemSet operator&(const ItemSet& other) const;
  ItemSet operator|(const ItemSet& other) const;
  ItemSet operator-(const ItemSet& other) const;

  bool operator==(const ItemSet& other) const;

  /// Orders sets by their sorted index sequences; a strict prefix sorts first.
  /// Used for deterministic tie-breaking, not for any semantic order.
  static bool lex_less(const ItemSet& a, const ItemSet& b);

  std::vector<std::size_t> to_indices() const;

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t word = words_[w];
      while (word != 0) {
        const int bit = std::countr_zero(word);
        fn(w * 64 + static_cast<std::size_t>(bit));
        word &= word - 1;
      }
    }
  }

  std::span<const std::uint64_t> words() const { return words_; }

 private:
  void check_same_universe(const ItemSet& other) const;

  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

/// |S ∩ A| - |S \ A|. Integer-valued; compared against the rational closeness
/// threshold b by the valuation code.
long closeness(const ItemSet& s, const ItemSet& a);

}  // namespace multipeak
