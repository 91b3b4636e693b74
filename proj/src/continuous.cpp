#include "multipeak/continuous.hpp"

namespace multipeak {

FractionalPoint FractionalPoint::indicator(const ItemSet& s) {
  FractionalPoint p;
  p.coords.assign(s.universe(), 0.0);
  s.for_each([&](std::size_t i) { p.coords[i] = 1.0; });
  return p;
}

void FractionalPoint::check_unit_cube() const {
  for (double c : coords) {
    if (!(c >= 0.0 && c <= 1.0)) {
      throw ValidationError("coordinate outside [0,1]");
    }
  }
}

double continuous_base(const MultiPeakValuation& v, const FractionalPoint& x) {
  return continuous_base<double>(v, std::span<const double>(x.coords));
}

double continuous_peak(const MultiPeakValuation& v, std::size_t peak_index,
                       const FractionalPoint& x) {
  return continuous_peak<double>(v, peak_index, std::span<const double>(x.coords));
}

bool in_peak_region(const MultiPeakValuation& v, std::size_t peak_index,
                    const FractionalPoint& x) {
  return in_peak_region<double>(v, peak_index, std::span<const double>(x.coords));
}

double glued_eval(const MultiPeakValuation& v, const FractionalPoint& x) {
  return glued_eval<double>(v, std::span<const double>(x.coords));
}

}  // namespace multipeak
