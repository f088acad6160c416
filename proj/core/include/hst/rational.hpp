#pragma once

#include <cstdint>

namespace hst {

// Small exact fraction used for threshold comparisons such as count/k > alpha.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  // Best approximation with denominator <= max_den (continued fractions).
  // Decimal inputs such as 0.4 or 0.3 recover 2/5 and 3/10 exactly.
  static Rational approximate(double v, std::int64_t max_den = 1000000);

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }

  // count / k > *this, in integers.
  bool less_than_ratio(std::int64_t count, std::int64_t k) const {
    return count * den > num * k;
  }
};

}  // namespace hst
