#include "hst/rational.hpp"

#include <algorithm>
#include <cmath>

#include "hst/errors.hpp"

namespace hst {

Rational Rational::approximate(double v, std::int64_t max_den) {
  if (!std::isfinite(v)) throw RangeError("Rational::approximate: non-finite value");
  const bool neg = v < 0.0;
  double x = std::abs(v);
  // Convergents h/k of the continued fraction of x.
  std::int64_t h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double rem = x;
  for (int it = 0; it < 64; ++it) {
    const double a_d = std::floor(rem);
    if (a_d > 9.0e15) break;
    const auto a = static_cast<std::int64_t>(a_d);
    const std::int64_t h2 = a * h1 + h0;
    const std::int64_t k2 = a * k1 + k0;
    if (k2 > max_den) break;
    h0 = h1; h1 = h2; k0 = k1; k1 = k2;
    const double approx = static_cast<double>(h1) / static_cast<double>(k1);
    if (std::abs(approx - x) <= 1e-15 * std::max(1.0, x)) break;
    const double frac = rem - a_d;
    if (frac < 1e-18) break;
    rem = 1.0 / frac;
  }
  if (k1 == 0) return {neg ? -h0 : h0, k0};
  return {neg ? -h1 : h1, k1};
}

}  // namespace hst
