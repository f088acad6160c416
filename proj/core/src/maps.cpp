#include "hst/maps.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hst/errors.hpp"

namespace hst::maps {

namespace {

bool in_unit(double v) { return v >= -kCoordTol && v <= 1.0 + kCoordTol; }

bool within(double v, double lo, double hi) {
  return v >= lo - kCoordTol && v <= hi + kCoordTol;
}

std::string fmt_point(const Point3& p) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << p.x << ", " << p.y << ", " << p.z << ")";
  return os.str();
}

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

}  // namespace

MapParams MapParams::make(double lambda0, double beta0, double sigma, double beta1) {
  MapParams p{lambda0, beta0, sigma, beta1};
  p.validate();
  return p;
}

void MapParams::validate() const {
  std::ostringstream os;
  if (!(lambda0 > 0.0 && lambda0 < 1.0 / 3.0)) os << "lambda0 must lie in (0, 1/3); ";
  if (!(beta0 > 6.0)) os << "beta0 must exceed 6; ";
  if (!(sigma > 0.0 && sigma < 1.0 / 3.0)) os << "sigma must lie in (0, 1/3); ";
  if (!(beta1 > 3.0 && beta1 < 4.0)) os << "beta1 must lie in (3, 4); ";
  auto msg = os.str();
  if (!msg.empty()) throw RangeError("invalid MapParams: " + msg);
}

std::string to_string(Region r) {
  switch (r) {
    case Region::R0: return "R0";
    case Region::R1: return "R1";
    case Region::S1: return "S1";
    case Region::S2: return "S2";
    case Region::S3: return "S3";
    case Region::Outside: return "Outside";
  }
  return "Outside";
}

double dist_max(const Point3& a, const Point3& b) {
  return std::max({std::abs(a.x - b.x), std::abs(a.y - b.y), std::abs(a.z - b.z)});
}

double dist_split(const Point3& a, const Point3& b) {
  return std::abs(a.x - b.x) + std::abs(a.y - b.y) + std::abs(a.z - b.z);
}

double flow_map(double y, int n) {
  if (y <= 0.0) return 0.0;
  const double c = std::exp(-static_cast<double>(n));
  return y / (y + (1.0 - y) * c);
}

double flow_derivative(double y) {
  const double c = std::exp(-1.0);
  const double d = y + (1.0 - y) * c;
  return c / (d * d);
}

double flow_inverse(double y) { return flow_map(y, -1); }

double flow_inverse_derivative(double y) {
  const double c = std::exp(1.0);
  const double d = y + (1.0 - y) * c;
  return c / (d * d);
}

Region horseshoe_region(const Point3& p) {
  if (!in_unit(p.x) || !in_unit(p.y) || !in_unit(p.z)) return Region::Outside;
  if (within(p.z, 0.0, 1.0 / 6.0)) return Region::R0;
  if (within(p.z, 5.0 / 6.0, 1.0)) return Region::R1;
  return Region::Outside;
}

Region planar_region(const Point3& p, const MapParams& params) {
  const double l = params.lambda0;
  if (within(p.z, 0.0, 0.0)) {
    if (within(p.x, 0.0, l) && in_unit(p.y)) return Region::S1;
    if (within(p.x, 0.75 - l, 0.75) && within(p.y, 0.0, params.sigma)) return Region::S2;
    return Region::Outside;
  }
  if (within(p.z, 5.0 / 6.0, 5.0 / 6.0) && within(p.x, 0.0, l) && in_unit(p.y)) return Region::S3;
  return Region::Outside;
}

Region region_of(const Point3& p, const MapParams& params, Domain domain) {
  return domain == Domain::Horseshoe ? horseshoe_region(p) : planar_region(p, params);
}

Point3 horseshoe_F(const Point3& p, const MapParams& params) {
  switch (horseshoe_region(p)) {
    case Region::R0:
      return {params.lambda0 * p.x, flow_map(clamp01(p.y), 1), params.beta0 * p.z};
    case Region::R1:
      return {0.75 - params.lambda0 * p.x, params.sigma * (1.0 - p.y),
              params.beta1 * (p.z - 5.0 / 6.0)};
    default:
      throw DomainError("horseshoe_F: point outside R0 u R1: " + fmt_point(p));
  }
}

int inverse_branch(const Point3& p, const MapParams& params) {
  if (!in_unit(p.y) || !in_unit(p.z)) return -1;
  const double l = params.lambda0;
  if (within(p.x, 0.0, l)) return 0;
  if (within(p.x, 0.75 - l, 0.75) && within(p.y, 0.0, params.sigma) &&
      within(p.z, 0.0, params.beta1 / 6.0))
    return 1;
  return -1;
}

Point3 horseshoe_F_inv(const Point3& p, int branch, const MapParams& params) {
  const double l = params.lambda0;
  if (branch == 0) {
    if (!(within(p.x, 0.0, l) && in_unit(p.y) && in_unit(p.z)))
      throw DomainError("horseshoe_F_inv: point not in the image of R0: " + fmt_point(p));
    return {p.x / l, flow_inverse(clamp01(p.y)), p.z / params.beta0};
  }
  if (branch == 1) {
    if (!(within(p.x, 0.75 - l, 0.75) && within(p.y, 0.0, params.sigma) &&
          within(p.z, 0.0, params.beta1 / 6.0)))
      throw DomainError("horseshoe_F_inv: point not in the image of R1: " + fmt_point(p));
    return {(0.75 - p.x) / l, 1.0 - p.y / params.sigma, p.z / params.beta1 + 5.0 / 6.0};
  }
  throw DomainError("horseshoe_F_inv: branch must be 0 or 1");
}

Point3 horseshoe_F_inv(const Point3& p, const MapParams& params) {
  const int b = inverse_branch(p, params);
  if (b < 0) throw DomainError("horseshoe_F_inv: point not in F(R0 u R1): " + fmt_point(p));
  return horseshoe_F_inv(p, b, params);
}

double central_log_derivative(const Point3& p, const MapParams& params) {
  switch (horseshoe_region(p)) {
    case Region::R0: return std::log(flow_derivative(clamp01(p.y)));
    case Region::R1: return std::log(params.sigma);
    default:
      throw DomainError("central_log_derivative: point outside R0 u R1: " + fmt_point(p));
  }
}

Point3 projection_pi(const Point3& p) {
  switch (horseshoe_region(p)) {
    case Region::R0: return {p.x, p.y, 0.0};
    case Region::R1: return {p.x, p.y, 5.0 / 6.0};
    default:
      throw DomainError("projection_pi: point outside R0 u R1: " + fmt_point(p));
  }
}

Point3 planar_G(const Point3& p, const MapParams& params) {
  const double a = params.alpha();
  switch (planar_region(p, params)) {
    case Region::S1:
    case Region::S3:
      return {a * p.x, flow_inverse(clamp01(p.y)), 0.0};
    case Region::S2:
      return {a * (0.75 - p.x), 1.0 - p.y / params.sigma, 5.0 / 6.0};
    default:
      throw DomainError("planar_G: point outside S1 u S2 u S3: " + fmt_point(p));
  }
}

std::array<double, 2> planar_G_jacobian(const Point3& p, const MapParams& params) {
  const double a = params.alpha();
  switch (planar_region(p, params)) {
    case Region::S1:
    case Region::S3:
      return {a, flow_inverse_derivative(clamp01(p.y))};
    case Region::S2:
      return {-a, -1.0 / params.sigma};
    default:
      throw DomainError("planar_G_jacobian: point outside S1 u S2 u S3: " + fmt_point(p));
  }
}

}  // namespace hst::maps
