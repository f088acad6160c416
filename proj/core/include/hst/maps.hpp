#pragma once

#include <array>
#include <string>

namespace hst::maps {

inline constexpr double kCoordTol = 1e-12;

struct MapParams {
  double lambda0 = 0.3;
  double beta0 = 7.0;
  double sigma = 0.25;
  double beta1 = 3.5;

  // Throws RangeError unless 0<lambda0<1/3, beta0>6, 0<sigma<1/3, 3<beta1<4.
  static MapParams make(double lambda0, double beta0, double sigma, double beta1);
  static MapParams standard() { return make(0.3, 7.0, 0.25, 3.5); }
  void validate() const;

  double alpha() const { return 1.0 / lambda0; }
};

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  bool operator==(const Point3&) const = default;
};

inline constexpr Point3 kQ{0.0, 0.0, 0.0};
inline constexpr Point3 kP{0.0, 1.0, 0.0};

enum class Region { R0, R1, S1, S2, S3, Outside };
enum class Domain { Horseshoe, Planar };

std::string to_string(Region r);

// Max-coordinate distance; used for region and ball tests.
double dist_max(const Point3& a, const Point3& b);
// L1 split norm |dx| + |dy| + |dz|; used for Hoelder quotients.
double dist_split(const Point3& a, const Point3& b);

// f^n(y) = y / (y + (1-y) e^{-n}); equal to 1/(1-(1-1/y)e^{-n}) for y != 0,
// and 0 at y = 0. Defined for every integer n (negative n gives inverses).
double flow_map(double y, int n = 1);
// d/dy f(y) = e^{-1} / (y + (1-y)e^{-1})^2.
double flow_derivative(double y);
// g0 = f^{-1} and its derivative e / (y + (1-y)e)^2.
double flow_inverse(double y);
double flow_inverse_derivative(double y);

// Horseshoe domain R0 (z in [0,1/6]) or R1 (z in [5/6,1]); Outside otherwise.
// Planar domain S1/S2/S3. Shared boundaries go to the lower-index region.
Region region_of(const Point3& p, const MapParams& params, Domain domain = Domain::Horseshoe);
Region horseshoe_region(const Point3& p);
Region planar_region(const Point3& p, const MapParams& params);

Point3 horseshoe_F(const Point3& p, const MapParams& params);
// Branch 0 inverts the R0 piece, branch 1 the R1 piece.
Point3 horseshoe_F_inv(const Point3& p, int branch, const MapParams& params);
// Which inverse branch applies to p. The two image pieces are separated in x
// ([0,l0] versus [3/4-l0,3/4]); returns -1 when p lies in neither.
int inverse_branch(const Point3& p, const MapParams& params);
Point3 horseshoe_F_inv(const Point3& p, const MapParams& params);

double central_log_derivative(const Point3& p, const MapParams& params);

Point3 projection_pi(const Point3& p);

Point3 planar_G(const Point3& p, const MapParams& params);
// Diagonal of DG at p: (dx'/dx, dy'/dy).
std::array<double, 2> planar_G_jacobian(const Point3& p, const MapParams& params);

}  // namespace hst::maps
