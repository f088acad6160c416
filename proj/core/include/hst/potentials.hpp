#pragma once

#include <string>
#include <vector>

#include "hst/countable_thermo.hpp"
#include "hst/measures.hpp"
#include "hst/potential_spec.hpp"

namespace hst::potentials {

using thermo::Verdict;

// peak for z <= c0, then peak - (peak - floor) ((z - c0)/(1 - c0))^xi.
PotentialSpec example_potential(double c0, double peak, double floor, double xi = 1.0);

struct AdmissibleFamily {
  double c0 = 0.84;
  double peak = 0.0;
  double floor = -1.0;
  double xi = 1.0;
  PotentialSpec base;

  static AdmissibleFamily make(double c0, double peak, double floor, double xi = 1.0);
  PotentialSpec at(double t) const { return scaled(base, t); }
};

struct TInterval {
  double t0 = 0.0;
  double t1_lower = 0.0;
  double integral_mu_max = 0.0;
  double h_top = 0.0;
  bool nonempty = false;
};

// t0 = h/(2(phi(Q) - inf phi)), t1_lower = h/(phi(Q) - int phi dmu_max).
TInterval t_interval(const AdmissibleFamily& fam, const measures::MeasureApprox& mu_max,
                     double h_top);

struct C2Report {
  int n = 1;
  double sup_lower = 0.0;  // best periodic Birkhoff average of phi_n / n
  double sup_upper = 0.0;  // grid maximum of phi plus modulus pad
  double pressure_lower = 0.0;
  double pressure_upper = 0.0;
  std::string argmax;
  Verdict verdict = Verdict::Inconclusive;
};

C2Report check_C2(const PotentialSpec& phi, int n, double pressure_lower, const MapParams& params,
                  double pressure_upper = std::numeric_limits<double>::infinity(),
                  int max_period = 12, int grid = 24);

// Grid sup of phi over R0 u R1 with the modulus pad; +inf without a Hoelder claim.
double sup_upper_bound(const PotentialSpec& phi, int grid);

thermo::VariationProfile check_C1(const PotentialSpec& phi, double alpha, int K,
                                  const MapParams& params, int depth = 12, int k_max = 10,
                                  int samples = 256, std::uint64_t seed = 11, int threads = 0);

struct ProjectiveExample {
  PotentialSpec phi;
  double sup_v_minus_uG = 0.0;
  double osc_u = 0.0;
};

// Grid points of S1 u S2 u S3 with grid^2 points per piece.
std::vector<Point3> planar_grid(int grid, const MapParams& params);

ProjectiveExample projective_example(const PotentialSpec& u, const PotentialSpec& v,
                                     const MapParams& params, int grid = 64);

struct D1Report {
  double min_slack = 0.0;
  int points = 0;
  bool pass = false;
};

D1Report check_D1(const PotentialSpec& phi, const PotentialSpec& u, int grid,
                  const MapParams& params);

struct D2Report {
  double sup_integral = 0.0;
  double sup_entropy = 0.0;
  double h_G = 0.0;
  double margin = 0.0;  // h_G - sup_entropy - sup_integral
  std::string worst;
  // Only a necessary condition: the family stands in for all non-expanding measures.
  bool necessary_pass = false;
};

// delta_Q, delta_P and s delta_Q + (1-s) delta_P for s in {1/4, 1/2, 3/4}.
std::vector<measures::MeasureApprox> default_nonexpanding_family();

D2Report check_D2(const PotentialSpec& phi, const std::vector<measures::MeasureApprox>& family,
                  double h_G);

enum class Dynamics { F_inv, G };

// (1 - t) phi + t phi o T with T = F^{-1} or G.
PotentialSpec cohomology_shift(const PotentialSpec& phi, double t, Dynamics dynamics,
                               const MapParams& params);

// (1 + t d(x, cloud)) phi(x), d in the split norm.
PotentialSpec distance_weight(const PotentialSpec& phi, const std::vector<Point3>& cloud, double t);

struct SupAtQReport {
  double grid_sup = 0.0;
  double phi_Q = 0.0;
  double pressure_lower = 0.0;
  double h_eta = 0.0;
  bool sup_at_Q = false;
  bool below_pressure = false;
  bool strong_margin = false;  // phi(Q) < pressure_lower - h_eta
};

SupAtQReport sup_at_Q_check(const PotentialSpec& phi, double pressure_lower, double h_eta,
                            const MapParams& params, int grid = 64);

}  // namespace hst::potentials
