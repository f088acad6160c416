#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "hst/maps.hpp"
#include "hst/measures.hpp"
#include "hst/potential_spec.hpp"

namespace hst::expansion {

using maps::MapParams;
using maps::Point3;
using potentials::PotentialSpec;

struct HypTimeParams {
  double sigma_h = 1.0 / 3.0;
  double eps_ball = 1e-3;

  static HypTimeParams make(double sigma_h, double eps_ball = 1e-3);
  void validate() const;
  double rate() const;  // log(1/sigma_h)
};

struct OrbitRecord {
  std::vector<Point3> points;
  std::vector<double> log_min_expansion;  // one per point
  long escaped_at = -1;                   // G left the planar set at this step
};

// Per-point weakest log expansion of DG (min over the two diagonal entries).
double log_min_expansion(const Point3& p, const MapParams& params);
// n steps of G from p; stops early on escape.
OrbitRecord g_orbit(const Point3& p, int n, const MapParams& params);
OrbitRecord orbit_record_from_points(const std::vector<Point3>& pts, const MapParams& params);
// Synthetic record straight from per-step logs.
OrbitRecord orbit_record_from_logs(const std::vector<double>& logs);
// pi of the F-backward orbit of a reconstructed point of the horseshoe with a
// random admissible itinerary; an exact G orbit by the semiconjugacy.
OrbitRecord dynamical_g_orbit(int n, std::uint64_t seed, const MapParams& params);

// n in [1, len] with sum_{j=i}^{n-1} a_j >= (n - i) log(1/sigma_h) for all i < n.
std::vector<int> hyperbolic_times(const OrbitRecord& orbit, const HypTimeParams& hp);
double frequency_d(const OrbitRecord& orbit, const HypTimeParams& hp);
// (c - c2)/(A - c2) with c the mean and A the max per-step log; 0 when c <= c2.
double pliss_lower_bound(const OrbitRecord& orbit, const HypTimeParams& hp);

double central_lyapunov(const measures::MeasureApprox& mu, const MapParams& params);

enum class Dynamics { F, F_inv, G };

// phi(p) + phi(T p) + ... + phi(T^{n-1} p); EscapeError carries the step.
double birkhoff_sum(const PotentialSpec& phi, const Point3& p, int n, Dynamics dyn,
                    const MapParams& params);
// Lower bound for the sup of S_n phi over the dynamical ball B_delta(p, n); the
// sample offsets do not depend on delta, so the estimate is monotone in delta.
double sup_over_ball(const PotentialSpec& phi, const Point3& p, int n, double delta, int samples,
                     Dynamics dyn, const MapParams& params, std::uint64_t seed = 5);

struct CurveRow {
  double t = 0.0;
  double branch_Q = 0.0;
  double branch_hyp = 0.0;
  double P_hat = 0.0;
  double hyp_slope = 0.0;  // integral of the central log derivative at the equilibrium
};

std::vector<CurveRow> pressure_curve(const std::vector<double>& t_grid, int L,
                                     const MapParams& params, int threads = 0);
std::string curve_csv(const std::vector<CurveRow>& curve);

struct PhaseTransition {
  double t0_hat = 0.0;
  double slope_jump = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
};

// Linear interpolation of the branch difference on the grid, slopes from the
// recorded equilibrium integrals (or grid differences when absent).
PhaseTransition detect_phase_transition(const std::vector<CurveRow>& curve);
// Bisection on hyp(t) - t inside the grid bracket; hyp_slope is the derivative.
PhaseTransition detect_phase_transition(const std::vector<CurveRow>& curve,
                                        const std::function<double(double)>& hyp,
                                        const std::function<double(double)>& hyp_slope,
                                        double tol = 1e-10);

}  // namespace hst::expansion
