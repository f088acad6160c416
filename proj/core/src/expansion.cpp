#include "hst/expansion.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <sstream>

#include "hst/errors.hpp"
#include "hst/inducing.hpp"
#include "hst/parallel.hpp"
#include "hst/symbolic.hpp"

namespace hst::expansion {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Point3 step(const Point3& p, Dynamics dyn, const MapParams& params) {
  switch (dyn) {
    case Dynamics::F: return maps::horseshoe_F(p, params);
    case Dynamics::F_inv: return maps::horseshoe_F_inv(p, params);
    case Dynamics::G: return maps::planar_G(p, params);
  }
  return p;
}

bool in_domain(const Point3& p, Dynamics dyn, const MapParams& params) {
  switch (dyn) {
    case Dynamics::F: return maps::horseshoe_region(p) != maps::Region::Outside;
    case Dynamics::F_inv: return maps::inverse_branch(p, params) >= 0;
    case Dynamics::G: return maps::planar_region(p, params) != maps::Region::Outside;
  }
  return false;
}

}  // namespace

HypTimeParams HypTimeParams::make(double sigma_h, double eps_ball) {
  HypTimeParams h{sigma_h, eps_ball};
  h.validate();
  return h;
}

void HypTimeParams::validate() const {
  if (!(sigma_h > 0.0 && sigma_h < 1.0)) throw RangeError("sigma_h must lie in (0, 1)");
  if (!(eps_ball > 0.0)) throw RangeError("eps_ball must be positive");
}

double HypTimeParams::rate() const { return std::log(1.0 / sigma_h); }

double log_min_expansion(const Point3& p, const MapParams& params) {
  const auto d = maps::planar_G_jacobian(p, params);
  return std::min(std::log(std::abs(d[0])), std::log(std::abs(d[1])));
}

OrbitRecord g_orbit(const Point3& p, int n, const MapParams& params) {
  OrbitRecord r;
  Point3 q = p;
  for (int k = 0; k < n; ++k) {
    if (maps::planar_region(q, params) == maps::Region::Outside) {
      r.escaped_at = k;
      break;
    }
    r.points.push_back(q);
    r.log_min_expansion.push_back(log_min_expansion(q, params));
    q = maps::planar_G(q, params);
  }
  return r;
}

OrbitRecord orbit_record_from_points(const std::vector<Point3>& pts, const MapParams& params) {
  OrbitRecord r;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    if (maps::planar_region(pts[k], params) == maps::Region::Outside) {
      r.escaped_at = static_cast<long>(k);
      break;
    }
    r.points.push_back(pts[k]);
    r.log_min_expansion.push_back(log_min_expansion(pts[k], params));
  }
  return r;
}

OrbitRecord orbit_record_from_logs(const std::vector<double>& logs) {
  OrbitRecord r;
  r.log_min_expansion = logs;
  return r;
}

OrbitRecord dynamical_g_orbit(int n, std::uint64_t seed, const MapParams& params) {
  constexpr int kSide = 64;
  const symbolic::Word w = inducing::random_admissible(n + 2 * kSide, seed, false, false);
  std::vector<Point3> pts;
  pts.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    // X_k = F^{-k}(X_0): the origin moves k symbols into the past.
    const int pos = kSide + n - k;
    const symbolic::TwoSidedWindow win{w.substr(0, pos), w.substr(pos)};
    pts.push_back(maps::projection_pi(symbolic::point_from_itinerary(win, params).point));
  }
  return orbit_record_from_points(pts, params);
}

std::vector<int> hyperbolic_times(const OrbitRecord& orbit, const HypTimeParams& hp) {
  hp.validate();
  const auto& a = orbit.log_min_expansion;
  if (a.empty()) throw PreconditionError("hyperbolic_times: empty orbit");
  const double c = hp.rate();
  std::vector<int> out;
  // T_n = sum_{j<n} (a_j - c); n is hyperbolic iff T_n >= T_i for every i < n.
  double T = 0.0, best = 0.0;
  for (std::size_t n = 1; n <= a.size(); ++n) {
    T += a[n - 1] - c;
    if (T >= best - 1e-12) out.push_back(static_cast<int>(n));
    best = std::max(best, T);
  }
  return out;
}

double frequency_d(const OrbitRecord& orbit, const HypTimeParams& hp) {
  const auto h = hyperbolic_times(orbit, hp);
  return static_cast<double>(h.size()) / static_cast<double>(orbit.log_min_expansion.size());
}

double pliss_lower_bound(const OrbitRecord& orbit, const HypTimeParams& hp) {
  const auto& a = orbit.log_min_expansion;
  if (a.empty()) throw PreconditionError("pliss_lower_bound: empty orbit");
  const double c2 = hp.rate();
  double mean = 0.0, A = -kInf;
  for (double x : a) {
    mean += x;
    A = std::max(A, x);
  }
  mean /= static_cast<double>(a.size());
  if (!(mean > c2) || !(A > c2)) return 0.0;
  return (mean - c2) / (A - c2);
}

double central_lyapunov(const measures::MeasureApprox& mu, const MapParams& params) {
  if (mu.kind == measures::Kind::Markov) {
    const auto& md = *mu.markov;
    double s = 0.0;
    for (std::size_t i = 0; i < md.centers.size(); ++i)
      s += md.stationary[i] * maps::central_log_derivative(md.centers[i], params);
    return s;
  }
  double s = 0.0;
  for (const auto& a : mu.atoms) s += a.weight * maps::central_log_derivative(a.point, params);
  return s;
}

double birkhoff_sum(const PotentialSpec& phi, const Point3& p, int n, Dynamics dyn,
                    const MapParams& params) {
  if (n < 0) throw PreconditionError("birkhoff_sum: n >= 0");
  double s = 0.0;
  Point3 q = p;
  for (int k = 0; k < n; ++k) {
    s += phi(q);
    if (k + 1 == n) break;
    if (!in_domain(q, dyn, params))
      throw EscapeError("birkhoff_sum: orbit left the domain", dyn == Dynamics::F_inv ? -k : k);
    q = step(q, dyn, params);
  }
  return s;
}

double sup_over_ball(const PotentialSpec& phi, const Point3& p, int n, double delta, int samples,
                     Dynamics dyn, const MapParams& params, std::uint64_t seed) {
  if (!(delta >= 0.0)) throw PreconditionError("sup_over_ball: delta >= 0");
  std::vector<Point3> ref;
  {
    Point3 q = p;
    for (int k = 0; k < n; ++k) {
      ref.push_back(q);
      if (k + 1 == n) break;
      if (!in_domain(q, dyn, params))
        throw EscapeError("sup_over_ball: centre orbit left the domain", dyn == Dynamics::F_inv ? -k : k);
      q = step(q, dyn, params);
    }
  }
  double best = birkhoff_sum(phi, p, n, dyn, params);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0), scale(0.0, 12.0);
  for (int s = 0; s < samples; ++s) {
    const double r = std::pow(10.0, -scale(rng));
    Point3 y{p.x + r * u(rng), p.y + r * u(rng), p.z + r * u(rng)};
    if (dyn == Dynamics::G) y.z = p.z;
    bool ok = true;
    double sum = 0.0;
    for (int k = 0; k < n && ok; ++k) {
      if (maps::dist_max(y, ref[k]) > delta) {
        ok = false;
        break;
      }
      if (!in_domain(y, dyn, params)) {
        ok = false;
        break;
      }
      sum += phi(y);
      if (k + 1 == n) break;
      y = step(y, dyn, params);
    }
    if (ok) best = std::max(best, sum);
  }
  return best;
}

std::vector<CurveRow> pressure_curve(const std::vector<double>& t_grid, int L, const MapParams& params,
                                     int threads) {
  if (L < 2 || L > 12) throw RangeError("pressure_curve: L in [2, 12]");
  std::vector<CurveRow> rows(t_grid.size());
  parallel_for(static_cast<int>(t_grid.size()), threads, [&](int i) {
    const double t = t_grid[i];
    const auto eq = measures::markov_equilibrium(potentials::central_potential(params, t), L, params);
    CurveRow& r = rows[i];
    r.t = t;
    r.branch_Q = t;
    r.branch_hyp = eq.pressure;
    r.P_hat = std::max(r.branch_Q, r.branch_hyp);
    r.hyp_slope = central_lyapunov(eq.measure, params);
  });
  return rows;
}

std::string curve_csv(const std::vector<CurveRow>& curve) {
  std::ostringstream os;
  os << "t,branch_Q,branch_hyp,P_hat\r\n";
  char buf[160];
  for (const auto& r : curve) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\r\n", r.t, r.branch_Q, r.branch_hyp, r.P_hat);
    os << buf;
  }
  return os.str();
}

namespace {

int find_bracket(const std::vector<CurveRow>& c) {
  for (std::size_t i = 0; i + 1 < c.size(); ++i) {
    const double d0 = c[i].branch_hyp - c[i].branch_Q;
    const double d1 = c[i + 1].branch_hyp - c[i + 1].branch_Q;
    if ((d0 > 0.0) != (d1 > 0.0) || d0 == 0.0) return static_cast<int>(i);
  }
  throw NotFoundError("detect_phase_transition: branches do not cross on the grid");
}

double grid_slope(const std::vector<CurveRow>& c, int i) {
  return (c[i + 1].branch_hyp - c[i].branch_hyp) / (c[i + 1].t - c[i].t);
}

}  // namespace

PhaseTransition detect_phase_transition(const std::vector<CurveRow>& curve) {
  if (curve.size() < 2) throw NotFoundError("detect_phase_transition: grid too short");
  const int i = find_bracket(curve);
  const auto& a = curve[i];
  const auto& b = curve[i + 1];
  const double d0 = a.branch_hyp - a.branch_Q, d1 = b.branch_hyp - b.branch_Q;
  PhaseTransition out;
  out.bracket_lo = a.t;
  out.bracket_hi = b.t;
  const double w = d0 == d1 ? 0.0 : d0 / (d0 - d1);
  out.t0_hat = a.t + w * (b.t - a.t);
  const bool have_slopes = a.hyp_slope != 0.0 || b.hyp_slope != 0.0;
  const double hyp_slope = have_slopes ? a.hyp_slope + w * (b.hyp_slope - a.hyp_slope) : grid_slope(curve, i);
  // Left of t0 the larger branch is the hyperbolic one when d0 > 0.
  out.slope_jump = d0 > 0.0 ? 1.0 - hyp_slope : hyp_slope - 1.0;
  return out;
}

PhaseTransition detect_phase_transition(const std::vector<CurveRow>& curve,
                                        const std::function<double(double)>& hyp,
                                        const std::function<double(double)>& hyp_slope, double tol) {
  if (curve.size() < 2) throw NotFoundError("detect_phase_transition: grid too short");
  const int i = find_bracket(curve);
  double lo = curve[i].t, hi = curve[i + 1].t;
  const double d_lo = hyp(lo) - lo;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double d = hyp(mid) - mid;
    if ((d > 0.0) == (d_lo > 0.0))
      lo = mid;
    else
      hi = mid;
  }
  PhaseTransition out;
  out.bracket_lo = curve[i].t;
  out.bracket_hi = curve[i + 1].t;
  out.t0_hat = 0.5 * (lo + hi);
  const double s = hyp_slope(out.t0_hat);
  out.slope_jump = d_lo > 0.0 ? 1.0 - s : s - 1.0;
  return out;
}

}  // namespace hst::expansion
