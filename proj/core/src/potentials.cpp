#include "hst/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

#include "hst/errors.hpp"
#include "hst/inducing.hpp"

namespace hst::potentials {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double birkhoff_average(const PotentialSpec& phi, const std::vector<Point3>& orbit, int start, int n) {
  const int p = static_cast<int>(orbit.size());
  double s = 0.0;
  for (int j = 0; j < n; ++j) s += phi(orbit[(start + j) % p]);
  return s / n;
}

// Largest Lipschitz factor of F^{-1} and G in the split norm.
double inverse_lipschitz(const MapParams& params) {
  return std::max({1.0 / params.lambda0, std::exp(1.0), 1.0 / params.sigma, 1.0 / params.beta0,
                   1.0 / params.beta1});
}

}  // namespace

PotentialSpec example_potential(double c0, double peak, double floor, double xi) {
  if (!(c0 > 5.0 / 6.0 && c0 < 1.0)) throw RangeError("example_potential: c0 must lie in (5/6, 1)");
  if (!(peak > floor)) throw RangeError("example_potential: peak must exceed floor");
  if (!(xi > 0.0 && xi <= 1.0)) throw RangeError("example_potential: xi in (0, 1]");
  const double drop = peak - floor;
  auto eval = [=](const Point3& p) {
    if (p.z <= c0) return peak;
    const double s = std::min(1.0, (p.z - c0) / (1.0 - c0));
    return peak - drop * std::pow(s, xi);
  };
  auto s = make_potential(eval, xi, drop / std::pow(1.0 - c0, xi), "example", true);
  s.sup_value = peak;
  s.inf_value = floor;
  s.coords = {false, false, true};
  return s;
}

AdmissibleFamily AdmissibleFamily::make(double c0, double peak, double floor, double xi) {
  AdmissibleFamily f;
  f.c0 = c0;
  f.peak = peak;
  f.floor = floor;
  f.xi = xi;
  f.base = example_potential(c0, peak, floor, xi);
  return f;
}

TInterval t_interval(const AdmissibleFamily& fam, const measures::MeasureApprox& mu_max,
                     double h_top) {
  TInterval r;
  r.h_top = h_top;
  const double phiQ = fam.base(maps::kQ);
  r.integral_mu_max = mu_max.integrate(fam.base);
  if (phiQ == r.integral_mu_max) throw DegenerateError("t_interval: phi(Q) equals int phi dmu_max");
  r.t0 = h_top / (2.0 * (phiQ - fam.floor));
  r.t1_lower = h_top / (phiQ - r.integral_mu_max);
  r.nonempty = r.t1_lower > r.t0;
  return r;
}

double sup_upper_bound(const PotentialSpec& phi, int grid) {
  if (phi.sup_value) return *phi.sup_value;
  if (!phi.holder()) return kInf;
  double best = -kInf;
  const double hx = 1.0 / grid, hy = 1.0 / grid, hz = (1.0 / 6.0) / grid;
  const double pad = phi.modulus(0.5 * (hx + hy + hz));
  for (double z0 : {0.0, 5.0 / 6.0})
    for (int i = 0; i < grid; ++i)
      for (int j = 0; j < grid; ++j)
        for (int k = 0; k < grid; ++k) {
          const Point3 c{(i + 0.5) * hx, (j + 0.5) * hy, z0 + (k + 0.5) * hz};
          best = std::max(best, phi(c));
        }
  return best + pad;
}

C2Report check_C2(const PotentialSpec& phi, int n, double pressure_lower, const MapParams& params,
                  double pressure_upper, int max_period, int grid) {
  if (n < 1) throw PreconditionError("check_C2: n >= 1");
  C2Report r;
  r.n = n;
  r.pressure_lower = pressure_lower;
  r.pressure_upper = pressure_upper;
  r.sup_lower = std::max(phi(maps::kQ), phi(maps::kP));
  r.argmax = phi(maps::kQ) >= phi(maps::kP) ? "Q" : "P";
  for (int p = 1; p <= max_period; ++p) {
    for (const auto& cyc : measures::primitive_cycles(p)) {
      const auto orbit = measures::periodic_orbit(cyc, params);
      for (int s = 0; s < p; ++s) {
        const double a = birkhoff_average(phi, orbit, s, n);
        if (a > r.sup_lower) {
          r.sup_lower = a;
          r.argmax = "periodic(" + cyc + ")";
        }
      }
    }
  }
  // phi_n / n never exceeds sup phi.
  r.sup_upper = std::max(sup_upper_bound(phi, grid), r.sup_lower);
  if (pressure_lower > r.sup_upper)
    r.verdict = Verdict::Pass;
  else if (r.sup_lower >= pressure_upper)
    r.verdict = Verdict::Fail;
  else
    r.verdict = Verdict::Inconclusive;
  return r;
}

thermo::VariationProfile check_C1(const PotentialSpec& phi, double alpha, int K,
                                  const MapParams& params, int depth, int k_max, int samples,
                                  std::uint64_t seed, int threads) {
  const auto table = inducing::build_induced_table(phi, alpha, K, depth, params, threads);
  return thermo::variation_profile(table, k_max, samples, seed, threads);
}

std::vector<Point3> planar_grid(int grid, const MapParams& params) {
  if (grid < 2) throw PreconditionError("planar_grid: grid >= 2");
  std::vector<Point3> pts;
  const double l = params.lambda0;
  for (int i = 0; i < grid; ++i) {
    const double s = static_cast<double>(i) / (grid - 1);
    for (int j = 0; j < grid; ++j) {
      const double u = static_cast<double>(j) / (grid - 1);
      pts.push_back({s * l, u, 0.0});
      pts.push_back({0.75 - l + s * l, u * params.sigma, 0.0});
      pts.push_back({s * l, u, 5.0 / 6.0});
    }
  }
  // S1 and S2 cannot share points, but S3 lies above S1; drop exact duplicates.
  std::sort(pts.begin(), pts.end(), [](const Point3& a, const Point3& b) {
    return std::tie(a.z, a.x, a.y) < std::tie(b.z, b.x, b.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

ProjectiveExample projective_example(const PotentialSpec& u, const PotentialSpec& v,
                                     const MapParams& params, int grid) {
  ProjectiveExample out;
  double umax = -kInf, umin = kInf;
  out.sup_v_minus_uG = -kInf;
  for (const auto& p : planar_grid(grid, params)) {
    const double up = u(p), vp = v(p);
    if (!(vp > up)) throw PreconditionError("projective_example: v <= u at a grid point");
    umax = std::max(umax, up);
    umin = std::min(umin, up);
    out.sup_v_minus_uG = std::max(out.sup_v_minus_uG, vp - u(maps::planar_G(p, params)));
  }
  out.osc_u = umax - umin;
  auto eval = [u, v, params](const Point3& p) { return v(p) - u(maps::planar_G(p, params)); };
  // G jumps between the planar pieces, so no global Hoelder claim is made.
  out.phi = make_potential(eval, 1.0, kInf, "projective", false);
  return out;
}

D1Report check_D1(const PotentialSpec& phi, const PotentialSpec& u, int grid,
                  const MapParams& params) {
  D1Report r;
  r.min_slack = kInf;
  for (const auto& p : planar_grid(grid, params)) {
    const double slack = phi(p) - (u(p) - u(maps::planar_G(p, params)));
    r.min_slack = std::min(r.min_slack, slack);
    ++r.points;
  }
  r.pass = r.min_slack >= -1e-12;
  return r;
}

std::vector<measures::MeasureApprox> default_nonexpanding_family() {
  const auto q = measures::delta_Q(), p = measures::delta_P();
  std::vector<measures::MeasureApprox> fam{q, p};
  for (double s : {0.25, 0.5, 0.75}) fam.push_back(measures::convex_combination(q, p, s));
  return fam;
}

D2Report check_D2(const PotentialSpec& phi, const std::vector<measures::MeasureApprox>& family,
                  double h_G) {
  if (family.empty()) throw PreconditionError("check_D2: empty measure family");
  D2Report r;
  r.h_G = h_G;
  r.sup_integral = -kInf;
  r.sup_entropy = -kInf;
  for (const auto& m : family) {
    const double I = m.integrate(phi);
    if (I > r.sup_integral) {
      r.sup_integral = I;
      r.worst = m.label;
    }
    r.sup_entropy = std::max(r.sup_entropy, m.entropy);
  }
  r.margin = h_G - r.sup_entropy - r.sup_integral;
  r.necessary_pass = r.margin > 0.0;
  return r;
}

PotentialSpec cohomology_shift(const PotentialSpec& phi, double t, Dynamics dynamics,
                               const MapParams& params) {
  PotentialSpec out = phi;
  if (dynamics == Dynamics::F_inv) {
    out.eval = [phi, t, params](const Point3& p) {
      if (t == 0.0) return phi(p);
      return (1.0 - t) * phi(p) + t * phi(maps::horseshoe_F_inv(p, params));
    };
  } else {
    out.eval = [phi, t, params](const Point3& p) {
      if (t == 0.0) return phi(p);
      return (1.0 - t) * phi(p) + t * phi(maps::planar_G(p, params));
    };
  }
  if (t != 0.0) {
    // Within a branch the map is Lipschitz; across branches the points are at
    // least 0.15 apart and the oscillation bound takes over.
    const double L = inverse_lipschitz(params);
    const double gap = 0.75 - 2.0 * params.lambda0;
    const double cross = std::pow(3.0, phi.xi) / std::pow(gap, phi.xi);
    out.C = std::abs(1.0 - t) * phi.C + std::abs(t) * phi.C * std::max(std::pow(L, phi.xi), cross);
    if (dynamics == Dynamics::G) out.C = kInf;
    out.coords = {true, true, true};
    out.sup_value.reset();
    out.inf_value.reset();
  }
  out.label = phi.label + (dynamics == Dynamics::F_inv ? "+shiftF" : "+shiftG");
  return out;
}

PotentialSpec distance_weight(const PotentialSpec& phi, const std::vector<Point3>& cloud, double t) {
  if (cloud.empty()) throw PreconditionError("distance_weight: empty cloud");
  auto dist = [cloud](const Point3& p) {
    double d = kInf;
    for (const auto& c : cloud) d = std::min(d, maps::dist_split(p, c));
    return d;
  };
  if (t != 0.0) {
    double cloud_sup = -kInf;
    for (const auto& c : cloud) cloud_sup = std::max(cloud_sup, phi(c));
    const double lhs = (1.0 + t * dist(maps::kQ)) * phi(maps::kQ);
    if (!(lhs < cloud_sup))
      throw PreconditionError("distance_weight: (1 + t d(Q, X)) phi(Q) must be below sup over X");
  }
  PotentialSpec out = phi;
  if (t != 0.0) out.coords = {true, true, true};
  out.eval = [phi, dist, t](const Point3& p) {
    const double v = phi(p);
    if (t == 0.0) return v;
    return (1.0 + t * dist(p)) * v;
  };
  if (t != 0.0) {
    const double bound = (phi.sup_value && phi.inf_value)
                             ? std::max(std::abs(*phi.sup_value), std::abs(*phi.inf_value))
                             : kInf;
    // d is 1-Lipschitz and at most 3 on the unit cube.
    out.C = (1.0 + 3.0 * std::abs(t)) * phi.C + std::abs(t) * bound * std::pow(3.0, 1.0 - phi.xi);
    out.sup_value.reset();
    out.inf_value.reset();
  }
  out.label = phi.label + "+distance";
  return out;
}

SupAtQReport sup_at_Q_check(const PotentialSpec& phi, double pressure_lower, double h_eta,
                            const MapParams& params, int grid) {
  SupAtQReport r;
  r.pressure_lower = pressure_lower;
  r.h_eta = h_eta;
  r.phi_Q = phi(maps::kQ);
  r.grid_sup = r.phi_Q;
  for (const auto& p : planar_grid(grid, params)) r.grid_sup = std::max(r.grid_sup, phi(p));
  r.sup_at_Q = r.grid_sup <= r.phi_Q + 1e-12;
  r.below_pressure = r.phi_Q < pressure_lower;
  r.strong_margin = r.phi_Q < pressure_lower - h_eta;
  return r;
}

}  // namespace hst::potentials
