#include "hst/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <unordered_map>

#include "hst/errors.hpp"
#include "hst/parallel.hpp"

namespace hst::measures {

namespace {

struct BlockGraph {
  int L = 0;
  std::vector<Word> blocks;
  std::vector<Point3> centers;
  std::vector<double> errs;
  std::vector<std::array<double, 3>> errs_xyz;
  std::vector<std::vector<int>> succ;
};

BlockGraph block_graph(int L, const MapParams& params) {
  if (L < 2 || L > 12) throw RangeError("block length L must lie in [2, 12]");
  BlockGraph g;
  g.L = L;
  g.blocks = symbolic::enumerate_admissible(L);
  const int n = static_cast<int>(g.blocks.size());
  std::unordered_map<Word, int> index;
  for (int i = 0; i < n; ++i) index.emplace(g.blocks[i], i);
  const int c = L / 2;
  g.centers.resize(n);
  g.errs.resize(n);
  g.errs_xyz.resize(n);
  g.succ.resize(n);
  for (int i = 0; i < n; ++i) {
    const Word& b = g.blocks[i];
    const auto rec = symbolic::point_from_itinerary({b.substr(0, c), b.substr(c)}, params);
    g.centers[i] = rec.point;
    g.errs[i] = rec.error_bound;
    g.errs_xyz[i] = {rec.err_x, rec.err_y, rec.err_z};
    for (char s : {'0', '1'}) {
      if (s == '1' && b.back() == '1') continue;
      g.succ[i].push_back(index.at(b.substr(1) + s));
    }
  }
  return g;
}

double nearest(const Point3& p, const std::vector<Atom>& atoms) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& a : atoms) best = std::min(best, maps::dist_max(p, a.point));
  return best;
}

}  // namespace

double MeasureApprox::integrate(const PotentialSpec& phi) const {
  double s = 0.0;
  if (kind == Kind::Atomic) {
    for (const auto& a : atoms) s += a.weight * phi(a.point);
    return s;
  }
  const auto& md = *markov;
  for (std::size_t b = 0; b < md.blocks.size(); ++b) s += md.stationary[b] * phi(md.centers[b]);
  return s;
}

double MeasureApprox::mass() const {
  if (kind == Kind::Atomic) {
    double s = 0.0;
    for (const auto& a : atoms) s += a.weight;
    return s;
  }
  return std::accumulate(markov->stationary.begin(), markov->stationary.end(), 0.0);
}

MeasureApprox dirac(const Point3& p, std::string label) {
  MeasureApprox m;
  m.kind = Kind::Atomic;
  m.label = std::move(label);
  m.atoms.push_back({p, 1.0});
  return m;
}

MeasureApprox delta_Q() { return dirac(maps::kQ, "delta_Q"); }
MeasureApprox delta_P() { return dirac(maps::kP, "delta_P"); }

MeasureApprox convex_combination(const MeasureApprox& a, const MeasureApprox& b, double s) {
  if (a.kind != Kind::Atomic || b.kind != Kind::Atomic)
    throw KindError("convex_combination: atomic measures only");
  if (!(s >= 0.0 && s <= 1.0)) throw RangeError("convex_combination: weight must lie in [0, 1]");
  MeasureApprox m;
  m.kind = Kind::Atomic;
  m.label = std::to_string(s) + "*" + a.label + "+" + std::to_string(1.0 - s) + "*" + b.label;
  for (const auto& at : a.atoms) m.atoms.push_back({at.point, s * at.weight});
  for (const auto& at : b.atoms) m.atoms.push_back({at.point, (1.0 - s) * at.weight});
  m.entropy = s * a.entropy + (1.0 - s) * b.entropy;
  return m;
}

namespace {
// Each 1 contributes the orientation-reversing y -> sigma(1 - y).
double derivative_sign(const Word& w) {
  return std::count(w.begin(), w.end(), '1') % 2 ? -1.0 : 1.0;
}
}  // namespace

std::vector<Point3> periodic_orbit(const Word& cycle, const MapParams& params) {
  if (!symbolic::is_cyclic_admissible(cycle))
    throw AdmissibilityError("periodic cycle '" + cycle + "' is not cyclically admissible");
  const int p = static_cast<int>(cycle.size());
  const int D = std::max(kPeriodicDepth, 4 * p);
  std::vector<Point3> pts;
  pts.reserve(p);
  for (int j = 0; j < p; ++j) {
    const symbolic::TwoSidedWindow win{symbolic::periodic_extend(cycle, D, j - D),
                                       symbolic::periodic_extend(cycle, D, j)};
    pts.push_back(symbolic::point_from_itinerary(win, params).point);
  }
  // A finite past pins y down slowly on zero-heavy cycles, so y comes from the
  // fixed point of the cycle's central composition instead.
  auto g = [&](double y) { return symbolic::central_composition(cycle, y, params); };
  double y = 0.5;
  for (int k = 0; k < 2000; ++k) y = g(y).value;
  for (int k = 0; k < 50; ++k) {
    const auto v = g(y);
    const double r = v.value - y;
    if (r == 0.0) break;
    const double d = std::exp(v.log_derivative) * derivative_sign(cycle) - 1.0;
    const double next = std::clamp(y - r / d, 0.0, 1.0);
    if (!(std::abs(g(next).value - next) < std::abs(r))) break;
    y = next;
  }
  for (int j = 0; j < p; ++j) {
    pts[j].y = j == 0 ? y : symbolic::central_composition(cycle.substr(0, j), y, params).value;
  }
  return pts;
}

MeasureApprox periodic_measure(const Word& cycle, const MapParams& params) {
  const auto pts = periodic_orbit(cycle, params);
  MeasureApprox m;
  m.kind = Kind::Atomic;
  m.label = "periodic(" + cycle + ")";
  m.cycle = cycle;
  const double w = 1.0 / static_cast<double>(pts.size());
  for (const auto& p : pts) m.atoms.push_back({p, w});
  return m;
}

std::vector<Word> cyclic_words(int p) {
  std::vector<Word> out;
  for (auto& w : symbolic::enumerate_admissible(p))
    if (symbolic::is_cyclic_admissible(w)) out.push_back(std::move(w));
  return out;
}

std::vector<Word> primitive_cycles(int p) {
  std::vector<Word> out;
  for (const auto& w : cyclic_words(p)) {
    bool minimal = true, primitive = true;
    for (int r = 1; r < p; ++r) {
      const Word rot = w.substr(r) + w.substr(0, r);
      if (rot < w) minimal = false;
      if (rot == w) primitive = false;
    }
    if (minimal && primitive) out.push_back(w);
  }
  return out;
}

double golden_log() {
  // adjacency [[1,1],[1,0]]: lambda = (tr + sqrt(tr^2 - 4 det)) / 2
  const double tr = 1.0, det = -1.0;
  return std::log((tr + std::sqrt(tr * tr - 4.0 * det)) / 2.0);
}

EntropyReport topological_entropy_estimate(int n_max) {
  if (n_max < 10) throw RangeError("topological_entropy_estimate: n_max must be >= 10");
  EntropyReport r;
  r.spectral = golden_log();
  const double Nn = static_cast<double>(symbolic::count_admissible(n_max));
  const double Nm = static_cast<double>(symbolic::count_admissible(n_max - 1));
  r.h_estimate = std::log(Nn / Nm);
  r.naive_rate = std::log(Nn) / n_max;
  r.n_used = n_max;
  return r;
}

double integration_pad(const MeasureApprox& mu, const PotentialSpec& phi) {
  if (mu.kind != Kind::Markov) return 0.0;
  if (!phi.holder()) return std::numeric_limits<double>::infinity();
  const auto& md = *mu.markov;
  double pad = 0.0;
  for (std::size_t i = 0; i < md.stationary.size(); ++i) {
    const auto& e = md.center_err_xyz[i];
    pad += md.stationary[i] * phi.error_modulus(e[0], e[1], e[2]);
  }
  return pad;
}

MarkovEquilibrium markov_equilibrium(const PotentialSpec& phi, int L, const MapParams& params) {
  BlockGraph g = block_graph(L, params);
  const int n = static_cast<int>(g.blocks.size());
  std::vector<double> psi(n);
  for (int i = 0; i < n; ++i) psi[i] = phi(g.centers[i]);
  const double shift = *std::max_element(psi.begin(), psi.end());

  spectral::SparseMatrix M(n);
  for (int i = 0; i < n; ++i)
    for (int j : g.succ[i]) M.add(i, j, std::exp(psi[j] - shift));
  const auto e = spectral::leading_eigen(M);

  auto md = std::make_shared<MarkovData>();
  md->L = L;
  md->blocks = g.blocks;
  md->centers = g.centers;
  md->center_err = g.errs;
  md->center_err_xyz = g.errs_xyz;
  md->transition = spectral::SparseMatrix(n);
  md->stationary.resize(n);
  double h = 0.0;
  for (int i = 0; i < n; ++i) md->stationary[i] = e.left[i] * e.right[i];
  for (int i = 0; i < n; ++i) {
    for (const auto& [j, a] : M.rows[i]) {
      const double pij = a * e.right[j] / (e.lambda * e.right[i]);
      md->transition.add(i, j, pij);
      if (pij > 0.0) h -= md->stationary[i] * pij * std::log(pij);
    }
  }

  MarkovEquilibrium out;
  out.pressure = std::log(e.lambda) + shift;
  out.entropy = h;
  for (int i = 0; i < n; ++i) out.integral += md->stationary[i] * psi[i];
  out.identity_residual = std::abs(h + out.integral - out.pressure);
  out.eigen_gap_ratio = spectral::second_modulus(M, e) / e.lambda;
  if (phi.holder()) {
    for (int i = 0; i < n; ++i) {
      const auto& e3 = g.errs_xyz[i];
      out.reconstruction_pad += md->stationary[i] * phi.error_modulus(e3[0], e3[1], e3[2]);
    }
  } else {
    out.reconstruction_pad = std::numeric_limits<double>::infinity();
  }
  out.block_potential = psi;
  out.measure.kind = Kind::Markov;
  out.measure.label = "markov(L=" + std::to_string(L) + "," + phi.label + ")";
  out.measure.entropy = h;
  out.measure.markov = std::move(md);
  return out;
}

double variational_pressure(const PotentialSpec& phi, const std::vector<MeasureApprox>& family) {
  if (family.empty()) throw PreconditionError("variational_pressure: empty family");
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& mu : family) best = std::max(best, mu.entropy + mu.integrate(phi));
  return best;
}

MeasureApprox pushforward_pi(const MeasureApprox& mu) {
  if (mu.kind != Kind::Atomic) throw KindError("pushforward_pi: atomic measures only");
  MeasureApprox out = mu;
  out.label = "pi_*" + mu.label;
  for (auto& a : out.atoms) a.point = maps::projection_pi(a.point);
  return out;
}

double g_invariance_defect(const MeasureApprox& mu, const MapParams& params) {
  if (mu.kind != Kind::Atomic) throw KindError("g_invariance_defect: atomic measures only");
  double worst = 0.0;
  for (const auto& a : mu.atoms) worst = std::max(worst, nearest(maps::planar_G(a.point, params), mu.atoms));
  return worst;
}

double f_invariance_defect(const MeasureApprox& mu, const MapParams& params) {
  if (mu.kind != Kind::Atomic) throw KindError("f_invariance_defect: atomic measures only");
  double worst = 0.0;
  for (const auto& a : mu.atoms)
    worst = std::max(worst, nearest(maps::horseshoe_F(a.point, params), mu.atoms));
  return worst;
}

PressureEqualityReport pressure_equality_check(const PotentialSpec& phi_omega, int L,
                                               const MapParams& params) {
  PressureEqualityReport rep;
  rep.L = L;
  PotentialSpec lifted = phi_omega;
  auto f = phi_omega.eval;
  lifted.eval = [f](const Point3& p) { return f(maps::projection_pi(p)); };
  rep.p_F_inv = markov_equilibrium(lifted, L, params).pressure;

  // G runs the coding backwards: transposed block graph, same vertex weights
  // read off the projected centres.
  BlockGraph g = block_graph(L, params);
  const int n = static_cast<int>(g.blocks.size());
  std::vector<double> psi(n);
  for (int i = 0; i < n; ++i) psi[i] = phi_omega(maps::projection_pi(g.centers[i]));
  const double shift = *std::max_element(psi.begin(), psi.end());
  spectral::SparseMatrix M(n);
  for (int i = 0; i < n; ++i)
    for (int j : g.succ[i]) M.add(j, i, std::exp(psi[i] - shift));
  rep.p_G = std::log(spectral::leading_eigen(M).lambda) + shift;
  rep.difference = std::abs(rep.p_F_inv - rep.p_G);
  return rep;
}

namespace {

std::vector<double> block_values(const MarkovData& md, const PotentialSpec& h) {
  std::vector<double> v(md.blocks.size());
  for (std::size_t b = 0; b < v.size(); ++b) v[b] = h(md.centers[b]);
  return v;
}

bool is_constant(const std::vector<double>& v) {
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return *hi - *lo <= 1e-15 * std::max(1.0, std::abs(*hi));
}

int sample_index(const std::vector<double>& cdf, double u) {
  auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  if (it == cdf.end()) --it;
  return static_cast<int>(it - cdf.begin());
}

}  // namespace

CorrelationFit correlation_decay(const MeasureApprox& mu, const PotentialSpec& h1,
                                 const PotentialSpec& h2, int n_max, long samples,
                                 std::uint64_t seed, int threads) {
  if (mu.kind != Kind::Markov) throw KindError("correlation_decay: markov measures only");
  if (n_max < 1 || samples < 2) throw RangeError("correlation_decay: need n_max >= 1, samples >= 2");
  const MarkovData& md = *mu.markov;
  CorrelationFit fit;
  fit.seed = seed;
  fit.samples = samples;
  const auto v1 = block_values(md, h1);
  const auto v2 = block_values(md, h2);
  if (is_constant(v1) || is_constant(v2)) {
    fit.corr.assign(n_max + 1, 0.0);
    fit.stderr_.assign(n_max + 1, 0.0);
    fit.skipped = true;
    return fit;
  }
  const int n = static_cast<int>(md.blocks.size());
  std::vector<double> pi_cdf(n);
  std::partial_sum(md.stationary.begin(), md.stationary.end(), pi_cdf.begin());
  std::vector<std::vector<double>> row_cdf(n);
  std::vector<std::vector<int>> row_idx(n);
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    for (const auto& [j, p] : md.transition.rows[i]) {
      acc += p;
      row_cdf[i].push_back(acc);
      row_idx[i].push_back(j);
    }
  }

  struct Acc {
    std::vector<double> prod, prod2, s1;
    double s2 = 0.0;
  };
  constexpr int kChunks = 16;
  std::vector<Acc> acc(kChunks);
  parallel_for(kChunks, threads, [&](int c) {
    Acc& a = acc[c];
    a.prod.assign(n_max + 1, 0.0);
    a.prod2.assign(n_max + 1, 0.0);
    a.s1.assign(n_max + 1, 0.0);
    std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(c)));
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const long count = samples / kChunks + (c < samples % kChunks ? 1 : 0);
    for (long s = 0; s < count; ++s) {
      int b = sample_index(pi_cdf, u(rng) * pi_cdf.back());
      const double x0 = v2[b];
      a.s2 += x0;
      for (int k = 0; k <= n_max; ++k) {
        if (k > 0) {
          const auto& cdf = row_cdf[b];
          b = row_idx[b][sample_index(cdf, u(rng) * cdf.back())];
        }
        const double pr = v1[b] * x0;
        a.prod[k] += pr;
        a.prod2[k] += pr * pr;
        a.s1[k] += v1[b];
      }
    }
  });
  std::vector<double> prod(n_max + 1, 0.0), prod2(n_max + 1, 0.0), s1(n_max + 1, 0.0);
  double s2 = 0.0;
  for (const auto& a : acc) {
    for (int k = 0; k <= n_max; ++k) {
      prod[k] += a.prod[k];
      prod2[k] += a.prod2[k];
      s1[k] += a.s1[k];
    }
    s2 += a.s2;
  }
  const double N = static_cast<double>(samples);
  fit.corr.resize(n_max + 1);
  fit.stderr_.resize(n_max + 1);
  for (int k = 0; k <= n_max; ++k) {
    const double m = prod[k] / N;
    fit.corr[k] = m - (s1[k] / N) * (s2 / N);
    fit.stderr_[k] = std::sqrt(std::max(prod2[k] / N - m * m, 0.0) / N);
  }
  for (int k = 0; k <= n_max; ++k) {
    if (std::abs(fit.corr[k]) > 3.0 * fit.stderr_[k])
      fit.usable.push_back(k);
    else
      break;
  }
  if (fit.usable.size() < 5)
    throw InsufficientSignal("correlation_decay: fewer than 5 lags above the Monte-Carlo noise floor");
  // least squares on log|corr| = log K + n log theta
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = static_cast<double>(fit.usable.size());
  for (int k : fit.usable) {
    const double y = std::log(std::abs(fit.corr[k]));
    sx += k;
    sy += y;
    sxx += static_cast<double>(k) * k;
    sxy += k * y;
  }
  const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  const double icpt = (sy - slope * sx) / m;
  fit.K = std::exp(icpt);
  fit.theta = std::exp(slope);
  double rss = 0.0;
  for (int k : fit.usable) {
    const double r = std::log(std::abs(fit.corr[k])) - (icpt + slope * k);
    rss += r * r;
  }
  fit.residual = std::sqrt(rss / m);
  return fit;
}

double exact_chain_covariance(const MeasureApprox& mu, const PotentialSpec& h1,
                              const PotentialSpec& h2, int n) {
  if (mu.kind != Kind::Markov) throw KindError("exact_chain_covariance: markov measures only");
  const MarkovData& md = *mu.markov;
  std::vector<double> v = block_values(md, h1);
  const auto w = block_values(md, h2);
  double e1 = 0.0, e2 = 0.0;
  for (std::size_t b = 0; b < v.size(); ++b) {
    e1 += md.stationary[b] * v[b];
    e2 += md.stationary[b] * w[b];
  }
  for (int k = 0; k < n; ++k) v = md.transition.apply(v);
  double s = 0.0;
  for (std::size_t b = 0; b < v.size(); ++b) s += md.stationary[b] * w[b] * v[b];
  return s - e1 * e2;
}

double pressure_lower_bound(const PotentialSpec& phi, int L, const MapParams& params) {
  const double h = golden_log();
  double best = -std::numeric_limits<double>::infinity();
  if (phi.inf_value) best = h + *phi.inf_value;
  const auto eq = markov_equilibrium(phi, L, params);
  best = std::max(best, eq.entropy + eq.integral - eq.reconstruction_pad);
  const auto mme = markov_equilibrium(potentials::constant_potential(0.0), L, params);
  best = std::max(best, mme.entropy + mme.measure.integrate(phi) - integration_pad(mme.measure, phi));
  return best;
}

}  // namespace hst::measures
