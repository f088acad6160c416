#include "hst/countable_thermo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include "hst/errors.hpp"
#include "hst/parallel.hpp"

namespace hst::thermo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double log_sum_exp(const std::vector<double>& v) {
  if (v.empty()) return -kInf;
  const double m = *std::max_element(v.begin(), v.end());
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (double x : v) s += std::exp(x - m);
  return m + std::log(s);
}

struct LinFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_se = 0.0;
  double r2 = 0.0;
};

LinFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
  LinFit f;
  const std::size_t n = x.size();
  if (n < 2) {
    if (n == 1) f.intercept = y[0];
    return f;
  }
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ssr = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - f.intercept - f.slope * x[i];
    ssr += r * r;
  }
  f.r2 = syy > 0.0 ? 1.0 - ssr / syy : 1.0;
  f.slope_se = n > 2 ? std::sqrt(ssr / (n - 2) / sxx) : 0.0;
  return f;
}

// Beam state: induced symbols shared at |j| < k around the centre.
struct Context {
  std::vector<int> left;  // nearest last
  int centre = 0;
  std::vector<int> right;  // nearest first
  double spread = 0.0;
};

constexpr int kBeam = 16;
constexpr int kExtLen = 3;
constexpr int kRandomExt = 6;
constexpr int kPad = 6;

struct VariationSearch {
  const InducedPotentialTable& t;
  std::uint64_t seed;
  int shortest = 0;
  int densest = 0;

  explicit VariationSearch(const InducedPotentialTable& table, std::uint64_t s) : t(table), seed(s) {
    for (int i = 0; i < t.size(); ++i) {
      if (t.symbols[i].level < t.symbols[shortest].level) shortest = i;
      const auto ones = [&](int j) {
        return static_cast<double>(std::count(t.symbols[j].word.begin(), t.symbols[j].word.end(), '1')) /
               t.symbols[j].level;
      };
      if (ones(i) > ones(densest) || (ones(i) == ones(densest) && t.symbols[i].level > t.symbols[densest].level))
        densest = i;
    }
  }

  double value(const std::vector<int>& left, int c, const std::vector<int>& right) const {
    std::vector<CylinderId> l, r;
    for (int i : left) l.push_back(t.symbols[i]);
    for (int i : right) r.push_back(t.symbols[i]);
    const Word pad(kPad, '0');
    return t.evaluator->sum(pad + inducing::realise_past(l), t.symbols[c],
                            inducing::realise_future(r) + pad);
  }

  double spread(const Context& ctx, std::uint64_t s) const {
    std::mt19937_64 rng(s);
    std::uniform_int_distribution<int> pick(0, t.size() - 1);
    std::vector<std::pair<std::vector<int>, std::vector<int>>> ext;
    for (int e = 0; e < kRandomExt; ++e) {
      std::vector<int> a(kExtLen), b(kExtLen);
      for (auto& x : a) x = pick(rng);
      for (auto& x : b) x = pick(rng);
      ext.emplace_back(a, b);
    }
    ext.emplace_back(std::vector<int>(kExtLen, shortest), std::vector<int>(kExtLen, shortest));
    ext.emplace_back(std::vector<int>(kExtLen, densest), std::vector<int>(kExtLen, densest));
    ext.emplace_back(std::vector<int>(kExtLen, shortest), std::vector<int>(kExtLen, densest));
    ext.emplace_back(std::vector<int>(kExtLen, densest), std::vector<int>(kExtLen, shortest));
    double lo = kInf, hi = -kInf;
    for (const auto& [a, b] : ext) {
      std::vector<int> left = a;
      left.insert(left.end(), ctx.left.begin(), ctx.left.end());
      std::vector<int> right = ctx.right;
      right.insert(right.end(), b.begin(), b.end());
      const double v = value(left, ctx.centre, right);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    return hi - lo;
  }
};

void keep_best(std::vector<Context>& pool) {
  std::stable_sort(pool.begin(), pool.end(),
                   [](const Context& a, const Context& b) { return a.spread > b.spread; });
  if (pool.size() > static_cast<std::size_t>(kBeam)) pool.resize(kBeam);
}

void check_symbols(const InducedPotentialTable& t) {
  if (t.size() == 0) throw DegenerateError("empty alphabet");
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

VariationFit fit_variation(const std::vector<int>& k, const std::vector<double>& v) {
  VariationFit out;
  const double scale = v.empty() ? 0.0 : *std::max_element(v.begin(), v.end());
  if (scale == 0.0) {
    out.certified = true;
    return out;
  }
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (v[i] > 1e-13 * std::max(1.0, scale)) {
      xs.push_back(k[i]);
      ys.push_back(std::log(v[i]));
    }
  }
  out.points = static_cast<int>(xs.size());
  if (xs.size() < 3) {
    out.a = 1.0;  // no decay evidence
    return out;
  }
  const LinFit f = linear_fit(xs, ys);
  out.C = std::exp(f.intercept);
  out.a = std::exp(f.slope);
  out.slope_stderr = f.slope_se;
  out.r2 = f.r2;
  out.certified = std::exp(f.slope + 2.0 * f.slope_se) < 1.0;
  return out;
}

VariationProfile variation_profile(const InducedPotentialTable& psi, int k_max, int samples,
                                   std::uint64_t seed, int threads) {
  if (k_max < 1) throw PreconditionError("variation_profile: k >= 1");
  check_symbols(psi);
  VariationProfile prof;
  if (!psi.evaluator) {
    // Synthetic tables are constant on one-symbol cylinders.
    for (int k = 1; k <= k_max; ++k) {
      prof.k_values.push_back(k);
      prof.var_lower.push_back(0.0);
    }
    prof.fit = fit_variation(prof.k_values, prof.var_lower);
    return prof;
  }
  const VariationSearch search(psi, seed);
  std::vector<Context> beam;
  for (int k = 1; k <= k_max; ++k) {
    std::vector<Context> pool;
    if (k == 1) {
      for (int c = 0; c < psi.size(); ++c) pool.push_back({{}, c, {}, 0.0});
    } else {
      std::mt19937_64 rng(derive_seed(seed, 1000u + k));
      std::uniform_int_distribution<int> pick(0, psi.size() - 1);
      const int per = std::max(2, samples / std::max<int>(1, beam.size()));
      for (const auto& b : beam) {
        for (int j = 0; j < per; ++j) {
          Context c = b;
          c.left.insert(c.left.begin(), j == 0 ? search.shortest : j == 1 ? search.densest : pick(rng));
          c.right.push_back(j == 0 ? search.densest : j == 1 ? search.shortest : pick(rng));
          pool.push_back(std::move(c));
        }
      }
    }
    parallel_for(static_cast<int>(pool.size()), threads, [&](int i) {
      pool[i].spread = search.spread(pool[i], derive_seed(seed, (static_cast<std::uint64_t>(k) << 32) + i));
    });
    keep_best(pool);
    beam = std::move(pool);
    prof.k_values.push_back(k);
    prof.var_lower.push_back(beam.empty() ? 0.0 : beam.front().spread);
  }
  prof.fit = fit_variation(prof.k_values, prof.var_lower);
  return prof;
}

double variation_estimate(const InducedPotentialTable& psi, int k, int samples, std::uint64_t seed) {
  if (k < 1) throw PreconditionError("variation_estimate: k >= 1");
  return variation_profile(psi, k, samples, seed, 1).var_lower.back();
}

double weighted_geometric_tail(double a, int m) {
  if (!(a >= 0.0 && a < 1.0)) return kInf;
  if (a == 0.0) return 0.0;
  return std::pow(a, m + 1) * ((m + 1) - m * a) / ((1.0 - a) * (1.0 - a));
}

SummabilityReport strong_summability_check(const VariationProfile& profile, int k_max) {
  SummabilityReport r;
  for (std::size_t i = 0; i < profile.k_values.size(); ++i)
    if (profile.k_values[i] <= k_max) r.partial += profile.k_values[i] * profile.var_lower[i];
  const auto& f = profile.fit;
  if (!f.certified || !(f.a < 1.0)) {
    r.tail_bound = kInf;
    r.total = kInf;
    r.verdict = Verdict::Inconclusive;
    return r;
  }
  r.tail_bound = f.C * weighted_geometric_tail(f.a, k_max);
  r.total = r.partial + r.tail_bound;
  r.verdict = Verdict::Pass;
  return r;
}

PressureBracket gurevich_pressure(const InducedPotentialTable& table, int K, const CylinderId& base,
                                  int n_max) {
  if (n_max < 1) throw PreconditionError("gurevich_pressure: n_max >= 1");
  const InducedPotentialTable t = table.truncated(K);
  if (t.size() == 0) throw DegenerateError("gurevich_pressure: S_K is empty");
  const int a = t.index_of(base);
  if (a < 0) throw PreconditionError("gurevich_pressure: base symbol not in S_K");
  std::vector<double> lo, hi, pt;
  for (const auto& v : t.values) {
    lo.push_back(v.inf);
    hi.push_back(v.sup);
    pt.push_back(v.point);
  }
  // Full shift: M_ab = e^{v_b} is rank one, so Z_n([a]) = e^{v_a} lambda^{n-1}
  // and every row sum of M^n equals lambda^n.
  const double L_lo = log_sum_exp(lo), L_hi = log_sum_exp(hi);
  PressureBracket b;
  b.K = K;
  b.n_max = n_max;
  b.base_symbol = base;
  for (int n = 1; n <= n_max; ++n) {
    b.lower_by_n.push_back((lo[a] + (n - 1) * L_lo) / n);
    b.upper_by_n.push_back(L_hi);
  }
  b.lower = b.lower_by_n.back();
  b.upper = b.upper_by_n.back();
  b.estimate_lower = L_lo;
  b.estimate_upper = L_hi;
  b.point_estimate = log_sum_exp(pt);
  return b;
}

GibbsApprox gibbs_approx(const InducedPotentialTable& table, int K) {
  const InducedPotentialTable t = table.truncated(K);
  if (t.size() == 0) throw DegenerateError("gibbs_approx: S_K is empty");
  const int n = t.size();
  double vmax = -kInf;
  for (const auto& v : t.values) vmax = std::max(vmax, v.point);
  spectral::SparseMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.add(i, j, std::exp(t.values[j].point - vmax));
  const auto e = spectral::leading_eigen(m, 1e-13, 100000);
  GibbsApprox g;
  g.K = K;
  g.iterations = e.iterations;
  g.lambda_log = std::log(e.lambda) + vmax;
  g.left = e.left;
  g.right = e.right;
  g.second_modulus_ratio = spectral::second_modulus(m, e) / e.lambda;
  g.pressure = gurevich_pressure(t, K, t.symbols.front(), 64);
  double total = 0.0;
  std::vector<double> mass(n);
  for (int i = 0; i < n; ++i) total += mass[i] = e.left[i] * e.right[i];
  g.gibbs_constant = 1.0;
  for (int i = 0; i < n; ++i) {
    mass[i] /= total;
    g.cylinder_measure[t.symbols[i]] = mass[i];
    const auto& v = t.values[i];
    const double ratio = mass[i] / std::exp(v.point - g.lambda_log);
    g.gibbs_constant = std::max({g.gibbs_constant, ratio * std::exp(v.point - v.inf),
                                 1.0 / (ratio * std::exp(v.point - v.sup))});
  }
  return g;
}

std::string gibbs_csv(const GibbsApprox& g) {
  std::ostringstream os;
  os << "level,word,mass\r\n";
  char buf[64];
  for (const auto& [c, m] : g.cylinder_measure) {
    std::snprintf(buf, sizeof buf, "%.17g", m);
    os << c.level << ',' << c.word << ',' << buf << "\r\n";
  }
  return os.str();
}

std::string gibbs_json(const GibbsApprox& g) {
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "{\"K\":%d,\"pressure_lower\":%.17g,\"pressure_upper\":%.17g,\"log_lambda\":%.17g,"
                "\"eigen_gap_ratio\":%.17g,\"gibbs_constant\":%.17g}",
                g.K, g.pressure.estimate_lower, g.pressure.estimate_upper, g.lambda_log,
                g.second_modulus_ratio, g.gibbs_constant);
  return buf;
}

Eq8Report summability_eq8(const InducedPotentialTable& table, double eps, int K, double P_shift) {
  if (!(eps > 0.0)) throw PreconditionError("summability_eq8: eps > 0");
  const InducedPotentialTable t = table.truncated(K);
  Eq8Report r;
  std::map<int, double> level_sup;
  double sup_avg = -kInf;
  for (int i = 0; i < t.size(); ++i) {
    const int lv = t.symbols[i].level;
    auto it = level_sup.find(lv);
    level_sup[lv] = it == level_sup.end() ? t.values[i].sup : std::max(it->second, t.values[i].sup);
    sup_avg = std::max(sup_avg, t.values[i].sup / lv);
  }
  for (const auto& [i, s] : level_sup) {
    const double term = i * std::exp(s - i * P_shift + i * eps);
    r.terms.push_back(term);
    r.partial += term;
  }
  if (t.evaluator && t.evaluator->phi.sup_value) {
    r.sup_phi = *t.evaluator->phi.sup_value + t.per_level_shift;
    r.sup_from_spec = true;
  } else {
    r.sup_phi = sup_avg;
  }
  r.ratio = std::exp(r.sup_phi - P_shift + eps);
  if (r.ratio < 1.0) {
    r.tail_bound = weighted_geometric_tail(r.ratio, K);
    r.verdict = (r.sup_from_spec || !t.evaluator) ? Verdict::Pass : Verdict::Inconclusive;
  } else {
    r.tail_bound = kInf;
    r.verdict = Verdict::Inconclusive;
  }
  return r;
}

RecurrenceReport positive_recurrence_check(const InducedPotentialTable& table, double delta, int K,
                                           const CylinderId& base, int n_max) {
  if (delta < 0.0) throw PreconditionError("positive_recurrence_check: delta >= 0");
  const InducedPotentialTable t = table.shifted_by_level(delta).truncated(K);
  RecurrenceReport r;
  r.bracket = gurevich_pressure(t, K, base, n_max);
  std::map<int, std::vector<double>> per_level;
  for (int i = 0; i < t.size(); ++i) per_level[t.symbols[i].level].push_back(t.values[i].sup);
  std::vector<double> xs, ys;
  for (const auto& [lv, v] : per_level) {
    xs.push_back(lv);
    ys.push_back(log_sum_exp(v));
  }
  const std::size_t top = std::min<std::size_t>(4, xs.size());
  const std::vector<double> tx(xs.end() - top, xs.end()), ty(ys.end() - top, ys.end());
  r.level_growth = top >= 2 ? linear_fit(tx, ty).slope : -kInf;
  r.finite = std::isfinite(r.bracket.upper) && r.level_growth < 0.0;
  return r;
}

double c_alpha(double alpha, int n_max) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw RangeError("c_alpha: alpha in (0,1)");
  if (n_max < 100) throw RangeError("c_alpha: n_max >= 100");
  const int kmax = static_cast<int>(std::floor(alpha * n_max + 1e-9));
  std::vector<double> terms;
  const double ln = std::lgamma(n_max + 1.0);
  for (int k = 0; k <= kmax; ++k)
    terms.push_back(ln - std::lgamma(k + 1.0) - std::lgamma(n_max - k + 1.0));
  return log_sum_exp(terms) / n_max;
}

TailFit exponential_tail_check(const GibbsApprox& g) {
  std::map<int, double> by_level;
  for (const auto& [c, m] : g.cylinder_measure) by_level[c.level] += m;
  TailFit f;
  for (const auto& [lv, m] : by_level)
    if (m > 0.0) f.last_level = std::max(f.last_level, lv);
  std::vector<double> xs, ys;
  for (int m = 2; m <= g.K; ++m) {
    double tail = 0.0;
    for (const auto& [lv, mass] : by_level)
      if (lv >= m) tail += mass;
    f.m_values.push_back(m);
    f.tails.push_back(tail);
    if (tail > 0.0) {
      xs.push_back(m);
      ys.push_back(std::log(tail));
    }
  }
  if (xs.size() >= 2) {
    const LinFit lf = linear_fit(xs, ys);
    f.C = std::exp(lf.intercept);
    f.theta = std::exp(lf.slope);
  } else if (xs.size() == 1) {
    f.C = std::exp(ys[0]);
    f.theta = 0.0;
  }
  for (std::size_t i = 0; i < f.m_values.size(); ++i) {
    const double T = f.tails[i];
    const double model = f.C * std::pow(f.theta, f.m_values[i]);
    const double rel = T > 0.0 ? std::abs(model - T) / T : 0.0;
    f.rel_residuals.push_back(rel);
    if (T > 0.0) f.max_rel_residual = std::max(f.max_rel_residual, rel);
  }
  return f;
}

}  // namespace hst::thermo
