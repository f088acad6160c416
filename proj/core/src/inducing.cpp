#include "hst/inducing.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <random>

#include "hst/errors.hpp"
#include "hst/parallel.hpp"

namespace hst::inducing {

namespace {

void check_shape(const CylinderId& c) {
  const Word& w = c.word;
  if (static_cast<int>(w.size()) != c.level || c.level < 3 || w.front() != '1' || w.back() != '1' ||
      !symbolic::is_admissible(w))
    throw PreconditionError("invalid cylinder symbol '" + w + "'");
}

std::uint64_t word_hash(const Word& w) {
  std::uint64_t h = 1469598103934665603ULL;
  for (char c : w) h = (h ^ static_cast<unsigned char>(c)) * 1099511628211ULL;
  return h ^ w.size();
}

}  // namespace

void FiniteShiftMeasure::validate() const {
  if (weights.empty()) throw PreconditionError("FiniteShiftMeasure: empty support");
  double s = 0.0;
  for (const auto& [c, w] : weights) {
    check_shape(c);
    if (!(w >= 0.0)) throw PreconditionError("FiniteShiftMeasure: negative weight");
    s += w;
  }
  if (std::abs(s - 1.0) > 1e-12) throw PreconditionError("FiniteShiftMeasure: mass differs from 1");
}

double FiniteShiftMeasure::mean_return() const {
  double s = 0.0;
  for (const auto& [c, w] : weights) s += c.level * w;
  return s;
}

FiniteShiftMeasure point_mass(const CylinderId& c) { return {{{c, 1.0}}}; }

FiniteShiftMeasure uniform_measure(const std::vector<CylinderId>& cyls) {
  if (cyls.empty()) throw PreconditionError("uniform_measure: empty support");
  std::vector<double> p(cyls.size(), 1.0 / static_cast<double>(cyls.size()));
  return weighted_measure(cyls, p);
}

FiniteShiftMeasure weighted_measure(const std::vector<CylinderId>& cyls,
                                    const std::vector<double>& probs) {
  if (cyls.size() != probs.size()) throw PreconditionError("weighted_measure: size mismatch");
  FiniteShiftMeasure m;
  for (std::size_t i = 0; i < cyls.size(); ++i) m.weights.emplace_back(cyls[i], probs[i]);
  m.validate();
  return m;
}

int TowerDescriptor::total_floors() const {
  int s = 0;
  for (const auto& [i, cyls] : levels) s += i * static_cast<int>(cyls.size());
  return s;
}

TowerDescriptor build_tower(int K, double alpha) {
  TowerDescriptor t;
  t.K = K;
  const Rational a = Rational::approximate(alpha);
  for (int i = 2; i <= K; ++i) t.levels[i] = symbolic::enumerate_level(i, a, std::max(K, 2));
  return t;
}

double LiftedMeasure::mass() const {
  double s = 0.0;
  for (const auto& f : floors) s += f.weight;
  return s;
}

LiftedMeasure lift_measure(const FiniteShiftMeasure& nu) {
  nu.validate();
  LiftedMeasure out;
  out.mean_return = nu.mean_return();
  if (!(out.mean_return > 0.0)) throw DegenerateError("lift_measure: int rho dnu = 0");
  for (const auto& [c, w] : nu.weights)
    for (int k = 0; k < c.level; ++k) out.floors.push_back({c, k, w / out.mean_return});
  return out;
}

std::vector<Point3> InducedEvaluator::floor_points(const Word& past_tail, const CylinderId& c,
                                                   const Word& future_tail) const {
  const Word& w = c.word;
  std::vector<Point3> pts;
  pts.reserve(w.size());
  for (std::size_t k = 0; k < w.size(); ++k) {
    symbolic::TwoSidedWindow win{past_tail + w.substr(0, k), w.substr(k) + future_tail};
    pts.push_back(symbolic::point_from_itinerary(win, params).point);
  }
  return pts;
}

double InducedEvaluator::sum(const Word& past_tail, const CylinderId& c,
                             const Word& future_tail) const {
  double s = 0.0;
  for (const auto& p : floor_points(past_tail, c, future_tail)) s += phi(p);
  return s;
}

Word realise_past(const std::vector<CylinderId>& left) {
  Word w;
  for (const auto& c : left) w += c.word + "0";
  return w;
}

Word realise_future(const std::vector<CylinderId>& right) {
  Word w;
  for (const auto& c : right) w += "0" + c.word;
  return w;
}

Word random_admissible(int n, std::uint64_t seed, bool end_in_zero, bool start_with_zero) {
  std::mt19937_64 rng(seed);
  Word w(static_cast<std::size_t>(std::max(n, 0)), '0');
  for (int k = 0; k < n; ++k) {
    if (k == 0 && start_with_zero) continue;
    if (k == n - 1 && end_in_zero) continue;
    if (k > 0 && w[k - 1] == '1') continue;
    w[k] = (rng() & 1ULL) ? '1' : '0';
  }
  return w;
}

double tail_rate(const MapParams& params) {
  return std::max({params.lambda0, 1.0 / params.beta1, std::exp(-1.0)});
}

InducedValue induced_potential(const CylinderId& cyl, const PotentialSpec& phi, int depth,
                               const MapParams& params) {
  check_shape(cyl);
  if (depth < 1) throw RangeError("induced_potential: depth must be >= 1");
  const InducedEvaluator ev{phi, params};
  const Word pad(static_cast<std::size_t>(depth), '0');
  InducedValue v;
  v.point = ev.sum(pad, cyl, pad);
  double lo = v.point, hi = v.point;
  const std::uint64_t base = word_hash(cyl.word) ^ (static_cast<std::uint64_t>(depth) << 32);
  for (int s = 0; s < 2 * depth; ++s) {
    const Word rp = random_admissible(depth, derive_seed(base, 2 * s), false, false);
    const Word rf = random_admissible(depth, derive_seed(base, 2 * s + 1), false, false);
    const double val = ev.sum(rp + pad, cyl, pad + rf);
    lo = std::min(lo, val);
    hi = std::max(hi, val);
  }
  double tail = 0.0;
  if (phi.holder()) tail = cyl.level * phi.modulus(3.0 * std::pow(tail_rate(params), depth));
  v.inf = lo - tail;
  v.sup = hi + tail;
  return v;
}

int InducedPotentialTable::index_of(const CylinderId& c) const {
  auto it = std::lower_bound(symbols.begin(), symbols.end(), c, [](const CylinderId& a, const CylinderId& b) {
    return a.level != b.level ? a.level < b.level : a.word < b.word;
  });
  if (it == symbols.end() || !(*it == c)) return -1;
  return static_cast<int>(it - symbols.begin());
}

InducedPotentialTable InducedPotentialTable::truncated(int K) const {
  InducedPotentialTable t = *this;
  t.symbols.clear();
  t.values.clear();
  for (int i = 0; i < size(); ++i) {
    if (symbols[i].level <= K) {
      t.symbols.push_back(symbols[i]);
      t.values.push_back(values[i]);
    }
  }
  return t;
}

InducedPotentialTable InducedPotentialTable::shifted_by_level(double s) const {
  InducedPotentialTable t = *this;
  for (int i = 0; i < size(); ++i) {
    const double d = s * symbols[i].level;
    t.values[i].inf += d;
    t.values[i].sup += d;
    t.values[i].point += d;
  }
  t.per_level_shift += s;
  return t;
}

InducedPotentialTable InducedPotentialTable::from_values(const std::vector<CylinderId>& syms,
                                                         const std::vector<double>& vals) {
  if (syms.size() != vals.size()) throw PreconditionError("from_values: size mismatch");
  std::vector<std::size_t> order(syms.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return syms[a].level != syms[b].level ? syms[a].level < syms[b].level : syms[a].word < syms[b].word;
  });
  InducedPotentialTable t;
  for (auto i : order) {
    t.symbols.push_back(syms[i]);
    t.values.push_back({vals[i], vals[i], vals[i]});
  }
  return t;
}

InducedPotentialTable build_induced_table(const PotentialSpec& phi, double alpha, int K, int depth,
                                          const MapParams& params, int threads) {
  InducedPotentialTable t;
  t.symbols = symbolic::alphabet(K, alpha, std::max(K, symbolic::kDefaultEnumerationCap));
  t.values.resize(t.symbols.size());
  t.depth = depth;
  t.tail_pad = phi.holder() ? phi.modulus(3.0 * std::pow(tail_rate(params), depth)) : 0.0;
  t.evaluator = std::make_shared<InducedEvaluator>(InducedEvaluator{phi, params});
  parallel_for(t.size(), threads, [&](int i) {
    t.values[i] = induced_potential(t.symbols[i], phi, depth, params);
  });
  return t;
}

double e_of(int i, const Word& pattern, double alpha, int cap) {
  if (i > cap) throw ResourceError("e_of: level exceeds enumeration cap");
  if (i < 2) return 0.0;
  if (!symbolic::is_admissible(pattern) || pattern.empty())
    throw PreconditionError("e_of: pattern must be a nonempty admissible word");
  const auto level = symbolic::enumerate_level(i, alpha, cap);
  if (level.empty()) return 0.0;
  int hits = 0;
  for (int k = 0; k < i; ++k) {
    bool meets = false;
    for (const auto& c : level) {
      // w[k..i-1] followed by an admissible continuation must be able to read pattern
      const Word head = c.word.substr(k);
      const std::size_t m = std::min(head.size(), pattern.size());
      if (head.compare(0, m, pattern, 0, m) != 0) continue;
      if (pattern.size() > head.size() && pattern[head.size()] == '1') continue;
      meets = true;
      break;
    }
    hits += meets;
  }
  return static_cast<double>(hits) / i;
}

LiftabilityReport liftability_check(double mu_A, const Word& pattern, const std::string& label,
                                    double alpha, int N, int cap) {
  LiftabilityReport r;
  r.label = label;
  r.mu_A = mu_A;
  r.N = N;
  r.cap = cap;
  const Rational a = Rational::approximate(alpha);
  for (int i = N + 1; i <= cap; ++i) {
    if (i < 2) continue;
    const double e = e_of(i, pattern, alpha, cap);
    if (e > r.sup_e) {
      r.sup_e = e;
      r.argsup_level = i;
    }
    int ones_max = 0;
    for (const auto& c : symbolic::enumerate_level(i, a, cap))
      ones_max = std::max(ones_max, symbolic::ones_count(c.word, i));
    r.ones_ratio_sup = std::max(r.ones_ratio_sup, static_cast<double>(ones_max) / i);
  }
  r.ones_ratio_tail_bound = alpha + (1.0 - alpha) / (cap + 1);
  r.margin = mu_A - r.sup_e;
  r.pass = mu_A > r.sup_e;
  return r;
}

LiftabilityReport liftability_scan(double mu_A, const Word& pattern, const std::string& label,
                                   double alpha, int cap) {
  LiftabilityReport best;
  bool first = true;
  for (int N : {2, 4, 8}) {
    auto r = liftability_check(mu_A, pattern, label, alpha, N, cap);
    if (first || r.margin > best.margin) best = r;
    first = false;
  }
  return best;
}

KacAbramovReport kac_abramov_check(const FiniteShiftMeasure& nu, const PotentialSpec& phi,
                                   const MapParams& params, int depth) {
  const LiftedMeasure lifted = lift_measure(nu);
  const InducedEvaluator ev{phi, params};
  const Word pad(static_cast<std::size_t>(depth), '0');
  std::map<CylinderId, std::vector<double>> floor_vals;
  for (const auto& [c, w] : nu.weights) {
    if (floor_vals.count(c)) continue;
    std::vector<double> v;
    for (const auto& p : ev.floor_points(pad, c, pad)) v.push_back(phi(p));
    floor_vals.emplace(c, std::move(v));
  }
  KacAbramovReport r;
  r.mean_return = lifted.mean_return;
  for (const auto& f : lifted.floors) r.lifted_integral += f.weight * floor_vals.at(f.cyl)[f.floor];
  r.lhs = r.lifted_integral * r.mean_return;
  for (const auto& [c, w] : nu.weights) {
    double s = 0.0;
    for (double x : floor_vals.at(c)) s += x;
    r.rhs += w * s;
  }
  r.abs_err = std::abs(r.lhs - r.rhs);
  return r;
}

EntropyIdentityReport bernoulli_entropy_check(const FiniteShiftMeasure& nu, int block_len,
                                              long n_symbols, std::uint64_t seed) {
  nu.validate();
  if (block_len < 2 || block_len > 20) throw RangeError("bernoulli_entropy_check: block_len in [2, 20]");
  EntropyIdentityReport r;
  r.block_len = block_len;
  for (const auto& [c, p] : nu.weights)
    if (p > 0.0) r.h_nu -= p * std::log(p);
  r.mean_return = nu.mean_return();
  r.predicted = r.h_nu / r.mean_return;

  std::vector<double> cdf;
  double acc = 0.0;
  for (const auto& [c, p] : nu.weights) cdf.push_back(acc += p);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::string s;
  s.reserve(static_cast<std::size_t>(n_symbols) + 64);
  while (static_cast<long>(s.size()) < n_symbols) {
    const double x = u(rng) * acc;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), x);
    if (it == cdf.end()) --it;
    s += nu.weights[static_cast<std::size_t>(it - cdf.begin())].first.word;
  }
  r.symbols = static_cast<long>(s.size());

  auto block_entropy = [&](int k) {
    std::vector<long> counts(std::size_t{1} << k, 0);
    std::uint32_t code = 0;
    const std::uint32_t mask = (1u << k) - 1u;
    long windows = 0;
    for (std::size_t j = 0; j < s.size(); ++j) {
      code = ((code << 1) | (s[j] == '1')) & mask;
      if (static_cast<int>(j) + 1 >= k) {
        ++counts[code];
        ++windows;
      }
    }
    double h = 0.0;
    for (long c : counts) {
      if (c == 0) continue;
      const double q = static_cast<double>(c) / windows;
      h -= q * std::log(q);
    }
    return h;
  };
  r.estimate = block_entropy(block_len) - block_entropy(block_len - 1);
  r.rel_err = std::abs(r.estimate - r.predicted) / r.predicted;
  return r;
}

}  // namespace hst::inducing
