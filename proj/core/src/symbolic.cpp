#include "hst/symbolic.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace hst::symbolic {

namespace {

void require_word(const Word& w, const char* who) {
  if (!is_word(w)) throw FormatError(std::string(who) + ": word must contain only 0 and 1");
}

void check_symbol(const CylinderId& c) {
  const Word& w = c.word;
  if (!is_word(w) || static_cast<int>(w.size()) != c.level || c.level < 3 || w.front() != '1' ||
      w.back() != '1' || !is_admissible(w))
    throw AdmissibilityError("malformed cylinder symbol '" + w + "' at level " +
                             std::to_string(c.level));
}

}  // namespace

InducingParams InducingParams::make(double alpha, double tau) {
  InducingParams p{alpha, tau};
  p.validate();
  return p;
}

void InducingParams::validate() const {
  if (!(alpha > 0.0 && alpha < 2.0 / 3.0)) throw RangeError("alpha must lie in (0, 2/3)");
  if (!(tau > 0.0 && tau < alpha)) throw RangeError("tau must lie in (0, alpha)");
}

int InducingParams::N() const {
  const Rational a = Rational::approximate(alpha);
  const Rational t = Rational::approximate(tau);
  // 1/(a - t) = (a.den t.den) / (a.num t.den - t.num a.den)
  const std::int64_t num = a.den * t.den;
  const std::int64_t den = a.num * t.den - t.num * a.den;
  return static_cast<int>(num / den);
}

int BlockDecomposition::count(int n) const {
  auto it = counts.find(n);
  return it == counts.end() ? 0 : it->second;
}

int BlockDecomposition::identity_lhs() const {
  int s = 1;
  for (const auto& [k, a] : counts) s += (k + 1) * a;
  return s;
}

int BlockDecomposition::short_block_count(int N) const {
  int s = 1;
  for (const auto& [k, a] : counts)
    if (k >= 1 && k <= N - 1) s += a;
  return s;
}

bool is_word(const Word& w) {
  for (char c : w)
    if (c != '0' && c != '1') return false;
  return true;
}

bool is_admissible(const Word& w) { return is_word(w) && w.find("11") == Word::npos; }

bool is_cyclic_admissible(const Word& w) {
  if (w.empty() || !is_admissible(w)) return false;
  return !(w.front() == '1' && w.back() == '1');
}

std::uint64_t count_admissible(int n) {
  if (n < 0) throw RangeError("count_admissible: negative length");
  if (n > 90) throw ResourceError("count_admissible: length beyond 64-bit range");
  std::uint64_t end0 = 1, end1 = 0;  // words of length 0 (treated as ending in 0)
  for (int k = 0; k < n; ++k) {
    const std::uint64_t n0 = end0 + end1;
    const std::uint64_t n1 = end0;
    end0 = n0;
    end1 = n1;
  }
  return end0 + end1;
}

std::vector<Word> enumerate_admissible(int n) {
  std::vector<Word> out;
  Word cur;
  std::function<void()> rec = [&]() {
    if (static_cast<int>(cur.size()) == n) {
      out.push_back(cur);
      return;
    }
    cur.push_back('0');
    rec();
    cur.back() = '1';
    if (cur.size() < 2 || cur[cur.size() - 2] != '1') rec();
    cur.pop_back();
  };
  rec();
  return out;
}

TwoSidedWindow itinerary(const Point3& p, int n_fwd, int n_back, const MapParams& params) {
  using maps::Region;
  TwoSidedWindow win;
  win.future.reserve(n_fwd);
  Point3 q = p;
  for (int k = 0; k < n_fwd; ++k) {
    const Region r = maps::horseshoe_region(q);
    if (r == Region::Outside)
      throw EscapeError("itinerary: forward orbit leaves R0 u R1 at index " + std::to_string(k), k);
    win.future.push_back(r == Region::R0 ? '0' : '1');
    if (k + 1 < n_fwd) q = maps::horseshoe_F(q, params);
  }
  win.past.assign(n_back, '0');
  q = p;
  for (int k = 1; k <= n_back; ++k) {
    const int b = maps::inverse_branch(q, params);
    if (b < 0)
      throw EscapeError("itinerary: backward orbit leaves R0 u R1 at index " + std::to_string(-k),
                        -k);
    q = maps::horseshoe_F_inv(q, b, params);
    const Region r = maps::horseshoe_region(q);
    if (r != (b == 0 ? Region::R0 : Region::R1))
      throw EscapeError("itinerary: backward orbit leaves R0 u R1 at index " + std::to_string(-k),
                        -k);
    win.past[n_back - k] = b == 0 ? '0' : '1';
  }
  return win;
}

int ones_count(const Word& w, int n) {
  if (n < 0 || n > static_cast<int>(w.size())) throw RangeError("ones_count: n out of bounds");
  int c = 0;
  for (int k = 0; k < n; ++k) c += w[k] == '1';
  return c;
}

double freq_plus(const Word& w, int n) {
  if (n < 1 || n > static_cast<int>(w.size())) throw RangeError("freq_plus: n out of bounds");
  return static_cast<double>(ones_count(w, n)) / static_cast<double>(n);
}

std::optional<int> return_time(const Word& w, const Rational& alpha) {
  require_word(w, "return_time");
  if (w.empty() || w[0] != '1') throw PreconditionError("return_time: word must start with 1");
  std::int64_t ones = 1;
  for (std::size_t k = 2; k <= w.size(); ++k) {
    if (w[k - 1] != '1') continue;
    ++ones;
    if (alpha.less_than_ratio(ones, static_cast<std::int64_t>(k))) return static_cast<int>(k);
  }
  return std::nullopt;
}

std::optional<int> return_time(const Word& w, double alpha) {
  return return_time(w, Rational::approximate(alpha));
}

std::vector<CylinderId> enumerate_level(int i, const Rational& alpha, int cap) {
  if (i < 2) throw RangeError("enumerate_level: level must be >= 2");
  if (i > cap)
    throw ResourceError("enumerate_level: level " + std::to_string(i) +
                        " exceeds enumeration cap " + std::to_string(cap));
  std::vector<CylinderId> out;
  Word cur = "1";
  std::function<void(std::int64_t)> rec = [&](std::int64_t ones) {
    const auto k = static_cast<std::int64_t>(cur.size());
    if (k == i) {
      if (cur.back() == '1' && alpha.less_than_ratio(ones, k)) out.push_back({i, cur});
      return;
    }
    // position k receives the next symbol; the last one must be 1, so i-2 must be 0
    cur.push_back('0');
    if (k != i - 1) rec(ones);
    cur.back() = '1';
    if (cur[k - 1] != '1' && k != i - 2) {
      const bool returns = alpha.less_than_ratio(ones + 1, k + 1);
      if (k + 1 == i || !returns) rec(ones + 1);
    }
    cur.pop_back();
  };
  rec(1);
  return out;
}

std::vector<CylinderId> enumerate_level(int i, double alpha, int cap) {
  return enumerate_level(i, Rational::approximate(alpha), cap);
}

std::vector<CylinderId> alphabet(int K, double alpha, int cap) {
  const Rational a = Rational::approximate(alpha);
  std::vector<CylinderId> out;
  for (int i = 2; i <= K; ++i) {
    auto lvl = enumerate_level(i, a, cap);
    out.insert(out.end(), lvl.begin(), lvl.end());
  }
  return out;
}

bool is_level_word(const Word& w, const Rational& alpha) {
  if (w.empty() || !is_word(w) || w[0] != '1') return false;
  auto rt = return_time(w, alpha);
  return rt && *rt == static_cast<int>(w.size());
}

Word amalgamate(const std::vector<CylinderId>& symbols) {
  Word out;
  for (const auto& c : symbols) {
    check_symbol(c);
    out += c.word;
  }
  return out;
}

Word amalgamate(const std::vector<CylinderId>& symbols, double alpha) {
  const Rational a = Rational::approximate(alpha);
  for (const auto& c : symbols) {
    check_symbol(c);
    if (!is_level_word(c.word, a))
      throw AdmissibilityError("'" + c.word + "' is not a level word at this alpha");
  }
  return amalgamate(symbols);
}

DecodeResult decode_prefix(const Word& w, double alpha) {
  require_word(w, "decode_prefix");
  const Rational a = Rational::approximate(alpha);
  DecodeResult res;
  std::size_t pos = 0;
  while (pos < w.size()) {
    if (w[pos] != '1') break;
    const Word rest = w.substr(pos);
    auto rt = return_time(rest, a);
    if (!rt) break;
    Word sym = rest.substr(0, *rt);
    if (!is_admissible(sym))
      throw AdmissibilityError("decode: symbol '" + sym + "' contains 11");
    res.symbols.push_back({*rt, std::move(sym)});
    pos += static_cast<std::size_t>(*rt);
  }
  res.remainder = w.substr(pos);
  return res;
}

std::vector<CylinderId> decode_to_symbols(const Word& w, double alpha) {
  require_word(w, "decode_to_symbols");
  if (w.empty() || w[0] != '1') throw PreconditionError("decode_to_symbols: word must start with 1");
  DecodeResult res = decode_prefix(w, alpha);
  if (!res.remainder.empty()) {
    const std::string msg = "decode_to_symbols: tail '" + res.remainder + "' has no further return";
    throw IncompleteError(msg, std::move(res));
  }
  return res.symbols;
}

CentralValue central_composition(const Word& w, double y, const MapParams& params) {
  require_word(w, "central_composition");
  CentralValue cv{y, 0.0};
  const double log_sigma = std::log(params.sigma);
  for (char s : w) {
    if (s == '0') {
      cv.log_derivative += std::log(maps::flow_derivative(cv.value));
      cv.value = maps::flow_map(cv.value, 1);
    } else {
      cv.log_derivative += log_sigma;
      cv.value = params.sigma * (1.0 - cv.value);
    }
  }
  return cv;
}

Reconstruction point_from_itinerary(const TwoSidedWindow& win, const MapParams& params) {
  require_word(win.past, "point_from_itinerary");
  require_word(win.future, "point_from_itinerary");
  if (win.past.empty()) throw PreconditionError("point_from_itinerary: past window must be nonempty");
  if (!is_admissible(win.past + win.future))
    throw AdmissibilityError("point_from_itinerary: window contains 11");

  Reconstruction r;
  double x = 0.5;
  for (char s : win.past) x = s == '0' ? params.lambda0 * x : 0.75 - params.lambda0 * x;
  r.err_x = std::pow(params.lambda0, static_cast<double>(win.past.size()));

  const double y = central_composition(win.past, 0.5, params).value;
  const double y_lo = central_composition(win.past, 0.0, params).value;
  const double y_hi = central_composition(win.past, 1.0, params).value;
  r.err_y = std::abs(y_hi - y_lo);

  double z = 0.0;
  for (auto it = win.future.rbegin(); it != win.future.rend(); ++it)
    z = *it == '0' ? z / params.beta0 : z / params.beta1 + 5.0 / 6.0;
  if (win.future.empty()) {
    r.err_z = 1.0;
  } else {
    r.err_z = std::pow(params.beta1, -static_cast<double>(win.future.size() - 1)) / 6.0;
  }

  r.point = {x, y, z};
  r.error_bound = std::max({r.err_x, r.err_y, r.err_z});
  return r;
}

BlockDecomposition block_decompose(const Word& w) {
  require_word(w, "block_decompose");
  if (w.empty() || w.front() != '1') throw FormatError("block_decompose: word must start with 1");
  if (w.back() != '1') throw FormatError("block_decompose: word must end with 1");
  if (!is_admissible(w)) throw FormatError("block_decompose: word contains 11");
  BlockDecomposition d;
  d.length = static_cast<int>(w.size());
  int zeros = 0;
  for (std::size_t k = 1; k < w.size(); ++k) {
    if (w[k] == '0') {
      ++zeros;
    } else {
      d.blocks.push_back(zeros);
      ++d.counts[zeros];
      zeros = 0;
    }
  }
  return d;
}

MOfC0 m_of_c0(double c0, const MapParams& params, int cap) {
  if (!(c0 > 5.0 / 6.0 && c0 < 1.0)) throw RangeError("m_of_c0: c0 must lie in (5/6, 1)");
  MOfC0 out;
  double factor = params.beta1 * (c0 - 5.0 / 6.0);
  if (factor > 1.0 / 6.0) {
    out.m = -1;
    out.warning = true;
    return out;
  }
  int k = 0;
  while (k < cap && factor * params.beta0 <= 1.0 / 6.0) {
    factor *= params.beta0;
    ++k;
  }
  out.m = k;
  if (k == cap) {
    out.capped = true;
    out.warning = true;
  }
  return out;
}

Word periodic_extend(const Word& cycle, int len, int phase) {
  if (cycle.empty()) throw PreconditionError("periodic_extend: empty cycle");
  Word out(static_cast<std::size_t>(std::max(len, 0)), '0');
  const int p = static_cast<int>(cycle.size());
  for (int j = 0; j < len; ++j) out[j] = cycle[((phase + j) % p + p) % p];
  return out;
}

}  // namespace hst::symbolic
