#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hst/errors.hpp"
#include "hst/maps.hpp"
#include "hst/rational.hpp"

namespace hst::symbolic {

using maps::MapParams;
using maps::Point3;

// ASCII string over {'0','1'}.
using Word = std::string;

inline constexpr int kDefaultEnumerationCap = 24;

struct TwoSidedWindow {
  Word past;    // symbols at -D..-1
  Word future;  // symbols at 0..D'-1
};

struct CylinderId {
  int level = 0;
  Word word;
  auto operator<=>(const CylinderId&) const = default;
};

struct InducingParams {
  double alpha = 0.4;
  double tau = 0.2;

  static InducingParams make(double alpha, double tau);
  void validate() const;
  Rational alpha_exact() const { return Rational::approximate(alpha); }
  // floor(1/(alpha - tau)), computed on the exact fractions.
  int N() const;
};

struct BlockDecomposition {
  std::vector<int> blocks;      // n_1..n_r, block b_n = 0^n 1
  std::map<int, int> counts;    // n -> a(w, i, n)
  int length = 0;               // i

  int count(int n) const;
  // 1 + sum_k (k+1) a(w,i,k); equals length by construction.
  int identity_lhs() const;
  // 1 + sum_{k=1}^{N-1} a(w,i,k).
  int short_block_count(int N) const;
};

struct MOfC0 {
  int m = -1;
  bool warning = false;  // m = -1, or m capped
  bool capped = false;
};

bool is_word(const Word& w);
bool is_admissible(const Word& w);
// Cyclic admissibility: no 11 including the wraparound pair.
bool is_cyclic_admissible(const Word& w);
// Number of admissible words of length n (Fibonacci numbers), exact up to n=90.
std::uint64_t count_admissible(int n);
// All admissible words of length n, lexicographic.
std::vector<Word> enumerate_admissible(int n);

TwoSidedWindow itinerary(const Point3& p, int n_fwd, int n_back, const MapParams& params);

int ones_count(const Word& w, int n);
double freq_plus(const Word& w, int n);

std::optional<int> return_time(const Word& w, const Rational& alpha);
std::optional<int> return_time(const Word& w, double alpha);

std::vector<CylinderId> enumerate_level(int i, const Rational& alpha,
                                        int cap = kDefaultEnumerationCap);
std::vector<CylinderId> enumerate_level(int i, double alpha, int cap = kDefaultEnumerationCap);
// Truncated alphabet S_K: every level-i cylinder for 2 <= i <= K, ordered by level then word.
std::vector<CylinderId> alphabet(int K, double alpha, int cap = kDefaultEnumerationCap);
// True when w is a level word of the inducing scheme, i.e. return_time(w) == |w|.
bool is_level_word(const Word& w, const Rational& alpha);

// Plain concatenation of cylinder words. Junctions "1|1" are part of the
// coding; malformed symbols (level mismatch, internal 11, wrong endpoints)
// throw AdmissibilityError. The alpha overload additionally checks that every
// word is a genuine level word.
Word amalgamate(const std::vector<CylinderId>& symbols);
Word amalgamate(const std::vector<CylinderId>& symbols, double alpha);

struct DecodeResult {
  std::vector<CylinderId> symbols;
  Word remainder;
};

class IncompleteError : public Error {
 public:
  IncompleteError(const std::string& what, DecodeResult partial)
      : Error(what), partial_(std::move(partial)) {}
  const DecodeResult& partial() const noexcept { return partial_; }

 private:
  DecodeResult partial_;
};

// Greedy cut at successive return times. decode_prefix never throws on an
// unconsumable tail; decode_to_symbols throws IncompleteError in that case.
DecodeResult decode_prefix(const Word& w, double alpha);
std::vector<CylinderId> decode_to_symbols(const Word& w, double alpha);

struct Reconstruction {
  Point3 point;
  double error_bound = 1.0;
  double err_x = 1.0;
  double err_y = 1.0;
  double err_z = 1.0;
};

Reconstruction point_from_itinerary(const TwoSidedWindow& win, const MapParams& params);

struct CentralValue {
  double value = 0.0;
  double log_derivative = 0.0;
};

// f_{w_{n-1}} o ... o f_{w_0}(y) with f_0 = f and f_1(y) = sigma(1-y).
CentralValue central_composition(const Word& w, double y, const MapParams& params);

BlockDecomposition block_decompose(const Word& w);

MOfC0 m_of_c0(double c0, const MapParams& params, int cap = kDefaultEnumerationCap);

// Repeat a cyclic word until it reaches at least `len` symbols, then cut.
Word periodic_extend(const Word& cycle, int len, int phase = 0);

}  // namespace hst::symbolic
