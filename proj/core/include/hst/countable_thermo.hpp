#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hst/inducing.hpp"
#include "hst/spectral.hpp"

namespace hst::thermo {

using inducing::InducedPotentialTable;
using symbolic::CylinderId;
using symbolic::Word;

struct VariationFit {
  double C = 0.0;
  double a = 0.0;
  double slope_stderr = 0.0;
  double r2 = 0.0;
  int points = 0;
  // exp(slope + 2 stderr) < 1, or every estimate is exactly zero
  bool certified = false;
};

struct VariationProfile {
  std::vector<int> k_values;
  std::vector<double> var_lower;
  VariationFit fit;
};

// Lower bound for Var_k: largest spread of Psi over induced sequences sharing
// the symbols at |j| < k. Requires a table with an evaluator.
double variation_estimate(const InducedPotentialTable& psi, int k, int samples,
                          std::uint64_t seed = 11);
VariationProfile variation_profile(const InducedPotentialTable& psi, int k_max, int samples,
                                   std::uint64_t seed = 11, int threads = 0);
// Least-squares fit of log Var_k = log C + k log a over the nonzero estimates.
VariationFit fit_variation(const std::vector<int>& k, const std::vector<double>& v);

enum class Verdict { Pass, Fail, Inconclusive };
std::string to_string(Verdict v);

struct SummabilityReport {
  double partial = 0.0;
  double tail_bound = 0.0;
  double total = 0.0;
  Verdict verdict = Verdict::Inconclusive;
};

SummabilityReport strong_summability_check(const VariationProfile& profile, int k_max);
// sum_{k > m} k a^k
double weighted_geometric_tail(double a, int m);

struct PressureBracket {
  double lower = 0.0;  // at n = n_max
  double upper = 0.0;
  double estimate_lower = 0.0;  // log lambda of the inf weighting
  double estimate_upper = 0.0;  // log lambda of the sup weighting
  double point_estimate = 0.0;  // log lambda of the point weighting
  int K = 0;
  int n_max = 0;
  CylinderId base_symbol;
  std::vector<double> lower_by_n;  // index n-1
  std::vector<double> upper_by_n;
};

PressureBracket gurevich_pressure(const InducedPotentialTable& table, int K, const CylinderId& base,
                                  int n_max);

struct GibbsApprox {
  PressureBracket pressure;
  std::map<CylinderId, double> cylinder_measure;
  double lambda_log = 0.0;  // log of the leading eigenvalue
  std::vector<double> left;
  std::vector<double> right;
  double second_modulus_ratio = 0.0;
  double gibbs_constant = 1.0;
  int K = 0;
  int iterations = 0;
};

GibbsApprox gibbs_approx(const InducedPotentialTable& table, int K);
// level, word, mass
std::string gibbs_csv(const GibbsApprox& g);
std::string gibbs_json(const GibbsApprox& g);

struct Eq8Report {
  double partial = 0.0;
  double tail_bound = 0.0;
  double ratio = 0.0;          // e^{sup phi - P_shift + eps}
  double sup_phi = 0.0;
  bool sup_from_spec = false;  // false: estimated from table sup / level
  std::vector<double> terms;   // i * sup e^{...} for each level present
  Verdict verdict = Verdict::Inconclusive;
};

Eq8Report summability_eq8(const InducedPotentialTable& table, double eps, int K, double P_shift);

struct RecurrenceReport {
  PressureBracket bracket;
  // slope of log sum_{D in Sigma_i} e^{sup} over the top levels
  double level_growth = 0.0;
  bool finite = false;
};

RecurrenceReport positive_recurrence_check(const InducedPotentialTable& table, double delta, int K,
                                           const CylinderId& base, int n_max = 64);

double c_alpha(double alpha, int n_max);

struct TailFit {
  std::vector<int> m_values;
  std::vector<double> tails;
  std::vector<double> rel_residuals;
  double C = 0.0;
  double theta = 0.0;
  double max_rel_residual = 0.0;
  int last_level = 0;  // tails vanish beyond this level
};

TailFit exponential_tail_check(const GibbsApprox& g);

}  // namespace hst::thermo
