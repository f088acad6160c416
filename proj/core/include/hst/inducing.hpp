#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "hst/maps.hpp"
#include "hst/potential_spec.hpp"
#include "hst/symbolic.hpp"

namespace hst::inducing {

using maps::MapParams;
using maps::Point3;
using potentials::PotentialSpec;
using symbolic::CylinderId;
using symbolic::Word;

struct FiniteShiftMeasure {
  std::vector<std::pair<CylinderId, double>> weights;

  // Checks positivity, unit mass (1e-12) and symbol shape.
  void validate() const;
  double mean_return() const;  // sum_D level(D) nu(D)
};

FiniteShiftMeasure point_mass(const CylinderId& c);
FiniteShiftMeasure uniform_measure(const std::vector<CylinderId>& cyls);
FiniteShiftMeasure weighted_measure(const std::vector<CylinderId>& cyls,
                                    const std::vector<double>& probs);

struct TowerDescriptor {
  int K = 0;
  std::map<int, std::vector<CylinderId>> levels;
  int floor_count(int level) const { return level; }
  int total_floors() const;
};

TowerDescriptor build_tower(int K, double alpha);

struct FloorWeight {
  CylinderId cyl;
  int floor = 0;
  double weight = 0.0;
};

struct LiftedMeasure {
  std::vector<FloorWeight> floors;
  double mean_return = 0.0;
  double mass() const;
};

LiftedMeasure lift_measure(const FiniteShiftMeasure& nu);

// Evaluates phi along the i steps of a level word, given base-symbol tails.
// The past tail must end in 0 and the future tail must start with 0.
struct InducedEvaluator {
  PotentialSpec phi;
  MapParams params;

  std::vector<Point3> floor_points(const Word& past_tail, const CylinderId& c,
                                   const Word& future_tail) const;
  double sum(const Word& past_tail, const CylinderId& c, const Word& future_tail) const;
};

// Base-symbol realisation of induced neighbours; each junction carries a 0
// so the window stays in the 11-free coding. left is ordered left to right.
Word realise_past(const std::vector<CylinderId>& left);
Word realise_future(const std::vector<CylinderId>& right);
// Random admissible word of length n with fixed first/last symbol constraints.
Word random_admissible(int n, std::uint64_t seed, bool end_in_zero, bool start_with_zero);

struct InducedValue {
  double inf = 0.0;
  double sup = 0.0;
  double point = 0.0;
};

// Contraction rate used for the Hoelder tail pad.
double tail_rate(const MapParams& params);

InducedValue induced_potential(const CylinderId& cyl, const PotentialSpec& phi, int depth,
                               const MapParams& params);

struct InducedPotentialTable {
  std::vector<CylinderId> symbols;
  std::vector<InducedValue> values;
  double tail_pad = 0.0;
  int depth = 0;
  double per_level_shift = 0.0;  // already folded into values
  std::shared_ptr<const InducedEvaluator> evaluator;  // null for synthetic tables

  int size() const { return static_cast<int>(symbols.size()); }
  int index_of(const CylinderId& c) const;
  // Restricts to levels <= K.
  InducedPotentialTable truncated(int K) const;
  // Adds s * level to every entry.
  InducedPotentialTable shifted_by_level(double s) const;

  static InducedPotentialTable from_values(const std::vector<CylinderId>& syms,
                                           const std::vector<double>& vals);
};

InducedPotentialTable build_induced_table(const PotentialSpec& phi, double alpha, int K, int depth,
                                          const MapParams& params, int threads = 0);

// e(i, A) for the cylinder A = [pattern] at coordinate 0.
double e_of(int i, const Word& pattern, double alpha, int cap = symbolic::kDefaultEnumerationCap);

struct LiftabilityReport {
  std::string label;
  double mu_A = 0.0;
  int N = 0;
  int cap = 0;
  double sup_e = 0.0;
  int argsup_level = 0;
  double margin = 0.0;  // mu_A - sup_e
  bool pass = false;
  // max over N < i <= cap of (max number of 1s in a level-i word)/i, and the
  // frequency bound alpha + (1 - alpha)/(cap + 1) on that ratio beyond cap.
  double ones_ratio_sup = 0.0;
  double ones_ratio_tail_bound = 0.0;
};

LiftabilityReport liftability_check(double mu_A, const Word& pattern, const std::string& label,
                                    double alpha, int N, int cap);
// Best margin over N in {2, 4, 8}.
LiftabilityReport liftability_scan(double mu_A, const Word& pattern, const std::string& label,
                                   double alpha, int cap);

struct KacAbramovReport {
  double lhs = 0.0;  // int phi dL(nu) * int rho dnu
  double rhs = 0.0;  // int phi_rho dnu
  double abs_err = 0.0;
  double mean_return = 0.0;
  double lifted_integral = 0.0;
};

KacAbramovReport kac_abramov_check(const FiniteShiftMeasure& nu, const PotentialSpec& phi,
                                   const MapParams& params, int depth = 16);

struct EntropyIdentityReport {
  double h_nu = 0.0;         // -sum p log p
  double mean_return = 0.0;
  double predicted = 0.0;    // h_nu / int rho
  double estimate = 0.0;     // H_k - H_{k-1} of the amalgamated process
  double rel_err = 0.0;
  int block_len = 0;
  long symbols = 0;
};

EntropyIdentityReport bernoulli_entropy_check(const FiniteShiftMeasure& nu, int block_len,
                                              long n_symbols, std::uint64_t seed);

}  // namespace hst::inducing
