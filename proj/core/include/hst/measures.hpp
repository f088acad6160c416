#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "hst/maps.hpp"
#include "hst/potential_spec.hpp"
#include "hst/spectral.hpp"
#include "hst/symbolic.hpp"

namespace hst::measures {

using maps::MapParams;
using maps::Point3;
using potentials::PotentialSpec;
using symbolic::Word;

enum class Kind { Atomic, Markov };

struct Atom {
  Point3 point;
  double weight = 0.0;
};

// Gibbs-Markov block chain over admissible L-blocks. State b moves to b' when
// b' overlaps b shifted by one symbol.
struct MarkovData {
  int L = 0;
  std::vector<Word> blocks;
  std::vector<Point3> centers;      // reconstructed point at position L/2 of each block
  std::vector<double> center_err;   // reconstruction error bound for each centre
  std::vector<std::array<double, 3>> center_err_xyz;  // per coordinate
  spectral::SparseMatrix transition{0};
  std::vector<double> stationary;
};

struct MeasureApprox {
  Kind kind = Kind::Atomic;
  std::string label;
  std::vector<Atom> atoms;
  Word cycle;  // set for periodic measures
  std::shared_ptr<const MarkovData> markov;
  double entropy = 0.0;

  double integrate(const PotentialSpec& phi) const;
  double mass() const;
};

MeasureApprox dirac(const Point3& p, std::string label);
MeasureApprox delta_Q();
MeasureApprox delta_P();
// s * a + (1-s) * b for atomic measures.
MeasureApprox convex_combination(const MeasureApprox& a, const MeasureApprox& b, double s);

// Reconstructed symbols per side for periodic points.
inline constexpr int kPeriodicDepth = 64;

std::vector<Point3> periodic_orbit(const Word& cycle, const MapParams& params);
MeasureApprox periodic_measure(const Word& cycle, const MapParams& params);
// Every cyclically admissible word of length p (not reduced by rotation).
std::vector<Word> cyclic_words(int p);
// One representative per rotation class whose minimal period is exactly p.
std::vector<Word> primitive_cycles(int p);

struct EntropyReport {
  double spectral = 0.0;     // log of the adjacency spectral radius
  double h_estimate = 0.0;   // word_count_growth: log(N_n / N_{n-1})
  double naive_rate = 0.0;   // (1/n) log N_n
  int n_used = 0;
  std::string method = "word_count_growth";
};

EntropyReport topological_entropy_estimate(int n_max);
double golden_log();

struct MarkovEquilibrium {
  MeasureApprox measure;
  double pressure = 0.0;
  double integral = 0.0;
  double entropy = 0.0;
  double identity_residual = 0.0;  // |h + int phi - log lambda|
  double eigen_gap_ratio = 0.0;    // |lambda_2| / lambda
  // sum_b pi_b * modulus(center_err_b); zero-potential pads vanish
  double reconstruction_pad = 0.0;
  std::vector<double> block_potential;
};

MarkovEquilibrium markov_equilibrium(const PotentialSpec& phi, int L, const MapParams& params);

// Bound on |int phi dmu - integrate(phi)| for a Markov block measure: the
// stationary average of phi's modulus over each centre's error box. Atomic
// measures sit on exact points and return 0.
double integration_pad(const MeasureApprox& mu, const PotentialSpec& phi);

// Rigorous variational lower bound for P(phi): the best of h + int phi - pad
// over the phi-equilibrium and the maximal-entropy block measure, and
// log omega + inf phi when inf phi is known.
double pressure_lower_bound(const PotentialSpec& phi, int L, const MapParams& params);

double variational_pressure(const PotentialSpec& phi, const std::vector<MeasureApprox>& family);

MeasureApprox pushforward_pi(const MeasureApprox& mu);
// Largest distance between G(atom) and the nearest atom of mu.
double g_invariance_defect(const MeasureApprox& mu, const MapParams& params);
// Same for F.
double f_invariance_defect(const MeasureApprox& mu, const MapParams& params);

struct PressureEqualityReport {
  double p_F_inv = 0.0;
  double p_G = 0.0;
  double difference = 0.0;
  int L = 0;
};

// phi_omega is a potential on the planar set; the F^{-1} side uses phi_omega o pi.
PressureEqualityReport pressure_equality_check(const PotentialSpec& phi_omega, int L,
                                               const MapParams& params);

struct CorrelationFit {
  std::vector<double> corr;
  std::vector<double> stderr_;
  std::vector<int> usable;
  double K = 0.0;
  double theta = 0.0;
  double residual = 0.0;
  bool skipped = false;
  std::uint64_t seed = 0;
  long samples = 0;
};

// Monte-Carlo estimate of Cov(h1(X_n), h2(X_0)) along the block chain.
CorrelationFit correlation_decay(const MeasureApprox& mu, const PotentialSpec& h1,
                                 const PotentialSpec& h2, int n_max, long samples,
                                 std::uint64_t seed, int threads = 0);
// Exact chain covariance sum_b pi_b h2(b) (P^n h1)(b) - E h1 E h2.
double exact_chain_covariance(const MeasureApprox& mu, const PotentialSpec& h1,
                              const PotentialSpec& h2, int n);

}  // namespace hst::measures
