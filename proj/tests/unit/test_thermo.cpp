#include <doctest.h>

#include <cmath>
#include <limits>

#include "hst/countable_thermo.hpp"
#include "hst/errors.hpp"
#include "hst/measures.hpp"
#include "hst/potentials.hpp"

using namespace hst;
using namespace hst::thermo;

namespace {
const maps::MapParams P = maps::MapParams::standard();
const CylinderId c3{3, "101"}, c4{4, "1001"}, c7{7, "1000101"};

// Example family at a point inside its admissible interval.
potentials::PotentialSpec family_at(double t) {
  return potentials::AdmissibleFamily::make(0.84, 0.0, -1.0, 1.0).at(t);
}
}  // namespace

TEST_CASE("weighted geometric tail") {
  // sum_{k>20} k 2^{-k} = 22 / 2^20
  CHECK(weighted_geometric_tail(0.5, 20) == doctest::Approx(22.0 / std::pow(2.0, 20)).epsilon(1e-12));
  CHECK(weighted_geometric_tail(0.5, 20) < 1e-4);
  double brute = 0;
  for (int k = 6; k < 2000; ++k) brute += k * std::pow(0.7, k);
  CHECK(weighted_geometric_tail(0.7, 5) == doctest::Approx(brute).epsilon(1e-12));
}

TEST_CASE("variation fit") {
  std::vector<int> k;
  std::vector<double> v;
  for (int i = 1; i <= 10; ++i) {
    k.push_back(i);
    v.push_back(2.0 * std::pow(0.3, i));
  }
  const auto f = fit_variation(k, v);
  CHECK(f.a == doctest::Approx(0.3).epsilon(1e-10));
  CHECK(f.C == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(f.certified);
  const auto flat = fit_variation(k, std::vector<double>(10, 1.0));
  CHECK(flat.a == doctest::Approx(1.0));
  CHECK_FALSE(flat.certified);
  CHECK(fit_variation(k, std::vector<double>(10, 0.0)).certified);
  const auto few = fit_variation({1, 2}, {1.0, 0.5});
  CHECK(few.a == 1.0);
  CHECK_FALSE(few.certified);
}

TEST_CASE("strong summability with a closed-form tail") {
  VariationProfile p;
  for (int i = 1; i <= 20; ++i) {
    p.k_values.push_back(i);
    p.var_lower.push_back(std::pow(0.5, i));
  }
  p.fit = fit_variation(p.k_values, p.var_lower);
  const auto r = strong_summability_check(p, 20);
  CHECK(r.verdict == Verdict::Pass);
  CHECK(r.tail_bound < 1e-4);
  CHECK(std::isfinite(r.total));
  CHECK(to_string(Verdict::Inconclusive) == "inconclusive");
}

TEST_CASE("variation of the example family decays") {
  const auto prof = potentials::check_C1(family_at(0.36), 0.4, 10, P, 12, 10, 128, 11, 2);
  CHECK(prof.fit.a < 1.0);
  CHECK(prof.fit.certified);
  for (std::size_t i = 1; i < prof.var_lower.size(); ++i) CHECK(prof.var_lower[i] <= prof.var_lower[i - 1] + 1e-12);
}

TEST_CASE("discontinuous control potential is not certified") {
  const auto step = potentials::make_potential([](const maps::Point3& p) { return p.y < 0.6 ? 0.0 : 1.0; }, 1.0,
                                               std::numeric_limits<double>::infinity(), "step", false);
  const auto prof = potentials::check_C1(step, 0.4, 10, P, 12, 10, 128, 11, 2);
  CHECK(prof.fit.a >= 0.9);
  CHECK_FALSE(prof.fit.certified);
}

TEST_CASE("zero potential pressure on the truncated alphabet") {
  const auto t = inducing::build_induced_table(potentials::constant_potential(0.0), 0.4, 8, 8, P);
  const auto b = gurevich_pressure(t, 8, c3, 40);
  CHECK(b.estimate_lower == doctest::Approx(std::log(3.0)).epsilon(1e-12));
  CHECK(b.estimate_upper == doctest::Approx(std::log(3.0)).epsilon(1e-12));
  CHECK(b.lower <= std::log(3.0) + 1e-12);
  CHECK(b.upper >= std::log(3.0) - 1e-12);
  CHECK(b.lower == doctest::Approx(39.0 / 40.0 * std::log(3.0)).epsilon(1e-12));
  CHECK_THROWS_AS(gurevich_pressure(t, 8, {5, "10001"}, 10), PreconditionError);
  CHECK_THROWS_AS(gurevich_pressure(t, 2, c3, 10), DegenerateError);
}

TEST_CASE("pressure bracket does not depend on the base symbol") {
  const auto t = inducing::build_induced_table(family_at(0.36), 0.4, 10, 12, P).shifted_by_level(-0.47);
  std::vector<PressureBracket> b;
  for (const auto& c : {c3, c4, c7}) b.push_back(gurevich_pressure(t, 10, c, 30));
  for (const auto& x : b)
    for (const auto& y : b) CHECK(x.lower <= y.upper);
}

TEST_CASE("two-symbol Gibbs masses") {
  const double v1 = -0.3, v2 = -1.1;
  const auto t = inducing::InducedPotentialTable::from_values({c3, c4}, {v1, v2});
  const auto g = gibbs_approx(t, 10);
  const double z = std::exp(v1) + std::exp(v2);
  CHECK(g.cylinder_measure.at(c3) == doctest::Approx(std::exp(v1) / z).epsilon(1e-12));
  CHECK(g.cylinder_measure.at(c4) == doctest::Approx(std::exp(v2) / z).epsilon(1e-12));
  CHECK(g.lambda_log == doctest::Approx(std::log(z)).epsilon(1e-12));
  CHECK(g.lambda_log == doctest::Approx(g.pressure.point_estimate).epsilon(1e-12));
  CHECK(g.gibbs_constant == doctest::Approx(1.0));
  CHECK(gibbs_csv(g).find("3,101,") != std::string::npos);
  CHECK(gibbs_json(g).find("\"log_lambda\"") != std::string::npos);
}

TEST_CASE("Gibbs constant is stable in K for the example family") {
  const auto phi = family_at(0.36);
  const double P_m = measures::markov_equilibrium(phi, 8, P).pressure;
  std::vector<double> kg;
  for (int K : {6, 8, 10}) {
    const auto t = inducing::build_induced_table(phi, 0.4, K, 12, P).shifted_by_level(-P_m);
    kg.push_back(gibbs_approx(t, K).gibbs_constant);
  }
  for (double k : kg) {
    CHECK(k >= 1.0);
    CHECK(k / kg.front() < 2.0);
    CHECK(kg.front() / k < 2.0);
  }
}

TEST_CASE("summability with zero potential") {
  const auto t = inducing::build_induced_table(potentials::constant_potential(0.0), 0.4, 10, 8, P);
  const auto r = summability_eq8(t, 0.1, 10, std::log(2.0));
  CHECK(r.sup_from_spec);
  CHECK(r.ratio == doctest::Approx(std::exp(0.1 - std::log(2.0))).epsilon(1e-14));
  CHECK(std::isfinite(r.tail_bound));
  CHECK(r.verdict == Verdict::Pass);
  CHECK(summability_eq8(t, 0.1, 10, 0.0).verdict == Verdict::Inconclusive);
  CHECK_THROWS_AS(summability_eq8(t, 0.0, 10, 1.0), PreconditionError);
}

TEST_CASE("positive recurrence bracket") {
  const auto phi = family_at(0.36);
  const double P_m = measures::markov_equilibrium(phi, 8, P).pressure;
  const auto t = inducing::build_induced_table(phi, 0.4, 24, 8, P).shifted_by_level(-P_m);
  const double eps0 = P_m - 0.0;  // sup phi = 0
  const auto small = positive_recurrence_check(t, eps0 / 2, 24, c3);
  CHECK(small.finite);
  const auto large = positive_recurrence_check(t, 2.0, 24, c3);
  CHECK(large.level_growth > small.level_growth);
  CHECK_FALSE(large.finite);
}

TEST_CASE("binomial growth constant") {
  CHECK(c_alpha(0.5, 2000) == doctest::Approx(std::log(2.0)).epsilon(1e-2));
  CHECK(std::abs(c_alpha(0.25, 2000) - (-0.25 * std::log(0.25) - 0.75 * std::log(0.75))) < 1e-2);
  CHECK(std::abs(c_alpha(0.25, 2000) - 0.5623) < 1e-2);
  CHECK(c_alpha(0.01, 2000) < 0.06);
  CHECK_THROWS_AS(c_alpha(1.0, 2000), RangeError);
  CHECK_THROWS_AS(c_alpha(0.5, 50), RangeError);
}

TEST_CASE("exponential tail of the Gibbs masses") {
  const double h = measures::golden_log();
  const auto z = inducing::build_induced_table(potentials::constant_potential(0.0), 0.4, 24, 4, P).shifted_by_level(-h);
  const auto gz = gibbs_approx(z, 24);
  const auto tz = exponential_tail_check(gz);
  CHECK(tz.theta < 1.0);
  CHECK(tz.theta > 0.0);
  const auto phi = family_at(0.36);
  const double P_m = measures::markov_equilibrium(phi, 8, P).pressure;
  const auto t = inducing::build_induced_table(phi, 0.4, 10, 12, P).shifted_by_level(-P_m);
  const auto tf = exponential_tail_check(gibbs_approx(t, 10));
  CHECK(tf.theta < 1.0);
  for (std::size_t i = 1; i < tf.tails.size(); ++i) CHECK(tf.tails[i] <= tf.tails[i - 1]);
}
