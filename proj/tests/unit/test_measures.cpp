#include <doctest.h>

#include <cmath>

#include "hst/errors.hpp"
#include "hst/expansion.hpp"
#include "hst/measures.hpp"
#include "hst/potentials.hpp"

using namespace hst;
using namespace hst::measures;

namespace {
const MapParams P = MapParams::standard();
const double kLogOmega = std::log((1.0 + std::sqrt(5.0)) / 2.0);
}  // namespace

TEST_CASE("topological entropy") {
  const auto e = topological_entropy_estimate(30);
  CHECK(e.spectral == doctest::Approx(0.4812118250596034).epsilon(1e-15));
  CHECK(golden_log() == doctest::Approx(kLogOmega).epsilon(1e-15));
  CHECK(std::abs(e.h_estimate - e.spectral) < 1e-3);
  CHECK(e.method == "word_count_growth");
  CHECK(e.naive_rate > e.h_estimate);
}

TEST_CASE("Dirac and convex measures") {
  CHECK(delta_Q().integrate(potentials::central_potential(P, 1.0)) == doctest::Approx(1.0));
  const auto m = convex_combination(delta_Q(), delta_P(), 0.25);
  CHECK(m.mass() == doctest::Approx(1.0));
  CHECK(m.integrate(potentials::central_potential(P, 1.0)) == doctest::Approx(0.25 - 0.75));
}

TEST_CASE("periodic measures are F-invariant") {
  const auto m = periodic_measure("10", P);
  CHECK(m.atoms.size() == 2);
  CHECK(f_invariance_defect(m, P) < 1e-8);
  CHECK(g_invariance_defect(pushforward_pi(m), P) < 1e-8);
  for (int p = 1; p <= 8; ++p)
    for (const auto& c : primitive_cycles(p)) CHECK(f_invariance_defect(periodic_measure(c, P), P) < 1e-12);
  CHECK_THROWS_AS(periodic_orbit("11", P), AdmissibilityError);
}

TEST_CASE("cycle enumeration") {
  CHECK(cyclic_words(4).size() == 7);  // Lucas number L_4
  CHECK(primitive_cycles(1).size() == 1);
  CHECK(primitive_cycles(2).size() == 1);
  CHECK(primitive_cycles(5).size() == 2);
}

TEST_CASE("Markov equilibrium of constants") {
  for (int L : {2, 4, 8}) {
    const auto z = markov_equilibrium(potentials::constant_potential(0.0), L, P);
    CHECK(z.pressure == doctest::Approx(kLogOmega).epsilon(1e-12));
    CHECK(z.entropy == doctest::Approx(kLogOmega).epsilon(1e-9));
    CHECK(z.reconstruction_pad == 0.0);
    CHECK(z.identity_residual < 1e-9);
    const auto c = markov_equilibrium(potentials::constant_potential(0.3), L, P);
    CHECK(c.pressure == doctest::Approx(kLogOmega + 0.3).epsilon(1e-12));
  }
}

TEST_CASE("central potential lowers the pressure") {
  const auto e = markov_equilibrium(potentials::central_potential(P, 0.1), 8, P);
  CHECK(e.pressure < kLogOmega);
  CHECK(e.identity_residual < 1e-9);
  CHECK(e.measure.mass() == doctest::Approx(1.0));
  // variational lower bounds from periodic measures
  const auto phi = potentials::central_potential(P, 0.1);
  for (int p = 1; p <= 6; ++p)
    for (const auto& c : primitive_cycles(p)) CHECK(periodic_measure(c, P).integrate(phi) <= e.pressure + 0.1);
}

TEST_CASE("variational pressure over a family") {
  const auto z = potentials::constant_potential(0.0);
  const double v = variational_pressure(z, {delta_Q(), markov_equilibrium(z, 8, P).measure});
  CHECK(v == doctest::Approx(kLogOmega).epsilon(1e-9));
}

TEST_CASE("pressure equality under the projection") {
  const auto z = pressure_equality_check(potentials::constant_potential(0.0), 8, P);
  CHECK(z.p_F_inv == doctest::Approx(kLogOmega));
  CHECK(z.p_G == doctest::Approx(kLogOmega));
  const auto c = pressure_equality_check(potentials::constant_potential(-0.4), 8, P);
  CHECK(c.p_G == doctest::Approx(kLogOmega - 0.4));
  const auto u = potentials::make_potential([](const maps::Point3& p) { return 0.5 * p.x - 0.2 * p.y; }, 1.0, 0.5, "xy", false);
  CHECK(pressure_equality_check(u, 8, P).difference < 1e-6);
}

TEST_CASE("correlation decay against the exact chain covariance") {
  const auto mu = markov_equilibrium(potentials::constant_potential(0.0), 4, P).measure;
  const auto h = potentials::make_potential([](const maps::Point3& p) { return p.z; }, 1.0, 1.0, "z", false);
  const auto f = correlation_decay(mu, h, h, 6, 400000, 21, 2);
  REQUIRE(f.corr.size() >= 4);
  for (int n = 1; n <= 4; ++n)
    CHECK(std::abs(f.corr[n] - exact_chain_covariance(mu, h, h, n)) <= 3 * f.stderr_[n] + 1e-12);
  CHECK(f.theta < 1.0);
}
