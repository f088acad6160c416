#include <doctest.h>

#include <cmath>
#include <random>

#include "hst/errors.hpp"
#include "hst/measures.hpp"
#include "hst/potentials.hpp"

using namespace hst;
using namespace hst::potentials;

namespace {
const MapParams P = MapParams::standard();
const double kOmega = (1.0 + std::sqrt(5.0)) / 2.0;

double periodic_sum(const PotentialSpec& phi, const symbolic::Word& c) {
  double s = 0;
  for (const auto& p : measures::periodic_orbit(c, P)) s += phi(p);
  return s;
}
}  // namespace

TEST_CASE("example potential shape and Hoelder constant") {
  const auto phi = example_potential(0.84, 0.0, -1.0, 1.0);
  CHECK(phi({0.1, 0.2, 0.5}) == 0.0);
  CHECK(phi({0.1, 0.2, 1.0}) == doctest::Approx(-1.0));
  CHECK(phi({0.1, 0.2, 0.92}) == doctest::Approx(-0.5));
  CHECK(phi.C == doctest::Approx(1.0 / 0.16));
  CHECK(*phi.sup_value == 0.0);
  CHECK(*phi.inf_value == -1.0);
  const auto h = holder_spot_check(phi, 1000, 5);
  CHECK(h.ok);
  CHECK(h.max_quotient <= 1.0 / 0.16 + 1e-9);
  const auto half = example_potential(0.9, 0.5, 0.0, 0.5);
  CHECK(half.C == doctest::Approx(0.5 / std::sqrt(0.1)));
  CHECK(holder_spot_check(half, 1000, 6).ok);
  CHECK_THROWS_AS(example_potential(0.5, 0.0, -1.0), RangeError);
  CHECK_THROWS_AS(example_potential(0.84, -1.0, 0.0), RangeError);
}

TEST_CASE("make_potential rejects a false Hoelder claim") {
  CHECK_THROWS_AS(make_potential([](const maps::Point3& p) { return 10 * p.y; }, 1.0, 1.0, "bad"), PreconditionError);
  CHECK_NOTHROW(make_potential([](const maps::Point3& p) { return 10 * p.y; }, 1.0, 10.0, "ok"));
}

TEST_CASE("admissible interval") {
  const auto fam = AdmissibleFamily::make(0.84, 0.0, -1.0, 1.0);
  const auto mu = measures::markov_equilibrium(constant_potential(0.0), 8, P).measure;
  const auto I = t_interval(fam, mu, std::log(kOmega));
  CHECK(I.t0 == doctest::Approx(std::log(kOmega) / 2).epsilon(1e-14));
  CHECK(I.t0 == doctest::Approx(0.2406).epsilon(1e-4));
  CHECK(I.integral_mu_max < 0.0);
  CHECK(I.integral_mu_max > -1.0);
  CHECK(I.t1_lower == doctest::Approx(std::log(kOmega) / -I.integral_mu_max).epsilon(1e-12));
  CHECK(I.nonempty == (I.t1_lower > I.t0));
  CHECK(I.nonempty);
  CHECK(fam.at(2.0)({0, 0, 1}) == doctest::Approx(-2.0));
}

TEST_CASE("condition C2") {
  const auto z = check_C2(constant_potential(0.0), 1, std::log(kOmega), P);
  CHECK(z.verdict == Verdict::Pass);
  CHECK(z.sup_upper == 0.0);
  const auto fam = AdmissibleFamily::make(0.84, 0.0, -1.0, 1.0);
  for (double t : {0.3, 0.35, 0.4}) {
    const auto phi = fam.at(t);
    const double floor = std::log(kOmega) - t;  // variational floor
    CHECK(check_C2(phi, 1, floor, P).verdict == Verdict::Pass);
  }
  const auto c = check_C2(central_potential(P, 1.0), 1, 0.3, P, 0.35);
  CHECK(c.verdict == Verdict::Fail);
  CHECK(c.sup_lower >= 1.0 - 1e-9);  // delta_Q gives 1
}

TEST_CASE("planar grid") {
  const auto g = planar_grid(8, P);
  CHECK(g.size() == 3 * 64);
  for (const auto& p : g) CHECK(maps::planar_region(p, P) != maps::Region::Outside);
}

TEST_CASE("projective construction and D1") {
  const auto u = make_potential([](const maps::Point3& p) { return 0.6 * p.y; }, 1.0, 0.6, "u", false);
  const auto cob = make_potential([u](const maps::Point3& p) { return u(p) - u(maps::planar_G(p, P)); }, 1.0,
                                  std::numeric_limits<double>::infinity(), "cob", false);
  const auto d0 = check_D1(cob, u, 16, P);
  CHECK(d0.min_slack == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(d0.pass);
  CHECK(check_D1(shifted(cob, 0.1), u, 16, P).min_slack == doctest::Approx(0.1).epsilon(1e-12));
  CHECK_FALSE(check_D1(shifted(cob, -0.1), u, 16, P).pass);
  const auto ex = projective_example(u, shifted(u, 0.05), P);
  CHECK(check_D1(ex.phi, u, 32, P).min_slack == doctest::Approx(0.05).epsilon(1e-12));
  CHECK(ex.osc_u == doctest::Approx(0.6));
  CHECK(ex.osc_u > std::log(kOmega));
  CHECK_THROWS_AS(projective_example(u, u, P), PreconditionError);
}

TEST_CASE("condition D2 surrogate") {
  const auto fam = default_nonexpanding_family();
  CHECK(fam.size() == 5);
  const auto z = check_D2(constant_potential(0.0), fam, std::log(kOmega));
  CHECK(z.necessary_pass);
  CHECK(z.margin == doctest::Approx(std::log(kOmega)));
  const auto u = make_potential([](const maps::Point3& p) { return 0.6 * p.y; }, 1.0, 0.6, "u", false);
  const auto ex = projective_example(u, shifted(u, 0.05), P);
  CHECK(check_D2(ex.phi, fam, std::log(kOmega)).necessary_pass);
  CHECK_FALSE(check_D2(constant_potential(1.0), fam, std::log(kOmega)).necessary_pass);
  CHECK_THROWS_AS(check_D2(ex.phi, {}, 0.4), PreconditionError);
}

TEST_CASE("cohomology shift keeps periodic Birkhoff sums") {
  const auto base = central_potential(P, 1.0);
  const auto fam = example_potential(0.84, 0.0, -1.0, 1.0);
  for (const auto* phi : {&base, &fam})
    for (double t : {0.5, 1.0, -0.7}) {
      const auto s = cohomology_shift(*phi, t, Dynamics::F_inv, P);
      CHECK(s.holder());
      for (int p = 1; p <= 10; ++p)
        for (const auto& c : measures::primitive_cycles(p))
          REQUIRE(std::abs(periodic_sum(*phi, c) - periodic_sum(s, c)) < 1e-12);
    }
  CHECK_FALSE(cohomology_shift(base, 0.5, Dynamics::G, P).holder());
  CHECK(cohomology_shift(base, 0.0, Dynamics::F_inv, P).C == base.C);
}

TEST_CASE("cohomology shift Hoelder claim survives sampling") {
  const auto s = cohomology_shift(example_potential(0.84, 0.0, -1.0, 1.0), 0.5, Dynamics::F_inv, P);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0, 1);
  const double l = P.lambda0;
  double worst = 0;
  for (int i = 0; i < 5000; ++i) {
    auto pick = [&] {
      return i % 2 ? maps::Point3{l * u(rng), u(rng), u(rng) < 0.5 ? u(rng) / 6 : 5.0 / 6 + u(rng) / 6}
                   : maps::Point3{0.75 - l * u(rng), P.sigma * u(rng), u(rng) / 6};
    };
    const auto a = pick(), b = pick();
    const double d = maps::dist_split(a, b);
    if (d > 0) worst = std::max(worst, std::abs(s(a) - s(b)) / std::pow(d, s.xi));
  }
  CHECK(worst <= s.C);
}

TEST_CASE("distance weight") {
  std::vector<maps::Point3> cloud;
  for (int p = 1; p <= 4; ++p)
    for (const auto& c : measures::primitive_cycles(p))
      for (const auto& x : measures::periodic_orbit(c, P)) cloud.push_back(x);
  const auto phi = region_potential(0.3, -0.2);
  const auto w = distance_weight(phi, cloud, 0.0);
  for (const auto& x : cloud) CHECK(w(x) == phi(x));
  // at t != 0: the cloud points are fixed, so cloud-supported integrals agree
  const auto w2 = distance_weight(central_potential(P, -1.0), cloud, 0.5);
  for (int p = 1; p <= 4; ++p)
    for (const auto& c : measures::primitive_cycles(p)) {
      const auto mu = measures::periodic_measure(c, P);
      CHECK(mu.integrate(w2) == doctest::Approx(mu.integrate(central_potential(P, -1.0))).epsilon(1e-15));
    }
  CHECK_THROWS_AS(distance_weight(central_potential(P, 1.0), cloud, 0.5), PreconditionError);
  CHECK_THROWS_AS(distance_weight(phi, {}, 0.5), PreconditionError);
}

TEST_CASE("sup at Q") {
  const auto z = sup_at_Q_check(constant_potential(0.0), std::log(kOmega), 0.0, P);
  CHECK(z.sup_at_Q);
  CHECK(z.below_pressure);
  const auto e = sup_at_Q_check(example_potential(0.84, 0.1, -0.5, 1.0), std::log(kOmega), 0.0, P);
  CHECK(e.sup_at_Q);
  CHECK(e.phi_Q == doctest::Approx(0.1));
  CHECK(e.below_pressure);
}
