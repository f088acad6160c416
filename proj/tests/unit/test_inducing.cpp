#include <doctest.h>

#include <cmath>

#include "hst/errors.hpp"
#include "hst/inducing.hpp"
#include "hst/maps.hpp"
#include "hst/potential_spec.hpp"

using namespace hst;
using namespace hst::inducing;

namespace {
const MapParams P = MapParams::standard();
const CylinderId c3{3, "101"}, c4{4, "1001"}, c7{7, "1000101"};
}  // namespace

TEST_CASE("finite shift measures") {
  CHECK(uniform_measure({c3, c4}).mean_return() == doctest::Approx(3.5));
  CHECK_THROWS_AS(weighted_measure({c3, c4}, {0.5, 0.4}).validate(), PreconditionError);
  CHECK_THROWS_AS(weighted_measure({c3}, {-1.0}).validate(), PreconditionError);
  CHECK_THROWS(point_mass({3, "1001"}).validate());
}

TEST_CASE("lifted measure floors") {
  const auto L = lift_measure(uniform_measure({c3, c4}));
  CHECK(L.floors.size() == 7);
  for (const auto& f : L.floors) CHECK(f.weight == doctest::Approx(1.0 / 7.0).epsilon(1e-15));
  CHECK(L.mass() == doctest::Approx(1.0).epsilon(1e-14));
  const auto L2 = lift_measure(weighted_measure({c3, c7}, {0.25, 0.75}));
  CHECK(L2.mean_return == doctest::Approx(6.0));
  CHECK(L2.mass() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("tower") {
  const auto T = build_tower(8, 0.4);
  CHECK(T.total_floors() == 3 + 4 + 7);
  CHECK(T.levels.at(7).front().word == "1000101");
}

TEST_CASE("induced sum matches a direct orbit sum") {
  const auto phi = potentials::central_potential(P, 1.0);
  const InducedEvaluator ev{phi, P};
  const Word pad(12, '0');
  for (const auto& c : {c3, c4, c7}) {
    auto X = symbolic::point_from_itinerary({pad, c.word + pad}, P).point;
    double orbit = 0.0;
    for (int k = 0; k < c.level; ++k) {
      orbit += maps::central_log_derivative(X, P);
      X = maps::horseshoe_F(X, P);
    }
    CHECK(std::abs(ev.sum(pad, c, pad) - orbit) < 1e-8);
  }
  // "101" visits R1, R0, R1: log sigma + log f'(y1) + log sigma
  const auto pts = ev.floor_points(pad, c3, pad);
  const double direct = 2 * std::log(P.sigma) + std::log(maps::flow_derivative(pts[1].y));
  CHECK(ev.sum(pad, c3, pad) == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("induced potential bracket") {
  const auto phi = potentials::central_potential(P, 1.0);
  for (const auto& c : {c3, c4, c7}) {
    const auto v = induced_potential(c, phi, 12, P);
    CHECK(v.inf <= v.point);
    CHECK(v.point <= v.sup);
  }
  const auto z = induced_potential(c4, potentials::constant_potential(0.5), 8, P);
  CHECK(z.point == doctest::Approx(2.0));
  CHECK(z.inf == doctest::Approx(2.0));
  CHECK_THROWS_AS(induced_potential(c4, phi, 0, P), RangeError);
}

TEST_CASE("induced tables") {
  const auto t = build_induced_table(potentials::constant_potential(-0.1), 0.4, 10, 8, P, 2);
  CHECK(t.size() == 3);
  CHECK(t.index_of(c4) == 1);
  CHECK(t.index_of({5, "10001"}) == -1);
  CHECK(t.truncated(4).size() == 2);
  const auto s = t.shifted_by_level(0.1);
  for (const auto& v : s.values) CHECK(std::abs(v.point) < 1e-12);
  const auto f = InducedPotentialTable::from_values({c4, c3}, {2.0, 1.0});
  CHECK(f.symbols.front() == c3);
  CHECK(f.values.front().point == 1.0);
  CHECK(f.evaluator == nullptr);
  // thread count does not change the table
  const auto phi = potentials::central_potential(P, 0.7);
  const auto a = build_induced_table(phi, 0.4, 12, 8, P, 1), b = build_induced_table(phi, 0.4, 12, 8, P, 4);
  REQUIRE(a.size() == b.size());
  for (int i = 0; i < a.size(); ++i) CHECK(a.values[i].sup == b.values[i].sup);
}

TEST_CASE("e(i, A) exhaustive values") {
  CHECK(e_of(3, "1", 0.4) == doctest::Approx(2.0 / 3.0));
  CHECK(e_of(4, "1", 0.4) == doctest::Approx(0.5));
  CHECK(e_of(5, "1", 0.4) == 0.0);
}

TEST_CASE("liftability") {
  const auto r = liftability_check(0.45, "1", "[1]", 0.4, 4, 16);
  CHECK(r.N == 4);
  CHECK(r.cap == 16);
  CHECK(r.margin == doctest::Approx(0.45 - r.sup_e));
  CHECK(r.pass == (r.margin > 0));
  CHECK(r.ones_ratio_tail_bound == doctest::Approx(0.4 + 0.6 / 17));
  const auto s = liftability_scan(0.45, "1", "[1]", 0.4, 16);
  CHECK(s.margin >= r.margin);
}

TEST_CASE("Kac-Abramov identity is exact") {
  const auto phi = potentials::central_potential(P, 1.0);
  const auto r = kac_abramov_check(weighted_measure({c3, c4, c7}, {0.2, 0.3, 0.5}), phi, P, 12);
  CHECK(r.abs_err < 1e-12);
  CHECK(r.mean_return == doctest::Approx(0.6 + 1.2 + 3.5));
}

TEST_CASE("Bernoulli entropy identity") {
  const auto r = bernoulli_entropy_check(uniform_measure({c3, c4}), 12, 2000000, 9);
  CHECK(r.h_nu == doctest::Approx(std::log(2.0)));
  CHECK(r.predicted == doctest::Approx(0.19804).epsilon(1e-4));
  CHECK(r.rel_err < 0.05);
  CHECK_THROWS_AS(bernoulli_entropy_check(uniform_measure({c3, c4}), 1, 1000, 9), RangeError);
}

TEST_CASE("random admissible words") {
  for (int s = 0; s < 50; ++s) {
    const Word w = random_admissible(30, s, true, true);
    CHECK(symbolic::is_admissible(w));
    CHECK(w.front() == '0');
    CHECK(w.back() == '0');
  }
  CHECK(realise_past({c3}) == "1010");
  CHECK(realise_future({c3}) == "0101");
  CHECK(tail_rate(P) == doctest::Approx(std::exp(-1.0)));
}
