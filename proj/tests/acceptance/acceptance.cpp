// Acceptance runner: one PASS/FAIL line per criterion. Tolerances and time
// budgets are fixed here; nonzero exit if anything fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "config.hpp"
#include "experiments.hpp"
#include "hst/countable_thermo.hpp"
#include "hst/expansion.hpp"
#include "hst/inducing.hpp"
#include "hst/maps.hpp"
#include "hst/measures.hpp"
#include "hst/parallel.hpp"
#include "hst/potentials.hpp"
#include "hst/symbolic.hpp"

namespace {

using namespace hst;
namespace fs = std::filesystem;

const maps::MapParams kParams = maps::MapParams::standard();
const double kOmega = (1.0 + std::sqrt(5.0)) / 2.0;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    if (!detail.empty()) detail += "; ";
    detail += what + (ok ? "" : " [failed]");
  }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}
std::string g(double v) { return fmt("%.6g", v); }

cli::RunResult run(const std::string& experiment, int threads = 1, const std::string& extra = "") {
  const auto cfg = cli::parse_config("{\"experiment\": \"" + experiment + "\"" + extra + "}");
  return cli::run_experiment(cfg, threads);
}

Outcome ac1() {
  Outcome o;
  const auto e = measures::topological_entropy_estimate(30);
  const double exact = std::log(kOmega);
  o.require(std::abs(e.spectral - exact) <= 1e-14, "spectral " + fmt("%.16f", e.spectral));
  o.require(std::abs(e.h_estimate - exact) <= 1e-3, "growth(n=30) err " + g(std::abs(e.h_estimate - exact)));
  return o;
}

Outcome ac2() {
  Outcome o;
  const double h = 1e-6;
  // analytic time-one map, extended past [0,1] so the stencil is symmetric
  auto f = [](double y) { return y / (y + (1 - y) * std::exp(-1.0)); };
  const double fdQ = std::log((f(h) - f(-h)) / (2 * h));
  const double fdP = std::log((f(1 + h) - f(1 - h)) / (2 * h));
  const double lQ = expansion::central_lyapunov(measures::delta_Q(), kParams);
  const double lP = expansion::central_lyapunov(measures::delta_P(), kParams);
  o.require(std::abs(lQ - 1.0) <= 1e-9 && std::abs(lQ - fdQ) <= 1e-9, "lambda_c(Q) " + fmt("%.12f", lQ) + " fd " + fmt("%.12f", fdQ));
  o.require(std::abs(lP + 1.0) <= 1e-9 && std::abs(lP - fdP) <= 1e-9, "lambda_c(P) " + fmt("%.12f", lP) + " fd " + fmt("%.12f", fdP));
  int count = 0, bad = 0;
  double worst = -1e300;
  for (int p = 1; p <= 10; ++p)
    for (const auto& c : measures::primitive_cycles(p)) {
      if (c.find('1') == std::string::npos) continue;
      const double l = expansion::central_lyapunov(measures::periodic_measure(c, kParams), kParams);
      ++count;
      worst = std::max(worst, l);
      if (!(l < 0)) ++bad;
    }
  o.require(bad == 0, std::to_string(count) + " cycles with a 1, max lambda_c " + g(worst));
  return o;
}

Outcome ac3() {
  Outcome o;
  const auto s = run("semiconjugacy-test").summary;
  o.require(s["max_error"].get<double>() <= 1e-12, "max |pi F^-1 - G pi| " + g(s["max_error"].get<double>()));
  o.require(s["equivariant_orbits"].get<int>() == 100,
            std::to_string(s["equivariant_orbits"].get<int>()) + "/100 equivariant");
  return o;
}

Outcome ac4() {
  Outcome o;
  std::vector<double> grid;
  for (int i = 0; i < 61; ++i) grid.push_back(-1.0 + 3.0 * i / 60);
  std::vector<double> t0s;
  double min_d2 = 1e300, min_gap = 1e300;
  for (int L : {6, 8, 10}) {
    const auto curve = expansion::pressure_curve(grid, L, kParams);
    for (std::size_t i = 0; i < curve.size(); ++i) {
      min_gap = std::min(min_gap, curve[i].P_hat - curve[i].t);
      if (i > 0 && i + 1 < curve.size())
        min_d2 = std::min(min_d2, curve[i - 1].P_hat - 2 * curve[i].P_hat + curve[i + 1].P_hat);
    }
    auto eq = [L](double t) {
      return measures::markov_equilibrium(potentials::central_potential(kParams, t), L, kParams);
    };
    try {
      const auto pt = expansion::detect_phase_transition(
          curve, [&](double t) { return eq(t).pressure; },
          [&](double t) { return expansion::central_lyapunov(eq(t).measure, kParams); }, 1e-8);
      t0s.push_back(pt.t0_hat);
      o.require(pt.t0_hat > 0 && pt.slope_jump > 0.5,
                "L=" + std::to_string(L) + " t0 " + g(pt.t0_hat) + " jump " + g(pt.slope_jump));
    } catch (const NotFoundError&) {
      o.require(false, "L=" + std::to_string(L) + " no crossing");
    }
  }
  if (!t0s.empty()) {
    const auto [lo, hi] = std::minmax_element(t0s.begin(), t0s.end());
    double mean = 0;
    for (double x : t0s) mean += x;
    mean /= t0s.size();
    o.require((*hi - *lo) / mean < 0.2, "t0 spread " + g((*hi - *lo) / mean));
  }
  o.require(min_d2 >= -1e-9, "min second difference " + g(min_d2));
  o.require(min_gap >= -1e-12, "min P_hat - t " + g(min_gap));
  return o;
}

Outcome ac5() {
  Outcome o;
  const auto ip = symbolic::InducingParams::make(0.4, 0.2);
  const Rational a = ip.alpha_exact();
  const int N = ip.N();
  long words = 0;
  bool ident = true, bound = true;
  std::vector<std::size_t> r(19, 0);
  for (int i = 2; i <= 18; ++i) {
    const auto lv = symbolic::enumerate_level(i, a, 24);
    r[i] = lv.size();
    for (const auto& c : lv) {
      const auto bd = symbolic::block_decompose(c.word);
      ident = ident && bd.identity_lhs() == i;
      bound = bound && bd.short_block_count(N) >= ip.tau * i;
      ++words;
    }
  }
  o.require(ident, "identity on " + std::to_string(words) + " words");
  o.require(bound, "short-block bound, N=" + std::to_string(N));
  o.require(r[2] == 0 && r[3] == 1 && r[4] == 1,
            "r2,r3,r4 = " + std::to_string(r[2]) + "," + std::to_string(r[3]) + "," + std::to_string(r[4]));
  return o;
}

Outcome ac6() {
  Outcome o;
  const double a = thermo::c_alpha(0.5, 2000), b = thermo::c_alpha(0.25, 2000), c = thermo::c_alpha(0.01, 2000);
  o.require(std::abs(a - std::log(2.0)) <= 1e-2, "c(0.5) " + g(a));
  o.require(std::abs(b - 0.5623) <= 1e-2, "c(0.25) " + g(b));
  o.require(c < 0.06, "c(0.01) " + g(c));
  return o;
}

Outcome ac7() {
  Outcome o;
  const auto s = run("kac-abramov").summary;
  o.require(s["max_abs_err"].get<double>() <= 1e-12, "50 pairs, max err " + g(s["max_abs_err"].get<double>()));
  const double rel = s["bernoulli"]["rel_err"].get<double>();
  o.require(rel < 0.05, "Bernoulli entropy rel err " + g(rel));
  return o;
}

Outcome ac8() {
  Outcome o;
  const auto fam = potentials::AdmissibleFamily::make(0.84, 0.0, -1.0, 1.0);
  for (double t : {0.36, 1.0}) {
    const auto phi = fam.at(t);
    const double P = measures::markov_equilibrium(phi, 8, kParams).pressure;
    const auto norm = inducing::build_induced_table(phi, 0.4, 10, 12, kParams).shifted_by_level(-P);
    const std::string tag = "t=" + g(t) + " ";
    const auto g10 = thermo::gibbs_approx(norm, 10);
    const auto g6 = thermo::gibbs_approx(norm.truncated(6), 6);
    std::vector<thermo::PressureBracket> br;
    for (int i = 0; i < 3; ++i) br.push_back(thermo::gurevich_pressure(norm, 10, norm.symbols[i], 30));
    bool overlap = norm.size() >= 3;
    for (const auto& x : br)
      for (const auto& y : br) overlap = overlap && x.lower <= y.upper;
    o.require(overlap, tag + "3-base brackets overlap");
    const double dl = std::abs(g10.lambda_log - br[0].point_estimate);
    o.require(dl <= 1e-8, tag + "|log lambda - point estimate| " + g(dl));
    const double ratio = g10.gibbs_constant / g6.gibbs_constant;
    o.require(ratio >= 0.5 && ratio <= 2.0,
              tag + "K_g(6) " + g(g6.gibbs_constant) + " K_g(10) " + g(g10.gibbs_constant));
    const auto tail = thermo::exponential_tail_check(g10);
    o.require(tail.theta < 1.0, tag + "tail theta " + g(tail.theta));
    o.detail += "; " + tag + "eigen gap |l2|/l1 " + g(g10.second_modulus_ratio);
  }
  return o;
}

Outcome ac9() {
  Outcome o;
  const auto fam = potentials::AdmissibleFamily::make(0.84, 0.0, -1.0, 1.0);
  const double h = measures::golden_log();
  constexpr int L = 12;
  const auto mu_max = measures::markov_equilibrium(potentials::constant_potential(0.0), L, kParams);
  const auto I = potentials::t_interval(fam, mu_max.measure, h);
  o.require(I.nonempty, "I = (" + g(I.t0) + ", " + g(I.t1_lower) + ")");
  o.require(std::abs(I.t0 - std::log(kOmega) / 2) <= 1e-12, "t0 vs log(omega)/2");
  if (!I.nonempty) return o;
  // geometric grid strictly inside I
  std::vector<double> ts;
  for (int k = 0; k < 7; ++k) ts.push_back(I.t0 * std::pow(I.t1_lower / I.t0, (k + 0.5) / 7));
  bool var_ok = true, c2_ok = true;
  double worst_margin = 1e300;
  for (double t : ts) {
    const auto phi = fam.at(t);
    const double var = *phi.sup_value - *phi.inf_value;
    var_ok = var_ok && var >= h / 2;
    const auto c2 = potentials::check_C2(phi, 1, measures::pressure_lower_bound(phi, L, kParams), kParams);
    c2_ok = c2_ok && c2.verdict == thermo::Verdict::Pass;
    worst_margin = std::min(worst_margin, c2.pressure_lower - c2.sup_upper);
  }
  o.require(var_ok, "Var(phi_t) >= h/2 on " + std::to_string(ts.size()) + " t values");
  o.require(c2_ok, "C2 n=1 at L=12, min margin " + g(worst_margin));
  for (double t : {ts.front(), ts[ts.size() / 2], ts.back()}) {
    const auto prof = potentials::check_C1(fam.at(t), 0.4, 10, kParams);
    o.require(prof.fit.certified && prof.fit.a < 1, "C1 t=" + g(t) + " a " + g(prof.fit.a));
  }
  return o;
}

Outcome ac10() {
  Outcome o;
  const auto fam = potentials::AdmissibleFamily::make(0.84, 0.0, -1.0, 1.0);
  struct Named {
    std::string name;
    potentials::PotentialSpec phi;
  };
  const std::vector<Named> phis{{"central", potentials::central_potential(kParams, 1.0)}, {"family", fam.at(1.0)}};
  int cycles = 0;
  std::vector<measures::MeasureApprox> mus;
  for (int p = 1; p <= 10; ++p)
    for (const auto& c : measures::primitive_cycles(p)) mus.push_back(measures::periodic_measure(c, kParams)), ++cycles;
  for (const auto& [name, phi] : phis) {
    for (double t : {0.5, 1.0}) {
      const auto psi = potentials::cohomology_shift(phi, t, potentials::Dynamics::F_inv, kParams);
      double worst = 0;
      for (const auto& mu : mus) worst = std::max(worst, std::abs(mu.integrate(psi) - mu.integrate(phi)));
      o.require(worst <= 1e-12, name + " t=" + g(t) + " periodic max diff " + g(worst));
    }
    const auto psi = potentials::cohomology_shift(phi, 0.5, potentials::Dynamics::F_inv, kParams);
    const double d = std::abs(measures::markov_equilibrium(psi, 8, kParams).pressure -
                              measures::markov_equilibrium(phi, 8, kParams).pressure);
    o.require(d <= 1e-6, name + " Markov pressure diff " + g(d));
  }
  std::vector<maps::Point3> cloud;
  for (int p = 1; p <= 3; ++p)
    for (const auto& c : measures::primitive_cycles(p))
      if (c != "0")
        for (const auto& x : measures::periodic_orbit(c, kParams)) cloud.push_back(x);
  const auto base = potentials::central_potential(kParams, -1.0);
  const auto w = potentials::distance_weight(base, cloud, 0.5);
  bool exact = true;
  for (int p = 1; p <= 3; ++p)
    for (const auto& c : measures::primitive_cycles(p))
      if (c != "0") {
        const auto mu = measures::periodic_measure(c, kParams);
        exact = exact && mu.integrate(w) == mu.integrate(base);
      }
  o.require(exact, "distance_weight cloud integrals exact; " + std::to_string(cycles) + " cycles");
  return o;
}

Outcome ac11() {
  Outcome o;
  const auto s = run("hyp-times").summary;
  o.require(s["pliss_holds"].get<bool>(), "Pliss bound on 100 synthetic + 100 dynamical orbits");
  o.require(s["s2_only_d"].get<double>() == 1.0, "S2-only d " + g(s["s2_only_d"].get<double>()));
  return o;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

Outcome ac12() {
  Outcome o;
  const fs::path root = fs::temp_directory_path() / "hst_acceptance_determinism";
  fs::remove_all(root);
  int same = 0, total = 0;
  std::string diffs;
  for (const auto& name : cli::experiment_names()) {
    // shorter grids keep the curve experiments inside the time budget
    const std::string extra =
        name == "pressure-curve" || name == "phase-scan" ? ", \"t_grid\": {\"min\": 0, \"max\": 1, \"steps\": 11}" : "";
    const auto a = run(name, 1, extra), b = run(name, 4, extra);
    cli::write_outputs(a, (root / name / "a").string());
    cli::write_outputs(b, (root / name / "b").string());
    bool eq = true;
    for (const auto& e : fs::directory_iterator(root / name / "a")) {
      const auto other = root / name / "b" / e.path().filename();
      eq = eq && fs::exists(other) && slurp(e.path()) == slurp(other);
    }
    ++total;
    if (eq) ++same;
    else diffs += " " + name;
  }
  fs::remove_all(root);
  o.require(same == total, std::to_string(same) + "/" + std::to_string(total) +
                               " experiments byte-identical across runs (1 vs 4 threads)" + diffs);
  return o;
}

}  // namespace

int main() {
  hst::default_threads() = static_cast<int>(std::max(1u, std::min(8u, std::thread::hardware_concurrency())));
  struct Criterion {
    const char* id;
    std::function<Outcome()> fn;
    double budget_s;
  };
  const std::vector<Criterion> all{
      {"AC1", ac1, 1},    {"AC2", ac2, 10},   {"AC3", ac3, 5},     {"AC4", ac4, 120},
      {"AC5", ac5, 60},   {"AC6", ac6, 5},    {"AC7", ac7, 60},    {"AC8", ac8, 120},
      {"AC9", ac9, 180},  {"AC10", ac10, 60}, {"AC11", ac11, 30},  {"AC12", ac12, 600},
  };
  int failed = 0;
  for (const auto& c : all) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.fn();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.require(secs < c.budget_s, "runtime " + fmt("%.2f", secs) + " s < " + fmt("%.0f", c.budget_s) + " s");
    if (!o.pass) ++failed;
    std::printf("%-4s %s  %s\n", c.id, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(all.size()) - failed, all.size());
  return failed ? 1 : 0;
}
