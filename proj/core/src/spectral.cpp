#include "hst/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hst/errors.hpp"

namespace hst::spectral {

std::vector<double> SparseMatrix::apply(const std::vector<double>& v) const {
  std::vector<double> out(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (const auto& [j, a] : rows[i]) s += a * v[j];
    out[i] = s;
  }
  return out;
}

std::vector<double> SparseMatrix::apply_transpose(const std::vector<double>& v) const {
  std::vector<double> out(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i)
    for (const auto& [j, a] : rows[i]) out[j] += a * v[i];
  return out;
}

namespace {

double normalise(std::vector<double>& v) {
  const double s = std::accumulate(v.begin(), v.end(), 0.0);
  if (!(s > 0.0) || !std::isfinite(s)) return s;
  for (double& x : v) x /= s;
  return s;
}

template <class Apply>
std::pair<std::vector<double>, double> power(int n, Apply apply, double tol, int max_iter,
                                             int& iters) {
  std::vector<double> v(static_cast<std::size_t>(n), 1.0 / n);
  double lambda = 0.0;
  for (int it = 1; it <= max_iter; ++it) {
    std::vector<double> w = apply(v);
    const double s = normalise(w);
    if (!(s > 0.0) || !std::isfinite(s)) throw ConvergenceError("power iteration: degenerate matrix");
    double diff = 0.0, vmax = 0.0;
    for (int i = 0; i < n; ++i) {
      diff = std::max(diff, std::abs(w[i] - v[i]));
      vmax = std::max(vmax, std::abs(w[i]));
    }
    const double dl = std::abs(s - lambda) / s;
    v.swap(w);
    lambda = s;
    if (diff <= tol * vmax && dl <= tol) {
      iters = it;
      return {v, lambda};
    }
  }
  throw ConvergenceError("power iteration did not converge");
}

}  // namespace

EigenTriple leading_eigen(const SparseMatrix& m, double tol, int max_iter) {
  if (m.n <= 0) throw DegenerateError("leading_eigen: empty matrix");
  EigenTriple e;
  int it_r = 0, it_l = 0;
  auto [r, lr] = power(m.n, [&](const std::vector<double>& v) { return m.apply(v); }, tol, max_iter, it_r);
  auto [l, ll] = power(m.n, [&](const std::vector<double>& v) { return m.apply_transpose(v); }, tol,
                       max_iter, it_l);
  (void)ll;
  e.lambda = lr;
  e.right = std::move(r);
  double dot = 0.0;
  for (int i = 0; i < m.n; ++i) dot += l[i] * e.right[i];
  for (double& x : l) x /= dot;
  e.left = std::move(l);
  e.iterations = std::max(it_r, it_l);
  return e;
}

double second_modulus(const SparseMatrix& m, const EigenTriple& e, int iters) {
  const int n = m.n;
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[i] = std::sin(1.0 + 1.7 * i) + 0.25 * std::cos(0.3 * i * i);
  auto deflate = [&](std::vector<double>& w) {
    double c = 0.0;
    for (int i = 0; i < n; ++i) c += e.left[i] * w[i];
    for (int i = 0; i < n; ++i) w[i] -= c * e.right[i];
  };
  auto norm = [](const std::vector<double>& w) {
    double s = 0.0;
    for (double x : w) s += x * x;
    return std::sqrt(s);
  };
  deflate(v);
  double n0 = norm(v);
  if (n0 == 0.0) return 0.0;
  for (double& x : v) x /= n0;
  const int burn = iters / 2;
  double log_growth = 0.0;
  for (int it = 0; it < iters; ++it) {
    std::vector<double> w = m.apply(v);
    deflate(w);
    const double nw = norm(w);
    if (nw <= 1e-14 * e.lambda) return 0.0;
    for (int i = 0; i < n; ++i) v[i] = w[i] / nw;
    if (it >= burn) log_growth += std::log(nw);
  }
  return std::exp(log_growth / (iters - burn));
}

}  // namespace hst::spectral
