#pragma once

#include <utility>
#include <vector>

namespace hst::spectral {

// Nonnegative matrix stored by rows: rows[i] = {(j, M_ij)}.
struct SparseMatrix {
  int n = 0;
  std::vector<std::vector<std::pair<int, double>>> rows;

  explicit SparseMatrix(int size = 0) : n(size), rows(static_cast<std::size_t>(size)) {}
  void add(int i, int j, double v) { rows[i].emplace_back(j, v); }

  std::vector<double> apply(const std::vector<double>& v) const;
  std::vector<double> apply_transpose(const std::vector<double>& v) const;
};

struct EigenTriple {
  double lambda = 0.0;
  std::vector<double> right;  // M r = lambda r, sum r = 1
  std::vector<double> left;   // l^T M = lambda l^T, normalised so l.r = 1
  int iterations = 0;
};

// Power iteration from the uniform vector. Throws ConvergenceError if the
// relative change does not fall below tol within max_iter steps.
EigenTriple leading_eigen(const SparseMatrix& m, double tol = 1e-13, int max_iter = 100000);

// Modulus of the subdominant eigenvalue, estimated by power iteration on the
// deflated matrix M - lambda r l^T. Returns 0 when the deflated matrix is nil.
double second_modulus(const SparseMatrix& m, const EigenTriple& e, int iters = 400);

}  // namespace hst::spectral
