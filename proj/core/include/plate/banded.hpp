#pragma once

#include <cstddef>
#include <vector>

namespace plate {

/// Symmetric banded matrix stored by lower diagonals:
/// diag(d)[i] = A(i+d, i) for d = 0..kd, i = 0..n-1-d.
/// The Hermite beam matrices couple at most two nodes (four DOFs),
/// giving half-bandwidth kd = 3.
class BandedSymmetric {
 public:
  BandedSymmetric() = default;
  BandedSymmetric(int n, int kd) : n_(n), kd_(kd), ab_((kd + 1) * n, 0.0) {}

  int size() const { return n_; }
  int half_bandwidth() const { return kd_; }

  /// Assembly access, requires i >= j and i - j <= kd.
  double& at(int i, int j) { return ab_[(i - j) * n_ + j]; }

  /// Symmetric read of A(i, j); zero outside the band.
  double entry(int i, int j) const {
    if (i < j) std::swap(i, j);
    const int d = i - j;
    if (d > kd_) return 0.0;
    return ab_[d * n_ + j];
  }

  void add(int i, int j, double v) {
    if (i < j) return;  // symmetric: accumulate lower triangle only
    at(i, j) += v;
  }

  /// y = A x
  void matvec(const double* x, double* y) const;
  std::vector<double> matvec(const std::vector<double>& x) const;

  /// x^T A x
  double quadratic_form(const double* x) const;
  double quadratic_form(const std::vector<double>& x) const {
    return quadratic_form(x.data());
  }

  /// C = alpha*A + beta*B (matching layout required)
  static BandedSymmetric linear_combination(double alpha, const BandedSymmetric& a,
                                            double beta, const BandedSymmetric& b);

  const std::vector<double>& raw() const { return ab_; }

 private:
  int n_ = 0;
  int kd_ = 0;
  std::vector<double> ab_;
};

/// Cholesky factorization of a banded SPD matrix; the factor keeps the band
/// profile, so one factorization serves every solve of a time loop.
class BandedCholesky {
 public:
  BandedCholesky() = default;

  /// Factors A = L L^T. Returns false if A is not positive definite.
  bool factor(const BandedSymmetric& a);

  bool ok() const { return ok_; }
  int size() const { return n_; }

  /// Solves A x = b in place.
  void solve_in_place(std::vector<double>& b) const;
  std::vector<double> solve(std::vector<double> b) const {
    solve_in_place(b);
    return b;
  }

 private:
  int n_ = 0;
  int kd_ = 0;
  bool ok_ = false;
  std::vector<double> lb_;  // lower factor, same diagonal layout
};

}  // namespace plate
