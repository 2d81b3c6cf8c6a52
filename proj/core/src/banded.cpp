#include "plate/banded.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace plate {

void BandedSymmetric::matvec(const double* x, double* y) const {
  const double* diag = ab_.data();
  for (int i = 0; i < n_; ++i) y[i] = diag[i] * x[i];
  for (int d = 1; d <= kd_; ++d) {
    const double* band = ab_.data() + d * n_;
    const int lim = n_ - d;
    for (int j = 0; j < lim; ++j) {
      const double v = band[j];
      y[j + d] += v * x[j];
      y[j] += v * x[j + d];
    }
  }
}

std::vector<double> BandedSymmetric::matvec(const std::vector<double>& x) const {
  std::vector<double> y(n_);
  matvec(x.data(), y.data());
  return y;
}

double BandedSymmetric::quadratic_form(const double* x) const {
  const double* diag = ab_.data();
  double acc = 0.0;
  for (int i = 0; i < n_; ++i) acc += diag[i] * x[i] * x[i];
  for (int d = 1; d <= kd_; ++d) {
    const double* band = ab_.data() + d * n_;
    const int lim = n_ - d;
    double off = 0.0;
    for (int j = 0; j < lim; ++j) off += band[j] * x[j] * x[j + d];
    acc += 2.0 * off;
  }
  return acc;
}

BandedSymmetric BandedSymmetric::linear_combination(double alpha, const BandedSymmetric& a,
                                                    double beta, const BandedSymmetric& b) {
  if (a.n_ != b.n_ || a.kd_ != b.kd_)
    throw std::invalid_argument("banded: layout mismatch in linear combination");
  BandedSymmetric c(a.n_, a.kd_);
  for (std::size_t k = 0; k < c.ab_.size(); ++k)
    c.ab_[k] = alpha * a.ab_[k] + beta * b.ab_[k];
  return c;
}

bool BandedCholesky::factor(const BandedSymmetric& a) {
  n_ = a.size();
  kd_ = a.half_bandwidth();
  lb_ = a.raw();
  ok_ = false;
  auto l = [&](int i, int j) -> double& { return lb_[(i - j) * n_ + j]; };
  for (int j = 0; j < n_; ++j) {
    double diag = l(j, j);
    const int k0 = std::max(0, j - kd_);
    for (int k = k0; k < j; ++k) {
      const double v = l(j, k);
      diag -= v * v;
    }
    if (!(diag > 0.0) || !std::isfinite(diag)) return false;
    const double dj = std::sqrt(diag);
    l(j, j) = dj;
    const int imax = std::min(n_ - 1, j + kd_);
    for (int i = j + 1; i <= imax; ++i) {
      double s = l(i, j);
      const int kk0 = std::max({0, i - kd_, j - kd_});
      for (int k = kk0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / dj;
    }
  }
  ok_ = true;
  return true;
}

void BandedCholesky::solve_in_place(std::vector<double>& b) const {
  if (!ok_) throw std::logic_error("banded: solve before successful factorization");
  if (static_cast<int>(b.size()) != n_)
    throw std::invalid_argument("banded: rhs size mismatch");
  auto l = [&](int i, int j) -> double { return lb_[(i - j) * n_ + j]; };
  // forward: L y = b
  for (int i = 0; i < n_; ++i) {
    double s = b[i];
    const int k0 = std::max(0, i - kd_);
    for (int k = k0; k < i; ++k) s -= l(i, k) * b[k];
    b[i] = s / l(i, i);
  }
  // backward: L^T x = y
  for (int i = n_ - 1; i >= 0; --i) {
    double s = b[i];
    const int kmax = std::min(n_ - 1, i + kd_);
    for (int k = i + 1; k <= kmax; ++k) s -= l(k, i) * b[k];
    b[i] = s / l(i, i);
  }
}

}  // namespace plate
