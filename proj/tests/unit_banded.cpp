#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "plate/banded.hpp"
#include "support/oracles.hpp"

using namespace plate;

namespace {

/// random SPD band matrix: diagonally dominant
BandedSymmetric random_spd(std::mt19937& rng, int n, int kd) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  BandedSymmetric a(n, kd);
  for (int j = 0; j < n; ++j) {
    for (int i = j + 1; i <= std::min(n - 1, j + kd); ++i) a.at(i, j) = u(rng);
    a.at(j, j) = 2.0 * kd + 1.0 + u(rng);
  }
  return a;
}

}  // namespace

TEST_CASE("matvec and quadratic form match a dense evaluation") {
  std::mt19937 rng(1);
  const int n = 23, kd = 3;
  const BandedSymmetric a = random_spd(rng, n, kd);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> x(n);
  for (double& v : x) v = u(rng);

  std::vector<double> dense_y(n, 0.0);
  double quad = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      dense_y[i] += a.entry(i, j) * x[j];
      quad += x[i] * a.entry(i, j) * x[j];
    }
  const std::vector<double> y = a.matvec(x);
  for (int i = 0; i < n; ++i) CHECK(y[i] == doctest::Approx(dense_y[i]).epsilon(1e-13));
  CHECK(a.quadratic_form(x) == doctest::Approx(quad).epsilon(1e-13));
}

TEST_CASE("Cholesky solve matches dense elimination") {
  std::mt19937 rng(2);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 5 + trial * 7;
    const BandedSymmetric a = random_spd(rng, n, 3);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::vector<double> b(n);
    for (double& v : b) v = u(rng);

    BandedCholesky chol;
    REQUIRE(chol.factor(a));
    const std::vector<double> x = chol.solve(b);

    std::vector<std::vector<double>> ad(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) ad[i][j] = a.entry(i, j);
    const std::vector<double> ref = oracles::dense_solve(ad, b);
    for (int i = 0; i < n; ++i) CHECK(x[i] == doctest::Approx(ref[i]).epsilon(1e-11));
  }
}

TEST_CASE("factorization rejects indefinite matrices") {
  BandedSymmetric a(4, 1);
  a.at(0, 0) = -1.0;
  a.at(1, 1) = 1.0;
  a.at(2, 2) = 1.0;
  a.at(3, 3) = 1.0;
  BandedCholesky chol;
  CHECK_FALSE(chol.factor(a));
  CHECK_FALSE(chol.ok());
}

TEST_CASE("linear combination preserves layout") {
  std::mt19937 rng(3);
  const BandedSymmetric a = random_spd(rng, 12, 3);
  const BandedSymmetric b = random_spd(rng, 12, 3);
  const BandedSymmetric c = BandedSymmetric::linear_combination(2.0, a, -0.5, b);
  for (int i = 0; i < 12; ++i)
    for (int j = std::max(0, i - 3); j <= i; ++j)
      CHECK(c.entry(i, j) == doctest::Approx(2.0 * a.entry(i, j) - 0.5 * b.entry(i, j)));
}
