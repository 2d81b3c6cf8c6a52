#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "plate/fractional.hpp"
#include "support/oracles.hpp"

using namespace plate;

TEST_CASE("grid construction") {
  const XiGrid g = build_grid(0.5, 10.0, 5);
  CHECK(g.dxi == doctest::Approx(2.0));
  for (int l = 0; l < 5; ++l) {
    CHECK(g.xi[l] == doctest::Approx(2.0 * (l + 1)));
    CHECK(g.mu[l] == doctest::Approx(1.0));  // exponent (2*0.5-1)/2 = 0
  }
  const XiGrid g2 = build_grid(0.75, 5.0, 5);
  CHECK(g2.xi[0] == doctest::Approx(1.0));
  CHECK(g2.mu[0] == doctest::Approx(1.0));
  CHECK(g2.mu[1] == doctest::Approx(std::pow(2.0, 0.25)));
  CHECK_THROWS(build_grid(1.5, 10.0, 5));
}

TEST_CASE("analytic A0 values") {
  CHECK(analytic_A0(0.5, 0.3) == doctest::Approx(5.735737209545476).epsilon(1e-12));
  CHECK(analytic_A0(0.5, 1.0) == doctest::Approx(M_PI).epsilon(1e-14));
  CHECK(analytic_A0(0.25, 1.0) == doctest::Approx(M_PI / std::sin(0.25 * M_PI)));
}

TEST_CASE("A0 quadrature approaches the closed form") {
  const XiGrid g = build_grid(0.5, 200.0, 40000);
  const double q = quadrature_A0(g, 0.3);
  const double a = analytic_A0(0.5, 0.3);
  CHECK(std::abs(q - a) / a < 1e-2);

  // single-point sanity value
  const XiGrid one = build_grid(0.5, 1.0, 1);
  CHECK(quadrature_A0(one, 1.0) == doctest::Approx(1.0));

  // refinement improves the estimate
  const double e1 = std::abs(quadrature_A0(build_grid(0.5, 200.0, 4000), 0.3) - a);
  const double e2 = std::abs(quadrature_A0(build_grid(0.5, 400.0, 16000), 0.3) - a);
  CHECK(e2 < e1);
}

TEST_CASE("aux update keeps zero a fixed point") {
  const XiGrid g = build_grid(0.4, 50.0, 64);
  DiffusiveField f(64, 3);
  const NodalField zero(3, 0.0);
  update_aux(g, f, 0.3, 1e-2, zero);
  for (double v : f.data) CHECK(v == 0.0);

  // decay factor magnitude stays below one for every mode and step size
  for (double dt : {1e-4, 1e-2, 1.0, 50.0}) {
    const auto mt = mu_tilde(g, 0.3, dt);
    for (int l = 0; l < g.M_xi; ++l) CHECK(std::abs(mt[l] / g.mu[l]) < 1.0);
  }
}

TEST_CASE("mu_tilde magnitudes never exceed mu") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> uth(0.1, 0.9), uvt(0.05, 2.0),
      udt(1e-5, 0.5);
  for (int k = 0; k < 30; ++k) {
    const XiGrid g = build_grid(uth(rng), 80.0, 41);
    const auto mt = mu_tilde(g, uvt(rng), udt(rng));
    for (int l = 0; l < g.M_xi; ++l) CHECK(std::abs(mt[l]) <= g.mu[l] + 1e-15);
  }
}

TEST_CASE("constant drive converges to the per-mode equilibrium") {
  const XiGrid g = build_grid(0.5, 8.0, 4);
  DiffusiveField f(4, 1);
  const double vt = 0.3, dt = 1e-2, c = 1.7;
  const NodalField drive(1, c);
  for (int n = 0; n < 20000; ++n) update_aux(g, f, vt, dt, drive);
  for (int l = 0; l < 4; ++l) {
    const double expected = g.mu[l] * c / (g.xi[l] * g.xi[l] + vt);
    CHECK(f.row(l)[0] == doctest::Approx(expected).epsilon(1e-10));
  }
}

TEST_CASE("unforced mode norms contract") {
  const XiGrid g = build_grid(0.3, 30.0, 24);
  DiffusiveField f(24, 5);
  std::mt19937 rng(17);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (double& v : f.data) v = gauss(rng);
  const NodalField zero(5, 0.0);
  for (int step = 0; step < 4; ++step) {
    std::vector<double> before(24);
    for (int l = 0; l < 24; ++l) {
      double s = 0.0;
      for (int i = 0; i < 5; ++i) s += f.row(l)[i] * f.row(l)[i];
      before[l] = s;
    }
    update_aux(g, f, 0.7, 0.05, zero);
    double sum_before = 0.0, sum_after = 0.0;
    for (int l = 0; l < 24; ++l) {
      double s = 0.0;
      for (int i = 0; i < 5; ++i) s += f.row(l)[i] * f.row(l)[i];
      CHECK(s <= before[l]);  // per-mode contraction
      sum_before += g.mu[l] * before[l] * g.dxi;
      sum_after += g.mu[l] * s * g.dxi;
    }
    CHECK(sum_after <= sum_before);
  }
}

TEST_CASE("fractional force is linear in the field") {
  const XiGrid g = build_grid(0.6, 20.0, 16);
  DiffusiveField f1(16, 4), f2(16, 4);
  std::mt19937 rng(23);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (double& v : f1.data) v = gauss(rng);
  for (double& v : f2.data) v = gauss(rng);

  const DiffusiveField zero(16, 4);
  for (double v : fractional_force(g, zero, 0.31)) CHECK(v == 0.0);

  const double alpha = -2.3;
  DiffusiveField mix(16, 4);
  for (std::size_t i = 0; i < mix.data.size(); ++i)
    mix.data[i] = alpha * f1.data[i] + f2.data[i];
  const NodalField a = fractional_force(g, f1, 0.31);
  const NodalField b = fractional_force(g, f2, 0.31);
  const NodalField m = fractional_force(g, mix, 0.31);
  for (int i = 0; i < 4; ++i)
    CHECK(m[i] == doctest::Approx(alpha * a[i] + b[i]).epsilon(1e-12));
}

TEST_CASE("augmented coefficient") {
  // single point: xi=1, mu=1, dxi=1, vt=1, dt=1 -> 1 * 2/(2+2) = 0.5
  const XiGrid one = build_grid(0.5, 1.0, 1);
  CHECK(c_augm_coeff(one, 1.0, 1.0, 1.0) == doctest::Approx(0.5));

  // vanishes with dt
  const XiGrid g = build_grid(0.5, 100.0, 200);
  CHECK(c_augm_coeff(g, 0.3, 1e-9, 0.3) < 1e-8);

  // algebraic identity against the A0 quadrature with shifted tempering:
  // c_augm = b * quadrature_A0(grid, vt + 2/dt) * dt / dt
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> uth(0.1, 0.9), udt(1e-4, 0.3);
  for (int k = 0; k < 20; ++k) {
    const double th = uth(rng), dt = udt(rng), vt = 0.4, b = 0.27;
    const XiGrid gg = build_grid(th, 150.0, 333);
    const double lhs = c_augm_coeff(gg, vt, dt, b);
    const double rhs = b * quadrature_A0(gg, vt + 2.0 / dt);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  }

  // with refinement the same identity approaches the closed form at the
  // shifted argument
  const double dt = 1e-2, vt = 0.3, th = 0.5, b = 1.0 / M_PI;
  const XiGrid fine = build_grid(th, 4000.0, 400000);
  const double lim = b * analytic_A0(th, vt + 2.0 / dt);
  CHECK(c_augm_coeff(fine, vt, dt, b) == doctest::Approx(lim).epsilon(1e-2));
}

TEST_CASE("scalar memory recurrence reproduces the tempered derivative of t") {
  // drive one degree of freedom with unit velocity: V(t) = t
  const double th = 0.5, vt = 0.3, dt = 1e-3;
  const XiGrid g = build_grid(th, 200.0, 4000);
  DiffusiveField f(g.M_xi, 1);
  const NodalField vhalf(1, 1.0);
  const double b = std::sin(th * M_PI) / M_PI;

  std::vector<double> out(1001, 0.0);
  for (int n = 0; n < 1000; ++n) {
    update_aux(g, f, vt, dt, vhalf);
    out[n + 1] = 2.0 * fractional_force(g, f, b)[0];
  }

  const double closed = oracles::tempered_derivative_of_t(th, vt, 1.0);
  // the pinned grid carries a ~1.7% defect at t=1; the documented bound is 2%
  CHECK(out[1000] == doctest::Approx(closed).epsilon(0.02));

  // pointwise against the exact-weight convolution oracle on [0.1, 1]
  std::vector<double> v_samples(1001);
  for (int n = 0; n <= 1000; ++n) v_samples[n] = n * dt;
  for (int n = 100; n <= 1000; n += 90) {
    const double l1 = oracles::l1_tempered_derivative(v_samples, dt, th, vt, n);
    CHECK(std::abs(out[n] - l1) / std::abs(l1) < 0.02);
  }
}

TEST_CASE("convolution oracle self-check on V(t)=t^2") {
  const double th = 0.35, vt = 0.6, dt = 1e-4;
  const int n = 5000;  // t = 0.5
  std::vector<double> v(n + 1);
  for (int k = 0; k <= n; ++k) v[k] = (k * dt) * (k * dt);
  const double l1 = oracles::l1_tempered_derivative(v, dt, th, vt, n);
  const double exact = oracles::tempered_derivative_of_t2(th, vt, 0.5);
  CHECK(l1 == doctest::Approx(exact).epsilon(1e-4));
}

TEST_CASE("diffusive output against the convolution oracle under refinement") {
  // documented measurement: the time-discretization error is not asserted a
  // priori; refinement in dt must not worsen the agreement at t = 1
  const double th = 0.5, vt = 0.3;
  double last_err = -1.0;
  for (const double dt : {4e-3, 2e-3, 1e-3}) {
    const XiGrid g = build_grid(th, 400.0, 16000);
    DiffusiveField f(g.M_xi, 1);
    const NodalField vhalf(1, 1.0);
    const double b = std::sin(th * M_PI) / M_PI;
    const int steps = static_cast<int>(std::lround(1.0 / dt));
    double out = 0.0;
    for (int n = 0; n < steps; ++n) {
      update_aux(g, f, vt, dt, vhalf);
      out = 2.0 * fractional_force(g, f, b)[0];
    }
    const double ref = oracles::tempered_derivative_of_t(th, vt, 1.0);
    const double err = std::abs(out - ref);
    MESSAGE("dt=", dt, " |diffusive - closed form| = ", err);
    if (last_err >= 0.0) CHECK(err <= last_err * 1.05);
    last_err = err;
  }
}
