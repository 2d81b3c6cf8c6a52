#pragma once

#include <vector>

#include "plate/fem.hpp"

namespace plate {

/// Uniform grid on (0, R] for the diffusive variable; the even symmetry of
/// the kernel is handled by a factor 2 wherever the full line is integrated.
struct XiGrid {
  double R = 0.0;
  int M_xi = 0;
  double dxi = 0.0;
  std::vector<double> xi;  // l*dxi, l = 1..M_xi
  std::vector<double> mu;  // xi^((2*theta-1)/2)
};

XiGrid build_grid(double theta, double R, int M_xi);

/// A0 = (pi/sin(theta*pi)) * vartheta^(theta-1)
double analytic_A0(double theta, double vartheta);

/// Riemann-sum counterpart: 2 * sum mu_l^2/(xi_l^2+vartheta) * dxi
double quadrature_A0(const XiGrid& grid, double vartheta);

/// Auxiliary memory modes: row l holds the nodal coefficients of G_l.
struct DiffusiveField {
  int n_modes = 0;
  int n_dofs = 0;
  std::vector<double> data;  // row-major, n_modes x n_dofs, zero-initialized

  DiffusiveField() = default;
  DiffusiveField(int modes, int dofs)
      : n_modes(modes), n_dofs(dofs), data(static_cast<std::size_t>(modes) * dofs, 0.0) {}

  double* row(int l) { return data.data() + static_cast<std::size_t>(l) * n_dofs; }
  const double* row(int l) const { return data.data() + static_cast<std::size_t>(l) * n_dofs; }
};

/// Crank-Nicolson update of every mode, driven by v_half = (v^n + v^{n+1})/2:
///   G_l <- (2 - dt(xi^2+vt))/(2 + dt(xi^2+vt)) G_l + 2 dt mu_l/(2 + dt(xi^2+vt)) v_half
void update_aux(const XiGrid& grid, DiffusiveField& field, double vartheta,
                double dt, const NodalField& v_half);

/// b * sum_l mu_l G_l dxi (half-line sum; the stepper applies the symmetry
/// factor and the mass matrix).
NodalField fractional_force(const XiGrid& grid, const DiffusiveField& field, double b);

/// Decayed weights mu~_l = (2 - dt(xi^2+vt))/(2 + dt(xi^2+vt)) * mu_l.
std::vector<double> mu_tilde(const XiGrid& grid, double vartheta, double dt);

/// scale * sum_l w_l G_l dxi for arbitrary mode weights.
NodalField weighted_mode_sum(const XiGrid& grid, const DiffusiveField& field,
                             const std::vector<double>& weights, double scale);

/// dt * b * sum_l 2 mu_l^2 dxi / (2 + dt(xi_l^2+vt)); multiplies the mass
/// matrix in the effective Newmark operator.
double c_augm_coeff(const XiGrid& grid, double vartheta, double dt, double b);

}  // namespace plate
