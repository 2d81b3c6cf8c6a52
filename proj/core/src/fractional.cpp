#include "plate/fractional.hpp"

#include <cmath>
#include <stdexcept>

namespace plate {

XiGrid build_grid(double theta, double R, int M_xi) {
  if (!(theta > 0.0 && theta < 1.0))
    throw std::invalid_argument("build_grid: theta must lie in (0,1)");
  if (!(R > 0.0) || M_xi < 1)
    throw std::invalid_argument("build_grid: requires R > 0 and M_xi >= 1");
  XiGrid g;
  g.R = R;
  g.M_xi = M_xi;
  g.dxi = R / M_xi;
  g.xi.resize(M_xi);
  g.mu.resize(M_xi);
  const double expo = (2.0 * theta - 1.0) / 2.0;
  for (int l = 0; l < M_xi; ++l) {
    g.xi[l] = (l + 1) * g.dxi;
    g.mu[l] = std::pow(g.xi[l], expo);
  }
  return g;
}

double analytic_A0(double theta, double vartheta) {
  return M_PI / std::sin(theta * M_PI) * std::pow(vartheta, theta - 1.0);
}

double quadrature_A0(const XiGrid& grid, double vartheta) {
  double acc = 0.0;
  for (int l = 0; l < grid.M_xi; ++l)
    acc += grid.mu[l] * grid.mu[l] / (grid.xi[l] * grid.xi[l] + vartheta);
  return 2.0 * acc * grid.dxi;
}

void update_aux(const XiGrid& grid, DiffusiveField& field, double vartheta,
                double dt, const NodalField& v_half) {
  if (field.n_modes != grid.M_xi || field.n_dofs != static_cast<int>(v_half.size()))
    throw std::invalid_argument("update_aux: dimension mismatch");
  const int n = field.n_dofs;
  for (int l = 0; l < grid.M_xi; ++l) {
    const double a = dt * (grid.xi[l] * grid.xi[l] + vartheta);
    const double decay = (2.0 - a) / (2.0 + a);
    const double drive = 2.0 * dt * grid.mu[l] / (2.0 + a);
    double* g = field.row(l);
    for (int i = 0; i < n; ++i) g[i] = decay * g[i] + drive * v_half[i];
  }
}

NodalField fractional_force(const XiGrid& grid, const DiffusiveField& field, double b) {
  return weighted_mode_sum(grid, field, grid.mu, b);
}

std::vector<double> mu_tilde(const XiGrid& grid, double vartheta, double dt) {
  std::vector<double> w(grid.M_xi);
  for (int l = 0; l < grid.M_xi; ++l) {
    const double a = dt * (grid.xi[l] * grid.xi[l] + vartheta);
    w[l] = (2.0 - a) / (2.0 + a) * grid.mu[l];
  }
  return w;
}

NodalField weighted_mode_sum(const XiGrid& grid, const DiffusiveField& field,
                             const std::vector<double>& weights, double scale) {
  if (static_cast<int>(weights.size()) != field.n_modes)
    throw std::invalid_argument("weighted_mode_sum: weight count mismatch");
  NodalField out(field.n_dofs, 0.0);
  for (int l = 0; l < field.n_modes; ++l) {
    const double w = weights[l];
    const double* g = field.row(l);
    for (int i = 0; i < field.n_dofs; ++i) out[i] += w * g[i];
  }
  const double c = scale * grid.dxi;
  for (double& v : out) v *= c;
  return out;
}

double c_augm_coeff(const XiGrid& grid, double vartheta, double dt, double b) {
  double acc = 0.0;
  for (int l = 0; l < grid.M_xi; ++l) {
    const double a = dt * (grid.xi[l] * grid.xi[l] + vartheta);
    acc += 2.0 * grid.mu[l] * grid.mu[l] * grid.dxi / (2.0 + a);
  }
  return dt * b * acc;
}

}  // namespace plate
