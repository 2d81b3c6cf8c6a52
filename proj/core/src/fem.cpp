#include "plate/fem.hpp"

#include <cmath>
#include <stdexcept>

namespace plate {

const std::array<double, kGaussPoints> kGaussXi = {
    0.033765242898423986, 0.169395306766867740, 0.380690406958401550,
    0.619309593041598450, 0.830604693233132260, 0.966234757101576010};
const std::array<double, kGaussPoints> kGaussW = {
    0.085662246189585178, 0.180380786524069300, 0.233956967286345520,
    0.233956967286345520, 0.180380786524069300, 0.085662246189585178};

ShapeEval shape_functions(double xi, double h) {
  ShapeEval s;
  const double xi2 = xi * xi;
  const double xi3 = xi2 * xi;
  s.phi = {1.0 - 3.0 * xi2 + 2.0 * xi3, h * (xi - 2.0 * xi2 + xi3),
           3.0 * xi2 - 2.0 * xi3, h * (-xi2 + xi3)};
  const double inv_h2 = 1.0 / (h * h);
  s.d2phi = {(-6.0 + 12.0 * xi) * inv_h2, (-4.0 + 6.0 * xi) / h,
             (6.0 - 12.0 * xi) * inv_h2, (-2.0 + 6.0 * xi) / h};
  return s;
}

std::array<std::array<double, 4>, 4> element_mass(double h) {
  const double c = h / 420.0;
  const double h2 = h * h;
  return {{{156.0 * c, 22.0 * h * c, 54.0 * c, -13.0 * h * c},
           {22.0 * h * c, 4.0 * h2 * c, 13.0 * h * c, -3.0 * h2 * c},
           {54.0 * c, 13.0 * h * c, 156.0 * c, -22.0 * h * c},
           {-13.0 * h * c, -3.0 * h2 * c, -22.0 * h * c, 4.0 * h2 * c}}};
}

std::array<std::array<double, 4>, 4> element_stiffness(double h) {
  const double c = 1.0 / (h * h * h);
  const double h2 = h * h;
  return {{{12.0 * c, 6.0 * h * c, -12.0 * c, 6.0 * h * c},
           {6.0 * h * c, 4.0 * h2 * c, -6.0 * h * c, 2.0 * h2 * c},
           {-12.0 * c, -6.0 * h * c, 12.0 * c, -6.0 * h * c},
           {6.0 * h * c, 2.0 * h2 * c, -6.0 * h * c, 4.0 * h2 * c}}};
}

std::array<int, 4> FemSystem::element_dofs(int e) const {
  // global DOF 2*node + kind; free DOFs start at global 2 (node 1)
  std::array<int, 4> map;
  for (int a = 0; a < 4; ++a) {
    const int g = 2 * e + a;
    map[a] = (g >= 2 && g < 2 * mesh_.n_nodes - 2) ? g - 2 : -1;
  }
  return map;
}

FemSystem FemSystem::assemble(const Mesh& mesh) {
  if (mesh.n_nodes < 3)
    throw std::invalid_argument("assemble: need at least 3 nodes for free DOFs");
  if (!(mesh.L > 0.0)) throw std::invalid_argument("assemble: L must be positive");
  const int n_free = 2 * mesh.n_nodes - 4;
  BandedSymmetric m(n_free, 3), k(n_free, 3);
  FemSystem sys(mesh, std::move(m), std::move(k), n_free);
  const auto me = element_mass(mesh.h());
  const auto ke = element_stiffness(mesh.h());
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const auto dof = sys.element_dofs(e);
    for (int a = 0; a < 4; ++a) {
      if (dof[a] < 0) continue;
      for (int b = 0; b < 4; ++b) {
        if (dof[b] < 0 || dof[a] < dof[b]) continue;
        sys.mass_.add(dof[a], dof[b], me[a][b]);
        sys.stiffness_.add(dof[a], dof[b], ke[a][b]);
      }
    }
  }
  return sys;
}

NodalField FemSystem::interpolate(const std::function<double(double)>& f,
                                  const std::function<double(double)>& fp) const {
  NodalField q(n_free_, 0.0);
  for (int i = 1; i < mesh_.n_nodes - 1; ++i) {
    const double x = mesh_.node(i);
    q[2 * (i - 1)] = f(x);
    q[2 * (i - 1) + 1] = fp(x);
  }
  return q;
}

bool FemSystem::clamped_compatible(const std::function<double(double)>& f,
                                   const std::function<double(double)>& fp,
                                   double tol) const {
  double scale = 1.0;
  for (int i = 0; i < mesh_.n_nodes; ++i)
    scale = std::max(scale, std::abs(f(mesh_.node(i))));
  const double bound = tol * scale;
  return std::abs(f(0.0)) <= bound && std::abs(f(mesh_.L)) <= bound &&
         std::abs(fp(0.0)) <= bound && std::abs(fp(mesh_.L)) <= bound;
}

namespace {

// |v|^(p-2) * v with a fast path for integer p
inline double source_term(double v, double p, int ip) {
  if (ip > 0) {
    double a = std::abs(v);
    double w = v;
    for (int k = 0; k < ip - 2; ++k) w *= a;
    return w;
  }
  return std::pow(std::abs(v), p - 2.0) * v;
}

inline int integer_exponent(double p) {
  const int ip = static_cast<int>(std::llround(p));
  return (std::abs(p - ip) < 1e-12 && ip >= 3) ? ip : 0;
}

}  // namespace

NodalField FemSystem::nonlinear_force(const NodalField& q, double p) const {
  NodalField f(n_free_, 0.0);
  const double h = mesh_.h();
  const int ip = integer_exponent(p);

  std::array<ShapeEval, kGaussPoints> shapes;
  for (int g = 0; g < kGaussPoints; ++g) shapes[g] = shape_functions(kGaussXi[g], h);

  double local[4];
  for (int e = 0; e < mesh_.n_elements(); ++e) {
    const auto dof = element_dofs(e);
    for (int a = 0; a < 4; ++a) local[a] = dof[a] >= 0 ? q[dof[a]] : 0.0;
    for (int g = 0; g < kGaussPoints; ++g) {
      const auto& phi = shapes[g].phi;
      const double v = local[0] * phi[0] + local[1] * phi[1] +
                       local[2] * phi[2] + local[3] * phi[3];
      const double w = kGaussW[g] * h * source_term(v, p, ip);
      for (int a = 0; a < 4; ++a)
        if (dof[a] >= 0) f[dof[a]] += w * phi[a];
    }
  }
  for (double v : f)
    if (!std::isfinite(v)) throw std::domain_error("nonlinear_force: non-finite field entries");
  return f;
}

double FemSystem::lp_integral(const NodalField& q, double p) const {
  const double h = mesh_.h();
  double acc = 0.0;
  std::array<ShapeEval, kGaussPoints> shapes;
  for (int g = 0; g < kGaussPoints; ++g) shapes[g] = shape_functions(kGaussXi[g], h);
  double local[4];
  for (int e = 0; e < mesh_.n_elements(); ++e) {
    const auto dof = element_dofs(e);
    for (int a = 0; a < 4; ++a) local[a] = dof[a] >= 0 ? q[dof[a]] : 0.0;
    for (int g = 0; g < kGaussPoints; ++g) {
      const auto& phi = shapes[g].phi;
      const double v = local[0] * phi[0] + local[1] * phi[1] +
                       local[2] * phi[2] + local[3] * phi[3];
      acc += kGaussW[g] * h * std::pow(std::abs(v), p);
    }
  }
  return acc;
}

double FemSystem::sup_norm(const NodalField& q) const {
  double m = 0.0;
  for (int i = 0; i < n_free_; i += 2) m = std::max(m, std::abs(q[i]));
  return m;
}

std::vector<double> FemSystem::nodal_values(const NodalField& q) const {
  std::vector<double> vals(mesh_.n_nodes, 0.0);
  for (int i = 1; i < mesh_.n_nodes - 1; ++i) vals[i] = q[2 * (i - 1)];
  return vals;
}

}  // namespace plate
