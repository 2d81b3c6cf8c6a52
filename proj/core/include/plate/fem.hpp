#pragma once

#include <array>
#include <functional>
#include <vector>

#include "plate/banded.hpp"

namespace plate {

/// Coefficients on the free DOFs (alternating value/slope, clamped ends
/// eliminated).
using NodalField = std::vector<double>;

struct Mesh {
  double L = 1.0;
  int n_nodes = 2;

  double h() const { return L / (n_nodes - 1); }
  int n_elements() const { return n_nodes - 1; }
  double node(int i) const { return i * h(); }
};

struct ShapeEval {
  std::array<double, 4> phi;    // values
  std::array<double, 4> d2phi;  // second derivatives w.r.t. x (1/h^2 factor)
};

/// Hermite cubic shape functions on the reference element, xi in [0,1].
ShapeEval shape_functions(double xi, double h);

/// Consistent element mass matrix, closed form.
std::array<std::array<double, 4>, 4> element_mass(double h);

/// Element bending stiffness, closed form.
std::array<std::array<double, 4>, 4> element_stiffness(double h);

/// C1 discretization of the clamped beam: banded mass/stiffness on the free
/// DOFs, plus interpolation and the nonlinear integrals.
class FemSystem {
 public:
  static FemSystem assemble(const Mesh& mesh);

  const Mesh& mesh() const { return mesh_; }
  int n_free() const { return n_free_; }
  const BandedSymmetric& mass() const { return mass_; }
  const BandedSymmetric& stiffness() const { return stiffness_; }

  /// Nodal interpolant q_i = f(x_i), r_i = f'(x_i), clamped DOFs dropped.
  NodalField interpolate(const std::function<double(double)>& f,
                         const std::function<double(double)>& fp) const;

  /// Whether f, f' vanish at both ends (clamping compatibility).
  bool clamped_compatible(const std::function<double(double)>& f,
                          const std::function<double(double)>& fp,
                          double tol = 1e-10) const;

  /// F_i = int V_h |V_h|^(p-2) phi_i dx, fixed 6-point Gauss per element.
  /// Throws std::domain_error when the integrand overflows.
  NodalField nonlinear_force(const NodalField& q, double p) const;

  /// int |V_h|^p dx with the same quadrature.
  double lp_integral(const NodalField& q, double p) const;

  double mass_norm2(const NodalField& v) const { return mass_.quadratic_form(v); }

  /// Max |value DOF| (slope DOFs excluded); 0-padded clamped ends included.
  double sup_norm(const NodalField& q) const;

  /// Values at all nodes (clamped ends zero), for snapshot output.
  std::vector<double> nodal_values(const NodalField& q) const;

 private:
  FemSystem(Mesh mesh, BandedSymmetric m, BandedSymmetric k, int n_free)
      : mesh_(mesh), mass_(std::move(m)), stiffness_(std::move(k)), n_free_(n_free) {}

  /// Per-element free-DOF scatter: local slot -> free index or -1 (clamped).
  std::array<int, 4> element_dofs(int e) const;

  Mesh mesh_;
  BandedSymmetric mass_;
  BandedSymmetric stiffness_;
  int n_free_ = 0;
};

/// Gauss-Legendre rule on [0,1] used for the nonlinear terms: 6 points,
/// exact through polynomial degree 11.
inline constexpr int kGaussPoints = 6;
extern const std::array<double, kGaussPoints> kGaussXi;
extern const std::array<double, kGaussPoints> kGaussW;

}  // namespace plate
