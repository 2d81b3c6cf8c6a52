#pragma once

#include <vector>

#include "plate/config.hpp"

namespace plate {

/// Closed-form constants for the lambda * (x/L)^2 (1 - x/L)^2 initial profile
/// with zero initial velocity: everything reduces to Beta integrals, so the
/// critical-amplitude pipeline carries no quadrature error.
///   ||V0''||^2      = 0.8 lambda^2 / L^3
///   int |V0|^p dx   = lambda^p L B(2p+1, 2p+1)
namespace closed_form {

double beta_function(double a, double b);

/// E(0) = 0.4 lambda^2/L^3 - (lambda^p/p) L B(2p+1,2p+1)
double initial_energy(double lambda, double p, double L);

/// I(0) = 0.8 lambda^2/L^3 - lambda^p L B(2p+1,2p+1)
double initial_I(double lambda, double p, double L);

}  // namespace closed_form

/// Sobolev-Poincare constant used by the well-depth formula.
double sobolev_constant(double L);

/// d = ((p-2)/2p) * (C*)^(2/(2-p))
double well_depth(double p, double L);

/// Amplitude with E(0) = 0 (closed Beta form).
double lambda_critical(double p, double L);

/// Same value located by bisection on E(0); independent route for validation.
double lambda_critical_bisect(double p, double L);

/// Smallest positive amplitude with E(0) = d (bisection below the maximizer).
double lambda_depth(double p, double L);

/// Eq. (4.1)-type sufficient condition for global existence:
/// C*^p ((2p/(p-2)) E0)^((p-2)/2) < 1 together with I(0) > 0.
/// False whenever E0 < 0 (the bound is not evaluable there).
bool check_eq41(const SimulationConfig& cfg, double E0);

struct WellRow {
  double p = 0.0;
  double lambda_c = 0.0;
  double d = 0.0;
  double lambda_d = 0.0;
};

std::vector<WellRow> table1(const std::vector<double>& p_list, double L = 1.0);

/// The published critical-value table (p = 3..9) for regression comparison.
const std::vector<WellRow>& reference_table1();

/// Max relative deviation of computed rows against the reference rows
/// (matched by p; rows absent from the reference are skipped).
double table1_max_deviation(const std::vector<WellRow>& rows);

}  // namespace plate
