#pragma once

#include <utility>
#include <vector>

#include "hedgehog/nonlinearity.hpp"

namespace hedgehog {

struct ProfileSolution;  // solve.hpp

/// Roots of the indicial equation g(g-1) + p g - q = 0 at the singular
/// point r = 0. q > 0 guarantees gamma_plus > 0 > gamma_minus.
struct FuchsianIndices {
    double gamma_plus;
    double gamma_minus;
};

FuchsianIndices fuchsian_indices(double p, double q);

/// Value of the indicial polynomial e(e-1) + p e - q.
inline double indicial_poly(double p, double q, double e) { return e * (e - 1.0) + p * e - q; }

/// Leading far-field data: u = s+ - beta/r^2 + o(r^-2), beta = q s+ / F'(s+).
struct FarField {
    double s_plus;
    double beta;
};

FarField far_field_beta(const NonlinearityModel& model, double q);

/// Truncated generalized power series u = alpha r^g+ + sum c_k r^{e_k}
/// solving the equation near the origin.
struct NearFieldExpansion {
    double alpha_origin = 0.0;
    std::vector<std::pair<double, double>> correction_terms;  // (exponent, coefficient), exponents > gamma_plus
    int order = 0;
    double start_radius = 0.0;  // truncation residual <= tolerance below this radius
    double gamma_plus = 0.0;

    double eval(double r) const;
    double eval_derivative(double r) const;
    /// Residual of the truncated series in the equation at radius r.
    double ode_residual(const NonlinearityModel& model, double p, double q, double r) const;
};

/// Builds the expansion by repeatedly cancelling the lowest-order residual
/// term: a source c r^s forces coefficient -c / ((s+2)(s+1) + p(s+2) - q)
/// at exponent s+2. Aborts with NumericalError("resonance") if a generated
/// exponent hits an indicial root.
NearFieldExpansion near_origin_series(const NonlinearityModel& model, double p, double q,
                                      double alpha_origin, int order,
                                      double series_tol = 1e-10);

/// Richardson-extrapolated limit of u/r^g+ over the innermost nodes.
/// Throws NumericalError("extraction-unstable") when successive extrapolants
/// disagree beyond tol. raw_ratio, when non-null, receives u(r1)/r1^g+.
double extract_alpha(const ProfileSolution& sol, double tol = 5e-3, double* raw_ratio = nullptr);

/// Richardson-extrapolated limit of r^2 (s+ - u) over the outermost nodes.
double extract_beta(const ProfileSolution& sol, double tol = 1e-2);

}  // namespace hedgehog
