#pragma once

#include <span>
#include <utility>
#include <vector>

#include "hedgehog/solve.hpp"

namespace hedgehog {

struct EnergyReport {
    double E = 0.0;
    double E_modified = 0.0;
    std::pair<double, double> interval{0.0, 0.0};
    const char* quadrature = "trapezoid";
};

/// Trapezoidal quadrature of (1/2)[r^p u'^2 + q r^{p-2} u^2 + r^p h(u)] over
/// the interval, with u' by centered differences on the solution grid.
/// Partial end cells use the monotone cubic interpolant of u.
EnergyReport energy(const ProfileSolution& sol, std::pair<double, double> interval);
EnergyReport energy(const ProfileSolution& sol);  // full grid span from r = 0

/// Second variation Q[v] = int r^2 v'^2 + 6 v^2 + r^2 F'(u) v^2 at p=2, q=6,
/// with the same trapezoid + centered-difference discretization as energy()
/// so that Q equals the epsilon-Hessian of E exactly up to quadrature.
/// Requires v(R) = 0.
double second_variation(const ProfileSolution& sol, std::span<const double> v);

struct StabilityReport {
    double lambda_min = 0.0;
    std::vector<double> eigenvector;  // nodal, v(R) = 0 enforced
    int iterations = 0;
};

/// Smallest eigenvalue of Q relative to the weighted mass int r^2 v^2 by
/// shifted inverse iteration on the tridiagonal (cell-based) pencil.
StabilityReport min_eigenvalue(const ProfileSolution& sol, int max_iter = 500);

}  // namespace hedgehog
