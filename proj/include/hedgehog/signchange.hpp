#pragma once

#include <utility>
#include <vector>

#include "hedgehog/solve.hpp"

namespace hedgehog {

struct SolutionSet {
    std::vector<ProfileSolution> solutions;
    std::vector<std::vector<double>> pairwise_distances;  // max-norm gaps
    std::vector<int> sign_change_counts;

    /// Recomputes distances and sign-change counts from the members.
    void refresh();
    static constexpr double kDistinctnessRel = 1e-3;  // x s+, max-norm
};

/// Strict sign alternations across consecutive nodes, ignoring the
/// |u| < 1e-12 s+ band around zero.
int count_sign_changes(const ProfileSolution& sol);

/// Polynomial specialization of the quartic growth bound: F = kappa t^4 +
/// lower order with kappa > 0 and residual degree lambda < 4.
bool growth_condition_check(const NonlinearityModel& model, double& kappa, double& lambda);

/// Newton on the deflated residual eta(u) R(u), eta = prod_k (1/|u-u_k|^2 + 1),
/// started from negative-lobe templates and ridge-crossing perturbations of
/// the positive solution. Returns the enlarged set; finding nothing new is
/// reported by the unchanged size, not an error.
SolutionSet deflated_newton_search(const DiscreteProblem& dp, SolutionSet known, int attempts);

struct MultiShootOptions {
    int samples = 240;
    int refine_bisections = 100;
    int polish_n = 2000;
    double match_tol = 1e-8;
    int jobs = 1;
    double rtol = 1e-11;
    double atol = 1e-14;
};

/// Sweeps the signed near-origin coefficient, keeps trajectories that hit
/// u(R) = s+ after bisection refinement, polishes each on a finite-domain
/// discretization and de-duplicates by max-norm.
SolutionSet multi_shoot_scan(const NonlinearityModel& model, double p, double q, double R,
                             std::pair<double, double> alpha_range,
                             const MultiShootOptions& opts = {});

}  // namespace hedgehog
