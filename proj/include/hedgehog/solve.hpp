#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hedgehog/grid.hpp"

namespace hedgehog {

struct ProfileSolution {
    RadialGrid grid;
    std::vector<double> values;
    double p = 2.0;
    double q = 6.0;
    NonlinearityModel model;
    double residual_norm = 0.0;
    std::optional<double> alpha_origin;
    std::optional<double> beta;
    std::string method;
    int iterations = 0;

    /// 0 < u < s+ and strictly increasing (the positive branch).
    bool is_positive_branch() const;
};

struct NewtonOptions {
    double tol_factor = 1e-10;  // residual 2-norm target: tol_factor * sqrt(N)
    int max_iter = 100;
    bool extract_asymptotics = true;
};

/// Initial guess of lower-bound shape s+ a r^2/(a r^2 + s+) with the
/// heuristic a = s+ / median(r)^g+; for g+ != 2 the capped power
/// s+ min(1, (r/r_half)^g+) is used instead.
std::vector<double> sandwich_init(const DiscreteProblem& dp);

ProfileSolution solve_newton(const DiscreteProblem& dp, std::span<const double> init,
                             const NewtonOptions& opts = {});
ProfileSolution solve_newton(const DiscreteProblem& dp, const NewtonOptions& opts = {});

enum class TrajectoryClass { Overshoot, Turnback, Matched };

struct ShootingTrajectory {
    double alpha_origin = 0.0;
    TrajectoryClass classification = TrajectoryClass::Turnback;
    std::optional<double> turning_radius;
};

struct ShootingOptions {
    double rtol = 1e-13;
    double atol = 1e-16;
    int series_order = 4;
    int grid_n = 2000;
    int max_bisections = 240;
    double trust_tol = 5e-8;  // deviation budget (relative to s+) defining the trusted span
};

/// Classifies a single trajectory started from the near-origin series.
ShootingTrajectory classify_shot(const NonlinearityModel& model, double p, double q,
                                 double alpha, const ShootingOptions& opts = {});

/// Bisection on the near-origin coefficient between a turnback and an
/// overshoot trajectory. The returned solution lives on a geometric grid
/// covering the span where the matched trajectory is integrator-accurate;
/// beyond it double-precision trajectories carry no information (the far
/// plateau is exponentially unstable at rate sqrt(F'(s+))).
ProfileSolution solve_shoot(const NonlinearityModel& model, double p, double q,
                            std::pair<double, double> alpha_bracket,
                            const ShootingOptions& opts = {});

struct DescentOptions {
    int max_iter = 200000;
    double energy_stall = 1e-14;   // relative per-step decrease treated as stalled
    double residual_gate = 1e-6;   // RMS strong-form residual required before polishing
};

/// Preconditioned gradient descent on the modified energy (odd-extension
/// nonlinearity), polished by solve_newton on the same problem.
ProfileSolution solve_energy_descent(const DiscreteProblem& dp, const DescentOptions& opts = {});

enum class ScanParameter { A2, B2, C2, R };

ScanParameter scan_parameter_from_string(const std::string& s);
std::string to_string(ScanParameter p);

/// Warm-started parameter sweep. values must be sorted. Solver errors are
/// rethrown with the failing parameter value in the message.
std::vector<ProfileSolution> continuation_scan(const DiscreteProblem& base, ScanParameter parameter,
                                               std::span<const double> values);

}  // namespace hedgehog
