#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hedgehog/solve.hpp"

namespace hedgehog {

/// Outcome of one certified inequality or identity.
///
/// Margin convention: worst_margin is the signed slack of the inequality
/// (positive = satisfied), in the units stated by each check. pass holds iff
/// worst_margin >= -tolerance_used. Strict paper inequalities carry a
/// NEGATIVE tolerance_used (a strictness floor the margin must exceed);
/// noise-dominated checks carry a positive slack tolerance.
struct CheckResult {
    std::string name;
    bool pass = false;
    double worst_margin = 0.0;
    double worst_location = 0.0;  // radius
    double tolerance_used = 0.0;
    bool skipped = false;
    std::string note;

    static CheckResult skip(std::string name, std::string why)
    {
        CheckResult c;
        c.name = std::move(name);
        c.skipped = true;
        c.pass = true;
        c.note = std::move(why);
        return c;
    }
};

struct VerificationReport {
    std::vector<CheckResult> checks;
    std::optional<double> alpha;
    std::optional<double> beta;
    double residual_norm = 0.0;
    bool overall = false;
};

/// w(r) = r u'(r) / u(r), centered differences on the solution grid.
std::vector<double> compute_w(const ProfileSolution& sol);

std::array<CheckResult, 2> check_range_monotone(const ProfileSolution& sol);
CheckResult check_derivative_bound(const ProfileSolution& sol);  // u' < g+ u / r
CheckResult check_v_decreasing(const ProfileSolution& sol);      // u / r^g+ decreasing

CheckResult check_w_bounds(const ProfileSolution& sol);  // 0 < w < 2 strictly inside
CheckResult check_w_limits(const ProfileSolution& sol);  // w -> 2 at 0, w -> 0 at infinity
CheckResult check_w_sandwich(const ProfileSolution& sol);       // 2w(w-2) < rw' < w(w-2) < 0
CheckResult check_f_sandwich(const ProfileSolution& sol);       // f between the printed (w-2) forms
CheckResult check_uprime_sandwich(const ProfileSolution& sol);  // printed bounds on u'
CheckResult check_relfs(const ProfileSolution& sol);            // fhat - 3f > -(2/w) f
CheckResult check_uprime3(const ProfileSolution& sol);          // r^5 u'/u^3 non-decreasing

std::array<CheckResult, 3> check_adLB(const ProfileSolution& sol);
CheckResult check_explicit_lower_bound(const ProfileSolution& sol);
/// Positivity of the degree-10 polynomial from the sub-solution proof,
/// sampled on (0, r_max].
CheckResult check_positivity_polynomial(double r_max = 100.0, int samples = 10000);
std::array<CheckResult, 3> check_identities(const ProfileSolution& sol);
/// Raw normalized max-residuals of the three identities (for decay studies).
std::array<double, 3> identity_residuals(const ProfileSolution& sol);

inline constexpr double kDefaultThetasArr[] = {0.5, 0.8, 0.95};
inline constexpr std::span<const double> kDefaultThetas{kDefaultThetasArr};

CheckResult check_scaling_comparison(const ProfileSolution& sol,
                                     std::span<const double> thetas = kDefaultThetas);

/// Runs every check applicable to (p, q, model, domain); inapplicable checks
/// are reported as skipped. overall ignores skipped entries.
VerificationReport run_all(const ProfileSolution& sol);

std::string report_to_json(const VerificationReport& rep);
std::string report_to_table(const VerificationReport& rep);

}  // namespace hedgehog
