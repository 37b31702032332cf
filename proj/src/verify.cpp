#include "hedgehog/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "hedgehog/asymptotics.hpp"
#include "hedgehog/numerics.hpp"

namespace hedgehog {

namespace {

// Tolerance budget. Strict paper inequalities get a strictness floor (stored
// negative); derivative-based checks get slack scaled by local magnitudes.
// Identity tolerances are calibration constants at N = 2000 and scale as
// (2000/N)^2 with the second-order stencils.
constexpr double kStrictFloorRel = 1e-10;   // x s+
constexpr double kDerivSlack = 1e-6;        // normalized derivative checks
constexpr double kVDecreasingSlack = 1e-9;  // normalized, u/r^g+ monotonicity
constexpr double kUprime3Slack = 1e-7;      // normalized increments
constexpr double kRelfsSlack = 1e-6;        // normalized
constexpr double kWLimitBand = 0.05;
// Strict w-based sandwiches degenerate as w -> 2 (all sides collapse to the
// same limit) and the margin there falls below the derivative noise of any
// second-order scheme; nodes that close to the limit are covered by the
// w-limits check instead.
constexpr double kWProximityExclusion = 1e-2;
constexpr double kAdLBRel = 1e-8;           // x s+
constexpr double kScalingRel = 1e-8;        // x s+
constexpr double kIdentityTolA3 = 2e-4;     // normalized residual at N = 2000
constexpr double kIdentityTolDu = 5e-3;     // third derivative, relaxed
constexpr double kIdentityTolFlux = 2e-4;
constexpr int kEdgeSkip = 2;

struct Worst {
    double margin = std::numeric_limits<double>::infinity();
    double location = 0.0;
    void update(double m, double r)
    {
        if (m < margin) {
            margin = m;
            location = r;
        }
    }
};

CheckResult make(const std::string& name, const Worst& w, double tolerance)
{
    CheckResult c;
    c.name = name;
    c.worst_margin = w.margin;
    c.worst_location = w.location;
    c.tolerance_used = tolerance;
    c.pass = w.margin >= -tolerance;
    return c;
}

bool is_phys26_semiinfinite(const ProfileSolution& sol)
{
    return sol.model.kind() == ModelKind::PhysicalCubic && std::abs(sol.p - 2.0) < 1e-12 &&
           std::abs(sol.q - 6.0) < 1e-12 &&
           sol.grid.domain_kind == DomainKind::TruncatedInfinite;
}

double identity_scale_factor(const ProfileSolution& sol)
{
    const double n = double(sol.grid.size());
    return (2000.0 / n) * (2000.0 / n);
}

}  // namespace

std::vector<double> compute_w(const ProfileSolution& sol)
{
    const auto du = derivative_on_grid(sol.grid, sol.values);
    std::vector<double> w(sol.grid.size());
    for (std::size_t i = 0; i < w.size(); ++i)
        w[i] = sol.grid.nodes[i] * du[i] / sol.values[i];
    return w;
}

std::array<CheckResult, 2> check_range_monotone(const ProfileSolution& sol)
{
    const double sp = sol.model.s_plus();
    const double floor = kStrictFloorRel * sp;
    Worst range, mono;
    const std::size_t n = sol.values.size();
    const bool pinned_end = sol.grid.domain_kind == DomainKind::FiniteR;
    for (std::size_t i = 0; i < n; ++i) {
        range.update(sol.values[i], sol.grid.nodes[i]);
        // u(R) = s+ is the boundary datum on finite domains; strictness of
        // the range holds on the open interval
        if (!(pinned_end && i + 1 == n)) range.update(sp - sol.values[i], sol.grid.nodes[i]);
        if (i > 0) mono.update(sol.values[i] - sol.values[i - 1], sol.grid.nodes[i]);
    }
    return {make("range", range, -floor), make("monotone", mono, -floor)};
}

CheckResult check_derivative_bound(const ProfileSolution& sol)
{
    const double gp = fuchsian_indices(sol.p, sol.q).gamma_plus;
    const auto du = derivative_on_grid(sol.grid, sol.values);
    Worst w;
    const std::size_t n = sol.grid.size();
    for (std::size_t i = kEdgeSkip; i + kEdgeSkip < n; ++i) {
        const double r = sol.grid.nodes[i];
        const double bound = gp * sol.values[i] / r;
        const double scale = std::max({std::abs(bound), std::abs(du[i]), 1e-30});
        w.update((bound - du[i]) / scale, r);
    }
    return make("derivative-bound", w, kDerivSlack);
}

CheckResult check_v_decreasing(const ProfileSolution& sol)
{
    const double gp = fuchsian_indices(sol.p, sol.q).gamma_plus;
    const auto& r = sol.grid.nodes;
    std::vector<double> v(r.size());
    double vmax = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        v[i] = sol.values[i] / std::pow(r[i], gp);
        vmax = std::max(vmax, std::abs(v[i]));
    }
    Worst w;
    for (std::size_t i = 1; i < v.size(); ++i)
        w.update((v[i - 1] - v[i]) / vmax, r[i]);
    return make("v-decreasing", w, kVDecreasingSlack);
}

CheckResult check_w_bounds(const ProfileSolution& sol)
{
    const auto w = compute_w(sol);
    Worst worst;
    const std::size_t n = w.size();
    const double r_inner = 4.0 * sol.grid.nodes.front();  // inner-closure error layer
    for (std::size_t i = kEdgeSkip; i + kEdgeSkip < n; ++i) {
        worst.update(w[i], sol.grid.nodes[i]);
        // the proximity exclusion only covers the expected w -> 2 zone
        if ((2.0 - w[i] >= kWProximityExclusion && sol.grid.nodes[i] >= r_inner) || i >= n / 4)
            worst.update(2.0 - w[i], sol.grid.nodes[i]);
    }
    return make("w-bounds", worst, -kStrictFloorRel);
}

CheckResult check_w_limits(const ProfileSolution& sol)
{
    const auto w = compute_w(sol);
    Worst worst;
    worst.update(kWLimitBand - std::abs(w.front() - 2.0), sol.grid.nodes.front());
    worst.update(kWLimitBand - std::abs(w.back()), sol.grid.nodes.back());
    CheckResult c = make("w-limits", worst, 0.0);
    c.note = "limit bands are truncation-calibration constants";
    return c;
}

CheckResult check_w_sandwich(const ProfileSolution& sol)
{
    const auto w = compute_w(sol);
    const auto dw = derivative_on_grid(sol.grid, w);
    Worst worst;
    const std::size_t n = w.size();
    const double r_inner = 4.0 * sol.grid.nodes.front();
    for (std::size_t i = kEdgeSkip; i + kEdgeSkip < n; ++i) {
        if ((2.0 - w[i] < kWProximityExclusion || sol.grid.nodes[i] < r_inner) && i < n / 4)
            continue;
        const double r = sol.grid.nodes[i];
        const double rwp = r * dw[i];
        const double a = w[i] * (w[i] - 2.0);
        const double m = std::min({rwp - 2.0 * a, a - rwp, -a});
        worst.update(m, r);
    }
    return make("w-sandwich", worst, 1e-6);
}

CheckResult check_f_sandwich(const ProfileSolution& sol)
{
    const auto w = compute_w(sol);
    Worst worst;
    const std::size_t n = w.size();
    const double r_inner = 4.0 * sol.grid.nodes.front();
    for (std::size_t i = kEdgeSkip; i + kEdgeSkip < n; ++i) {
        if ((2.0 - w[i] < kWProximityExclusion || sol.grid.nodes[i] < r_inner) && i < n / 4)
            continue;
        const double r = sol.grid.nodes[i];
        const double f = sol.model.f_ratio(sol.values[i]);
        const double lowerb = 3.0 / (r * r) * (w[i] - 2.0) * (w[i] + 1.0);
        const double upperb = 1.0 / (r * r) * (w[i] - 2.0) * (2.0 * w[i] + 3.0);
        const double scale = std::max({std::abs(f), std::abs(lowerb), std::abs(upperb), 1e-30});
        worst.update(std::min({f - lowerb, upperb - f, -upperb}) / scale, r);
    }
    return make("f-sandwich", worst, kDerivSlack);
}

CheckResult check_uprime_sandwich(const ProfileSolution& sol)
{
    const double sp = sol.model.s_plus();
    const auto du = derivative_on_grid(sol.grid, sol.values);
    Worst worst;
    const std::size_t n = sol.grid.size();
    for (std::size_t i = kEdgeSkip; i + kEdgeSkip < n; ++i) {
        const double r = sol.grid.nodes[i];
        const double u = sol.values[i];
        const double lo = 2.0 * u * (sp - u) / (sp * r);
        const double hi = 2.0 * u * (sp * sp - u * u) / (sp * sp * r);
        const double scale = std::max({std::abs(du[i]), std::abs(lo), std::abs(hi), 1e-30});
        worst.update(std::min(du[i] - lo, hi - du[i]) / scale, r);
    }
    return make("uprime-sandwich", worst, kDerivSlack);
}

CheckResult check_relfs(const ProfileSolution& sol)
{
    const auto w = compute_w(sol);
    Worst worst;
    const std::size_t n = w.size();
    for (std::size_t i = kEdgeSkip; i + kEdgeSkip < n; ++i) {
        const double u = sol.values[i];
        const double f = sol.model.f_ratio(u);
        const double lhs = sol.model.f_hat(u) - 3.0 * f;
        const double rhs = -2.0 / w[i] * f;
        const double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-30});
        worst.update((lhs - rhs) / scale, sol.grid.nodes[i]);
    }
    return make("relfs", worst, kRelfsSlack);
}

CheckResult check_uprime3(const ProfileSolution& sol)
{
    const auto du = derivative_on_grid(sol.grid, sol.values);
    const auto& r = sol.grid.nodes;
    Worst worst;
    const std::size_t n = r.size();
    std::vector<double> m(n);
    for (std::size_t i = 0; i < n; ++i)
        m[i] = std::pow(r[i], 5.0) * du[i] / std::pow(sol.values[i], 3.0);
    for (std::size_t i = kEdgeSkip; i + kEdgeSkip + 1 < n; ++i) {
        const double scale = std::max({std::abs(m[i]), std::abs(m[i + 1]), 1e-30});
        worst.update((m[i + 1] - m[i]) / scale, r[i]);
    }
    return make("uprime3-monotone", worst, kUprime3Slack);
}

std::array<CheckResult, 3> check_adLB(const ProfileSolution& sol)
{
    const double sp = sol.model.s_plus();
    if (!sol.alpha_origin || !sol.beta) {
        return {CheckResult::skip("adLB-lower", "missing extracted alpha/beta"),
                CheckResult::skip("adLB-upper-beta", "missing extracted alpha/beta"),
                CheckResult::skip("adLB-upper-alpha", "missing extracted alpha/beta")};
    }
    const double alpha = *sol.alpha_origin;
    const double beta = *sol.beta;
    Worst lb, ub1, ub2;
    for (std::size_t i = 0; i < sol.grid.size(); ++i) {
        const double r = sol.grid.nodes[i];
        const double r2 = r * r;
        const double u = sol.values[i];
        lb.update(u - sp * alpha * r2 / (alpha * r2 + sp), r);
        ub1.update(sp * sp * r2 / (sp * r2 + beta) - u, r);
        ub2.update(sp * alpha * r2 / std::sqrt(alpha * alpha * r2 * r2 + sp * sp) - u, r);
    }
    const double tol = kAdLBRel * sp;
    return {make("adLB-lower", lb, tol), make("adLB-upper-beta", ub1, tol),
            make("adLB-upper-alpha", ub2, tol)};
}

CheckResult check_explicit_lower_bound(const ProfileSolution& sol)
{
    const auto* pp = sol.model.physical_params() ? &*sol.model.physical_params() : nullptr;
    if (!pp || pp->b2 <= 0.0)
        return CheckResult::skip("explicit-lower-bound", "needs the physical cubic with b2 > 0");
    const double b2 = pp->b2, c2 = pp->c2;
    const double lead = b2 / (2.0 * c2);
    const double k1 = 36.0 * c2 / (b2 * b2);
    const double k2 = 20736.0 * c2 * c2 / std::pow(b2, 4.0);  // 12^4 c^4 / b^8
    Worst worst;
    for (std::size_t i = 0; i < sol.grid.size(); ++i) {
        const double r = sol.grid.nodes[i];
        const double r2 = r * r;
        const double under = lead * (r2 * r2 * r2) / ((r2 + k1) * (r2 * r2 + k2));
        worst.update(sol.values[i] - under, r);
    }
    return make("explicit-lower-bound", worst, -kStrictFloorRel * sol.model.s_plus());
}

CheckResult check_positivity_polynomial(double r_max, int samples)
{
    // constant term .. r^10, from the sub-solution positivity computation
    static constexpr double kCoeffs[] = {278628139008.0, 9029615616.0, 85100544.0,
                                         -373248.0,      -5184.0,      41.0};
    Worst worst;
    for (int i = 1; i <= samples; ++i) {
        const double r = r_max * double(i) / samples;
        const double x = r * r;
        double v = 0.0;
        for (int k = 5; k >= 0; --k) v = v * x + kCoeffs[k];
        worst.update(v, r);
    }
    return make("positivity-polynomial", worst, 0.0);
}

std::array<double, 3> identity_residuals(const ProfileSolution& sol)
{
    auto ids = check_identities(sol);
    const double factor = identity_scale_factor(sol);
    return {kIdentityTolA3 * factor - ids[0].worst_margin,
            kIdentityTolDu * factor - ids[1].worst_margin,
            kIdentityTolFlux * factor - ids[2].worst_margin};
}

std::array<CheckResult, 3> check_identities(const ProfileSolution& sol)
{
    const auto& r = sol.grid.nodes;
    const std::size_t n = r.size();
    const double factor = identity_scale_factor(sol);
    const auto du = derivative_on_grid(sol.grid, sol.values);
    // derivative stencils cannot resolve the 1/r coefficients where the
    // local spacing is comparable to the radius (innermost uniform cells)
    auto resolved = [&](std::size_t i) {
        const double h = r[i + 1] - r[i];
        return h <= 0.02 * r[i];
    };

    // (1) w' = -(1/r)(w - 2)(w + 3) + r f(u)   [p = 2, q = 6]
    CheckResult c1;
    {
        const auto w = compute_w(sol);
        const auto dw = derivative_on_grid(sol.grid, w);
        Worst worst;
        worst.margin = 0.0;  // residual check: track the largest violation
        for (std::size_t i = kEdgeSkip + 1; i + kEdgeSkip + 1 < n; ++i) {
            if (!resolved(i)) continue;
            const double rhs =
                -(w[i] - 2.0) * (w[i] + 3.0) / r[i] + r[i] * sol.model.f_ratio(sol.values[i]);
            const double scale =
                std::max({std::abs(dw[i]), std::abs(rhs), std::abs(w[i] - 2.0) / r[i], 1e-30});
            const double res = std::abs(dw[i] - rhs) / scale;
            if (res > worst.margin) {
                worst.margin = res;
                worst.location = r[i];
            }
        }
        c1.name = "identity-w-prime";
        c1.worst_margin = kIdentityTolA3 * factor - worst.margin;  // budget minus residual
        c1.worst_location = worst.location;
        c1.tolerance_used = 0.0;
        c1.pass = c1.worst_margin >= 0.0;
        c1.note = "margin = budget - normalized residual; budget calibrated at N=2000";
    }

    // (2) u''' + (2/r)u'' - (8/r^2)u' + (12/r^3)u = fhat(u) u'   [p = 2, q = 6]
    CheckResult c2;
    {
        Worst worst;
        worst.margin = 0.0;
        for (std::size_t i = 3; i + 3 < n; ++i) {
            if (!resolved(i)) continue;
            double xs[5], d2w[5], d3w[5];
            for (int k = 0; k < 5; ++k) xs[k] = r[i - 2 + k];
            auto w2 = fd_weights(std::span<const double>(xs, 5), r[i], 2);
            auto w3 = fd_weights(std::span<const double>(xs, 5), r[i], 3);
            for (int k = 0; k < 5; ++k) {
                d2w[k] = w2[k];
                d3w[k] = w3[k];
            }
            double u2 = 0.0, u3 = 0.0;
            for (int k = 0; k < 5; ++k) {
                u2 += d2w[k] * sol.values[i - 2 + k];
                u3 += d3w[k] * sol.values[i - 2 + k];
            }
            const double lhs = u3 + 2.0 / r[i] * u2 - 8.0 / (r[i] * r[i]) * du[i] +
                               12.0 / std::pow(r[i], 3.0) * sol.values[i];
            const double rhs = sol.model.f_hat(sol.values[i]) * du[i];
            const double scale = std::max({std::abs(u3), std::abs(rhs),
                                           8.0 * std::abs(du[i]) / (r[i] * r[i]), 1e-30});
            const double res = std::abs(lhs - rhs) / scale;
            if (res > worst.margin) {
                worst.margin = res;
                worst.location = r[i];
            }
        }
        c2.name = "identity-third-derivative";
        c2.worst_margin = kIdentityTolDu * factor - worst.margin;
        c2.worst_location = worst.location;
        c2.tolerance_used = 0.0;
        c2.pass = c2.worst_margin >= 0.0;
        c2.note = "wide stencils, relaxed budget; calibrated at N=2000";
    }

    // (3) (r^{2g+ + p} v')' = r^{g+ + p} F(u), v = u / r^{g+}  [flux form]
    CheckResult c3;
    {
        const double gp = fuchsian_indices(sol.p, sol.q).gamma_plus;
        const double expo = 2.0 * gp + sol.p;
        std::vector<double> v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = sol.values[i] / std::pow(r[i], gp);
        Worst worst;
        worst.margin = 0.0;
        for (std::size_t i = kEdgeSkip; i + kEdgeSkip + 1 < n; ++i) {
            if (!resolved(i)) continue;
            const double rbar_r = 0.5 * (r[i] + r[i + 1]);
            const double rbar_l = 0.5 * (r[i] + r[i - 1]);
            const double Gr = std::pow(rbar_r, expo) * (v[i + 1] - v[i]) / (r[i + 1] - r[i]);
            const double Gl = std::pow(rbar_l, expo) * (v[i] - v[i - 1]) / (r[i] - r[i - 1]);
            const double div = (Gr - Gl) / (0.5 * (r[i + 1] - r[i - 1]));
            const double rhs = std::pow(r[i], gp + sol.p) * sol.model.eval_F(sol.values[i]);
            // the flux magnitude keeps the scale alive at sign crossings,
            // where div, rhs and v all vanish together
            const double scale = std::max({std::abs(div), std::abs(rhs),
                                           std::pow(r[i], expo - 1.0) * std::abs(v[i]),
                                           (std::abs(Gr) + std::abs(Gl)) / r[i], 1e-30});
            const double res = std::abs(div - rhs) / scale;
            if (res > worst.margin) {
                worst.margin = res;
                worst.location = r[i];
            }
        }
        c3.name = "identity-weighted-flux";
        c3.worst_margin = kIdentityTolFlux * factor - worst.margin;
        c3.worst_location = worst.location;
        c3.tolerance_used = 0.0;
        c3.pass = c3.worst_margin >= 0.0;
        c3.note = "margin = budget - normalized residual; budget calibrated at N=2000";
    }
    return {c1, c2, c3};
}

CheckResult check_scaling_comparison(const ProfileSolution& sol, std::span<const double> thetas)
{
    const double sp = sol.model.s_plus();
    PchipInterpolant interp(sol.grid.nodes, sol.values);
    Worst worst;
    for (double theta : thetas) {
        if (!(theta > 0.0 && theta < 1.0))
            throw std::invalid_argument("check_scaling_comparison: theta must lie in (0,1)");
        for (std::size_t i = 0; i < sol.grid.size(); ++i) {
            const double r = sol.grid.nodes[i];
            if (r / theta > sol.grid.R()) break;
            worst.update(interp(r / theta) - sol.values[i], r);
        }
    }
    return make("scaling-comparison", worst, kScalingRel * sp);
}

VerificationReport run_all(const ProfileSolution& sol)
{
    VerificationReport rep;
    rep.alpha = sol.alpha_origin;
    rep.beta = sol.beta;
    rep.residual_norm = sol.residual_norm;

    const bool positive = sol.is_positive_branch();
    const bool pq26 = std::abs(sol.p - 2.0) < 1e-12 && std::abs(sol.q - 6.0) < 1e-12;
    const bool semi = sol.grid.domain_kind == DomainKind::TruncatedInfinite;
    const bool wsuite = positive && pq26 && is_phys26_semiinfinite(sol);

    auto rm = check_range_monotone(sol);
    rep.checks.push_back(rm[0]);
    rep.checks.push_back(rm[1]);
    rep.checks.push_back(positive ? check_derivative_bound(sol)
                                  : CheckResult::skip("derivative-bound", "positive branch only"));
    rep.checks.push_back(positive ? check_v_decreasing(sol)
                                  : CheckResult::skip("v-decreasing", "positive branch only"));

    auto skip_w = [&](const char* name) {
        return CheckResult::skip(name, "physical model at p=2, q=6 on a truncated-infinite domain only");
    };
    rep.checks.push_back(wsuite ? check_w_bounds(sol) : skip_w("w-bounds"));
    rep.checks.push_back(wsuite ? check_w_limits(sol) : skip_w("w-limits"));
    rep.checks.push_back(wsuite ? check_w_sandwich(sol) : skip_w("w-sandwich"));
    rep.checks.push_back(wsuite ? check_f_sandwich(sol) : skip_w("f-sandwich"));
    rep.checks.push_back(wsuite ? check_uprime_sandwich(sol) : skip_w("uprime-sandwich"));
    const bool has_b2 = sol.model.physical_params() && sol.model.physical_params()->b2 > 0.0;
    rep.checks.push_back(wsuite && has_b2 ? check_relfs(sol) : skip_w("relfs"));
    rep.checks.push_back(wsuite ? check_uprime3(sol) : skip_w("uprime3-monotone"));

    if (positive && pq26 && semi && sol.alpha_origin && sol.beta) {
        auto ad = check_adLB(sol);
        for (auto& c : ad) rep.checks.push_back(c);
    } else {
        rep.checks.push_back(CheckResult::skip("adLB-lower", "needs p=2, q=6 and extracted asymptotics"));
        rep.checks.push_back(CheckResult::skip("adLB-upper-beta", "needs p=2, q=6 and extracted asymptotics"));
        rep.checks.push_back(CheckResult::skip("adLB-upper-alpha", "needs p=2, q=6 and extracted asymptotics"));
    }
    rep.checks.push_back(wsuite && has_b2 ? check_explicit_lower_bound(sol)
                                          : skip_w("explicit-lower-bound"));
    rep.checks.push_back(check_positivity_polynomial());

    auto ids = check_identities(sol);
    if (pq26 && positive)
        rep.checks.push_back(ids[0]);
    else
        rep.checks.push_back(CheckResult::skip("identity-w-prime", "needs p=2, q=6 and a positive branch"));
    if (pq26)
        rep.checks.push_back(ids[1]);
    else
        rep.checks.push_back(CheckResult::skip("identity-third-derivative", "printed constants hold for p=2, q=6"));
    rep.checks.push_back(ids[2]);

    rep.checks.push_back(positive && semi
                             ? check_scaling_comparison(sol)
                             : CheckResult::skip("scaling-comparison", "positive branch on truncated-infinite domain"));

    rep.overall = std::all_of(rep.checks.begin(), rep.checks.end(),
                              [](const CheckResult& c) { return c.skipped || c.pass; });
    return rep;
}

std::string report_to_json(const VerificationReport& rep)
{
    nlohmann::ordered_json j;
    j["overall"] = rep.overall;
    if (rep.alpha) j["alpha"] = *rep.alpha;
    if (rep.beta) j["beta"] = *rep.beta;
    j["residual_norm"] = rep.residual_norm;
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    for (const auto& c : rep.checks) {
        nlohmann::ordered_json e;
        e["name"] = c.name;
        e["pass"] = c.pass;
        e["skipped"] = c.skipped;
        e["worst_margin"] = c.worst_margin;
        e["worst_location"] = c.worst_location;
        e["tolerance"] = c.tolerance_used;
        if (!c.note.empty()) e["note"] = c.note;
        checks.push_back(e);
    }
    j["checks"] = checks;
    return j.dump(2);
}

std::string report_to_table(const VerificationReport& rep)
{
    std::ostringstream os;
    os << "check                        status   worst margin     at r\n";
    os << "-----                        ------   ------------     ----\n";
    for (const auto& c : rep.checks) {
        char line[160];
        const char* status = c.skipped ? "skip" : (c.pass ? "pass" : "FAIL");
        std::snprintf(line, sizeof(line), "%-28s %-8s %+.6e  %.4g\n", c.name.c_str(), status,
                      c.worst_margin, c.worst_location);
        os << line;
    }
    os << (rep.overall ? "overall: pass\n" : "overall: FAIL\n");
    return os.str();
}

}  // namespace hedgehog
