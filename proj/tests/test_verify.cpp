#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hedgehog/asymptotics.hpp"
#include "hedgehog/solve.hpp"
#include "hedgehog/verify.hpp"

using namespace hedgehog;

namespace {

ProfileSolution default_solution(double a2, int n = 2000)
{
    auto model = NonlinearityModel::physical({a2, 1.0, 1.0, 1.0});
    DomainSpec dom;
    dom.kind = DomainKind::TruncatedInfinite;
    dom.r_max_explicit = false;
    dom.far_field = far_field_beta(model, 6.0);
    GradingSpec grading;
    grading.kind = GradingKind::Geometric;
    DiscreteProblem dp(build_grid(dom, n, grading), 2.0, 6.0, model, FarBc::Robin);
    return solve_newton(dp);
}

const CheckResult& find(const VerificationReport& rep, const std::string& name)
{
    for (const auto& c : rep.checks)
        if (c.name == name) return c;
    throw std::runtime_error("check not found: " + name);
}

}  // namespace

TEST_CASE("full suite passes on the three reference solutions")
{
    for (double a2 : {0.0, 0.5, 1.0}) {
        CAPTURE(a2);
        auto sol = default_solution(a2);
        auto rep = run_all(sol);
        for (const auto& c : rep.checks) {
            CAPTURE(c.name);
            CAPTURE(c.worst_margin);
            CAPTURE(c.worst_location);
            CHECK((c.skipped || c.pass));
        }
        CHECK(rep.overall);
        // relfs applies only when b2 > 0; here it must have run
        CHECK_FALSE(find(rep, "relfs").skipped);
    }
}

TEST_CASE("constant profile fails the strict range check")
{
    auto sol = default_solution(0.0, 600);
    std::fill(sol.values.begin(), sol.values.end(), sol.model.s_plus());
    auto rm = check_range_monotone(sol);
    CHECK_FALSE(rm[0].pass);
    CHECK(rm[0].worst_margin <= 0.0);
}

TEST_CASE("a localized dent breaks monotonicity where it is planted")
{
    auto sol = default_solution(0.0, 600);
    const std::size_t k = 300;
    sol.values[k] = sol.values[k + 1] * 1.02;  // non-monotone wiggle
    auto rm = check_range_monotone(sol);
    CHECK_FALSE(rm[1].pass);
    CHECK(rm[1].worst_location ==
          doctest::Approx(sol.grid.nodes[k + 1]).epsilon(1e-6));
}

TEST_CASE("pure power profile sits on the w = 2 boundary and fails strictness")
{
    auto sol = default_solution(0.0, 600);
    for (std::size_t i = 0; i < sol.grid.size(); ++i) {
        const double r = sol.grid.nodes[i];
        sol.values[i] = 1e-4 * r * r;  // u = c r^2 has w identically 2
    }
    auto c = check_w_bounds(sol);
    CHECK_FALSE(c.pass);
}

TEST_CASE("w-limits hold at the extreme nodes of the reference run")
{
    auto sol = default_solution(0.0);
    const auto w = compute_w(sol);
    CHECK(w.front() > 1.9);
    CHECK(w.front() < 2.0);
    CHECK(w.back() < 0.1);
    CHECK(check_w_limits(sol).pass);
}

TEST_CASE("manufactured sandwich violation is caught")
{
    auto sol = default_solution(0.0, 1000);
    // plant a smooth wiggle mid-profile; rw' spikes above w(w-2)
    for (std::size_t i = 0; i < sol.grid.size(); ++i) {
        const double r = sol.grid.nodes[i];
        sol.values[i] *= 1.0 + 0.05 * std::exp(-(r - 5.0) * (r - 5.0));
    }
    sol.alpha_origin.reset();
    sol.beta.reset();
    auto c = check_w_sandwich(sol);
    CHECK_FALSE(c.pass);
    // direct evaluation confirms a real violation, not derivative noise
    CHECK(c.worst_margin < -1e-3);
}

TEST_CASE("perturbed profile fails the f-sandwich")
{
    auto sol = default_solution(0.5, 1000);
    for (std::size_t i = 0; i < sol.grid.size(); ++i) {
        const double r = sol.grid.nodes[i];
        sol.values[i] *= 1.0 + 0.08 * std::exp(-(r - 3.0) * (r - 3.0));
    }
    CHECK_FALSE(check_f_sandwich(sol).pass);
}

TEST_CASE("tanh-shaped fake profile violates the u' sandwich near the origin")
{
    auto sol = default_solution(0.0, 1000);
    const double sp = sol.model.s_plus();
    for (std::size_t i = 0; i < sol.grid.size(); ++i)
        sol.values[i] = sp * std::tanh(sol.grid.nodes[i]);
    CHECK_FALSE(check_uprime_sandwich(sol).pass);
}

TEST_CASE("relfs reduces to the printed affine form for the cubic")
{
    auto model = NonlinearityModel::physical({0.7, 1.3, 0.9, 1.0});
    for (double u : {0.05, 0.3, 0.8}) {
        const double lhs = model.f_hat(u) - 3.0 * model.f_ratio(u);
        const double printed = 2.0 * 0.7 + (1.3 / 3.0) * u;
        CHECK(lhs == doctest::Approx(printed).epsilon(1e-13));
    }
}

TEST_CASE("pure power keeps r^5 u'/u^3 constant: non-strict monotone passes")
{
    auto sol = default_solution(0.0, 600);
    for (std::size_t i = 0; i < sol.grid.size(); ++i) {
        const double r = sol.grid.nodes[i];
        sol.values[i] = 0.01 * r * r;
    }
    CHECK(check_uprime3(sol).pass);
}

TEST_CASE("adLB formula limits")
{
    const double sp = 0.5, alpha = 0.003, beta = 18.0;
    // r -> infinity: LB -> s+, UB1 -> s+ - beta/r^2 + O(r^-4)
    for (double r : {200.0, 400.0}) {
        const double lb = sp * alpha * r * r / (alpha * r * r + sp);
        CHECK(sp - lb <= sp * sp / (alpha * r * r) * 1.01);
        const double ub1 = sp * sp * r * r / (sp * r * r + beta);
        CHECK(std::abs(ub1 - (sp - beta / (r * r))) <= 2.0 * beta * beta / (sp * r * r * r * r));
    }
    // r -> 0: all three approach alpha r^2
    for (double r : {1e-3, 1e-2}) {
        const double lb = sp * alpha * r * r / (alpha * r * r + sp);
        const double ub2 = sp * alpha * r * r / std::sqrt(alpha * alpha * r * r * r * r + sp * sp);
        CHECK(lb == doctest::Approx(alpha * r * r).epsilon(1e-4));
        CHECK(ub2 == doctest::Approx(alpha * r * r).epsilon(1e-4));
    }
}

TEST_CASE("explicit lower bound: printed tail expansion")
{
    // underline-u = (1/2) r^6 / ((r^2+36)(r^4+20736)) = 1/2 - 18/r^2 + o(r^-2)
    for (double r : {50.0, 100.0, 200.0}) {
        const double r2 = r * r;
        const double under = 0.5 * r2 * r2 * r2 / ((r2 + 36.0) * (r2 * r2 + 20736.0));
        CHECK(std::abs(under - (0.5 - 18.0 / r2)) <= 11000.0 / (r2 * r2));
    }
}

TEST_CASE("positivity polynomial at pinned points")
{
    // Horner oracle: independent direct sums
    auto poly = [](double r) {
        const double x = r * r;
        return 278628139008.0 + 9029615616.0 * x + 85100544.0 * x * x - 373248.0 * x * x * x -
               5184.0 * x * x * x * x + 41.0 * x * x * x * x * x;
    };
    CHECK(poly(0.0) == 278628139008.0);
    CHECK(poly(10.0) > 0.0);
    CHECK(poly(50.0) > 0.0);
    auto c = check_positivity_polynomial();
    CHECK(c.pass);
    CHECK(c.worst_margin > 0.0);
}

TEST_CASE("identity residuals decay at order >= 1.8 under mesh doubling")
{
    auto coarse = default_solution(0.5, 1000);
    auto fine = default_solution(0.5, 2000);
    const auto rc = identity_residuals(coarse);
    const auto rf = identity_residuals(fine);
    for (int k = 0; k < 3; ++k) {
        CAPTURE(k);
        const double order = std::log2(rc[k] / rf[k]);
        CHECK(order >= 1.8);
    }
}

TEST_CASE("exact power solves the weighted-flux identity identically")
{
    auto sol = default_solution(0.0, 600);
    sol.model = NonlinearityModel::linear_zero(0.5);
    for (std::size_t i = 0; i < sol.grid.size(); ++i) {
        const double r = sol.grid.nodes[i];
        sol.values[i] = 0.01 * r * r;
    }
    auto res = identity_residuals(sol);
    CHECK(res[2] <= 1e-11);
}

TEST_CASE("scaling comparison and its reversal")
{
    auto sol = default_solution(0.0);
    CHECK(check_scaling_comparison(sol).pass);
    // theta > 1 reverses the inequality: direct comparison
    PchipInterpolant interp(sol.grid.nodes, sol.values);
    const double theta = 1.25;
    int checked = 0;
    for (std::size_t i = 200; i < sol.grid.size(); i += 100) {
        const double r = sol.grid.nodes[i];
        if (r / theta < sol.grid.nodes.front()) continue;
        CHECK(interp(r / theta) <= sol.values[i] + 1e-12);
        ++checked;
    }
    CHECK(checked > 5);
    CHECK_THROWS_AS(check_scaling_comparison(sol, std::vector<double>{1.5}),
                    std::invalid_argument);
}

TEST_CASE("routing: finite generic run skips the w-suite")
{
    auto model = NonlinearityModel::quartic_mp();
    DomainSpec dom;
    dom.kind = DomainKind::FiniteR;
    dom.R = 5.0;
    DiscreteProblem dp(build_grid(dom, 800, {}), 2.0, 6.0, model, FarBc::DirichletCorrected);
    auto sol = solve_newton(dp);
    auto rep = run_all(sol);
    CHECK(find(rep, "w-bounds").skipped);
    CHECK(find(rep, "explicit-lower-bound").skipped);
    CHECK(find(rep, "scaling-comparison").skipped);
    CHECK_FALSE(find(rep, "range").skipped);
    CHECK(find(rep, "range").pass);
    CHECK_FALSE(find(rep, "identity-weighted-flux").skipped);
    CHECK(rep.overall);
}

TEST_CASE("corrupted profile yields localized failures and overall false")
{
    auto sol = default_solution(0.0, 1000);
    for (std::size_t i = 400; i < 420; ++i) sol.values[i] = -0.1;
    auto rep = run_all(sol);
    CHECK_FALSE(rep.overall);
}

TEST_CASE("report serialization is stable and complete")
{
    auto sol = default_solution(0.0, 700);
    auto rep = run_all(sol);
    const std::string j1 = report_to_json(rep);
    const std::string j2 = report_to_json(rep);
    CHECK(j1 == j2);
    CHECK(j1.find("\"overall\"") != std::string::npos);
    const std::string table = report_to_table(rep);
    for (const auto& c : rep.checks) CHECK(table.find(c.name) != std::string::npos);
}
