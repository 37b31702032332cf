#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "hedgehog/asymptotics.hpp"
#include "hedgehog/solve.hpp"

using namespace hedgehog;

namespace {

DiscreteProblem physical_problem(double a2, double R, int n, double r_first,
                                 FarBc far = FarBc::Robin)
{
    auto model = NonlinearityModel::physical({a2, 1.0, 1.0, 1.0});
    DomainSpec dom;
    dom.kind = DomainKind::TruncatedInfinite;
    dom.R = R;
    GradingSpec grading;
    grading.kind = GradingKind::Geometric;
    grading.r_first = r_first;
    return DiscreteProblem(build_grid(dom, n, grading), 2.0, 6.0, model, far);
}

// domain sized to the shooting information horizon; both solvers stay
// comparable to ~1e-7 s+ there at N = 2000
DiscreteProblem cross_check_problem(double a2, int n = 2000)
{
    auto model = NonlinearityModel::physical({a2, 1.0, 1.0, 1.0});
    const auto ff = far_field_beta(model, 6.0);
    const double r_stop =
        std::max(10.0 * std::sqrt(ff.beta), 5.0 * std::sqrt(ff.beta / ff.s_plus));
    // 2 r_stop of headroom keeps the Robin truncation bias out of the
    // comparison window (the inward decay rate vanishes where F'(u) = 0)
    return physical_problem(a2, 2.0 * r_stop, n, r_stop / 240.0);
}

}  // namespace

TEST_CASE("linear problem solves in one iteration to the closed form")
{
    auto model = NonlinearityModel::linear_zero(0.5);
    DomainSpec dom;
    dom.kind = DomainKind::FiniteR;
    dom.R = 2.0;
    DiscreteProblem dp(build_grid(dom, 256, {}), 2.0, 6.0, model, FarBc::DirichletCorrected);
    auto sol = solve_newton(dp);
    CHECK(sol.iterations <= 2);
    for (std::size_t i = 0; i < sol.grid.size(); ++i) {
        const double r = sol.grid.nodes[i];
        CHECK(std::abs(sol.values[i] - 0.5 * r * r / 4.0) <= 1e-10);
    }
}

TEST_CASE("physical a2=0 defaults: beta within 2 percent, alpha regression")
{
    auto dp = physical_problem(0.0, 600.0, 2000, 0.25);
    auto sol = solve_newton(dp);
    CHECK(sol.is_positive_branch());
    REQUIRE(sol.beta.has_value());
    CHECK(std::abs(*sol.beta - 18.0) <= 0.02 * 18.0);
    REQUIRE(sol.alpha_origin.has_value());
    // the near-origin coefficient is fixed by the problem; frozen from a
    // high-accuracy shooting run
    CHECK(*sol.alpha_origin == doctest::Approx(3.06170e-3).epsilon(1e-3));
}

TEST_CASE("ten random admissible inits reach the same profile")
{
    auto dp = physical_problem(0.5, 60.0, 400, 0.2);
    auto ref = solve_newton(dp);
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const double sp = dp.model.s_plus();
    const double R = dp.grid.R();
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<double> init(dp.size());
        const double amp = 0.6 + 0.7 * unif(rng);
        const double wobble = 0.1 * unif(rng);
        const double mode = 1.0 + std::floor(3.0 * unif(rng));
        for (std::size_t i = 0; i < init.size(); ++i) {
            const double r = dp.grid.nodes[i];
            const double base = amp * sp * r * r / (r * r + 1.0);
            const double s = std::sin(mode * M_PI * r / R);
            init[i] = std::clamp(base * (1.0 + wobble * s), 0.0, sp);
        }
        init.back() = dp.far_value();
        auto sol = solve_newton(dp, init);
        double gap = 0.0;
        for (std::size_t i = 0; i < init.size(); ++i)
            gap = std::max(gap, std::abs(sol.values[i] - ref.values[i]));
        CHECK(gap <= 1e-8);
    }
}

TEST_CASE("trajectory classification at bracket extremes")
{
    auto model = NonlinearityModel::physical({0.0, 1.0, 1.0, 1.0});
    const double sp = model.s_plus();
    auto over = classify_shot(model, 2.0, 6.0, 1e3 * sp);
    CHECK(over.classification == TrajectoryClass::Overshoot);
    auto turn = classify_shot(model, 2.0, 6.0, 1e-6 * sp);
    CHECK(turn.classification == TrajectoryClass::Turnback);
    // just below the matched coefficient the profile genuinely turns over
    auto turn2 = classify_shot(model, 2.0, 6.0, 3.0e-3);
    CHECK(turn2.classification == TrajectoryClass::Turnback);
    CHECK(turn2.turning_radius.has_value());
}

TEST_CASE("shooting bracket must straddle")
{
    auto model = NonlinearityModel::physical({0.0, 1.0, 1.0, 1.0});
    CHECK_THROWS_AS(solve_shoot(model, 2.0, 6.0, {1e3, 2e3}), NumericalError);
}

TEST_CASE("shooting agrees with Newton: alpha and profile")
{
    for (double a2 : {0.0, 0.5, 1.0}) {
        CAPTURE(a2);
        auto dp = cross_check_problem(a2);
        auto newton_sol = solve_newton(dp);
        const double sp = dp.model.s_plus();
        auto shoot_sol = solve_shoot(dp.model, 2.0, 6.0, {1e-7 * sp, 1e3 * sp});
        REQUIRE(newton_sol.alpha_origin.has_value());
        REQUIRE(shoot_sol.alpha_origin.has_value());
        // the 1e-4 cross-oracle agreement is stated for the a2 = 0 instance;
        // for a2 > 0 the N=2000 discretization bias in alpha is ~1.5e-4
        const double alpha_tol = (a2 == 0.0) ? 1e-4 : 1e-3;
        CHECK(std::abs(*shoot_sol.alpha_origin - *newton_sol.alpha_origin) <=
              alpha_tol * *newton_sol.alpha_origin);

        PchipInterpolant newton_interp(newton_sol.grid.nodes, newton_sol.values);
        double gap = 0.0;
        for (std::size_t i = 0; i < shoot_sol.grid.size(); ++i) {
            const double r = shoot_sol.grid.nodes[i];
            if (r < newton_sol.grid.nodes.front() || r > newton_sol.grid.R()) continue;
            gap = std::max(gap, std::abs(shoot_sol.values[i] - newton_interp(r)));
        }
        CHECK(gap <= 1e-6 * sp);
    }
}

TEST_CASE("energy descent reaches the Newton profile")
{
    auto dp = physical_problem(0.0, 120.0, 500, 0.3);
    auto newton_sol = solve_newton(dp);
    auto descent_sol = solve_energy_descent(dp);
    CHECK(descent_sol.method == "energy-descent");
    double gap = 0.0;
    for (std::size_t i = 0; i < dp.size(); ++i)
        gap = std::max(gap, std::abs(descent_sol.values[i] - newton_sol.values[i]));
    CHECK(gap <= 1e-6);
}

TEST_CASE("continuation in a2 follows the far-field formula")
{
    auto dp = physical_problem(0.0, 100.0, 600, 0.25);
    std::vector<double> values;
    for (int k = 0; k <= 10; ++k) values.push_back(k / 10.0);
    auto sols = continuation_scan(dp, ScanParameter::A2, values);
    REQUIRE(sols.size() == values.size());
    double prev_beta = 1e9;
    for (std::size_t k = 0; k < sols.size(); ++k) {
        auto model = NonlinearityModel::physical({values[k], 1.0, 1.0, 1.0});
        const double beta_formula = far_field_beta(model, 6.0).beta;
        REQUIRE(sols[k].beta.has_value());
        // truncation at R=100 leaves a few-percent bias; the trend is the oracle
        CHECK(std::abs(*sols[k].beta - beta_formula) <= 0.05 * beta_formula);
        CHECK(*sols[k].beta < prev_beta);
        prev_beta = *sols[k].beta;
    }
}

TEST_CASE("continuation with a single value equals the direct solve")
{
    auto dp = physical_problem(0.3, 80.0, 300, 0.3);
    auto direct = solve_newton(dp);
    auto sols = continuation_scan(dp, ScanParameter::A2, std::vector<double>{0.3});
    REQUIRE(sols.size() == 1);
    for (std::size_t i = 0; i < dp.size(); ++i)
        CHECK(std::abs(sols[0].values[i] - direct.values[i]) <= 1e-9);
}

TEST_CASE("solutions order pointwise with R on finite domains")
{
    // On the common radii the larger-domain profile lies BELOW: u_R pins s+
    // at a farther boundary, and the comparison principle orders the pair.
    // (Direct pairwise comparison is the oracle here.)
    auto model = NonlinearityModel::physical({1.0, 1.0, 1.0, 1.0});
    std::vector<ProfileSolution> sols;
    for (double R : {2.0, 4.0, 8.0}) {
        DomainSpec dom;
        dom.kind = DomainKind::FiniteR;
        dom.R = R;
        DiscreteProblem dp(build_grid(dom, 400, {}), 2.0, 6.0, model, FarBc::DirichletCorrected);
        sols.push_back(solve_newton(dp));
    }
    for (std::size_t k = 0; k + 1 < sols.size(); ++k) {
        PchipInterpolant bigger(sols[k + 1].grid.nodes, sols[k + 1].values);
        int depth = 0;
        for (std::size_t i = 0; i < sols[k].grid.size(); ++i) {
            const double r = sols[k].grid.nodes[i];
            if (r < sols[k + 1].grid.nodes.front()) continue;
            CHECK(bigger(r) <= sols[k].values[i] + 1e-9);
            ++depth;
        }
        CHECK(depth > 100);
    }
    // and an R-sweep through continuation solves without error
    DomainSpec dom;
    dom.kind = DomainKind::FiniteR;
    dom.R = 2.0;
    DiscreteProblem base(build_grid(dom, 400, {}), 2.0, 6.0, model, FarBc::DirichletCorrected);
    auto sweep = continuation_scan(base, ScanParameter::R, std::vector<double>{2.0, 4.0, 8.0});
    CHECK(sweep.size() == 3);
}

TEST_CASE("descent succeeds under the Armijo rule")
{
    // the Armijo rule enforces monotone decrease; a stalled descent throws
    auto dp = physical_problem(1.0, 40.0, 300, 0.2);
    auto sol = solve_energy_descent(dp);
    CHECK(sol.is_positive_branch());
}
