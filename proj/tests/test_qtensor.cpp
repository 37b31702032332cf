#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "hedgehog/qtensor.hpp"
#include "hedgehog/solve.hpp"

using namespace hedgehog;

namespace {

Vec3 random_unit(std::mt19937_64& rng)
{
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vec3 v{gauss(rng), gauss(rng), gauss(rng)};
    const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    return {v[0] / n, v[1] / n, v[2] / n};
}

}  // namespace

TEST_CASE("hbar along an axis and its invariants")
{
    auto h = hbar({0.0, 0.0, 1.0});
    CHECK(h(0, 0) == doctest::Approx(-1.0 / 3.0).epsilon(1e-15));
    CHECK(h(1, 1) == doctest::Approx(-1.0 / 3.0).epsilon(1e-15));
    CHECK(h(2, 2) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(h(0, 1) == 0.0);

    std::mt19937_64 rng(5150);
    for (int k = 0; k < 100; ++k) {
        Vec3 x = random_unit(rng);
        for (double scale : {0.3, 1.0, 7.5}) {
            Vec3 xs{scale * x[0], scale * x[1], scale * x[2]};
            auto q = hbar(xs);
            CHECK(q.in_s0());
            CHECK(q.norm2() == doctest::Approx(2.0 / 3.0).epsilon(1e-13));
            CHECK(q.trace_cubed() == doctest::Approx(2.0 / 9.0).epsilon(1e-13));
            // spectral action: eigenvalue 2/3 along x, -1/3 across
            Vec3 hx{q(0, 0) * x[0] + q(0, 1) * x[1] + q(0, 2) * x[2],
                    q(1, 0) * x[0] + q(1, 1) * x[1] + q(1, 2) * x[2],
                    q(2, 0) * x[0] + q(2, 1) * x[1] + q(2, 2) * x[2]};
            for (int i = 0; i < 3; ++i) CHECK(hx[i] == doctest::Approx(2.0 / 3.0 * x[i]).epsilon(1e-12));
        }
    }
    CHECK_THROWS_AS(hbar({0.0, 0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("lift and extract are mutually inverse")
{
    std::mt19937_64 rng(31337);
    std::uniform_real_distribution<double> uu(-3.0, 3.0);
    for (int k = 0; k < 1000; ++k) {
        const double u = uu(rng);
        Vec3 x = random_unit(rng);
        x[0] *= 2.0;  // non-unit inputs
        const QTensor q = lift(u, x);
        CHECK(q.in_s0());
        const double back = extract_u(q, x);
        CHECK(std::abs(back - u) <= 1e-13 * std::max(1.0, std::abs(u)));
    }
}

TEST_CASE("lifted tensors carry the two-equal-eigenvalue structure")
{
    const double u = 0.8;
    const QTensor q = lift(u, {1.0, 2.0, -1.0});
    // invariants of spectrum {-u/3, -u/3, 2u/3}
    CHECK(q.trace() == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(q.norm2() == doctest::Approx(2.0 * u * u / 3.0).epsilon(1e-13));
    CHECK(q.trace_cubed() == doctest::Approx(2.0 * u * u * u / 9.0).epsilon(1e-13));
}

TEST_CASE("bulk density of a lifted tensor and the h identity")
{
    PhysicalParams pp{1.0, 1.0, 1.0, 1.0};
    auto model = NonlinearityModel::physical(pp);
    CHECK(bulk_density(QTensor{}, pp) == 0.0);
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> uu(-2.0, 2.0);
    for (int k = 0; k < 200; ++k) {
        const double u = uu(rng);
        const QTensor q = lift(u, random_unit(rng));
        const double fb = bulk_density(q, pp);
        const double expect = -(pp.a2 / 3.0) * u * u - (2.0 * pp.b2 / 27.0) * u * u * u +
                              (pp.c2 / 9.0) * u * u * u * u;
        CHECK(fb == doctest::Approx(expect).epsilon(1e-12));
        // h(u) = 3 f_bulk(u Hbar) for elastic_rescale = 1
        CHECK(std::abs(model.eval_h(u) - 3.0 * fb) <= 1e-12 * std::max(1.0, std::abs(model.eval_h(u))));
    }
}

TEST_CASE("radial symmetry of the lifted field")
{
    auto model = NonlinearityModel::physical({0.0, 1.0, 1.0, 1.0});
    DomainSpec dom;
    dom.kind = DomainKind::TruncatedInfinite;
    dom.R = 60.0;
    GradingSpec grading;
    grading.kind = GradingKind::Geometric;
    grading.r_first = 0.05;
    DiscreteProblem dp(build_grid(dom, 1500, grading), 2.0, 6.0, model, FarBc::Robin);
    auto sol = solve_newton(dp);

    RadialQField field;
    field.profile = &sol;
    std::mt19937_64 rng(7);
    for (int k = 0; k < 24; ++k) {
        Vec3 x = random_unit(rng);
        const double r = 0.1 + 40.0 * (k + 0.5) / 24.0;
        field.sample_points.push_back({x[0] * r, x[1] * r, x[2] * r});
    }

    std::vector<Mat3> rotations;
    rotations.push_back(rotation_about_axis({0, 0, 1}, 0.0));            // identity
    rotations.push_back(rotation_about_axis({1, 0, 0}, M_PI / 2.0));     // axis quarter-turns
    rotations.push_back(rotation_about_axis({0, 1, 0}, M_PI / 2.0));
    rotations.push_back(rotation_about_axis(random_unit(rng), 1.234));   // generic
    auto c = check_radial_symmetry(field, rotations);
    CHECK(c.pass);

    // identity rotation alone: numerically zero deviation
    std::vector<Mat3> id{rotation_about_axis({0, 0, 1}, 0.0)};
    auto c0 = check_radial_symmetry(field, id);
    CHECK(c0.worst_margin == doctest::Approx(1e-12 * sol.model.s_plus()).epsilon(1e-6));

    // non-rotation input is rejected
    Mat3 bad{1, 0, 0, 0, 2, 0, 0, 0, 1};
    std::vector<Mat3> bads{bad};
    CHECK_THROWS_AS(check_radial_symmetry(field, bads), std::invalid_argument);
}
