#include "hedgehog/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hedgehog {

RadialGrid build_grid(const DomainSpec& domain, int N, const GradingSpec& grading)
{
    if (N < 4) throw std::invalid_argument("build_grid: N must be >= 4");
    double R = domain.R;
    if (domain.kind == DomainKind::TruncatedInfinite && !domain.r_max_explicit) {
        if (!domain.far_field) throw std::invalid_argument("build_grid: far-field estimate required to size R_max");
        R = std::sqrt(domain.far_field->beta / (1e-4 * domain.far_field->s_plus));
    }
    if (!(R > 0.0)) throw std::invalid_argument("build_grid: domain radius must be > 0");

    RadialGrid g;
    g.domain_kind = domain.kind;
    g.grading = grading.kind;
    g.nodes.resize(N);
    if (grading.kind == GradingKind::Uniform) {
        for (int i = 0; i < N; ++i) g.nodes[i] = R * double(i + 1) / N;
        g.ratio = 1.0;
    } else {
        double r1;
        if (grading.r_first) {
            r1 = *grading.r_first;
        } else if (grading.ratio) {
            if (!(*grading.ratio > 1.0)) throw std::invalid_argument("build_grid: geometric ratio must be > 1");
            r1 = R * std::pow(*grading.ratio, 1.0 - N);
        } else {
            r1 = R / 2400.0;  // resolves the origin ladder and the far tail at default N
        }
        if (!(r1 > 0.0 && r1 < R)) throw std::invalid_argument("build_grid: r_first out of range");
        const double step = std::log(R / r1) / (N - 1);
        for (int i = 0; i < N; ++i) g.nodes[i] = r1 * std::exp(step * i);
        g.nodes[N - 1] = R;
        g.ratio = std::exp(step);
    }
    return g;
}

DiscreteProblem::DiscreteProblem(RadialGrid g, double p_, double q_, NonlinearityModel m,
                                 FarBc far, OriginBc origin)
    : grid(std::move(g)), p(p_), q(q_), model(std::move(m)), far_bc(far), origin_bc(origin)
{
    if (!(q > 0.0)) throw std::invalid_argument("DiscreteProblem: q must be > 0");
    const auto& r = grid.nodes;
    const std::size_t n = r.size();
    if (n < 3) throw std::invalid_argument("DiscreteProblem: need at least 3 nodes");
    if (grid.domain_kind == DomainKind::FiniteR && far_bc == FarBc::Robin)
        throw std::invalid_argument("DiscreteProblem: Robin closure applies to truncated-infinite domains");

    if (origin_bc == OriginBc::ZeroDirichlet) {
        ghost_radius_ = 0.0;
        ghost_factor_ = 0.0;
    } else {
        // continue the grid inward one step; ghost value u0 = u1 (r0/r1)^g+
        ghost_radius_ = r[0] * r[0] / r[1];
        const double gp = fuchsian_indices(p, q).gamma_plus;
        ghost_factor_ = std::pow(ghost_radius_ / r[0], gp);
    }

    stencils_.resize(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double xm = (i == 0) ? ghost_radius_ : r[i - 1];
        const double xs[3] = {xm, r[i], r[i + 1]};
        auto w1 = fd_weights(xs, r[i], 1);
        auto w2 = fd_weights(xs, r[i], 2);
        for (int k = 0; k < 3; ++k) {
            stencils_[i].w1[k] = w1[k];
            stencils_[i].w2[k] = w2[k];
        }
    }
    // Robin row: two-point derivative stencil exact on {1, r^-2}, which makes
    // the closure residual vanish identically on the pure tail s+ - beta/r^2.
    const double rN = r[n - 1], rM = r[n - 2];
    robin_cN_ = (2.0 / (rN * rN * rN)) / (1.0 / (rM * rM) - 1.0 / (rN * rN));
}

double DiscreteProblem::far_value() const
{
    if (dirichlet_value) return *dirichlet_value;
    const double sp = model.s_plus();
    if (grid.domain_kind == DomainKind::TruncatedInfinite) {
        const double fp = model.eval_F_prime(sp);
        if (fp > 0.0) {
            const double beta = q * sp / fp;
            return sp - beta / (grid.R() * grid.R());
        }
    }
    return sp;
}

std::vector<double> DiscreteProblem::residual(std::span<const double> u) const
{
    const auto& r = grid.nodes;
    const std::size_t n = r.size();
    if (u.size() != n) throw std::invalid_argument("residual: size mismatch");
    std::vector<double> res(n);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double um = (i == 0) ? ghost_factor_ * u[0] : u[i - 1];
        const auto& s = stencils_[i];
        const double d1 = s.w1[0] * um + s.w1[1] * u[i] + s.w1[2] * u[i + 1];
        const double d2 = s.w2[0] * um + s.w2[1] * u[i] + s.w2[2] * u[i + 1];
        res[i] = d2 + (p / r[i]) * d1 - (q / (r[i] * r[i])) * u[i] - eval_F(u[i]);
        if (source) res[i] -= source(r[i]);
    }
    if (far_bc == FarBc::Robin) {
        const double rN = r[n - 1];
        const double du = robin_cN_ * (u[n - 1] - u[n - 2]);
        res[n - 1] = du - (2.0 / rN) * (model.s_plus() - u[n - 1]);
    } else {
        res[n - 1] = u[n - 1] - far_value();
    }
    return res;
}

TriDiag DiscreteProblem::jacobian(std::span<const double> u) const
{
    const auto& r = grid.nodes;
    const std::size_t n = r.size();
    if (u.size() != n) throw std::invalid_argument("jacobian: size mismatch");
    TriDiag J(n);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const auto& s = stencils_[i];
        const double pi = p / r[i];
        if (i > 0) J.lower[i] = s.w2[0] + pi * s.w1[0];
        J.diag[i] = s.w2[1] + pi * s.w1[1] - q / (r[i] * r[i]) - eval_F_prime(u[i]);
        if (i == 0) J.diag[0] += (s.w2[0] + pi * s.w1[0]) * ghost_factor_;
        J.upper[i] = s.w2[2] + pi * s.w1[2];
    }
    if (far_bc == FarBc::Robin) {
        J.lower[n - 1] = -robin_cN_;
        J.diag[n - 1] = robin_cN_ + 2.0 / r[n - 1];
    } else {
        J.lower[n - 1] = 0.0;
        J.diag[n - 1] = 1.0;
    }
    return J;
}

std::vector<double> derivative_on_grid(const RadialGrid& grid, std::span<const double> u)
{
    const auto& r = grid.nodes;
    const std::size_t n = r.size();
    if (u.size() != n) throw std::invalid_argument("derivative_on_grid: size mismatch");
    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i) {
        double xs[3];
        double ys[3];
        if (i == 0) {
            xs[0] = 0.0;
            ys[0] = 0.0;
        } else if (i + 1 == n) {
            xs[0] = r[i - 2];
            ys[0] = u[i - 2];
        } else {
            xs[0] = r[i - 1];
            ys[0] = u[i - 1];
        }
        if (i + 1 == n) {
            xs[1] = r[i - 1];
            ys[1] = u[i - 1];
            xs[2] = r[i];
            ys[2] = u[i];
        } else {
            xs[1] = r[i];
            ys[1] = u[i];
            xs[2] = r[i + 1];
            ys[2] = u[i + 1];
        }
        auto w = fd_weights(xs, r[i], 1);
        d[i] = w[0] * ys[0] + w[1] * ys[1] + w[2] * ys[2];
    }
    return d;
}

}  // namespace hedgehog
