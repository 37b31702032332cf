#include "hedgehog/signchange.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "dopri5.hpp"
#include "hedgehog/asymptotics.hpp"
#include "hedgehog/numerics.hpp"

namespace hedgehog {

namespace {

double max_norm_gap(std::span<const double> a, std::span<const double> b)
{
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

double norm2(std::span<const double> v)
{
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

}  // namespace

void SolutionSet::refresh()
{
    const std::size_t k = solutions.size();
    pairwise_distances.assign(k, std::vector<double>(k, 0.0));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) {
            const double d = max_norm_gap(solutions[i].values, solutions[j].values);
            pairwise_distances[i][j] = pairwise_distances[j][i] = d;
        }
    sign_change_counts.resize(k);
    for (std::size_t i = 0; i < k; ++i) sign_change_counts[i] = count_sign_changes(solutions[i]);
}

int count_sign_changes(const ProfileSolution& sol)
{
    const double band = 1e-12 * sol.model.s_plus();
    int count = 0;
    int prev = 0;
    for (double u : sol.values) {
        if (std::abs(u) < band) continue;
        const int s = u > 0.0 ? 1 : -1;
        if (prev != 0 && s != prev) ++count;
        prev = s;
    }
    return count;
}

bool growth_condition_check(const NonlinearityModel& model, double& kappa, double& lambda)
{
    const auto& c = model.coefficients();
    kappa = 0.0;
    lambda = 0.0;
    if (c.size() < 5) return false;           // no t^4 term
    for (std::size_t k = 5; k < c.size(); ++k)
        if (c[k] != 0.0) return false;        // super-quartic growth
    kappa = c[4];
    if (!(kappa > 0.0)) return false;
    int deg = 0;
    for (int k = 3; k >= 1; --k)
        if (c[k] != 0.0) {
            deg = k;
            break;
        }
    lambda = deg;
    return lambda < 4.0;
}

namespace {

// Newton on eta(u) R(u) with eta = prod (1/|u - u_k|_2^2 + 1).
bool deflated_newton(const DiscreteProblem& dp, std::vector<double>& u,
                     const std::vector<const ProfileSolution*>& known, double tol, int max_iter)
{
    const std::size_t n = dp.size();
    auto eta_of = [&](std::span<const double> x) {
        double eta = 1.0;
        for (const auto* k : known) {
            double d2 = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double d = x[i] - k->values[i];
                d2 += d * d;
            }
            eta *= 1.0 / std::max(d2, 1e-300) + 1.0;
        }
        return eta;
    };

    std::vector<double> res = dp.residual(u);
    double g_norm = eta_of(u) * norm2(res);
    for (int it = 0; it < max_iter; ++it) {
        if (norm2(res) <= tol) return true;
        // grad log eta
        std::vector<double> glog(n, 0.0);
        for (const auto* k : known) {
            double d2 = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double d = u[i] - k->values[i];
                d2 += d * d;
            }
            d2 = std::max(d2, 1e-300);
            const double etak = 1.0 / d2 + 1.0;
            const double f = -2.0 / (d2 * d2) / etak;
            for (std::size_t i = 0; i < n; ++i) glog[i] += f * (u[i] - k->values[i]);
        }
        TriDiag J = dp.jacobian(u);
        std::vector<double> neg(res);
        for (double& v : neg) v = -v;
        std::vector<double> step;
        try {
            step = known.empty() ? solve_tridiag(J, neg)
                                 : solve_tridiag_rank1(J, res, glog, neg);
        } catch (const NumericalError&) {
            return false;
        }
        double lambda = 1.0;
        bool moved = false;
        std::vector<double> trial(n);
        while (lambda >= 1e-12) {
            for (std::size_t i = 0; i < n; ++i) trial[i] = u[i] + lambda * step[i];
            std::vector<double> rt = dp.residual(trial);
            const double gt = eta_of(trial) * norm2(rt);
            if (gt <= (1.0 - 1e-4 * lambda) * g_norm) {
                u.swap(trial);
                res.swap(rt);
                g_norm = gt;
                moved = true;
                break;
            }
            lambda *= 0.5;
        }
        if (!moved) return false;
    }
    return norm2(res) <= tol;
}

}  // namespace

SolutionSet deflated_newton_search(const DiscreteProblem& dp, SolutionSet known, int attempts)
{
    double kappa, lambda;
    if (!growth_condition_check(dp.model, kappa, lambda))
        throw std::invalid_argument(
            "deflated_newton_search: model must be kappa t^4 + lower order, kappa > 0");
    if (dp.grid.domain_kind != DomainKind::FiniteR)
        throw std::invalid_argument("deflated_newton_search: finite domain required");

    const auto& r = dp.grid.nodes;
    const std::size_t n = r.size();
    const double R = dp.grid.R();
    const double sp = dp.model.s_plus();
    const double gp = fuchsian_indices(dp.p, dp.q).gamma_plus;

    if (known.solutions.empty()) {
        known.solutions.push_back(solve_newton(dp));
        known.refresh();
    }
    const ProfileSolution& upos = known.solutions.front();

    // negative-lobe templates blended into the far tail, then ridge-crossing
    // perturbations of the positive branch
    std::vector<std::vector<double>> inits;
    for (double r0_frac : {0.25, 0.5, 0.75}) {
        for (double c : {0.5, 1.0, 1.5, 2.0}) {
            const double r0 = r0_frac * R;
            std::vector<double> u(n);
            for (std::size_t i = 0; i < n; ++i) {
                const double neg = (r[i] < r0)
                                       ? -c * sp * std::pow(r[i] / r0, gp) * (1.0 - r[i] / r0)
                                       : 0.0;
                const double t = std::clamp((r[i] - r0) / (R - r0), 0.0, 1.0);
                u[i] = neg + sp * t * t * (3.0 - 2.0 * t);
            }
            u[n - 1] = dp.far_value();
            inits.push_back(std::move(u));
        }
    }
    for (double t : {2.0, 4.0, 8.0}) {
        for (double mfrac : {0.15, 0.3, 0.5}) {
            for (double wfrac : {0.1, 0.2}) {
                std::vector<double> u(upos.values);
                for (std::size_t i = 0; i < n; ++i) {
                    const double z = (r[i] - mfrac * R) / (wfrac * R);
                    u[i] -= t * sp * std::exp(-z * z) * (1.0 - std::pow(r[i] / R, 8.0));
                }
                u[n - 1] = dp.far_value();
                inits.push_back(std::move(u));
            }
        }
    }

    const double tol = 1e-10 * std::sqrt(double(n));
    int tried = 0;
    for (const auto& init : inits) {
        if (tried++ >= attempts) break;
        std::vector<const ProfileSolution*> refs;
        for (const auto& s : known.solutions) refs.push_back(&s);
        std::vector<double> u = init;
        if (!deflated_newton(dp, u, refs, tol, 300)) continue;

        bool distinct = true;
        for (const auto& s : known.solutions)
            if (max_norm_gap(u, s.values) < SolutionSet::kDistinctnessRel * sp) distinct = false;
        if (!distinct) continue;

        ProfileSolution sol;
        sol.grid = dp.grid;
        sol.values = std::move(u);
        sol.p = dp.p;
        sol.q = dp.q;
        sol.model = dp.model;
        sol.residual_norm = norm2(dp.residual(sol.values));
        sol.method = "deflated-newton";
        sol.iterations = tried;
        known.solutions.push_back(std::move(sol));
    }
    known.refresh();
    return known;
}

SolutionSet multi_shoot_scan(const NonlinearityModel& model, double p, double q, double R,
                             std::pair<double, double> alpha_range, const MultiShootOptions& opts)
{
    if (!(R > 0.0)) throw std::invalid_argument("multi_shoot_scan: R must be > 0");
    if (!(alpha_range.second > alpha_range.first))
        throw std::invalid_argument("multi_shoot_scan: empty alpha range");
    const double sp = model.s_plus();
    const double gp = fuchsian_indices(p, q).gamma_plus;
    const double cap = 8.0 * sp;
    const double r0 = 0.005 * R;

    auto endpoint = [&](double alpha) -> double {
        if (alpha == 0.0) return -sp;  // trivial trajectory stays at zero
        detail::Ode2 y{alpha * std::pow(r0, gp), alpha * gp * std::pow(r0, gp - 1.0)};
        auto rhs = [&](double r, const detail::Ode2& s) {
            return detail::Ode2{s.v, model.eval_F(s.u) - (p / r) * s.v + (q / (r * r)) * s.u};
        };
        bool diverged = false;
        double sign = 1.0;
        auto on_step = [&](double, const detail::Ode2& s) {
            if (std::abs(s.u) > cap) {
                diverged = true;
                sign = s.u > 0.0 ? 1.0 : -1.0;
                return false;
            }
            return true;
        };
        auto [r_end, y_end] =
            detail::dopri5_march(rhs, r0, R, y, opts.rtol, opts.atol, on_step);
        (void)r_end;
        if (diverged) return sign * cap - sp;
        return y_end.u - sp;
    };

    // asinh-spaced sweep: logarithmic for large |alpha|, linear through 0
    std::vector<double> alphas(opts.samples);
    const double scale = std::max(std::abs(alpha_range.first), std::abs(alpha_range.second)) * 1e-4;
    const double tlo = std::asinh(alpha_range.first / scale);
    const double thi = std::asinh(alpha_range.second / scale);
    for (int i = 0; i < opts.samples; ++i)
        alphas[i] = scale * std::sinh(tlo + (thi - tlo) * i / (opts.samples - 1));

    std::vector<double> g(opts.samples);
    const int jobs = std::max(1, opts.jobs);
    if (jobs == 1) {
        for (int i = 0; i < opts.samples; ++i) g[i] = endpoint(alphas[i]);
    } else {
        std::vector<std::thread> pool;
        std::atomic<int> next{0};
        for (int t = 0; t < jobs; ++t)
            pool.emplace_back([&] {
                for (int i = next.fetch_add(1); i < opts.samples; i = next.fetch_add(1))
                    g[i] = endpoint(alphas[i]);
            });
        for (auto& th : pool) th.join();
    }

    std::vector<double> matched;
    for (int i = 0; i + 1 < opts.samples; ++i) {
        if (!(g[i] * g[i + 1] < 0.0)) continue;
        double lo = alphas[i], hi = alphas[i + 1], glo = g[i];
        for (int it = 0; it < opts.refine_bisections; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double gm = endpoint(mid);
            if (glo * gm <= 0.0) {
                hi = mid;
            } else {
                lo = mid;
                glo = gm;
            }
        }
        const double alpha = 0.5 * (lo + hi);
        if (std::abs(endpoint(alpha)) <= std::max(opts.match_tol, 1e-11 * sp) * 100.0)
            matched.push_back(alpha);
    }

    // polish on a finite-domain discretization and de-duplicate
    DomainSpec dom;
    dom.kind = DomainKind::FiniteR;
    dom.R = R;
    GradingSpec grading;  // uniform
    RadialGrid grid = build_grid(dom, opts.polish_n, grading);
    DiscreteProblem dp(grid, p, q, model, FarBc::DirichletCorrected, OriginBc::ZeroDirichlet);

    SolutionSet set;
    for (double alpha : matched) {
        // dense resample of the matched trajectory
        std::vector<double> xs{r0}, ys{alpha * std::pow(r0, gp)};
        detail::Ode2 y{ys[0], alpha * gp * std::pow(r0, gp - 1.0)};
        auto rhs = [&](double r, const detail::Ode2& s) {
            return detail::Ode2{s.v, model.eval_F(s.u) - (p / r) * s.v + (q / (r * r)) * s.u};
        };
        detail::dopri5_march(rhs, r0, R, y, opts.rtol, opts.atol,
                             [&](double r, const detail::Ode2& s) {
                                 if (r > xs.back()) {
                                     xs.push_back(r);
                                     ys.push_back(s.u);
                                 }
                                 return true;
                             });
        if (xs.size() < 8 || xs.back() < R * (1.0 - 1e-9)) continue;
        PchipInterpolant interp(std::move(xs), std::move(ys));
        std::vector<double> init(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i)
            init[i] = interp(std::clamp(grid.nodes[i], interp.x_min(), interp.x_max()));
        init[grid.size() - 1] = sp;
        ProfileSolution sol;
        try {
            NewtonOptions nopts;
            nopts.extract_asymptotics = false;
            sol = solve_newton(dp, init, nopts);
        } catch (const NumericalError&) {
            continue;
        }
        sol.method = "multi-shoot";
        sol.alpha_origin = alpha;
        bool distinct = true;
        for (const auto& s : set.solutions)
            if (max_norm_gap(sol.values, s.values) < SolutionSet::kDistinctnessRel * sp)
                distinct = false;
        if (distinct) set.solutions.push_back(std::move(sol));
    }
    set.refresh();
    return set;
}

}  // namespace hedgehog
