#include "hedgehog/solve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "hedgehog/numerics.hpp"

#include "dopri5.hpp"

namespace hedgehog {

namespace {

double norm2(std::span<const double> v)
{
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

void fill_asymptotics(ProfileSolution& sol)
{
    try {
        sol.alpha_origin = extract_alpha(sol);
    } catch (const std::exception&) {
        sol.alpha_origin.reset();
    }
    if (sol.grid.domain_kind == DomainKind::TruncatedInfinite) {
        try {
            sol.beta = extract_beta(sol);
        } catch (const std::exception&) {
            sol.beta.reset();
        }
    }
}

}  // namespace

bool ProfileSolution::is_positive_branch() const
{
    const double sp = model.s_plus();
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!(values[i] > 0.0 && values[i] < sp * (1.0 + 1e-12))) return false;
        if (i > 0 && !(values[i] > values[i - 1])) return false;
    }
    return true;
}

std::vector<double> sandwich_init(const DiscreteProblem& dp)
{
    const auto& r = dp.grid.nodes;
    const std::size_t n = r.size();
    const double sp = dp.model.s_plus();
    const double gp = fuchsian_indices(dp.p, dp.q).gamma_plus;
    const double r_half = r[n / 2];
    std::vector<double> u(n);
    if (std::abs(gp - 2.0) < 1e-12) {
        // the median heuristic underestimates the coefficient badly on wide
        // truncated domains; the tail-matched value s+^2/beta keeps the
        // starting shape within a few x of the solution for any a^2
        double a = sp / (r_half * r_half);
        const double fp = dp.model.eval_F_prime(sp);
        if (fp > 0.0) a = std::max(a, sp * fp / dp.q);
        for (std::size_t i = 0; i < n; ++i) u[i] = sp * a * r[i] * r[i] / (a * r[i] * r[i] + sp);
    } else {
        for (std::size_t i = 0; i < n; ++i)
            u[i] = sp * std::min(1.0, std::pow(r[i] / r_half, gp));
    }
    u[n - 1] = dp.far_value();
    return u;
}

ProfileSolution solve_newton(const DiscreteProblem& dp, std::span<const double> init,
                             const NewtonOptions& opts)
{
    const std::size_t n = dp.size();
    if (init.size() != n) throw std::invalid_argument("solve_newton: init size mismatch");
    std::vector<double> u(init.begin(), init.end());
    const double tol = opts.tol_factor * std::sqrt(double(n));

    // Row equilibration for the line-search merit: the raw residual norm is
    // dominated by the 1/h^2 rows near the origin and stalls the descent on
    // coarse inner cells. Convergence is still gated on the raw 2-norm.
    std::vector<double> rw(n, 1.0);
    {
        const TriDiag J0 = dp.jacobian(sandwich_init(dp));
        for (std::size_t i = 0; i < n; ++i) {
            const double rs = std::abs(J0.lower[i]) + std::abs(J0.diag[i]) + std::abs(J0.upper[i]);
            rw[i] = 1.0 / std::max(rs, 1.0);
        }
    }
    auto merit = [&](std::span<const double> res) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += rw[i] * rw[i] * res[i] * res[i];
        return std::sqrt(s);
    };

    std::vector<double> res = dp.residual(u);
    double rn = norm2(res);
    double mn = merit(res);
    int it = 0;
    double mu = 0.0;  // Levenberg damping, escalated when the pure step stalls
    for (; it < opts.max_iter && rn > tol; ++it) {
        TriDiag J = dp.jacobian(u);
        if (mu > 0.0) {
            double dmax = 0.0;
            for (double d : J.diag) dmax = std::max(dmax, std::abs(d));
            for (double& d : J.diag) d += mu * dmax * (d >= 0.0 ? 1.0 : -1.0);
        }
        std::vector<double> neg(res);
        for (double& v : neg) v = -v;
        std::vector<double> step = solve_tridiag(J, neg);
        // cap the step length: full Newton steps from distant inits can jump
        // across basins; capping keeps globalization honest without
        // projecting iterates
        double smax = 0.0;
        for (double v : step) smax = std::max(smax, std::abs(v));
        const double cap = 0.25 * dp.model.s_plus();
        double lambda = (smax > cap) ? cap / smax : 1.0;
        bool accepted = false;
        std::vector<double> trial(n);
        while (lambda >= 1e-12) {
            for (std::size_t i = 0; i < n; ++i) trial[i] = u[i] + lambda * step[i];
            std::vector<double> rt = dp.residual(trial);
            const double mt = merit(rt);
            if (mt <= (1.0 - 1e-4 * lambda) * mn) {
                u.swap(trial);
                res.swap(rt);
                mn = mt;
                rn = norm2(res);
                accepted = true;
                break;
            }
            lambda *= 0.5;
        }
        if (accepted) {
            mu = (mu > 1e-8) ? mu * 0.25 : 0.0;
        } else {
            mu = (mu == 0.0) ? 1e-4 : mu * 16.0;
            if (mu > 1e6)
                throw NumericalError("no-convergence",
                                     "line search failed at iteration " + std::to_string(it));
        }
    }
    if (rn > tol) throw NumericalError("no-convergence", "Newton residual " + std::to_string(rn) + " above tolerance");

    ProfileSolution sol;
    sol.grid = dp.grid;
    sol.values = std::move(u);
    sol.p = dp.p;
    sol.q = dp.q;
    sol.model = dp.model;
    sol.residual_norm = rn;
    sol.method = "newton";
    sol.iterations = it;
    if (opts.extract_asymptotics && !dp.f_override) fill_asymptotics(sol);
    return sol;
}

ProfileSolution solve_newton(const DiscreteProblem& dp, const NewtonOptions& opts)
{
    return solve_newton(dp, sandwich_init(dp), opts);
}

// ---------------------------------------------------------------- shooting

namespace {

struct TrajPoint {
    double r;
    double u;
    double v;
};

struct ShotResult {
    TrajectoryClass cls = TrajectoryClass::Turnback;
    std::optional<double> turning_radius;
    double r_end = 0.0;
    double u_end = 0.0;
    std::vector<TrajPoint> points;  // filled only when requested
};

ShotResult integrate_shot(const NonlinearityModel& model, double p, double q, double alpha,
                          double r_stop, const ShootingOptions& opts, bool store)
{
    const double sp = model.s_plus();
    const NearFieldExpansion series = near_origin_series(model, p, q, alpha, opts.series_order);
    const double r0 = std::min(series.start_radius, 0.02 * r_stop);
    detail::Ode2 y{series.eval(r0), series.eval_derivative(r0)};
    auto rhs = [&](double r, const detail::Ode2& s) {
        return detail::Ode2{s.v, model.eval_F(s.u) - (p / r) * s.v + (q / (r * r)) * s.u};
    };

    ShotResult out;
    if (store) out.points.push_back({r0, y.u, y.v});
    const double over_lim = sp * (1.0 + 1e-12);
    const double turn_lim = sp * (1.0 - 1e-9);
    const double diverge_lim = 8.0 * sp;
    bool stopped = false;
    auto on_step = [&](double r, const detail::Ode2& s) {
        if (store) out.points.push_back({r, s.u, s.v});
        if (s.u > over_lim || s.u > diverge_lim) {
            out.cls = TrajectoryClass::Overshoot;
            stopped = true;
            return false;
        }
        if (s.v < 0.0 && s.u < turn_lim) {
            out.cls = TrajectoryClass::Turnback;
            out.turning_radius = r;
            stopped = true;
            return false;
        }
        return true;
    };
    // storing runs cap the step so the dense samples resolve the bend for
    // the monotone-cubic resample
    const double max_step = store ? 0.01 : 0.0;
    auto [r_end, y_end] =
        detail::dopri5_march(rhs, r0, r_stop, y, opts.rtol, opts.atol, on_step, max_step);
    out.r_end = r_end;
    out.u_end = y_end.u;
    if (!stopped) out.cls = (y_end.u >= sp) ? TrajectoryClass::Overshoot : TrajectoryClass::Turnback;
    return out;
}

double shot_radius(const NonlinearityModel& model, double q, double R_ref_out[2])
{
    const FarField ff = far_field_beta(model, q);
    const double r_ref = std::sqrt(ff.beta / ff.s_plus);
    R_ref_out[0] = ff.beta;
    R_ref_out[1] = r_ref;
    return std::max(10.0 * std::sqrt(ff.beta), 5.0 * r_ref);
}

}  // namespace

ShootingTrajectory classify_shot(const NonlinearityModel& model, double p, double q, double alpha,
                                 const ShootingOptions& opts)
{
    double aux[2];
    const double r_stop = shot_radius(model, q, aux);
    // classify over extra span: a just-above-matched trajectory crosses s+
    // only ~1/lambda past r_stop, and stopping there would bias the
    // bisection boundary by e^{-lambda (r_cls - bend)}
    ShotResult res = integrate_shot(model, p, q, alpha, 1.6 * r_stop, opts, false);
    ShootingTrajectory t;
    t.alpha_origin = alpha;
    t.turning_radius = res.turning_radius;
    const double sp = model.s_plus();
    const double band = 1.5 * aux[0] / (res.r_end * res.r_end);
    // matched needs the stopping point deep in the tail, not just inside the
    // (huge) corridor of an early event
    if (res.r_end >= 0.5 * r_stop && std::abs(res.u_end - sp) <= band)
        t.classification = TrajectoryClass::Matched;
    else
        t.classification = res.cls;
    return t;
}

ProfileSolution solve_shoot(const NonlinearityModel& model, double p, double q,
                            std::pair<double, double> alpha_bracket, const ShootingOptions& opts)
{
    double aux[2];
    const double r_stop = shot_radius(model, q, aux);
    const double beta_est = aux[0];
    const double sp = model.s_plus();

    // see classify_shot: the classification span exceeds r_stop so that the
    // bisection boundary lands on the connecting coefficient itself
    auto shoot = [&](double a, bool store) {
        return integrate_shot(model, p, q, a, 1.6 * r_stop, opts, store);
    };

    double lo = alpha_bracket.first, hi = alpha_bracket.second;
    if (!(lo > 0.0 && hi > lo)) throw std::invalid_argument("solve_shoot: bad bracket");
    ShotResult rlo = shoot(lo, false);
    ShotResult rhi = shoot(hi, false);
    if (rlo.cls != TrajectoryClass::Turnback || rhi.cls != TrajectoryClass::Overshoot)
        throw NumericalError("bracket-invalid",
                             "bracket endpoints must classify as (turnback, overshoot)");

    // Comparison-principle ordering: turnback stays below overshoot.
    // Interleavings wider than the noise floor are flagged.
    double highest_turnback = lo, lowest_overshoot = hi;
    int it = 0;
    for (; it < opts.max_bisections; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (!(mid > lo && mid < hi)) break;  // bracket at machine resolution
        ShotResult rm = shoot(mid, false);
        const bool over = (rm.cls == TrajectoryClass::Overshoot);
        if (over) {
            hi = mid;
            lowest_overshoot = std::min(lowest_overshoot, mid);
        } else {
            lo = mid;
            highest_turnback = std::max(highest_turnback, mid);
        }
        if (lowest_overshoot < highest_turnback - 16.0 * (hi - lo) - 64.0 * std::numeric_limits<double>::epsilon() * hi)
            throw NumericalError("classification-order",
                                 "trajectory classification is not monotone in alpha");
    }

    const double alpha = 0.5 * (lo + hi);
    ShotResult fin = shoot(alpha, true);
    const double band = 1.5 * beta_est / (fin.r_end * fin.r_end);
    if (fin.r_end < 0.5 * r_stop || std::abs(fin.u_end - sp) > band)
        throw NumericalError("no-convergence", "matched corridor not reached at bracket collapse");

    // Only the span where the unstable plateau mode has not amplified noise
    // past trust_tol carries information.
    const double lambda = std::sqrt(model.eval_F_prime(sp));
    const double dev = std::max(std::abs(fin.u_end - sp), band);
    double r_trust = fin.r_end - std::log(std::max(dev / (opts.trust_tol * sp), 1.0)) / lambda;
    r_trust = std::max(r_trust, 1.3 * aux[1]);
    r_trust = std::min(r_trust, fin.r_end);

    std::vector<double> xs, ys;
    xs.reserve(fin.points.size());
    ys.reserve(fin.points.size());
    for (const auto& pt : fin.points) {
        if (!xs.empty() && pt.r <= xs.back()) continue;
        xs.push_back(pt.r);
        ys.push_back(pt.u);
    }
    if (xs.size() < 8) throw NumericalError("no-convergence", "matched trajectory too short");
    const double r_front = xs.front();
    PchipInterpolant interp(std::move(xs), std::move(ys));

    DomainSpec dom;
    dom.kind = DomainKind::TruncatedInfinite;
    dom.R = r_trust;
    GradingSpec grading;
    grading.kind = GradingKind::Geometric;
    grading.r_first = std::max(r_front * 1.5, r_trust / 150.0);
    RadialGrid grid = build_grid(dom, opts.grid_n, grading);

    ProfileSolution sol;
    sol.grid = std::move(grid);
    sol.values.resize(sol.grid.size());
    for (std::size_t i = 0; i < sol.grid.size(); ++i) sol.values[i] = interp(sol.grid.nodes[i]);
    sol.p = p;
    sol.q = q;
    sol.model = model;
    sol.residual_norm = opts.rtol;  // integrator local-error bound, not an FD residual
    sol.method = "shoot";
    sol.iterations = it;
    sol.alpha_origin = alpha;
    sol.beta = beta_est;
    return sol;
}

// ---------------------------------------------------------- energy descent

namespace {

struct DiscreteEnergy {
    // Cell-based modified energy on the solve grid: exact gradient, SPD
    // quadratic part used as the preconditioner.
    const DiscreteProblem& dp;
    NonlinearityModel tilde;
    std::vector<double> w;       // trapezoid node weights (r0 = 0 ghost)
    std::vector<double> cell_k;  // rbar^p / h per cell, cell i = (r_i-1, r_i)
    double u_far;

    explicit DiscreteEnergy(const DiscreteProblem& d)
        : dp(d), tilde(d.model.with_tilde_extension(true)), u_far(d.far_value())
    {
        const auto& r = dp.grid.nodes;
        const std::size_t n = r.size();
        w.resize(n);
        cell_k.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double left = (i == 0) ? 0.0 : r[i - 1];
            const double right = (i + 1 < n) ? r[i + 1] : r[i];
            w[i] = 0.5 * (right - left);
        }
        for (std::size_t i = 0; i < n; ++i) {
            const double left = (i == 0) ? 0.0 : r[i - 1];
            const double h = r[i] - left;
            const double rbar = 0.5 * (left + r[i]);
            cell_k[i] = (rbar > 0.0) ? std::pow(rbar, dp.p) / h : 0.0;
        }
    }

    double value(std::span<const double> u) const
    {
        const auto& r = dp.grid.nodes;
        const std::size_t n = r.size();
        double e = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double ul = (i == 0) ? 0.0 : u[i - 1];
            const double du = u[i] - ul;
            e += 0.5 * cell_k[i] * du * du;
            const double mass = dp.q * std::pow(r[i], dp.p - 2.0) * u[i] * u[i] +
                                std::pow(r[i], dp.p) * tilde.eval_h(u[i]);
            e += 0.5 * w[i] * mass;
        }
        return e;
    }

    // gradient w.r.t. the free nodes 0..n-2 (last node pinned to u_far)
    std::vector<double> gradient(std::span<const double> u) const
    {
        const auto& r = dp.grid.nodes;
        const std::size_t n = r.size();
        std::vector<double> g(n - 1, 0.0);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            const double ul = (i == 0) ? 0.0 : u[i - 1];
            g[i] += cell_k[i] * (u[i] - ul);
            g[i] -= cell_k[i + 1] * (u[i + 1] - u[i]);
            g[i] += w[i] * (dp.q * std::pow(r[i], dp.p - 2.0) * u[i] +
                            std::pow(r[i], dp.p) * tilde.eval_F(u[i]));
        }
        return g;
    }

    TriDiag preconditioner() const
    {
        const auto& r = dp.grid.nodes;
        const std::size_t n = r.size();
        TriDiag A(n - 1);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            A.diag[i] = cell_k[i] + cell_k[i + 1] + w[i] * dp.q * std::pow(r[i], dp.p - 2.0);
            if (i > 0) A.lower[i] = -cell_k[i];
            if (i + 2 < n) A.upper[i] = -cell_k[i + 1];
        }
        return A;
    }
};

}  // namespace

ProfileSolution solve_energy_descent(const DiscreteProblem& dp, const DescentOptions& opts)
{
    const std::size_t n = dp.size();
    DiscreteEnergy energy(dp);
    std::vector<double> u(n, 0.0);
    u[n - 1] = energy.u_far;

    TriDiag A = energy.preconditioner();
    double e = energy.value(u);
    int it = 0;
    int stall_count = 0;
    for (; it < opts.max_iter; ++it) {
        std::vector<double> g = energy.gradient(u);
        double rms = 0.0;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            const double scale = energy.w[i] * std::max(std::pow(dp.grid.nodes[i], dp.p), 1e-12);
            rms += (g[i] / scale) * (g[i] / scale);
        }
        rms = std::sqrt(rms / double(n));
        std::vector<double> z = solve_tridiag(A, g);
        double gz = 0.0;
        for (std::size_t i = 0; i + 1 < n; ++i) gz += g[i] * z[i];
        // near the minimum the per-step decrease drops below the fp64
        // resolution of E itself; accept steps within that floor so the
        // iteration keeps contracting the gradient
        const double floor = 8.0 * std::numeric_limits<double>::epsilon() * std::abs(e);
        double eta = 1.0;
        double e_new = e;
        std::vector<double> trial(u);
        bool moved = false;
        while (eta >= 1e-14) {
            for (std::size_t i = 0; i + 1 < n; ++i) trial[i] = u[i] - eta * z[i];
            e_new = energy.value(trial);
            if (e_new <= e - 1e-4 * eta * gz + floor) {
                moved = true;
                break;
            }
            eta *= 0.5;
        }
        if (!moved) {
            if (rms <= opts.residual_gate) break;
            throw NumericalError("descent-stall", "no descent step found");
        }
        const double decrease = e - e_new;
        u = trial;
        e = std::min(e, e_new);
        if (decrease <= opts.energy_stall * std::abs(e)) {
            if (rms <= opts.residual_gate) break;
            if (++stall_count > 512)
                throw NumericalError("descent-stall",
                                     "energy stalled with gradient rms " + format_shortest(rms) +
                                         " above the polishing gate");
        } else {
            stall_count = 0;
        }
    }
    if (it >= opts.max_iter) throw NumericalError("descent-stall", "iteration limit reached");

    ProfileSolution sol = solve_newton(dp, u);
    sol.method = "energy-descent";
    sol.iterations = it + sol.iterations;
    return sol;
}

// ------------------------------------------------------------ continuation

ScanParameter scan_parameter_from_string(const std::string& s)
{
    if (s == "a2") return ScanParameter::A2;
    if (s == "b2") return ScanParameter::B2;
    if (s == "c2") return ScanParameter::C2;
    if (s == "R") return ScanParameter::R;
    throw std::invalid_argument("unknown scan parameter: " + s);
}

std::string to_string(ScanParameter p)
{
    switch (p) {
        case ScanParameter::A2: return "a2";
        case ScanParameter::B2: return "b2";
        case ScanParameter::C2: return "c2";
        case ScanParameter::R: return "R";
    }
    return "a2";
}

std::vector<ProfileSolution> continuation_scan(const DiscreteProblem& base, ScanParameter parameter,
                                               std::span<const double> values)
{
    for (std::size_t i = 1; i < values.size(); ++i)
        if (!(values[i] >= values[i - 1]))
            throw std::invalid_argument("continuation_scan: values must be sorted");
    if (parameter != ScanParameter::R && base.model.kind() != ModelKind::PhysicalCubic)
        throw std::invalid_argument("continuation_scan: coefficient sweeps need the physical model");

    std::vector<ProfileSolution> out;
    std::optional<ProfileSolution> prev;
    for (double v : values) {
        DiscreteProblem dp = [&]() {
            if (parameter == ScanParameter::R) {
                DomainSpec dom;
                dom.kind = base.grid.domain_kind;
                dom.R = v;
                GradingSpec gr;
                gr.kind = base.grid.grading;
                if (gr.kind == GradingKind::Geometric)
                    gr.r_first = v * (base.grid.nodes.front() / base.grid.R());
                RadialGrid g = build_grid(dom, int(base.grid.size()), gr);
                return DiscreteProblem(std::move(g), base.p, base.q, base.model, base.far_bc,
                                       base.origin_bc);
            }
            PhysicalParams pp = *base.model.physical_params();
            if (parameter == ScanParameter::A2) pp.a2 = v;
            if (parameter == ScanParameter::B2) pp.b2 = v;
            if (parameter == ScanParameter::C2) pp.c2 = v;
            return DiscreteProblem(base.grid, base.p, base.q, NonlinearityModel::physical(pp),
                                   base.far_bc, base.origin_bc);
        }();
        try {
            std::vector<double> init;
            if (prev) {
                if (parameter == ScanParameter::R) {
                    PchipInterpolant warm(prev->grid.nodes, prev->values);
                    init.resize(dp.size());
                    const double sp = dp.model.s_plus();
                    for (std::size_t i = 0; i < dp.size(); ++i) {
                        const double r = std::min(dp.grid.nodes[i], warm.x_max());
                        init[i] = std::clamp(warm(std::max(r, warm.x_min())), 0.0, sp);
                    }
                    init[dp.size() - 1] = dp.far_value();
                } else {
                    init = prev->values;
                    const double sp = dp.model.s_plus();
                    for (double& x : init) x = std::clamp(x, 0.0, sp);
                    init[dp.size() - 1] = dp.far_value();
                }
            } else {
                init = sandwich_init(dp);
            }
            out.push_back(solve_newton(dp, init));
            prev = out.back();
        } catch (const NumericalError& err) {
            throw NumericalError("continuation",
                                 std::string(err.what()) + " at " + to_string(parameter) + " = " +
                                     format_shortest(v));
        }
    }
    return out;
}

}  // namespace hedgehog
