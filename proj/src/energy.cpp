#include "hedgehog/energy.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "hedgehog/numerics.hpp"

namespace hedgehog {

namespace {

double integrand_E(const ProfileSolution& sol, double r, double u, double du, bool modified)
{
    const double h = modified ? sol.model.with_tilde_extension(true).eval_h(u) : sol.model.eval_h(u);
    return std::pow(r, sol.p) * du * du + sol.q * std::pow(r, sol.p - 2.0) * u * u +
           std::pow(r, sol.p) * h;
}

}  // namespace

EnergyReport energy(const ProfileSolution& sol, std::pair<double, double> interval)
{
    const auto& r = sol.grid.nodes;
    const std::size_t n = r.size();
    const double lo = interval.first, hi = interval.second;
    if (!(lo >= 0.0 && hi > lo && hi <= r.back() * (1.0 + 1e-12)))
        throw std::invalid_argument("energy: interval outside the grid span");

    const std::vector<double> du = derivative_on_grid(sol.grid, sol.values);

    // nodes strictly inside, plus interpolated endpoint values
    PchipInterpolant interp(
        [&] {
            std::vector<double> x{0.0};
            x.insert(x.end(), r.begin(), r.end());
            return x;
        }(),
        [&] {
            std::vector<double> y{0.0};
            y.insert(y.end(), sol.values.begin(), sol.values.end());
            return y;
        }());

    auto point = [&](double x, bool mod) {
        if (x <= 0.0) return 0.0;  // integrand limit at the origin (u ~ r^g+)
        auto it = std::lower_bound(r.begin(), r.end(), x);
        if (it != r.end() && std::abs(*it - x) <= 1e-14 * x) {
            const std::size_t i = static_cast<std::size_t>(it - r.begin());
            return integrand_E(sol, r[i], sol.values[i], du[i], mod);
        }
        return integrand_E(sol, x, interp(x), interp.derivative(x), mod);
    };

    double E = 0.0, Em = 0.0;
    double x_prev = lo;
    double f_prev = point(lo, false), fm_prev = point(lo, true);
    for (std::size_t i = 0; i < n; ++i) {
        if (r[i] <= lo * (1.0 + 1e-14) || r[i] >= hi) continue;
        const double f = integrand_E(sol, r[i], sol.values[i], du[i], false);
        const double fm = integrand_E(sol, r[i], sol.values[i], du[i], true);
        E += 0.5 * (r[i] - x_prev) * (f + f_prev);
        Em += 0.5 * (r[i] - x_prev) * (fm + fm_prev);
        x_prev = r[i];
        f_prev = f;
        fm_prev = fm;
    }
    E += 0.5 * (hi - x_prev) * (point(hi, false) + f_prev);
    Em += 0.5 * (hi - x_prev) * (point(hi, true) + fm_prev);

    EnergyReport rep;
    rep.E = 0.5 * E;
    rep.E_modified = 0.5 * Em;
    rep.interval = interval;
    return rep;
}

EnergyReport energy(const ProfileSolution& sol)
{
    return energy(sol, {0.0, sol.grid.R()});
}

double second_variation(const ProfileSolution& sol, std::span<const double> v)
{
    if (!(std::abs(sol.p - 2.0) < 1e-12 && std::abs(sol.q - 6.0) < 1e-12))
        throw std::invalid_argument("second_variation: the printed form holds for p = 2, q = 6");
    const auto& r = sol.grid.nodes;
    const std::size_t n = r.size();
    if (v.size() != n) throw std::invalid_argument("second_variation: size mismatch");
    const double vscale = *std::max_element(v.begin(), v.end(),
                                            [](double a, double b) { return std::abs(a) < std::abs(b); });
    if (std::abs(v.back()) > 1e-10 * std::max(1.0, std::abs(vscale)))
        throw std::invalid_argument("second_variation: v(R) must vanish");

    const std::vector<double> dv = derivative_on_grid(sol.grid, v);
    double acc = 0.0;
    double x_prev = 0.0, f_prev = 0.0;  // integrand -> 0 at the origin for bounded v
    for (std::size_t i = 0; i < n; ++i) {
        const double f = r[i] * r[i] * dv[i] * dv[i] + 6.0 * v[i] * v[i] +
                         r[i] * r[i] * sol.model.eval_F_prime(sol.values[i]) * v[i] * v[i];
        acc += 0.5 * (r[i] - x_prev) * (f + f_prev);
        x_prev = r[i];
        f_prev = f;
    }
    return acc;
}

StabilityReport min_eigenvalue(const ProfileSolution& sol, int max_iter)
{
    if (!(std::abs(sol.p - 2.0) < 1e-12 && std::abs(sol.q - 6.0) < 1e-12))
        throw std::invalid_argument("min_eigenvalue: the printed form holds for p = 2, q = 6");
    const auto& r = sol.grid.nodes;
    const std::size_t n = r.size();
    if (n < 4) throw std::invalid_argument("min_eigenvalue: grid too coarse");
    const std::size_t m = n - 1;  // free nodes, v(R) = 0

    // cell-based stiffness + trapezoid mass, assembled on [r1, R]
    TriDiag A(m);
    std::vector<double> Bw(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        const double left = (i == 0) ? r[0] : r[i - 1];
        const double right = (i + 1 < n) ? r[i + 1] : r[i];
        const double w = 0.5 * (right - left);
        const double pot = 6.0 + r[i] * r[i] * sol.model.eval_F_prime(sol.values[i]);
        A.diag[i] = w * pot;
        Bw[i] = w * r[i] * r[i];
    }
    for (std::size_t i = 1; i < n; ++i) {
        const double h = r[i] - r[i - 1];
        const double rbar = 0.5 * (r[i] + r[i - 1]);
        const double k = rbar * rbar / h;
        if (i - 1 < m) A.diag[i - 1] += k;
        if (i < m) {
            A.diag[i] += k;
            A.lower[i] = -k;
        }
        if (i - 1 < m && i < m) A.upper[i - 1] = -k;
    }

    // shifted inverse iteration on (A - sigma B) x = B x_prev
    std::mt19937_64 rng(0x5eedULL);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::vector<double> x(m);
    for (double& xi : x) xi = unif(rng);

    double lambda = 0.0, lambda_prev = std::numeric_limits<double>::infinity();
    // start below the spectrum (generalized Gershgorin) so the iteration
    // walks to the smallest eigenvalue, not the smallest in magnitude
    double sigma = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
        const double row = A.diag[i] - std::abs(A.lower[i]) - std::abs(i + 1 < m ? A.upper[i] : 0.0);
        sigma = std::min(sigma, row / Bw[i]);
    }
    sigma -= 1.0;
    int it = 0;
    for (; it < max_iter; ++it) {
        TriDiag As = A;
        for (std::size_t i = 0; i < m; ++i) As.diag[i] -= sigma * Bw[i];
        std::vector<double> rhs(m);
        for (std::size_t i = 0; i < m; ++i) rhs[i] = Bw[i] * x[i];
        std::vector<double> y;
        try {
            y = solve_tridiag(As, rhs);
        } catch (const NumericalError&) {
            sigma *= (1.0 + 1e-8);
            sigma += 1e-12;
            continue;
        }
        double nrm = 0.0;
        for (std::size_t i = 0; i < m; ++i) nrm += Bw[i] * y[i] * y[i];
        nrm = std::sqrt(nrm);
        for (double& yi : y) yi /= nrm;
        // Rayleigh quotient
        std::vector<double> Ay = A.multiply(y);
        double num = 0.0;
        for (std::size_t i = 0; i < m; ++i) num += y[i] * Ay[i];
        lambda = num;  // B-normalized
        x = std::move(y);
        if (std::abs(lambda - lambda_prev) <= 1e-12 * std::max(1.0, std::abs(lambda))) break;
        lambda_prev = lambda;
        if (it > 4) sigma = lambda;  // Rayleigh acceleration once roughly converged
    }
    if (it >= max_iter) throw NumericalError("iteration-stall", "inverse iteration did not settle");

    StabilityReport rep;
    rep.lambda_min = lambda;
    rep.eigenvector = std::move(x);
    rep.eigenvector.push_back(0.0);  // v(R)
    rep.iterations = it;
    return rep;
}

}  // namespace hedgehog
