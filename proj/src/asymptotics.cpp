#include "hedgehog/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hedgehog/numerics.hpp"
#include "hedgehog/solve.hpp"

namespace hedgehog {

FuchsianIndices fuchsian_indices(double p, double q)
{
    if (!(q > 0.0)) throw std::invalid_argument("fuchsian_indices: q must be > 0");
    const double disc = (p - 1.0) * (p - 1.0) + 4.0 * q;
    const double root = std::sqrt(disc);
    return {(1.0 - p + root) / 2.0, (1.0 - p - root) / 2.0};
}

FarField far_field_beta(const NonlinearityModel& model, double q)
{
    if (!(q > 0.0)) throw std::invalid_argument("far_field_beta: q must be > 0");
    const double sp = model.s_plus();
    const double fp = model.eval_F_prime(sp);
    if (!(fp > 0.0)) throw std::invalid_argument("far_field_beta: F'(s+) must be > 0");
    return {sp, q * sp / fp};
}

namespace {

// Generalized power series sum c_k r^{e_k}, exponents sorted ascending.
using Series = std::vector<std::pair<double, double>>;

constexpr double kExpTol = 1e-9;

void add_term(Series& s, double e, double c)
{
    if (c == 0.0) return;
    auto it = std::lower_bound(s.begin(), s.end(), e,
                               [](const auto& t, double v) { return t.first < v - kExpTol; });
    if (it != s.end() && std::abs(it->first - e) <= kExpTol) {
        it->second += c;
    } else {
        s.insert(it, {e, c});
    }
}

Series multiply(const Series& a, const Series& b, double cap)
{
    Series out;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) {
            const double e = ea + eb;
            if (e > cap) continue;
            add_term(out, e, ca * cb);
        }
    return out;
}

Series poly_of_series(const std::vector<double>& coeffs, const Series& s, double cap)
{
    // Horner: result = c_n; result = result*s + c_k. F(0) = 0 so no constant.
    Series res;
    for (std::size_t i = coeffs.size(); i-- > 1;) {
        if (!res.empty()) res = multiply(res, s, cap);
        if (coeffs[i] != 0.0 && i == coeffs.size() - 1)
            res.push_back({0.0, coeffs[i]});
        else if (coeffs[i] != 0.0)
            add_term(res, 0.0, coeffs[i]);
    }
    if (!res.empty()) res = multiply(res, s, cap);
    return res;
}

}  // namespace

NearFieldExpansion near_origin_series(const NonlinearityModel& model, double p, double q,
                                      double alpha_origin, int order, double series_tol)
{
    if (order < 0) throw std::invalid_argument("near_origin_series: order must be >= 0");
    if (!(alpha_origin > 0.0)) throw std::invalid_argument("near_origin_series: alpha must be > 0");
    const auto idx = fuchsian_indices(p, q);
    const double gp = idx.gamma_plus;
    const double cap = gp + 2.0 * (order + 1) + 2.5;

    Series u;
    u.push_back({gp, alpha_origin});

    auto residual_series = [&]() {
        // D[u] - F(u), D[r^e] = indicial(e) r^{e-2}
        Series res;
        for (const auto& [e, c] : u) {
            const double ind = indicial_poly(p, q, e);
            if (std::abs(ind) > 1e-12 * std::max(1.0, e * e)) add_term(res, e - 2.0, c * ind);
        }
        const Series fu = poly_of_series(model.coefficients(), u, cap);
        for (const auto& [e, c] : fu) add_term(res, e, -c);
        return res;
    };

    for (int k = 0; k < order; ++k) {
        Series res = residual_series();
        // lowest surviving term
        const double drop = 1e-14 * std::max(1.0, std::abs(alpha_origin));
        auto it = std::find_if(res.begin(), res.end(),
                               [&](const auto& t) { return std::abs(t.second) > drop; });
        if (it == res.end()) break;  // series closed early (e.g. F == 0)
        const double sigma = it->first;
        const double e_new = sigma + 2.0;
        const double ind = indicial_poly(p, q, e_new);
        if (std::abs(ind) < 1e-8 * std::max(1.0, e_new * e_new))
            throw NumericalError("resonance",
                                 "generated exponent collides with an indicial root; "
                                 "logarithmic terms are out of scope");
        add_term(u, e_new, -it->second / ind);
    }

    NearFieldExpansion exp;
    exp.gamma_plus = gp;
    exp.alpha_origin = alpha_origin;
    exp.order = order;
    for (const auto& [e, c] : u)
        if (std::abs(e - gp) > kExpTol) exp.correction_terms.push_back({e, c});

    // start radius: every correction must stay a small fraction of the
    // leading term (series validity), and the first uncancelled residual
    // term must sit below tol (truncation)
    double r_valid = 1.0;
    for (const auto& [e, c] : exp.correction_terms) {
        if (c == 0.0) continue;
        const double frac = series_tol * std::abs(alpha_origin) / std::abs(c);
        r_valid = std::min(r_valid, std::pow(frac, 1.0 / (e - gp)));
    }
    Series res = residual_series();
    const double drop = 1e-14 * std::max(1.0, std::abs(alpha_origin));
    auto it = std::find_if(res.begin(), res.end(),
                           [&](const auto& t) { return std::abs(t.second) > drop; });
    double r_res = 1.0;
    if (it != res.end()) {
        const double target = series_tol * std::max(1.0, std::abs(alpha_origin));
        r_res = std::pow(target / std::abs(it->second), 1.0 / std::max(it->first, 0.5));
    }
    exp.start_radius = std::min(r_valid, r_res);
    return exp;
}

double NearFieldExpansion::eval(double r) const
{
    double v = alpha_origin * std::pow(r, gamma_plus);
    for (const auto& [e, c] : correction_terms) v += c * std::pow(r, e);
    return v;
}

double NearFieldExpansion::eval_derivative(double r) const
{
    double v = alpha_origin * gamma_plus * std::pow(r, gamma_plus - 1.0);
    for (const auto& [e, c] : correction_terms) v += c * e * std::pow(r, e - 1.0);
    return v;
}

double NearFieldExpansion::ode_residual(const NonlinearityModel& model, double p, double q,
                                        double r) const
{
    double d2 = alpha_origin * gamma_plus * (gamma_plus - 1.0) * std::pow(r, gamma_plus - 2.0);
    for (const auto& [e, c] : correction_terms) d2 += c * e * (e - 1.0) * std::pow(r, e - 2.0);
    const double d1 = eval_derivative(r);
    const double u = eval(r);
    return d2 + (p / r) * d1 - (q / (r * r)) * u - model.eval_F(u);
}

namespace {

// Quadratic extrapolation to x = 0 through (x_i, v_i), i = 0..2.
double lagrange0(const double x[3], const double v[3])
{
    const double l0 = (x[1] * x[2]) / ((x[0] - x[1]) * (x[0] - x[2]));
    const double l1 = (x[0] * x[2]) / ((x[1] - x[0]) * (x[1] - x[2]));
    const double l2 = (x[0] * x[1]) / ((x[2] - x[0]) * (x[2] - x[1]));
    return l0 * v[0] + l1 * v[1] + l2 * v[2];
}

// Extrapolation to r = 0 of v(r) = a + c1 r^2 + c2 r^4 + c3 r^6 through four
// samples (Gaussian elimination on the Vandermonde system in x = r^2). The
// integer-step basis contains the correction ladders of all polynomial
// models at gamma+ = 2 and of the generic manufactured profiles.
double ladder0(const double r[4], const double v[4])
{
    double m[4][5];
    for (int k = 0; k < 4; ++k) {
        const double x = r[k] * r[k];
        m[k][0] = 1.0;
        m[k][1] = x;
        m[k][2] = x * x;
        m[k][3] = x * x * x;
        m[k][4] = v[k];
    }
    for (int col = 0; col < 4; ++col) {
        int piv = col;
        for (int k = col + 1; k < 4; ++k)
            if (std::abs(m[k][col]) > std::abs(m[piv][col])) piv = k;
        for (int j = 0; j < 5; ++j) std::swap(m[col][j], m[piv][j]);
        for (int k = 0; k < 4; ++k) {
            if (k == col || m[col][col] == 0.0) continue;
            const double f = m[k][col] / m[col][col];
            for (int j = 0; j < 5; ++j) m[k][j] -= f * m[col][j];
        }
    }
    return m[0][4] / m[0][0];
}

}  // namespace

double extract_alpha(const ProfileSolution& sol, double tol, double* raw_ratio)
{
    const auto& r = sol.grid.nodes;
    const auto& u = sol.values;
    const std::size_t n = r.size();
    if (n < 8) throw std::invalid_argument("extract_alpha: grid too coarse");
    const double gp = fuchsian_indices(sol.p, sol.q).gamma_plus;
    const double raw = u[0] / std::pow(r[0], gp);
    if (raw_ratio) *raw_ratio = raw;

    auto node_at = [&](double target) {
        auto it = std::lower_bound(r.begin(), r.end(), target);
        std::size_t i = static_cast<std::size_t>(it - r.begin());
        return std::min(i, n - 1);
    };
    // nested radii with the largest spacing the grid span allows (<= 3x)
    const double spacing = std::min(3.0, std::pow(0.5 * r[n - 1] / r[0], 1.0 / 3.0));
    if (!(spacing > 1.05)) throw std::invalid_argument("extract_alpha: grid span too narrow");
    auto extrapolant = [&](std::size_t i0) {
        double x[4], v[4];
        std::size_t prev = i0;
        for (int k = 0; k < 4; ++k) {
            const std::size_t idx = (k == 0) ? i0 : node_at(r[i0] * std::pow(spacing, k));
            if (k > 0 && idx <= prev)
                throw std::invalid_argument("extract_alpha: grid does not resolve the origin region");
            prev = idx;
            x[k] = r[idx];
            v[k] = u[idx] / std::pow(r[idx], gp);
        }
        return ladder0(x, v);
    };
    const double a0 = extrapolant(0);
    const double a1 = extrapolant(std::max<std::size_t>(1, node_at(r[0] * 1.3)));
    if (std::abs(a1 - a0) > tol * std::max(std::abs(a0), 1e-30))
        throw NumericalError("extraction-unstable", "alpha extrapolants disagree");
    return a0;
}

double extract_beta(const ProfileSolution& sol, double tol)
{
    const auto& r = sol.grid.nodes;
    const auto& u = sol.values;
    const std::size_t n = r.size();
    if (n < 8) throw std::invalid_argument("extract_beta: grid too coarse");
    const double sp = sol.model.s_plus();

    auto node_at = [&](double target) {
        auto it = std::lower_bound(r.begin(), r.end(), target);
        std::size_t i = static_cast<std::size_t>(it - r.begin());
        return std::min(i, n - 1);
    };
    // Ladder in y = 1/r^2 (the far expansion advances in powers of r^-2).
    auto extrapolant = [&](std::size_t iN) {
        const std::size_t i1 = node_at(r[iN] / 2.0);
        const std::size_t i2 = node_at(r[iN] / 4.0);
        if (!(i2 < i1 && i1 < iN)) throw std::invalid_argument("extract_beta: grid does not resolve the far region");
        double x[3], v[3];
        const std::size_t idx[3] = {iN, i1, i2};
        for (int k = 0; k < 3; ++k) {
            x[k] = 1.0 / (r[idx[k]] * r[idx[k]]);
            v[k] = r[idx[k]] * r[idx[k]] * (sp - u[idx[k]]);
        }
        return lagrange0(x, v);
    };
    const double b0 = extrapolant(n - 1);
    const double b1 = extrapolant(n - 1 - std::max<std::size_t>(1, n / 64));
    if (std::abs(b1 - b0) > tol * std::max(std::abs(b0), 1e-30))
        throw NumericalError("extraction-unstable", "beta extrapolants disagree");
    return b0;
}

}  // namespace hedgehog
