#include "hedgehog/numerics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstring>

namespace hedgehog {

std::vector<double> fd_weights(std::span<const double> x, double x0, int m)
{
    const int n = static_cast<int>(x.size());
    if (n < m + 1) throw std::invalid_argument("fd_weights: need at least m+1 nodes");
    // Fornberg, Math. Comp. 51 (1988). c[j][k] = weight of node j for the
    // k-th derivative after processing nodes 0..i.
    std::vector<std::vector<double>> c(n, std::vector<double>(m + 1, 0.0));
    double c1 = 1.0;
    double c4 = x[0] - x0;
    c[0][0] = 1.0;
    for (int i = 1; i < n; ++i) {
        const int mn = std::min(i, m);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = x[i] - x0;
        for (int j = 0; j < i; ++j) {
            const double c3 = x[i] - x[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (int k = mn; k >= 1; --k)
                c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    std::vector<double> w(n);
    for (int j = 0; j < n; ++j) w[j] = c[j][m];
    return w;
}

std::vector<double> TriDiag::multiply(std::span<const double> x) const
{
    const std::size_t n = size();
    std::vector<double> y(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double s = diag[i] * x[i];
        if (i > 0) s += lower[i] * x[i - 1];
        if (i + 1 < n) s += upper[i] * x[i + 1];
        y[i] = s;
    }
    return y;
}

std::vector<double> solve_tridiag(const TriDiag& t, std::span<const double> b)
{
    const std::size_t n = t.size();
    if (b.size() != n) throw std::invalid_argument("solve_tridiag: size mismatch");
    if (n == 0) return {};
    // Working copies; d2 holds the pivoting fill-in two above the diagonal.
    std::vector<double> dl(n), d(n), du(n), d2(n, 0.0), x(b.begin(), b.end());
    for (std::size_t i = 0; i < n; ++i) {
        dl[i] = t.lower[i];
        d[i] = t.diag[i];
        du[i] = t.upper[i];
    }
    std::vector<int> swapped(n, 0);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (std::abs(dl[k + 1]) > std::abs(d[k])) {
            std::swap(d[k], dl[k + 1]);
            std::swap(du[k], d[k + 1]);
            if (k + 2 < n) d2[k] = du[k + 1], du[k + 1] = 0.0;
            std::swap(x[k], x[k + 1]);
            swapped[k] = 1;
        }
        if (d[k] == 0.0) throw NumericalError("jacobian-singular", "zero pivot in tridiagonal solve");
        const double m = dl[k + 1] / d[k];
        d[k + 1] -= m * du[k];
        if (k + 2 < n) du[k + 1] -= m * d2[k];
        x[k + 1] -= m * x[k];
    }
    if (d[n - 1] == 0.0) throw NumericalError("jacobian-singular", "zero pivot in tridiagonal solve");
    for (std::size_t ii = n; ii-- > 0;) {
        double s = x[ii];
        if (ii + 1 < n) s -= du[ii] * x[ii + 1];
        if (ii + 2 < n) s -= d2[ii] * x[ii + 2];
        x[ii] = s / d[ii];
    }
    return x;
}

std::vector<double> solve_tridiag_rank1(const TriDiag& t, std::span<const double> u,
                                        std::span<const double> v, std::span<const double> b)
{
    std::vector<double> y = solve_tridiag(t, b);
    std::vector<double> z = solve_tridiag(t, u);
    double vy = 0.0, vz = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        vy += v[i] * y[i];
        vz += v[i] * z[i];
    }
    const double denom = 1.0 + vz;
    if (denom == 0.0) throw NumericalError("jacobian-singular", "rank-1 update singular");
    const double f = vy / denom;
    for (std::size_t i = 0; i < y.size(); ++i) y[i] -= f * z[i];
    return y;
}

PchipInterpolant::PchipInterpolant(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y))
{
    const std::size_t n = x_.size();
    if (n < 2 || y_.size() != n) throw std::invalid_argument("pchip: need >=2 matching points");
    for (std::size_t i = 0; i + 1 < n; ++i)
        if (!(x_[i] < x_[i + 1])) throw std::invalid_argument("pchip: x not strictly increasing");
    m_.assign(n, 0.0);
    std::vector<double> h(n - 1), del(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        h[i] = x_[i + 1] - x_[i];
        del[i] = (y_[i + 1] - y_[i]) / h[i];
    }
    if (n == 2) {
        m_[0] = m_[1] = del[0];
        return;
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (del[i - 1] * del[i] <= 0.0) {
            m_[i] = 0.0;
        } else {
            const double w1 = 2.0 * h[i] + h[i - 1];
            const double w2 = h[i] + 2.0 * h[i - 1];
            m_[i] = (w1 + w2) / (w1 / del[i - 1] + w2 / del[i]);
        }
    }
    auto endpoint = [](double h0, double h1, double d0, double d1) {
        double m = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
        if (m * d0 <= 0.0)
            m = 0.0;
        else if (d0 * d1 < 0.0 && std::abs(m) > 3.0 * std::abs(d0))
            m = 3.0 * d0;
        return m;
    };
    m_[0] = endpoint(h[0], h[1], del[0], del[1]);
    m_[n - 1] = endpoint(h[n - 2], h[n - 3], del[n - 2], del[n - 3]);
}

std::size_t PchipInterpolant::cell(double x) const
{
    auto it = std::upper_bound(x_.begin(), x_.end(), x);
    std::size_t i = (it == x_.begin()) ? 0 : static_cast<std::size_t>(it - x_.begin()) - 1;
    if (i + 1 >= x_.size()) i = x_.size() - 2;
    return i;
}

double PchipInterpolant::operator()(double x) const
{
    const std::size_t i = cell(x);
    const double h = x_[i + 1] - x_[i];
    const double t = (x - x_[i]) / h;
    const double t2 = t * t, t3 = t2 * t;
    const double h00 = 2 * t3 - 3 * t2 + 1;
    const double h10 = t3 - 2 * t2 + t;
    const double h01 = -2 * t3 + 3 * t2;
    const double h11 = t3 - t2;
    return h00 * y_[i] + h * h10 * m_[i] + h01 * y_[i + 1] + h * h11 * m_[i + 1];
}

double PchipInterpolant::derivative(double x) const
{
    const std::size_t i = cell(x);
    const double h = x_[i + 1] - x_[i];
    const double t = (x - x_[i]) / h;
    const double t2 = t * t;
    const double d00 = (6 * t2 - 6 * t) / h;
    const double d10 = 3 * t2 - 4 * t + 1;
    const double d01 = (-6 * t2 + 6 * t) / h;
    const double d11 = 3 * t2 - 2 * t;
    return d00 * y_[i] + d10 * m_[i] + d01 * y_[i + 1] + d11 * m_[i + 1];
}

std::string format_shortest(double v)
{
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

}  // namespace hedgehog
