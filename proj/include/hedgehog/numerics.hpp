#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hedgehog {

/// Numerical failure that is not a caller error (stalls, singular systems,
/// resonances). Carries a short machine-readable kind, e.g. "no-convergence".
class NumericalError : public std::runtime_error {
  public:
    NumericalError(std::string kind, const std::string& what)
        : std::runtime_error(kind + ": " + what)
        , kind_(std::move(kind))
    {
    }
    const std::string& kind() const { return kind_; }

  private:
    std::string kind_;
};

/// Finite-difference weights for the m-th derivative at x0 from the nodes x
/// (Fornberg's recursion). Exact for polynomials of degree < x.size().
std::vector<double> fd_weights(std::span<const double> x, double x0, int m);

/// Tridiagonal matrix in band storage. Row i couples (i-1, i, i+1).
struct TriDiag {
    std::vector<double> lower;  // size n, lower[0] unused
    std::vector<double> diag;   // size n
    std::vector<double> upper;  // size n, upper[n-1] unused

    explicit TriDiag(std::size_t n = 0) : lower(n, 0.0), diag(n, 0.0), upper(n, 0.0) {}
    std::size_t size() const { return diag.size(); }

    std::vector<double> multiply(std::span<const double> x) const;
};

/// Solves T x = b by LU with partial pivoting (fill limited to one extra
/// superdiagonal). Throws NumericalError("jacobian-singular") on breakdown.
std::vector<double> solve_tridiag(const TriDiag& t, std::span<const double> b);

/// Solves (T + u v^T) x = b via Sherman-Morrison on top of solve_tridiag.
std::vector<double> solve_tridiag_rank1(const TriDiag& t, std::span<const double> u,
                                        std::span<const double> v, std::span<const double> b);

/// Monotone cubic interpolant (Fritsch-Carlson slopes). Preserves
/// monotonicity of the data on each interval.
class PchipInterpolant {
  public:
    PchipInterpolant() = default;
    PchipInterpolant(std::vector<double> x, std::vector<double> y);

    double operator()(double x) const;
    double derivative(double x) const;

    double x_min() const { return x_.front(); }
    double x_max() const { return x_.back(); }

  private:
    std::size_t cell(double x) const;
    std::vector<double> x_, y_, m_;
};

/// Shortest decimal representation that round-trips to the same double.
std::string format_shortest(double v);

}  // namespace hedgehog
