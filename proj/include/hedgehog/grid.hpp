#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "hedgehog/asymptotics.hpp"
#include "hedgehog/nonlinearity.hpp"
#include "hedgehog/numerics.hpp"

namespace hedgehog {

enum class DomainKind { FiniteR, TruncatedInfinite };
enum class GradingKind { Uniform, Geometric };
enum class FarBc { DirichletCorrected, Robin };
enum class OriginBc { ZeroDirichlet, FrobeniusRatio };

struct DomainSpec {
    DomainKind kind = DomainKind::FiniteR;
    double R = 1.0;                      // finite radius, or R_max when set explicitly
    bool r_max_explicit = true;          // false: derive R_max from far-field estimate
    std::optional<FarField> far_field;   // used to size R_max when not explicit
};

struct GradingSpec {
    GradingKind kind = GradingKind::Uniform;
    std::optional<double> ratio;    // geometric step ratio
    std::optional<double> r_first;  // alternative: innermost node
};

/// Strictly increasing positive nodes r_1..r_N. r = 0 is never a node; the
/// boundary value u(0) = 0 enters through the origin closure.
struct RadialGrid {
    std::vector<double> nodes;
    DomainKind domain_kind = DomainKind::FiniteR;
    GradingKind grading = GradingKind::Uniform;
    double ratio = 1.0;  // geometric ratio (1 for uniform)

    std::size_t size() const { return nodes.size(); }
    double R() const { return nodes.back(); }
};

/// Builds a deterministic grid. For truncated-infinite domains without an
/// explicit R_max, picks R_max so that beta / R_max^2 <= 1e-4 s+.
RadialGrid build_grid(const DomainSpec& domain, int N, const GradingSpec& grading);

/// Second-order finite-difference discretization of
///   u'' + (p/r) u' - (q/r^2) u = F(u) + source(r)
/// with one closure row at the far end.
struct DiscreteProblem {
    RadialGrid grid;
    double p = 2.0;
    double q = 6.0;
    NonlinearityModel model;
    FarBc far_bc = FarBc::Robin;
    OriginBc origin_bc = OriginBc::ZeroDirichlet;
    std::optional<double> dirichlet_value;            // overrides the far Dirichlet value
    std::function<double(double)> source;             // manufactured-solution hook
    std::function<double(double)> f_override;         // replaces F(u) pointwise (F == 0 checks)
    std::function<double(double)> f_prime_override;

    DiscreteProblem(RadialGrid g, double p_, double q_, NonlinearityModel m,
                    FarBc far = FarBc::Robin, OriginBc origin = OriginBc::ZeroDirichlet);

    std::size_t size() const { return grid.size(); }
    double far_value() const;  // Dirichlet datum: s+ on finite R, s+ - beta/R^2 corrected

    std::vector<double> residual(std::span<const double> u) const;
    TriDiag jacobian(std::span<const double> u) const;

    double eval_F(double u) const { return f_override ? f_override(u) : model.eval_F(u); }
    double eval_F_prime(double u) const
    {
        return f_prime_override ? f_prime_override(u) : model.eval_F_prime(u);
    }

    // precomputed stencil data
    struct Stencil {
        double w1[3];
        double w2[3];
    };
    const std::vector<Stencil>& stencils() const { return stencils_; }
    double ghost_radius() const { return ghost_radius_; }
    double ghost_factor() const { return ghost_factor_; }  // du0/du1 for the Frobenius closure
    double robin_cN() const { return robin_cN_; }

  private:
    std::vector<Stencil> stencils_;  // rows 0..N-2
    double ghost_radius_ = 0.0;
    double ghost_factor_ = 0.0;
    double robin_cN_ = 0.0;
};

/// Centered first-derivative values on the grid (three-point stencils, the
/// origin ghost and a one-sided stencil at the last node).
std::vector<double> derivative_on_grid(const RadialGrid& grid, std::span<const double> u);

}  // namespace hedgehog
