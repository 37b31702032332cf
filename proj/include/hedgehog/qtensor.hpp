#pragma once

#include <array>
#include <span>
#include <vector>

#include "hedgehog/nonlinearity.hpp"
#include "hedgehog/solve.hpp"
#include "hedgehog/verify.hpp"

namespace hedgehog {

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<double, 9>;  // row-major

/// Symmetric traceless 3x3 tensor.
struct QTensor {
    Mat3 m{};

    double operator()(int i, int j) const { return m[3 * i + j]; }
    double& operator()(int i, int j) { return m[3 * i + j]; }

    double trace() const { return m[0] + m[4] + m[8]; }
    double norm2() const;           // |Q|^2 = tr(Q^2)
    double trace_cubed() const;     // tr(Q^3)
    double max_abs() const;
    bool in_s0(double rel_tol = 1e-14) const;  // symmetric + traceless
};

/// H(x) = x x^T / |x|^2 - Id/3; eigenvalues {-1/3, -1/3, 2/3}.
QTensor hbar(const Vec3& x);

QTensor lift(double u_value, const Vec3& x);
/// u = (3/2) tr(Q H(x)); inverse of lift up to roundoff.
double extract_u(const QTensor& q, const Vec3& x);

/// f_bulk(Q) = -(a2/2)|Q|^2 - (b2/3) tr(Q^3) + (c2/4)|Q|^4.
double bulk_density(const QTensor& q, const PhysicalParams& params);

/// Radially symmetric field Q(x) = u(|x|) H(x) sampled at points.
struct RadialQField {
    const ProfileSolution* profile = nullptr;
    std::vector<Vec3> sample_points;

    QTensor at(const Vec3& x) const;
};

/// Validates det = +1 orthogonality, then checks Q(Rx) = R Q(x) R^T over all
/// samples and rotations to 1e-12 s+ (profile interpolation at |x|).
CheckResult check_radial_symmetry(const RadialQField& field, std::span<const Mat3> rotations);

Mat3 rotation_about_axis(const Vec3& axis, double angle);

}  // namespace hedgehog
