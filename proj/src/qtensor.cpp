#include "hedgehog/qtensor.hpp"

#include <cmath>
#include <stdexcept>

#include "hedgehog/numerics.hpp"

namespace hedgehog {

namespace {

Mat3 matmul(const Mat3& a, const Mat3& b)
{
    Mat3 c{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double s = 0.0;
            for (int k = 0; k < 3; ++k) s += a[3 * i + k] * b[3 * k + j];
            c[3 * i + j] = s;
        }
    return c;
}

Mat3 transpose(const Mat3& a)
{
    Mat3 t{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) t[3 * i + j] = a[3 * j + i];
    return t;
}

double vec_norm(const Vec3& x)
{
    return std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
}

}  // namespace

double QTensor::norm2() const
{
    double s = 0.0;
    for (double v : m) s += v * v;  // symmetric: tr(Q^2) = sum of squares
    return s;
}

double QTensor::trace_cubed() const
{
    const Mat3 q2 = matmul(m, m);
    double s = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) s += q2[3 * i + k] * m[3 * k + i];
    return s;
}

double QTensor::max_abs() const
{
    double s = 0.0;
    for (double v : m) s = std::max(s, std::abs(v));
    return s;
}

bool QTensor::in_s0(double rel_tol) const
{
    const double scale = std::max(max_abs(), 1e-300);
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (std::abs((*this)(i, j) - (*this)(j, i)) > rel_tol * scale) return false;
    return std::abs(trace()) <= rel_tol * scale;
}

QTensor hbar(const Vec3& x)
{
    const double n = vec_norm(x);
    if (!(n > 0.0)) throw std::invalid_argument("hbar: zero vector");
    const Vec3 u{x[0] / n, x[1] / n, x[2] / n};
    QTensor q;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) q(i, j) = u[i] * u[j] - (i == j ? 1.0 / 3.0 : 0.0);
    return q;
}

QTensor lift(double u_value, const Vec3& x)
{
    QTensor q = hbar(x);
    for (double& v : q.m) v *= u_value;
    return q;
}

double extract_u(const QTensor& q, const Vec3& x)
{
    const QTensor h = hbar(x);
    double tr = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) tr += q(i, k) * h(k, i);
    return 1.5 * tr;
}

double bulk_density(const QTensor& q, const PhysicalParams& params)
{
    const double n2 = q.norm2();
    return -0.5 * params.a2 * n2 - (params.b2 / 3.0) * q.trace_cubed() +
           0.25 * params.c2 * n2 * n2;
}

QTensor RadialQField::at(const Vec3& x) const
{
    if (!profile) throw std::invalid_argument("RadialQField: no profile attached");
    const double r = vec_norm(x);
    if (!(r > 0.0)) throw std::invalid_argument("RadialQField: zero vector");
    static thread_local const ProfileSolution* cached = nullptr;
    static thread_local PchipInterpolant interp;
    if (cached != profile) {
        interp = PchipInterpolant(profile->grid.nodes, profile->values);
        cached = profile;
    }
    double u;
    const double r1 = profile->grid.nodes.front();
    if (r < r1) {
        // Frobenius continuation below the innermost node
        const double gp = fuchsian_indices(profile->p, profile->q).gamma_plus;
        u = profile->values.front() * std::pow(r / r1, gp);
    } else if (r > profile->grid.R()) {
        throw std::invalid_argument("RadialQField: sample point outside the profile span");
    } else {
        u = interp(r);
    }
    return lift(u, x);
}

Mat3 rotation_about_axis(const Vec3& axis, double angle)
{
    const double n = vec_norm(axis);
    if (!(n > 0.0)) throw std::invalid_argument("rotation_about_axis: zero axis");
    const double ux = axis[0] / n, uy = axis[1] / n, uz = axis[2] / n;
    const double c = std::cos(angle), s = std::sin(angle), one = 1.0 - c;
    return {c + ux * ux * one,      ux * uy * one - uz * s, ux * uz * one + uy * s,
            uy * ux * one + uz * s, c + uy * uy * one,      uy * uz * one - ux * s,
            uz * ux * one - uy * s, uz * uy * one + ux * s, c + uz * uz * one};
}

CheckResult check_radial_symmetry(const RadialQField& field, std::span<const Mat3> rotations)
{
    for (const auto& rot : rotations) {
        const Mat3 rtr = matmul(transpose(rot), rot);
        double dev = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                dev = std::max(dev, std::abs(rtr[3 * i + j] - (i == j ? 1.0 : 0.0)));
        const double det =
            rot[0] * (rot[4] * rot[8] - rot[5] * rot[7]) -
            rot[1] * (rot[3] * rot[8] - rot[5] * rot[6]) +
            rot[2] * (rot[3] * rot[7] - rot[4] * rot[6]);
        if (dev > 1e-12 || std::abs(det - 1.0) > 1e-12)
            throw std::invalid_argument("check_radial_symmetry: input is not a rotation");
    }

    const double sp = field.profile->model.s_plus();
    CheckResult c;
    c.name = "radial-symmetry";
    c.tolerance_used = 0.0;
    double worst = -std::numeric_limits<double>::infinity();
    double worst_r = 0.0;
    for (const auto& x : field.sample_points) {
        const QTensor qx = field.at(x);
        for (const auto& rot : rotations) {
            const Vec3 rx{rot[0] * x[0] + rot[1] * x[1] + rot[2] * x[2],
                          rot[3] * x[0] + rot[4] * x[1] + rot[5] * x[2],
                          rot[6] * x[0] + rot[7] * x[1] + rot[8] * x[2]};
            const QTensor qrx = field.at(rx);
            Mat3 conj = matmul(matmul(rot, qx.m), transpose(rot));
            double dev = 0.0;
            for (int k = 0; k < 9; ++k) dev = std::max(dev, std::abs(qrx.m[k] - conj[k]));
            if (dev > worst) {
                worst = dev;
                worst_r = vec_norm(x);
            }
        }
    }
    c.worst_margin = 1e-12 * sp - worst;  // budget minus deviation
    c.worst_location = worst_r;
    c.pass = c.worst_margin >= 0.0;
    return c;
}

}  // namespace hedgehog
