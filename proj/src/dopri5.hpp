#pragma once

// Internal adaptive Dormand-Prince 5(4) marcher for the two-component
// profile system. Not installed; shared by the shooting paths.

#include <algorithm>
#include <cmath>

#include "hedgehog/numerics.hpp"

namespace hedgehog::detail {

struct Ode2 {
    double u;
    double v;
};

inline constexpr double kDpA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
inline constexpr double kDpC[7] = {0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
inline constexpr double kDpE[7] = {71.0 / 57600,      0.0,        -71.0 / 16695, 71.0 / 1920,
                                   -17253.0 / 339200, 22.0 / 525, -1.0 / 40};

/// Marches y' = rhs(r, y) from r0 to r_end. After every accepted step calls
/// on_step(r, y); returning false stops the march. Returns the final (r, y).
template <class Rhs, class StepCb>
std::pair<double, Ode2> dopri5_march(Rhs&& rhs, double r0, double r_end, Ode2 y, double rtol,
                                     double atol, StepCb&& on_step, double max_step = 0.0)
{
    double r = r0;
    double h = std::max((r_end - r0) * 1e-6, r0 * 0.05);
    int rejects = 0;
    while (r < r_end) {
        h = std::min(h, r_end - r);
        if (max_step > 0.0) h = std::min(h, max_step * (1.0 + r));
        Ode2 k[7];
        k[0] = rhs(r, y);
        for (int s = 1; s < 7; ++s) {
            Ode2 ys = y;
            for (int j = 0; j < s; ++j) {
                ys.u += h * kDpA[s][j] * k[j].u;
                ys.v += h * kDpA[s][j] * k[j].v;
            }
            k[s] = rhs(r + kDpC[s] * h, ys);
        }
        Ode2 ynew = y;
        for (int j = 0; j < 6; ++j) {
            ynew.u += h * kDpA[6][j] * k[j].u;
            ynew.v += h * kDpA[6][j] * k[j].v;
        }
        double eu = 0.0, ev = 0.0;
        for (int j = 0; j < 7; ++j) {
            eu += kDpE[j] * k[j].u;
            ev += kDpE[j] * k[j].v;
        }
        eu *= h;
        ev *= h;
        const double su = atol + rtol * std::max(std::abs(y.u), std::abs(ynew.u));
        const double sv = atol + rtol * std::max(std::abs(y.v), std::abs(ynew.v));
        const double err = std::sqrt(0.5 * ((eu / su) * (eu / su) + (ev / sv) * (ev / sv)));
        if (err <= 1.0) {
            r += h;
            y = ynew;
            rejects = 0;
            if (!on_step(r, y)) return {r, y};
        } else if (++rejects > 60) {
            throw NumericalError("integrator-failure", "step control stalled");
        }
        h *= std::clamp(0.9 * std::pow(std::max(err, 1e-12), -0.2), 0.2, 5.0);
        if (!(h > r * 1e-15)) throw NumericalError("integrator-failure", "step size underflow");
    }
    return {r, y};
}

}  // namespace hedgehog::detail
