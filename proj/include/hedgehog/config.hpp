#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hedgehog/grid.hpp"
#include "hedgehog/solve.hpp"

namespace hedgehog {

struct ModelSpec {
    ModelKind kind = ModelKind::PhysicalCubic;
    PhysicalParams physical;                 // physical-cubic
    std::vector<double> coefficients;        // custom-polynomial
    double s_plus = 1.0;                     // custom-polynomial
    std::optional<double> s_minus;

    NonlinearityModel build() const;
};

struct ScanSpec {
    std::string parameter = "a2";
    std::vector<double> values;
};

struct SignChangeSpec {
    std::string regime = "quartic";  // quartic | pneg
    int attempts = 24;
    double alpha_lo = -2.0;
    double alpha_hi = 2.0;
    int samples = 240;
};

struct RunConfig {
    int schema = 1;
    // problem
    double p = 2.0;
    double q = 6.0;
    DomainKind domain_kind = DomainKind::TruncatedInfinite;
    double R = 0.0;          // 0 with truncated-infinite: size from the far field
    bool auto_r_max = true;  // ignored for finite domains
    ModelSpec model;
    bool linear_override = false;
    // solver
    std::string method = "newton";  // newton | shoot | energy-descent
    int n = 2000;
    GradingKind grading = GradingKind::Geometric;
    std::optional<double> r_first;
    double tol_factor = 1e-10;
    int max_iter = 100;
    FarBc far_bc = FarBc::Robin;
    OriginBc origin_bc = OriginBc::ZeroDirichlet;
    // outputs
    std::string out_dir = "out";
    std::vector<std::string> formats = {"csv", "json", "svg"};
    std::uint64_t seed = 12345;
    // optional command sections
    std::optional<ScanSpec> scan;
    std::optional<SignChangeSpec> signchange;

    std::string to_json() const;
    static RunConfig from_json(const std::string& text);
    static RunConfig from_file(const std::string& path);
    void save(const std::string& path) const;

    DiscreteProblem build_problem() const;
};

/// Shipped presets: physical-a0, physical-a1, pneg-multi, quartic-mp.
RunConfig preset(const std::string& name);

}  // namespace hedgehog
