#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hedgehog/energy.hpp"
#include "hedgehog/qtensor.hpp"
#include "hedgehog/signchange.hpp"
#include "hedgehog/solve.hpp"
#include "hedgehog/verify.hpp"

namespace hedgehog {

/// CSV columns: r,u,u_prime,w,residual (+u_exact under a linear override).
void write_solution_csv(const std::string& path, const ProfileSolution& sol,
                        const DiscreteProblem& dp, bool linear_reference = false);

void write_summary_json(const std::string& path, const ProfileSolution& sol,
                        const EnergyReport& e);

void write_report_files(const std::string& json_path, const std::string& table_path,
                        const VerificationReport& rep);

struct ScanRow {
    double value;
    std::optional<double> alpha;
    std::optional<double> beta;
    double energy;
    std::optional<double> lambda_min;
};
void write_scan_csv(const std::string& path, const std::string& parameter,
                    const std::vector<ScanRow>& rows);

/// Long format: branch_id,r,u per node, plus a per-branch summary CSV.
void write_branch_csv(const std::string& path, const SolutionSet& set);
void write_branch_summary_csv(const std::string& path, const SolutionSet& set,
                              const std::vector<double>& energies);

/// Q samples as x,y,z,q00..q22 row-major 9-tuples.
void write_qtensor_csv(const std::string& path, const RadialQField& field);

struct PlotCurve {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

/// Two-panel self-contained SVG (profiles + overlays on top, w(r) below)
/// and a plain-text data table next to it.
void write_plot_svg(const std::string& path, const std::vector<PlotCurve>& upper,
                    const std::vector<PlotCurve>& lower);
void write_plot_data(const std::string& path, const std::vector<PlotCurve>& curves);

}  // namespace hedgehog
