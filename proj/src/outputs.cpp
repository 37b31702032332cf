#include "hedgehog/outputs.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

#include <json.hpp>

#include "hedgehog/numerics.hpp"

namespace hedgehog {

namespace {

std::ofstream open_out(const std::string& path)
{
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    return out;
}

std::string num(double v)
{
    return format_shortest(v);
}

}  // namespace

void write_solution_csv(const std::string& path, const ProfileSolution& sol,
                        const DiscreteProblem& dp, bool linear_reference)
{
    auto out = open_out(path);
    const auto du = derivative_on_grid(sol.grid, sol.values);
    const auto res = dp.residual(sol.values);
    const bool positive = sol.is_positive_branch();
    const double gp = fuchsian_indices(sol.p, sol.q).gamma_plus;
    const double sp = sol.model.s_plus();
    const double R = sol.grid.R();

    out << "r,u,u_prime,w,residual";
    if (linear_reference) out << ",u_exact";
    out << "\n";
    for (std::size_t i = 0; i < sol.grid.size(); ++i) {
        const double r = sol.grid.nodes[i];
        const double w = positive ? r * du[i] / sol.values[i] : std::numeric_limits<double>::quiet_NaN();
        out << num(r) << ',' << num(sol.values[i]) << ',' << num(du[i]) << ',' << num(w) << ','
            << num(res[i]);
        if (linear_reference) out << ',' << num(sp * std::pow(r / R, gp));
        out << "\n";
    }
}

void write_summary_json(const std::string& path, const ProfileSolution& sol, const EnergyReport& e)
{
    nlohmann::ordered_json j;
    if (sol.alpha_origin) j["alpha"] = *sol.alpha_origin;
    if (sol.beta) j["beta"] = *sol.beta;
    j["energy"] = e.E;
    j["energy_modified"] = e.E_modified;
    j["residual_norm"] = sol.residual_norm;
    j["method"] = sol.method;
    j["iterations"] = sol.iterations;
    j["s_plus"] = sol.model.s_plus();
    j["p"] = sol.p;
    j["q"] = sol.q;
    j["n"] = sol.grid.size();
    j["R"] = sol.grid.R();
    auto out = open_out(path);
    out << j.dump(2) << "\n";
}

void write_report_files(const std::string& json_path, const std::string& table_path,
                        const VerificationReport& rep)
{
    open_out(json_path) << report_to_json(rep) << "\n";
    open_out(table_path) << report_to_table(rep);
}

void write_scan_csv(const std::string& path, const std::string& parameter,
                    const std::vector<ScanRow>& rows)
{
    auto out = open_out(path);
    out << parameter << ",alpha,beta,energy,lambda_min\n";
    for (const auto& row : rows) {
        out << num(row.value) << ',';
        out << (row.alpha ? num(*row.alpha) : "") << ',';
        out << (row.beta ? num(*row.beta) : "") << ',';
        out << num(row.energy) << ',';
        out << (row.lambda_min ? num(*row.lambda_min) : "");
        out << "\n";
    }
}

void write_branch_csv(const std::string& path, const SolutionSet& set)
{
    auto out = open_out(path);
    out << "branch_id,r,u\n";
    for (std::size_t b = 0; b < set.solutions.size(); ++b) {
        const auto& s = set.solutions[b];
        for (std::size_t i = 0; i < s.grid.size(); ++i)
            out << b << ',' << num(s.grid.nodes[i]) << ',' << num(s.values[i]) << "\n";
    }
}

void write_branch_summary_csv(const std::string& path, const SolutionSet& set,
                              const std::vector<double>& energies)
{
    auto out = open_out(path);
    out << "branch_id,sign_changes,energy,residual_norm,alpha\n";
    for (std::size_t b = 0; b < set.solutions.size(); ++b) {
        const auto& s = set.solutions[b];
        out << b << ',' << set.sign_change_counts[b] << ',' << num(energies[b]) << ','
            << num(s.residual_norm) << ','
            << (s.alpha_origin ? num(*s.alpha_origin) : "") << "\n";
    }
}

void write_qtensor_csv(const std::string& path, const RadialQField& field)
{
    auto out = open_out(path);
    out << "x,y,z,q00,q01,q02,q10,q11,q12,q20,q21,q22\n";
    for (const auto& x : field.sample_points) {
        const QTensor q = field.at(x);
        out << num(x[0]) << ',' << num(x[1]) << ',' << num(x[2]);
        for (double v : q.m) out << ',' << num(v);
        out << "\n";
    }
}

namespace {

struct Box {
    double xmin, xmax, ymin, ymax;
};

Box bounds(const std::vector<PlotCurve>& curves)
{
    Box b{1e300, -1e300, 1e300, -1e300};
    for (const auto& c : curves)
        for (std::size_t i = 0; i < c.x.size(); ++i) {
            if (!std::isfinite(c.x[i]) || !std::isfinite(c.y[i])) continue;
            b.xmin = std::min(b.xmin, c.x[i]);
            b.xmax = std::max(b.xmax, c.x[i]);
            b.ymin = std::min(b.ymin, c.y[i]);
            b.ymax = std::max(b.ymax, c.y[i]);
        }
    if (b.xmin >= b.xmax) b.xmax = b.xmin + 1.0;
    if (b.ymin >= b.ymax) b.ymax = b.ymin + 1.0;
    return b;
}

const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                         "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

void panel(std::ostream& out, const std::vector<PlotCurve>& curves, double x0, double y0, double w,
           double h, const char* title)
{
    const Box b = bounds(curves);
    auto sx = [&](double x) { return x0 + (x - b.xmin) / (b.xmax - b.xmin) * w; };
    auto sy = [&](double y) { return y0 + h - (y - b.ymin) / (b.ymax - b.ymin) * h; };
    out << "<rect x=\"" << x0 << "\" y=\"" << y0 << "\" width=\"" << w << "\" height=\"" << h
        << "\" fill=\"none\" stroke=\"#333\"/>\n";
    out << "<text x=\"" << x0 + 6 << "\" y=\"" << y0 + 16 << "\" font-size=\"13\">" << title
        << "</text>\n";
    int ci = 0;
    double ly = y0 + 32;
    for (const auto& c : curves) {
        const char* color = kColors[ci++ % 8];
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.2\" points=\"";
        for (std::size_t i = 0; i < c.x.size(); ++i) {
            if (!std::isfinite(c.y[i])) continue;
            out << sx(c.x[i]) << ',' << sy(c.y[i]) << ' ';
        }
        out << "\"/>\n";
        out << "<text x=\"" << x0 + w - 150 << "\" y=\"" << ly << "\" font-size=\"11\" fill=\""
            << color << "\">" << c.label << "</text>\n";
        ly += 14;
    }
    for (double fx : {b.xmin, 0.5 * (b.xmin + b.xmax), b.xmax})
        out << "<text x=\"" << sx(fx) - 8 << "\" y=\"" << y0 + h + 14 << "\" font-size=\"10\">"
            << format_shortest(fx) << "</text>\n";
    for (double fy : {b.ymin, 0.5 * (b.ymin + b.ymax), b.ymax})
        out << "<text x=\"" << x0 - 44 << "\" y=\"" << sy(fy) + 4 << "\" font-size=\"10\">"
            << format_shortest(fy) << "</text>\n";
}

}  // namespace

void write_plot_svg(const std::string& path, const std::vector<PlotCurve>& upper,
                    const std::vector<PlotCurve>& lower)
{
    auto out = open_out(path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"760\" height=\"640\" "
           "viewBox=\"0 0 760 640\">\n";
    out << "<rect width=\"760\" height=\"640\" fill=\"white\"/>\n";
    panel(out, upper, 60, 20, 660, 270, "u(r) and bounds");
    if (!lower.empty()) panel(out, lower, 60, 340, 660, 260, "w(r) = r u'/u");
    out << "</svg>\n";
}

void write_plot_data(const std::string& path, const std::vector<PlotCurve>& curves)
{
    auto out = open_out(path);
    for (const auto& c : curves) {
        out << "# " << c.label << "\n";
        for (std::size_t i = 0; i < c.x.size(); ++i)
            out << num(c.x[i]) << ' ' << num(c.y[i]) << "\n";
        out << "\n";
    }
}

}  // namespace hedgehog
