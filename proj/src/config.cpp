#include "hedgehog/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace hedgehog {

using nlohmann::ordered_json;

NonlinearityModel ModelSpec::build() const
{
    switch (kind) {
        case ModelKind::PhysicalCubic: return NonlinearityModel::physical(physical);
        case ModelKind::QuarticMp: return NonlinearityModel::quartic_mp();
        case ModelKind::CustomPolynomial:
            return NonlinearityModel::custom(coefficients, s_plus, s_minus);
    }
    throw std::invalid_argument("ModelSpec: bad kind");
}

namespace {

std::string domain_to_string(DomainKind k)
{
    return k == DomainKind::FiniteR ? "finite" : "truncated-infinite";
}
DomainKind domain_from_string(const std::string& s)
{
    if (s == "finite") return DomainKind::FiniteR;
    if (s == "truncated-infinite") return DomainKind::TruncatedInfinite;
    throw std::invalid_argument("config: unknown domain kind '" + s + "'");
}
std::string grading_to_string(GradingKind k)
{
    return k == GradingKind::Uniform ? "uniform" : "geometric";
}
GradingKind grading_from_string(const std::string& s)
{
    if (s == "uniform") return GradingKind::Uniform;
    if (s == "geometric") return GradingKind::Geometric;
    throw std::invalid_argument("config: unknown grading '" + s + "'");
}
std::string farbc_to_string(FarBc b)
{
    return b == FarBc::Robin ? "robin" : "dirichlet-corrected";
}
FarBc farbc_from_string(const std::string& s)
{
    if (s == "robin") return FarBc::Robin;
    if (s == "dirichlet-corrected") return FarBc::DirichletCorrected;
    throw std::invalid_argument("config: unknown far_bc '" + s + "'");
}
std::string originbc_to_string(OriginBc b)
{
    return b == OriginBc::ZeroDirichlet ? "zero-dirichlet" : "frobenius-ratio";
}
OriginBc originbc_from_string(const std::string& s)
{
    if (s == "zero-dirichlet") return OriginBc::ZeroDirichlet;
    if (s == "frobenius-ratio") return OriginBc::FrobeniusRatio;
    throw std::invalid_argument("config: unknown origin_bc '" + s + "'");
}

template <class T>
T require(const ordered_json& j, const char* key)
{
    if (!j.contains(key))
        throw std::invalid_argument(std::string("config: missing field '") + key + "'");
    return j.at(key).get<T>();
}

}  // namespace

std::string RunConfig::to_json() const
{
    ordered_json j;
    j["schema"] = schema;
    ordered_json problem;
    problem["p"] = p;
    problem["q"] = q;
    ordered_json dom;
    dom["kind"] = domain_to_string(domain_kind);
    dom["R"] = R;
    dom["auto_r_max"] = auto_r_max;
    problem["domain"] = dom;
    ordered_json m;
    m["kind"] = to_string(model.kind);
    if (model.kind == ModelKind::PhysicalCubic) {
        m["a2"] = model.physical.a2;
        m["b2"] = model.physical.b2;
        m["c2"] = model.physical.c2;
        m["elastic_rescale"] = model.physical.elastic_rescale;
    } else if (model.kind == ModelKind::CustomPolynomial) {
        m["coefficients"] = model.coefficients;
        m["s_plus"] = model.s_plus;
        if (model.s_minus) m["s_minus"] = *model.s_minus;
    }
    problem["model"] = m;
    problem["linear_override"] = linear_override;
    j["problem"] = problem;

    ordered_json solver;
    solver["method"] = method;
    solver["n"] = n;
    ordered_json grad;
    grad["kind"] = grading_to_string(grading);
    if (r_first) grad["r_first"] = *r_first;
    solver["grading"] = grad;
    solver["tol_factor"] = tol_factor;
    solver["max_iter"] = max_iter;
    solver["far_bc"] = farbc_to_string(far_bc);
    solver["origin_bc"] = originbc_to_string(origin_bc);
    j["solver"] = solver;

    ordered_json outputs;
    outputs["dir"] = out_dir;
    outputs["formats"] = formats;
    j["outputs"] = outputs;
    j["seed"] = seed;

    if (scan) {
        ordered_json s;
        s["parameter"] = scan->parameter;
        s["values"] = scan->values;
        j["scan"] = s;
    }
    if (signchange) {
        ordered_json s;
        s["regime"] = signchange->regime;
        s["attempts"] = signchange->attempts;
        s["alpha_range"] = {signchange->alpha_lo, signchange->alpha_hi};
        s["samples"] = signchange->samples;
        j["signchange"] = s;
    }
    return j.dump(2) + "\n";
}

RunConfig RunConfig::from_json(const std::string& text)
{
    ordered_json j = ordered_json::parse(text);
    RunConfig c;
    c.schema = require<int>(j, "schema");
    if (c.schema != 1) throw std::invalid_argument("config: unsupported schema version");
    const auto problem = j.at("problem");
    c.p = require<double>(problem, "p");
    c.q = require<double>(problem, "q");
    const auto dom = problem.at("domain");
    c.domain_kind = domain_from_string(require<std::string>(dom, "kind"));
    c.R = require<double>(dom, "R");
    c.auto_r_max = dom.value("auto_r_max", false);
    const auto m = problem.at("model");
    c.model.kind = model_kind_from_string(require<std::string>(m, "kind"));
    if (c.model.kind == ModelKind::PhysicalCubic) {
        c.model.physical.a2 = require<double>(m, "a2");
        c.model.physical.b2 = require<double>(m, "b2");
        c.model.physical.c2 = require<double>(m, "c2");
        c.model.physical.elastic_rescale = m.value("elastic_rescale", 1.0);
    } else if (c.model.kind == ModelKind::CustomPolynomial) {
        c.model.coefficients = require<std::vector<double>>(m, "coefficients");
        c.model.s_plus = require<double>(m, "s_plus");
        if (m.contains("s_minus")) c.model.s_minus = m.at("s_minus").get<double>();
    }
    c.linear_override = problem.value("linear_override", false);

    const auto solver = j.at("solver");
    c.method = require<std::string>(solver, "method");
    c.n = require<int>(solver, "n");
    const auto grad = solver.at("grading");
    c.grading = grading_from_string(require<std::string>(grad, "kind"));
    if (grad.contains("r_first")) c.r_first = grad.at("r_first").get<double>();
    c.tol_factor = solver.value("tol_factor", 1e-10);
    c.max_iter = solver.value("max_iter", 100);
    c.far_bc = farbc_from_string(solver.value("far_bc", std::string("robin")));
    c.origin_bc = originbc_from_string(solver.value("origin_bc", std::string("zero-dirichlet")));

    const auto outputs = j.at("outputs");
    c.out_dir = require<std::string>(outputs, "dir");
    c.formats = outputs.value("formats", std::vector<std::string>{"csv", "json", "svg"});
    c.seed = j.value("seed", std::uint64_t{12345});

    if (j.contains("scan")) {
        ScanSpec s;
        s.parameter = require<std::string>(j.at("scan"), "parameter");
        s.values = require<std::vector<double>>(j.at("scan"), "values");
        c.scan = s;
    }
    if (j.contains("signchange")) {
        SignChangeSpec s;
        const auto sj = j.at("signchange");
        s.regime = require<std::string>(sj, "regime");
        s.attempts = sj.value("attempts", 24);
        if (sj.contains("alpha_range")) {
            s.alpha_lo = sj.at("alpha_range").at(0).get<double>();
            s.alpha_hi = sj.at("alpha_range").at(1).get<double>();
        }
        s.samples = sj.value("samples", 240);
        c.signchange = s;
    }
    return c;
}

RunConfig RunConfig::from_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json(ss.str());
}

void RunConfig::save(const std::string& path) const
{
    std::ofstream out(path);
    if (!out) throw std::runtime_error("config: cannot write '" + path + "'");
    out << to_json();
}

DiscreteProblem RunConfig::build_problem() const
{
    NonlinearityModel m =
        linear_override ? NonlinearityModel::linear_zero(model.build().s_plus()) : model.build();

    DomainSpec dom;
    dom.kind = domain_kind;
    dom.R = R;
    dom.r_max_explicit = !(domain_kind == DomainKind::TruncatedInfinite && auto_r_max);
    if (!dom.r_max_explicit) dom.far_field = far_field_beta(m, q);

    GradingSpec grad;
    grad.kind = grading;
    grad.r_first = r_first;

    RadialGrid grid = build_grid(dom, n, grad);
    FarBc fb = far_bc;
    if (domain_kind == DomainKind::FiniteR) fb = FarBc::DirichletCorrected;
    return DiscreteProblem(std::move(grid), p, q, std::move(m), fb, origin_bc);
}

RunConfig preset(const std::string& name)
{
    RunConfig c;
    if (name == "physical-a0") {
        c.model.kind = ModelKind::PhysicalCubic;
        c.model.physical = {0.0, 1.0, 1.0, 1.0};
    } else if (name == "physical-a1") {
        c.model.kind = ModelKind::PhysicalCubic;
        c.model.physical = {1.0, 1.0, 1.0, 1.0};
    } else if (name == "pneg-multi") {
        c.p = -1.0;
        c.q = 3.0;
        c.domain_kind = DomainKind::FiniteR;
        c.R = 10.0;
        c.auto_r_max = false;
        c.model.kind = ModelKind::PhysicalCubic;  // F = -u + (2/3) u^3
        c.model.physical = {1.0, 0.0, 1.0, 1.0};
        c.grading = GradingKind::Uniform;
        c.far_bc = FarBc::DirichletCorrected;
        SignChangeSpec s;
        s.regime = "pneg";
        s.alpha_lo = -10.0;
        s.alpha_hi = 10.0;
        s.samples = 240;
        c.signchange = s;
    } else if (name == "quartic-mp") {
        c.domain_kind = DomainKind::FiniteR;
        c.R = 5.0;
        c.auto_r_max = false;
        c.model.kind = ModelKind::QuarticMp;
        c.n = 1200;
        c.grading = GradingKind::Uniform;
        c.far_bc = FarBc::DirichletCorrected;
        SignChangeSpec s;
        s.regime = "quartic";
        s.attempts = 30;
        c.signchange = s;
    } else {
        throw std::invalid_argument("unknown preset '" + name + "'");
    }
    return c;
}

}  // namespace hedgehog
