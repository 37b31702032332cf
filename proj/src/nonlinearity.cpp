#include "hedgehog/nonlinearity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hedgehog {

namespace {

double horner(const std::vector<double>& c, double t)
{
    double v = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) v = v * t + c[i];
    return v;
}

std::vector<double> derive(const std::vector<double>& c)
{
    std::vector<double> d;
    for (std::size_t k = 1; k < c.size(); ++k) d.push_back(c[k] * static_cast<double>(k));
    if (d.empty()) d.push_back(0.0);
    return d;
}

std::vector<double> antiderive_twice_scaled(const std::vector<double>& c)
{
    // h = 2 * int_0^t F
    std::vector<double> h(c.size() + 1, 0.0);
    for (std::size_t k = 0; k < c.size(); ++k) h[k + 1] = 2.0 * c[k] / static_cast<double>(k + 1);
    return h;
}

double max_abs_coeff(const std::vector<double>& c)
{
    double m = 0.0;
    for (double v : c) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace

std::string to_string(ModelKind k)
{
    switch (k) {
        case ModelKind::PhysicalCubic: return "physical-cubic";
        case ModelKind::QuarticMp: return "quartic-mp";
        case ModelKind::CustomPolynomial: return "custom-polynomial";
    }
    return "custom-polynomial";
}

ModelKind model_kind_from_string(const std::string& s)
{
    if (s == "physical-cubic") return ModelKind::PhysicalCubic;
    if (s == "quartic-mp") return ModelKind::QuarticMp;
    if (s == "custom-polynomial") return ModelKind::CustomPolynomial;
    throw std::invalid_argument("unknown model kind: " + s);
}

double compute_s_plus(const PhysicalParams& params)
{
    if (params.c2 <= 0.0) throw std::invalid_argument("compute_s_plus: c2 must be > 0");
    if (params.a2 == 0.0 && params.b2 == 0.0)
        throw std::invalid_argument("compute_s_plus: degenerate model, a2 = b2 = 0 gives s+ = 0");
    const double disc = params.b2 * params.b2 + 24.0 * params.a2 * params.c2;
    return (params.b2 + std::sqrt(disc)) / (4.0 * params.c2);
}

NonlinearityModel NonlinearityModel::physical(const PhysicalParams& params)
{
    if (params.c2 <= 0.0) throw std::invalid_argument("physical model: c2 must be > 0");
    if (params.elastic_rescale <= 0.0)
        throw std::invalid_argument("physical model: elastic_rescale must be > 0");
    if (params.a2 < 0.0 || params.b2 < 0.0)
        throw std::invalid_argument("physical model: a2, b2 must be >= 0");
    NonlinearityModel m;
    m.kind_ = ModelKind::PhysicalCubic;
    m.phys_ = params;
    const double inv = 1.0 / params.elastic_rescale;
    m.coeffs_ = {0.0, -params.a2 * inv, -(params.b2 / 3.0) * inv, (2.0 * params.c2 / 3.0) * inv};
    m.s_plus_ = compute_s_plus(params);
    if (params.a2 > 0.0) {
        // F(t) = t * (2c2/3)(t - s+)(t - s-) / rescale; the quadratic's roots.
        const double disc = params.b2 * params.b2 + 24.0 * params.a2 * params.c2;
        m.s_minus_ = (params.b2 - std::sqrt(disc)) / (4.0 * params.c2);
    }
    m.finalize(false);
    return m;
}

NonlinearityModel NonlinearityModel::quartic_mp()
{
    NonlinearityModel m;
    m.kind_ = ModelKind::QuarticMp;
    m.coeffs_ = {0.0, -1.0, 0.0, 0.0, 1.0};
    m.s_plus_ = 1.0;
    m.finalize(false);
    return m;
}

NonlinearityModel NonlinearityModel::custom(std::vector<double> coefficients, double s_plus,
                                            std::optional<double> s_minus, bool relax_validation)
{
    NonlinearityModel m;
    m.kind_ = ModelKind::CustomPolynomial;
    m.coeffs_ = std::move(coefficients);
    if (m.coeffs_.empty()) m.coeffs_.push_back(0.0);
    m.s_plus_ = s_plus;
    m.s_minus_ = s_minus;
    m.finalize(relax_validation);
    return m;
}

NonlinearityModel NonlinearityModel::linear_zero(double s_plus)
{
    return custom({0.0}, s_plus, std::nullopt, true);
}

void NonlinearityModel::finalize(bool relax_validation)
{
    dcoeffs_ = derive(coeffs_);
    d2coeffs_ = derive(dcoeffs_);
    hcoeffs_ = antiderive_twice_scaled(coeffs_);
    fcoeffs_.assign(coeffs_.begin() + 1, coeffs_.end());
    if (fcoeffs_.empty()) fcoeffs_.push_back(0.0);

    const double scale = std::max(1.0, max_abs_coeff(coeffs_));
    if (std::abs(coeffs_[0]) > 1e-14 * scale)
        throw std::invalid_argument("model: F(0) must vanish");
    if (relax_validation) return;
    if (!(s_plus_ > 0.0)) throw std::invalid_argument("model: s_plus must be > 0");
    if (std::abs(eval_F(s_plus_)) > 1e-12 * scale * std::max(1.0, std::pow(s_plus_, double(coeffs_.size()))))
        throw std::invalid_argument("model: F(s_plus) must vanish");
    if (!(eval_F_prime(s_plus_) > 0.0)) throw std::invalid_argument("model: F'(s_plus) must be > 0");
    if (s_minus_ && !(*s_minus_ >= -s_plus_ && *s_minus_ < 0.0))
        throw std::invalid_argument("model: s_minus must lie in [-s_plus, 0)");
}

NonlinearityModel NonlinearityModel::with_tilde_extension(bool on) const
{
    NonlinearityModel m = *this;
    m.tilde_ = on;
    return m;
}

double NonlinearityModel::eval_F(double t) const
{
    if (tilde_ && t < 0.0) return -horner(coeffs_, -t);
    return horner(coeffs_, t);
}

double NonlinearityModel::eval_F_prime(double t) const
{
    if (tilde_ && t < 0.0) return horner(dcoeffs_, -t);
    return horner(dcoeffs_, t);
}

double NonlinearityModel::eval_F_second(double t) const
{
    if (tilde_ && t < 0.0) return -horner(d2coeffs_, -t);
    return horner(d2coeffs_, t);
}

double NonlinearityModel::eval_h(double t) const
{
    if (tilde_ && t < 0.0) return horner(hcoeffs_, -t);  // h~(t) = h(|t|)
    return horner(hcoeffs_, t);
}

double NonlinearityModel::f_ratio(double t) const
{
    if (tilde_ && t < 0.0) return horner(fcoeffs_, -t);
    return horner(fcoeffs_, t);
}

double NonlinearityModel::f_hat(double t) const
{
    // f' t + f collapses to F' for polynomials
    return eval_F_prime(t);
}

namespace {

void record(ConditionReport& rep, bool& flag, const char* cond, double point, double value)
{
    if (flag) {
        flag = false;
        rep.violations.push_back({cond, point, value});
    }
}

}  // namespace

ConditionReport check_conditions(const NonlinearityModel& model, int probe_count)
{
    if (probe_count < 2) throw std::invalid_argument("check_conditions: probe_count >= 2");
    ConditionReport rep;
    const double sp = model.s_plus();
    const double tol = 1e-13 * std::max(1.0, std::abs(model.eval_F_prime(sp)));

    // condF: F < 0 on (0, s+), F >= 0 on (s+, inf), exact endpoints.
    rep.condF_ok = true;
    bool first = true;
    if (std::abs(model.eval_F(0.0)) > tol) record(rep, first, "condF:F(0)=0", 0.0, model.eval_F(0.0));
    if (std::abs(model.eval_F(sp)) > tol * std::max(1.0, sp))
        record(rep, rep.condF_ok, "condF:F(s+)=0", sp, model.eval_F(sp));
    if (!(model.eval_F_prime(sp) > 0.0))
        record(rep, rep.condF_ok, "condF:F'(s+)>0", sp, model.eval_F_prime(sp));
    rep.condF_ok = rep.condF_ok && first;
    for (int i = 1; i < probe_count; ++i) {
        const double t = sp * i / probe_count;
        if (t <= 0.0 || t >= sp) continue;
        const double v = model.eval_F(t);
        if (!(v < tol)) {
            record(rep, rep.condF_ok, "condF:F<0 on (0,s+)", t, v);
            break;
        }
    }
    for (int i = 1; i <= probe_count; ++i) {
        const double t = sp + (3.0 * sp) * i / probe_count;
        const double v = model.eval_F(t);
        if (v < -tol * std::max(1.0, std::abs(t))) {
            record(rep, rep.condF_ok, "condF:F>=0 on (s+,inf)", t, v);
            break;
        }
    }

    // condFLeft: needs s- in [-s+, 0). Without it the condition is not met
    // as stated (the physical cubic with a2 = 0 has no negative root).
    if (model.s_minus()) {
        rep.condFLeft_ok = true;
        const double sm = *model.s_minus();
        for (int i = 1; i <= probe_count; ++i) {
            const double t = sm - (2.0 * sp) * i / probe_count;  // t < s-
            const double v = model.eval_F(t);
            if (v > tol * std::max(1.0, std::abs(t))) {
                record(rep, rep.condFLeft_ok, "condFLeft:F<=0 on (-inf,s-)", t, v);
                break;
            }
        }
        for (int i = 1; i < probe_count; ++i) {
            const double t = sm * (1.0 - double(i) / probe_count);  // (s-, 0)
            const double v = model.eval_F(t);
            if (v < -tol) {
                record(rep, rep.condFLeft_ok, "condFLeft:F>=0 on (s-,0)", t, v);
                break;
            }
        }
        // pair condition F(t1)/t1 + F(-t2)/t2 <= 0 for 0 < t1 <= t2 <= |s-|
        const int m = std::min(probe_count, 160);
        bool pair_ok = true;
        for (int i = 1; i <= m && pair_ok; ++i) {
            const double t1 = std::abs(sm) * i / m;
            for (int j = i; j <= m; ++j) {
                const double t2 = std::abs(sm) * j / m;
                const double v = model.eval_F(t1) / t1 + model.eval_F(-t2) / t2;
                if (v > tol) {
                    record(rep, rep.condFLeft_ok, "condFLeft:pair", t1, v);
                    pair_ok = false;
                    break;
                }
            }
        }
        // condF+: largest alpha with F(t1)/t1 + alpha^2 F(-t2)/t2 <= 0.
        double alpha_sq = std::numeric_limits<double>::infinity();
        bool informative = false;
        for (int i = 1; i <= m; ++i) {
            const double t1 = std::abs(sm) * i / m;
            const double f1 = model.eval_F(t1) / t1;
            for (int j = i; j <= m; ++j) {
                const double t2 = std::abs(sm) * j / m;
                const double f2 = model.eval_F(-t2) / t2;
                if (f2 > tol) {
                    informative = true;
                    alpha_sq = std::min(alpha_sq, -f1 / f2);
                } else if (f1 > tol) {
                    alpha_sq = 0.0;  // pair fails already at alpha = 0
                }
            }
        }
        if (informative && alpha_sq > 1.0 && std::isfinite(alpha_sq))
            rep.condFplus_alpha = std::sqrt(alpha_sq);
    } else {
        rep.condFLeft_ok = false;
    }

    // even condition: F_even(t) = (F(t) + F(-t))/2 <= 0 for t >= 0.
    rep.even_cond_ok = true;
    std::vector<double> even;  // even part coefficients
    const auto& c = model.coefficients();
    double lead = 0.0;
    if (!model.uses_tilde_extension()) {
        for (std::size_t k = 0; k < c.size(); k += 2)
            if (c[k] != 0.0) lead = c[k];
    }
    if (lead > 0.0) {
        record(rep, rep.even_cond_ok, "even:leading coefficient", std::numeric_limits<double>::infinity(), lead);
    }
    double bound = 2.0 * sp;
    double cmax = max_abs_coeff(c);
    if (cmax > 0.0) bound = std::max(bound, 1.0 + cmax / std::max(std::abs(c.back()), 1e-300));
    for (int i = 0; i <= probe_count && rep.even_cond_ok; ++i) {
        const double t = bound * i / probe_count;
        const double v = 0.5 * (model.eval_F(t) + model.eval_F(-t));
        if (v > tol * std::max(1.0, std::abs(t))) record(rep, rep.even_cond_ok, "even:F_even<=0", t, v);
    }
    return rep;
}

}  // namespace hedgehog
