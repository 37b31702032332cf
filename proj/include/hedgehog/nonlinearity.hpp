#pragma once

#include <optional>
#include <string>
#include <vector>

namespace hedgehog {

enum class ModelKind { PhysicalCubic, QuarticMp, CustomPolynomial };

std::string to_string(ModelKind k);
ModelKind model_kind_from_string(const std::string& s);

/// Parameters of the cubic reaction term
///   F(t) = (-a2 t - (b2/3) t^2 + (2 c2/3) t^3) / elastic_rescale.
/// elastic_rescale is the elastic constant combination 2 L1 + 4(L2+L3)/3.
struct PhysicalParams {
    double a2 = 0.0;
    double b2 = 1.0;
    double c2 = 1.0;
    double elastic_rescale = 1.0;
};

/// Positive root of F for the cubic, s+ = (b^2 + sqrt(b^4 + 24 a^2 c^2)) / (4 c^2).
/// Throws std::invalid_argument when c2 <= 0 or the root degenerates to 0.
double compute_s_plus(const PhysicalParams& params);

/// A polynomial reaction term F with F(0) = 0, F(s+) = 0, F'(s+) > 0, plus the
/// derived quantities used throughout: h = 2*int F, f = F/t, fhat = f' t + f.
class NonlinearityModel {
  public:
    /// Default state is the zero polynomial with s+ = 1 (a placeholder; use
    /// the factories for real models).
    NonlinearityModel() = default;

    /// Cubic from physical parameters; s-, when a2 > 0, is the negative root.
    static NonlinearityModel physical(const PhysicalParams& params);
    /// F(t) = t^4 - t (s+ = 1), the reference quartic for mountain-pass runs.
    static NonlinearityModel quartic_mp();
    /// General polynomial: coefficients[k] multiplies t^k. s_plus must be a
    /// root with F'(s_plus) > 0 unless validation is relaxed.
    static NonlinearityModel custom(std::vector<double> coefficients, double s_plus,
                                    std::optional<double> s_minus = std::nullopt,
                                    bool relax_validation = false);
    /// F == 0 with a prescribed boundary value; used for linear cross-checks.
    static NonlinearityModel linear_zero(double s_plus);

    ModelKind kind() const { return kind_; }
    const std::vector<double>& coefficients() const { return coeffs_; }
    double s_plus() const { return s_plus_; }
    std::optional<double> s_minus() const { return s_minus_; }
    const std::optional<PhysicalParams>& physical_params() const { return phys_; }

    /// Odd-tail extension flag: when set, evaluations below 0 use
    /// F~(-t) = -F(t), the modification entering the modified energy.
    bool uses_tilde_extension() const { return tilde_; }
    NonlinearityModel with_tilde_extension(bool on = true) const;

    double eval_F(double t) const;
    double eval_F_prime(double t) const;
    double eval_F_second(double t) const;
    /// h(t) = 2 * int_0^t F  (closed form; respects the tilde extension).
    double eval_h(double t) const;
    /// f(t) = F(t)/t with the removable singularity f(0) = F'(0).
    double f_ratio(double t) const;
    /// fhat(t) = f'(t) t + f(t); equals F'(t) identically for polynomials.
    double f_hat(double t) const;

  private:
    void finalize(bool relax_validation);

    ModelKind kind_ = ModelKind::CustomPolynomial;
    std::vector<double> coeffs_{0.0};    // F
    std::vector<double> dcoeffs_{0.0};   // F'
    std::vector<double> d2coeffs_{0.0};  // F''
    std::vector<double> hcoeffs_{0.0};   // h
    std::vector<double> fcoeffs_{0.0};   // f = F/t
    double s_plus_ = 1.0;
    std::optional<double> s_minus_;
    std::optional<PhysicalParams> phys_;
    bool tilde_ = false;
};

/// One sampled violation of a structural condition on F.
struct ConditionViolation {
    std::string condition;
    double sample_point = 0.0;
    double value = 0.0;
};

struct ConditionReport {
    bool condF_ok = false;
    bool condFLeft_ok = false;
    bool even_cond_ok = false;
    std::optional<double> condFplus_alpha;  // largest admissible alpha > 1, if any
    std::vector<ConditionViolation> violations;
};

/// Samples the sign conditions on dense grids plus exact endpoint checks.
/// probe_count >= 2. Failures are recorded, never thrown.
ConditionReport check_conditions(const NonlinearityModel& model, int probe_count = 4096);

}  // namespace hedgehog
