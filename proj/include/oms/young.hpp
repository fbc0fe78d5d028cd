#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace oms {

enum class CoreKind { power, linf, expm1, piecewise };

/// A Young function: convex, zero at zero, unbounded, values in [0, inf].
///
/// Every core is `base(s^inner)` with inner >= 1. The inner exponent is what
/// lets a quasi-Young function be re-expressed at a smaller order without
/// changing its values; for power cores it is folded into the exponent.
class YoungCore {
public:
    /// coefficient * s^exponent, exponent >= 1.
    static YoungCore power(double exponent, double coefficient);
    /// 0 on [0,1], +inf beyond.
    static YoungCore linf();
    /// e^s - 1.
    static YoungCore expm1();
    /// Knot table (t, value), strictly increasing t, first knot at t = 0.
    /// Linear between knots; past the last knot the last segment is extended
    /// (or +inf if that segment is flat or the last value is +inf).
    static YoungCore piecewise(std::vector<std::pair<double, double>> knots);

    double operator()(double s) const;

    CoreKind kind() const { return kind_; }
    /// Effective exponent of a power core (inner exponent already folded in).
    double exponent() const { return exponent_; }
    double coefficient() const { return coefficient_; }
    double inner_exponent() const { return inner_; }
    const std::vector<std::pair<double, double>>& knots() const { return knots_; }

    /// The core s -> this(s^k), k >= 1.
    YoungCore with_inner_exponent(double k) const;

    std::string describe() const;

private:
    double base(double s) const;

    CoreKind kind_ = CoreKind::power;
    double exponent_ = 1.0;
    double coefficient_ = 1.0;
    double inner_ = 1.0;
    std::vector<std::pair<double, double>> knots_;
};

/// Phi(t) = core(t^order), order in (0,1].
class QuasiYoungFunction {
public:
    QuasiYoungFunction(YoungCore core, double order);

    /// Phi_p(t) = t^p / p, declared at order min(p,1).
    static QuasiYoungFunction standard_power(double p);
    /// t^p without the 1/p factor, order min(p,1); its Luxemburg norm is the
    /// plain l^p / L^p (quasi-)norm.
    static QuasiYoungFunction plain_power(double p);
    static QuasiYoungFunction linf();
    static QuasiYoungFunction expm1();

    /// Phi(t) for t >= 0; may return +inf. Throws DomainError for t < 0 or NaN.
    double operator()(double t) const;

    const YoungCore& core() const { return core_; }
    double order() const { return order_; }

    /// Same function written as core'(t^r) with r <= order.
    QuasiYoungFunction with_order(double r) const;

    std::string describe() const;

private:
    YoungCore core_;
    double order_;
};

/// Builder by CLI name: `power:p`, `lp:p`, `linf`, `expm1`, `piecewise:file.csv`.
QuasiYoungFunction parse_quasi_young(const std::string& spec);

/// Reads a two-column `t,value` CSV (optional header, ascending t).
std::vector<std::pair<double, double>> read_knot_csv(const std::string& path);

struct QuasiYoungReport {
    bool pass = true;
    bool zero_at_origin = true;
    bool monotone = true;
    bool convex = true;
    bool unbounded = true;
    /// Index into the grid of the first violating knot, if any.
    std::optional<std::size_t> first_violation;
    std::string violation;
};

/// Checks the core on `grid` (must start at 0 and hold >= 3 increasing points).
/// The declared order is trusted and not inspected.
QuasiYoungReport verify_quasi_young(const QuasiYoungFunction& phi, std::span<const double> grid);

struct LimitEstimate {
    bool finite = false;
    double value = 0.0;
    /// Last three ratios within relative 1e-3 (or all three below 1e-6 and decreasing).
    bool stabilized = false;
    /// phi vanished at a point where psi did not.
    bool division_flag = false;
    std::vector<double> ratios;
};

/// Estimates lim_{t->0+} psi(t)/phi(t) along a strictly decreasing sequence.
LimitEstimate limit_ratio_at_zero(const QuasiYoungFunction& psi, const QuasiYoungFunction& phi,
                                  std::span<const double> t_seq);

}  // namespace oms
