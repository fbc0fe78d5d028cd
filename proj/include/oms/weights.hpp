#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

namespace oms {

enum class WeightClass { P, PE0, PE, unknown };

std::string to_string(WeightClass c);

enum class WeightKind { constant, poly, exp, exp_norm, tabulated };

/// A positive weight on R^n, n = 1 or n = 2d. Points with an even number of
/// coordinates are split as X = (x, xi); a single coordinate is x alone.
class Weight {
public:
    /// omega = 1.
    static Weight constant();
    /// (1 + |x| + |xi|)^r; companion poly(|r|).
    static Weight poly(double r);
    /// exp(r (|x|^{1/s} + |xi|^{1/sigma})), s, sigma >= 1/2. The companion is
    /// exp(s, sigma, |r|) when s, sigma >= 1 (subadditive exponents) and unset otherwise.
    static Weight exp(double s, double sigma, double r);
    /// exp(r |X|) with the Euclidean norm of the whole point; companion exp_norm(|r|).
    static Weight exp_norm(double r);
    /// Nearest-neighbour lookup in a table of (point, value) rows.
    static Weight tabulated(std::vector<std::vector<double>> points, std::vector<double> values);

    double operator()(std::span<const double> point) const;
    /// log omega(point), finite wherever omega is; avoids overflow for steep weights.
    double log_eval(std::span<const double> point) const;

    WeightKind kind() const { return kind_; }
    WeightClass class_tag() const { return tag_; }
    /// Submultiplicative companion v with omega(x+y) <= omega(x) v(y); null if none is known.
    /// A companion carries no companion of its own.
    std::shared_ptr<const Weight> companion() const { return companion_; }
    double r() const { return r_; }
    double s() const { return s_; }
    double sigma() const { return sigma_; }

    std::string describe() const;

private:
    WeightKind kind_ = WeightKind::constant;
    WeightClass tag_ = WeightClass::P;
    double r_ = 0.0, s_ = 1.0, sigma_ = 1.0;
    std::shared_ptr<const Weight> companion_;
    std::shared_ptr<const std::vector<std::vector<double>>> table_points_;
    std::shared_ptr<const std::vector<double>> table_values_;
};

/// CLI builder: `const`, `poly:r`, `exp:s,sigma,r`, `expnorm:r`, `tabulated:file.csv`.
Weight parse_weight(const std::string& spec);

using PointSet = std::vector<std::vector<double>>;

/// Points of the box [-radius, radius]^dim with `per_axis` samples per axis.
PointSet box_grid(std::size_t dim, double radius, std::size_t per_axis);

struct ModerateReport {
    double C = 0.0;
    double log_C = -1e300;
    std::vector<double> worst_x, worst_y;
    std::size_t pairs_probed = 0;
};

/// max over probed (x, y) of outer(x+y) / (first(x) second(y)). Pairs whose sum
/// leaves the bounding box of `grid` are skipped. Throws DomainError on an empty grid.
ModerateReport check_weight_product(const Weight& outer, const Weight& first, const Weight& second,
                                    const PointSet& grid);

/// max over probed (x, y) of omega(x+y) / (omega(x) v(y)).
ModerateReport check_moderate(const Weight& omega, const Weight& v, const PointSet& grid);

struct ClassifyReport {
    WeightClass tag = WeightClass::unknown;
    bool p_pass = false;
    bool pe0_pass = false;
    bool pe_pass = false;
    /// Smallest exponential rate r' on the ladder for which the test passed (0 if none).
    double smallest_exp_rate = 0.0;
    std::vector<double> radii;
    std::size_t dim = 2;
};

/// Polynomial companions probed for class P.
inline constexpr double kPolyLadder[] = {1.0, 2.0, 4.0, 8.0, 16.0};
/// Exponential rates r' probed for classes PE0 / PE (companion exp(r'|X|)).
inline constexpr double kExpLadder[] = {4.0, 2.0, 1.0, 0.5, 0.25, 0.125};

/// Finite-grid class certification: a companion passes when the moderateness
/// constant grows by at most a factor 2 between the last two radii.
ClassifyReport classify_weight(const Weight& omega, std::span<const double> radii, std::size_t dim = 2,
                               std::size_t per_axis = 21);

}  // namespace oms
