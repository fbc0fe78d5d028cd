#include "oms/orlicz.hpp"

#include "oms/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace oms {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kOverflowGuard = 1e300;

std::vector<double> weighted_magnitudes(const Field& data, const Weight& omega) {
    std::vector<double> m(data.size());
    std::vector<double> point(data.rank());
    for (std::size_t i = 0; i < data.size(); ++i) {
        const double a = std::abs(data.values()[i]);
        if (std::isnan(a)) throw DomainError("luxemburg: NaN sample");
        if (a == 0.0) {
            m[i] = 0.0;
            continue;
        }
        data.coordinates(i, point);
        m[i] = a * omega(point);
    }
    return m;
}

double axis_measure(const Field& f, std::size_t k) {
    return f.measure() == Measure::counting ? 1.0 : f.axis(k).step;
}

}  // namespace

double modular(std::span<const double> magnitudes, double point_measure, const QuasiYoungFunction& phi,
               double lambda) {
    const auto& core = phi.core();
    const double r0 = phi.order();
    std::vector<double> terms;
    terms.reserve(magnitudes.size());
    for (double m : magnitudes) {
        if (m == 0.0) continue;
        const double v = core(std::pow(m / lambda, r0));
        if (v == kInf) return kInf;
        terms.push_back(v);
    }
    return point_measure * pairwise_sum(terms);
}

NormReport luxemburg_magnitudes(std::span<const double> magnitudes, double point_measure,
                                const QuasiYoungFunction& phi, const LuxemburgOptions& opts) {
    NormReport rep;
    double peak = 0.0;
    for (double m : magnitudes) {
        if (std::isnan(m) || m < 0.0) throw DomainError("luxemburg: magnitudes must be nonnegative numbers");
        peak = std::max(peak, m);
    }
    if (peak == 0.0) return rep;
    if (peak == kInf) {
        rep.in_space = false;
        rep.value = kInf;
        rep.method = NormMethod::not_in_space;
        return rep;
    }

    const auto& core = phi.core();
    const double r0 = phi.order();

    if (!opts.force_bisection && core.kind() == CoreKind::linf) {
        rep.value = rep.bracket_lo = rep.bracket_hi = peak;
        rep.method = NormMethod::closed_form;
        rep.modular_at_value = modular(magnitudes, point_measure, phi, peak);
        return rep;
    }
    if (!opts.force_bisection && core.kind() == CoreKind::power) {
        // c * mu * sum (m/lambda)^p <= 1 with p = r0 * q, scaled by the peak.
        const double p = r0 * core.exponent();
        std::vector<double> terms;
        terms.reserve(magnitudes.size());
        for (double m : magnitudes)
            if (m > 0.0) terms.push_back(std::pow(m / peak, p));
        const double s = core.coefficient() * point_measure * pairwise_sum(terms);
        rep.value = rep.bracket_lo = rep.bracket_hi = peak * std::pow(s, 1.0 / p);
        rep.method = NormMethod::closed_form;
        rep.modular_at_value = modular(magnitudes, point_measure, phi, rep.value);
        return rep;
    }

    auto eval = [&](double lambda) {
        const double v = modular(magnitudes, point_measure, phi, lambda);
        if (opts.record_trace) rep.trace.push_back({lambda, v});
        return v;
    };

    std::size_t support = 0;
    for (double m : magnitudes)
        if (m > 0.0) ++support;
    double hi = peak * std::pow(point_measure * static_cast<double>(support), 1.0 / r0) + 1.0;
    double lo = std::numeric_limits<double>::min();
    double mod_hi = eval(hi);
    while (mod_hi > 1.0) {
        lo = hi;
        hi *= 2.0;
        ++rep.iterations;
        if (hi > kOverflowGuard) {
            rep.in_space = false;
            rep.value = kInf;
            rep.bracket_lo = lo;
            rep.bracket_hi = kInf;
            rep.method = NormMethod::not_in_space;
            return rep;
        }
        mod_hi = eval(hi);
    }
    // Geometric bisection: the bracket spans hundreds of decades at the start.
    while (hi / lo - 1.0 > opts.rel_tol) {
        const double mid = hi / lo < 4.0 ? lo + 0.5 * (hi - lo) : std::exp(0.5 * (std::log(lo) + std::log(hi)));
        if (mid <= lo || mid >= hi) break;
        const double v = eval(mid);
        ++rep.iterations;
        if (v > 1.0) {
            lo = mid;
        } else {
            hi = mid;
            mod_hi = v;
        }
    }
    rep.value = hi;
    rep.bracket_lo = lo;
    rep.bracket_hi = hi;
    rep.modular_at_value = mod_hi;
    rep.method = NormMethod::bisection;
    return rep;
}

NormReport luxemburg(const Field& data, const QuasiYoungFunction& phi, const Weight& omega,
                     const LuxemburgOptions& opts) {
    const auto m = weighted_magnitudes(data, omega);
    return luxemburg_magnitudes(m, data.point_measure(), phi, opts);
}

NormReport mixed_luxemburg(const Field& data, const QuasiYoungFunction& phi1, const QuasiYoungFunction& phi2,
                           const Weight& omega, const LuxemburgOptions& opts) {
    if (data.rank() != 2) throw DomainError("mixed_luxemburg: data must have two axes");
    const double r0 = std::min(phi1.order(), phi2.order());
    const auto inner_phi = phi1.with_order(r0);
    const auto outer_phi = phi2.with_order(r0);

    const auto m = weighted_magnitudes(data, omega);
    const auto n0 = data.axis(0).count;
    const auto n1 = data.axis(1).count;
    const double mu0 = axis_measure(data, 0);
    const double mu1 = axis_measure(data, 1);

    NormReport rep;
    rep.inner_values.resize(n1);
    int iterations = 0;
    for (std::size_t j = 0; j < n1; ++j) {
        const auto inner = luxemburg_magnitudes(std::span<const double>(m).subspan(j * n0, n0), mu0, inner_phi, opts);
        iterations += inner.iterations;
        if (!inner.in_space) {
            rep.in_space = false;
            rep.value = kInf;
            rep.method = NormMethod::not_in_space;
            rep.inner_values[j] = kInf;
            rep.iterations = iterations;
            return rep;
        }
        rep.inner_values[j] = inner.value;
    }
    auto outer = luxemburg_magnitudes(rep.inner_values, mu1, outer_phi, opts);
    outer.iterations += iterations;
    outer.inner_values = std::move(rep.inner_values);
    return outer;
}

double order_transfer_check(const Field& data, const QuasiYoungFunction& phi1, const QuasiYoungFunction& phi2,
                            const Weight& omega) {
    const bool mixed = data.rank() == 2;
    const double r0 = mixed ? std::min(phi1.order(), phi2.order()) : phi1.order();

    const double direct = mixed ? mixed_luxemburg(data, phi1, phi2, omega).value : luxemburg(data, phi1, omega).value;

    // |f omega|^{r0} measured with the bare Young cores at order 1.
    Field powered(data.axes(), data.measure());
    const auto m = weighted_magnitudes(data, omega);
    for (std::size_t i = 0; i < m.size(); ++i) powered.values()[i] = std::pow(m[i], r0);
    const QuasiYoungFunction core1(phi1.with_order(r0).core(), 1.0);
    const QuasiYoungFunction core2(phi2.with_order(r0).core(), 1.0);
    const auto unit = Weight::constant();
    const double transferred = mixed ? mixed_luxemburg(powered, core1, core2, unit).value
                                     : luxemburg(powered, core1, unit).value;
    const double via_cores = std::pow(transferred, 1.0 / r0);

    if (direct == 0.0 && via_cores == 0.0) return 0.0;
    return std::abs(direct - via_cores) / direct;
}

Field translate(const Field& data, std::span<const double> shift) {
    if (shift.size() != data.rank()) throw DomainError("translate: one shift per axis required");
    std::vector<std::int64_t> steps(shift.size());
    for (std::size_t k = 0; k < shift.size(); ++k) {
        const double q = shift[k] / data.axis(k).step;
        const double r = std::round(q);
        if (std::abs(q - r) > 1e-9 * std::max(1.0, std::abs(q)))
            throw DomainError("translate: shift is not a multiple of the grid step");
        steps[k] = static_cast<std::int64_t>(r);
    }
    return translate(data, steps);
}

double embedding_upper_constant(const QuasiYoungFunction& phi1, const QuasiYoungFunction& phi2, double inner_measure,
                                double outer_measure) {
    const double r0 = std::min(phi1.order(), phi2.order());
    const auto c1 = phi1.with_order(r0).core();
    const auto c2 = phi2.with_order(r0).core();
    double t2 = 1.0;
    for (int k = 0; k < 200 && !(std::isfinite(c1(t2)) && std::isfinite(c2(t2))); ++k) t2 *= 0.5;
    if (!(std::isfinite(c1(t2)) && std::isfinite(c2(t2)))) throw DomainError("embedding_upper_constant: cores infinite near 0");
    const double slope = std::max(c1(t2), c2(t2)) / t2;
    const double c = std::max({slope * (slope + 1.0 / (inner_measure * t2)), slope / (outer_measure * t2),
                               1.0 / (t2 * t2)});
    return std::pow(c, 1.0 / r0);
}

double decomposition_norm(std::span<const double> magnitudes, double point_measure) {
    std::vector<double> v(magnitudes.begin(), magnitudes.end());
    std::sort(v.begin(), v.end(), std::greater<>());
    // Cut level tau at a sample value: cost = mu * sum_{v_i > tau} (v_i - tau) + tau.
    double best = v.empty() ? 0.0 : v.front();
    double prefix = 0.0;
    for (std::size_t k = 0; k < v.size(); ++k) {
        prefix += v[k];
        const double tau = k + 1 < v.size() ? v[k + 1] : 0.0;
        const double cost = point_measure * (prefix - static_cast<double>(k + 1) * tau) + tau;
        best = std::min(best, cost);
    }
    return best;
}

double embedding_lower_constant(const QuasiYoungFunction& phi) {
    const auto& core = phi.core();
    for (double t1 = 1.0; t1 < 1e12; t1 *= 2.0) {
        const double v = core(t1);
        if (v == kInf) break;
        if (v > 0.0) return 1.0 / (v / t1) + t1;
    }
    // Step cores (linf): the norm is the sup, and K(F) <= sup F.
    return 1.0;
}

}  // namespace oms
