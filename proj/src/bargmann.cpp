#include "oms/bargmann.hpp"

#include "oms/errors.hpp"
#include "oms/gabor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace oms {
namespace {

const double kPiQuarter = std::pow(std::numbers::pi, -0.25);
const double kSqrt2 = std::numbers::sqrt2;
constexpr double kRescale = 1e150;

/// log of sum_{n > k} s^n / n!, or +inf when the tail does not shrink geometrically.
double log_exp_tail(double s, std::size_t k) {
    if (s == 0.0) return -std::numeric_limits<double>::infinity();
    const double ratio = s / static_cast<double>(k + 2);
    if (ratio >= 1.0) return std::numeric_limits<double>::infinity();
    const double first = static_cast<double>(k + 1) * std::log(s) - std::lgamma(static_cast<double>(k + 2));
    return first - std::log1p(-ratio);
}

/// sum_n c_n z^n / sqrt(n!) with the monomials built incrementally.
cplx monomial_sum(const std::vector<cplx>& c, std::size_t stride, std::size_t offset, std::size_t order, cplx z) {
    cplx sum{};
    cplx term = 1.0;
    for (std::size_t n = 0; n <= order; ++n) {
        if (n > 0) term *= z / std::sqrt(static_cast<double>(n));
        sum += c[offset + stride * n] * term;
    }
    return sum;
}

}  // namespace

std::vector<double> hermite_values(std::size_t k, double x) {
    std::vector<double> h(k + 1);
    // Run the recurrence on h_n e^{x^2/2} and track a log scale.
    double log_scale = -0.5 * x * x;
    double prev = 0.0;
    double cur = kPiQuarter;
    std::vector<double> logs(k + 1);
    h[0] = cur;
    logs[0] = log_scale;
    for (std::size_t n = 0; n < k; ++n) {
        const double nn = static_cast<double>(n);
        const double next = std::sqrt(2.0 / (nn + 1.0)) * x * cur - std::sqrt(nn / (nn + 1.0)) * prev;
        prev = cur;
        cur = next;
        if (std::abs(cur) > kRescale) {
            cur /= kRescale;
            prev /= kRescale;
            log_scale += std::log(kRescale);
        }
        h[n + 1] = cur;
        logs[n + 1] = log_scale;
    }
    for (std::size_t n = 0; n <= k; ++n) {
        if (h[n] == 0.0) continue;
        const double lg = std::log(std::abs(h[n])) + logs[n];
        h[n] = std::copysign(std::exp(lg), h[n]);
    }
    return h;
}

double hermite_eval(std::size_t n, double x) { return hermite_values(n, x)[n]; }

double hermite_eval(std::span<const std::size_t> alpha, std::span<const double> x) {
    if (alpha.size() != x.size() || alpha.empty()) throw DomainError("hermite_eval: index and point dimensions differ");
    double v = 1.0;
    for (std::size_t j = 0; j < alpha.size(); ++j) v *= hermite_eval(alpha[j], x[j]);
    return v;
}

Field hermite_function(std::size_t n, std::size_t samples, double h) {
    Field f = make_sampled_1d(samples, h);
    for (std::size_t i = 0; i < samples; ++i) f.at(i) = hermite_eval(n, f.axis(0).coord(i));
    return f;
}

HermiteCoeffs hermite_expand(const Field& f, std::size_t order) {
    if (f.measure() != Measure::cell || f.rank() < 1 || f.rank() > 2)
        throw DomainError("hermite_expand: expected a sampled field of one or two axes");
    HermiteCoeffs out;
    out.dim = f.rank();
    out.order = order;

    // Tables H_j[n][i] = h_n(coordinate i of axis j).
    std::vector<std::vector<std::vector<double>>> tables(f.rank());
    for (std::size_t j = 0; j < f.rank(); ++j) {
        const Axis& ax = f.axis(j);
        tables[j].assign(order + 1, std::vector<double>(ax.count));
        for (std::size_t i = 0; i < ax.count; ++i) {
            const auto hv = hermite_values(order, ax.coord(i));
            for (std::size_t n = 0; n <= order; ++n) tables[j][n][i] = hv[n];
        }
    }
    const double mu = f.point_measure();

    std::vector<double> sq(f.size());
    double peak = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        sq[i] = std::norm(f.values()[i]);
        peak = std::max(peak, std::abs(f.values()[i]));
    }
    out.norm_sq = mu * pairwise_sum(sq);

    double coeff_sq = 0.0;
    if (f.rank() == 1) {
        const std::size_t n0 = f.axis(0).count;
        out.values.resize(order + 1);
        for (std::size_t n = 0; n <= order; ++n) {
            cplx s{};
            for (std::size_t i = 0; i < n0; ++i) s += f.at(i) * tables[0][n][i];
            out.values[n] = mu * s;
        }
        const double edge = std::max(std::abs(f.at(0)), std::abs(f.at(n0 - 1)));
        out.boundary_warning = edge > 1e-12 * peak;
        out.tail = std::abs(out.values[order]);
    } else {
        const std::size_t n0 = f.axis(0).count, n1 = f.axis(1).count;
        out.values.resize((order + 1) * (order + 1));
        // Contract axis 0 first: g(a1, i1) = sum_i0 f(i0, i1) h_a1(x_i0).
        std::vector<cplx> g((order + 1) * n1);
        for (std::size_t i1 = 0; i1 < n1; ++i1)
            for (std::size_t a1 = 0; a1 <= order; ++a1) {
                cplx s{};
                for (std::size_t i0 = 0; i0 < n0; ++i0) s += f.at(i0, i1) * tables[0][a1][i0];
                g[a1 + (order + 1) * i1] = s;
            }
        for (std::size_t a2 = 0; a2 <= order; ++a2)
            for (std::size_t a1 = 0; a1 <= order; ++a1) {
                cplx s{};
                for (std::size_t i1 = 0; i1 < n1; ++i1) s += g[a1 + (order + 1) * i1] * tables[1][a2][i1];
                out.values[a1 + (order + 1) * a2] = mu * s;
            }
        double edge = 0.0;
        for (std::size_t i0 = 0; i0 < n0; ++i0)
            edge = std::max({edge, std::abs(f.at(i0, 0)), std::abs(f.at(i0, n1 - 1))});
        for (std::size_t i1 = 0; i1 < n1; ++i1)
            edge = std::max({edge, std::abs(f.at(0, i1)), std::abs(f.at(n0 - 1, i1))});
        out.boundary_warning = edge > 1e-12 * peak;
        for (std::size_t a = 0; a <= order; ++a)
            out.tail = std::max({out.tail, std::abs(out.at(order, a)), std::abs(out.at(a, order))});
    }
    std::vector<double> cs(out.values.size());
    for (std::size_t i = 0; i < cs.size(); ++i) cs[i] = std::norm(out.values[i]);
    coeff_sq = pairwise_sum(cs);
    out.parseval_defect = out.norm_sq - coeff_sq;
    return out;
}

cplx bargmann_at(const Field& f, cplx z) {
    if (f.rank() != 1 || f.measure() != Measure::cell) throw DomainError("bargmann_at: expected a 1-D sampled field");
    const Axis& ax = f.axis(0);
    cplx s{};
    for (std::size_t i = 0; i < ax.count; ++i) {
        const double y = ax.coord(i);
        s += f.at(i) * std::exp(-0.5 * (z * z + y * y) + kSqrt2 * z * y);
    }
    return kPiQuarter * ax.step * s;
}

cplx bargmann_at(const Field& f, std::array<cplx, 2> z) {
    if (f.rank() != 2 || f.measure() != Measure::cell) throw DomainError("bargmann_at: expected a 2-D sampled field");
    const Axis& a0 = f.axis(0);
    const Axis& a1 = f.axis(1);
    std::vector<cplx> k0(a0.count), k1(a1.count);
    for (std::size_t i = 0; i < a0.count; ++i) {
        const double y = a0.coord(i);
        k0[i] = kPiQuarter * std::exp(-0.5 * (z[0] * z[0] + y * y) + kSqrt2 * z[0] * y);
    }
    for (std::size_t i = 0; i < a1.count; ++i) {
        const double y = a1.coord(i);
        k1[i] = kPiQuarter * std::exp(-0.5 * (z[1] * z[1] + y * y) + kSqrt2 * z[1] * y);
    }
    cplx s{};
    for (std::size_t i1 = 0; i1 < a1.count; ++i1) {
        cplx row{};
        for (std::size_t i0 = 0; i0 < a0.count; ++i0) row += f.at(i0, i1) * k0[i0];
        s += row * k1[i1];
    }
    return f.point_measure() * s;
}

cplx bargmann_series(const HermiteCoeffs& c, cplx z, double tol) {
    if (c.dim != 1) throw DomainError("bargmann_series: expected one-dimensional coefficients");
    const double defect = std::max(c.parseval_defect, std::numeric_limits<double>::epsilon() * c.norm_sq);
    const double bound = std::sqrt(defect) * std::exp(0.5 * log_exp_tail(std::norm(z), c.order));
    if (!(bound <= tol)) throw TruncationError("bargmann_series: |z| too large for the expansion order", bound);
    return monomial_sum(c.values, 1, 0, c.order, z);
}

cplx bargmann_series(const HermiteCoeffs& c, std::array<cplx, 2> z, double tol) {
    if (c.dim != 2) throw DomainError("bargmann_series: expected two-dimensional coefficients");
    const double defect = std::max(c.parseval_defect, std::numeric_limits<double>::epsilon() * c.norm_sq);
    // Orders missing on either axis: bounded through the one-axis tails of |z_1|^2 + |z_2|^2.
    const double bound = std::sqrt(defect) * std::exp(0.5 * log_exp_tail(std::norm(z[0]) + std::norm(z[1]), c.order));
    if (!(bound <= tol)) throw TruncationError("bargmann_series: |z| too large for the expansion order", bound);
    const std::size_t stride = c.order + 1;
    cplx sum{};
    cplx term = 1.0;
    for (std::size_t a2 = 0; a2 <= c.order; ++a2) {
        if (a2 > 0) term *= z[1] / std::sqrt(static_cast<double>(a2));
        sum += term * monomial_sum(c.values, 1, stride * a2, c.order, z[0]);
    }
    return sum;
}

cplx FockField::z(std::size_t k, std::size_t m) const {
    return cplx(damped.axis(0).coord(k), -damped.axis(1).coord(m)) / kSqrt2;
}

cplx FockField::value(std::size_t k, std::size_t m) const {
    return damped.at(k, m) * std::exp(0.5 * std::norm(z(k, m)));
}

FockField bargmann(const Field& f, const Axis& x, const Axis& xi) {
    if (f.rank() != 1 || f.measure() != Measure::cell) throw DomainError("bargmann: expected a 1-D sampled field");
    const Axis& ay = f.axis(0);
    const std::size_t ny = ay.count;
    FockField out{Field({x, xi}, Measure::cell)};

    // With z = (x - i xi)/sqrt2:  A(z, y) = pi^{-1/4} e^{-z^2/2} e^{x y - y^2/2} e^{-i xi y}.
    std::vector<cplx> phase(ny * xi.count);
    for (std::size_t m = 0; m < xi.count; ++m)
        for (std::size_t i = 0; i < ny; ++i) phase[i + ny * m] = std::polar(1.0, -xi.coord(m) * ay.coord(i));

    std::vector<cplx> a(ny);
    for (std::size_t k = 0; k < x.count; ++k) {
        const double xk = x.coord(k);
        for (std::size_t i = 0; i < ny; ++i) {
            const double y = ay.coord(i);
            // e^{xy - y^2/2} = e^{x^2/2} e^{-(y-x)^2/2}; the e^{x^2/2} joins e^{-z^2/2} below.
            a[i] = f.at(i) * std::exp(-0.5 * (y - xk) * (y - xk));
        }
        for (std::size_t m = 0; m < xi.count; ++m) {
            cplx s{};
            for (std::size_t i = 0; i < ny; ++i) s += a[i] * phase[i + ny * m];
            // e^{-z^2/2 + x^2/2 - |z|^2/2} = e^{i x xi / 2}.
            out.damped.at(k, m) = kPiQuarter * ay.step * std::polar(1.0, 0.5 * xk * xi.coord(m)) * s;
        }
    }
    return out;
}

double cauchy_riemann_residual(const FockField& F, double radius) {
    const Field& d = F.damped;
    const std::size_t n0 = d.axis(0).count, n1 = d.axis(1).count;
    Field s(d.axes(), d.measure());
    for (std::size_t m = 0; m < n1; ++m)
        for (std::size_t k = 0; k < n0; ++k)
            if (std::abs(F.z(k, m)) <= radius + 1.0) s.at(k, m) = F.value(k, m);
    const double hx = s.axis(0).step, hxi = s.axis(1).step;
    double worst = 0.0;
    auto d4 = [](cplx m2, cplx m1, cplx p1, cplx p2, double step) {
        return (m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * step);
    };
    for (std::size_t m = 2; m + 2 < n1; ++m)
        for (std::size_t k = 2; k + 2 < n0; ++k) {
            if (std::abs(F.z(k, m)) > radius) continue;
            const cplx dx = d4(s.at(k - 2, m), s.at(k - 1, m), s.at(k + 1, m), s.at(k + 2, m), hx);
            const cplx dxi = d4(s.at(k, m - 2), s.at(k, m - 1), s.at(k, m + 1), s.at(k, m + 2), hxi);
            // u = x/sqrt2, v = -xi/sqrt2: dF/dzbar = (sqrt2/2)(dF/dx - i dF/dxi).
            const cplx dbar = (dx - cplx(0.0, 1.0) * dxi) / kSqrt2;
            const double scale = std::abs(dx) + std::abs(dxi) + std::abs(s.at(k, m));
            if (scale > 0.0) worst = std::max(worst, std::abs(dbar) / scale);
        }
    return worst;
}

NormReport b_norm(const FockField& F, const QuasiYoungFunction& phi1, const QuasiYoungFunction& phi2,
                  const Weight& omega, double bracket) {
    Field g = F.damped;
    const double c = 1.0 / std::sqrt(2.0 * std::numbers::pi);
    for (std::size_t m = 0; m < g.axis(1).count; ++m) {
        const double xi = g.axis(1).coord(m);
        for (std::size_t k = 0; k < g.axis(0).count; ++k) {
            const double x = g.axis(0).coord(k);
            double factor = c;
            if (bracket != 0.0) factor *= std::pow(1.0 + 0.5 * (x * x + xi * xi), -0.5 * bracket);
            g.at(k, m) *= factor;
        }
    }
    return mixed_luxemburg(g, phi1, phi2, omega);
}

IsometryReport isometry_check(const Field& f, const QuasiYoungFunction& phi1, const QuasiYoungFunction& phi2,
                              const Weight& omega, double z_radius) {
    const Axis& x = f.axis(0);
    const double bound = kSqrt2 * z_radius;
    const Field window = gaussian_window(x.count, x.step);
    const Field V = restrict_box(stft(f, window), {bound, bound});
    IsometryReport rep;
    rep.mod_norm = mixed_luxemburg(V, phi1, phi2, omega).value;
    rep.b_norm = b_norm(bargmann(f, V.axis(0), V.axis(1)), phi1, phi2, omega).value;
    if (rep.mod_norm == 0.0)
        rep.rel_error = rep.b_norm == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    else
        rep.rel_error = std::abs(rep.b_norm - rep.mod_norm) / rep.mod_norm;
    return rep;
}

}  // namespace oms
