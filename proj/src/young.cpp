#include "oms/young.hpp"

#include "oms/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace oms {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt_num(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

}  // namespace

YoungCore YoungCore::power(double exponent, double coefficient) {
    if (!(exponent >= 1.0) || !(coefficient > 0.0) || !std::isfinite(exponent) || !std::isfinite(coefficient))
        throw DomainError("YoungCore::power: need exponent >= 1 and coefficient > 0");
    YoungCore c;
    c.kind_ = CoreKind::power;
    c.exponent_ = exponent;
    c.coefficient_ = coefficient;
    return c;
}

YoungCore YoungCore::linf() {
    YoungCore c;
    c.kind_ = CoreKind::linf;
    return c;
}

YoungCore YoungCore::expm1() {
    YoungCore c;
    c.kind_ = CoreKind::expm1;
    return c;
}

YoungCore YoungCore::piecewise(std::vector<std::pair<double, double>> knots) {
    if (knots.size() < 2) throw DomainError("YoungCore::piecewise: need at least two knots");
    if (knots.front().first != 0.0) throw DomainError("YoungCore::piecewise: first knot must be at t = 0");
    for (std::size_t i = 0; i < knots.size(); ++i) {
        const auto [t, v] = knots[i];
        if (std::isnan(t) || std::isnan(v) || v < 0.0 || !std::isfinite(t))
            throw DomainError("YoungCore::piecewise: knots must be finite t with values in [0, inf]");
        if (i > 0 && !(t > knots[i - 1].first)) throw DomainError("YoungCore::piecewise: t must be strictly increasing");
    }
    YoungCore c;
    c.kind_ = CoreKind::piecewise;
    c.knots_ = std::move(knots);
    return c;
}

YoungCore YoungCore::with_inner_exponent(double k) const {
    if (!(k >= 1.0) || !std::isfinite(k)) throw DomainError("YoungCore::with_inner_exponent: need k >= 1");
    YoungCore c = *this;
    switch (kind_) {
        case CoreKind::power:
            c.exponent_ = exponent_ * k;
            break;
        case CoreKind::linf:
            // linf(s^k) == linf(s) for every k > 0.
            break;
        case CoreKind::expm1:
        case CoreKind::piecewise:
            c.inner_ = inner_ * k;
            break;
    }
    return c;
}

double YoungCore::base(double s) const {
    switch (kind_) {
        case CoreKind::power:
            return coefficient_ * std::pow(s, exponent_);
        case CoreKind::linf:
            return s <= 1.0 ? 0.0 : kInf;
        case CoreKind::expm1:
            return std::expm1(s);
        case CoreKind::piecewise: {
            const auto it = std::upper_bound(knots_.begin(), knots_.end(), s,
                                             [](double x, const auto& knot) { return x < knot.first; });
            if (it == knots_.end()) {
                const auto& [t1, v1] = knots_.back();
                const auto& [t0, v0] = knots_[knots_.size() - 2];
                if (s == t1) return v1;
                if (!std::isfinite(v1) || !std::isfinite(v0)) return kInf;
                const double slope = (v1 - v0) / (t1 - t0);
                return slope > 0.0 ? v1 + slope * (s - t1) : kInf;
            }
            const auto& [t1, v1] = *it;
            const auto& [t0, v0] = *(it - 1);
            if (s == t0) return v0;
            if (!std::isfinite(v1) || !std::isfinite(v0)) return kInf;
            return v0 + (v1 - v0) * (s - t0) / (t1 - t0);
        }
    }
    return kInf;
}

double YoungCore::operator()(double s) const {
    if (std::isnan(s) || s < 0.0) throw DomainError("YoungCore: argument must be >= 0");
    if (s == kInf) return kInf;
    return base(inner_ == 1.0 ? s : std::pow(s, inner_));
}

std::string YoungCore::describe() const {
    std::string inner = inner_ == 1.0 ? "" : "(s^" + fmt_num(inner_) + ")";
    switch (kind_) {
        case CoreKind::power:
            return fmt_num(coefficient_) + "*s^" + fmt_num(exponent_);
        case CoreKind::linf:
            return "linf";
        case CoreKind::expm1:
            return "expm1" + inner;
        case CoreKind::piecewise:
            return "piecewise[" + std::to_string(knots_.size()) + "]" + inner;
    }
    return "?";
}

QuasiYoungFunction::QuasiYoungFunction(YoungCore core, double order) : core_(std::move(core)), order_(order) {
    if (!(order > 0.0 && order <= 1.0)) throw DomainError("QuasiYoungFunction: order must lie in (0,1]");
}

QuasiYoungFunction QuasiYoungFunction::standard_power(double p) {
    if (!(p > 0.0) || !std::isfinite(p)) throw DomainError("standard_power: need 0 < p < inf");
    const double r = std::min(p, 1.0);
    return QuasiYoungFunction(YoungCore::power(p / r, 1.0 / p), r);
}

QuasiYoungFunction QuasiYoungFunction::plain_power(double p) {
    if (!(p > 0.0) || !std::isfinite(p)) throw DomainError("plain_power: need 0 < p < inf");
    const double r = std::min(p, 1.0);
    return QuasiYoungFunction(YoungCore::power(p / r, 1.0), r);
}

QuasiYoungFunction QuasiYoungFunction::linf() { return QuasiYoungFunction(YoungCore::linf(), 1.0); }

QuasiYoungFunction QuasiYoungFunction::expm1() { return QuasiYoungFunction(YoungCore::expm1(), 1.0); }

double QuasiYoungFunction::operator()(double t) const {
    if (std::isnan(t) || t < 0.0) throw DomainError("QuasiYoungFunction: argument must be >= 0");
    return core_(std::pow(t, order_));
}

QuasiYoungFunction QuasiYoungFunction::with_order(double r) const {
    if (!(r > 0.0 && r <= order_)) throw DomainError("with_order: new order must lie in (0, current order]");
    if (r == order_) return *this;
    return QuasiYoungFunction(core_.with_inner_exponent(order_ / r), r);
}

std::string QuasiYoungFunction::describe() const {
    return core_.describe() + " @order " + fmt_num(order_);
}

std::vector<std::pair<double, double>> read_knot_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("read_knot_csv: cannot open '" + path + "'");
    std::vector<std::pair<double, double>> knots;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream row(line);
        std::string a, b;
        if (!(row >> a >> b)) throw DomainError(path + ":" + std::to_string(line_no) + ": expected two columns");
        try {
            knots.emplace_back(std::stod(a), b == "inf" ? kInf : std::stod(b));
        } catch (const std::invalid_argument&) {
            if (knots.empty() && line_no == 1) continue;  // header row
            throw DomainError(path + ":" + std::to_string(line_no) + ": not a number");
        }
    }
    return knots;
}

QuasiYoungFunction parse_quasi_young(const std::string& spec) {
    const auto colon = spec.find(':');
    const std::string name = spec.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
    auto number = [&]() {
        try {
            return std::stod(arg);
        } catch (const std::exception&) {
            throw DomainError("parse_quasi_young: '" + spec + "' needs a numeric parameter");
        }
    };
    if (name == "power") return QuasiYoungFunction::standard_power(number());
    if (name == "lp") return QuasiYoungFunction::plain_power(number());
    if (name == "linf") return QuasiYoungFunction::linf();
    if (name == "expm1") return QuasiYoungFunction::expm1();
    if (name == "piecewise") return QuasiYoungFunction(YoungCore::piecewise(read_knot_csv(arg)), 1.0);
    throw DomainError("parse_quasi_young: unknown builder '" + spec + "'");
}

QuasiYoungReport verify_quasi_young(const QuasiYoungFunction& phi, std::span<const double> grid) {
    if (grid.size() < 3 || grid.front() != 0.0) throw DomainError("verify_quasi_young: grid must start at 0 with >= 3 points");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1])) throw DomainError("verify_quasi_young: grid must be strictly increasing");

    const auto& core = phi.core();
    std::vector<double> v(grid.size());
    double scale = 1.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        v[i] = core(grid[i]);
        if (std::isfinite(v[i])) scale = std::max(scale, v[i]);
    }

    QuasiYoungReport rep;
    auto fail = [&](std::size_t i, const std::string& why) {
        rep.pass = false;
        if (!rep.first_violation) {
            rep.first_violation = i;
            rep.violation = why;
        }
    };

    if (v[0] != 0.0) {
        rep.zero_at_origin = false;
        fail(0, "value at 0 is not 0");
    }
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (v[i] < v[i - 1]) {
            rep.monotone = false;
            fail(i, "decreasing");
        }
    }
    const double slack = 1e-12 * scale;
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
        const double t0 = grid[i - 1], t1 = grid[i], t2 = grid[i + 1];
        // A chord whose right end is +inf is satisfied; +inf then finite is not.
        if (v[i + 1] == kInf) continue;
        if (v[i] == kInf || v[i - 1] == kInf) {
            rep.convex = false;
            fail(i, "finite value after +inf");
            continue;
        }
        const double chord = ((t2 - t1) * v[i - 1] + (t1 - t0) * v[i + 1]) / (t2 - t0);
        if (v[i] > chord + slack) {
            rep.convex = false;
            fail(i, "second difference below zero");
        }
    }
    const std::size_t n = v.size();
    const bool reaches_inf = v[n - 1] == kInf;
    const bool rising = std::isfinite(v[n - 2]) && v[n - 1] > v[n - 2];
    if (!reaches_inf && !rising) {
        rep.unbounded = false;
        fail(n - 1, "does not grow at the end of the grid");
    }
    return rep;
}

LimitEstimate limit_ratio_at_zero(const QuasiYoungFunction& psi, const QuasiYoungFunction& phi,
                                  std::span<const double> t_seq) {
    if (t_seq.size() < 3) throw DomainError("limit_ratio_at_zero: need at least three points");
    for (std::size_t i = 0; i < t_seq.size(); ++i) {
        if (!(t_seq[i] > 0.0)) throw DomainError("limit_ratio_at_zero: points must be positive");
        if (i > 0 && !(t_seq[i] < t_seq[i - 1])) throw DomainError("limit_ratio_at_zero: sequence must decrease");
    }
    if (!(t_seq.back() < 1e-8)) throw DomainError("limit_ratio_at_zero: sequence must reach below 1e-8");

    LimitEstimate est;
    for (double t : t_seq) {
        const double num = psi(t);
        const double den = phi(t);
        if (den == 0.0) {
            if (num == 0.0) {
                est.ratios.push_back(0.0);
                continue;
            }
            est.division_flag = true;
            est.finite = false;
            return est;
        }
        est.ratios.push_back(num / den);
    }

    const auto n = est.ratios.size();
    const double a = est.ratios[n - 3], b = est.ratios[n - 2], c = est.ratios[n - 1];
    const double ref = std::max({std::abs(a), std::abs(b), std::abs(c)});
    const bool relative = ref == 0.0 || (std::abs(a - c) <= 1e-3 * ref && std::abs(b - c) <= 1e-3 * ref);
    const bool to_zero = a >= b && b >= c && a <= 1e-6;
    if (std::isfinite(c) && (relative || to_zero)) {
        est.stabilized = true;
        est.finite = true;
        est.value = relative ? c : 0.0;
    }
    return est;
}

}  // namespace oms
