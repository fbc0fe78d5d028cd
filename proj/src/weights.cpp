#include "oms/weights.hpp"

#include "oms/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace oms {
namespace {

double euclid(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

// |x| and |xi| of a point; one coordinate means xi is absent.
std::pair<double, double> split_norms(std::span<const double> p) {
    if (p.size() == 1) return {std::abs(p[0]), 0.0};
    if (p.size() % 2 != 0) throw DomainError("Weight: point dimension must be 1 or even");
    const auto half = p.size() / 2;
    return {euclid(p.first(half)), euclid(p.subspan(half))};
}

std::string num(double x) {
    std::ostringstream os;
    os << x;
    return os.str();
}

}  // namespace

std::string to_string(WeightClass c) {
    switch (c) {
        case WeightClass::P: return "P";
        case WeightClass::PE0: return "PE0";
        case WeightClass::PE: return "PE";
        case WeightClass::unknown: return "unknown";
    }
    return "unknown";
}

Weight Weight::constant() { return Weight{}; }

Weight Weight::poly(double r) {
    if (!std::isfinite(r)) throw DomainError("Weight::poly: r must be finite");
    Weight w;
    w.kind_ = WeightKind::poly;
    w.r_ = r;
    w.tag_ = WeightClass::P;
    if (r != 0.0) {
        Weight v = w;
        v.r_ = std::abs(r);
        w.companion_ = std::make_shared<const Weight>(std::move(v));
    }
    return w;
}

Weight Weight::exp(double s, double sigma, double r) {
    if (!(s >= 0.5) || !(sigma >= 0.5) || !std::isfinite(r)) throw DomainError("Weight::exp: need s, sigma >= 1/2");
    Weight w;
    w.kind_ = WeightKind::exp;
    w.s_ = s;
    w.sigma_ = sigma;
    w.r_ = r;
    if (r == 0.0) {
        w.tag_ = WeightClass::P;
    } else if (s > 1.0 && sigma > 1.0) {
        w.tag_ = WeightClass::PE0;
    } else if (s >= 1.0 && sigma >= 1.0) {
        w.tag_ = WeightClass::PE;
    } else {
        w.tag_ = WeightClass::unknown;
    }
    if (r != 0.0 && s >= 1.0 && sigma >= 1.0) {
        Weight v = w;
        v.r_ = std::abs(r);
        w.companion_ = std::make_shared<const Weight>(std::move(v));
    }
    return w;
}

Weight Weight::exp_norm(double r) {
    if (!std::isfinite(r)) throw DomainError("Weight::exp_norm: r must be finite");
    Weight w;
    w.kind_ = WeightKind::exp_norm;
    w.r_ = r;
    w.tag_ = r == 0.0 ? WeightClass::P : WeightClass::PE;
    if (r != 0.0) {
        Weight v = w;
        v.r_ = std::abs(r);
        w.companion_ = std::make_shared<const Weight>(std::move(v));
    }
    return w;
}

Weight Weight::tabulated(std::vector<std::vector<double>> points, std::vector<double> values) {
    if (points.empty() || points.size() != values.size()) throw DomainError("Weight::tabulated: need matching non-empty rows");
    for (double v : values)
        if (!(v > 0.0) || !std::isfinite(v)) throw DomainError("Weight::tabulated: values must be positive and finite");
    Weight w;
    w.kind_ = WeightKind::tabulated;
    w.tag_ = WeightClass::unknown;
    w.table_points_ = std::make_shared<const std::vector<std::vector<double>>>(std::move(points));
    w.table_values_ = std::make_shared<const std::vector<double>>(std::move(values));
    return w;
}

double Weight::log_eval(std::span<const double> point) const {
    switch (kind_) {
        case WeightKind::constant:
            return 0.0;
        case WeightKind::poly: {
            const auto [x, xi] = split_norms(point);
            return r_ * std::log1p(x + xi);
        }
        case WeightKind::exp: {
            const auto [x, xi] = split_norms(point);
            return r_ * (std::pow(x, 1.0 / s_) + std::pow(xi, 1.0 / sigma_));
        }
        case WeightKind::exp_norm:
            return r_ * euclid(point);
        case WeightKind::tabulated: {
            const auto& pts = *table_points_;
            std::size_t best = 0;
            double best_d = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < pts.size(); ++i) {
                if (pts[i].size() != point.size()) throw DomainError("Weight::tabulated: point dimension mismatch");
                double d = 0.0;
                for (std::size_t k = 0; k < point.size(); ++k) d += (pts[i][k] - point[k]) * (pts[i][k] - point[k]);
                if (d < best_d) {
                    best_d = d;
                    best = i;
                }
            }
            return std::log((*table_values_)[best]);
        }
    }
    return 0.0;
}

double Weight::operator()(std::span<const double> point) const {
    if (kind_ == WeightKind::constant) return 1.0;
    if (kind_ == WeightKind::poly) {
        const auto [x, xi] = split_norms(point);
        return std::pow(1.0 + x + xi, r_);
    }
    return std::exp(log_eval(point));
}

std::string Weight::describe() const {
    switch (kind_) {
        case WeightKind::constant: return "const";
        case WeightKind::poly: return "poly:" + num(r_);
        case WeightKind::exp: return "exp:" + num(s_) + "," + num(sigma_) + "," + num(r_);
        case WeightKind::exp_norm: return "expnorm:" + num(r_);
        case WeightKind::tabulated: return "tabulated[" + std::to_string(table_values_->size()) + "]";
    }
    return "?";
}

Weight parse_weight(const std::string& spec) {
    const auto colon = spec.find(':');
    const std::string name = spec.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
    auto numbers = [&]() {
        std::vector<double> out;
        std::string item;
        std::istringstream in(arg);
        while (std::getline(in, item, ',')) {
            try {
                out.push_back(std::stod(item));
            } catch (const std::exception&) {
                throw DomainError("parse_weight: bad number in '" + spec + "'");
            }
        }
        return out;
    };
    if (name == "const") return Weight::constant();
    if (name == "poly") {
        const auto v = numbers();
        if (v.size() != 1) throw DomainError("parse_weight: poly:r takes one parameter");
        return Weight::poly(v[0]);
    }
    if (name == "exp") {
        const auto v = numbers();
        if (v.size() != 3) throw DomainError("parse_weight: exp:s,sigma,r takes three parameters");
        return Weight::exp(v[0], v[1], v[2]);
    }
    if (name == "expnorm") {
        const auto v = numbers();
        if (v.size() != 1) throw DomainError("parse_weight: expnorm:r takes one parameter");
        return Weight::exp_norm(v[0]);
    }
    if (name == "tabulated") {
        std::ifstream in(arg);
        if (!in) throw DomainError("parse_weight: cannot open '" + arg + "'");
        std::vector<std::vector<double>> pts;
        std::vector<double> vals;
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            std::replace(line.begin(), line.end(), ',', ' ');
            std::istringstream row(line);
            std::vector<double> cols;
            std::string tok;
            bool numeric = true;
            while (row >> tok) {
                try {
                    cols.push_back(std::stod(tok));
                } catch (const std::exception&) {
                    numeric = false;
                    break;
                }
            }
            if (!numeric) {
                if (pts.empty()) continue;  // header
                throw DomainError("parse_weight: non-numeric row in '" + arg + "'");
            }
            if (cols.size() < 2) throw DomainError("parse_weight: rows need point coordinates and a value");
            vals.push_back(cols.back());
            cols.pop_back();
            pts.push_back(std::move(cols));
        }
        return Weight::tabulated(std::move(pts), std::move(vals));
    }
    throw DomainError("parse_weight: unknown builder '" + spec + "'");
}

PointSet box_grid(std::size_t dim, double radius, std::size_t per_axis) {
    if (dim == 0 || per_axis < 2 || !(radius > 0.0)) throw DomainError("box_grid: need dim >= 1, per_axis >= 2, radius > 0");
    const double step = 2.0 * radius / static_cast<double>(per_axis - 1);
    std::size_t total = 1;
    for (std::size_t k = 0; k < dim; ++k) total *= per_axis;
    PointSet pts;
    pts.reserve(total);
    for (std::size_t flat = 0; flat < total; ++flat) {
        std::vector<double> p(dim);
        auto rest = flat;
        for (std::size_t k = 0; k < dim; ++k) {
            p[k] = -radius + step * static_cast<double>(rest % per_axis);
            rest /= per_axis;
        }
        pts.push_back(std::move(p));
    }
    return pts;
}

ModerateReport check_weight_product(const Weight& outer, const Weight& first, const Weight& second,
                                    const PointSet& grid) {
    if (grid.empty()) throw DomainError("check_moderate: empty grid");
    const auto dim = grid.front().size();
    std::vector<double> lo(dim, std::numeric_limits<double>::infinity());
    std::vector<double> hi(dim, -std::numeric_limits<double>::infinity());
    for (const auto& p : grid) {
        if (p.size() != dim) throw DomainError("check_moderate: mixed point dimensions");
        for (std::size_t k = 0; k < dim; ++k) {
            lo[k] = std::min(lo[k], p[k]);
            hi[k] = std::max(hi[k], p[k]);
        }
    }
    std::vector<double> log_first(grid.size()), log_second(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        log_first[i] = first.log_eval(grid[i]);
        log_second[i] = second.log_eval(grid[i]);
    }
    const double tol = 1e-12 * (1.0 + *std::max_element(hi.begin(), hi.end()));

    ModerateReport rep;
    std::vector<double> sum(dim);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        for (std::size_t j = 0; j < grid.size(); ++j) {
            bool inside = true;
            for (std::size_t k = 0; k < dim; ++k) {
                sum[k] = grid[i][k] + grid[j][k];
                if (sum[k] < lo[k] - tol || sum[k] > hi[k] + tol) {
                    inside = false;
                    break;
                }
            }
            if (!inside) continue;
            ++rep.pairs_probed;
            const double lr = outer.log_eval(sum) - log_first[i] - log_second[j];
            if (lr > rep.log_C) {
                rep.log_C = lr;
                rep.worst_x = grid[i];
                rep.worst_y = grid[j];
            }
        }
    }
    rep.C = std::exp(rep.log_C);
    return rep;
}

ModerateReport check_moderate(const Weight& omega, const Weight& v, const PointSet& grid) {
    return check_weight_product(omega, omega, v, grid);
}

ClassifyReport classify_weight(const Weight& omega, std::span<const double> radii, std::size_t dim,
                               std::size_t per_axis) {
    if (radii.size() < 2) throw DomainError("classify_weight: need at least two radii");
    for (std::size_t i = 1; i < radii.size(); ++i)
        if (!(radii[i] > radii[i - 1])) throw DomainError("classify_weight: radii must increase");
    if (!(radii.back() / radii.front() >= 100.0)) throw DomainError("classify_weight: radii must span two decades");

    std::vector<PointSet> grids;
    for (double R : radii) grids.push_back(box_grid(dim, R, per_axis));

    auto passes = [&](const Weight& v) {
        const auto prev = check_moderate(omega, v, grids[grids.size() - 2]).log_C;
        const auto last = check_moderate(omega, v, grids.back()).log_C;
        return std::isfinite(last) && last - prev <= std::log(2.0);
    };

    ClassifyReport rep;
    rep.radii.assign(radii.begin(), radii.end());
    rep.dim = dim;
    for (double r : kPolyLadder) {
        if (passes(Weight::poly(r))) {
            rep.p_pass = true;
            break;
        }
    }
    bool all = true;
    for (double r : kExpLadder) {
        if (passes(Weight::exp_norm(r))) {
            rep.pe_pass = true;
            rep.smallest_exp_rate = r;
        } else {
            all = false;
        }
    }
    rep.pe0_pass = all;
    if (rep.p_pass) rep.tag = WeightClass::P;
    else if (rep.pe0_pass) rep.tag = WeightClass::PE0;
    else if (rep.pe_pass) rep.tag = WeightClass::PE;
    return rep;
}

}  // namespace oms
