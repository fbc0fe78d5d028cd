#include "oms/field.hpp"

#include "oms/errors.hpp"

#include <algorithm>
#include <cmath>

namespace oms {

Axis centered_axis(std::size_t n, double step) {
    if (n == 0 || !(step > 0.0)) throw DomainError("centered_axis: need n > 0 and step > 0");
    return Axis{-static_cast<std::int64_t>(n / 2), n, step};
}

Field::Field(std::vector<Axis> axes, Measure measure) : axes_(std::move(axes)), measure_(measure) {
    if (axes_.empty() || axes_.size() > 2) throw DomainError("Field: rank must be 1 or 2");
    std::size_t total = 1;
    for (const auto& a : axes_) {
        if (a.count == 0 || !(a.step > 0.0)) throw DomainError("Field: empty axis or non-positive step");
        total *= a.count;
    }
    values_.assign(total, cplx{});
}

Field::Field(std::vector<Axis> axes, Measure measure, std::vector<cplx> values) : Field(std::move(axes), measure) {
    if (values.size() != values_.size()) throw DomainError("Field: value count does not match grid");
    values_ = std::move(values);
}

double Field::point_measure() const {
    if (measure_ == Measure::counting) return 1.0;
    double m = 1.0;
    for (const auto& a : axes_) m *= a.step;
    return m;
}

void Field::coordinates(std::size_t flat, std::span<double> out) const {
    for (std::size_t k = 0; k < axes_.size(); ++k) {
        const auto n = axes_[k].count;
        out[k] = axes_[k].coord(flat % n);
        flat /= n;
    }
}

std::vector<double> Field::coordinates(std::size_t flat) const {
    std::vector<double> out(axes_.size());
    coordinates(flat, out);
    return out;
}

bool Field::same_grid(const Field& other) const {
    return axes_ == other.axes_ && measure_ == other.measure_;
}

Field& Field::operator+=(const Field& other) {
    if (!same_grid(other)) throw DomainError("Field +=: grid mismatch");
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
    return *this;
}

Field& Field::operator-=(const Field& other) {
    if (!same_grid(other)) throw DomainError("Field -=: grid mismatch");
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
    return *this;
}

Field& Field::operator*=(cplx s) {
    for (auto& v : values_) v *= s;
    return *this;
}

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator*(cplx s, Field a) { return a *= s; }

Field make_sampled_1d(std::size_t n, double h) {
    if (n % 2 != 0) throw DomainError("make_sampled_1d: N must be even");
    return Field({centered_axis(n, h)}, Measure::cell);
}

Field make_sequence(std::vector<Axis> axes) { return Field(std::move(axes), Measure::counting); }

double pairwise_sum(std::span<const double> xs) {
    if (xs.size() <= 16) {
        double s = 0.0;
        for (double x : xs) s += x;
        return s;
    }
    const auto half = xs.size() / 2;
    return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

double l2_norm(const Field& f) {
    std::vector<double> sq(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) sq[i] = std::norm(f.at(i));
    return std::sqrt(pairwise_sum(sq) * f.point_measure());
}

double sup_norm(const Field& f) {
    double m = 0.0;
    for (const auto& v : f.values()) m = std::max(m, std::abs(v));
    return m;
}

Field translate(const Field& f, std::span<const std::int64_t> steps) {
    if (steps.size() != f.rank()) throw DomainError("translate: one shift per axis required");
    if (f.measure() == Measure::counting) {
        auto axes = f.axes();
        for (std::size_t k = 0; k < axes.size(); ++k) axes[k].first += steps[k];
        return Field(std::move(axes), Measure::counting, {f.values().begin(), f.values().end()});
    }
    Field out(f.axes(), f.measure());
    const auto n0 = static_cast<std::int64_t>(f.axis(0).count);
    const auto n1 = f.rank() == 2 ? static_cast<std::int64_t>(f.axis(1).count) : 1;
    const auto s1 = f.rank() == 2 ? steps[1] : 0;
    for (std::int64_t i1 = 0; i1 < n1; ++i1) {
        const auto j1 = ((i1 + s1) % n1 + n1) % n1;
        for (std::int64_t i0 = 0; i0 < n0; ++i0) {
            const auto j0 = ((i0 + steps[0]) % n0 + n0) % n0;
            out.values()[static_cast<std::size_t>(j0 + n0 * j1)] = f.values()[static_cast<std::size_t>(i0 + n0 * i1)];
        }
    }
    return out;
}

}  // namespace oms

namespace oms {

Field restrict_box(const Field& f, std::span<const double> bounds) {
    if (bounds.size() != f.rank()) throw DomainError("restrict_box: one bound per axis required");
    std::vector<Axis> axes = f.axes();
    std::vector<std::size_t> lo(f.rank());
    for (std::size_t k = 0; k < f.rank(); ++k) {
        const Axis& ax = f.axis(k);
        std::size_t i0 = ax.count, i1 = 0;
        for (std::size_t i = 0; i < ax.count; ++i)
            if (std::abs(ax.coord(i)) <= bounds[k]) {
                i0 = std::min(i0, i);
                i1 = i;
            }
        if (i0 == ax.count) throw DomainError("restrict_box: box contains no samples");
        lo[k] = i0;
        axes[k].first = ax.first + static_cast<std::int64_t>(i0);
        axes[k].count = i1 - i0 + 1;
    }
    Field out(axes, f.measure());
    if (f.rank() == 1) {
        for (std::size_t i = 0; i < axes[0].count; ++i) out.at(i) = f.at(lo[0] + i);
    } else {
        for (std::size_t j = 0; j < axes[1].count; ++j)
            for (std::size_t i = 0; i < axes[0].count; ++i) out.at(i, j) = f.at(lo[0] + i, lo[1] + j);
    }
    return out;
}

}  // namespace oms
