#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace oms {

using cplx = std::complex<double>;

/// One axis of a uniform grid or lattice. Sample i sits at (first + i) * step,
/// so lattice and grid coordinates are integers times a spacing and every
/// alignment check reduces to integer divisibility.
struct Axis {
    std::int64_t first = 0;
    std::size_t count = 0;
    double step = 1.0;

    double coord(std::size_t i) const { return static_cast<double>(first + static_cast<std::int64_t>(i)) * step; }
    std::int64_t last() const { return first + static_cast<std::int64_t>(count) - 1; }
    /// Period of the axis when treated as a periodic grid.
    double period() const { return static_cast<double>(count) * step; }

    bool operator==(const Axis&) const = default;
};

/// N samples of spacing h centred on the origin: indices -N/2 .. N/2-1.
Axis centered_axis(std::size_t n, double step);

enum class Measure {
    counting,  ///< every point has mass 1 (sequences on a lattice)
    cell,      ///< every point carries the product of the axis steps (Riemann sums)
};

/// Complex samples on a rank-1 or rank-2 product grid. Axis 0 varies fastest,
/// so for rank 2 the slice with fixed axis-1 index is contiguous; mixed norms
/// take axis 0 as the inner variable.
///
/// With Measure::counting this is a finitely supported lattice sequence; with
/// Measure::cell it is a sampled function on a periodic grid.
class Field {
public:
    Field() = default;
    Field(std::vector<Axis> axes, Measure measure);
    Field(std::vector<Axis> axes, Measure measure, std::vector<cplx> values);

    std::size_t rank() const { return axes_.size(); }
    const Axis& axis(std::size_t k) const { return axes_.at(k); }
    const std::vector<Axis>& axes() const { return axes_; }
    Measure measure() const { return measure_; }
    std::size_t size() const { return values_.size(); }

    std::span<cplx> values() { return values_; }
    std::span<const cplx> values() const { return values_; }

    cplx& at(std::size_t i0) { return values_[i0]; }
    const cplx& at(std::size_t i0) const { return values_[i0]; }
    cplx& at(std::size_t i0, std::size_t i1) { return values_[i0 + axes_[0].count * i1]; }
    const cplx& at(std::size_t i0, std::size_t i1) const { return values_[i0 + axes_[0].count * i1]; }

    /// Mass of one sample: 1 for counting measure, product of steps otherwise.
    double point_measure() const;

    /// Coordinates of the flat index `flat` (one entry per axis).
    void coordinates(std::size_t flat, std::span<double> out) const;
    std::vector<double> coordinates(std::size_t flat) const;

    bool same_grid(const Field& other) const;

    Field& operator+=(const Field& other);
    Field& operator-=(const Field& other);
    Field& operator*=(cplx s);

private:
    std::vector<Axis> axes_;
    Measure measure_ = Measure::cell;
    std::vector<cplx> values_;
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator*(cplx s, Field a);

/// Sampled function on the centred periodic grid of N points, spacing h.
Field make_sampled_1d(std::size_t n, double h);
/// Lattice sequence with counting measure.
Field make_sequence(std::vector<Axis> axes);

/// Euclidean (l2) norm of the samples weighted by the point measure.
double l2_norm(const Field& f);
/// Maximum modulus of the samples.
double sup_norm(const Field& f);

/// Shift by an integer number of steps per axis. Counting-measure sequences
/// are relabelled exactly (support moves, nothing wraps); cell-measure fields
/// are periodic and wrap.
Field translate(const Field& f, std::span<const std::int64_t> steps);

/// Sub-field of the samples with |coordinate_k| <= bounds[k] on every axis.
Field restrict_box(const Field& f, std::span<const double> bounds);
inline Field restrict_box(const Field& f, std::initializer_list<double> bounds) {
    return restrict_box(f, std::span<const double>(bounds.begin(), bounds.size()));
}

/// Pairwise summation of a range; fixed reduction order for reproducible sums.
double pairwise_sum(std::span<const double> xs);

}  // namespace oms
