#include "oms/amalgam.hpp"

#include "oms/errors.hpp"
#include "oms/fft.hpp"

#include <algorithm>
#include <cmath>

namespace oms {
namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

std::size_t step_ratio(double coarse, double fine, const char* who) {
    const double q = coarse / fine;
    const double r = std::round(q);
    if (r < 1.0 || std::abs(q - r) > 1e-9 * r) throw DomainError(std::string(who) + ": lattice not aligned with the grid");
    return static_cast<std::size_t>(r);
}

std::size_t wrap(std::int64_t i, std::size_t n) {
    const auto m = static_cast<std::int64_t>(n);
    return static_cast<std::size_t>(((i % m) + m) % m);
}

void require_rank(const Field& f, const char* who) {
    if (f.rank() < 1 || f.rank() > 2) throw DomainError(std::string(who) + ": one or two axes required");
}

}  // namespace

std::size_t cells_per_unit(const Axis& axis) {
    const double m = 1.0 / axis.step;
    const double r = std::round(m);
    if (r < 1.0 || std::abs(m - r) > 1e-12 * r) throw DomainError("cells_per_unit: grid step is not 1/m");
    return static_cast<std::size_t>(r);
}

Field conv_discrete(const Field& a, const Field& b) {
    require_rank(a, "conv_discrete");
    if (a.rank() != b.rank() || a.measure() != Measure::counting || b.measure() != Measure::counting)
        throw DomainError("conv_discrete: need two lattice sequences of equal rank");
    std::vector<Axis> axes;
    for (std::size_t k = 0; k < a.rank(); ++k) {
        if (std::abs(a.axis(k).step - b.axis(k).step) > 1e-12 * a.axis(k).step)
            throw DomainError("conv_discrete: lattices differ");
        axes.push_back(Axis{a.axis(k).first + b.axis(k).first, a.axis(k).count + b.axis(k).count - 1, a.axis(k).step});
    }
    Field out = make_sequence(axes);
    if (a.rank() == 1) {
        for (std::size_t i = 0; i < a.axis(0).count; ++i) {
            if (a.at(i) == cplx{}) continue;
            for (std::size_t j = 0; j < b.axis(0).count; ++j) out.at(i + j) += a.at(i) * b.at(j);
        }
        return out;
    }
    const std::size_t a0 = a.axis(0).count, a1 = a.axis(1).count, b0 = b.axis(0).count, b1 = b.axis(1).count;
    for (std::size_t i1 = 0; i1 < a1; ++i1)
        for (std::size_t i0 = 0; i0 < a0; ++i0) {
            const cplx av = a.at(i0, i1);
            if (av == cplx{}) continue;
            for (std::size_t j1 = 0; j1 < b1; ++j1)
                for (std::size_t j0 = 0; j0 < b0; ++j0) out.at(i0 + j0, i1 + j1) += av * b.at(j0, j1);
        }
    return out;
}

Field conv_semidiscrete(const Field& a, const Field& f) {
    require_rank(f, "conv_semidiscrete");
    if (a.rank() != f.rank() || a.measure() != Measure::counting || f.measure() != Measure::cell)
        throw DomainError("conv_semidiscrete: need a lattice sequence and a sampled field of equal rank");
    std::vector<std::size_t> ratio(f.rank());
    for (std::size_t k = 0; k < f.rank(); ++k) ratio[k] = step_ratio(a.axis(k).step, f.axis(k).step, "conv_semidiscrete");

    Field out(f.axes(), f.measure());
    std::vector<std::int64_t> shift(f.rank());
    for (std::size_t i = 0; i < a.size(); ++i) {
        const cplx av = a.values()[i];
        if (av == cplx{}) continue;
        const std::size_t i0 = i % a.axis(0).count;
        shift[0] = (a.axis(0).first + static_cast<std::int64_t>(i0)) * static_cast<std::int64_t>(ratio[0]);
        if (f.rank() == 2) {
            const std::size_t i1 = i / a.axis(0).count;
            shift[1] = (a.axis(1).first + static_cast<std::int64_t>(i1)) * static_cast<std::int64_t>(ratio[1]);
        }
        const Field moved = translate(f, shift);
        for (std::size_t j = 0; j < out.size(); ++j) out.values()[j] += av * moved.values()[j];
    }
    return out;
}

double support_weight_constant(const Weight& outer, const Weight& first, const Weight& second, const PointSet& xs,
                               const PointSet& ys) {
    double worst = 0.0;
    std::vector<double> sum;
    for (const auto& x : xs) {
        const double lx = first.log_eval(x);
        for (const auto& y : ys) {
            if (x.size() != y.size()) throw DomainError("support_weight_constant: point dimensions differ");
            sum.resize(x.size());
            for (std::size_t k = 0; k < x.size(); ++k) sum[k] = x[k] + y[k];
            worst = std::max(worst, std::exp(outer.log_eval(sum) - lx - second.log_eval(y)));
        }
    }
    return worst;
}

PointSet support_points(const Field& f) {
    PointSet pts;
    for (std::size_t i = 0; i < f.size(); ++i)
        if (f.values()[i] != cplx{}) pts.push_back(f.coordinates(i));
    return pts;
}

Field amalgam_decomposition(const Field& F, const QuasiYoungFunction& inner, const Weight& omega) {
    require_rank(F, "amalgam_decomposition");
    if (F.measure() != Measure::cell) throw DomainError("amalgam_decomposition: expected a sampled field");
    const std::size_t rank = F.rank();
    std::vector<std::int64_t> m(rank), cube_lo(rank);
    std::vector<Axis> cube_axes;
    for (std::size_t k = 0; k < rank; ++k) {
        const Axis& ax = F.axis(k);
        m[k] = static_cast<std::int64_t>(cells_per_unit(ax));
        cube_lo[k] = floor_div(ax.first, m[k]);
        const std::int64_t hi = floor_div(ax.last(), m[k]);
        cube_axes.push_back(Axis{cube_lo[k], static_cast<std::size_t>(hi - cube_lo[k] + 1), 1.0});
    }

    // Bucket weighted magnitudes by cube.
    const std::size_t ncubes = rank == 1 ? cube_axes[0].count : cube_axes[0].count * cube_axes[1].count;
    std::vector<std::vector<double>> buckets(ncubes);
    std::vector<double> point(rank);
    for (std::size_t i = 0; i < F.size(); ++i) {
        const std::size_t i0 = i % F.axis(0).count;
        std::size_t c = static_cast<std::size_t>(floor_div(F.axis(0).first + static_cast<std::int64_t>(i0), m[0]) - cube_lo[0]);
        if (rank == 2) {
            const std::size_t i1 = i / F.axis(0).count;
            const auto c1 = static_cast<std::size_t>(floor_div(F.axis(1).first + static_cast<std::int64_t>(i1), m[1]) - cube_lo[1]);
            c += cube_axes[0].count * c1;
        }
        const double mag = std::abs(F.values()[i]);
        if (std::isnan(mag)) throw DomainError("amalgam_decomposition: NaN sample");
        if (mag == 0.0) {
            buckets[c].push_back(0.0);
            continue;
        }
        F.coordinates(i, point);
        buckets[c].push_back(mag * omega(point));
    }

    Field a = make_sequence(cube_axes);
    const double mu = F.point_measure();
    for (std::size_t c = 0; c < ncubes; ++c) {
        const auto rep = luxemburg_magnitudes(buckets[c], mu, inner);
        a.values()[c] = rep.value;
    }
    return a;
}

NormReport wiener_norm(const Field& F, const QuasiYoungFunction& inner, const QuasiYoungFunction& phi1,
                       const QuasiYoungFunction& phi2, const Weight& omega) {
    const Field a = amalgam_decomposition(F, inner, omega);
    const auto unit = Weight::constant();
    if (a.rank() == 1) return luxemburg(a, phi1, unit);
    return mixed_luxemburg(a, phi1, phi2, unit);
}

Field g_functional(const Field& decomposition, const Field& like) {
    require_rank(like, "g_functional");
    Field G(like.axes(), like.measure());
    std::vector<std::int64_t> m(like.rank());
    for (std::size_t k = 0; k < like.rank(); ++k) m[k] = static_cast<std::int64_t>(cells_per_unit(like.axis(k)));
    for (std::size_t i = 0; i < G.size(); ++i) {
        const std::size_t i0 = i % like.axis(0).count;
        const auto k0 = floor_div(like.axis(0).first + static_cast<std::int64_t>(i0), m[0]) - decomposition.axis(0).first;
        std::size_t c = static_cast<std::size_t>(k0);
        if (like.rank() == 2) {
            const std::size_t i1 = i / like.axis(0).count;
            const auto k1 = floor_div(like.axis(1).first + static_cast<std::int64_t>(i1), m[1]) - decomposition.axis(1).first;
            c += decomposition.axis(0).count * static_cast<std::size_t>(k1);
        }
        G.values()[i] = decomposition.values()[c];
    }
    return G;
}

double cube_moderateness(const Field& grid, const Weight& omega) {
    require_rank(grid, "cube_moderateness");
    std::vector<std::int64_t> m(grid.rank());
    for (std::size_t k = 0; k < grid.rank(); ++k) m[k] = static_cast<std::int64_t>(cells_per_unit(grid.axis(k)));
    double worst = 1.0;
    std::vector<double> point(grid.rank()), corner(grid.rank());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        grid.coordinates(i, point);
        const std::size_t i0 = i % grid.axis(0).count;
        corner[0] = static_cast<double>(floor_div(grid.axis(0).first + static_cast<std::int64_t>(i0), m[0]));
        if (grid.rank() == 2) {
            const std::size_t i1 = i / grid.axis(0).count;
            corner[1] = static_cast<double>(floor_div(grid.axis(1).first + static_cast<std::int64_t>(i1), m[1]));
        }
        worst = std::max(worst, std::exp(std::abs(omega.log_eval(point) - omega.log_eval(corner))));
    }
    return worst;
}

SamplingReport sample_to_lattice(const Field& F, double alpha, double beta, const QuasiYoungFunction& phi1,
                                 const QuasiYoungFunction& phi2, const Weight& omega) {
    if (F.rank() != 2 || F.measure() != Measure::cell) throw DomainError("sample_to_lattice: expected a 2-axis sampled field");
    const std::size_t pa = step_ratio(alpha, F.axis(0).step, "sample_to_lattice");
    const std::size_t pb = step_ratio(beta, F.axis(1).step, "sample_to_lattice");
    const std::size_t m0 = cells_per_unit(F.axis(0));
    const std::size_t m1 = cells_per_unit(F.axis(1));

    // Lattice indices k with alpha k = (pa k) h inside the grid.
    auto lattice_axis = [](const Axis& ax, std::size_t p, double step) {
        const auto pp = static_cast<std::int64_t>(p);
        const std::int64_t lo = -floor_div(-ax.first, pp);  // ceil(first / p)
        const std::int64_t hi = floor_div(ax.last(), pp);
        return Axis{lo, static_cast<std::size_t>(std::max<std::int64_t>(0, hi - lo + 1)), step};
    };
    const Axis k_axis = lattice_axis(F.axis(0), pa, alpha);
    const Axis q_axis = lattice_axis(F.axis(1), pb, beta);
    if (k_axis.count == 0 || q_axis.count == 0) throw DomainError("sample_to_lattice: lattice misses the grid");

    SamplingReport rep;
    rep.samples = make_sequence({k_axis, q_axis});
    for (std::size_t j = 0; j < q_axis.count; ++j)
        for (std::size_t i = 0; i < k_axis.count; ++i) {
            const auto g0 = (k_axis.first + static_cast<std::int64_t>(i)) * static_cast<std::int64_t>(pa) - F.axis(0).first;
            const auto g1 = (q_axis.first + static_cast<std::int64_t>(j)) * static_cast<std::int64_t>(pb) - F.axis(1).first;
            rep.samples.at(i, j) = F.at(static_cast<std::size_t>(g0), static_cast<std::size_t>(g1));
        }

    // [1/alpha] with alpha = pa / m0.
    rep.c_alpha = static_cast<double>(m0 / pa + 1);
    rep.c_beta = static_cast<double>(m1 / pb + 1);
    const double r0 = std::min(phi1.order(), phi2.order());
    rep.lhs = mixed_luxemburg(rep.samples, phi1, phi2, omega).value;
    const double w = wiener_norm(F, QuasiYoungFunction::linf(), phi1, phi2, omega).value;
    rep.rhs = std::pow(rep.c_alpha * rep.c_beta, 1.0 / r0) * w;
    rep.holds = rep.lhs <= rep.rhs * (1.0 + 1e-10);
    return rep;
}

Field conv_continuous(const Field& F, const Field& G) {
    require_rank(F, "conv_continuous");
    if (!F.same_grid(G) || F.measure() != Measure::cell) throw DomainError("conv_continuous: fields live on different grids");
    std::vector<cplx> a(F.values().begin(), F.values().end());
    std::vector<cplx> b(G.values().begin(), G.values().end());
    const std::size_t n0 = F.axis(0).count;
    const std::size_t n1 = F.rank() == 2 ? F.axis(1).count : 1;
    auto forward = [&](std::vector<cplx>& v, FftSign s) {
        if (F.rank() == 1)
            fft_inplace(v, s);
        else
            fft2_inplace(v, n0, n1, s);
    };
    forward(a, FftSign::forward);
    forward(b, FftSign::forward);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] *= b[i];
    forward(a, FftSign::backward);

    // Circular index i - j meets coordinate first + i - j; shift back by `first`.
    Field out(F.axes(), F.measure());
    const double scale = F.point_measure() / static_cast<double>(a.size());
    for (std::size_t i1 = 0; i1 < n1; ++i1) {
        const std::size_t s1 = F.rank() == 2 ? wrap(static_cast<std::int64_t>(i1) - F.axis(1).first, n1) : 0;
        for (std::size_t i0 = 0; i0 < n0; ++i0) {
            const std::size_t s0 = wrap(static_cast<std::int64_t>(i0) - F.axis(0).first, n0);
            out.values()[i0 + n0 * i1] = scale * a[s0 + n0 * s1];
        }
    }
    return out;
}

Field conv_semidiscrete_wiener(const Field& a, const Field& F) {
    if (F.rank() != 2) throw DomainError("conv_semidiscrete_wiener: expected a field on R^2");
    return conv_semidiscrete(a, F);
}

}  // namespace oms
