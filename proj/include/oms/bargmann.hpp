#pragma once

#include "oms/field.hpp"
#include "oms/orlicz.hpp"

#include <array>
#include <vector>

namespace oms {

/// h_0 .. h_k at x by the normalised three-term recurrence, with running
/// rescaling so large orders at large |x| neither overflow nor underflow.
std::vector<double> hermite_values(std::size_t k, double x);

/// h_alpha(x) for a multi-index (one entry per coordinate, d = alpha.size()).
double hermite_eval(std::span<const std::size_t> alpha, std::span<const double> x);
double hermite_eval(std::size_t n, double x);

/// h_alpha sampled on the centred grid (N, h).
Field hermite_function(std::size_t n, std::size_t samples, double h);

struct HermiteCoeffs {
    std::size_t dim = 1;
    /// Highest order per axis.
    std::size_t order = 0;
    /// c(alpha) at alpha_1 + (order+1) alpha_2.
    std::vector<cplx> values;
    /// ||f||_2^2 by quadrature.
    double norm_sq = 0.0;
    /// ||f||_2^2 - sum |c|^2.
    double parseval_defect = 0.0;
    /// |c| at the highest order(s): the truncation indicator.
    double tail = 0.0;
    /// True when |f| at the grid boundary exceeds 1e-12 of its peak.
    bool boundary_warning = false;

    cplx at(std::size_t a) const { return values.at(a); }
    cplx at(std::size_t a1, std::size_t a2) const { return values.at(a1 + (order + 1) * a2); }
};

/// c(alpha) = <f, h_alpha> by quadrature; rank-1 fields give d = 1, rank-2 cell fields d = 2.
HermiteCoeffs hermite_expand(const Field& f, std::size_t order);

/// Kernel quadrature  sum_y f(y) A(z, y) h  for d = 1.
cplx bargmann_at(const Field& f, cplx z);
/// Same for d = 2 with f a rank-2 cell field; the kernel factorises over coordinates.
cplx bargmann_at(const Field& f, std::array<cplx, 2> z);

/// Hermite-monomial route sum c(alpha) z^alpha / sqrt(alpha!). Throws
/// TruncationError when the Cauchy-Schwarz bound on the omitted orders,
/// sqrt(defect) * sqrt(sum_{n>K} |z|^{2n}/n!), exceeds `tol`.
cplx bargmann_series(const HermiteCoeffs& c, cplx z, double tol = 1e-6);
cplx bargmann_series(const HermiteCoeffs& c, std::array<cplx, 2> z, double tol = 1e-6);

/// An entire function F on the image of a real (x, xi) grid under
/// z = 2^{-1/2}(x - i xi); axis 0 is x, axis 1 is xi. The stored samples are
/// F(z) e^{-|z|^2/2}, which stay finite where F itself overflows.
struct FockField {
    Field damped;

    cplx z(std::size_t k, std::size_t m) const;
    /// F(z) itself (may overflow far from the origin).
    cplx value(std::size_t k, std::size_t m) const;
};

/// Bargmann transform of a 1-D field by kernel quadrature on the (x, xi) grid.
FockField bargmann(const Field& f, const Axis& x, const Axis& xi);

/// Fill a Fock grid from any callable F(z).
template <class F>
FockField sample_fock(const Axis& x, const Axis& xi, F&& fn) {
    FockField out{Field({x, xi}, Measure::cell)};
    for (std::size_t m = 0; m < xi.count; ++m)
        for (std::size_t k = 0; k < x.count; ++k) {
            const cplx z = out.z(k, m);
            out.damped.at(k, m) = fn(z) * std::exp(-0.5 * std::norm(z));
        }
    return out;
}

/// Largest |dF/d zbar| / (|D_x F| + |D_xi F| + |F|) over interior points with
/// |z| <= radius, using fourth-order central differences in x and xi.
double cauchy_riemann_residual(const FockField& F, double radius = 4.0);

/// ||F||_B: inner L^{phi1} over x of (2 pi)^{-1/2} e^{-|z|^2/2} F(z) omega(x, xi) <z>^{-bracket},
/// outer L^{phi2} over xi; <z> = (1 + |z|^2)^{1/2}.
NormReport b_norm(const FockField& F, const QuasiYoungFunction& phi1, const QuasiYoungFunction& phi2,
                  const Weight& omega, double bracket = 0.0);

struct IsometryReport {
    double mod_norm = 0.0;
    double b_norm = 0.0;
    double rel_error = 0.0;
};

/// Compare ||f||_M (Gaussian window, DFT comb) with ||V f||_B on the same (x, xi)
/// grid, both restricted to the box |Re z|, |Im z| <= z_radius. The default box
/// leaves e^{-|z|^2/2} below 1e-21 at its edge; grid points outside it only carry
/// roundoff, which steep weights and r0 < 1 would otherwise amplify.
IsometryReport isometry_check(const Field& f, const QuasiYoungFunction& phi1, const QuasiYoungFunction& phi2,
                              const Weight& omega, double z_radius = 10.0);

}  // namespace oms
