#pragma once

#include "oms/field.hpp"
#include "oms/orlicz.hpp"

namespace oms {

/// m with step == 1/m (to 1e-12 relative); DomainError otherwise.
std::size_t cells_per_unit(const Axis& axis);

/// (a * b)(n) = sum_k a(k) b(n - k) over the support boxes of two lattice
/// sequences with equal steps. The result covers the full Minkowski sum.
Field conv_discrete(const Field& a, const Field& b);

/// (a *_Lambda f)(x) = sum_k a(k) f(x - k) for a lattice sequence whose steps
/// are integer multiples of the grid steps of f; periodic wrap.
Field conv_semidiscrete(const Field& a, const Field& f);

/// max over x in xs, y in ys of outer(x + y) / (first(x) second(y)): the exact
/// translation constant of the convolution estimates on finite supports.
double support_weight_constant(const Weight& outer, const Weight& first, const Weight& second, const PointSet& xs,
                               const PointSet& ys);

/// Points of the nonzero samples of a field.
PointSet support_points(const Field& f);

/// a_{F,omega,Phi}(k, kappa) = ||F omega||_{L^Phi} over the half-open unit cube
/// [k, k+1) x [kappa, kappa+1), cell measure. Needs steps 1/m. Returned as a
/// counting-measure sequence on Z (rank 1) or Z^2 (rank 2).
Field amalgam_decomposition(const Field& F, const QuasiYoungFunction& inner, const Weight& omega);

/// ||a_{F,omega,inner}||_{l^{phi1,phi2}} (rank 2) or ||a||_{l^{phi1}} (rank 1).
/// With inner = linf this is the W(L^{phi1,phi2}_(omega)) norm.
NormReport wiener_norm(const Field& F, const QuasiYoungFunction& inner, const QuasiYoungFunction& phi1,
                       const QuasiYoungFunction& phi2, const Weight& omega);

/// G = sum a(k, kappa) chi_{(k, kappa) + Q} sampled on the grid of `like`.
Field g_functional(const Field& decomposition, const Field& like);

/// max over grid samples X in cube (k, kappa) of max(omega(X)/omega(k, kappa), omega(k, kappa)/omega(X)):
/// the factor between ||F||_{W(omega)} and ||a_F||_{l_(omega)}.
double cube_moderateness(const Field& grid, const Weight& omega);

struct SamplingReport {
    Field samples;
    double lhs = 0.0;
    double rhs = 0.0;
    double c_alpha = 0.0;
    double c_beta = 0.0;
    /// lhs <= rhs up to 1e-10 relative (bisection precision).
    bool holds = false;
};

/// c_F(k, kappa) = F(alpha k, beta kappa) and the bound
/// ||c_F||_{l^{phi1,phi2}_(omega)} <= (C_alpha C_beta)^{1/r0} ||F||_{W(L^{phi1,phi2}_(omega))}
/// with C_alpha = [1/alpha] + 1 (d = 1 per axis) and omega taken at the sample points.
/// alpha, beta must be positive multiples of the grid steps.
SamplingReport sample_to_lattice(const Field& F, double alpha, double beta, const QuasiYoungFunction& phi1,
                                 const QuasiYoungFunction& phi2, const Weight& omega);

/// Periodic (F * G)(x) = sum_y F(y) G(x - y) h^rank via the DFT.
Field conv_continuous(const Field& F, const Field& G);

/// a *_eps F for a on eps Z^2 aligned with the grid of F; same as conv_semidiscrete.
Field conv_semidiscrete_wiener(const Field& a, const Field& F);

}  // namespace oms
