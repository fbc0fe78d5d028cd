#pragma once

#include "oms/field.hpp"
#include "oms/weights.hpp"
#include "oms/young.hpp"

#include <span>
#include <vector>

namespace oms {

enum class NormMethod { zero, closed_form, bisection, not_in_space };

struct BracketStep {
    double lambda;
    double modular;
};

/// Result of a Luxemburg (quasi-)norm evaluation.
///
/// For bisection, `value` is the upper end of the final bracket, so the modular
/// there is <= 1, and the modular at `bracket_lo` is > 1.
struct NormReport {
    double value = 0.0;
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    int iterations = 0;
    double modular_at_value = 0.0;
    bool in_space = true;
    NormMethod method = NormMethod::zero;
    /// Inner norms f_{1,omega}(x_2) of a mixed evaluation (empty otherwise).
    std::vector<double> inner_values;
    /// (lambda, modular) pairs visited by bisection when requested.
    std::vector<BracketStep> trace;
};

struct LuxemburgOptions {
    /// Use bisection even where a closed form exists.
    bool force_bisection = false;
    bool record_trace = false;
    double rel_tol = 1e-12;
};

/// sum_i mu * core((m_i / lambda)^order) over nonnegative magnitudes m_i.
double modular(std::span<const double> magnitudes, double point_measure, const QuasiYoungFunction& phi,
               double lambda);

/// inf { lambda > 0 : modular(lambda) <= 1 } for precomputed magnitudes |f * omega|.
NormReport luxemburg_magnitudes(std::span<const double> magnitudes, double point_measure,
                                const QuasiYoungFunction& phi, const LuxemburgOptions& opts = {});

/// Weighted Luxemburg norm of a sequence (counting measure) or sampled field
/// (cell measure) over all of its points.
NormReport luxemburg(const Field& data, const QuasiYoungFunction& phi, const Weight& omega,
                     const LuxemburgOptions& opts = {});

/// Mixed norm of a rank-2 field: inner L^{phi1} over axis 0 of f * omega for
/// each axis-1 index, then L^{phi2} of those inner norms with no weight.
/// Both functions are re-expressed at the common order min(order1, order2).
NormReport mixed_luxemburg(const Field& data, const QuasiYoungFunction& phi1, const QuasiYoungFunction& phi2,
                           const Weight& omega, const LuxemburgOptions& opts = {});

/// Relative gap between the direct quasi-norm and (|| |f omega|^{r0} ||_{Phi_0,1, Phi_0,2})^{1/r0}.
/// Rank-1 data uses phi1 only.
double order_transfer_check(const Field& data, const QuasiYoungFunction& phi1, const QuasiYoungFunction& phi2,
                            const Weight& omega);

/// Translation by a coordinate shift; each component must be an integer
/// number of steps of its axis.
Field translate(const Field& data, std::span<const double> shift);

/// Constant C with ||f||_{Phi1,Phi2} <= C * max(||f||_{r0}, ||f||_inf) for
/// unweighted rank-2 data with the given axis measures, from the envelope
/// Psi(s) = (Phi_0(t2)/t2) s on [0,t2], +inf beyond, that dominates both cores.
double embedding_upper_constant(const QuasiYoungFunction& phi1, const QuasiYoungFunction& phi2, double inner_measure,
                                double outer_measure);

/// K(F) = inf over F = g + h of ( sum mu |g| + sup |h| ) for nonnegative samples F.
double decomposition_norm(std::span<const double> magnitudes, double point_measure);

/// Constant C with K(|f|^{r0}) <= C ||f||_{Phi}^{r0}, from the minorant
/// (Phi_0(t1)/t1)(s - t1)_+ of the core.
double embedding_lower_constant(const QuasiYoungFunction& phi);

}  // namespace oms
