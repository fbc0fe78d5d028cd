#pragma once

#include "oms/field.hpp"
#include "oms/orlicz.hpp"

#include <optional>

namespace oms {

/// pi^{-1/4} exp(-x^2/2) on the centred grid (N, h); unit L2 norm.
Field gaussian_window(std::size_t n, double h);

/// Cubic B-spline bump supported on [-2 width, 2 width], normalised to unit L2 norm.
Field bump_window(std::size_t n, double h, double width = 1.0);

/// Frequency axis of the DFT comb for the grid of f: xi_m = (m - N/2) 2 pi / L.
Axis frequency_comb(const Axis& x);

/// V_phi f(x_k, xi_m) = (2 pi)^{-1/2} h sum_n f(x_n) conj(phi(x_n - x_k)) e^{-i x_n xi_m}
/// for every grid point x_k, with the window shift wrapped periodically.
/// Axis 0 of the result is x, axis 1 is xi; cell measure h * (2 pi / L).
/// Without `xi` the DFT comb is used (needs even N); any other frequency axis
/// is evaluated by direct summation.
Field stft(const Field& f, const Field& phi, const std::optional<Axis>& xi = std::nullopt);

/// Separable lattice a Z x b Z with a = time_step * h and b = freq_step * 2 pi / L.
/// Both steps must divide N.
class GaborSystem {
public:
    GaborSystem(Field window, std::size_t time_step, std::size_t freq_step);

    const Field& window() const { return window_; }
    std::size_t n() const { return window_.axis(0).count; }
    double h() const { return window_.axis(0).step; }
    std::size_t time_step() const { return time_step_; }
    std::size_t freq_step() const { return freq_step_; }
    double a() const { return static_cast<double>(time_step_) * h(); }
    double b() const;
    /// Samples per coefficient, N / (time_step * freq_step); equals 2 pi / (a b).
    double redundancy() const;
    Axis time_axis() const;
    Axis freq_axis() const;

    /// Same lattice with another window on the same grid.
    GaborSystem with_window(Field window) const;

private:
    Field window_;
    std::size_t time_step_;
    std::size_t freq_step_;
};

/// C f = {V_phi f(j, iota)} over the lattice; counting measure, axis 0 = j, axis 1 = iota.
Field analysis(const GaborSystem& sys, const Field& f);

/// D c = sum c(j, iota) e^{i x iota} psi(x - j) with psi the window of `sys`, periodic wrap.
Field synthesis(const GaborSystem& sys, const Field& c);

/// D_psi C_phi f.
Field frame_operator(const GaborSystem& analysis_sys, const GaborSystem& synthesis_sys, const Field& f);
/// S_{phi,phi} f.
Field frame_operator(const GaborSystem& sys, const Field& f);

struct FrameBounds {
    double lower = 0.0;
    double upper = 0.0;
    bool is_frame = false;
    int iterations = 0;
};

/// Extreme eigenvalues of S_{phi,phi} by power iteration on S and on B I - S.
FrameBounds frame_bounds(const GaborSystem& sys, double tol = 1e-8, std::uint64_t seed = 1);

struct DualWindow {
    Field window;
    /// ||S psi - phi||_2 / ||phi||_2 at exit.
    double residual = 0.0;
    int iterations = 0;
    /// Largest ||D_psi C_phi f - f|| / ||f|| over the built-in validation probes.
    double reconstruction_residual = 0.0;
};

/// Canonical dual psi = S^{-1} phi by conjugate gradients. Throws
/// ConvergenceError when the residual stays above tol * ||phi|| for 3N iterations.
DualWindow dual_window(const GaborSystem& sys, double tol = 1e-12);

struct LatticeCertificate {
    std::size_t time_step = 0;
    std::size_t freq_step = 0;
    FrameBounds bounds;
    int halvings = 0;
};

/// Halve the lattice steps (time first, then frequency, alternating) until
/// A/B >= min_ratio. Throws DomainError when no admissible step is left.
LatticeCertificate certify_lattice(const Field& window, std::size_t time_step, std::size_t freq_step,
                                   double min_ratio = 0.01);

/// ||V_phi f||_{L^{phi1,phi2}_(omega)} with x as the inner variable.
NormReport mod_norm(const Field& f, const Field& phi, const QuasiYoungFunction& phi1, const QuasiYoungFunction& phi2,
                    const Weight& omega);

/// Mixed lattice norm of Gabor coefficients (counting measure).
NormReport coef_norm(const Field& c, const QuasiYoungFunction& phi1, const QuasiYoungFunction& phi2,
                     const Weight& omega);

/// Phi(x, xi) = phi1(x) conj(hat phi2(xi)) e^{-i x xi} on the (x, xi) grid of
/// the DFT comb, hat being the unitary Fourier transform.
Field tensor_window(const Field& phi1, const Field& phi2);

}  // namespace oms
