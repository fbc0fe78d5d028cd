#include "oms/gabor.hpp"

#include "oms/errors.hpp"
#include "oms/fft.hpp"
#include "oms/probes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace oms {
namespace {

const double kInvSqrt2Pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);

double sign_of(std::int64_t q) { return (q % 2 == 0) ? 1.0 : -1.0; }

std::size_t wrap(std::int64_t i, std::size_t n) {
    const auto m = static_cast<std::int64_t>(n);
    return static_cast<std::size_t>(((i % m) + m) % m);
}

void require_centred(const Field& f, const char* who) {
    if (f.rank() != 1) throw DomainError(std::string(who) + ": expected a one-axis sampled field");
    const Axis& ax = f.axis(0);
    if (ax.count == 0 || ax.count % 2 != 0 || ax.first != -static_cast<std::int64_t>(ax.count / 2))
        throw DomainError(std::string(who) + ": expected a centred grid with even N");
}

void require_same_grid(const Field& f, const Field& g, const char* who) {
    require_centred(f, who);
    if (!f.same_grid(g)) throw DomainError(std::string(who) + ": fields live on different grids");
}

cplx inner(std::span<const cplx> a, std::span<const cplx> b) {
    cplx s{};
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * std::conj(b[i]);
    return s;
}

double norm2(std::span<const cplx> a) {
    std::vector<double> sq(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) sq[i] = std::norm(a[i]);
    return std::sqrt(pairwise_sum(sq));
}

}  // namespace

Field gaussian_window(std::size_t n, double h) {
    Field f = make_sampled_1d(n, h);
    const double c = std::pow(std::numbers::pi, -0.25);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = f.axis(0).coord(i);
        f.at(i) = c * std::exp(-0.5 * x * x);
    }
    return f;
}

Field bump_window(std::size_t n, double h, double width) {
    if (!(width > 0.0)) throw DomainError("bump_window: width must be positive");
    Field f = make_sampled_1d(n, h);
    for (std::size_t i = 0; i < n; ++i) {
        const double u = std::abs(f.axis(0).coord(i) / width);
        double v = 0.0;
        if (u < 1.0)
            v = 2.0 / 3.0 - u * u + 0.5 * u * u * u;
        else if (u < 2.0)
            v = (2.0 - u) * (2.0 - u) * (2.0 - u) / 6.0;
        f.at(i) = v;
    }
    const double nrm = l2_norm(f);
    if (nrm == 0.0) throw DomainError("bump_window: support narrower than the grid step");
    f *= 1.0 / nrm;
    return f;
}

Axis frequency_comb(const Axis& x) {
    return centered_axis(x.count, 2.0 * std::numbers::pi / x.period());
}

Field stft(const Field& f, const Field& phi, const std::optional<Axis>& xi) {
    require_same_grid(f, phi, "stft");
    const Axis& ax = f.axis(0);
    const std::size_t n = ax.count;
    const double h = ax.step;
    const Axis freq = xi ? *xi : frequency_comb(ax);

    Field out({ax, freq}, Measure::cell);
    std::vector<cplx> g(n);

    std::vector<cplx> phase;
    if (xi) {
        phase.resize(n * freq.count);
        for (std::size_t m = 0; m < freq.count; ++m)
            for (std::size_t i = 0; i < n; ++i) phase[i + n * m] = std::polar(1.0, -ax.coord(i) * freq.coord(m));
    }

    for (std::size_t k = 0; k < n; ++k) {
        // conj(phi(x_n - x_k)): x_n - x_k = (n - k) h sits at window index n - k - first.
        for (std::size_t i = 0; i < n; ++i) {
            const auto w = wrap(static_cast<std::int64_t>(i) - static_cast<std::int64_t>(k) - ax.first, n);
            g[i] = f.at(i) * std::conj(phi.at(w));
        }
        if (!xi) {
            fft_inplace(g, FftSign::forward);
            // e^{-i x_n xi_q} = e^{-2 pi i n q / N} (-1)^q for xi_q = q 2 pi / L.
            for (std::size_t m = 0; m < n; ++m) {
                const std::int64_t q = freq.first + static_cast<std::int64_t>(m);
                out.at(k, m) = kInvSqrt2Pi * h * sign_of(q) * g[wrap(q, n)];
            }
        } else {
            for (std::size_t m = 0; m < freq.count; ++m) {
                cplx s{};
                for (std::size_t i = 0; i < n; ++i) s += g[i] * phase[i + n * m];
                out.at(k, m) = kInvSqrt2Pi * h * s;
            }
        }
    }
    return out;
}

GaborSystem::GaborSystem(Field window, std::size_t time_step, std::size_t freq_step)
    : window_(std::move(window)), time_step_(time_step), freq_step_(freq_step) {
    require_centred(window_, "GaborSystem");
    const std::size_t n = window_.axis(0).count;
    if (time_step == 0 || freq_step == 0 || n % time_step != 0 || n % freq_step != 0)
        throw DomainError("GaborSystem: lattice steps must divide N");
}

double GaborSystem::b() const {
    return static_cast<double>(freq_step_) * 2.0 * std::numbers::pi / window_.axis(0).period();
}

double GaborSystem::redundancy() const {
    return static_cast<double>(n()) / static_cast<double>(time_step_ * freq_step_);
}

Axis GaborSystem::time_axis() const { return centered_axis(n() / time_step_, a()); }

Axis GaborSystem::freq_axis() const { return centered_axis(n() / freq_step_, b()); }

GaborSystem GaborSystem::with_window(Field window) const {
    if (!window.same_grid(window_)) throw DomainError("GaborSystem::with_window: grid mismatch");
    return GaborSystem(std::move(window), time_step_, freq_step_);
}

Field analysis(const GaborSystem& sys, const Field& f) {
    require_same_grid(f, sys.window(), "analysis");
    const std::size_t n = sys.n();
    const double h = sys.h();
    const Axis ta = sys.time_axis();
    const Axis fa = sys.freq_axis();
    const auto A = static_cast<std::int64_t>(sys.time_step());
    const auto B = static_cast<std::int64_t>(sys.freq_step());
    const Field& phi = sys.window();

    Field c = make_sequence({ta, fa});
    std::vector<cplx> g(n);
    for (std::size_t j = 0; j < ta.count; ++j) {
        const std::int64_t shift = (ta.first + static_cast<std::int64_t>(j)) * A;
        for (std::size_t i = 0; i < n; ++i) g[i] = f.at(i) * std::conj(phi.at(wrap(static_cast<std::int64_t>(i) - shift, n)));
        fft_inplace(g, FftSign::forward);
        for (std::size_t m = 0; m < fa.count; ++m) {
            const std::int64_t q = (fa.first + static_cast<std::int64_t>(m)) * B;
            c.at(j, m) = kInvSqrt2Pi * h * sign_of(q) * g[wrap(q, n)];
        }
    }
    return c;
}

Field synthesis(const GaborSystem& sys, const Field& c) {
    const Axis ta = sys.time_axis();
    const Axis fa = sys.freq_axis();
    if (c.rank() != 2 || !(c.axis(0) == ta) || !(c.axis(1) == fa))
        throw DomainError("synthesis: coefficients do not match the lattice");
    const std::size_t n = sys.n();
    const auto A = static_cast<std::int64_t>(sys.time_step());
    const auto B = static_cast<std::int64_t>(sys.freq_step());
    const Field& psi = sys.window();

    Field out = make_sampled_1d(n, sys.h());
    std::vector<cplx> s(n);
    for (std::size_t j = 0; j < ta.count; ++j) {
        std::fill(s.begin(), s.end(), cplx{});
        bool any = false;
        for (std::size_t m = 0; m < fa.count; ++m) {
            const cplx v = c.at(j, m);
            if (v == cplx{}) continue;
            any = true;
            const std::int64_t q = (fa.first + static_cast<std::int64_t>(m)) * B;
            // e^{i x_n iota_q} = e^{2 pi i n q / N} (-1)^q.
            s[wrap(q, n)] += sign_of(q) * v;
        }
        if (!any) continue;
        fft_inplace(s, FftSign::backward);
        const std::int64_t shift = (ta.first + static_cast<std::int64_t>(j)) * A;
        for (std::size_t i = 0; i < n; ++i) out.at(i) += s[i] * psi.at(wrap(static_cast<std::int64_t>(i) - shift, n));
    }
    return out;
}

Field frame_operator(const GaborSystem& analysis_sys, const GaborSystem& synthesis_sys, const Field& f) {
    if (analysis_sys.time_step() != synthesis_sys.time_step() || analysis_sys.freq_step() != synthesis_sys.freq_step() ||
        !analysis_sys.window().same_grid(synthesis_sys.window()))
        throw DomainError("frame_operator: systems do not share a lattice");
    return synthesis(synthesis_sys, analysis(analysis_sys, f));
}

Field frame_operator(const GaborSystem& sys, const Field& f) { return synthesis(sys, analysis(sys, f)); }

FrameBounds frame_bounds(const GaborSystem& sys, double tol, std::uint64_t seed) {
    Rng rng(seed);
    const std::size_t n = sys.n();
    const int max_iter = 20000;
    FrameBounds fb;

    auto top_eigenvalue = [&](auto&& apply) {
        Field v = random_noise_1d(rng, n, sys.h());
        v *= 1.0 / norm2(v.values());
        double lambda = 0.0;
        for (int it = 0; it < max_iter; ++it) {
            Field w = apply(v);
            ++fb.iterations;
            const double next = inner(w.values(), v.values()).real();
            const double wn = norm2(w.values());
            if (wn == 0.0) return 0.0;
            w *= 1.0 / wn;
            v = std::move(w);
            if (it > 2 && std::abs(next - lambda) <= tol * std::abs(next)) return next;
            lambda = next;
        }
        return lambda;
    };

    fb.upper = top_eigenvalue([&](const Field& v) { return frame_operator(sys, v); });
    const double upper = fb.upper;
    const double gap = top_eigenvalue([&](const Field& v) {
        Field w = frame_operator(sys, v);
        for (std::size_t i = 0; i < n; ++i) w.at(i) = upper * v.at(i) - w.at(i);
        return w;
    });
    fb.lower = std::max(0.0, upper - gap);
    fb.is_frame = fb.upper > 0.0 && fb.lower >= 1e-10 * fb.upper;
    return fb;
}

DualWindow dual_window(const GaborSystem& sys, double tol) {
    const Field& phi = sys.window();
    const std::size_t n = sys.n();
    const double phi_norm = norm2(phi.values());
    if (phi_norm == 0.0) throw DomainError("dual_window: zero window");

    DualWindow out;
    Field x = phi;
    Field r = phi - frame_operator(sys, x);
    Field p = r;
    double rs = std::norm(norm2(r.values()));
    double best = std::sqrt(rs) / phi_norm;
    Field best_x = x;
    const int budget = static_cast<int>(3 * n);
    int it = 0;
    while (std::sqrt(rs) > tol * phi_norm && it < budget) {
        const Field ap = frame_operator(sys, p);
        const double pap = inner(p.values(), ap.values()).real();
        if (!(pap > 0.0)) break;
        const double alpha = rs / pap;
        for (std::size_t i = 0; i < n; ++i) {
            x.at(i) += alpha * p.at(i);
            r.at(i) -= alpha * ap.at(i);
        }
        const double rs_new = std::norm(norm2(r.values()));
        ++it;
        if (std::sqrt(rs_new) / phi_norm < best) {
            best = std::sqrt(rs_new) / phi_norm;
            best_x = x;
        }
        const double beta = rs_new / rs;
        for (std::size_t i = 0; i < n; ++i) p.at(i) = r.at(i) + beta * p.at(i);
        rs = rs_new;
    }
    // Recompute the true residual; the recursive one drifts.
    const Field true_r = phi - frame_operator(sys, best_x);
    out.residual = norm2(true_r.values()) / phi_norm;
    out.iterations = it;
    if (out.residual > tol) throw ConvergenceError("dual_window: conjugate gradients stalled", out.residual);
    out.window = std::move(best_x);

    const GaborSystem dual = sys.with_window(out.window);
    Rng rng(0x5eed);
    for (int k = 0; k < 3; ++k) {
        const Field f = random_noise_1d(rng, n, sys.h());
        const Field back = frame_operator(sys, dual, f);
        out.reconstruction_residual =
            std::max(out.reconstruction_residual, norm2((back - f).values()) / norm2(f.values()));
    }
    return out;
}

LatticeCertificate certify_lattice(const Field& window, std::size_t time_step, std::size_t freq_step,
                                   double min_ratio) {
    LatticeCertificate cert;
    bool halve_time = true;
    for (;;) {
        const GaborSystem sys(window, time_step, freq_step);
        cert.bounds = frame_bounds(sys);
        cert.time_step = time_step;
        cert.freq_step = freq_step;
        if (cert.bounds.upper > 0.0 && cert.bounds.lower / cert.bounds.upper >= min_ratio) return cert;
        const bool t_ok = time_step % 2 == 0;
        const bool f_ok = freq_step % 2 == 0;
        if (!t_ok && !f_ok) throw DomainError("certify_lattice: no admissible lattice reaches the requested A/B");
        if ((halve_time && t_ok) || !f_ok)
            time_step /= 2;
        else
            freq_step /= 2;
        halve_time = !halve_time;
        ++cert.halvings;
    }
}

NormReport mod_norm(const Field& f, const Field& phi, const QuasiYoungFunction& phi1, const QuasiYoungFunction& phi2,
                    const Weight& omega) {
    return mixed_luxemburg(stft(f, phi), phi1, phi2, omega);
}

NormReport coef_norm(const Field& c, const QuasiYoungFunction& phi1, const QuasiYoungFunction& phi2,
                     const Weight& omega) {
    if (c.measure() != Measure::counting) throw DomainError("coef_norm: coefficients must carry counting measure");
    return mixed_luxemburg(c, phi1, phi2, omega);
}

Field tensor_window(const Field& phi1, const Field& phi2) {
    require_same_grid(phi1, phi2, "tensor_window");
    const Axis& ax = phi1.axis(0);
    const std::size_t n = ax.count;
    const Axis freq = frequency_comb(ax);

    std::vector<cplx> hat(phi2.values().begin(), phi2.values().end());
    fft_inplace(hat, FftSign::forward);
    Field out({ax, freq}, Measure::cell);
    const auto nn = static_cast<std::int64_t>(n);
    for (std::size_t m = 0; m < n; ++m) {
        const std::int64_t q = freq.first + static_cast<std::int64_t>(m);
        const cplx hat_q = kInvSqrt2Pi * ax.step * sign_of(q) * hat[wrap(q, n)];
        for (std::size_t k = 0; k < n; ++k) {
            const std::int64_t p = ax.first + static_cast<std::int64_t>(k);
            // x_k xi_q = 2 pi p q / N, reduced mod N before scaling.
            const double turn = static_cast<double>(((p * q) % nn + nn) % nn) / static_cast<double>(n);
            out.at(k, m) = phi1.at(k) * std::conj(hat_q) * std::polar(1.0, -2.0 * std::numbers::pi * turn);
        }
    }
    return out;
}

}  // namespace oms
