#pragma once

#include "oms/field.hpp"

#include <cstdint>
#include <random>

namespace oms {

/// Seeded generator for all probe families. The engine is std::mt19937_64
/// (fully specified by the C++ standard); doubles are (x >> 11) * 2^-53 and
/// normals use Box-Muller, so other implementations can reproduce the stream.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    /// Uniform in [0, 1).
    double uniform();
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// Uniform integer in [0, n).
    std::size_t index(std::size_t n);
    /// Standard normal.
    double normal();
    cplx complex_normal() { return {normal(), normal()}; }

private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// i.i.d. complex normal samples on the centred grid (N, h).
Field random_noise_1d(Rng& rng, std::size_t n, double h);

/// Sum of `atoms` modulated, translated Gaussians with random complex
/// amplitudes, centres in |x| <= spread and frequencies in |xi| <= spread,
/// widths in [0.7, 1.4]. Decays to roundoff at the boundary when L >= 4 spread + 16.
Field random_atoms_1d(Rng& rng, std::size_t n, double h, std::size_t atoms, double spread);

/// Lattice sequence on `axes` with complex normal entries; each entry is kept
/// with probability `density` and zeroed otherwise.
Field random_sequence(Rng& rng, std::vector<Axis> axes, double density = 1.0);

}  // namespace oms
