#include "oms/probes.hpp"

#include <cmath>
#include <numbers>

namespace oms {

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::size_t Rng::index(std::size_t n) {
    return static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n;
}

double Rng::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    while (u1 == 0.0) u1 = uniform();
    const double u2 = uniform();
    const double rad = std::sqrt(-2.0 * std::log(u1));
    const double ang = 2.0 * std::numbers::pi * u2;
    spare_ = rad * std::sin(ang);
    have_spare_ = true;
    return rad * std::cos(ang);
}

Field random_noise_1d(Rng& rng, std::size_t n, double h) {
    Field f = make_sampled_1d(n, h);
    for (auto& v : f.values()) v = rng.complex_normal();
    return f;
}

Field random_atoms_1d(Rng& rng, std::size_t n, double h, std::size_t atoms, double spread) {
    Field f = make_sampled_1d(n, h);
    const Axis& ax = f.axis(0);
    for (std::size_t k = 0; k < atoms; ++k) {
        const cplx amp = rng.complex_normal();
        const double centre = rng.uniform(-spread, spread);
        const double freq = rng.uniform(-spread, spread);
        const double width = rng.uniform(0.7, 1.4);
        for (std::size_t i = 0; i < ax.count; ++i) {
            const double x = ax.coord(i);
            const double u = (x - centre) / width;
            f.at(i) += amp * std::exp(-0.5 * u * u) * std::polar(1.0, freq * x);
        }
    }
    return f;
}

Field random_sequence(Rng& rng, std::vector<Axis> axes, double density) {
    Field f = make_sequence(std::move(axes));
    for (auto& v : f.values()) {
        const cplx z = rng.complex_normal();
        v = rng.uniform() < density ? z : cplx{};
    }
    return f;
}

}  // namespace oms
