#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace mgeo {

/// Seeded generator used by every randomized routine in the library.
/// All draws go through explicit algorithms (no std:: distributions),
/// so a given seed reproduces the same stream on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : eng_(seed) {}

    /// Uniform double in [0, 1), 53 random bits.
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    /// Uniform integer in [0, n).
    std::size_t index(std::size_t n) {
        // rejection sampling to avoid modulo bias
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v = eng_();
        while (v >= limit) v = eng_();
        return static_cast<std::size_t>(v % n);
    }

    /// Standard normal via Box-Muller.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double mag = std::sqrt(-2.0 * std::log(u1));
        spare_ = mag * std::sin(2.0 * M_PI * u2);
        has_spare_ = true;
        return mag * std::cos(2.0 * M_PI * u2);
    }

    /// Uniform direction on the unit sphere of the given dimension.
    Eigen::VectorXd unit_vector(int dim) {
        Eigen::VectorXd v(dim);
        double n2 = 0.0;
        do {
            for (int i = 0; i < dim; ++i) v[i] = normal();
            n2 = v.squaredNorm();
        } while (n2 < 1e-300);
        return v / std::sqrt(n2);
    }

    std::uint64_t raw() { return eng_(); }

private:
    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace mgeo
