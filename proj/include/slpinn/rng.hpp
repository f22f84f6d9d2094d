#pragma once

#include <cstdint>
#include <random>

namespace slpinn {

/// Seedable random source with hand-rolled output transforms. The engine is
/// std::mt19937_64 (bit-stream is pinned by the standard); the uniform and
/// normal transforms are implemented here because the std::*_distribution
/// classes are implementation-defined and would break stream reproducibility
/// across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform in [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    /// Standard normal via the Marsaglia polar method (no transcendentals
    /// beyond log/sqrt, so the stream is bit-stable across libm versions in
    /// practice; pairs are cached).
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        has_spare_ = true;
        return u * f;
    }

    double normal(double mu, double sigma) { return mu + sigma * normal(); }

    /// Derive an independent sub-stream seed (splitmix64 of seed xor a stream
    /// tag) so sampling / initialization / test-set draws never overlap.
    static std::uint64_t mix(std::uint64_t seed, std::uint64_t stream) {
        std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (stream + 1);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace slpinn
