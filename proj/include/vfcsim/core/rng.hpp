#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

namespace vfc {

/// Deterministic labeled random stream.
///
/// Each stream is a SplitMix64 counter generator seeded from
/// (master_seed, label), so the i-th draw of a given (seed, label) pair is
/// identical across runs and platforms, and distinct labels never share a
/// draw sequence. Distributions are derived from the raw stream with fixed
/// closed-form transforms (no hidden per-call state), which keeps the stream
/// trivially serializable as {label, draws}.
class RngStream {
public:
    RngStream() = default;

    RngStream(std::uint64_t master_seed, std::string_view label)
        : label_(label), state_(mix(master_seed ^ mix(fnv1a(label)))) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        ++draws_;
        return mix(state_);
    }

    /// Uniform double in [0, 1).
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n).
    std::uint64_t uniform_index(std::uint64_t n) {
        return n == 0 ? 0 : next_u64() % n;
    }

    /// Box-Muller, one value per call (two raw draws, second angle discarded).
    double normal(double mean = 0.0, double stddev = 1.0) {
        const double u1 = 1.0 - uniform();  // (0, 1]
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        return mean + stddev * r * std::cos(2.0 * M_PI * u2);
    }

    double exponential(double mean = 1.0) {
        return -mean * std::log(1.0 - uniform());
    }

    /// Knuth's method; fine for the small means used here.
    int poisson(double mean) {
        if (mean <= 0.0) return 0;
        const double limit = std::exp(-mean);
        int k = 0;
        double p = 1.0;
        do {
            ++k;
            p *= uniform();
        } while (p > limit);
        return k - 1;
    }

    const std::string& label() const { return label_; }
    std::uint64_t draw_count() const { return draws_; }

    /// Restores a stream to the state it had after `draws` draws.
    static RngStream restored(std::uint64_t master_seed, std::string_view label,
                              std::uint64_t draws) {
        RngStream s(master_seed, label);
        s.state_ += 0x9E3779B97F4A7C15ULL * draws;
        s.draws_ = draws;
        return s;
    }

private:
    static constexpr std::uint64_t fnv1a(std::string_view text) {
        std::uint64_t h = 0xCBF29CE484222325ULL;
        for (char c : text) {
            h ^= static_cast<unsigned char>(c);
            h *= 0x100000001B3ULL;
        }
        return h;
    }

    static constexpr std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::string label_;
    std::uint64_t state_ = 0;
    std::uint64_t draws_ = 0;
};

}  // namespace vfc
