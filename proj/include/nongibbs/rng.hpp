#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace nongibbs {

// Reproducibility contract: mt19937_64 (algorithm pinned by the standard)
// seeded through SplitMix64, plus explicit uniform mappings. std::
// distributions are avoided because their output is not pinned across
// standard libraries. Stream k of a master seed is seeded with the (k+1)-th
// SplitMix64 output, giving independent, enumerable chains.
struct SplitMix64 {
    std::uint64_t state = 0;
    std::uint64_t next() {
        state += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
};

class Rng {
public:
    Rng() : eng_(0) {}
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    static Rng from_stream(std::uint64_t master_seed, std::uint64_t stream) {
        SplitMix64 sm{master_seed};
        std::uint64_t seed = 0;
        for (std::uint64_t k = 0; k <= stream; ++k) seed = sm.next();
        return Rng(seed);
    }

    std::uint64_t next_u64() { return eng_(); }

    // uniform in [0, 1) with 53 random bits
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    // unbiased integer in [0, n)
    std::uint32_t below(std::uint32_t n) {
        const std::uint64_t span = 0x100000000ull;
        const std::uint64_t limit = span - span % n;
        for (;;) {
            const std::uint64_t x = eng_() >> 32;
            if (x < limit) return static_cast<std::uint32_t>(x % n);
        }
    }

    int spin() { return (eng_() >> 63) ? 1 : -1; }

    // Box-Muller; used for synthetic series in tests and bootstraps
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform(), u2 = uniform();
        while (u1 == 0.0) u1 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(2.0 * M_PI * u2);
        have_spare_ = true;
        return r * std::cos(2.0 * M_PI * u2);
    }

    bool operator==(const Rng& other) const { return eng_ == other.eng_; }

private:
    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace nongibbs
