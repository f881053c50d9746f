#ifndef ADVISORY_RNG_HPP
#define ADVISORY_RNG_HPP

#include <cmath>
#include <cstdint>

namespace advisory {

// Explicit 64-bit linear congruential generator shared by the fold shuffler
// and the synthetic cohort generator, so that seeded runs are reproducible
// across platforms and implementations.
//
// Recurrence (Knuth MMIX constants):
//   state <- state * 6364136223846793005 + 1442695040888963407   (mod 2^64)
// Uniform doubles take the top 53 bits: u = (state >> 11) * 2^-53.
// Normal deviates use the Box-Muller transform on two uniforms.
class Lcg64 {
public:
    explicit Lcg64(std::uint64_t seed) : state_(seed) {
        // one warm-up step so seed 0 does not emit 0 first
        next_u64();
    }

    std::uint64_t next_u64() {
        state_ = state_ * 6364136223846793005ULL + 1442695040888963407ULL;
        return state_;
    }

    // uniform in [0, 1)
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // uniform integer in [0, n); n > 0
    std::uint64_t next_below(std::uint64_t n) {
        return next_u64() % n;
    }

    // standard normal via Box-Muller; one spare deviate is cached
    double next_normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = next_double();
        double u2 = next_double();
        while (u1 <= 0.0) u1 = next_double();
        double r = std::sqrt(-2.0 * std::log(u1));
        double theta = 2.0 * M_PI * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

    // Fisher-Yates shuffle
    template <typename Vec>
    void shuffle(Vec& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(next_below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace advisory

#endif
