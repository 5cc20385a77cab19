#ifndef FLTS_RNG_HPP
#define FLTS_RNG_HPP

#include <cstdint>
#include <vector>

namespace flts {

// Deterministic splitmix64 generator.
//
// Standard-library distributions are implementation-defined, which would break
// the promise that the same seed yields byte-identical models and samples on
// every platform, so sampling is done by hand here.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in {0, ..., n-1}, n > 0. Rejection sampling keeps it exact.
    std::uint64_t below(std::uint64_t n) {
        std::uint64_t limit = n * ((~std::uint64_t{0} / n));  // largest multiple of n
        std::uint64_t v;
        do { v = next(); } while (v >= limit);
        return v % n;
    }

    // True with probability ~p (p in [0,1]); used only for generation density,
    // never inside the exact semantics.
    bool chance(double p) {
        if (p <= 0.0) return false;
        if (p >= 1.0) return true;
        double u = static_cast<double>(next() >> 11) * 0x1.0p-53;
        return u < p;
    }

    template <typename T>
    const T& pick(const std::vector<T>& xs) {
        return xs[below(xs.size())];
    }

private:
    std::uint64_t state_;
};

}  // namespace flts

#endif
