#pragma once

#include <cmath>
#include <cstdint>

namespace mcc {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// seed for sub-task `child` of a run seeded with `seed`; neighbouring seeds
// do not share children
inline std::uint64_t child_seed(std::uint64_t seed, std::uint64_t child) {
    return splitmix64(splitmix64(seed) ^ splitmix64(child * 0xd1b54a32d192ed03ULL + 1));
}

// Counter-based generator: the i-th draw is a pure function of (key, i), so a
// stream can be split by deriving child keys without sharing state.
class counter_rng {
public:
    explicit counter_rng(std::uint64_t seed, std::uint64_t stream = 0)
        : key_(splitmix64(seed ^ splitmix64(stream + 0x632be59bd9b4e019ULL))) {}

    std::uint64_t next() { return splitmix64(key_ + 0x9e3779b97f4a7c15ULL * (++ctr_)); }

    // uniform in [0,1) with 53 random bits
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // uniform in [0, bound), rejection to remove modulo bias
    std::uint64_t below(std::uint64_t bound) {
        if (bound <= 1) return 0;
        const std::uint64_t lim = ~std::uint64_t(0) - (~std::uint64_t(0) % bound);
        std::uint64_t x;
        do { x = next(); } while (x >= lim);
        return x % bound;
    }

    bool bernoulli(double p) { return uniform() < p; }

    counter_rng split(std::uint64_t child) const {
        counter_rng r(0);
        r.key_ = splitmix64(key_ ^ splitmix64(child * 0xd1b54a32d192ed03ULL + 1));
        r.ctr_ = 0;
        return r;
    }

private:
    std::uint64_t key_;
    std::uint64_t ctr_ = 0;
};

}  // namespace mcc
