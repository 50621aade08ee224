#pragma once

// Seeded randomness with hand-rolled distributions so that output is
// bit-identical across platforms and standard-library versions.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

namespace depthkit {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Independent stream seed derived from a master seed.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    std::uint64_t s = master ^ (0x9e3779b97f4a7c15ull * (stream + 1));
    std::uint64_t a = splitmix64(s);
    std::uint64_t b = splitmix64(s);
    return a ^ (b << 1);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t s = seed;
        for (int i = 0; i < 4; ++i) state_[i] = splitmix64(s);
    }

    std::uint64_t next_u64() {
        // xoshiro256**
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    double uniform01() { return (next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform01(); }

    bool coin() { return (next_u64() >> 63) != 0; }

    // True with probability 2^-i.
    bool coin_pow2(int i) {
        if (i <= 0) return true;
        if (i >= 64) return false;
        return (next_u64() >> (64 - i)) == 0;
    }

    std::uint64_t below(std::uint64_t bound) {
        // unbiased via rejection
        const std::uint64_t limit = bound * ((~std::uint64_t{0}) / bound);
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return x % bound;
    }

    double normal() {
        // Marsaglia polar method
        while (true) {
            const double u = 2.0 * uniform01() - 1.0;
            const double v = 2.0 * uniform01() - 1.0;
            const double s = u * u + v * v;
            if (s > 0.0 && s < 1.0) {
                return u * std::sqrt(-2.0 * std::log(s) / s);
            }
        }
    }

    // k distinct values in [0, n), ascending.
    std::vector<int> sample_distinct(int n, int k) {
        // Floyd's algorithm
        std::vector<int> out;
        out.reserve(k);
        for (int j = n - k; j < n; ++j) {
            const int t = static_cast<int>(below(static_cast<std::uint64_t>(j) + 1));
            bool seen = false;
            for (int v : out) {
                if (v == t) { seen = true; break; }
            }
            out.push_back(seen ? j : t);
        }
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }
    std::uint64_t state_[4];
};

} // namespace depthkit
