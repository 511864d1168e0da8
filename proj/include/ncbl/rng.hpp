#ifndef NCBL_RNG_HPP
#define NCBL_RNG_HPP

#include <cstdint>
#include <random>

namespace ncbl {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Per-trial RNG: counter-mode mixing of (master seed, trial index) so that
/// parallel trials are independent of scheduling order.
class Rng {
public:
    explicit Rng(std::uint64_t master_seed, std::uint64_t trial = 0)
        : engine_(splitmix64(splitmix64(master_seed) ^ splitmix64(trial + 0x51ed270b7a9f1235ULL))) {}

    double uniform(double lo = 0.0, double hi = 1.0) {
        return std::uniform_real_distribution<double>(lo, hi)(engine_);
    }
    double normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }
    std::uint64_t integer(std::uint64_t lo, std::uint64_t hi) {  // inclusive bounds
        return std::uniform_int_distribution<std::uint64_t>(lo, hi)(engine_);
    }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

}  // namespace ncbl

#endif
