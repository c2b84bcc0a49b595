#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <initializer_list>

namespace loopsoup {

// splitmix64 finalizer: full-avalanche 64-bit permutation
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// splitmix64 step (Steele/Lea/Flood constants)
inline std::uint64_t splitmix64(std::uint64_t& state) {
    return mix64(state += 0x9e3779b97f4a7c15ULL);
}

// Inverse standard normal CDF, Wichura's AS 241 (PPND16).
// Absolute error below 1e-15 over (0,1); far better than the 1e-9 we need.
double normal_quantile(double p);

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x * 0.70710678118654752440); }
inline double normal_pdf(double x) { return 0.39894228040143267794 * std::exp(-0.5 * x * x); }

// Deterministic keyed stream: xoshiro256++ whose state is derived from a
// master seed plus an arbitrary list of key words via splitmix64 absorption.
// Streams with distinct keys are independent for all practical purposes, and
// a stream's output depends only on (seed, key), never on what other streams
// were asked for.  That makes parallel and serial soup generation identical.
class Rng {
  public:
    Rng() : Rng(0x853c49e6748fea9bULL, {}) {}

    Rng(std::uint64_t seed, std::initializer_list<std::uint64_t> key) {
        std::uint64_t h = mix64(seed + 0x9e3779b97f4a7c15ULL);
        for (std::uint64_t w : key)
            h = mix64(h ^ (w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)));
        for (auto& s : state_) s = splitmix64(h);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // uniform on (0,1), endpoints excluded
    double uniform() { return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53; }

    // uniform on [0,1)
    double uniform_co() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform_co(); }

    std::uint64_t below(std::uint64_t n) {
        // multiply-shift rejection-free mapping; bias < 2^-64, irrelevant here
        return static_cast<std::uint64_t>((static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

    double normal() { return normal_quantile(uniform()); }

    double exponential() { return -std::log(uniform()); }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::array<std::uint64_t, 4> state_{};
};

}  // namespace loopsoup
