#pragma once

#include <cstdint>
#include <random>

namespace mcst {

// splitmix64 step; used to derive independent stream seeds from a run seed.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Seed for a named sub-stream, stable regardless of evaluation order.
// `purpose` disambiguates draws made for different reasons from the same
// (seed, index) pair, e.g. basis sampling vs noise sampling.
inline std::uint64_t derive_seed(std::uint64_t run_seed, std::uint64_t a,
                                 std::uint64_t b = 0, std::uint64_t purpose = 0) {
    std::uint64_t s = splitmix64(run_seed ^ 0x6a09e667f3bcc909ULL);
    s = splitmix64(s ^ a);
    s = splitmix64(s ^ (b + 0x3c6ef372fe94f82bULL));
    return splitmix64(s ^ (purpose + 0xa54ff53a5f1d36f1ULL));
}

using Rng = std::mt19937_64;

}  // namespace mcst
