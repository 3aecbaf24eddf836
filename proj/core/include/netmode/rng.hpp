#pragma once

// Deterministic random primitives. std::mt19937_64 is pinned by the C++
// standard, and every derived draw below is built from its raw output
// only, so identical seeds give identical streams on every platform.
// std::uniform_int_distribution and friends are implementation-defined
// and must not be used anywhere determinism matters.

#include <cstdint>
#include <random>
#include <vector>

namespace netmode::rng {

// Mixing finalizer; used to derive independent sub-seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Unbiased draw in [0, n) via rejection on the top of the 64-bit range.
inline std::uint64_t bounded(std::mt19937_64& gen, std::uint64_t n) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t x = gen();
    while (x >= limit) x = gen();
    return x % n;
}

// Uniform double in [0, 1) with 53 random bits.
inline double unit_real(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

template <typename T>
void shuffle(std::mt19937_64& gen, std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(bounded(gen, i));
        std::swap(v[i - 1], v[j]);
    }
}

}  // namespace netmode::rng
