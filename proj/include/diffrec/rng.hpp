#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace diffrec {

// All randomized components draw from std::mt19937_64 through this helper.
// std::uniform_int_distribution is implementation-defined, so bounded draws
// use classic rejection sampling instead; results are identical on every
// platform for a fixed seed.
inline std::uint64_t bounded_uniform(std::mt19937_64& gen, std::uint64_t n) {
    const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t limit = max - max % n;
    std::uint64_t x;
    do {
        x = gen();
    } while (x >= limit);
    return x % n;
}

// In-place Fisher-Yates shuffle using bounded_uniform.
template <typename T>
void portable_shuffle(std::vector<T>& v, std::mt19937_64& gen) {
    for (std::size_t i = v.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(bounded_uniform(gen, i));
        std::swap(v[i - 1], v[j]);
    }
}

}  // namespace diffrec
