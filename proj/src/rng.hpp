#ifndef POWHAM_RNG_HPP
#define POWHAM_RNG_HPP

#include <cstdint>
#include <random>
#include <vector>

namespace powham {

using Rng = std::mt19937_64;

inline Rng make_rng(uint64_t seed) { return Rng(seed); }

// uniform integer in [0, bound)
inline int rng_below(Rng &rng, int bound) {
    return (int)(rng() % (uint64_t)bound);
}

template <typename T>
void shuffle_vec(std::vector<T> &v, Rng &rng) {
    for (size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng() % i]);
}

// k distinct values from [0, n), order random
inline std::vector<int> sample_distinct(Rng &rng, int n, int k) {
    std::vector<int> pool(n);
    for (int i = 0; i < n; ++i) pool[i] = i;
    for (int i = 0; i < k; ++i) std::swap(pool[i], pool[i + rng_below(rng, n - i)]);
    pool.resize(k);
    return pool;
}

} // namespace powham

#endif
