// Deterministic random utilities.
//
// Site values of the infinite configuration are random-access: the pair
// of signs at site x under seed s is read off the low bits of
// splitmix64(s + x * 0x9E3779B97F4A7C15).  This mapping is part of the
// tool's contract (golden tests depend on it).
//
// Bulk sampling (shuffles, rejection samplers) uses mt19937_64 with
// explicit rejection for bounded draws, so streams are identical across
// platforms.
#pragma once

#include <cstdint>
#include <random>

namespace arcline {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

inline std::uint64_t splitmix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline std::uint64_t site_bits(std::uint64_t seed, std::int64_t x) {
    return splitmix64(seed + static_cast<std::uint64_t>(x) * kGolden);
}

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(splitmix64(seed + kGolden)) {}

    std::uint64_t next() { return gen_(); }

    // Uniform in [0, n).  Rejection keeps the draw unbiased.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n + 1) % n;
        std::uint64_t v = gen_();
        while (v > limit) v = gen_();
        return v % n;
    }

    double unit() { return 0x1.0p-64 * static_cast<double>(gen_()); }

    bool coin() { return (gen_() >> 63) != 0; }

  private:
    std::mt19937_64 gen_;
};

template <typename T>
void fisher_yates_shuffle(std::vector<T>& v, Rng& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(rng.below(i));
        std::swap(v[i - 1], v[j]);
    }
}

}  // namespace arcline
