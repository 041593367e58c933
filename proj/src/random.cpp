#include "nisac/random.hpp"

#include <cmath>

namespace nisac {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t stream_seed(std::uint64_t seed, Stream purpose, std::uint64_t index) noexcept {
    std::uint64_t h = splitmix64(seed);
    h = splitmix64(h ^ static_cast<std::uint64_t>(purpose));
    return splitmix64(h ^ index);
}

std::mt19937_64 make_stream(std::uint64_t seed, Stream purpose, std::uint64_t index) {
    return std::mt19937_64(stream_seed(seed, purpose, index));
}

std::vector<std::complex<double>> draw_symbols(std::mt19937_64& rng, int slots,
                                               std::complex<double> mean, double variance) {
    // Real and imaginary parts each carry half the variance.
    std::normal_distribution<double> normal(0.0, 1.0);
    const double scale = std::sqrt(variance / 2.0);
    std::vector<std::complex<double>> out;
    out.reserve(static_cast<std::size_t>(slots));
    for (int t = 0; t < slots; ++t) {
        const double re = normal(rng);
        const double im = normal(rng);
        out.push_back(mean + scale * std::complex<double>(re, im));
    }
    return out;
}

}  // namespace nisac
