#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace nisac {

// Independent random streams derived from one experiment seed. Each stream is
// addressed by (seed, purpose, index) so results never depend on the order in
// which tasks run.
enum class Stream : std::uint64_t {
    kGainPhase = 1,
    kCrossEntropy = 2,
    kDesignSymbols = 3,
    kEvalSymbols = 4,
    kRandomPhase = 5,
    kAoaNoise = 6,
    kInstance = 7,
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

std::uint64_t stream_seed(std::uint64_t seed, Stream purpose, std::uint64_t index = 0) noexcept;

std::mt19937_64 make_stream(std::uint64_t seed, Stream purpose, std::uint64_t index = 0);

// T i.i.d. draws of CN(mean, variance).
std::vector<std::complex<double>> draw_symbols(std::mt19937_64& rng, int slots,
                                               std::complex<double> mean, double variance);

}  // namespace nisac
