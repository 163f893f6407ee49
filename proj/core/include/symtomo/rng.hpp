// Deterministic random streams. The generator is xoshiro256** seeded through
// splitmix64; simulation code derives one stream per effect as seed ^ index
// so that records are reproducible regardless of evaluation order or machine.
// Distributions are implemented explicitly (Bernoulli-sum binomial,
// Box-Muller normal) because the standard library leaves their algorithms
// implementation-defined, which would break cross-platform reproducibility.
#pragma once

#include <symtomo/types.hpp>

#include <cstdint>

namespace symtomo {

std::uint64_t splitmix64_next(std::uint64_t& state);

class Xoshiro256StarStar {
  public:
    using result_type = std::uint64_t;

    explicit Xoshiro256StarStar(std::uint64_t seed);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~std::uint64_t{0}; }
    result_type operator()();

  private:
    std::uint64_t s_[4];
};

inline Xoshiro256StarStar substream(std::uint64_t seed, std::uint64_t index) {
    return Xoshiro256StarStar(seed ^ index);
}

// Uniform on [0, 1).
double uniform01(Xoshiro256StarStar& gen);

// Standard normal N(0, 1).
double gaussian(Xoshiro256StarStar& gen);

// Standard complex normal, E|z|^2 = 1.
Complex complex_gaussian(Xoshiro256StarStar& gen);

// Exact Binomial(n_trials, p) as a sum of Bernoulli draws.
std::int64_t binomial(Xoshiro256StarStar& gen, std::int64_t n_trials, double p);

// Mixes several indices into one derived seed (benchmark cells, repetitions).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0);

}  // namespace symtomo
