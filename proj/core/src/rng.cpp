#include <symtomo/rng.hpp>

#include <cmath>
#include <numbers>

namespace symtomo {

std::uint64_t splitmix64_next(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

Xoshiro256StarStar::Xoshiro256StarStar(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& word : s_) word = splitmix64_next(sm);
}

namespace {
inline std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}
}  // namespace

std::uint64_t Xoshiro256StarStar::operator()() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double uniform01(Xoshiro256StarStar& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

double gaussian(Xoshiro256StarStar& gen) {
    const double u1 = 1.0 - uniform01(gen);
    const double u2 = uniform01(gen);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Complex complex_gaussian(Xoshiro256StarStar& gen) {
    const double re = gaussian(gen);
    const double im = gaussian(gen);
    return Complex(re, im) / std::sqrt(2.0);
}

std::int64_t binomial(Xoshiro256StarStar& gen, std::int64_t n_trials, double p) {
    if (p <= 0.0) return 0;
    if (p >= 1.0) return n_trials;
    std::int64_t hits = 0;
    for (std::int64_t t = 0; t < n_trials; ++t) {
        hits += uniform01(gen) < p;
    }
    return hits;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b) {
    std::uint64_t state = master;
    std::uint64_t mixed = splitmix64_next(state);
    state = mixed ^ (a * 0x9e3779b97f4a7c15ull);
    mixed = splitmix64_next(state);
    state = mixed ^ (b * 0xd1b54a32d192ed03ull);
    return splitmix64_next(state);
}

}  // namespace symtomo
