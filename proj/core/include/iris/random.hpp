#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

namespace iris {

// Source of uniform random draws. Virtual so tests can pin exact sequences.
class RandomSource {
public:
    virtual ~RandomSource() = default;

    // Uniform integer in [0, bound); bound >= 1.
    virtual std::uint64_t uniform_below(std::uint64_t bound) = 0;
};

// Deterministic engine-backed source. mt19937_64 output is fixed by the
// standard, so sequences are identical across platforms for a given seed.
class SeededSource final : public RandomSource {
public:
    explicit SeededSource(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t uniform_below(std::uint64_t bound) override {
        if (bound == 0)
            throw std::invalid_argument("uniform_below: bound must be positive");
        // Rejection sampling keeps the draw unbiased without relying on
        // std::uniform_int_distribution, whose mapping is unspecified.
        const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
        std::uint64_t x, r;
        do {
            x = eng_();
            r = x % bound;
        } while (x - r > max - (bound - 1));
        return r;
    }

private:
    std::mt19937_64 eng_;
};

// Replays a scripted list of draws; used to pin reference points in tests.
class ScriptedSource final : public RandomSource {
public:
    explicit ScriptedSource(std::vector<std::uint64_t> values) : values_(std::move(values)) {}

    std::uint64_t uniform_below(std::uint64_t bound) override {
        if (pos_ >= values_.size())
            throw std::out_of_range("scripted random source exhausted");
        std::uint64_t v = values_[pos_++];
        if (v >= bound)
            throw std::out_of_range("scripted draw exceeds requested bound");
        return v;
    }

    std::size_t consumed() const { return pos_; }

private:
    std::vector<std::uint64_t> values_;
    std::size_t pos_ = 0;
};

// splitmix64 finalizer; good avalanche for deriving independent substreams.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Stable per-(run, stream) seed derivation from one master seed.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t run, std::uint64_t stream = 0) {
    return mix64(mix64(master ^ 0x6a09e667f3bcc908ull) ^ mix64(run) ^ (stream * 0x9e3779b97f4a7c15ull));
}

} // namespace iris
