#pragma once

#include <cstdint>
#include <random>

#include "rankmetric/gf.hpp"

namespace rankmetric {

/// splitmix64 finalizer; used to derive independent sub-seeds.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// Seeded generator with a portable bounded draw (std distributions are
/// implementation-defined, which would break byte-identical output).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    /// Uniform in [0, bound), bound > 0.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
        std::uint64_t v;
        do v = eng_();
        while (v >= limit);
        return v % bound;
    }

    FieldElement element(const FieldContext& ctx) {
        const std::uint64_t v = below(ctx.order());
        return v == 0 ? ctx.zero() : ctx.from_log(static_cast<Log>(v - 1));
    }
    FieldElement nonzero_element(const FieldContext& ctx) {
        return ctx.from_log(static_cast<Log>(below(ctx.group_order())));
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace rankmetric
