#pragma once

// Codeword enumeration and rank statistics. Projective enumeration visits one
// representative per scalar class (the first nonzero coordinate is one); the
// scalar field is F_{q^n} for F_{q^n}-linear codes and F_q otherwise.

#include <cstdint>
#include <optional>
#include <vector>

#include "rankmetric/codes.hpp"

namespace rankmetric {

inline constexpr std::uint64_t kDefaultBudget = 10'000'000;
inline constexpr std::uint64_t kSaturated = ~std::uint64_t{0};

struct EnumOptions {
    std::uint64_t budget = kDefaultBudget;
    int workers = 1;
};

/// Number of projective representatives, saturating at kSaturated.
std::uint64_t projective_count(const RdCode& c);
/// |C| = q^{dim_fq}, saturating.
std::uint64_t codeword_count(const RdCode& c);

class CodewordEnumerator {
public:
    explicit CodewordEnumerator(const RdCode& c);

    int dim() const noexcept { return dim_; }
    /// Size of the scalar alphabet (q^n or q).
    std::uint64_t alphabet_size() const noexcept { return alphabet_.size(); }
    std::uint64_t projective_count() const noexcept { return count_; }
    /// Coefficient digits (alphabet indices) of the index-th projective representative.
    std::vector<std::uint32_t> digits_at(std::uint64_t index) const;
    LinearizedPoly codeword(std::span<const std::uint32_t> digits) const;
    LinearizedPoly at(std::uint64_t index) const { return codeword(digits_at(index)); }
    /// All projective representatives; throws BudgetExceeded above the budget.
    std::vector<LinearizedPoly> all(std::uint64_t budget) const;

private:
    const RdCode* code_;
    std::vector<LinearizedPoly> basis_;
    std::vector<Log> alphabet_;
    int dim_;
    std::uint64_t count_;
};

/// counts[r] = number of codewords of rank r, r = 0..n.
using RankDistribution = std::vector<std::uint64_t>;

/// Minimum rank over nonzero codewords (exhaustive). Throws BudgetExceeded.
int min_distance(const RdCode& c, const EnumOptions& opt = {});
RankDistribution rank_distribution(const RdCode& c, const EnumOptions& opt = {});

/// First projective representative (in index order) with rank < r, if any.
std::optional<LinearizedPoly> find_rank_below(const RdCode& c, int r, const EnumOptions& opt = {});
/// First projective representative with rank >= r, if any.
std::optional<LinearizedPoly> find_rank_at_least(const RdCode& c, int r, const EnumOptions& opt = {});

/// Min rank over uniformly random nonzero codewords; never below the true minimum.
int sample_min_rank(const RdCode& c, std::uint64_t samples, std::uint64_t seed);
/// Histogram of ranks over random nonzero codewords (entry r counts rank r).
std::vector<std::uint64_t> sample_rank_histogram(const RdCode& c, std::uint64_t samples, std::uint64_t seed);
/// A random codeword with rank >= r, trying at most `samples` draws.
std::optional<LinearizedPoly> sample_rank_at_least(const RdCode& c, int r, std::uint64_t samples, std::uint64_t seed);

enum class MrdStatus { VerifiedTrue, VerifiedFalse, SampledConsistent };

const char* mrd_status_name(MrdStatus s) noexcept;

struct MrdResult {
    MrdStatus status = MrdStatus::VerifiedTrue;
    int designed_distance = 0;
    /// A codeword of rank below the designed distance, when one was found.
    std::optional<LinearizedPoly> witness;
    std::uint64_t checked = 0;
    bool exhaustive = false;
};

struct MrdOptions {
    std::uint64_t budget = kDefaultBudget;
    std::uint64_t samples = 100'000;
    std::uint64_t seed = 0;
    int workers = 1;
};

/// Distance n - dim_fq/n + 1 for codes whose size can meet the Singleton-like bound.
std::optional<int> designed_distance(const RdCode& c);
MrdResult is_mrd(const RdCode& c, const MrdOptions& opt = {});

/// Rank of an n x n matrix over F_q given row-major as dense indices (clobbered).
int small_rank(std::uint8_t* m, int n, const SmallField& f);

}  // namespace rankmetric
