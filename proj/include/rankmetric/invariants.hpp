#pragma once

// Distinguishers: idealisers, h(C), the Gabidulin index and the constructive
// Gabidulin / twisted-Gabidulin characterizations.

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rankmetric/families.hpp"

namespace rankmetric {

enum class Side { Left, Right };

struct IdealiserResult {
    Side side = Side::Left;
    std::vector<LinearizedPoly> basis;  // F_q-basis
    int order_exponent = 0;             // |I| = q^order_exponent
    bool is_field = false;
    /// Invertibility was checked on a sample rather than on every element.
    bool sampled = false;
};

/// { phi : phi o f in C for all f in C }.
IdealiserResult left_idealiser(const RdCode& c, std::uint64_t seed = 0);
/// { phi : f o phi in C for all f in C }.
IdealiserResult right_idealiser(const RdCode& c, std::uint64_t seed = 0);

struct HValue {
    int value = 0;
    int arg = 0;          // smallest j attaining the maximum (0 when n = 1)
    bool over_fq = false;  // dimensions over F_q (code not F_{q^n}-linear)
};

HValue h_invariant(const RdCode& c);

struct GabidulinCheck {
    std::optional<int> s;
    MrdStatus mrd = MrdStatus::VerifiedTrue;
    /// MRD status came from sampling only.
    bool mrd_sampled = false;
};

/// Smallest admissible s with dim(C cap C^{[s]}) = k - 1. Throws NotFqnLinear,
/// or NotMrd when the code is verified not MRD.
GabidulinCheck is_equiv_gabidulin(const RdCode& c, const MrdOptions& opt = {});

struct TwistedWitness {
    int s = 0;
    LinearizedPoly p;
    LinearizedPoly q_complement;
    FieldElement eta;
};

enum class TwistedStep {
    Ok,
    IntersectionDim,       // dim(C cap C^[s]) != k-2
    TripleIntersectionDim, // dim(C cap C^[s] cap C^[2s]) != k-3
    SumDim,                // dim U != k-1
    ChainDim,              // dim W != 1
    SpanMismatch,          // U != <p^[s], ..., p^[s(k-1)]>
    NotInvertible,         // p not invertible
    NoEta,                 // p + eta p^[sk] not in C for any eta != 0
    NormCondition,         // N(eta) = (-1)^{nk}
};

const char* twisted_step_name(TwistedStep s) noexcept;

struct TwistedAttempt {
    int s = 0;
    TwistedStep step = TwistedStep::Ok;
};

struct TwistedCheck {
    std::optional<TwistedWitness> witness;
    std::vector<TwistedAttempt> attempts;  // one per admissible s, in order
    bool mrd_sampled = false;
};

/// Recovery procedure for codes equivalent to H_{k,s}(eta). Throws
/// NotFqnLinear, NotMrd, or KTooSmall for k <= 2.
TwistedCheck is_equiv_twisted(const RdCode& c, const MrdOptions& opt = {});
/// Same procedure for one s, without the MRD precondition.
TwistedAttempt twisted_attempt(const RdCode& c, int s, std::optional<TwistedWitness>* out);

enum class IndexStatus { Certified, Witnessed, BudgetLimited };
const char* index_status_name(IndexStatus s) noexcept;

enum class LevelOutcome { Found, Absent, Unknown };

struct IndexLevel {
    int m = 0;
    LevelOutcome outcome = LevelOutcome::Unknown;
    std::string reason;
};

struct IndexResult {
    int lower = 0;
    int upper = 0;
    IndexStatus status = IndexStatus::Certified;
    /// Basis of a subcode equivalent to G_{lower,s}, when lower > 0.
    std::vector<LinearizedPoly> witness;
    int witness_s = 0;
    std::vector<IndexLevel> levels;
};

struct IndexOptions {
    std::uint64_t budget = kDefaultBudget;
    std::uint64_t seed = 0;
    /// Random draws per level when the candidate space exceeds the budget.
    std::uint64_t random_samples = 1'000'000;
    int workers = 1;
};

/// Gabidulin index over F_{q^n}-linear subcodes. Throws NotFqnLinear.
IndexResult gabidulin_index(const RdCode& c, const IndexOptions& opt = {});

/// Independent re-check of an index witness: MRD plus the h-condition (or
/// invertibility for dimension one).
bool verify_gabidulin_subcode(const RdCode& c, const std::vector<LinearizedPoly>& basis, int s,
                              std::uint64_t budget = kDefaultBudget);

/// Reference oracle: scans every m-dimensional F_{q^n}-subspace of C.
/// Exponential; only for tiny codes.
bool has_gabidulin_subcode_bruteforce(const RdCode& c, int m, std::uint64_t budget);
std::uint64_t gaussian_binomial(int k, int m, std::uint64_t base);

struct Fingerprint {
    int h = 0;
    int l_exp = 0;
    int r_exp = 0;
    std::set<int> rank_profile;

    friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
};

inline constexpr std::uint64_t kProfileSamples = 100'000;
/// Ranks whose sampled frequency reaches this fraction enter the profile.
inline constexpr double kProfileThreshold = 5e-4;

Fingerprint fingerprint(const RdCode& c, std::uint64_t seed = 0, std::uint64_t samples = kProfileSamples);
std::string to_string(const Fingerprint& f);

struct InvariantReport {
    std::string family;
    int q = 0;
    int n = 0;
    int k = 0;
    HValue h;
    IndexResult ind;
    IdealiserResult left;
    IdealiserResult right;
    MrdResult mrd;
};

InvariantReport compute_report(const RdCode& c, const std::string& label, const IndexOptions& opt = {});

struct Table1Row {
    FamilySpec spec;
    Fixture expected;
    InvariantReport report;
    bool h_match = true;
    bool r_match = true;
    bool ind_match = true;
    /// No certified value contradicts the fixture.
    bool fixture_match = true;
    /// "match" when everything is certified, "consistent" when some bound is
    /// only budget-limited but contains the fixture value, "mismatch" otherwise.
    std::string verdict;
};

Table1Row table1_row(const FamilySpec& spec, const IndexOptions& opt = {});
/// Compares a computed report with the expected values.
Table1Row judge_row(const FamilySpec& spec, const Fixture& expected, InvariantReport report);

struct MrdFraction {
    int trials = 0;
    int mrd = 0;
    double fraction() const noexcept { return trials == 0 ? 0.0 : static_cast<double>(mrd) / trials; }
};

/// Fraction of random F_{q^n}-linear codes of dimension k that are MRD.
MrdFraction mrd_fraction(const ContextPtr& ctx, int k, int trials, std::uint64_t budget, std::uint64_t seed);

/// Admissible shifts: 1 <= s <= n-1 with gcd(s, n) = 1.
std::vector<int> admissible_shifts(int n);

}  // namespace rankmetric
