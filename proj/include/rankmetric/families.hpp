#pragma once

// Known F_{q^n}-linear MRD families: generalized Gabidulin G_{k,s}, twisted
// H_{k,s}(eta, h), the sporadic C1..C5 and their dual representatives D1..D5.

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "rankmetric/codes.hpp"
#include "rankmetric/enumerate.hpp"

namespace rankmetric {

enum class Family { G, H, C1, C2, C3, C4, C5, D1, D2, D3, D4, D5 };

inline constexpr std::array<Family, 12> kAllFamilies = {Family::G,  Family::H,  Family::C1, Family::C2,
                                                        Family::C3, Family::C4, Family::C5, Family::D1,
                                                        Family::D2, Family::D3, Family::D4, Family::D5};

const char* family_name(Family f) noexcept;
std::optional<Family> parse_family_name(std::string_view s);

/// (p, e) with q = p^e; throws BadParams when q is not a prime power.
std::pair<int, int> split_prime_power(int q);
ContextPtr context_for(int q, int n);

RdCode gabidulin(const ContextPtr& ctx, int k, int s);
RdCode twisted(const ContextPtr& ctx, int k, int s, FieldElement eta, int h_twist);
/// (-1)^{nk} as an element of F_q inside F_{q^n}.
FieldElement norm_obstruction(const FieldContext& ctx, int k);
/// First g^i (i = 0, 1, ...) whose relative norm differs from (-1)^{nk}.
FieldElement default_eta(const FieldContext& ctx, int k);

/// First delta in F_{q^2}^* (generator-power order) for which C1(delta) is
/// verified MRD by exhaustive enumeration. Needs n = 6 and q > 4.
FieldElement search_delta_c1(const ContextPtr& ctx, std::uint64_t budget = kDefaultBudget);
/// Smallest-index square root of -1 (n = 8, q odd).
FieldElement delta_c2(const FieldContext& ctx);
/// Smallest-index root of d^2 + d = 1 (n = 6).
FieldElement delta_c5(const FieldContext& ctx);

RdCode c1(const ContextPtr& ctx, FieldElement delta);
RdCode c2(const ContextPtr& ctx, FieldElement delta);
RdCode c2(const ContextPtr& ctx);
RdCode c3(const ContextPtr& ctx, int s);
RdCode c4(const ContextPtr& ctx, int s);
RdCode c5(const ContextPtr& ctx, FieldElement delta);

RdCode d1(const ContextPtr& ctx, FieldElement delta);
RdCode d2(const ContextPtr& ctx, FieldElement delta);
RdCode d3(const ContextPtr& ctx, int s);
RdCode d4(const ContextPtr& ctx, int s);
RdCode d5(const ContextPtr& ctx, FieldElement delta);

/// Expected invariants. Unset fields are not tabulated for the parameters.
struct Fixture {
    int n = 0;
    int k = 0;
    std::optional<int> ind;
    std::optional<int> h;
    std::optional<int> r_exp;
    std::optional<int> l_exp;
};

struct FamilySpec {
    Family tag = Family::G;
    int q = 0;  // 0: family default
    int n = 0;  // 0: family default
    int k = 2;
    int s = 1;
    std::string eta;    // empty: default_eta
    int h_twist = 0;
    std::string delta;  // empty: family default
};

FamilySpec default_spec(Family f);
/// Parses descriptors such as "G:k=2,s=1" or "H:k=2,s=1,eta=g^3,h=0" (keys
/// k, s, eta, h, delta, q, n); unspecified keys keep the family defaults.
FamilySpec parse_descriptor(std::string_view text);
std::string describe(const FamilySpec& spec);
/// Fills q and n with the family defaults where they are zero.
FamilySpec resolve(FamilySpec spec);

struct BuiltFamily {
    FamilySpec spec;  // resolved
    ContextPtr ctx;
    RdCode code;
    std::optional<FieldElement> eta;
    std::optional<FieldElement> delta;
    Fixture expected;
};

BuiltFamily build_family(const FamilySpec& spec, std::uint64_t budget = kDefaultBudget);

/// The dual-side representative for a C family (C_i -> D_i), with the same
/// q, s and delta.
std::optional<Family> dual_family(Family f) noexcept;

}  // namespace rankmetric
