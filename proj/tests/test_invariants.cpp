#include <numeric>

#include "helpers.hpp"
#include "oracle.hpp"
#include "rankmetric/invariants.hpp"

using namespace rankmetric;

namespace {

LinearizedPoly mono(const ContextPtr& c, std::int64_t i) { return LinearizedPoly::monomial(c, c->one(), i); }

RdCode h_code(int q, int n, int k, int s) {
    const auto c = context_for(q, n);
    return twisted(c, k, s, default_eta(*c, k), 0);
}

RdCode random_mrd(const ContextPtr& c, int k, Rng& rng) {
    for (;;) {
        auto code = random_code(c, k, ScalarMode::FqnLinearLeft, rng);
        if (is_mrd(code).status == MrdStatus::VerifiedTrue) return code;
    }
}

}  // namespace

TEST(AdmissibleShifts, Values) {
    EXPECT_EQ(admissible_shifts(8), (std::vector<int>{1, 3, 5, 7}));
    EXPECT_EQ(admissible_shifts(6), (std::vector<int>{1, 5}));
    EXPECT_TRUE(admissible_shifts(1).empty());
}

TEST(HInvariant, KnownFamilies) {
    for (auto [q, n, k, s] : {std::tuple{2, 5, 2, 1}, {2, 5, 3, 2}, {3, 4, 2, 1}, {2, 6, 3, 5}}) {
        const auto h = h_invariant(gabidulin(context_for(q, n), k, s));
        EXPECT_EQ(h.value, k - 1);
        EXPECT_FALSE(h.over_fq);
    }
    EXPECT_EQ(h_invariant(h_code(3, 5, 3, 1)).value, 1);
    EXPECT_EQ(h_invariant(h_code(3, 7, 3, 2)).value, 1);
    EXPECT_EQ(h_invariant(h_code(3, 5, 2, 1)).value, 0);
    EXPECT_EQ(h_invariant(c3(context_for(3, 7), 1)).value, 1);
    EXPECT_EQ(h_invariant(build_family(default_spec(Family::D2)).code).value, 4);
}

TEST(HInvariant, OverFqForTwistedWithNonzeroH) {
    const auto c = context_for(3, 4);
    const auto h = h_invariant(twisted(c, 2, 1, default_eta(*c, 2), 1));
    EXPECT_TRUE(h.over_fq);
    EXPECT_EQ(h.value % 1, 0);
    EXPECT_LT(h.value, 8);
}

TEST(Idealisers, Gabidulin) {
    const auto c = context_for(2, 5);
    const auto g = gabidulin(c, 2, 1);
    for (const auto& id : {left_idealiser(g), right_idealiser(g)}) {
        EXPECT_EQ(id.order_exponent, 5);
        EXPECT_TRUE(id.is_field);
        EXPECT_FALSE(id.sampled);
        for (const auto& f : id.basis)
            for (int i = 1; i < 5; ++i) EXPECT_TRUE(f.coeff(i).is_zero());
    }
}

TEST(Idealisers, TwistedRightIdealiserOrder) {
    for (auto [q, n, k, s, h] : {std::tuple{3, 4, 2, 1, 0}, {3, 4, 2, 1, 2}, {3, 4, 2, 1, 1}, {3, 6, 2, 1, 0}, {3, 6, 3, 1, 1}}) {
        const auto c = context_for(q, n);
        const auto code = twisted(c, k, s, default_eta(*c, k), h);
        const auto r = right_idealiser(code);
        const auto l = left_idealiser(code);
        EXPECT_EQ(r.order_exponent, std::gcd(n, ((s * k - h) % n + n) % n)) << q << n << k << s << h;
        EXPECT_EQ(l.order_exponent, std::gcd(n, h));
        EXPECT_TRUE(r.is_field);
        EXPECT_TRUE(l.is_field);
    }
}

TEST(Idealisers, FullAndZeroCodes) {
    const auto c = context_for(2, 3);
    for (auto mode : {ScalarMode::FqLinear, ScalarMode::FqnLinearLeft}) {
        for (const auto& code : {RdCode::full(c, mode), RdCode::zero(c, mode)}) {
            const auto l = left_idealiser(code);
            EXPECT_EQ(l.order_exponent, 9);
            EXPECT_FALSE(l.is_field);
            EXPECT_EQ(right_idealiser(code).order_exponent, 9);
        }
    }
}

TEST(Idealisers, StabilizeTheCode) {
    Rng rng(1);
    const auto c = context_for(3, 4);
    const auto code = h_code(3, 4, 2, 1);
    const auto l = left_idealiser(code), r = right_idealiser(code);
    for (const auto& f : code.fq_basis()) {
        for (const auto& phi : l.basis) ASSERT_TRUE(contains(code, compose(phi, f)));
        for (const auto& phi : r.basis) ASSERT_TRUE(contains(code, compose(f, phi)));
    }
}

TEST(Idealisers, SampledAboveThreshold) {
    const auto c = context_for(5, 8);
    const auto r = right_idealiser(gabidulin(c, 2, 1));
    EXPECT_EQ(r.order_exponent, 8);
    EXPECT_TRUE(r.is_field);
    EXPECT_TRUE(r.sampled);
}

TEST(GabidulinCheck, Examples) {
    EXPECT_EQ(is_equiv_gabidulin(gabidulin(context_for(2, 5), 3, 2)).s, 2);
    EXPECT_FALSE(is_equiv_gabidulin(h_code(3, 5, 3, 1)).s.has_value());
    const auto c = context_for(2, 4);
    EXPECT_EQ(is_equiv_gabidulin(from_span_fqn(c, {mono(c, 0)})).s, 1);
    EXPECT_ERRC(is_equiv_gabidulin(from_span_fqn(c, {mono(c, 1) - mono(c, 0)})), Errc::NotMrd);
    EXPECT_ERRC(is_equiv_gabidulin(as_fq_linear(gabidulin(c, 2, 1))), Errc::NotFqnLinear);
}

TEST(GabidulinCheck, InvariantUnderEquivalence) {
    Rng rng(2);
    const auto c = context_for(2, 5);
    const auto g = gabidulin(c, 3, 2);
    const auto h = h_code(3, 5, 3, 1);
    for (int t = 0; t < 10; ++t) {
        EXPECT_TRUE(is_equiv_gabidulin(apply_equivalence(g, random_equivalence(c, rng, true))).s.has_value());
        EXPECT_FALSE(is_equiv_gabidulin(apply_equivalence(h, random_equivalence(h.ctx(), rng, true))).s.has_value());
    }
}

TEST(TwistedCheck, RecoversEtaNormClass) {
    const auto code = h_code(3, 5, 3, 1);
    const auto& f = code.field();
    const auto eta = default_eta(f, 3);
    const auto r = is_equiv_twisted(code);
    ASSERT_TRUE(r.witness.has_value());
    EXPECT_EQ(r.witness->s, 1);
    EXPECT_EQ(f.rel_norm(r.witness->eta), f.rel_norm(eta));
    EXPECT_TRUE(is_invertible(r.witness->p));
    EXPECT_TRUE(contains(code, r.witness->q_complement));
    Rng rng(3);
    for (int t = 0; t < 10; ++t) {
        const auto eq = random_equivalence(code.ctx(), rng, true);
        const auto w = is_equiv_twisted(apply_equivalence(code, eq)).witness;
        ASSERT_TRUE(w.has_value());
        EXPECT_EQ(f.rel_norm(w->eta), f.rel_norm(f.frobenius_p(eta, eq.sigma_exp)));
    }
}

TEST(TwistedCheck, RejectsGabidulinAndSmallK) {
    const auto c = context_for(2, 5);
    const auto r = is_equiv_twisted(gabidulin(c, 3, 1));
    EXPECT_FALSE(r.witness.has_value());
    ASSERT_EQ(r.attempts.size(), 4u);
    EXPECT_EQ(r.attempts[0].step, TwistedStep::IntersectionDim);
    EXPECT_ERRC(is_equiv_twisted(gabidulin(c, 2, 1)), Errc::KTooSmall);
}

TEST(TwistedCheck, SporadicFamiliesFailAtTheEtaStep) {
    for (const auto& code : {c3(context_for(3, 7), 1), c4(context_for(4, 8), 1)}) {
        for (int s : admissible_shifts(code.n())) {
            std::optional<TwistedWitness> w;
            EXPECT_EQ(twisted_attempt(code, s, &w).step, TwistedStep::NoEta);
            EXPECT_FALSE(w.has_value());
        }
    }
}

TEST(GaussianBinomial, Values) {
    EXPECT_EQ(gaussian_binomial(4, 2, 2), 35u);
    EXPECT_EQ(gaussian_binomial(3, 1, 16), 273u);
    EXPECT_EQ(gaussian_binomial(5, 0, 7), 1u);
    EXPECT_EQ(gaussian_binomial(5, 5, 7), 1u);
    EXPECT_EQ(gaussian_binomial(2, 3, 7), 0u);
    EXPECT_EQ(gaussian_binomial(6, 3, 1u << 20), kSaturated);
}

TEST(GabidulinIndex, Families) {
    const auto g = gabidulin(context_for(2, 5), 3, 1);
    auto r = gabidulin_index(g);
    EXPECT_EQ(r.lower, 3);
    EXPECT_EQ(r.status, IndexStatus::Certified);
    EXPECT_TRUE(verify_gabidulin_subcode(g, r.witness, r.witness_s));

    const auto h = h_code(3, 5, 3, 1);
    r = gabidulin_index(h);
    EXPECT_EQ(r.lower, 2);
    EXPECT_EQ(r.upper, 2);
    EXPECT_EQ(r.status, IndexStatus::Certified);
    EXPECT_TRUE(verify_gabidulin_subcode(h, r.witness, r.witness_s));

    const auto c1code = build_family(default_spec(Family::C1)).code;
    r = gabidulin_index(c1code);
    EXPECT_EQ(r.lower, 1);
    EXPECT_EQ(r.upper, 1);
    ASSERT_EQ(r.witness.size(), 1u);
    EXPECT_TRUE(is_invertible(r.witness[0]));
}

TEST(GabidulinIndex, AgreesWithSubspaceScan) {
    Rng rng(4);
    const std::vector<std::pair<ContextPtr, int>> cases = {
        {context_for(2, 4), 2}, {context_for(3, 4), 2}, {context_for(2, 5), 2}, {context_for(2, 5), 3}};
    for (const auto& [c, k] : cases) {
        for (int t = 0; t < 4; ++t) {
            const auto code = random_mrd(c, k, rng);
            const auto r = gabidulin_index(code);
            ASSERT_EQ(r.status, IndexStatus::Certified);
            EXPECT_TRUE(has_gabidulin_subcode_bruteforce(code, r.lower, kDefaultBudget));
            if (r.lower < k) {
                EXPECT_FALSE(has_gabidulin_subcode_bruteforce(code, r.lower + 1, kDefaultBudget));
            }
            EXPECT_TRUE(verify_gabidulin_subcode(code, r.witness, r.witness_s));
        }
    }
    const auto h = h_code(3, 4, 2, 1);
    EXPECT_TRUE(has_gabidulin_subcode_bruteforce(h, 1, kDefaultBudget));
    EXPECT_FALSE(has_gabidulin_subcode_bruteforce(h, 2, kDefaultBudget));
    EXPECT_EQ(gabidulin_index(h).lower, 1);
}

TEST(GabidulinIndex, RandomSearchIsReportedAsBudgetLimited) {
    const auto h = h_code(3, 5, 3, 1);
    IndexOptions opt;
    opt.budget = 0;
    opt.random_samples = 0;
    const auto r = gabidulin_index(h, opt);
    EXPECT_EQ(r.status, IndexStatus::BudgetLimited);
    EXPECT_EQ(r.lower, 0);
    EXPECT_EQ(r.upper, 2);
    opt.random_samples = 1000;
    const auto s = gabidulin_index(h, opt);
    EXPECT_EQ(s.lower, 2);
    EXPECT_EQ(s.status, IndexStatus::Certified);
}

TEST(Fingerprint, InvariantUnderEquivalence) {
    Rng rng(5);
    for (const auto& code : {h_code(3, 4, 2, 1), gabidulin(context_for(2, 5), 2, 1), h_code(3, 5, 3, 1)}) {
        const auto base = fingerprint(code, 0, 2000);
        for (int t = 0; t < 3; ++t) {
            const auto other = apply_equivalence(code, random_equivalence(code.ctx(), rng, true));
            EXPECT_EQ(fingerprint(other, 0, 2000), base);
        }
    }
    EXPECT_EQ(to_string(fingerprint(gabidulin(context_for(2, 5), 2, 1), 0, 2000)), "h=1 L=5 R=5 ranks={4,5}");
}

TEST(Table1Row, VerdictForGabidulin) {
    const auto row = table1_row(default_spec(Family::G));
    EXPECT_EQ(row.verdict, "match");
    EXPECT_TRUE(row.fixture_match);
    EXPECT_EQ(row.report.h.value, 1);
    EXPECT_EQ(row.report.right.order_exponent, 5);
}

TEST(MrdFraction, FrozenValuesAndOracle) {
    const auto c = context_for(2, 4);
    EXPECT_EQ(mrd_fraction(c, 4, 3, kDefaultBudget, 1).fraction(), 1.0);
    const auto r = mrd_fraction(c, 2, 500, kDefaultBudget, 7);
    EXPECT_EQ(r.trials, 500);
    EXPECT_EQ(r.mrd, 11);
    EXPECT_EQ(mrd_fraction(c, 2, 500, kDefaultBudget, 7).mrd, r.mrd);
    // Same draws, decided by the polynomial-basis oracle.
    Rng rng(7);
    int mrd = 0;
    for (int t = 0; t < 500; ++t)
        if (oracle::min_rank_fqn(random_code(c, 2, ScalarMode::FqnLinearLeft, rng)) == 3) ++mrd;
    EXPECT_EQ(mrd, r.mrd);
    EXPECT_EQ(mrd_fraction(context_for(3, 4), 2, 500, kDefaultBudget, 0).mrd, 73);
    EXPECT_EQ(mrd_fraction(context_for(5, 4), 2, 500, kDefaultBudget, 0).mrd, 143);
}
