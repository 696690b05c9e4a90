#include <algorithm>
#include <set>

#include "helpers.hpp"
#include "oracle.hpp"
#include "rankmetric/gf.hpp"
#include "rankmetric/rng.hpp"

using namespace rankmetric;

namespace {

ContextPtr ctx(int p, int e, int n) { return FieldContext::get(p, e, n); }

std::vector<ContextPtr> small_contexts() {
    return {ctx(2, 1, 4), ctx(2, 1, 6), ctx(3, 1, 3), ctx(3, 1, 4), ctx(5, 1, 2), ctx(2, 2, 3), ctx(5, 1, 4), ctx(2, 3, 2)};
}

}  // namespace

TEST(FieldContext, Sizes) {
    EXPECT_EQ(ctx(2, 1, 6)->order(), 64u);
    EXPECT_EQ(ctx(5, 1, 8)->order(), 390625u);
    const auto f = ctx(2, 2, 8);
    EXPECT_EQ(f->q(), 4);
    EXPECT_EQ(f->order(), 65536u);
    EXPECT_EQ(f->fq_elements().size(), 4u);
}

TEST(FieldContext, SubfieldOfF4To8MatchesFixedPointCount) {
    const auto f = ctx(2, 2, 8);
    const auto pf = f->poly_field();
    std::uint32_t fixed = 0;
    for (std::uint32_t a = 0; a < pf.order(); ++a)
        if (pf.pow(a, 4) == a) ++fixed;
    EXPECT_EQ(fixed, 4u);
    std::set<std::uint32_t> ours;
    for (auto a : f->fq_elements()) ours.insert(f->poly_encoding(a));
    for (auto a : ours) EXPECT_EQ(pf.pow(a, 4), a);
}

TEST(FieldContext, IsCached) {
    EXPECT_EQ(ctx(3, 1, 4).get(), ctx(3, 1, 4).get());
    EXPECT_NE(ctx(3, 1, 4)->id(), ctx(3, 1, 3)->id());
}

TEST(FieldContext, RejectsBadParameters) {
    EXPECT_ERRC(FieldContext::get(4, 1, 2), Errc::NonPrime);
    EXPECT_ERRC(FieldContext::get(2, 1, 20, 1u << 16), Errc::TableCapExceeded);
}

TEST(FieldContext, ModulusIsFrozen) {
    EXPECT_EQ(ctx(2, 1, 6)->modulus(), (std::vector<int>{1, 0, 0, 0, 0, 1, 1}));
    EXPECT_EQ(ctx(3, 1, 4)->modulus(), (std::vector<int>{1, 0, 1, 1, 1}));
    EXPECT_EQ(ctx(5, 1, 2)->modulus(), (std::vector<int>{1, 1, 1}));
}

namespace {

// Remainder of a modulo the monic b over F_p, both low-first.
std::vector<int> poly_mod(std::vector<int> a, const std::vector<int>& b, int p) {
    const int db = static_cast<int>(b.size()) - 1;
    for (int i = static_cast<int>(a.size()) - 1; i >= db; --i) {
        const int c = a[i] % p;
        if (c == 0) continue;
        for (int j = 0; j <= db; ++j) a[i - db + j] = ((a[i - db + j] - c * b[j]) % p + p) % p;
    }
    a.resize(db);
    return a;
}

bool irreducible_by_trial_division(const std::vector<int>& f, int p) {
    const int d = static_cast<int>(f.size()) - 1;
    for (int dg = 1; dg <= d / 2; ++dg) {
        std::vector<int> g(dg + 1, 0);
        g[dg] = 1;
        for (;;) {
            const auto r = poly_mod(f, g, p);
            if (std::all_of(r.begin(), r.end(), [](int x) { return x == 0; })) return false;
            int i = 0;
            while (i < dg && ++g[i] == p) g[i++] = 0;
            if (i == dg) break;
        }
    }
    return true;
}

}  // namespace

TEST(FieldContext, ModulusIsSmallestIrreducible) {
    for (auto [p, d] : {std::pair{2, 6}, {3, 4}, {5, 2}, {2, 8}, {3, 3}, {5, 4}, {2, 5}}) {
        // Candidates in order: c_0 most significant, leading coefficient 1.
        std::vector<int> f(d + 1, 0);
        f[d] = 1;
        std::vector<int> first;
        for (;;) {
            if (f[0] != 0 && irreducible_by_trial_division(f, p)) {
                first = f;
                break;
            }
            int i = d - 1;
            while (i >= 0 && ++f[i] == p) f[i--] = 0;
            ASSERT_GE(i, 0);
        }
        EXPECT_EQ(ctx(p, 1, d)->modulus(), first) << p << "^" << d;
    }
}

TEST(FieldContext, GeneratorIsPrimitive) {
    for (const auto& f : small_contexts()) {
        const auto pf = f->poly_field();
        const auto g = f->poly_encoding(f->generator());
        const std::uint64_t order = f->group_order();
        EXPECT_EQ(pf.pow(g, order), 1u);
        for (auto r : prime_factors(order)) EXPECT_NE(pf.pow(g, order / r), 1u);
    }
    const auto f = ctx(2, 1, 6);
    EXPECT_EQ(f->pow(f->generator(), 63), f->one());
}

TEST(FieldArithmetic, ZechAgreesWithPolynomialBasisExhaustively) {
    for (const auto& f : {ctx(2, 1, 4), ctx(3, 1, 3), ctx(5, 1, 2), ctx(2, 2, 3)}) {
        const auto pf = f->poly_field();
        for (std::uint32_t a = 0; a < f->order(); ++a)
            for (std::uint32_t b = 0; b < f->order(); ++b) {
                const auto x = f->from_poly_encoding(a), y = f->from_poly_encoding(b);
                ASSERT_EQ(f->poly_encoding(f->add(x, y)), pf.add(a, b));
                ASSERT_EQ(f->poly_encoding(f->mul(x, y)), pf.mul(a, b));
            }
    }
}

TEST(FieldArithmetic, AxiomsOnRandomElements) {
    Rng rng(11);
    for (const auto& f : small_contexts()) {
        for (int t = 0; t < 1000; ++t) {
            const auto a = rng.element(*f), b = rng.element(*f), c = rng.element(*f);
            ASSERT_EQ(f->add(a, f->neg(a)), f->zero());
            ASSERT_EQ(f->mul(a, f->add(b, c)), f->add(f->mul(a, b), f->mul(a, c)));
            ASSERT_EQ(f->add(f->add(a, b), c), f->add(a, f->add(b, c)));
            ASSERT_EQ(f->mul(f->mul(a, b), c), f->mul(a, f->mul(b, c)));
            ASSERT_EQ(f->sub(f->add(a, b), b), a);
            if (!a.is_zero()) {
                ASSERT_EQ(f->mul(a, f->inv(a)), f->one());
                ASSERT_EQ(f->div(b, a), f->mul(b, f->inv(a)));
            }
        }
    }
}

TEST(FieldArithmetic, DivisionByZeroThrows) {
    const auto f = ctx(2, 1, 4);
    EXPECT_ERRC(f->inv(f->zero()), Errc::DivisionByZero);
}

TEST(FieldArithmetic, MixedContextsThrow) {
    const auto a = ctx(2, 1, 4), b = ctx(2, 1, 3);
    EXPECT_ERRC(a->add(a->one(), b->one()), Errc::ContextMismatch);
}

TEST(Frobenius, GeneratorCubedShiftInF64) {
    const auto f = ctx(2, 1, 6);
    const auto g = f->generator();
    EXPECT_EQ(f->frobenius(g, 3), f->gen_power(8));
    EXPECT_EQ(f->poly_encoding(f->frobenius(g, 3)), f->poly_field().pow(f->poly_encoding(g), 8));
}

TEST(Frobenius, PeriodAndAdditivity) {
    Rng rng(3);
    for (const auto& f : small_contexts()) {
        const auto pf = f->poly_field();
        for (int t = 0; t < 200; ++t) {
            const auto a = rng.element(*f), b = rng.element(*f);
            const int j = static_cast<int>(rng.below(f->n()));
            ASSERT_EQ(f->frobenius(a, f->n()), a);
            ASSERT_EQ(f->frobenius(f->add(a, b), j), f->add(f->frobenius(a, j), f->frobenius(b, j)));
            std::uint64_t e = 1;
            for (int i = 0; i < j; ++i) e *= static_cast<std::uint64_t>(f->q());
            ASSERT_EQ(f->poly_encoding(f->frobenius(a, j)), pf.pow(f->poly_encoding(a), e));
        }
    }
}

TEST(TraceNorm, BasicValues) {
    for (const auto& f : small_contexts()) {
        EXPECT_EQ(f->rel_norm(f->one()), f->one());
        EXPECT_EQ(f->rel_trace(f->zero()), f->zero());
    }
}

TEST(TraceNorm, AgreeWithConjugateOracle) {
    Rng rng(5);
    for (const auto& f : small_contexts()) {
        const auto pf = f->poly_field();
        for (int t = 0; t < 200; ++t) {
            const auto a = rng.element(*f), b = rng.element(*f);
            ASSERT_EQ(f->rel_norm(f->mul(a, b)), f->mul(f->rel_norm(a), f->rel_norm(b)));
            ASSERT_EQ(f->poly_encoding(f->rel_trace(a)), oracle::trace(pf, f->q(), f->n(), f->poly_encoding(a)));
            ASSERT_TRUE(f->is_in_subfield(f->rel_trace(a)));
            ASSERT_TRUE(f->is_in_subfield(f->rel_norm(a)));
        }
    }
}

TEST(TraceNorm, NormOfGeneratorInF25) {
    const auto f = ctx(5, 1, 2);
    const auto nrm = f->rel_norm(f->generator());
    EXPECT_EQ(nrm, f->gen_power(6));
    EXPECT_TRUE(f->is_in_subfield(nrm));
    EXPECT_NE(f->pow(nrm, 2), f->one());
    EXPECT_EQ(f->pow(nrm, 4), f->one());
}

TEST(Coordinates, BasisIsUnitVectors) {
    for (const auto& f : small_contexts()) {
        const auto& basis = f->fq_basis();
        ASSERT_EQ(static_cast<int>(basis.size()), f->n());
        for (int i = 0; i < f->n(); ++i) {
            const auto c = f->fq_coordinates(basis[i]);
            for (int j = 0; j < f->n(); ++j) EXPECT_EQ(c[j], i == j ? 1 : 0);
        }
    }
}

TEST(Coordinates, ReconstructionAndTraceRoute) {
    Rng rng(8);
    for (const auto& f : small_contexts()) {
        for (int t = 0; t < 1000; ++t) {
            const auto a = rng.element(*f);
            const auto c = f->fq_coordinates(a);
            ASSERT_EQ(f->from_fq_coordinates(c), a);
            ASSERT_EQ(f->fq_coordinates_by_trace(a), c);
            auto acc = f->zero();
            for (int i = 0; i < f->n(); ++i) acc = f->add(acc, f->mul(f->from_subfield(c[i]), f->fq_basis()[i]));
            ASSERT_EQ(acc, a);
        }
    }
}

TEST(Coordinates, DualBasisPairing) {
    for (const auto& f : small_contexts())
        for (int i = 0; i < f->n(); ++i)
            for (int j = 0; j < f->n(); ++j)
                EXPECT_EQ(f->rel_trace(f->mul(f->fq_basis()[i], f->fq_dual_basis()[j])), i == j ? f->one() : f->zero());
}

TEST(Serialization, DigitStrings) {
    const auto f = ctx(2, 1, 6);
    const auto x = f->from_digits("010000");
    EXPECT_EQ(f->from_digits("110000"), f->add(f->one(), x));
    EXPECT_EQ(f->to_digits(f->one()), "100000");
    EXPECT_EQ(f->parse("g^3"), f->gen_power(3));
    EXPECT_EQ(f->parse("0"), f->zero());
    EXPECT_ERRC(f->from_digits("12"), Errc::ParseError);
    Rng rng(1);
    for (const auto& c : small_contexts())
        for (int t = 0; t < 100; ++t) {
            const auto a = rng.element(*c);
            ASSERT_EQ(c->from_digits(c->to_digits(a)), a);
        }
}
