#include <set>

#include "helpers.hpp"
#include "rankmetric/families.hpp"

using namespace rankmetric;

namespace {

ContextPtr ctx(int p, int e, int n) { return FieldContext::get(p, e, n); }

LinearizedPoly mono(const ContextPtr& c, FieldElement a, std::int64_t i) { return LinearizedPoly::monomial(c, a, i); }
LinearizedPoly mono(const ContextPtr& c, std::int64_t i) { return mono(c, c->one(), i); }

std::vector<ContextPtr> small_contexts() { return {ctx(2, 1, 4), ctx(3, 1, 3), ctx(2, 1, 5), ctx(2, 2, 3)}; }

bool orthogonal(const RdCode& a, const RdCode& b) {
    for (const auto& f : a.fq_basis())
        for (const auto& g : b.fq_basis())
            if (!bilinear_b(f, g).is_zero()) return false;
    return true;
}

}  // namespace

TEST(RdCode, SpanDimensions) {
    const auto c = ctx(2, 1, 4);
    const auto two = from_span_fqn(c, {mono(c, 0), mono(c, 1)});
    EXPECT_EQ(two.k_fqn(), 2);
    EXPECT_EQ(two.dim_fq(), 8);
    const auto one = from_span_fqn(c, {mono(c, 0), mono(c, c->gen_power(5), 0)});
    EXPECT_EQ(one.k_fqn(), 1);
    std::vector<LinearizedPoly> all;
    for (int i = 0; i < c->n(); ++i)
        for (auto t : c->fq_basis()) all.push_back(mono(c, t, i));
    const auto full = from_span_fq(c, all);
    EXPECT_EQ(full.dim_fq(), 16);
    EXPECT_EQ(full, RdCode::full(c, ScalarMode::FqLinear));
    EXPECT_ERRC(full.k_fqn(), Errc::NotFqnLinear);
}

TEST(RdCode, CanonicalBasisIsSpanInvariant) {
    Rng rng(1);
    for (const auto& c : small_contexts()) {
        for (int t = 0; t < 20; ++t) {
            const auto code = random_code(c, 2, ScalarMode::FqnLinearLeft, rng);
            const auto b = code.basis();
            const auto a1 = rng.nonzero_element(*c), a2 = rng.element(*c);
            const auto alt = from_span_fqn(c, {scale(a1, b[0]) + scale(a2, b[1]), b[1], b[0] + b[1]});
            ASSERT_EQ(alt, code);
            ASSERT_EQ(alt.basis(), b);
        }
    }
}

TEST(RdCode, ContainsAndModes) {
    const auto c = ctx(3, 1, 3);
    const auto g = gabidulin(c, 2, 1);
    EXPECT_TRUE(contains(g, mono(c, c->generator(), 1)));
    EXPECT_FALSE(contains(g, mono(c, 2)));
    const auto fq = as_fq_linear(g);
    EXPECT_FALSE(fq.is_fqn_linear());
    EXPECT_TRUE(is_closed_under_scalars(fq));
    EXPECT_EQ(promote(fq).value(), g);
    const auto small = from_span_fq(c, {mono(c, 0)});
    EXPECT_FALSE(promote(small).has_value());
    EXPECT_EQ(normalize(small), small);
}

TEST(Intersection, SelfAndShifts) {
    const auto c = ctx(2, 1, 5);
    const auto g = gabidulin(c, 3, 1);
    EXPECT_EQ(intersect(g, g), g);
    EXPECT_EQ(intersect(g, shift_code(g, 1)).k_fqn(), 2);
    const auto c3 = ctx(3, 1, 5);
    const auto h = twisted(c3, 3, 1, default_eta(*c3, 3), 0);
    EXPECT_EQ(intersect(h, shift_code(h, 1)).k_fqn(), 1);
}

TEST(Intersection, DimensionFormula) {
    Rng rng(2);
    for (const auto& c : small_contexts()) {
        for (int t = 0; t < 25; ++t) {
            const int n = c->n();
            const auto a = random_code(c, 1 + static_cast<int>(rng.below(n)), ScalarMode::FqnLinearLeft, rng);
            const auto b = random_code(c, 1 + static_cast<int>(rng.below(n)), ScalarMode::FqnLinearLeft, rng);
            ASSERT_EQ(sum(a, b).dim() + intersect(a, b).dim(), a.dim() + b.dim());
            const auto x = random_code(c, 1 + static_cast<int>(rng.below(n * n)), ScalarMode::FqLinear, rng);
            const auto y = random_code(c, 1 + static_cast<int>(rng.below(n * n)), ScalarMode::FqLinear, rng);
            ASSERT_EQ(sum(x, y).dim() + intersect(x, y).dim(), x.dim() + y.dim());
            const auto i = intersect(x, y);
            for (const auto& f : i.fq_basis()) ASSERT_TRUE(contains(x, f) && contains(y, f));
        }
    }
}

TEST(Intersection, ModeMismatchThrows) {
    const auto c = ctx(2, 1, 4);
    EXPECT_ERRC(intersect(gabidulin(c, 2, 1), as_fq_linear(gabidulin(c, 2, 1))), Errc::ScalarModeMismatch);
    EXPECT_ERRC(intersect(gabidulin(c, 2, 1), gabidulin(ctx(2, 1, 5), 2, 1)), Errc::ContextMismatch);
}

TEST(DelsarteDual, ZeroAndFull) {
    const auto c = ctx(2, 1, 4);
    EXPECT_EQ(delsarte_dual(RdCode::zero(c, ScalarMode::FqLinear)), RdCode::full(c, ScalarMode::FqLinear));
    EXPECT_EQ(delsarte_dual(RdCode::full(c, ScalarMode::FqnLinearLeft)), RdCode::zero(c, ScalarMode::FqnLinearLeft));
}

TEST(DelsarteDual, InvolutionOrthogonalityAndDimensions) {
    Rng rng(3);
    for (const auto& c : small_contexts()) {
        const int n = c->n();
        for (int t = 0; t < 20; ++t) {
            const auto a = random_code(c, static_cast<int>(rng.below(n + 1)), ScalarMode::FqnLinearLeft, rng);
            const auto d = delsarte_dual(a);
            ASSERT_TRUE(d.is_fqn_linear());
            ASSERT_EQ(d.dim() + a.dim(), n);
            ASSERT_EQ(delsarte_dual(d), a);
            ASSERT_TRUE(orthogonal(a, d));
            ASSERT_EQ(as_fq_linear(d), delsarte_dual_by_trace(as_fq_linear(a)));

            const auto x = random_code(c, static_cast<int>(rng.below(n * n + 1)), ScalarMode::FqLinear, rng);
            const auto y = delsarte_dual(x);
            ASSERT_EQ(x.dim_fq() + y.dim_fq(), n * n);
            ASSERT_EQ(delsarte_dual(y), x);
            ASSERT_TRUE(orthogonal(x, y));
        }
    }
}

TEST(DelsarteDual, DualOfMrdIsMrd) {
    for (auto [q, n, k] : {std::tuple{2, 4, 2}, {2, 5, 2}, {3, 4, 1}, {2, 5, 3}}) {
        const auto c = context_for(q, n);
        const auto d = delsarte_dual(gabidulin(c, k, 1));
        EXPECT_EQ(is_mrd(d).status, MrdStatus::VerifiedTrue);
    }
}

TEST(Adjoint, InvolutionAndDimensions) {
    Rng rng(4);
    for (const auto& c : small_contexts()) {
        for (int t = 0; t < 10; ++t) {
            const auto a = random_code(c, 2, ScalarMode::FqnLinearLeft, rng);
            const auto b = adjoint_code(a);
            ASSERT_EQ(b.dim_fq(), a.dim_fq());
            ASSERT_EQ(adjoint_code(b), a);
            const auto x = random_code(c, 5, ScalarMode::FqLinear, rng);
            ASSERT_EQ(adjoint_code(adjoint_code(x)), x);
        }
    }
}

TEST(Adjoint, GabidulinIsClosedUpToShift) {
    const auto c = ctx(2, 1, 5);
    const auto g = gabidulin(c, 2, 1);
    const auto a = adjoint_code(g);
    EXPECT_TRUE(a.is_fqn_linear());
    EXPECT_EQ(a, from_span_fqn(c, {mono(c, 0), mono(c, -1)}));
}

TEST(Equivalence, IdentityLeavesCodeUnchanged) {
    const auto c = ctx(2, 1, 4);
    const auto g = gabidulin(c, 2, 1);
    const auto id = LinearizedPoly::identity(c);
    EXPECT_EQ(apply_equivalence(g, id, id, 0), g);
    EXPECT_ERRC(apply_equivalence(g, mono(c, 1) - mono(c, 0), id, 0), Errc::NotInvertible);
}

TEST(Equivalence, MinDistanceInvariance) {
    const auto c = ctx(2, 1, 4);
    const auto g = gabidulin(c, 2, 1);
    Rng rng(5);
    for (int t = 0; t < 20; ++t) {
        const auto eq = random_equivalence(c, rng, t % 2 == 0);
        const auto d = apply_equivalence(g, eq);
        ASSERT_EQ(d.dim_fq(), g.dim_fq());
        ASSERT_EQ(d.is_fqn_linear(), t % 2 == 0);
        ASSERT_EQ(min_distance(d), 3);
    }
}

TEST(Equivalence, ComposesAsExpected) {
    const auto c = ctx(3, 1, 3);
    Rng rng(6);
    const auto code = random_code(c, 4, ScalarMode::FqLinear, rng);
    const auto h1 = random_invertible(c, rng), g1 = random_invertible(c, rng);
    const auto h2 = random_invertible(c, rng), g2 = random_invertible(c, rng);
    const auto twice = apply_equivalence(apply_equivalence(code, h1, g1, 0), h2, g2, 0);
    EXPECT_EQ(twice, apply_equivalence(code, compose(h2, h1), compose(g1, g2), 0));
}

TEST(RandomCode, EdgeCases) {
    const auto c = ctx(2, 1, 4);
    EXPECT_EQ(random_code(c, 4, ScalarMode::FqnLinearLeft, 1), RdCode::full(c, ScalarMode::FqnLinearLeft));
    EXPECT_EQ(random_code(c, 4, ScalarMode::FqnLinearLeft, 1).dim_fq(), 16);
    EXPECT_TRUE(random_code(c, 0, ScalarMode::FqnLinearLeft, 1).is_zero());
    EXPECT_ERRC(random_code(c, 5, ScalarMode::FqnLinearLeft, 1), Errc::BadParams);
}

TEST(RandomCode, SeedsGiveDistinctCodes) {
    // 2-dimensional subspaces of F_16^4: [4,2]_16 = 69905, so 100 pairs
    // collide with probability about 1.4e-3.
    const auto c = ctx(2, 1, 4);
    int equal = 0;
    for (std::uint64_t s = 0; s < 100; ++s)
        if (random_code(c, 2, ScalarMode::FqnLinearLeft, 2 * s) == random_code(c, 2, ScalarMode::FqnLinearLeft, 2 * s + 1))
            ++equal;
    EXPECT_EQ(equal, 0);
    EXPECT_EQ(random_code(c, 2, ScalarMode::FqnLinearLeft, 42), random_code(c, 2, ScalarMode::FqnLinearLeft, 42));
}
