#include "rankmetric/codes.hpp"

namespace rankmetric {

namespace {

template <class Ops>
Matrix<typename Ops::Elem> stack(const Matrix<typename Ops::Elem>& a, const Matrix<typename Ops::Elem>& b,
                                 const Ops& ops) {
    Matrix<typename Ops::Elem> m(0, a.cols(), ops.zero());
    for (std::size_t r = 0; r < a.rows(); ++r) m.append_row(a.row(r));
    for (std::size_t r = 0; r < b.rows(); ++r) m.append_row(b.row(r));
    return m;
}

// Zassenhaus: rref of [A | A ; B | 0]; rows with zero left half span A cap B.
template <class Ops>
Matrix<typename Ops::Elem> intersect_rows(const Matrix<typename Ops::Elem>& a, const Matrix<typename Ops::Elem>& b,
                                          const Ops& ops) {
    using E = typename Ops::Elem;
    const std::size_t c = a.cols();
    Matrix<E> z(a.rows() + b.rows(), 2 * c, ops.zero());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t j = 0; j < c; ++j) {
            z(r, j) = a(r, j);
            z(r, c + j) = a(r, j);
        }
    for (std::size_t r = 0; r < b.rows(); ++r)
        for (std::size_t j = 0; j < c; ++j) z(a.rows() + r, j) = b(r, j);
    const auto pivots = rref(z, ops);
    Matrix<E> out(0, c, ops.zero());
    for (std::size_t r = 0; r < pivots.size(); ++r) {
        if (pivots[r] < c) continue;
        out.append_row(z.row(r).subspan(c, c));
    }
    rref(out, ops);
    return out;
}

void check_pair(const RdCode& a, const RdCode& b) {
    if (a.field().id() != b.field().id()) throw Error(Errc::ContextMismatch, "codes from different contexts");
    if (a.scalars() != b.scalars())
        throw Error(Errc::ScalarModeMismatch, "codes have different scalar modes; downgrade with as_fq_linear");
}

Matrix<Log> fqn_rows_of(const FieldContext& ctx, const std::vector<LinearizedPoly>& gens) {
    Matrix<Log> m(0, ctx.n(), kZeroLog);
    for (const auto& f : gens) {
        if (f.field().id() != ctx.id()) throw Error(Errc::ContextMismatch, "generator from a different context");
        m.append_row(coeff_logs(f));
    }
    return m;
}

Matrix<SmallField::Elem> fq_rows_of(const FieldContext& ctx, const std::vector<LinearizedPoly>& gens) {
    Matrix<SmallField::Elem> m(0, static_cast<std::size_t>(ctx.n()) * ctx.n(), 0);
    for (const auto& f : gens) {
        if (f.field().id() != ctx.id()) throw Error(Errc::ContextMismatch, "generator from a different context");
        m.append_row(fq_coordinates(f));
    }
    return m;
}

}  // namespace

const char* scalar_mode_name(ScalarMode m) noexcept { return m == ScalarMode::FqLinear ? "fq" : "fqn"; }

RdCode RdCode::from_fqn_rows(ContextPtr ctx, Matrix<Log> rows) {
    RdCode c;
    c.ctx_ = std::move(ctx);
    c.mode_ = ScalarMode::FqnLinearLeft;
    const auto& f = *c.ctx_;
    c.fqn_pivots_ = rref(rows, fqn_ops(f));
    c.fqn_rows_ = std::move(rows);
    const int n = f.n();
    Matrix<SmallField::Elem> fq(0, static_cast<std::size_t>(n) * n, 0);
    std::vector<SmallField::Elem> v(static_cast<std::size_t>(n) * n);
    for (std::size_t r = 0; r < c.fqn_rows_.rows(); ++r)
        for (int t = 0; t < n; ++t) {
            const Log theta = f.fq_basis()[t].log();
            for (int i = 0; i < n; ++i) f.fq_coordinates_log(f.mul_log(theta, c.fqn_rows_(r, i)), &v[i * n]);
            fq.append_row(v);
        }
    c.fq_pivots_ = rref(fq, fq_ops(f));
    c.fq_rows_ = std::move(fq);
    return c;
}

RdCode RdCode::from_fq_rows(ContextPtr ctx, Matrix<SmallField::Elem> rows) {
    RdCode c;
    c.ctx_ = std::move(ctx);
    c.mode_ = ScalarMode::FqLinear;
    c.fq_pivots_ = rref(rows, fq_ops(*c.ctx_));
    c.fq_rows_ = std::move(rows);
    return c;
}

RdCode RdCode::zero(ContextPtr ctx, ScalarMode mode) {
    const int n = ctx->n();
    if (mode == ScalarMode::FqnLinearLeft) return from_fqn_rows(ctx, Matrix<Log>(0, n, kZeroLog));
    return from_fq_rows(ctx, Matrix<SmallField::Elem>(0, static_cast<std::size_t>(n) * n, 0));
}

RdCode RdCode::full(ContextPtr ctx, ScalarMode mode) {
    const std::size_t n = ctx->n();
    if (mode == ScalarMode::FqnLinearLeft) {
        Matrix<Log> m(n, n, kZeroLog);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 0;
        return from_fqn_rows(ctx, std::move(m));
    }
    Matrix<SmallField::Elem> m(n * n, n * n, 0);
    for (std::size_t i = 0; i < n * n; ++i) m(i, i) = 1;
    return from_fq_rows(ctx, std::move(m));
}

int RdCode::k_fqn() const {
    if (!is_fqn_linear()) throw Error(Errc::NotFqnLinear, "code is only F_q-linear");
    return static_cast<int>(fqn_rows_.rows());
}

const Matrix<Log>& RdCode::fqn_matrix() const {
    if (!is_fqn_linear()) throw Error(Errc::NotFqnLinear, "code is only F_q-linear");
    return fqn_rows_;
}

std::vector<LinearizedPoly> RdCode::basis() const {
    if (!is_fqn_linear()) return fq_basis();
    std::vector<LinearizedPoly> out;
    for (std::size_t r = 0; r < fqn_rows_.rows(); ++r) out.push_back(from_logs(ctx_, fqn_rows_.row(r)));
    return out;
}

std::vector<LinearizedPoly> RdCode::fq_basis() const {
    std::vector<LinearizedPoly> out;
    for (std::size_t r = 0; r < fq_rows_.rows(); ++r) out.push_back(from_fq_coordinates(ctx_, fq_rows_.row(r)));
    return out;
}

bool operator==(const RdCode& a, const RdCode& b) {
    return a.ctx_ && b.ctx_ && a.ctx_->id() == b.ctx_->id() && a.fq_rows_ == b.fq_rows_;
}

RdCode from_span_fqn(ContextPtr ctx, const std::vector<LinearizedPoly>& gens) {
    auto rows = fqn_rows_of(*ctx, gens);
    return RdCode::from_fqn_rows(std::move(ctx), std::move(rows));
}

RdCode from_span_fq(ContextPtr ctx, const std::vector<LinearizedPoly>& gens) {
    auto rows = fq_rows_of(*ctx, gens);
    return RdCode::from_fq_rows(std::move(ctx), std::move(rows));
}

bool contains(const RdCode& c, const LinearizedPoly& f) {
    if (f.field().id() != c.field().id()) throw Error(Errc::ContextMismatch, "polynomial from a different context");
    if (c.is_fqn_linear()) {
        auto v = coeff_logs(f);
        reduce_against(std::span<Log>(v), c.fqn_matrix(), c.fqn_pivots(), fqn_ops(c.field()));
        for (auto x : v)
            if (x != kZeroLog) return false;
        return true;
    }
    auto v = fq_coordinates(f);
    reduce_against(std::span<SmallField::Elem>(v), c.fq_matrix(), c.fq_pivots(), fq_ops(c.field()));
    for (auto x : v)
        if (x != 0) return false;
    return true;
}

bool is_closed_under_scalars(const RdCode& c) {
    if (c.is_fqn_linear()) return true;
    const auto g = c.field().generator();
    for (const auto& f : c.fq_basis())
        if (!contains(c, scale(g, f))) return false;
    return true;
}

RdCode as_fq_linear(const RdCode& c) { return RdCode::from_fq_rows(c.ctx(), c.fq_matrix()); }

std::optional<RdCode> promote(const RdCode& c) {
    if (c.is_fqn_linear()) return c;
    if (c.dim_fq() % c.n() != 0 || !is_closed_under_scalars(c)) return std::nullopt;
    return from_span_fqn(c.ctx(), c.fq_basis());
}

RdCode normalize(const RdCode& c) {
    auto p = promote(c);
    return p ? *p : c;
}

RdCode intersect(const RdCode& a, const RdCode& b) {
    check_pair(a, b);
    if (a.is_fqn_linear())
        return RdCode::from_fqn_rows(a.ctx(), intersect_rows(a.fqn_matrix(), b.fqn_matrix(), fqn_ops(a.field())));
    return RdCode::from_fq_rows(a.ctx(), intersect_rows(a.fq_matrix(), b.fq_matrix(), fq_ops(a.field())));
}

RdCode sum(const RdCode& a, const RdCode& b) {
    check_pair(a, b);
    if (a.is_fqn_linear()) return RdCode::from_fqn_rows(a.ctx(), stack(a.fqn_matrix(), b.fqn_matrix(), fqn_ops(a.field())));
    return RdCode::from_fq_rows(a.ctx(), stack(a.fq_matrix(), b.fq_matrix(), fq_ops(a.field())));
}

RdCode shift_code(const RdCode& c, std::int64_t s) {
    std::vector<LinearizedPoly> gens;
    for (const auto& f : c.basis()) gens.push_back(frobenius_shift(f, s));
    return c.is_fqn_linear() ? from_span_fqn(c.ctx(), gens) : from_span_fq(c.ctx(), gens);
}

RdCode delsarte_dual(const RdCode& c) {
    if (!c.is_fqn_linear()) return delsarte_dual_by_trace(c);
    return RdCode::from_fqn_rows(c.ctx(), null_space(c.fqn_matrix(), fqn_ops(c.field())));
}

RdCode delsarte_dual_by_trace(const RdCode& c) {
    const auto& f = c.field();
    const std::size_t n = f.n();
    const auto ops = fq_ops(f);
    Matrix<SmallField::Elem> t(n, n, 0);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) t(a, b) = f.subfield_index(f.rel_trace(f.mul(f.fq_basis()[a], f.fq_basis()[b])));
    const auto& rows = c.fq_matrix();
    Matrix<SmallField::Elem> m(rows.rows(), n * n, 0);
    for (std::size_t r = 0; r < rows.rows(); ++r)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t a = 0; a < n; ++a) {
                SmallField::Elem acc = 0;
                for (std::size_t b = 0; b < n; ++b) acc = ops.add(acc, ops.mul(rows(r, i * n + b), t(b, a)));
                m(r, i * n + a) = acc;
            }
    return RdCode::from_fq_rows(c.ctx(), null_space(m, ops));
}

RdCode adjoint_code(const RdCode& c) {
    std::vector<LinearizedPoly> gens;
    for (const auto& f : c.fq_basis()) gens.push_back(adjoint(f));
    auto out = from_span_fq(c.ctx(), gens);
    return c.is_fqn_linear() ? normalize(out) : out;
}

RdCode apply_equivalence(const RdCode& c, const LinearizedPoly& h, const LinearizedPoly& g, std::int64_t sigma_exp) {
    if (!is_invertible(h) || !is_invertible(g)) throw Error(Errc::NotInvertible, "equivalence maps must be invertible");
    std::vector<LinearizedPoly> gens;
    for (const auto& f : c.fq_basis()) gens.push_back(compose(compose(h, apply_automorphism(f, sigma_exp)), g));
    auto out = from_span_fq(c.ctx(), gens);
    return c.is_fqn_linear() ? normalize(out) : out;
}

RdCode apply_equivalence(const RdCode& c, const Equivalence& eq) { return apply_equivalence(c, eq.h, eq.g, eq.sigma_exp); }

LinearizedPoly random_invertible(const ContextPtr& ctx, Rng& rng) {
    for (;;) {
        auto f = LinearizedPoly::random(ctx, rng);
        if (is_invertible(f)) return f;
    }
}

Equivalence random_equivalence(const ContextPtr& ctx, Rng& rng, bool left_monomial) {
    Equivalence eq;
    if (left_monomial) {
        const auto beta = rng.nonzero_element(*ctx);
        eq.h = LinearizedPoly::monomial(ctx, beta, static_cast<std::int64_t>(rng.below(ctx->n())));
    } else {
        eq.h = random_invertible(ctx, rng);
    }
    eq.g = random_invertible(ctx, rng);
    eq.sigma_exp = static_cast<std::int64_t>(rng.below(ctx->total_degree()));
    return eq;
}

RdCode random_code(const ContextPtr& ctx, int k, ScalarMode mode, std::uint64_t seed) {
    Rng rng(seed);
    return random_code(ctx, k, mode, rng);
}

RdCode random_code(const ContextPtr& ctx, int k, ScalarMode mode, Rng& rng) {
    const int n = ctx->n();
    const int cap = mode == ScalarMode::FqnLinearLeft ? n : n * n;
    if (k < 0 || k > cap) throw Error(Errc::BadParams, "code dimension out of range");
    for (;;) {
        if (mode == ScalarMode::FqnLinearLeft) {
            Matrix<Log> m(k, n, kZeroLog);
            for (int r = 0; r < k; ++r)
                for (int j = 0; j < n; ++j) m(r, j) = rng.element(*ctx).log();
            if (static_cast<int>(rank(m, fqn_ops(*ctx))) == k) return RdCode::from_fqn_rows(ctx, std::move(m));
        } else {
            const std::size_t cols = static_cast<std::size_t>(n) * n;
            Matrix<SmallField::Elem> m(k, cols, 0);
            for (int r = 0; r < k; ++r)
                for (std::size_t j = 0; j < cols; ++j) m(r, j) = static_cast<SmallField::Elem>(rng.below(ctx->q()));
            if (static_cast<int>(rank(m, fq_ops(*ctx))) == k) return RdCode::from_fq_rows(ctx, std::move(m));
        }
    }
}

}  // namespace rankmetric
