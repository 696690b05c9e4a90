#include "rankmetric/linpoly.hpp"

#include <sstream>

namespace rankmetric {

namespace {

int mod_n(std::int64_t j, int n) {
    std::int64_t r = j % n;
    return static_cast<int>(r < 0 ? r + n : r);
}

}  // namespace

LinearizedPoly::LinearizedPoly(ContextPtr ctx) : ctx_(std::move(ctx)), coeffs_(ctx_->n(), ctx_->zero()) {}

LinearizedPoly::LinearizedPoly(ContextPtr ctx, std::vector<FieldElement> coeffs)
    : ctx_(std::move(ctx)), coeffs_(std::move(coeffs)) {
    if (static_cast<int>(coeffs_.size()) != ctx_->n())
        throw Error(Errc::BadParams, "q-polynomial needs exactly n coefficients");
    for (auto c : coeffs_) ctx_->check(c);
}

LinearizedPoly LinearizedPoly::identity(ContextPtr ctx) { return monomial(ctx, ctx->one(), 0); }

LinearizedPoly LinearizedPoly::monomial(ContextPtr ctx, FieldElement a, std::int64_t i) {
    LinearizedPoly f(ctx);
    ctx->check(a);
    f.coeffs_[mod_n(i, ctx->n())] = a;
    return f;
}

LinearizedPoly LinearizedPoly::random(ContextPtr ctx, Rng& rng) {
    std::vector<FieldElement> c(ctx->n());
    for (auto& a : c) a = rng.element(*ctx);
    return LinearizedPoly(std::move(ctx), std::move(c));
}

bool LinearizedPoly::is_zero() const noexcept {
    for (auto c : coeffs_)
        if (!c.is_zero()) return false;
    return true;
}

void LinearizedPoly::check_same(const LinearizedPoly& o) const {
    if (!ctx_ || !o.ctx_ || ctx_->id() != o.ctx_->id())
        throw Error(Errc::ContextMismatch, "q-polynomials from different contexts");
}

LinearizedPoly LinearizedPoly::operator+(const LinearizedPoly& o) const {
    check_same(o);
    LinearizedPoly r(ctx_);
    for (int i = 0; i < n(); ++i) r.coeffs_[i] = ctx_->add(coeffs_[i], o.coeffs_[i]);
    return r;
}

LinearizedPoly LinearizedPoly::operator-(const LinearizedPoly& o) const {
    check_same(o);
    LinearizedPoly r(ctx_);
    for (int i = 0; i < n(); ++i) r.coeffs_[i] = ctx_->sub(coeffs_[i], o.coeffs_[i]);
    return r;
}

LinearizedPoly LinearizedPoly::operator-() const {
    LinearizedPoly r(ctx_);
    for (int i = 0; i < n(); ++i) r.coeffs_[i] = ctx_->neg(coeffs_[i]);
    return r;
}

std::string LinearizedPoly::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i < n(); ++i) {
        const auto c = coeffs_[i];
        if (c.is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        if (c.log() != 0) os << "g^" << c.log() << "*";
        if (i == 0) os << "x";
        else os << "x^[" << i << "]";
    }
    if (first) os << "0";
    return os.str();
}

LinearizedPoly scale(FieldElement a, const LinearizedPoly& f) {
    const auto& ctx = f.field();
    std::vector<FieldElement> c(f.n());
    for (int i = 0; i < f.n(); ++i) c[i] = ctx.mul(a, f.coeff(i));
    return LinearizedPoly(f.ctx(), std::move(c));
}

FieldElement evaluate(const LinearizedPoly& f, FieldElement x) {
    const auto& ctx = f.field();
    ctx.check(x);
    Log acc = kZeroLog;
    for (int i = 0; i < f.n(); ++i) acc = ctx.add_log(acc, ctx.mul_log(f.coeff(i).log(), ctx.frob_log(x.log(), i)));
    return ctx.from_log(acc);
}

LinearizedPoly compose(const LinearizedPoly& f, const LinearizedPoly& g) {
    if (f.field().id() != g.field().id()) throw Error(Errc::ContextMismatch, "compose across contexts");
    const auto& ctx = f.field();
    const int n = f.n();
    std::vector<Log> h(n, kZeroLog);
    for (int i = 0; i < n; ++i) {
        const Log fi = f.coeff(i).log();
        if (fi == kZeroLog) continue;
        for (int j = 0; j < n; ++j) {
            const Log gj = g.coeff(j).log();
            if (gj == kZeroLog) continue;
            const int k = (i + j) % n;
            h[k] = ctx.add_log(h[k], ctx.mul_log(fi, ctx.frob_log(gj, i)));
        }
    }
    return from_logs(f.ctx(), h);
}

LinearizedPoly frobenius_shift(const LinearizedPoly& f, std::int64_t s) {
    const auto& ctx = f.field();
    const int n = f.n();
    const int t = mod_n(s, n);
    std::vector<FieldElement> b(n);
    for (int i = 0; i < n; ++i) b[i] = ctx.frobenius(f.coeff(mod_n(i - t, n)), t);
    return LinearizedPoly(f.ctx(), std::move(b));
}

LinearizedPoly adjoint(const LinearizedPoly& f) {
    const auto& ctx = f.field();
    const int n = f.n();
    std::vector<FieldElement> b(n);
    for (int j = 0; j < n; ++j) b[j] = ctx.frobenius(f.coeff(mod_n(n - j, n)), j);
    return LinearizedPoly(f.ctx(), std::move(b));
}

LinearizedPoly apply_automorphism(const LinearizedPoly& f, std::int64_t sigma_exp) {
    const auto& ctx = f.field();
    std::vector<FieldElement> b(f.n());
    for (int i = 0; i < f.n(); ++i) b[i] = ctx.frobenius_p(f.coeff(i), sigma_exp);
    return LinearizedPoly(f.ctx(), std::move(b));
}

Matrix<SmallField::Elem> matrix_of(const LinearizedPoly& f) {
    const auto& ctx = f.field();
    const int n = f.n();
    Matrix<SmallField::Elem> m(n, n, 0);
    std::vector<SmallField::Elem> col(n);
    for (int j = 0; j < n; ++j) {
        ctx.fq_coordinates_log(evaluate(f, ctx.fq_basis()[j]).log(), col.data());
        for (int i = 0; i < n; ++i) m(i, j) = col[i];
    }
    return m;
}

int rank(const LinearizedPoly& f) { return static_cast<int>(rank(matrix_of(f), fq_ops(f.field()))); }

int kernel_dim(const LinearizedPoly& f) { return f.n() - rank(f); }

bool is_invertible(const LinearizedPoly& f) { return rank(f) == f.n(); }

LinearizedPoly inverse(const LinearizedPoly& f) {
    const auto& ctx = f.field();
    if (!is_invertible(f)) throw Error(Errc::NotInvertible, "q-polynomial is not invertible");
    std::vector<FieldElement> images(f.n());
    for (int j = 0; j < f.n(); ++j) images[j] = evaluate(f, ctx.fq_basis()[j]);
    return interpolate(f.ctx(), images, ctx.fq_basis());
}

FieldElement bilinear_b(const LinearizedPoly& f, const LinearizedPoly& g) {
    if (f.field().id() != g.field().id()) throw Error(Errc::ContextMismatch, "bilinear form across contexts");
    const auto& ctx = f.field();
    FieldElement acc = ctx.zero();
    for (int i = 0; i < f.n(); ++i) acc = ctx.add(acc, ctx.mul(f.coeff(i), g.coeff(i)));
    return ctx.rel_trace(acc);
}

LinearizedPoly interpolate(ContextPtr ctx, std::span<const FieldElement> points, std::span<const FieldElement> values) {
    const int n = ctx->n();
    if (static_cast<int>(points.size()) != n || static_cast<int>(values.size()) != n)
        throw Error(Errc::BadParams, "interpolation needs n points and n values");
    // Moore system: sum_i c_i points[j]^{q^i} = values[j].
    const FqnOps ops{ctx.get()};
    Matrix<Log> m(n, n + 1, kZeroLog);
    for (int j = 0; j < n; ++j) {
        ctx->check(points[j]);
        ctx->check(values[j]);
        for (int i = 0; i < n; ++i) m(j, i) = ctx->frob_log(points[j].log(), i);
        m(j, n) = values[j].log();
    }
    const auto pivots = rref(m, ops);
    if (static_cast<int>(pivots.size()) != n || pivots.back() != static_cast<std::size_t>(n - 1))
        throw Error(Errc::BadParams, "interpolation points are not F_q-independent");
    std::vector<Log> c(n);
    for (int i = 0; i < n; ++i) c[i] = m(i, n);
    return from_logs(std::move(ctx), c);
}

std::vector<SmallField::Elem> fq_coordinates(const LinearizedPoly& f) {
    const auto& ctx = f.field();
    const int n = f.n();
    std::vector<SmallField::Elem> out(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) ctx.fq_coordinates_log(f.coeff(i).log(), out.data() + static_cast<std::size_t>(i) * n);
    return out;
}

LinearizedPoly from_fq_coordinates(ContextPtr ctx, std::span<const SmallField::Elem> c) {
    const int n = ctx->n();
    if (static_cast<int>(c.size()) != n * n) throw Error(Errc::BadParams, "coordinate vector must have length n^2");
    std::vector<FieldElement> a(n);
    for (int i = 0; i < n; ++i) a[i] = ctx->from_fq_coordinates(c.subspan(static_cast<std::size_t>(i) * n, n));
    return LinearizedPoly(std::move(ctx), std::move(a));
}

std::vector<Log> coeff_logs(const LinearizedPoly& f) {
    std::vector<Log> out(f.n());
    for (int i = 0; i < f.n(); ++i) out[i] = f.coeff(i).log();
    return out;
}

LinearizedPoly from_logs(ContextPtr ctx, std::span<const Log> logs) {
    std::vector<FieldElement> a(logs.size());
    for (std::size_t i = 0; i < logs.size(); ++i) a[i] = ctx->from_log(logs[i]);
    return LinearizedPoly(std::move(ctx), std::move(a));
}

}  // namespace rankmetric
