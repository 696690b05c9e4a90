#pragma once

// Dense Gauss-Jordan elimination over F_q (dense indices) and over F_{q^n}
// (logarithms). Both fields plug in through a small "ops" policy.

#include <algorithm>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "rankmetric/gf.hpp"

namespace rankmetric {

template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, T fill) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return rows_ == 0; }

    T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<T> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const T> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    void append_row(std::span<const T> values) {
        data_.insert(data_.end(), values.begin(), values.end());
        ++rows_;
    }
    void truncate_rows(std::size_t r) {
        rows_ = std::min(rows_, r);
        data_.resize(rows_ * cols_);
    }
    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        std::swap_ranges(data_.begin() + a * cols_, data_.begin() + (a + 1) * cols_, data_.begin() + b * cols_);
    }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

struct FqOps {
    using Elem = SmallField::Elem;
    const SmallField* f;

    Elem zero() const noexcept { return 0; }
    Elem one() const noexcept { return 1; }
    bool is_zero(Elem a) const noexcept { return a == 0; }
    Elem add(Elem a, Elem b) const noexcept { return f->add(a, b); }
    Elem sub(Elem a, Elem b) const noexcept { return f->sub(a, b); }
    Elem mul(Elem a, Elem b) const noexcept { return f->mul(a, b); }
    Elem neg(Elem a) const noexcept { return f->neg(a); }
    Elem inv(Elem a) const { return f->inv(a); }
};

struct FqnOps {
    using Elem = Log;
    const FieldContext* ctx;

    Elem zero() const noexcept { return kZeroLog; }
    Elem one() const noexcept { return 0; }
    bool is_zero(Elem a) const noexcept { return a == kZeroLog; }
    Elem add(Elem a, Elem b) const noexcept { return ctx->add_log(a, b); }
    Elem sub(Elem a, Elem b) const noexcept { return ctx->add_log(a, ctx->neg_log(b)); }
    Elem mul(Elem a, Elem b) const noexcept { return ctx->mul_log(a, b); }
    Elem neg(Elem a) const noexcept { return ctx->neg_log(a); }
    Elem inv(Elem a) const {
        if (a == kZeroLog) throw Error(Errc::DivisionByZero, "inverse of zero");
        return a == 0 ? 0 : ctx->group_order() - a;
    }
};

inline FqOps fq_ops(const FieldContext& ctx) { return FqOps{&ctx.subfield()}; }
inline FqnOps fqn_ops(const FieldContext& ctx) { return FqnOps{&ctx}; }

/// Reduced row echelon form in place: leading entries are one, pivots are the
/// leftmost nonzero columns, zero rows are dropped. Returns pivot columns.
template <class Ops>
std::vector<std::size_t> rref(Matrix<typename Ops::Elem>& m, const Ops& ops) {
    using E = typename Ops::Elem;
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t piv = r;
        while (piv < m.rows() && ops.is_zero(m(piv, c))) ++piv;
        if (piv == m.rows()) continue;
        m.swap_rows(piv, r);
        const E lead_inv = ops.inv(m(r, c));
        if (lead_inv != ops.one())
            for (std::size_t j = c; j < m.cols(); ++j) m(r, j) = ops.mul(m(r, j), lead_inv);
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r) continue;
            const E factor = m(i, c);
            if (ops.is_zero(factor)) continue;
            for (std::size_t j = c; j < m.cols(); ++j) {
                if (!ops.is_zero(m(r, j))) m(i, j) = ops.sub(m(i, j), ops.mul(factor, m(r, j)));
            }
        }
        pivots.push_back(c);
        ++r;
    }
    m.truncate_rows(r);
    return pivots;
}

template <class Ops>
std::size_t rank(Matrix<typename Ops::Elem> m, const Ops& ops) {
    return rref(m, ops).size();
}

/// Basis (rows, in rref) of { x : m x = 0 }.
template <class Ops>
Matrix<typename Ops::Elem> null_space(Matrix<typename Ops::Elem> m, const Ops& ops) {
    using E = typename Ops::Elem;
    const std::size_t cols = m.cols();
    const auto pivots = rref(m, ops);
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivots) is_pivot[c] = true;
    Matrix<E> out(0, cols, ops.zero());
    std::vector<E> v(cols);
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        std::fill(v.begin(), v.end(), ops.zero());
        v[f] = ops.one();
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = ops.neg(m(r, f));
        out.append_row(v);
    }
    rref(out, ops);
    return out;
}

/// Reduces v against an rref basis; the result is zero iff v lies in the row space.
template <class Ops>
void reduce_against(std::span<typename Ops::Elem> v, const Matrix<typename Ops::Elem>& basis,
                    const std::vector<std::size_t>& pivots, const Ops& ops) {
    for (std::size_t r = 0; r < pivots.size(); ++r) {
        const auto factor = v[pivots[r]];
        if (ops.is_zero(factor)) continue;
        for (std::size_t j = pivots[r]; j < v.size(); ++j)
            if (!ops.is_zero(basis(r, j))) v[j] = ops.sub(v[j], ops.mul(factor, basis(r, j)));
    }
}

/// Inverse of a square matrix; throws NotInvertible when singular.
template <class Ops>
Matrix<typename Ops::Elem> inverse(const Matrix<typename Ops::Elem>& m, const Ops& ops) {
    using E = typename Ops::Elem;
    const std::size_t n = m.rows();
    if (n == 0) return m;
    Matrix<E> aug(n, 2 * n, ops.zero());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = ops.one();
    }
    const auto pivots = rref(aug, ops);
    if (pivots.size() < n || pivots[n - 1] != n - 1) throw Error(Errc::NotInvertible, "singular matrix");
    Matrix<E> out(n, n, ops.zero());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out(i, j) = aug(i, n + j);
    return out;
}

template <class Ops>
Matrix<typename Ops::Elem> multiply(const Matrix<typename Ops::Elem>& a, const Matrix<typename Ops::Elem>& b,
                                    const Ops& ops) {
    Matrix<typename Ops::Elem> out(a.rows(), b.cols(), ops.zero());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t l = 0; l < a.cols(); ++l) {
            const auto x = a(i, l);
            if (ops.is_zero(x)) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) = ops.add(out(i, j), ops.mul(x, b(l, j)));
        }
    return out;
}

}  // namespace rankmetric
