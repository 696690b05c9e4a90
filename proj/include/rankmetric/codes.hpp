#pragma once

// Rank-distance codes as subspaces of q-polynomials. A code is either an
// F_q-subspace of F_q^{n^2} (coordinates of the coefficients) or a left
// F_{q^n}-subspace of F_{q^n}^n (the coefficient vectors themselves). Bases
// are kept in reduced row echelon form, so equal subspaces have equal bases.

#include <optional>
#include <vector>

#include "rankmetric/linpoly.hpp"

namespace rankmetric {

enum class ScalarMode { FqLinear, FqnLinearLeft };

const char* scalar_mode_name(ScalarMode m) noexcept;

class RdCode {
public:
    RdCode() = default;

    static RdCode zero(ContextPtr ctx, ScalarMode mode);
    static RdCode full(ContextPtr ctx, ScalarMode mode);

    const ContextPtr& ctx() const noexcept { return ctx_; }
    const FieldContext& field() const noexcept { return *ctx_; }
    int n() const noexcept { return ctx_->n(); }
    ScalarMode scalars() const noexcept { return mode_; }
    bool is_fqn_linear() const noexcept { return mode_ == ScalarMode::FqnLinearLeft; }

    /// F_{q^n}-dimension; throws NotFqnLinear for F_q-linear codes.
    int k_fqn() const;
    int dim_fq() const noexcept { return static_cast<int>(fq_rows_.rows()); }
    /// Dimension over the code's own scalar field.
    int dim() const noexcept { return is_fqn_linear() ? static_cast<int>(fqn_rows_.rows()) : dim_fq(); }
    bool is_zero() const noexcept { return dim_fq() == 0; }

    /// Canonical basis over the code's own scalars.
    std::vector<LinearizedPoly> basis() const;
    /// Canonical F_q-basis (valid for both modes).
    std::vector<LinearizedPoly> fq_basis() const;

    const Matrix<Log>& fqn_matrix() const;
    const std::vector<std::size_t>& fqn_pivots() const noexcept { return fqn_pivots_; }
    const Matrix<SmallField::Elem>& fq_matrix() const noexcept { return fq_rows_; }
    const std::vector<std::size_t>& fq_pivots() const noexcept { return fq_pivots_; }

    friend bool operator==(const RdCode& a, const RdCode& b);

    static RdCode from_fqn_rows(ContextPtr ctx, Matrix<Log> rows);
    static RdCode from_fq_rows(ContextPtr ctx, Matrix<SmallField::Elem> rows);

private:
    ContextPtr ctx_;
    ScalarMode mode_ = ScalarMode::FqLinear;
    Matrix<Log> fqn_rows_;
    std::vector<std::size_t> fqn_pivots_;
    Matrix<SmallField::Elem> fq_rows_;
    std::vector<std::size_t> fq_pivots_;
};

RdCode from_span_fqn(ContextPtr ctx, const std::vector<LinearizedPoly>& gens);
RdCode from_span_fq(ContextPtr ctx, const std::vector<LinearizedPoly>& gens);

bool contains(const RdCode& c, const LinearizedPoly& f);
/// True when c is closed under left multiplication by every scalar of F_{q^n}.
bool is_closed_under_scalars(const RdCode& c);
RdCode as_fq_linear(const RdCode& c);
/// F_{q^n}-linear version of an F_q-linear code, if it is closed under scalars.
std::optional<RdCode> promote(const RdCode& c);
/// promote() when possible, otherwise c unchanged.
RdCode normalize(const RdCode& c);

RdCode intersect(const RdCode& a, const RdCode& b);
RdCode sum(const RdCode& a, const RdCode& b);
/// C^{[s]} = { f^{[s]} : f in C }.
RdCode shift_code(const RdCode& c, std::int64_t s);

/// Orthogonal complement under b(f, g) = Tr(sum f_i g_i). F_{q^n}-linear
/// codes use the plain pairing sum f_i g_i over F_{q^n}.
RdCode delsarte_dual(const RdCode& c);
/// Same subspace computed through the trace Gram matrix over F_q; always
/// returns an F_q-linear code.
RdCode delsarte_dual_by_trace(const RdCode& c);

RdCode adjoint_code(const RdCode& c);

/// { h o f^sigma o g : f in C } with sigma = (a -> a^{p^sigma_exp}) on coefficients.
RdCode apply_equivalence(const RdCode& c, const LinearizedPoly& h, const LinearizedPoly& g, std::int64_t sigma_exp);

struct Equivalence {
    LinearizedPoly h;
    LinearizedPoly g;
    std::int64_t sigma_exp = 0;
};

/// Random invertible q-polynomial (rejection sampling).
LinearizedPoly random_invertible(const ContextPtr& ctx, Rng& rng);
/// Random (h, g, sigma). With left_monomial set, h = beta x^{[t]}, which keeps
/// F_{q^n}-linear codes F_{q^n}-linear.
Equivalence random_equivalence(const ContextPtr& ctx, Rng& rng, bool left_monomial);
RdCode apply_equivalence(const RdCode& c, const Equivalence& eq);

/// Uniformly random subspace of the requested dimension.
RdCode random_code(const ContextPtr& ctx, int k, ScalarMode mode, std::uint64_t seed);
RdCode random_code(const ContextPtr& ctx, int k, ScalarMode mode, Rng& rng);

}  // namespace rankmetric
