#pragma once

// q-polynomials f(x) = sum_{i<n} a_i x^{q^i} over F_{q^n}, stored densely.
// Throughout, x^{[j]} denotes the monomial x^{q^j}.

#include <span>
#include <string>
#include <vector>

#include "rankmetric/gf.hpp"
#include "rankmetric/linalg.hpp"
#include "rankmetric/rng.hpp"

namespace rankmetric {

class LinearizedPoly {
public:
    LinearizedPoly() = default;
    /// The zero polynomial.
    explicit LinearizedPoly(ContextPtr ctx);
    LinearizedPoly(ContextPtr ctx, std::vector<FieldElement> coeffs);

    static LinearizedPoly zero(ContextPtr ctx) { return LinearizedPoly(std::move(ctx)); }
    static LinearizedPoly identity(ContextPtr ctx);
    /// a * x^{[i]}, i reduced mod n.
    static LinearizedPoly monomial(ContextPtr ctx, FieldElement a, std::int64_t i);
    static LinearizedPoly random(ContextPtr ctx, Rng& rng);

    const ContextPtr& ctx() const noexcept { return ctx_; }
    const FieldContext& field() const noexcept { return *ctx_; }
    int n() const noexcept { return static_cast<int>(coeffs_.size()); }
    const std::vector<FieldElement>& coeffs() const noexcept { return coeffs_; }
    FieldElement coeff(int i) const { return coeffs_.at(i); }
    bool is_zero() const noexcept;

    LinearizedPoly operator+(const LinearizedPoly& o) const;
    LinearizedPoly operator-(const LinearizedPoly& o) const;
    LinearizedPoly operator-() const;

    friend bool operator==(const LinearizedPoly& a, const LinearizedPoly& b) noexcept {
        return a.coeffs_ == b.coeffs_;
    }

    /// Human-readable form such as "x + g^3*x^[2]".
    std::string to_string() const;

private:
    void check_same(const LinearizedPoly& o) const;

    ContextPtr ctx_;
    std::vector<FieldElement> coeffs_;
};

/// a * f (left multiplication by the scalar map ax).
LinearizedPoly scale(FieldElement a, const LinearizedPoly& f);

FieldElement evaluate(const LinearizedPoly& f, FieldElement x);

/// f o g.
LinearizedPoly compose(const LinearizedPoly& f, const LinearizedPoly& g);

/// f^{[s]} = f(x)^{q^s} mod x^{q^n} - x, i.e. x^{[s]} o f. Coefficients
/// b_i = a_{i-s}^{q^s}; evaluates to f(v)^{q^s}.
LinearizedPoly frobenius_shift(const LinearizedPoly& f, std::int64_t s);

/// Adjoint with respect to the trace form: Tr(y f(x)) = Tr(x fhat(y)).
LinearizedPoly adjoint(const LinearizedPoly& f);

/// Coefficient-wise field automorphism a -> a^{p^j}.
LinearizedPoly apply_automorphism(const LinearizedPoly& f, std::int64_t sigma_exp);

/// n x n matrix over F_q; column j holds the coordinates of f(fq_basis[j]).
Matrix<SmallField::Elem> matrix_of(const LinearizedPoly& f);
int rank(const LinearizedPoly& f);
int kernel_dim(const LinearizedPoly& f);
bool is_invertible(const LinearizedPoly& f);
LinearizedPoly inverse(const LinearizedPoly& f);

/// b(f, g) = Tr(sum f_i g_i), an element of F_q.
FieldElement bilinear_b(const LinearizedPoly& f, const LinearizedPoly& g);

/// The unique q-polynomial with f(points[j]) = values[j], where points is an
/// F_q-basis of F_{q^n}.
LinearizedPoly interpolate(ContextPtr ctx, std::span<const FieldElement> points,
                           std::span<const FieldElement> values);

/// Coordinates of f as a vector in F_q^{n^2}: entry i*n + t is the t-th
/// F_q-coordinate of a_i.
std::vector<SmallField::Elem> fq_coordinates(const LinearizedPoly& f);
LinearizedPoly from_fq_coordinates(ContextPtr ctx, std::span<const SmallField::Elem> c);

/// Coefficients as raw logarithms.
std::vector<Log> coeff_logs(const LinearizedPoly& f);
LinearizedPoly from_logs(ContextPtr ctx, std::span<const Log> logs);

}  // namespace rankmetric
