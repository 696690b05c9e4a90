#pragma once

// Finite-field tower F_p <= F_q = F_{p^e} <= F_{q^n}.
//
// Elements of F_{q^n} are stored as discrete logarithms with respect to a
// fixed primitive element g; addition goes through a Zech table. The subfield
// F_q lives inside F_{q^n} as the fixed field of a -> a^q and additionally
// gets a dense index 0..q-1 (see SmallField) for cheap linear algebra.

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rankmetric/error.hpp"

namespace rankmetric {

using Log = std::uint32_t;
inline constexpr Log kZeroLog = 0xFFFFFFFFu;
inline constexpr std::uint64_t kDefaultTableCap = std::uint64_t{1} << 24;

class FieldContext;

class FieldElement {
public:
    constexpr FieldElement() = default;

    constexpr Log log() const noexcept { return log_; }
    constexpr std::uint32_t ctx_id() const noexcept { return ctx_; }
    constexpr bool is_zero() const noexcept { return log_ == kZeroLog; }

    friend constexpr bool operator==(FieldElement, FieldElement) = default;
    friend constexpr auto operator<=>(FieldElement, FieldElement) = default;

private:
    friend class FieldContext;
    constexpr FieldElement(Log l, std::uint32_t ctx) : log_(l), ctx_(ctx) {}

    Log log_ = kZeroLog;
    std::uint32_t ctx_ = 0;
};

/// Arithmetic of F_q on dense indices. Index 0 is zero and index 1 is one;
/// the remaining indices follow the base-p encoding order of the elements.
class SmallField {
public:
    using Elem = std::uint8_t;

    SmallField() = default;
    SmallField(int q, std::vector<Elem> add, std::vector<Elem> mul);

    int size() const noexcept { return q_; }
    Elem add(Elem a, Elem b) const noexcept { return add_[a * q_ + b]; }
    Elem sub(Elem a, Elem b) const noexcept { return add_[a * q_ + neg_[b]]; }
    Elem mul(Elem a, Elem b) const noexcept { return mul_[a * q_ + b]; }
    Elem neg(Elem a) const noexcept { return neg_[a]; }
    Elem inv(Elem a) const;

private:
    int q_ = 0;
    std::vector<Elem> add_, mul_, neg_, inv_;
};

/// Plain polynomial-basis arithmetic on base-p encodings (value = sum c_j p^j).
/// Used to build the log tables and kept around as an independent oracle.
class PolyBasisField {
public:
    PolyBasisField(int p, std::vector<int> modulus);

    int p() const noexcept { return p_; }
    int degree() const noexcept { return deg_; }
    std::uint32_t order() const noexcept { return order_; }

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t neg(std::uint32_t a) const;
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;

    std::vector<int> digits(std::uint32_t a) const;
    std::uint32_t encode(std::span<const int> digits) const;

private:
    int p_;
    int deg_;
    std::uint32_t order_;
    std::vector<int> modulus_;
};

class FieldContext {
public:
    /// Shared, immutable context for (p, e, n). Contexts are cached, so two
    /// calls with the same parameters return the same object.
    static std::shared_ptr<const FieldContext> get(int p, int e, int n, std::uint64_t cap = kDefaultTableCap);

    FieldContext(const FieldContext&) = delete;
    FieldContext& operator=(const FieldContext&) = delete;

    std::uint32_t id() const noexcept { return id_; }
    int p() const noexcept { return p_; }
    int e() const noexcept { return e_; }
    int n() const noexcept { return n_; }
    int q() const noexcept { return q_; }
    int total_degree() const noexcept { return e_ * n_; }
    std::uint32_t order() const noexcept { return order_; }
    std::uint32_t group_order() const noexcept { return order_ - 1; }
    const std::vector<int>& modulus() const noexcept { return modulus_; }

    FieldElement zero() const noexcept { return {kZeroLog, id_}; }
    FieldElement one() const noexcept { return {0, id_}; }
    FieldElement generator() const noexcept { return {group_order() == 1 ? 0u : 1u, id_}; }
    FieldElement gen_power(std::int64_t i) const;
    FieldElement from_log(Log l) const;

    void check(FieldElement a) const;

    FieldElement add(FieldElement a, FieldElement b) const;
    FieldElement sub(FieldElement a, FieldElement b) const;
    FieldElement neg(FieldElement a) const;
    FieldElement mul(FieldElement a, FieldElement b) const;
    FieldElement inv(FieldElement a) const;
    FieldElement div(FieldElement a, FieldElement b) const;
    FieldElement pow(FieldElement a, std::int64_t e) const;

    /// a^{q^j}, with j reduced modulo n.
    FieldElement frobenius(FieldElement a, std::int64_t j) const;
    /// a^{p^j}, with j reduced modulo e*n.
    FieldElement frobenius_p(FieldElement a, std::int64_t j) const;

    FieldElement rel_trace(FieldElement a) const;
    FieldElement rel_norm(FieldElement a) const;
    bool is_in_subfield(FieldElement a) const;

    const std::vector<FieldElement>& fq_elements() const noexcept { return fq_elements_; }
    const std::vector<FieldElement>& fq_basis() const noexcept { return fq_basis_; }
    const std::vector<FieldElement>& fq_dual_basis() const noexcept { return fq_dual_basis_; }
    const SmallField& subfield() const noexcept { return subfield_; }

    SmallField::Elem subfield_index(FieldElement a) const;
    FieldElement from_subfield(SmallField::Elem c) const;

    std::vector<SmallField::Elem> fq_coordinates(FieldElement a) const;
    /// Coordinates through the trace-dual basis, never through the table.
    std::vector<SmallField::Elem> fq_coordinates_by_trace(FieldElement a) const;
    FieldElement from_fq_coordinates(std::span<const SmallField::Elem> c) const;

    std::uint32_t poly_encoding(FieldElement a) const;
    FieldElement from_poly_encoding(std::uint32_t v) const;
    std::string to_digits(FieldElement a) const;
    FieldElement from_digits(std::string_view s) const;
    /// Accepts "g^i" (any integer i), "0", or a digit string.
    FieldElement parse(std::string_view s) const;

    PolyBasisField poly_field() const { return PolyBasisField(p_, modulus_); }

    // Unchecked kernels on raw logarithms for the enumeration loops.
    Log add_log(Log a, Log b) const noexcept {
        if (a == kZeroLog) return b;
        if (b == kZeroLog) return a;
        const Log m = order_ - 1;
        Log d = b >= a ? b - a : b + m - a;
        Log z = zech_[d];
        if (z == kZeroLog) return kZeroLog;
        Log s = a + z;
        return s >= m ? s - m : s;
    }
    Log mul_log(Log a, Log b) const noexcept {
        if (a == kZeroLog || b == kZeroLog) return kZeroLog;
        const Log m = order_ - 1;
        Log s = a + b;
        return s >= m ? s - m : s;
    }
    Log neg_log(Log a) const noexcept {
        if (a == kZeroLog || p_ == 2) return a;
        const Log m = order_ - 1;
        Log s = a + m / 2;
        return s >= m ? s - m : s;
    }
    Log frob_log(Log a, int j) const noexcept {
        if (a == kZeroLog) return a;
        return static_cast<Log>((static_cast<std::uint64_t>(a) * qpow_[j]) % (order_ - 1));
    }
    /// Writes the n F_q-coordinates of the element with log a into out.
    void fq_coordinates_log(Log a, SmallField::Elem* out) const;
    SmallField::Elem subfield_index_log(Log a) const noexcept {
        return a == kZeroLog ? 0 : sub_index_[a / sub_step_];
    }
    Log subfield_log(SmallField::Elem c) const noexcept { return fq_elements_[c].log(); }

private:
    FieldContext(int p, int e, int n, std::uint32_t id);
    void build();
    void build_subfield();
    void build_basis();
    int reduce_q_exponent(std::int64_t j) const noexcept;

    std::uint32_t id_;
    int p_, e_, n_, q_;
    std::uint32_t order_;
    std::vector<int> modulus_;
    std::uint32_t generator_encoding_ = 0;

    std::vector<Log> zech_;
    std::vector<std::uint32_t> poly_of_log_;
    std::vector<Log> log_of_poly_;
    std::vector<std::uint64_t> qpow_;  // q^j mod (order-1), j = 0..n-1
    std::vector<std::uint64_t> ppow_;  // p^j mod (order-1), j = 0..e*n-1

    std::uint32_t sub_step_ = 1;
    std::vector<SmallField::Elem> sub_index_;
    std::vector<FieldElement> fq_elements_;
    SmallField subfield_;

    std::vector<FieldElement> fq_basis_;
    std::vector<FieldElement> fq_dual_basis_;
    std::vector<SmallField::Elem> coord_table_;  // empty when the field is too large
};

using ContextPtr = std::shared_ptr<const FieldContext>;

bool is_prime(std::uint64_t v) noexcept;
std::vector<std::uint64_t> prime_factors(std::uint64_t v);

}  // namespace rankmetric
