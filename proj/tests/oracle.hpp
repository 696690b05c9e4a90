#pragma once

// Slow reference computations shared by the unit tests and the acceptance
// binary. Everything here runs on polynomial-basis encodings and plain
// Gaussian elimination, never on the log tables or coordinate maps.

#include <cstdint>
#include <vector>

#include "rankmetric/codes.hpp"

namespace oracle {

using rankmetric::FieldContext;
using rankmetric::FieldElement;
using rankmetric::LinearizedPoly;
using rankmetric::PolyBasisField;

inline std::uint32_t enc(const FieldContext& ctx, FieldElement a) { return ctx.poly_encoding(a); }

inline std::vector<std::uint32_t> encode_coeffs(const LinearizedPoly& f) {
    std::vector<std::uint32_t> out;
    for (const auto& c : f.coeffs()) out.push_back(enc(f.field(), c));
    return out;
}

// f(v) = sum a_i v^{q^i}, on encodings.
inline std::uint32_t eval(const PolyBasisField& pf, int q, const std::vector<std::uint32_t>& a, std::uint32_t v) {
    std::uint32_t acc = 0;
    std::uint32_t vp = v;
    for (std::size_t i = 0; i < a.size(); ++i) {
        acc = pf.add(acc, pf.mul(a[i], vp));
        vp = pf.pow(vp, static_cast<std::uint64_t>(q));
    }
    return acc;
}

// Rank over F_p of a matrix of residues mod p.
inline int rank_mod_p(std::vector<std::vector<int>> m, int p) {
    int r = 0;
    const int rows = static_cast<int>(m.size());
    const int cols = rows == 0 ? 0 : static_cast<int>(m[0].size());
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (m[i][c] % p != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(m[piv], m[r]);
        int inv = 1;
        while ((m[r][c] * inv) % p != 1) ++inv;
        for (auto& x : m[r]) x = (x * inv) % p;
        for (int i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            const int f = m[i][c];
            for (int j = 0; j < cols; ++j) m[i][j] = ((m[i][j] - f * m[r][j]) % p + p) % p;
        }
        ++r;
    }
    return r;
}

// F_q-rank of the map v -> f(v), from the F_p-rank of its matrix in the
// power basis of F_{p^{en}} (the F_p-rank is e times the F_q-rank).
inline int rank(const PolyBasisField& pf, int q, int e, const std::vector<std::uint32_t>& a) {
    const int deg = pf.degree();
    std::vector<std::vector<int>> m;
    std::uint32_t basis = 1;
    for (int j = 0; j < deg; ++j) {
        m.push_back(pf.digits(eval(pf, q, a, basis)));
        basis *= static_cast<std::uint32_t>(pf.p());
    }
    return rank_mod_p(std::move(m), pf.p()) / e;
}

inline int rank(const LinearizedPoly& f) {
    const auto& ctx = f.field();
    return rank(ctx.poly_field(), ctx.q(), ctx.e(), encode_coeffs(f));
}

// Minimum rank over every nonzero codeword, enumerating all F_{q^n}
// combinations of the basis (projectively: first nonzero coefficient 1).
inline int min_rank_fqn(const rankmetric::RdCode& c) {
    const auto& ctx = c.field();
    const auto pf = ctx.poly_field();
    const int n = ctx.n();
    std::vector<std::vector<std::uint32_t>> basis;
    for (const auto& b : c.basis()) basis.push_back(encode_coeffs(b));
    const std::size_t k = basis.size();
    const std::uint32_t order = pf.order();
    int best = n + 1;
    for (std::size_t lead = 0; lead < k; ++lead) {
        std::vector<std::uint32_t> digits(k - lead - 1, 0);
        for (;;) {
            std::vector<std::uint32_t> w = basis[lead];
            for (std::size_t t = 0; t < digits.size(); ++t)
                if (digits[t] != 0)
                    for (int i = 0; i < n; ++i) w[i] = pf.add(w[i], pf.mul(digits[t], basis[lead + 1 + t][i]));
            best = std::min(best, rank(pf, ctx.q(), ctx.e(), w));
            std::size_t t = 0;
            while (t < digits.size() && ++digits[t] == order) digits[t++] = 0;
            if (t == digits.size()) break;
        }
    }
    return best;
}

// Trace from F_{q^n} to F_q on encodings: sum of the q^i-th powers.
inline std::uint32_t trace(const PolyBasisField& pf, int q, int n, std::uint32_t a) {
    std::uint32_t acc = 0, x = a;
    for (int i = 0; i < n; ++i) {
        acc = pf.add(acc, x);
        x = pf.pow(x, static_cast<std::uint64_t>(q));
    }
    return acc;
}

}  // namespace oracle
