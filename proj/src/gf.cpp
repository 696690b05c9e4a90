#include "rankmetric/gf.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstring>
#include <map>
#include <mutex>
#include <numeric>
#include <tuple>

#include "rankmetric/linalg.hpp"

namespace rankmetric {

bool is_prime(std::uint64_t v) noexcept {
    if (v < 2) return false;
    for (std::uint64_t d = 2; d * d <= v; ++d)
        if (v % d == 0) return false;
    return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t v) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= v; ++d) {
        if (v % d != 0) continue;
        out.push_back(d);
        while (v % d == 0) v /= d;
    }
    if (v > 1) out.push_back(v);
    return out;
}

namespace {

// Polynomials over F_p, low degree first, no trailing zeros.
using Poly = std::vector<int>;

int mod_p(long long v, int p) {
    v %= p;
    return static_cast<int>(v < 0 ? v + p : v);
}

int inv_mod(int a, int p) {
    long long r = 1, b = a, e = p - 2;
    while (e > 0) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return static_cast<int>(r);
}

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mod(Poly a, const Poly& f, int p) {
    trim(a);
    const int df = static_cast<int>(f.size()) - 1;
    const int lead_inv = inv_mod(f.back(), p);
    while (static_cast<int>(a.size()) - 1 >= df) {
        const int c = static_cast<int>(static_cast<long long>(a.back()) * lead_inv % p);
        const std::size_t shift = a.size() - 1 - df;
        for (int j = 0; j <= df; ++j) a[shift + j] = mod_p(a[shift + j] - static_cast<long long>(c) * f[j], p);
        trim(a);
    }
    return a;
}

Poly poly_mul(const Poly& a, const Poly& b, int p) {
    if (a.empty() || b.empty()) return {};
    Poly out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = (out[i + j] + a[i] * b[j]) % p;
    trim(out);
    return out;
}

Poly poly_sub(Poly a, const Poly& b, int p) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = mod_p(a[i] - b[i], p);
    trim(a);
    return a;
}

Poly poly_gcd(Poly a, Poly b, int p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = poly_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

Poly poly_powmod(Poly base, std::uint64_t e, const Poly& f, int p) {
    Poly r{1};
    base = poly_mod(base, f, p);
    while (e > 0) {
        if (e & 1) r = poly_mod(poly_mul(r, base, p), f, p);
        base = poly_mod(poly_mul(base, base, p), f, p);
        e >>= 1;
    }
    return r;
}

// Ben-Or: f of degree D is irreducible iff gcd(f, x^{p^i} - x) = 1 for i <= D/2.
bool is_irreducible(const Poly& f, int p) {
    const int deg = static_cast<int>(f.size()) - 1;
    if (deg <= 1) return true;
    const Poly x{0, 1};
    Poly h = x;
    for (int i = 1; i <= deg / 2; ++i) {
        h = poly_powmod(h, static_cast<std::uint64_t>(p), f, p);
        Poly g = poly_gcd(f, poly_sub(h, x, p), p);
        if (g.size() > 1) return false;
    }
    return true;
}

std::vector<int> smallest_irreducible(int p, int degree) {
    std::uint64_t count = 1;
    for (int i = 0; i < degree; ++i) count *= static_cast<std::uint64_t>(p);
    Poly f(degree + 1, 0);
    f[degree] = 1;
    // Enumerate (c_0, ..., c_{D-1}) lexicographically with c_0 most significant.
    for (std::uint64_t t = 0; t < count; ++t) {
        std::uint64_t v = t;
        for (int j = degree - 1; j >= 0; --j) {
            f[j] = static_cast<int>(v % p);
            v /= p;
        }
        if (degree >= 2 && f[0] == 0) continue;
        if (is_irreducible(f, p)) return f;
    }
    throw Error(Errc::NotFound, "no irreducible polynomial found");
}

std::atomic<std::uint32_t> next_context_id{1};

}  // namespace

// ---------------------------------------------------------------------------

PolyBasisField::PolyBasisField(int p, std::vector<int> modulus)
    : p_(p), deg_(static_cast<int>(modulus.size()) - 1), order_(1), modulus_(std::move(modulus)) {
    for (int i = 0; i < deg_; ++i) order_ *= static_cast<std::uint32_t>(p_);
}

std::vector<int> PolyBasisField::digits(std::uint32_t a) const {
    std::vector<int> d(deg_, 0);
    for (int i = 0; i < deg_; ++i) {
        d[i] = static_cast<int>(a % p_);
        a /= p_;
    }
    return d;
}

std::uint32_t PolyBasisField::encode(std::span<const int> digits) const {
    std::uint32_t v = 0;
    for (int i = static_cast<int>(digits.size()) - 1; i >= 0; --i) v = v * p_ + static_cast<std::uint32_t>(digits[i]);
    return v;
}

std::uint32_t PolyBasisField::add(std::uint32_t a, std::uint32_t b) const {
    if (p_ == 2) return a ^ b;
    std::uint32_t out = 0, scale = 1;
    for (int i = 0; i < deg_; ++i) {
        out += static_cast<std::uint32_t>((a % p_ + b % p_) % p_) * scale;
        a /= p_;
        b /= p_;
        scale *= p_;
    }
    return out;
}

std::uint32_t PolyBasisField::neg(std::uint32_t a) const {
    if (p_ == 2) return a;
    std::uint32_t out = 0, scale = 1;
    for (int i = 0; i < deg_; ++i) {
        out += static_cast<std::uint32_t>((p_ - a % p_) % p_) * scale;
        a /= p_;
        scale *= p_;
    }
    return out;
}

std::uint32_t PolyBasisField::mul(std::uint32_t a, std::uint32_t b) const {
    const auto da = digits(a), db = digits(b);
    Poly prod(2 * deg_ + 1, 0);
    for (int i = 0; i < deg_; ++i) {
        if (da[i] == 0) continue;
        for (int j = 0; j < deg_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
    }
    // The modulus is monic, so reduce top-down.
    for (int t = 2 * deg_ - 2; t >= deg_; --t) {
        const int c = prod[t];
        if (c == 0) continue;
        for (int j = 0; j <= deg_; ++j) prod[t - deg_ + j] = mod_p(prod[t - deg_ + j] - c * modulus_[j], p_);
    }
    prod.resize(deg_);
    return encode(prod);
}

std::uint32_t PolyBasisField::pow(std::uint32_t a, std::uint64_t e) const {
    std::uint32_t r = 1;
    while (e > 0) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

// ---------------------------------------------------------------------------

SmallField::SmallField(int q, std::vector<Elem> add, std::vector<Elem> mul)
    : q_(q), add_(std::move(add)), mul_(std::move(mul)), neg_(q, 0), inv_(q, 0) {
    for (int a = 0; a < q_; ++a)
        for (int b = 0; b < q_; ++b) {
            if (add_[a * q_ + b] == 0) neg_[a] = static_cast<Elem>(b);
            if (mul_[a * q_ + b] == 1) inv_[a] = static_cast<Elem>(b);
        }
}

SmallField::Elem SmallField::inv(Elem a) const {
    if (a == 0) throw Error(Errc::DivisionByZero, "inverse of zero in F_q");
    return inv_[a];
}

// ---------------------------------------------------------------------------

std::shared_ptr<const FieldContext> FieldContext::get(int p, int e, int n, std::uint64_t cap) {
    if (p < 2 || !is_prime(static_cast<std::uint64_t>(p))) throw Error(Errc::NonPrime, std::to_string(p));
    if (e < 1 || n < 1) throw Error(Errc::BadParams, "e and n must be positive");
    std::uint64_t size = 1;
    for (int i = 0; i < e * n; ++i) {
        size *= static_cast<std::uint64_t>(p);
        if (size > cap || size > (std::uint64_t{1} << 31))
            throw Error(Errc::TableCapExceeded, "p^(e*n) exceeds the table cap");
    }
    std::uint64_t q = 1;
    for (int i = 0; i < e; ++i) q *= static_cast<std::uint64_t>(p);
    if (q > 256) throw Error(Errc::BadParams, "subfield F_q larger than 256 is not supported");

    static std::mutex mu;
    static std::map<std::tuple<int, int, int>, std::shared_ptr<const FieldContext>> cache;
    std::lock_guard lock(mu);
    auto key = std::make_tuple(p, e, n);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    std::shared_ptr<FieldContext> ctx(new FieldContext(p, e, n, next_context_id++));
    ctx->build();
    cache.emplace(key, ctx);
    return ctx;
}

FieldContext::FieldContext(int p, int e, int n, std::uint32_t id) : id_(id), p_(p), e_(e), n_(n), q_(1), order_(1) {
    for (int i = 0; i < e_; ++i) q_ *= p_;
    for (int i = 0; i < e_ * n_; ++i) order_ *= static_cast<std::uint32_t>(p_);
}

void FieldContext::build() {
    const int degree = e_ * n_;
    modulus_ = smallest_irreducible(p_, degree);
    const PolyBasisField pf(p_, modulus_);
    const std::uint32_t m = order_ - 1;

    // Smallest primitive element in base-p encoding order.
    const auto factors = prime_factors(m);
    for (std::uint32_t cand = 1; cand < order_; ++cand) {
        bool primitive = true;
        for (auto r : factors)
            if (pf.pow(cand, m / r) == 1) {
                primitive = false;
                break;
            }
        if (primitive) {
            generator_encoding_ = cand;
            break;
        }
    }
    if (generator_encoding_ == 0) throw Error(Errc::NotFound, "no primitive element");

    poly_of_log_.resize(m);
    log_of_poly_.assign(order_, kZeroLog);
    std::uint32_t cur = 1;
    for (std::uint32_t i = 0; i < m; ++i) {
        poly_of_log_[i] = cur;
        log_of_poly_[cur] = i;
        cur = pf.mul(cur, generator_encoding_);
    }
    zech_.resize(m);
    for (std::uint32_t i = 0; i < m; ++i) {
        std::uint32_t v = poly_of_log_[i];
        v = (v % p_ == static_cast<std::uint32_t>(p_ - 1)) ? v - (p_ - 1) : v + 1;
        zech_[i] = log_of_poly_[v];
    }

    qpow_.resize(n_);
    ppow_.resize(degree);
    std::uint64_t acc = 1;
    for (int j = 0; j < degree; ++j) {
        ppow_[j] = m == 1 ? 0 : acc % m;
        acc = (acc * p_) % (m == 1 ? 1 : m);
    }
    for (int j = 0; j < n_; ++j) qpow_[j] = ppow_[j * e_];

    build_subfield();
    build_basis();
}

void FieldContext::build_subfield() {
    const std::uint32_t m = order_ - 1;
    sub_step_ = m / static_cast<std::uint32_t>(q_ - 1);
    std::vector<FieldElement> elems{zero()};
    for (int t = 0; t < q_ - 1; ++t) elems.push_back(FieldElement(static_cast<Log>(t) * sub_step_, id_));
    std::sort(elems.begin(), elems.end(),
              [this](FieldElement a, FieldElement b) { return poly_encoding(a) < poly_encoding(b); });
    fq_elements_ = elems;
    sub_index_.assign(q_ - 1, 0);
    for (int i = 1; i < q_; ++i) sub_index_[fq_elements_[i].log() / sub_step_] = static_cast<SmallField::Elem>(i);

    std::vector<SmallField::Elem> add(q_ * q_), mul(q_ * q_);
    for (int a = 0; a < q_; ++a)
        for (int b = 0; b < q_; ++b) {
            add[a * q_ + b] = subfield_index_log(add_log(fq_elements_[a].log(), fq_elements_[b].log()));
            mul[a * q_ + b] = subfield_index_log(mul_log(fq_elements_[a].log(), fq_elements_[b].log()));
        }
    subfield_ = SmallField(q_, std::move(add), std::move(mul));
}

void FieldContext::build_basis() {
    const int degree = e_ * n_;
    const PolyBasisField pf(p_, modulus_);
    // F_p-echelon rows (digit vectors) spanning the F_q-span of the kept elements.
    std::vector<std::vector<int>> rows;
    std::vector<int> pivots;
    auto reduce = [&](std::vector<int> v) {
        for (std::size_t r = 0; r < rows.size(); ++r) {
            const int c = v[pivots[r]];
            if (c == 0) continue;
            for (int j = 0; j < degree; ++j) v[j] = mod_p(v[j] - static_cast<long long>(c) * rows[r][j], p_);
        }
        return v;
    };
    auto insert = [&](std::vector<int> v) {
        v = reduce(std::move(v));
        int piv = -1;
        for (int j = 0; j < degree; ++j)
            if (v[j] != 0) {
                piv = j;
                break;
            }
        if (piv < 0) return false;
        const int inv = inv_mod(v[piv], p_);
        for (int j = 0; j < degree; ++j) v[j] = static_cast<int>(static_cast<long long>(v[j]) * inv % p_);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            const int c = rows[r][piv];
            if (c == 0) continue;
            for (int j = 0; j < degree; ++j) rows[r][j] = mod_p(rows[r][j] - static_cast<long long>(c) * v[j], p_);
        }
        rows.push_back(std::move(v));
        pivots.push_back(piv);
        return true;
    };
    const Log omega = sub_step_ % (order_ - 1 == 0 ? 1 : order_ - 1);
    for (Log l = 0; l < order_ - 1 && static_cast<int>(fq_basis_.size()) < n_; ++l) {
        const auto d = pf.digits(poly_of_log_[l]);
        const auto red = reduce(d);
        if (std::all_of(red.begin(), red.end(), [](int c) { return c == 0; })) continue;
        fq_basis_.push_back(FieldElement(l, id_));
        Log w = 0;
        for (int t = 0; t < e_; ++t) {
            insert(pf.digits(poly_of_log_[mul_log(w, l)]));
            w = mul_log(w, omega);
        }
    }
    if (static_cast<int>(fq_basis_.size()) != n_) throw Error(Errc::NotFound, "F_q-basis construction failed");

    // Trace-dual basis: Tr(basis[i] * dual[j]) = delta_ij.
    const FqOps ops{&subfield_};
    Matrix<SmallField::Elem> gram(n_, n_, 0);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) gram(i, j) = subfield_index(rel_trace(mul(fq_basis_[i], fq_basis_[j])));
    const auto ginv = inverse(gram, ops);
    fq_dual_basis_.assign(n_, zero());
    for (int j = 0; j < n_; ++j)
        for (int k = 0; k < n_; ++k)
            fq_dual_basis_[j] = add(fq_dual_basis_[j], mul(from_subfield(ginv(k, j)), fq_basis_[k]));

    const std::uint64_t table_bytes = static_cast<std::uint64_t>(order_) * static_cast<std::uint64_t>(n_);
    if (table_bytes > (std::uint64_t{1} << 26)) return;
    coord_table_.assign(table_bytes, 0);
    std::vector<SmallField::Elem> c(n_, 0);
    std::vector<Log> partial(n_ + 1, kZeroLog);
    // Odometer over all coordinate vectors; partial[i] = sum_{j<i} c_j basis_j.
    std::vector<Log> scaled(static_cast<std::size_t>(n_) * q_);
    for (int i = 0; i < n_; ++i)
        for (int a = 0; a < q_; ++a) scaled[i * q_ + a] = mul_log(fq_elements_[a].log(), fq_basis_[i].log());
    for (std::uint32_t count = 0; count < order_; ++count) {
        for (int i = 0; i < n_; ++i) partial[i + 1] = add_log(partial[i], scaled[i * q_ + c[i]]);
        const Log v = partial[n_];
        const std::size_t slot = v == kZeroLog ? order_ - 1 : v;
        std::memcpy(&coord_table_[slot * n_], c.data(), n_);
        for (int i = n_ - 1; i >= 0; --i) {
            if (++c[i] < q_) break;
            c[i] = 0;
        }
    }
}

int FieldContext::reduce_q_exponent(std::int64_t j) const noexcept {
    std::int64_t r = j % n_;
    return static_cast<int>(r < 0 ? r + n_ : r);
}

void FieldContext::check(FieldElement a) const {
    if (a.ctx_id() != id_) throw Error(Errc::ContextMismatch, "element belongs to a different field context");
}

FieldElement FieldContext::gen_power(std::int64_t i) const {
    const std::int64_t m = group_order();
    std::int64_t r = i % m;
    if (r < 0) r += m;
    return FieldElement(static_cast<Log>(r), id_);
}

FieldElement FieldContext::from_log(Log l) const {
    if (l != kZeroLog && l >= group_order()) throw Error(Errc::BadParams, "log out of range");
    return FieldElement(l, id_);
}

FieldElement FieldContext::add(FieldElement a, FieldElement b) const {
    check(a);
    check(b);
    return FieldElement(add_log(a.log(), b.log()), id_);
}

FieldElement FieldContext::sub(FieldElement a, FieldElement b) const {
    check(a);
    check(b);
    return FieldElement(add_log(a.log(), neg_log(b.log())), id_);
}

FieldElement FieldContext::neg(FieldElement a) const {
    check(a);
    return FieldElement(neg_log(a.log()), id_);
}

FieldElement FieldContext::mul(FieldElement a, FieldElement b) const {
    check(a);
    check(b);
    return FieldElement(mul_log(a.log(), b.log()), id_);
}

FieldElement FieldContext::inv(FieldElement a) const {
    check(a);
    if (a.is_zero()) throw Error(Errc::DivisionByZero, "inverse of zero");
    return FieldElement(a.log() == 0 ? 0 : group_order() - a.log(), id_);
}

FieldElement FieldContext::div(FieldElement a, FieldElement b) const { return mul(a, inv(b)); }

FieldElement FieldContext::pow(FieldElement a, std::int64_t e) const {
    check(a);
    if (a.is_zero()) {
        if (e < 0) throw Error(Errc::DivisionByZero, "negative power of zero");
        return e == 0 ? one() : zero();
    }
    const std::int64_t m = group_order();
    std::int64_t r = e % m;
    if (r < 0) r += m;
    return FieldElement(static_cast<Log>((static_cast<std::uint64_t>(a.log()) * static_cast<std::uint64_t>(r)) % m),
                        id_);
}

FieldElement FieldContext::frobenius(FieldElement a, std::int64_t j) const {
    check(a);
    return FieldElement(frob_log(a.log(), reduce_q_exponent(j)), id_);
}

FieldElement FieldContext::frobenius_p(FieldElement a, std::int64_t j) const {
    check(a);
    if (a.is_zero()) return a;
    const std::int64_t deg = total_degree();
    std::int64_t r = j % deg;
    if (r < 0) r += deg;
    return FieldElement(static_cast<Log>((static_cast<std::uint64_t>(a.log()) * ppow_[r]) % group_order()), id_);
}

FieldElement FieldContext::rel_trace(FieldElement a) const {
    check(a);
    Log acc = kZeroLog;
    for (int i = 0; i < n_; ++i) acc = add_log(acc, frob_log(a.log(), i));
    return FieldElement(acc, id_);
}

FieldElement FieldContext::rel_norm(FieldElement a) const {
    check(a);
    if (a.is_zero()) return a;
    return FieldElement(static_cast<Log>((static_cast<std::uint64_t>(a.log()) * sub_step_) % group_order()), id_);
}

bool FieldContext::is_in_subfield(FieldElement a) const {
    check(a);
    return a.is_zero() || a.log() % sub_step_ == 0;
}

SmallField::Elem FieldContext::subfield_index(FieldElement a) const {
    if (!is_in_subfield(a)) throw Error(Errc::BadParams, "element is not in F_q");
    return subfield_index_log(a.log());
}

FieldElement FieldContext::from_subfield(SmallField::Elem c) const {
    if (c >= q_) throw Error(Errc::BadParams, "subfield index out of range");
    return fq_elements_[c];
}

void FieldContext::fq_coordinates_log(Log a, SmallField::Elem* out) const {
    if (!coord_table_.empty()) {
        const std::size_t slot = a == kZeroLog ? order_ - 1 : a;
        std::memcpy(out, &coord_table_[slot * n_], n_);
        return;
    }
    for (int i = 0; i < n_; ++i) {
        Log acc = kZeroLog;
        const Log prod = mul_log(a, fq_dual_basis_[i].log());
        for (int j = 0; j < n_; ++j) acc = add_log(acc, frob_log(prod, j));
        out[i] = subfield_index_log(acc);
    }
}

std::vector<SmallField::Elem> FieldContext::fq_coordinates(FieldElement a) const {
    check(a);
    std::vector<SmallField::Elem> out(n_);
    fq_coordinates_log(a.log(), out.data());
    return out;
}

std::vector<SmallField::Elem> FieldContext::fq_coordinates_by_trace(FieldElement a) const {
    check(a);
    std::vector<SmallField::Elem> out(n_);
    for (int i = 0; i < n_; ++i) out[i] = subfield_index(rel_trace(mul(a, fq_dual_basis_[i])));
    return out;
}

FieldElement FieldContext::from_fq_coordinates(std::span<const SmallField::Elem> c) const {
    if (static_cast<int>(c.size()) != n_) throw Error(Errc::BadParams, "coordinate vector has wrong length");
    Log acc = kZeroLog;
    for (int i = 0; i < n_; ++i) acc = add_log(acc, mul_log(subfield_log(c[i]), fq_basis_[i].log()));
    return FieldElement(acc, id_);
}

std::uint32_t FieldContext::poly_encoding(FieldElement a) const {
    check(a);
    return a.is_zero() ? 0 : poly_of_log_[a.log()];
}

FieldElement FieldContext::from_poly_encoding(std::uint32_t v) const {
    if (v >= order_) throw Error(Errc::BadParams, "encoding out of range");
    return FieldElement(log_of_poly_[v], id_);
}

std::string FieldContext::to_digits(FieldElement a) const {
    static constexpr char kDigits[] = "0123456789abcdefghijklmnopqrstuvwxyz";
    std::uint32_t v = poly_encoding(a);
    std::string s(total_degree(), '0');
    for (int i = 0; i < total_degree(); ++i) {
        s[i] = kDigits[v % p_];
        v /= p_;
    }
    return s;
}

FieldElement FieldContext::from_digits(std::string_view s) const {
    if (static_cast<int>(s.size()) != total_degree())
        throw Error(Errc::ParseError, "digit string must have length " + std::to_string(total_degree()));
    std::uint32_t v = 0;
    for (int i = total_degree() - 1; i >= 0; --i) {
        const char ch = s[i];
        int d = -1;
        if (ch >= '0' && ch <= '9') d = ch - '0';
        else if (ch >= 'a' && ch <= 'z') d = ch - 'a' + 10;
        if (d < 0 || d >= p_) throw Error(Errc::ParseError, "bad digit in element string '" + std::string(s) + "'");
        v = v * p_ + static_cast<std::uint32_t>(d);
    }
    return from_poly_encoding(v);
}

FieldElement FieldContext::parse(std::string_view s) const {
    if (s.size() > 2 && s[0] == 'g' && s[1] == '^') {
        std::int64_t i = 0;
        const auto* first = s.data() + 2;
        const auto* last = s.data() + s.size();
        auto [ptr, ec] = std::from_chars(first, last, i);
        if (ec != std::errc{} || ptr != last) throw Error(Errc::ParseError, "bad generator power '" + std::string(s) + "'");
        return gen_power(i);
    }
    if (s == "0") return zero();
    return from_digits(s);
}

}  // namespace rankmetric
