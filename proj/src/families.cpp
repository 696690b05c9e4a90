#include "rankmetric/families.hpp"

#include <charconv>
#include <numeric>
#include <sstream>

namespace rankmetric {

namespace {

struct FamilyInfo {
    Family tag;
    const char* name;
    int q;
    int n;
};

constexpr FamilyInfo kInfo[] = {
    {Family::G, "G", 2, 5},   {Family::H, "H", 3, 5},   {Family::C1, "C1", 5, 6}, {Family::C2, "C2", 5, 8},
    {Family::C3, "C3", 3, 7}, {Family::C4, "C4", 4, 8}, {Family::C5, "C5", 5, 6}, {Family::D1, "D1", 5, 6},
    {Family::D2, "D2", 5, 8}, {Family::D3, "D3", 3, 7}, {Family::D4, "D4", 4, 8}, {Family::D5, "D5", 5, 6},
};

const FamilyInfo& info(Family f) { return kInfo[static_cast<int>(f)]; }

LinearizedPoly mono(const ContextPtr& ctx, std::int64_t i) { return LinearizedPoly::monomial(ctx, ctx->one(), i); }
LinearizedPoly mono(const ContextPtr& ctx, FieldElement a, std::int64_t i) { return LinearizedPoly::monomial(ctx, a, i); }

void require_n(const ContextPtr& ctx, int n, const char* family) {
    if (ctx->n() != n)
        throw Error(Errc::BadParams, std::string(family) + " needs n = " + std::to_string(n) + ", got " +
                                         std::to_string(ctx->n()));
}

void require_coprime(int s, int n) {
    if (s <= 0 || std::gcd(s, n) != 1)
        throw Error(Errc::BadParams, "s = " + std::to_string(s) + " must be positive and coprime to n = " + std::to_string(n));
}

void require_odd(const ContextPtr& ctx, const char* family) {
    if (ctx->q() % 2 == 0) throw Error(Errc::CongruenceViolated, std::string(family) + " needs q odd");
}

void require_in_subfield(const FieldContext& ctx, FieldElement d, int degree, const char* family) {
    ctx.check(d);
    if (ctx.frobenius(d, degree) != d)
        throw Error(Errc::DeltaConstraintViolated,
                    std::string(family) + " needs delta in F_{q^" + std::to_string(degree) + "}");
}

void check_c2_delta(const FieldContext& ctx, FieldElement d) {
    ctx.check(d);
    if (ctx.mul(d, d) != ctx.neg(ctx.one())) throw Error(Errc::DeltaConstraintViolated, "C2 needs delta^2 = -1");
}

void check_c5(const ContextPtr& ctx, FieldElement d) {
    require_n(ctx, 6, "C5");
    require_odd(ctx, "C5");
    const int r = ctx->q() % 5;
    if (r != 0 && r != 1 && r != 4) throw Error(Errc::CongruenceViolated, "C5 needs q = 0, 1 or 4 mod 5");
    ctx->check(d);
    if (ctx->add(ctx->mul(d, d), d) != ctx->one()) throw Error(Errc::DeltaConstraintViolated, "C5 needs delta^2 + delta = 1");
}

void check_c3(const ContextPtr& ctx, int s) {
    require_n(ctx, 7, "C3");
    require_odd(ctx, "C3");
    require_coprime(s, 7);
}

void check_c4(const ContextPtr& ctx, int s) {
    require_n(ctx, 8, "C4");
    if (ctx->q() % 3 != 1) throw Error(Errc::CongruenceViolated, "C4 needs q = 1 mod 3");
    require_coprime(s, 8);
}

int parse_int(std::string_view v, std::string_view key) {
    int out = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size())
        throw Error(Errc::ParseError, "bad integer for " + std::string(key) + ": '" + std::string(v) + "'");
    return out;
}

}  // namespace

const char* family_name(Family f) noexcept { return info(f).name; }

std::optional<Family> parse_family_name(std::string_view s) {
    for (const auto& i : kInfo)
        if (s == i.name) return i.tag;
    return std::nullopt;
}

std::pair<int, int> split_prime_power(int q) {
    if (q < 2) throw Error(Errc::BadParams, "q must be a prime power");
    const auto factors = prime_factors(static_cast<std::uint64_t>(q));
    if (factors.size() != 1) throw Error(Errc::BadParams, std::to_string(q) + " is not a prime power");
    const int p = static_cast<int>(factors[0]);
    int e = 0;
    for (int v = q; v > 1; v /= p) ++e;
    return {p, e};
}

ContextPtr context_for(int q, int n) {
    const auto [p, e] = split_prime_power(q);
    return FieldContext::get(p, e, n);
}

RdCode gabidulin(const ContextPtr& ctx, int k, int s) {
    const int n = ctx->n();
    require_coprime(s, n);
    if (k < 1 || k > n - 1) throw Error(Errc::BadParams, "k must satisfy 1 <= k <= n-1");
    std::vector<LinearizedPoly> gens;
    for (int i = 0; i < k; ++i) gens.push_back(mono(ctx, static_cast<std::int64_t>(s) * i));
    return from_span_fqn(ctx, gens);
}

FieldElement norm_obstruction(const FieldContext& ctx, int k) {
    return (ctx.n() * k) % 2 == 0 ? ctx.one() : ctx.neg(ctx.one());
}

FieldElement default_eta(const FieldContext& ctx, int k) {
    const auto bad = norm_obstruction(ctx, k);
    for (std::int64_t i = 0; i < ctx.group_order(); ++i) {
        const auto eta = ctx.gen_power(i);
        if (ctx.rel_norm(eta) != bad) return eta;
    }
    throw Error(Errc::NotFound, "every nonzero eta has norm (-1)^{nk}");
}

RdCode twisted(const ContextPtr& ctx, int k, int s, FieldElement eta, int h_twist) {
    const int n = ctx->n();
    require_coprime(s, n);
    if (k < 1 || k > n - 1) throw Error(Errc::BadParams, "k must satisfy 1 <= k <= n-1");
    ctx->check(eta);
    if (ctx->rel_norm(eta) == norm_obstruction(*ctx, k))
        throw Error(Errc::NormConditionViolated, "N(eta) = (-1)^{nk}");
    const std::int64_t sk = static_cast<std::int64_t>(s) * k;
    const int h = ((h_twist % n) + n) % n;
    if (h == 0) {
        std::vector<LinearizedPoly> gens{mono(ctx, 0) + mono(ctx, eta, sk)};
        for (int i = 1; i < k; ++i) gens.push_back(mono(ctx, static_cast<std::int64_t>(s) * i));
        return from_span_fqn(ctx, gens);
    }
    std::vector<LinearizedPoly> gens;
    for (auto theta : ctx->fq_basis()) {
        gens.push_back(mono(ctx, theta, 0) + mono(ctx, ctx->mul(ctx->frobenius(theta, h), eta), sk));
        for (int i = 1; i < k; ++i) gens.push_back(mono(ctx, theta, static_cast<std::int64_t>(s) * i));
    }
    auto code = from_span_fq(ctx, gens);
    return eta.is_zero() ? normalize(code) : code;
}

FieldElement search_delta_c1(const ContextPtr& ctx, std::uint64_t budget) {
    require_n(ctx, 6, "C1");
    if (ctx->q() <= 4) throw Error(Errc::PreconditionViolated, "the C1 delta search needs q > 4");
    const std::uint64_t q2 = static_cast<std::uint64_t>(ctx->q()) * ctx->q();
    const std::int64_t step = ctx->group_order() / static_cast<std::int64_t>(q2 - 1);
    for (std::uint64_t i = 0; i + 1 < q2; ++i) {
        const auto delta = ctx->gen_power(static_cast<std::int64_t>(i) * step);
        const auto res = is_mrd(c1(ctx, delta), MrdOptions{budget, 0, 0, 1});
        if (!res.exhaustive) throw Error(Errc::BudgetExceeded, "C1 MRD check does not fit the budget");
        if (res.status == MrdStatus::VerifiedTrue) return delta;
    }
    throw Error(Errc::NotFound, "no delta in F_{q^2} makes C1 an MRD code");
}

FieldElement delta_c2(const FieldContext& ctx) {
    if (ctx.q() % 2 == 0) throw Error(Errc::CongruenceViolated, "C2 needs q odd");
    return ctx.gen_power(ctx.group_order() / 4);
}

FieldElement delta_c5(const FieldContext& ctx) {
    for (std::int64_t i = 0; i < ctx.group_order(); ++i) {
        const auto d = ctx.gen_power(i);
        if (ctx.add(ctx.mul(d, d), d) == ctx.one()) return d;
    }
    throw Error(Errc::NotFound, "no root of d^2 + d = 1");
}

RdCode c1(const ContextPtr& ctx, FieldElement delta) {
    require_n(ctx, 6, "C1");
    require_in_subfield(*ctx, delta, 2, "C1");
    return from_span_fqn(ctx, {mono(ctx, 0), mono(ctx, delta, 1) + mono(ctx, 4)});
}

RdCode c2(const ContextPtr& ctx, FieldElement delta) {
    require_n(ctx, 8, "C2");
    require_odd(ctx, "C2");
    check_c2_delta(*ctx, delta);
    return from_span_fqn(ctx, {mono(ctx, 0), mono(ctx, delta, 1) + mono(ctx, 5)});
}

RdCode c2(const ContextPtr& ctx) {
    require_n(ctx, 8, "C2");
    return c2(ctx, delta_c2(*ctx));
}

RdCode c3(const ContextPtr& ctx, int s) {
    check_c3(ctx, s);
    return from_span_fqn(ctx, {mono(ctx, 0), mono(ctx, s), mono(ctx, 3 * s)});
}

RdCode c4(const ContextPtr& ctx, int s) {
    check_c4(ctx, s);
    return from_span_fqn(ctx, {mono(ctx, 0), mono(ctx, s), mono(ctx, 3 * s)});
}

RdCode c5(const ContextPtr& ctx, FieldElement delta) {
    check_c5(ctx, delta);
    return from_span_fqn(ctx, {mono(ctx, 0), mono(ctx, 1) + mono(ctx, 3) + mono(ctx, delta, 5)});
}

RdCode d1(const ContextPtr& ctx, FieldElement delta) {
    require_n(ctx, 6, "D1");
    require_in_subfield(*ctx, delta, 2, "D1");
    return from_span_fqn(ctx, {mono(ctx, 1), mono(ctx, 2), mono(ctx, 4),
                               mono(ctx, 0) - mono(ctx, ctx->frobenius(delta, 1), 3)});
}

RdCode d2(const ContextPtr& ctx, FieldElement delta) {
    require_n(ctx, 8, "D2");
    require_odd(ctx, "D2");
    check_c2_delta(*ctx, delta);
    return from_span_fqn(ctx, {mono(ctx, 1), mono(ctx, 2), mono(ctx, 3), mono(ctx, 5), mono(ctx, 6),
                               mono(ctx, 0) - mono(ctx, delta, 4)});
}

RdCode d3(const ContextPtr& ctx, int s) {
    check_c3(ctx, s);
    return from_span_fqn(ctx, {mono(ctx, 0), mono(ctx, 2 * s), mono(ctx, 3 * s), mono(ctx, 4 * s)});
}

RdCode d4(const ContextPtr& ctx, int s) {
    check_c4(ctx, s);
    return from_span_fqn(ctx, {mono(ctx, 0), mono(ctx, 2 * s), mono(ctx, 3 * s), mono(ctx, 4 * s), mono(ctx, 5 * s)});
}

RdCode d5(const ContextPtr& ctx, FieldElement delta) {
    check_c5(ctx, delta);
    return from_span_fqn(ctx, {mono(ctx, 1), mono(ctx, 3), mono(ctx, 0) - mono(ctx, 2),
                               mono(ctx, 4) - mono(ctx, delta, 0)});
}

FamilySpec default_spec(Family f) {
    FamilySpec s;
    s.tag = f;
    s.q = info(f).q;
    s.n = info(f).n;
    return s;
}

FamilySpec resolve(FamilySpec spec) {
    if (spec.q == 0) spec.q = info(spec.tag).q;
    if (spec.n == 0) spec.n = info(spec.tag).n;
    return spec;
}

FamilySpec parse_descriptor(std::string_view text) {
    const auto colon = text.find(':');
    const auto name = text.substr(0, colon);
    const auto tag = parse_family_name(name);
    if (!tag) throw Error(Errc::ParseError, "unknown family '" + std::string(name) + "'");
    FamilySpec spec;
    spec.tag = *tag;
    if (colon == std::string_view::npos) return spec;
    std::string_view rest = text.substr(colon + 1);
    while (!rest.empty()) {
        const auto comma = rest.find(',');
        const auto item = rest.substr(0, comma);
        rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
        if (item.empty()) continue;
        const auto eq = item.find('=');
        if (eq == std::string_view::npos) throw Error(Errc::ParseError, "expected key=value, got '" + std::string(item) + "'");
        const auto key = item.substr(0, eq);
        const auto val = item.substr(eq + 1);
        if (key == "k") spec.k = parse_int(val, key);
        else if (key == "s") spec.s = parse_int(val, key);
        else if (key == "h") spec.h_twist = parse_int(val, key);
        else if (key == "q") spec.q = parse_int(val, key);
        else if (key == "n") spec.n = parse_int(val, key);
        else if (key == "eta") spec.eta = std::string(val);
        else if (key == "delta") spec.delta = std::string(val);
        else throw Error(Errc::ParseError, "unknown descriptor key '" + std::string(key) + "'");
    }
    return spec;
}

std::string describe(const FamilySpec& spec) {
    std::ostringstream os;
    os << family_name(spec.tag) << ":q=" << spec.q << ",n=" << spec.n;
    switch (spec.tag) {
        case Family::G: os << ",k=" << spec.k << ",s=" << spec.s; break;
        case Family::H:
            os << ",k=" << spec.k << ",s=" << spec.s << ",h=" << spec.h_twist;
            if (!spec.eta.empty()) os << ",eta=" << spec.eta;
            break;
        case Family::C3: case Family::C4: case Family::D3: case Family::D4: os << ",s=" << spec.s; break;
        default:
            if (!spec.delta.empty()) os << ",delta=" << spec.delta;
            break;
    }
    return os.str();
}

std::optional<Family> dual_family(Family f) noexcept {
    switch (f) {
        case Family::C1: return Family::D1;
        case Family::C2: return Family::D2;
        case Family::C3: return Family::D3;
        case Family::C4: return Family::D4;
        case Family::C5: return Family::D5;
        default: return std::nullopt;
    }
}

namespace {

Fixture table_fixture(Family f) {
    Fixture x;
    auto set = [&x](int n, int k, int ind, int h, int r) {
        x.n = n;
        x.k = k;
        x.ind = ind;
        x.h = h;
        x.r_exp = r;
        x.l_exp = n;
    };
    switch (f) {
        case Family::C1: set(6, 2, 1, 0, 3); break;
        case Family::C2: set(8, 2, 1, 0, 4); break;
        case Family::C3: set(7, 3, 2, 1, 7); break;
        case Family::C4: set(8, 3, 2, 1, 8); break;
        case Family::C5: set(6, 2, 1, 0, 2); break;
        case Family::D1: set(6, 4, 2, 2, 3); break;
        case Family::D2: set(8, 6, 3, 4, 4); break;
        case Family::D3: set(7, 4, 3, 2, 7); break;
        case Family::D4: set(8, 5, 4, 3, 8); break;
        case Family::D5: set(6, 4, 2, 2, 2); break;
        default: break;
    }
    return x;
}

}  // namespace

BuiltFamily build_family(const FamilySpec& in, std::uint64_t budget) {
    BuiltFamily b;
    b.spec = resolve(in);
    const auto& sp = b.spec;
    b.ctx = context_for(sp.q, sp.n);
    const auto& ctx = b.ctx;
    const int n = sp.n;
    auto parse_delta = [&](auto fallback) { return sp.delta.empty() ? fallback() : ctx->parse(sp.delta); };
    switch (sp.tag) {
        case Family::G:
            b.code = gabidulin(ctx, sp.k, sp.s);
            b.expected = Fixture{n, sp.k, sp.k, sp.k - 1, n, n};
            break;
        case Family::H: {
            const auto eta = sp.eta.empty() ? default_eta(*ctx, sp.k) : ctx->parse(sp.eta);
            b.eta = eta;
            b.code = twisted(ctx, sp.k, sp.s, eta, sp.h_twist);
            const int h = ((sp.h_twist % n) + n) % n;
            // k = 1 and k = n-1 twisted codes are Gabidulin up to equivalence.
            if (eta.is_zero() || (h == 0 && (sp.k == 1 || sp.k == n - 1))) {
                b.expected = Fixture{n, sp.k, sp.k, sp.k - 1, n, n};
            } else {
                b.expected.n = n;
                b.expected.k = sp.k;
                b.expected.ind = sp.k - 1;
                if (h == 0 && sp.k >= 2) b.expected.h = sp.k - 2;
                b.expected.r_exp = std::gcd(n, ((sp.s * sp.k - h) % n + n) % n);
                b.expected.l_exp = std::gcd(n, h);
            }
            break;
        }
        case Family::C1: case Family::D1: {
            const auto delta = parse_delta([&] { return search_delta_c1(ctx, budget); });
            b.delta = delta;
            b.code = sp.tag == Family::C1 ? c1(ctx, delta) : d1(ctx, delta);
            break;
        }
        case Family::C2: case Family::D2: {
            const auto delta = parse_delta([&] { return delta_c2(*ctx); });
            b.delta = delta;
            b.code = sp.tag == Family::C2 ? c2(ctx, delta) : d2(ctx, delta);
            break;
        }
        case Family::C3: b.code = c3(ctx, sp.s); break;
        case Family::D3: b.code = d3(ctx, sp.s); break;
        case Family::C4: b.code = c4(ctx, sp.s); break;
        case Family::D4: b.code = d4(ctx, sp.s); break;
        case Family::C5: case Family::D5: {
            const auto delta = parse_delta([&] { return delta_c5(*ctx); });
            b.delta = delta;
            b.code = sp.tag == Family::C5 ? c5(ctx, delta) : d5(ctx, delta);
            break;
        }
    }
    if (sp.tag != Family::G && sp.tag != Family::H) b.expected = table_fixture(sp.tag);
    return b;
}

}  // namespace rankmetric
