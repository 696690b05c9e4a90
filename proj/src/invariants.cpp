#include "rankmetric/invariants.hpp"

#include <numeric>
#include <sstream>

namespace rankmetric {

std::vector<int> admissible_shifts(int n) {
    std::vector<int> out;
    for (int s = 1; s < n; ++s)
        if (std::gcd(s, n) == 1) out.push_back(s);
    return out;
}

namespace {

IdealiserResult idealiser(const RdCode& c, Side side, std::uint64_t seed) {
    const auto& ctx = c.ctx();
    const auto& f = *ctx;
    const int n = f.n();
    const std::size_t nn = static_cast<std::size_t>(n) * n;
    const auto ops = fq_ops(f);
    const auto parity = null_space(c.fq_matrix(), ops);
    const auto gens = c.fq_basis();

    // Unknown u = i*n + t stands for phi_u = theta_t x^{[i]}.
    std::vector<LinearizedPoly> unknowns;
    for (int i = 0; i < n; ++i)
        for (int t = 0; t < n; ++t) unknowns.push_back(LinearizedPoly::monomial(ctx, f.fq_basis()[t], i));

    Matrix<SmallField::Elem> sys(0, nn, 0);
    std::vector<std::vector<SmallField::Elem>> images(nn);
    std::vector<SmallField::Elem> row(nn);
    for (const auto& g : gens) {
        for (std::size_t u = 0; u < nn; ++u) {
            const auto& phi = unknowns[u];
            images[u] = fq_coordinates(side == Side::Left ? compose(phi, g) : compose(g, phi));
        }
        for (std::size_t h = 0; h < parity.rows(); ++h) {
            for (std::size_t u = 0; u < nn; ++u) {
                SmallField::Elem acc = 0;
                for (std::size_t j = 0; j < nn; ++j)
                    if (parity(h, j) != 0 && images[u][j] != 0) acc = ops.add(acc, ops.mul(parity(h, j), images[u][j]));
                row[u] = acc;
            }
            sys.append_row(row);
        }
        rref(sys, ops);
    }
    const auto sol = null_space(sys, ops);

    IdealiserResult res;
    res.side = side;
    res.order_exponent = static_cast<int>(sol.rows());
    for (std::size_t r = 0; r < sol.rows(); ++r) res.basis.push_back(from_fq_coordinates(ctx, sol.row(r)));

    const auto algebra = RdCode::from_fq_rows(ctx, sol);
    bool closed = contains(algebra, LinearizedPoly::identity(ctx));
    for (std::size_t a = 0; closed && a < res.basis.size(); ++a)
        for (std::size_t b = 0; closed && b < res.basis.size(); ++b)
            closed = contains(algebra, compose(res.basis[a], res.basis[b]));
    if (!closed) return res;

    std::uint64_t order = 1;
    for (int i = 0; i < res.order_exponent && order <= 65536; ++i) order *= static_cast<std::uint64_t>(f.q());
    if (order <= 65536) {
        res.is_field = !find_rank_below(algebra, n, EnumOptions{kSaturated, 1}).has_value();
    } else {
        res.sampled = true;
        res.is_field = sample_min_rank(algebra, 1000, seed) == n;
    }
    return res;
}

int shift_intersection_dim(const RdCode& c, int j) { return intersect(c, shift_code(c, j)).dim(); }

}  // namespace

IdealiserResult left_idealiser(const RdCode& c, std::uint64_t seed) { return idealiser(c, Side::Left, seed); }
IdealiserResult right_idealiser(const RdCode& c, std::uint64_t seed) { return idealiser(c, Side::Right, seed); }

HValue h_invariant(const RdCode& c) {
    HValue h;
    h.over_fq = !c.is_fqn_linear();
    bool first = true;
    for (int j : admissible_shifts(c.n())) {
        const int d = shift_intersection_dim(c, j);
        if (first || d > h.value) {
            h.value = d;
            h.arg = j;
            first = false;
        }
    }
    return h;
}

namespace {

MrdResult require_mrd(const RdCode& c, const MrdOptions& opt) {
    if (!c.is_fqn_linear()) throw Error(Errc::NotFqnLinear, "characterization needs an F_{q^n}-linear code");
    auto mrd = is_mrd(c, opt);
    if (mrd.status == MrdStatus::VerifiedFalse) throw Error(Errc::NotMrd, "code is not MRD");
    return mrd;
}

}  // namespace

GabidulinCheck is_equiv_gabidulin(const RdCode& c, const MrdOptions& opt) {
    const auto mrd = require_mrd(c, opt);
    GabidulinCheck out;
    out.mrd = mrd.status;
    out.mrd_sampled = mrd.status == MrdStatus::SampledConsistent;
    const int k = c.k_fqn();
    if (k == 0) return out;
    if (k == 1) {
        if (is_invertible(c.basis()[0])) out.s = 1;
        return out;
    }
    for (int s : admissible_shifts(c.n()))
        if (shift_intersection_dim(c, s) == k - 1) {
            out.s = s;
            break;
        }
    return out;
}

const char* twisted_step_name(TwistedStep s) noexcept {
    switch (s) {
        case TwistedStep::Ok: return "ok";
        case TwistedStep::IntersectionDim: return "intersection_dim";
        case TwistedStep::TripleIntersectionDim: return "triple_intersection_dim";
        case TwistedStep::SumDim: return "sum_dim";
        case TwistedStep::ChainDim: return "chain_dim";
        case TwistedStep::SpanMismatch: return "span_mismatch";
        case TwistedStep::NotInvertible: return "not_invertible";
        case TwistedStep::NoEta: return "no_eta";
        case TwistedStep::NormCondition: return "norm_condition";
    }
    return "?";
}

TwistedAttempt twisted_attempt(const RdCode& c, int s, std::optional<TwistedWitness>* out) {
    const auto& ctx = c.ctx();
    const auto& f = *ctx;
    const int k = c.k_fqn();
    TwistedAttempt a{s, TwistedStep::Ok};
    auto fail = [&a](TwistedStep st) {
        a.step = st;
        return a;
    };

    const auto v = intersect(c, shift_code(c, s));
    if (v.dim() != k - 2) return fail(TwistedStep::IntersectionDim);
    if (intersect(v, shift_code(c, 2 * s)).dim() != k - 3) return fail(TwistedStep::TripleIntersectionDim);

    const auto u = sum(shift_code(v, -s), v);
    if (u.dim() != k - 1) return fail(TwistedStep::SumDim);

    auto w = u;
    for (int i = 1; i <= k - 2; ++i) w = intersect(w, shift_code(u, static_cast<std::int64_t>(i) * s));
    if (w.dim() != 1) return fail(TwistedStep::ChainDim);
    const auto p = frobenius_shift(w.basis()[0], -static_cast<std::int64_t>(s) * (k - 1));

    std::vector<LinearizedPoly> chain;
    for (int i = 1; i <= k - 1; ++i) chain.push_back(frobenius_shift(p, static_cast<std::int64_t>(s) * i));
    if (!(from_span_fqn(ctx, chain) == u)) return fail(TwistedStep::SpanMismatch);
    LinearizedPoly q_complement;
    for (const auto& b : c.basis())
        if (!contains(u, b)) {
            q_complement = b;
            break;
        }

    if (!is_invertible(p)) return fail(TwistedStep::NotInvertible);

    // Images in the quotient F_{q^n}^n / C: residues modulo the rref basis.
    const auto ops = fqn_ops(f);
    auto ia = coeff_logs(p);
    auto ib = coeff_logs(frobenius_shift(p, static_cast<std::int64_t>(s) * k));
    reduce_against(std::span<Log>(ia), c.fqn_matrix(), c.fqn_pivots(), ops);
    reduce_against(std::span<Log>(ib), c.fqn_matrix(), c.fqn_pivots(), ops);
    std::size_t j = 0;
    while (j < ib.size() && ib[j] == kZeroLog) ++j;
    if (j == ib.size()) return fail(TwistedStep::NoEta);
    const Log eta = ops.neg(ops.mul(ia[j], ops.inv(ib[j])));
    if (eta == kZeroLog) return fail(TwistedStep::NoEta);
    for (std::size_t t = 0; t < ia.size(); ++t)
        if (ops.add(ia[t], ops.mul(eta, ib[t])) != kZeroLog) return fail(TwistedStep::NoEta);

    const auto eta_el = f.from_log(eta);
    if (f.rel_norm(eta_el) == norm_obstruction(f, k)) return fail(TwistedStep::NormCondition);
    if (out) *out = TwistedWitness{s, p, q_complement, eta_el};
    return a;
}

TwistedCheck is_equiv_twisted(const RdCode& c, const MrdOptions& opt) {
    if (!c.is_fqn_linear()) throw Error(Errc::NotFqnLinear, "characterization needs an F_{q^n}-linear code");
    if (c.k_fqn() <= 2) throw Error(Errc::KTooSmall, "twisted characterization needs k > 2");
    const auto mrd = require_mrd(c, opt);
    TwistedCheck out;
    out.mrd_sampled = mrd.status == MrdStatus::SampledConsistent;
    for (int s : admissible_shifts(c.n())) {
        std::optional<TwistedWitness> w;
        out.attempts.push_back(twisted_attempt(c, s, &w));
        if (w && !out.witness) out.witness = std::move(w);
    }
    return out;
}

const char* index_status_name(IndexStatus s) noexcept {
    switch (s) {
        case IndexStatus::Certified: return "certified";
        case IndexStatus::Witnessed: return "witnessed";
        case IndexStatus::BudgetLimited: return "budget-limited";
    }
    return "?";
}

namespace {

struct LevelSearch {
    LevelOutcome outcome = LevelOutcome::Absent;
    std::string reason;
    std::vector<LinearizedPoly> witness;
    int s = 0;
};

bool has_common_kernel(const RdCode& w) {
    const auto& f = w.field();
    const std::size_t n = f.n();
    Matrix<SmallField::Elem> stacked(0, n, 0);
    for (const auto& b : w.basis()) {
        const auto m = matrix_of(b);
        for (std::size_t r = 0; r < n; ++r) stacked.append_row(m.row(r));
    }
    return rank(stacked, fq_ops(f)) < n;
}

// Search W for an invertible element; Found / Absent / Unknown.
LevelOutcome search_invertible(const RdCode& w, const IndexOptions& opt, std::uint64_t stream,
                               std::optional<LinearizedPoly>& found, std::string& reason) {
    const int n = w.n();
    if (w.is_zero()) {
        reason = "W = 0";
        return LevelOutcome::Absent;
    }
    if (has_common_kernel(w)) {
        reason = "common kernel";
        return LevelOutcome::Absent;
    }
    const auto count = projective_count(w);
    if (count <= opt.budget) {
        found = find_rank_at_least(w, n, EnumOptions{opt.budget, opt.workers});
        reason = found ? "exhaustive witness" : "exhaustive scan";
        return found ? LevelOutcome::Found : LevelOutcome::Absent;
    }
    found = sample_rank_at_least(w, n, opt.random_samples, mix_seed(opt.seed, stream));
    reason = found ? "random witness" : "random search exhausted";
    return found ? LevelOutcome::Found : LevelOutcome::Unknown;
}

LevelSearch test_level(const RdCode& c, int m, const IndexOptions& opt) {
    LevelSearch out;
    if (m == 1) {
        std::optional<LinearizedPoly> f;
        out.outcome = search_invertible(c, opt, 1, f, out.reason);
        if (f) {
            out.witness = {*f};
            out.s = 1;
        }
        return out;
    }
    std::vector<std::string> reasons;
    bool unknown = false;
    for (int s : admissible_shifts(c.n())) {
        auto w = c;
        for (int i = 1; i < m; ++i) w = intersect(w, shift_code(c, -static_cast<std::int64_t>(i) * s));
        std::optional<LinearizedPoly> f;
        std::string reason;
        const auto res = search_invertible(w, opt, static_cast<std::uint64_t>(m) * 1024 + s, f, reason);
        reasons.push_back("s=" + std::to_string(s) + ": " + reason);
        if (res == LevelOutcome::Found) {
            out.outcome = LevelOutcome::Found;
            out.s = s;
            for (int i = 0; i < m; ++i) out.witness.push_back(frobenius_shift(*f, static_cast<std::int64_t>(i) * s));
            out.reason = reasons.back();
            return out;
        }
        if (res == LevelOutcome::Unknown) unknown = true;
    }
    out.outcome = unknown ? LevelOutcome::Unknown : LevelOutcome::Absent;
    for (std::size_t i = 0; i < reasons.size(); ++i) out.reason += (i ? "; " : "") + reasons[i];
    return out;
}

}  // namespace

IndexResult gabidulin_index(const RdCode& c, const IndexOptions& opt) {
    if (!c.is_fqn_linear()) throw Error(Errc::NotFqnLinear, "Gabidulin index needs an F_{q^n}-linear code");
    IndexResult res;
    const int k = c.k_fqn();
    if (k == 0) return res;
    const int h = h_invariant(c).value;
    res.upper = std::min(k, h + 1);
    for (int m = k; m > res.upper; --m) res.levels.push_back({m, LevelOutcome::Absent, "h-bound"});
    for (int m = res.upper; m >= 1; --m) {
        auto level = test_level(c, m, opt);
        res.levels.push_back({m, level.outcome, level.reason});
        if (level.outcome == LevelOutcome::Found) {
            res.lower = m;
            res.witness = std::move(level.witness);
            res.witness_s = level.s;
            break;
        }
        if (level.outcome == LevelOutcome::Absent && res.upper == m) res.upper = m - 1;
    }
    if (res.lower == res.upper) res.status = IndexStatus::Certified;
    else if (res.lower > 0) res.status = IndexStatus::Witnessed;
    else res.status = IndexStatus::BudgetLimited;
    return res;
}

bool verify_gabidulin_subcode(const RdCode& c, const std::vector<LinearizedPoly>& basis, int s, std::uint64_t budget) {
    if (basis.empty()) return false;
    const auto d = from_span_fqn(c.ctx(), basis);
    const int m = d.k_fqn();
    if (m != static_cast<int>(basis.size())) return false;
    if (!(intersect(c, d) == d)) return false;
    if (m == 1) return is_invertible(d.basis()[0]);
    const auto mrd = is_mrd(d, MrdOptions{budget, 100'000, 0, 1});
    if (mrd.status == MrdStatus::VerifiedFalse) return false;
    return shift_intersection_dim(d, s) == m - 1;
}

std::uint64_t gaussian_binomial(int k, int m, std::uint64_t base) {
    if (m < 0 || m > k) return 0;
    // Pascal-type recurrence [k, m] = [k-1, m-1] + base^m [k-1, m], saturating.
    std::vector<std::uint64_t> prev(k + 1, 0), cur(k + 1, 0);
    prev[0] = 1;
    auto sat_mul = [](std::uint64_t a, std::uint64_t b) {
        return (a != 0 && b > kSaturated / a) ? kSaturated : a * b;
    };
    auto sat_add = [](std::uint64_t a, std::uint64_t b) { return a > kSaturated - b ? kSaturated : a + b; };
    for (int kk = 1; kk <= k; ++kk) {
        std::fill(cur.begin(), cur.end(), 0);
        cur[0] = 1;
        std::uint64_t bm = 1;
        for (int mm = 1; mm <= kk; ++mm) {
            bm = sat_mul(bm, base);
            cur[mm] = sat_add(prev[mm - 1], sat_mul(bm, prev[mm]));
        }
        prev = cur;
    }
    return prev[m];
}

bool has_gabidulin_subcode_bruteforce(const RdCode& c, int m, std::uint64_t budget) {
    const int k = c.k_fqn();
    const auto& f = c.field();
    if (m < 1 || m > k) return false;
    if (gaussian_binomial(k, m, f.order()) > budget) throw Error(Errc::BudgetExceeded, "too many subspaces");
    const auto basis = c.basis();
    const std::uint32_t a = f.order();
    auto elem = [&](std::uint32_t d) { return d == 0 ? f.zero() : f.from_log(d - 1); };

    // Enumerate m x k rref matrices: pivot set, then free entries.
    std::vector<int> piv(m);
    std::iota(piv.begin(), piv.end(), 0);
    for (;;) {
        std::vector<std::pair<int, int>> free;
        for (int r = 0; r < m; ++r)
            for (int col = piv[r] + 1; col < k; ++col)
                if (std::find(piv.begin(), piv.end(), col) == piv.end()) free.emplace_back(r, col);
        std::vector<std::uint32_t> digits(free.size(), 0);
        for (;;) {
            std::vector<LinearizedPoly> gens;
            for (int r = 0; r < m; ++r) {
                LinearizedPoly g = basis[piv[r]];
                for (std::size_t t = 0; t < free.size(); ++t)
                    if (free[t].first == r && digits[t] != 0) g = g + scale(elem(digits[t]), basis[free[t].second]);
                gens.push_back(g);
            }
            const auto d = from_span_fqn(c.ctx(), gens);
            bool ok = false;
            if (m == 1) {
                ok = is_invertible(gens[0]);
            } else if (is_mrd(d, MrdOptions{kSaturated, 0, 0, 1}).status == MrdStatus::VerifiedTrue) {
                for (int s : admissible_shifts(c.n()))
                    if (shift_intersection_dim(d, s) == m - 1) ok = true;
            }
            if (ok) return true;
            std::size_t t = 0;
            while (t < digits.size() && ++digits[t] == a) digits[t++] = 0;
            if (t == digits.size()) break;
        }
        int i = m - 1;
        while (i >= 0 && piv[i] == k - m + i) --i;
        if (i < 0) break;
        ++piv[i];
        for (int j = i + 1; j < m; ++j) piv[j] = piv[j - 1] + 1;
    }
    return false;
}

Fingerprint fingerprint(const RdCode& c, std::uint64_t seed, std::uint64_t samples) {
    Fingerprint fp;
    fp.h = h_invariant(c).value;
    fp.l_exp = left_idealiser(c, seed).order_exponent;
    fp.r_exp = right_idealiser(c, seed).order_exponent;
    const auto hist = sample_rank_histogram(c, samples, seed);
    for (std::size_t r = 0; r < hist.size(); ++r)
        if (samples > 0 && static_cast<double>(hist[r]) >= kProfileThreshold * static_cast<double>(samples))
            fp.rank_profile.insert(static_cast<int>(r));
    return fp;
}

std::string to_string(const Fingerprint& f) {
    std::ostringstream os;
    os << "h=" << f.h << " L=" << f.l_exp << " R=" << f.r_exp << " ranks={";
    bool first = true;
    for (int r : f.rank_profile) {
        os << (first ? "" : ",") << r;
        first = false;
    }
    os << "}";
    return os.str();
}

InvariantReport compute_report(const RdCode& c, const std::string& label, const IndexOptions& opt) {
    InvariantReport r;
    r.family = label;
    r.q = c.field().q();
    r.n = c.n();
    r.k = c.dim();
    r.h = h_invariant(c);
    if (c.is_fqn_linear()) {
        r.ind = gabidulin_index(c, opt);
    } else {
        r.ind.status = IndexStatus::BudgetLimited;
        r.ind.upper = c.dim_fq() / std::max(1, c.n());
    }
    r.left = left_idealiser(c, opt.seed);
    r.right = right_idealiser(c, opt.seed);
    r.mrd = is_mrd(c, MrdOptions{opt.budget, 100'000, opt.seed, opt.workers});
    return r;
}

Table1Row judge_row(const FamilySpec& spec, const Fixture& expected, InvariantReport report) {
    Table1Row row;
    row.spec = spec;
    row.expected = expected;
    row.report = std::move(report);
    const auto& rep = row.report;
    const auto& ex = row.expected;
    if (ex.h) row.h_match = rep.h.value == *ex.h;
    if (ex.r_exp) row.r_match = rep.right.order_exponent == *ex.r_exp && rep.right.is_field;
    bool all_certified = true;
    if (ex.ind) {
        if (rep.ind.status == IndexStatus::Certified) {
            row.ind_match = rep.ind.lower == *ex.ind;
        } else {
            all_certified = false;
            row.ind_match = rep.ind.lower <= *ex.ind && *ex.ind <= rep.ind.upper;
        }
    }
    row.fixture_match = row.h_match && row.r_match && row.ind_match;
    row.verdict = !row.fixture_match ? "mismatch" : all_certified ? "match" : "consistent";
    return row;
}

Table1Row table1_row(const FamilySpec& spec, const IndexOptions& opt) {
    const auto built = build_family(spec, opt.budget);
    return judge_row(built.spec, built.expected, compute_report(built.code, describe(built.spec), opt));
}

MrdFraction mrd_fraction(const ContextPtr& ctx, int k, int trials, std::uint64_t budget, std::uint64_t seed) {
    if (trials < 1) throw Error(Errc::PreconditionViolated, "trials must be positive");
    if (k < 1 || k > ctx->n()) throw Error(Errc::PreconditionViolated, "k must satisfy 1 <= k <= n");
    Rng rng(seed);
    MrdFraction out;
    for (int t = 0; t < trials; ++t) {
        const auto c = random_code(ctx, k, ScalarMode::FqnLinearLeft, rng);
        const auto res = is_mrd(c, MrdOptions{budget, 0, 0, 1});
        if (!res.exhaustive) throw Error(Errc::BudgetExceeded, "MRD check does not fit the budget");
        ++out.trials;
        if (res.status == MrdStatus::VerifiedTrue) ++out.mrd;
    }
    return out;
}

}  // namespace rankmetric
