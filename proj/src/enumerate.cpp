#include "rankmetric/enumerate.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace rankmetric {

namespace {

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
    if (a == 0 || b == 0) return 0;
    if (a > kSaturated / b) return kSaturated;
    return a * b;
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) { return a > kSaturated - b ? kSaturated : a + b; }

std::uint64_t sat_pow(std::uint64_t a, int e) {
    std::uint64_t r = 1;
    for (int i = 0; i < e; ++i) r = sat_mul(r, a);
    return r;
}

std::vector<Log> scalar_alphabet(const RdCode& c) {
    const auto& f = c.field();
    std::vector<Log> a;
    if (c.is_fqn_linear()) {
        a.reserve(f.order());
        a.push_back(kZeroLog);
        for (Log l = 0; l < f.group_order(); ++l) a.push_back(l);
    } else {
        for (auto e : f.fq_elements()) a.push_back(e.log());
    }
    return a;
}

std::uint64_t projective_count_for(std::uint64_t alphabet, int dim) {
    std::uint64_t total = 0;
    for (int l = 0; l < dim; ++l) total = sat_add(total, sat_pow(alphabet, dim - 1 - l));
    return total;
}

// Evaluations of the basis at the F_q-basis plus a rank routine on them.
struct Kernel {
    const FieldContext& f;
    int n;
    int d;
    std::vector<Log> alphabet;
    std::vector<Log> evals;          // d x n
    std::vector<std::uint8_t> bits;  // q = 2: packed coordinates per log slot
    std::uint64_t count;

    explicit Kernel(const RdCode& c)
        : f(c.field()), n(c.n()), d(c.dim()), alphabet(scalar_alphabet(c)), evals(), count(0) {
        const auto basis = c.basis();
        evals.resize(static_cast<std::size_t>(d) * n);
        for (int r = 0; r < d; ++r)
            for (int j = 0; j < n; ++j) evals[r * n + j] = evaluate(basis[r], f.fq_basis()[j]).log();
        count = projective_count_for(alphabet.size(), d);
        if (f.q() == 2 && n <= 8) {
            bits.resize(f.order());
            std::uint8_t col[8];
            for (std::uint32_t slot = 0; slot < f.order(); ++slot) {
                const Log l = slot == f.group_order() ? kZeroLog : slot;
                f.fq_coordinates_log(l, col);
                std::uint8_t v = 0;
                for (int i = 0; i < n; ++i) v |= static_cast<std::uint8_t>(col[i] << i);
                bits[slot] = v;
            }
        }
    }

    int rank_of(const Log* v) const {
        if (!bits.empty()) {
            std::uint8_t basis[8] = {0};
            int r = 0;
            for (int j = 0; j < n; ++j) {
                std::uint8_t x = bits[v[j] == kZeroLog ? f.group_order() : v[j]];
                for (int b = n - 1; b >= 0 && x; --b) {
                    if (!((x >> b) & 1)) continue;
                    if (basis[b]) {
                        x ^= basis[b];
                    } else {
                        basis[b] = x;
                        ++r;
                        break;
                    }
                }
            }
            return r;
        }
        std::uint8_t buf[256];
        std::vector<std::uint8_t> heap;
        std::uint8_t* m = buf;
        if (n * n > 256) {
            heap.resize(static_cast<std::size_t>(n) * n);
            m = heap.data();
        }
        for (int j = 0; j < n; ++j) f.fq_coordinates_log(v[j], &m[j * n]);
        return small_rank(m, n, f.subfield());
    }

    void eval_digits(const std::uint32_t* digits, Log* out) const {
        std::fill(out, out + n, kZeroLog);
        for (int r = 0; r < d; ++r) {
            const Log a = alphabet[digits[r]];
            if (a == kZeroLog) continue;
            for (int j = 0; j < n; ++j) out[j] = f.add_log(out[j], f.mul_log(a, evals[r * n + j]));
        }
    }

    std::vector<std::uint32_t> decode(std::uint64_t index) const {
        std::vector<std::uint32_t> digits(d, 0);
        const std::uint64_t a = alphabet.size();
        int l = 0;
        for (; l < d; ++l) {
            const std::uint64_t block = sat_pow(a, d - 1 - l);
            if (index < block) break;
            index -= block;
        }
        if (l == d) throw Error(Errc::BadParams, "projective index out of range");
        digits[l] = 1;
        for (int pos = d - 1; pos > l; --pos) {
            digits[pos] = static_cast<std::uint32_t>(index % a);
            index /= a;
        }
        return digits;
    }

    // Visits indices [begin, end) in order; visit(index, digits, rank) returns
    // false to stop. Also stops once the index reaches *stop.
    template <class Visit>
    void scan(std::uint64_t begin, std::uint64_t end, const std::atomic<std::uint64_t>* stop, Visit&& visit) const {
        if (begin >= end) return;
        const std::uint32_t a = static_cast<std::uint32_t>(alphabet.size());
        auto digits = decode(begin);
        int lead = 0;
        while (digits[lead] == 0) ++lead;
        std::vector<Log> partial(static_cast<std::size_t>(d + 1) * n, kZeroLog);
        auto refresh = [&](int from) {
            for (int r = from; r < d; ++r) {
                const Log c = alphabet[digits[r]];
                const Log* prev = &partial[static_cast<std::size_t>(r) * n];
                Log* next = &partial[static_cast<std::size_t>(r + 1) * n];
                const Log* e = &evals[static_cast<std::size_t>(r) * n];
                if (c == kZeroLog) {
                    std::copy(prev, prev + n, next);
                } else {
                    for (int j = 0; j < n; ++j) next[j] = f.add_log(prev[j], f.mul_log(c, e[j]));
                }
            }
        };
        refresh(0);
        for (std::uint64_t idx = begin;;) {
            if (stop && idx >= stop->load(std::memory_order_relaxed)) return;
            const int r = rank_of(&partial[static_cast<std::size_t>(d) * n]);
            if (!visit(idx, digits, r)) return;
            if (++idx >= end) return;
            int pos = d - 1;
            while (pos > lead) {
                if (++digits[pos] < a) break;
                digits[pos] = 0;
                --pos;
            }
            if (pos == lead) {
                digits[lead] = 0;
                ++lead;
                digits[lead] = 1;
            }
            refresh(pos);
        }
    }
};

// Splits [0, count) into contiguous chunks, one per worker.
template <class Body>
void run_chunks(std::uint64_t count, int workers, Body&& body) {
    const std::uint64_t w = std::max<std::uint64_t>(1, std::min<std::uint64_t>(workers, count / 4096 + 1));
    if (w == 1) {
        body(0, 0, count);
        return;
    }
    std::vector<std::thread> threads;
    for (std::uint64_t i = 0; i < w; ++i) {
        const std::uint64_t b = count / w * i;
        const std::uint64_t e = i + 1 == w ? count : count / w * (i + 1);
        threads.emplace_back([&body, i, b, e] { body(static_cast<int>(i), b, e); });
    }
    for (auto& t : threads) t.join();
}

void require_budget(std::uint64_t count, std::uint64_t budget) {
    if (count > budget)
        throw Error(Errc::BudgetExceeded, "projective enumeration of " +
                                              (count == kSaturated ? std::string("> 2^64") : std::to_string(count)) +
                                              " codewords exceeds budget " + std::to_string(budget));
}

template <class Pred>
std::optional<LinearizedPoly> find_first(const RdCode& c, const EnumOptions& opt, Pred pred) {
    const Kernel k(c);
    require_budget(k.count, opt.budget);
    std::atomic<std::uint64_t> best{k.count};
    run_chunks(k.count, opt.workers, [&](int, std::uint64_t b, std::uint64_t e) {
        k.scan(b, e, &best, [&](std::uint64_t idx, const std::vector<std::uint32_t>&, int r) {
            if (!pred(r)) return true;
            std::uint64_t cur = best.load();
            while (idx < cur && !best.compare_exchange_weak(cur, idx)) {
            }
            return false;
        });
    });
    if (best.load() == k.count) return std::nullopt;
    return CodewordEnumerator(c).at(best.load());
}

}  // namespace

int small_rank(std::uint8_t* m, int n, const SmallField& f) {
    int r = 0;
    for (int c = 0; c < n && r < n; ++c) {
        int piv = r;
        while (piv < n && m[piv * n + c] == 0) ++piv;
        if (piv == n) continue;
        if (piv != r)
            for (int j = 0; j < n; ++j) std::swap(m[piv * n + j], m[r * n + j]);
        const auto inv = f.inv(m[r * n + c]);
        for (int i = r + 1; i < n; ++i) {
            const auto x = m[i * n + c];
            if (x == 0) continue;
            const auto factor = f.mul(x, inv);
            for (int j = c; j < n; ++j) m[i * n + j] = f.sub(m[i * n + j], f.mul(factor, m[r * n + j]));
        }
        ++r;
    }
    return r;
}

std::uint64_t projective_count(const RdCode& c) {
    const std::uint64_t a = c.is_fqn_linear() ? c.field().order() : static_cast<std::uint64_t>(c.field().q());
    return projective_count_for(a, c.dim());
}

std::uint64_t codeword_count(const RdCode& c) { return sat_pow(c.field().q(), c.dim_fq()); }

CodewordEnumerator::CodewordEnumerator(const RdCode& c)
    : code_(&c), basis_(c.basis()), alphabet_(scalar_alphabet(c)), dim_(c.dim()),
      count_(projective_count_for(alphabet_.size(), dim_)) {}

std::vector<std::uint32_t> CodewordEnumerator::digits_at(std::uint64_t index) const {
    if (index >= count_) throw Error(Errc::BadParams, "projective index out of range");
    std::vector<std::uint32_t> digits(dim_, 0);
    const std::uint64_t a = alphabet_.size();
    int l = 0;
    for (; l < dim_; ++l) {
        const std::uint64_t block = sat_pow(a, dim_ - 1 - l);
        if (index < block) break;
        index -= block;
    }
    digits[l] = 1;
    for (int pos = dim_ - 1; pos > l; --pos) {
        digits[pos] = static_cast<std::uint32_t>(index % a);
        index /= a;
    }
    return digits;
}

LinearizedPoly CodewordEnumerator::codeword(std::span<const std::uint32_t> digits) const {
    const auto& ctx = code_->ctx();
    LinearizedPoly f(ctx);
    for (int r = 0; r < dim_; ++r) {
        const Log a = alphabet_[digits[r]];
        if (a == kZeroLog) continue;
        f = f + scale(ctx->from_log(a), basis_[r]);
    }
    return f;
}

std::vector<LinearizedPoly> CodewordEnumerator::all(std::uint64_t budget) const {
    require_budget(count_, budget);
    std::vector<LinearizedPoly> out;
    out.reserve(count_);
    for (std::uint64_t i = 0; i < count_; ++i) out.push_back(at(i));
    return out;
}

int min_distance(const RdCode& c, const EnumOptions& opt) {
    if (c.is_zero()) throw Error(Errc::PreconditionViolated, "minimum distance of the zero code");
    const Kernel k(c);
    require_budget(k.count, opt.budget);
    const int w = opt.workers < 1 ? 1 : opt.workers;
    std::vector<int> mins(w, c.n());
    run_chunks(k.count, w, [&](int id, std::uint64_t b, std::uint64_t e) {
        int& m = mins[id];
        k.scan(b, e, nullptr, [&](std::uint64_t, const std::vector<std::uint32_t>&, int r) {
            m = std::min(m, r);
            return m > 1;
        });
    });
    return *std::min_element(mins.begin(), mins.end());
}

RankDistribution rank_distribution(const RdCode& c, const EnumOptions& opt) {
    const Kernel k(c);
    require_budget(k.count, opt.budget);
    const int w = opt.workers < 1 ? 1 : opt.workers;
    std::vector<RankDistribution> parts(w, RankDistribution(c.n() + 1, 0));
    run_chunks(k.count, w, [&](int id, std::uint64_t b, std::uint64_t e) {
        auto& h = parts[id];
        k.scan(b, e, nullptr, [&](std::uint64_t, const std::vector<std::uint32_t>&, int r) {
            ++h[r];
            return true;
        });
    });
    RankDistribution out(c.n() + 1, 0);
    for (const auto& h : parts)
        for (std::size_t r = 0; r < h.size(); ++r) out[r] += h[r];
    const std::uint64_t scale_by = k.alphabet.size() - 1;
    for (auto& v : out) v *= scale_by;
    out[0] = 1;
    return out;
}

std::optional<LinearizedPoly> find_rank_below(const RdCode& c, int r, const EnumOptions& opt) {
    return find_first(c, opt, [r](int rank) { return rank < r; });
}

std::optional<LinearizedPoly> find_rank_at_least(const RdCode& c, int r, const EnumOptions& opt) {
    return find_first(c, opt, [r](int rank) { return rank >= r; });
}

namespace {

// Uniform nonzero digit vectors; calls visit(digits, rank) until it returns false.
template <class Visit>
void sample_codewords(const RdCode& c, std::uint64_t samples, std::uint64_t seed, Visit&& visit) {
    if (c.is_zero()) return;
    const Kernel k(c);
    Rng rng(seed);
    std::vector<std::uint32_t> digits(k.d);
    std::vector<Log> v(k.n);
    for (std::uint64_t s = 0; s < samples; ++s) {
        bool nonzero = false;
        while (!nonzero) {
            for (auto& x : digits) {
                x = static_cast<std::uint32_t>(rng.below(k.alphabet.size()));
                nonzero = nonzero || x != 0;
            }
        }
        k.eval_digits(digits.data(), v.data());
        if (!visit(digits, k.rank_of(v.data()))) return;
    }
}

}  // namespace

int sample_min_rank(const RdCode& c, std::uint64_t samples, std::uint64_t seed) {
    int m = c.n();
    sample_codewords(c, samples, seed, [&](const std::vector<std::uint32_t>&, int r) {
        m = std::min(m, r);
        return true;
    });
    return m;
}

std::vector<std::uint64_t> sample_rank_histogram(const RdCode& c, std::uint64_t samples, std::uint64_t seed) {
    std::vector<std::uint64_t> h(c.n() + 1, 0);
    sample_codewords(c, samples, seed, [&](const std::vector<std::uint32_t>&, int r) {
        ++h[r];
        return true;
    });
    return h;
}

std::optional<LinearizedPoly> sample_rank_at_least(const RdCode& c, int r, std::uint64_t samples, std::uint64_t seed) {
    std::optional<LinearizedPoly> found;
    const CodewordEnumerator en(c);
    sample_codewords(c, samples, seed, [&](const std::vector<std::uint32_t>& digits, int rank) {
        if (rank < r) return true;
        found = en.codeword(digits);
        return false;
    });
    return found;
}

const char* mrd_status_name(MrdStatus s) noexcept {
    switch (s) {
        case MrdStatus::VerifiedTrue: return "verified_true";
        case MrdStatus::VerifiedFalse: return "verified_false";
        case MrdStatus::SampledConsistent: return "sampled_consistent";
    }
    return "?";
}

std::optional<int> designed_distance(const RdCode& c) {
    const int n = c.n();
    if (c.is_fqn_linear()) return n - c.k_fqn() + 1;
    if (c.dim_fq() % n != 0) return std::nullopt;
    return n - c.dim_fq() / n + 1;
}

MrdResult is_mrd(const RdCode& c, const MrdOptions& opt) {
    MrdResult res;
    const auto dd = designed_distance(c);
    if (!dd) {
        res.status = MrdStatus::VerifiedFalse;
        res.exhaustive = true;
        return res;
    }
    res.designed_distance = *dd;
    if (c.is_zero() || *dd <= 1) {
        res.status = MrdStatus::VerifiedTrue;
        res.exhaustive = true;
        return res;
    }
    const std::uint64_t count = projective_count(c);
    if (count <= opt.budget) {
        res.exhaustive = true;
        res.checked = count;
        res.witness = find_rank_below(c, *dd, EnumOptions{opt.budget, opt.workers});
        res.status = res.witness ? MrdStatus::VerifiedFalse : MrdStatus::VerifiedTrue;
        return res;
    }
    const CodewordEnumerator en(c);
    sample_codewords(c, opt.samples, opt.seed, [&](const std::vector<std::uint32_t>& digits, int r) {
        ++res.checked;
        if (r >= *dd) return true;
        res.witness = en.codeword(digits);
        return false;
    });
    res.status = res.witness ? MrdStatus::VerifiedFalse : MrdStatus::SampledConsistent;
    return res;
}

}  // namespace rankmetric
