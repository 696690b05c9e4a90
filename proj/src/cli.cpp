#include "rankmetric/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "rankmetric/serialize.hpp"

namespace rankmetric::cli {

namespace {

struct FamilyFlags {
    std::string family;
    std::string descriptor;
    std::string code_file;
    std::optional<int> k;
    std::optional<int> s;
    std::optional<int> h;
    std::string eta;
    std::string delta;
};

struct Extra {
    int trials = 500;
    std::uint64_t samples = 100'000;
    std::uint64_t random_samples = 1'000'000;
    std::vector<std::string> only;
};

// q from --q and --e: a prime --q with --e > 1 means q = p^e.
int resolve_q(const RunConfig& cfg) {
    if (cfg.q == 0) {
        if (cfg.e != 0) throw Error(Errc::BadParams, "--e needs --q");
        return 0;
    }
    const auto [p, e] = split_prime_power(cfg.q);
    if (cfg.e == 0 || cfg.e == e) return cfg.q;
    if (e != 1) throw Error(Errc::BadParams, fmt::format("--q {} is not p^{}", cfg.q, cfg.e));
    int q = 1;
    for (int i = 0; i < cfg.e; ++i) q *= p;
    return q;
}

FamilySpec family_spec(const RunConfig& cfg, const FamilyFlags& ff) {
    FamilySpec spec;
    if (!ff.descriptor.empty()) {
        spec = parse_descriptor(ff.descriptor);
    } else if (!ff.family.empty()) {
        const auto tag = parse_family_name(ff.family);
        if (!tag) throw Error(Errc::ParseError, "unknown family '" + ff.family + "'");
        spec.tag = *tag;
    } else {
        throw Error(Errc::BadParams, "give --family, --spec or --code");
    }
    if (const int q = resolve_q(cfg); q != 0) spec.q = q;
    if (cfg.n != 0) spec.n = cfg.n;
    if (ff.k) spec.k = *ff.k;
    if (ff.s) spec.s = *ff.s;
    if (ff.h) spec.h_twist = *ff.h;
    if (!ff.eta.empty()) spec.eta = ff.eta;
    if (!ff.delta.empty()) spec.delta = ff.delta;
    return resolve(spec);
}

struct Subject {
    RdCode code;
    std::string label;
    std::optional<BuiltFamily> built;
};

Subject load_subject(const RunConfig& cfg, const FamilyFlags& ff) {
    if (!ff.code_file.empty()) {
        std::ifstream in(ff.code_file);
        if (!in) throw Error(Errc::ParseError, "cannot open " + ff.code_file);
        Json j;
        try {
            in >> j;
        } catch (const Json::exception& e) {
            throw Error(Errc::ParseError, std::string("bad JSON in ") + ff.code_file + ": " + e.what());
        }
        return {code_from_json(j), ff.code_file, std::nullopt};
    }
    auto built = build_family(family_spec(cfg, ff), cfg.budget);
    auto label = describe(built.spec);
    auto code = built.code;
    return {std::move(code), std::move(label), std::move(built)};
}

MrdOptions mrd_options(const RunConfig& cfg, const Extra& x) {
    return MrdOptions{cfg.budget, x.samples, cfg.seed, cfg.workers};
}

IndexOptions index_options(const RunConfig& cfg, const Extra& x) {
    return IndexOptions{cfg.budget, cfg.seed, x.random_samples, cfg.workers};
}

void emit_json(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

std::string opt_str(const std::optional<int>& v) { return v ? std::to_string(*v) : "-"; }

int cmd_construct(const RunConfig& cfg, const FamilyFlags& ff, const Extra& x, std::ostream& out) {
    const auto subj = load_subject(cfg, ff);
    const auto& c = subj.code;
    const auto mrd = is_mrd(c, mrd_options(cfg, x));
    if (cfg.format == Format::Json) {
        Json j;
        j["family"] = subj.label;
        j["dim_fq"] = c.dim_fq();
        j["dim"] = c.dim();
        if (subj.built && subj.built->eta) j["eta"] = c.field().to_digits(*subj.built->eta);
        if (subj.built && subj.built->delta) j["delta"] = c.field().to_digits(*subj.built->delta);
        j["mrd"] = mrd_to_json(mrd);
        j["code"] = code_to_json(c);
        emit_json(out, j);
    } else if (cfg.format == Format::Csv) {
        out << "family,scalars,dim_fq,dim,mrd,designed_distance\n";
        out << fmt::format("{},{},{},{},{},{}\n", subj.label, scalar_mode_name(c.scalars()), c.dim_fq(), c.dim(),
                           mrd_status_name(mrd.status), mrd.designed_distance);
    } else {
        out << fmt::format("{}  scalars={}  dim_fq={}  dim={}\n", subj.label, scalar_mode_name(c.scalars()), c.dim_fq(),
                           c.dim());
        out << fmt::format("mrd: {} (d = {}, {} checked{})\n", mrd_status_name(mrd.status), mrd.designed_distance,
                           mrd.checked, mrd.exhaustive ? ", exhaustive" : "");
        for (const auto& f : c.basis()) out << "  " << f.to_string() << "\n";
    }
    return 0;
}

void report_table(std::ostream& out, const InvariantReport& r) {
    out << fmt::format("{}\n", r.family);
    out << fmt::format("  h      {} (j = {}{})\n", r.h.value, r.h.arg, r.h.over_fq ? ", over F_q" : "");
    out << fmt::format("  ind    [{}, {}] {}\n", r.ind.lower, r.ind.upper, index_status_name(r.ind.status));
    out << fmt::format("  L      q^{}{}\n", r.left.order_exponent, r.left.is_field ? " field" : "");
    out << fmt::format("  R      q^{}{}\n", r.right.order_exponent, r.right.is_field ? " field" : "");
    out << fmt::format("  mrd    {}\n", mrd_status_name(r.mrd.status));
}

constexpr const char* kReportCsvHeader = "family,q,n,k,h,ind_lo,ind_hi,ind_status,L_exp,R_exp,mrd";

std::string report_csv(const InvariantReport& r) {
    return fmt::format("{},{},{},{},{},{},{},{},{},{},{}", r.family, r.q, r.n, r.k, r.h.value, r.ind.lower, r.ind.upper,
                       index_status_name(r.ind.status), r.left.order_exponent, r.right.order_exponent,
                       mrd_status_name(r.mrd.status));
}

int cmd_invariants(const RunConfig& cfg, const FamilyFlags& ff, const Extra& x, std::ostream& out) {
    const auto subj = load_subject(cfg, ff);
    const auto r = compute_report(subj.code, subj.label, index_options(cfg, x));
    if (cfg.format == Format::Json) {
        auto j = report_to_json(r);
        if (subj.built && (subj.built->expected.h || subj.built->expected.ind || subj.built->expected.r_exp))
            j["fixture_match"] = judge_row(subj.built->spec, subj.built->expected, r).fixture_match;
        emit_json(out, j);
    }
    else if (cfg.format == Format::Csv) out << kReportCsvHeader << "\n" << report_csv(r) << "\n";
    else report_table(out, r);
    return 0;
}

int cmd_table1(const RunConfig& cfg, const Extra& x, std::ostream& out) {
    std::vector<Family> fams;
    if (x.only.empty()) {
        fams.assign(kAllFamilies.begin(), kAllFamilies.end());
    } else {
        for (const auto& name : x.only) {
            const auto f = parse_family_name(name);
            if (!f) throw Error(Errc::ParseError, "unknown family '" + name + "'");
            fams.push_back(*f);
        }
    }
    std::vector<Table1Row> rows;
    for (auto f : fams) rows.push_back(table1_row(default_spec(f), index_options(cfg, x)));
    bool mismatch = false;
    for (const auto& r : rows) mismatch = mismatch || r.verdict == "mismatch";

    if (cfg.format == Format::Json) {
        Json j = Json::array();
        for (const auto& r : rows) j.push_back(table1_row_to_json(r));
        emit_json(out, j);
    } else if (cfg.format == Format::Csv) {
        out << kReportCsvHeader << ",exp_ind,exp_h,exp_R,verdict\n";
        for (const auto& r : rows)
            out << report_csv(r.report) << "," << opt_str(r.expected.ind) << "," << opt_str(r.expected.h) << ","
                << opt_str(r.expected.r_exp) << "," << r.verdict << "\n";
    } else {
        out << fmt::format("{:<4} {:>2} {:>2} {:>2} | {:>3} {:>3} | {:>8} {:>4} {:<15} | {:>3} {:>3} | {}\n", "fam", "q",
                           "n", "k", "h", "exp", "ind", "exp", "status", "R", "exp", "verdict");
        for (const auto& r : rows) {
            const auto& p = r.report;
            out << fmt::format("{:<4} {:>2} {:>2} {:>2} | {:>3} {:>3} | {:>8} {:>4} {:<15} | {:>3} {:>3} | {}\n",
                               family_name(r.spec.tag), p.q, p.n, p.k, p.h.value, opt_str(r.expected.h),
                               fmt::format("[{},{}]", p.ind.lower, p.ind.upper), opt_str(r.expected.ind),
                               index_status_name(p.ind.status), p.right.order_exponent, opt_str(r.expected.r_exp),
                               r.verdict);
        }
    }
    return mismatch ? 1 : 0;
}

int cmd_check_gab(const RunConfig& cfg, const FamilyFlags& ff, const Extra& x, std::ostream& out) {
    const auto subj = load_subject(cfg, ff);
    const auto r = is_equiv_gabidulin(subj.code, mrd_options(cfg, x));
    if (cfg.format == Format::Json) {
        Json j;
        j["family"] = subj.label;
        j["gabidulin"] = r.s.has_value();
        j["s"] = r.s ? Json(*r.s) : Json(nullptr);
        j["mrd"] = mrd_status_name(r.mrd);
        j["mrd_sampled"] = r.mrd_sampled;
        emit_json(out, j);
    } else if (cfg.format == Format::Csv) {
        out << "family,gabidulin,s,mrd\n" << fmt::format("{},{},{},{}\n", subj.label, r.s.has_value(), opt_str(r.s), mrd_status_name(r.mrd));
    } else {
        out << subj.label << ": " << (r.s ? "equivalent to G_{k," + std::to_string(*r.s) + "}" : "not Gabidulin") << " ("
            << mrd_status_name(r.mrd) << ")\n";
    }
    return 0;
}

int cmd_check_twisted(const RunConfig& cfg, const FamilyFlags& ff, const Extra& x, std::ostream& out) {
    const auto subj = load_subject(cfg, ff);
    const auto r = is_equiv_twisted(subj.code, mrd_options(cfg, x));
    const auto& f = subj.code.field();
    if (cfg.format == Format::Json) {
        Json j;
        j["family"] = subj.label;
        j["twisted"] = r.witness.has_value();
        if (r.witness) {
            const auto& w = *r.witness;
            j["witness"] = {{"s", w.s},
                            {"p", poly_to_json(w.p)},
                            {"q", poly_to_json(w.q_complement)},
                            {"eta", f.to_digits(w.eta)},
                            {"eta_norm", f.to_digits(f.rel_norm(w.eta))}};
        } else {
            j["witness"] = nullptr;
        }
        Json att = Json::array();
        for (const auto& a : r.attempts) att.push_back({{"s", a.s}, {"step", twisted_step_name(a.step)}});
        j["attempts"] = std::move(att);
        j["mrd_sampled"] = r.mrd_sampled;
        emit_json(out, j);
    } else if (cfg.format == Format::Csv) {
        out << "s,step\n";
        for (const auto& a : r.attempts) out << a.s << "," << twisted_step_name(a.step) << "\n";
    } else {
        out << subj.label << ": " << (r.witness ? "twisted Gabidulin" : "not twisted Gabidulin") << "\n";
        for (const auto& a : r.attempts) out << "  s=" << a.s << " " << twisted_step_name(a.step) << "\n";
        if (r.witness) out << "  eta = " << f.to_digits(r.witness->eta) << "  p = " << r.witness->p.to_string() << "\n";
    }
    return 0;
}

int cmd_transform(const RunConfig& cfg, const FamilyFlags& ff, bool dual, std::ostream& out) {
    const auto subj = load_subject(cfg, ff);
    const auto c = dual ? delsarte_dual(subj.code) : adjoint_code(subj.code);
    if (cfg.format == Format::Table) {
        out << fmt::format("{} of {}  scalars={}  dim_fq={}\n", dual ? "dual" : "adjoint", subj.label,
                           scalar_mode_name(c.scalars()), c.dim_fq());
        for (const auto& f : c.basis()) out << "  " << f.to_string() << "\n";
    } else {
        emit_json(out, code_to_json(c));
    }
    return 0;
}

int cmd_rankdist(const RunConfig& cfg, const FamilyFlags& ff, const Extra& x, std::ostream& out, std::ostream& err) {
    const auto subj = load_subject(cfg, ff);
    const bool exhaustive = projective_count(subj.code) <= cfg.budget;
    const auto dist = exhaustive ? rank_distribution(subj.code, EnumOptions{cfg.budget, cfg.workers})
                                 : sample_rank_histogram(subj.code, x.samples, cfg.seed);
    if (!exhaustive) err << fmt::format("note: projective count exceeds the budget; {} sampled codewords\n", x.samples);
    if (cfg.format == Format::Json) {
        Json j;
        j["family"] = subj.label;
        j["sampled"] = !exhaustive;
        j["counts"] = dist;
        emit_json(out, j);
    } else {
        out << rank_distribution_csv(dist);
    }
    return 0;
}

int cmd_mindist(const RunConfig& cfg, const FamilyFlags& ff, const Extra& x, std::ostream& out) {
    const auto subj = load_subject(cfg, ff);
    const bool exhaustive = projective_count(subj.code) <= cfg.budget;
    const int d = exhaustive ? min_distance(subj.code, EnumOptions{cfg.budget, cfg.workers})
                             : sample_min_rank(subj.code, x.samples, cfg.seed);
    if (cfg.format == Format::Json) {
        Json j;
        j["family"] = subj.label;
        j["min_distance"] = d;
        j["sampled"] = !exhaustive;
        emit_json(out, j);
    } else if (cfg.format == Format::Csv) {
        out << "family,min_distance,sampled\n" << fmt::format("{},{},{}\n", subj.label, d, !exhaustive);
    } else {
        out << fmt::format("{}: d = {}{}\n", subj.label, d, exhaustive ? "" : " (sampled upper bound)");
    }
    return 0;
}

int cmd_sample_mrd(const RunConfig& cfg, const FamilyFlags& ff, const Extra& x, std::ostream& out) {
    const int q = resolve_q(cfg);
    if (q == 0 || cfg.n == 0) throw Error(Errc::BadParams, "sample-mrd needs --q and --n");
    const int k = ff.k.value_or(2);
    const auto r = mrd_fraction(context_for(q, cfg.n), k, x.trials, cfg.budget, cfg.seed);
    if (cfg.format == Format::Json) {
        Json j;
        j["q"] = q;
        j["n"] = cfg.n;
        j["k"] = k;
        j["seed"] = cfg.seed;
        j["trials"] = r.trials;
        j["mrd"] = r.mrd;
        j["fraction"] = r.fraction();
        emit_json(out, j);
    } else if (cfg.format == Format::Csv) {
        out << "q,n,k,seed,trials,mrd,fraction\n"
            << fmt::format("{},{},{},{},{},{},{:.6f}\n", q, cfg.n, k, cfg.seed, r.trials, r.mrd, r.fraction());
    } else {
        out << fmt::format("q={} n={} k={}: {}/{} MRD ({:.4f})\n", q, cfg.n, k, r.mrd, r.trials, r.fraction());
    }
    return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Rank-metric code toolkit: MRD families and their distinguishers", "rankmetric"};
    app.require_subcommand(1);
    app.set_help_flag("--help", "Print this help message and exit");

    RunConfig cfg;
    FamilyFlags ff;
    Extra x;
    std::string format = "json";

    app.add_option("--q", cfg.q, "Subfield order q");
    app.add_option("--e", cfg.e, "Extension degree of F_q over F_p");
    app.add_option("--n", cfg.n, "Extension degree n");
    app.add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
    app.add_option("--budget", cfg.budget, "Enumeration budget (projective points)")->envname("RANKMETRIC_BUDGET");
    app.add_option("--workers", cfg.workers, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv", "table"}))->capture_default_str();
    app.add_option("--out", cfg.out, "Write output to FILE");

    app.add_option("--family", ff.family, "Family: G H C1..C5 D1..D5");
    app.add_option("--spec", ff.descriptor, "Family descriptor, e.g. H:k=3,s=1,eta=g^1");
    app.add_option("--code", ff.code_file, "Code JSON file");
    app.add_option("--k", ff.k, "Dimension k");
    app.add_option("--s", ff.s, "Shift s");
    app.add_option("--h", ff.h, "Twist exponent h");
    app.add_option("--eta", ff.eta, "eta as g^i, 0 or a digit string");
    app.add_option("--delta", ff.delta, "delta as g^i or a digit string");
    app.add_option("--samples", x.samples, "Sample count when exhaustive search exceeds the budget")->capture_default_str();
    app.add_option("--random-samples", x.random_samples, "Random draws per index level beyond the budget")
        ->capture_default_str();

    const std::vector<std::pair<const char*, const char*>> commands = {
        {"construct", "Build a code and check MRD"},
        {"invariants", "h, Gabidulin index and idealisers"},
        {"table1", "Reproduce the distinguisher table"},
        {"check-gab", "Decide equivalence to a generalized Gabidulin code"},
        {"check-twisted", "Recover twisted Gabidulin parameters"},
        {"dual", "Delsarte dual"},
        {"adjoint", "Adjoint code"},
        {"rankdist", "Rank distribution"},
        {"sample-mrd", "MRD fraction of random codes"},
        {"mindist", "Minimum rank distance"},
    };
    for (const auto& [name, desc] : commands) {
        auto* sub = app.add_subcommand(name, desc);
        sub->fallthrough();
        sub->set_help_flag("--help", "Print this help message and exit");
        sub->callback([&cfg, name = std::string(name)] { cfg.command = name; });
        if (std::string(name) == "sample-mrd")
            sub->add_option("--trials", x.trials, "Random codes")->capture_default_str();
        if (std::string(name) == "table1") sub->add_option("--only", x.only, "Restrict to these families");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? 0 : 2;
    }
    cfg.format = format == "csv" ? Format::Csv : format == "table" ? Format::Table : Format::Json;
    if (cfg.budget == 0) cfg.budget = kDefaultBudget;

    std::ostringstream buf;
    int code = 0;
    try {
        const auto& c = cfg.command;
        if (c == "construct") code = cmd_construct(cfg, ff, x, buf);
        else if (c == "invariants") code = cmd_invariants(cfg, ff, x, buf);
        else if (c == "table1") code = cmd_table1(cfg, x, buf);
        else if (c == "check-gab") code = cmd_check_gab(cfg, ff, x, buf);
        else if (c == "check-twisted") code = cmd_check_twisted(cfg, ff, x, buf);
        else if (c == "dual") code = cmd_transform(cfg, ff, true, buf);
        else if (c == "adjoint") code = cmd_transform(cfg, ff, false, buf);
        else if (c == "rankdist") code = cmd_rankdist(cfg, ff, x, buf, err);
        else if (c == "sample-mrd") code = cmd_sample_mrd(cfg, ff, x, buf);
        else if (c == "mindist") code = cmd_mindist(cfg, ff, x, buf);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    if (cfg.out.empty()) {
        out << buf.str();
    } else {
        std::ofstream f(cfg.out);
        if (!f) {
            err << "error: cannot write " << cfg.out << "\n";
            return 2;
        }
        f << buf.str();
    }
    return code;
}

}  // namespace rankmetric::cli
