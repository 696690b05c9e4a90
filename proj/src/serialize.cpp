#include "rankmetric/serialize.hpp"

#include <sstream>

namespace rankmetric {

Json context_to_json(const FieldContext& ctx) {
    Json j;
    j["p"] = ctx.p();
    j["e"] = ctx.e();
    j["n"] = ctx.n();
    j["modulus"] = ctx.modulus();
    return j;
}

ContextPtr context_from_json(const Json& j) {
    try {
        auto ctx = FieldContext::get(j.at("p").get<int>(), j.at("e").get<int>(), j.at("n").get<int>());
        if (j.contains("modulus") && j.at("modulus").get<std::vector<int>>() != ctx->modulus())
            throw Error(Errc::ContextMismatch, "stored modulus differs from the canonical one");
        return ctx;
    } catch (const Json::exception& e) {
        throw Error(Errc::ParseError, std::string("bad context JSON: ") + e.what());
    }
}

Json poly_to_json(const LinearizedPoly& f) {
    Json j = Json::array();
    for (const auto& c : f.coeffs()) j.push_back(f.field().to_digits(c));
    return j;
}

LinearizedPoly poly_from_json(const ContextPtr& ctx, const Json& j) {
    if (!j.is_array() || static_cast<int>(j.size()) != ctx->n())
        throw Error(Errc::ParseError, "a q-polynomial needs an array of n element strings");
    std::vector<FieldElement> c;
    for (const auto& e : j) {
        if (!e.is_string()) throw Error(Errc::ParseError, "coefficients must be digit strings");
        c.push_back(ctx->from_digits(e.get<std::string>()));
    }
    return LinearizedPoly(ctx, std::move(c));
}

Json code_to_json(const RdCode& c) {
    Json j;
    j["ctx"] = context_to_json(c.field());
    j["scalars"] = scalar_mode_name(c.scalars());
    Json basis = Json::array();
    for (const auto& f : c.basis()) basis.push_back(poly_to_json(f));
    j["basis"] = std::move(basis);
    return j;
}

RdCode code_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("ctx") || !j.contains("scalars") || !j.contains("basis"))
        throw Error(Errc::ParseError, "code JSON needs ctx, scalars and basis");
    auto ctx = context_from_json(j.at("ctx"));
    std::vector<LinearizedPoly> gens;
    for (const auto& p : j.at("basis")) gens.push_back(poly_from_json(ctx, p));
    const auto mode = j.at("scalars").get<std::string>();
    if (mode == "fqn") return from_span_fqn(ctx, gens);
    if (mode == "fq") return from_span_fq(ctx, gens);
    throw Error(Errc::ParseError, "scalars must be \"fq\" or \"fqn\"");
}

Json mrd_to_json(const MrdResult& r) {
    Json j;
    j["status"] = mrd_status_name(r.status);
    j["designed_distance"] = r.designed_distance;
    j["checked"] = r.checked;
    j["exhaustive"] = r.exhaustive;
    j["witness"] = r.witness ? poly_to_json(*r.witness) : Json(nullptr);
    return j;
}

namespace {

const char* outcome_name(LevelOutcome o) {
    switch (o) {
        case LevelOutcome::Found: return "found";
        case LevelOutcome::Absent: return "absent";
        case LevelOutcome::Unknown: return "unknown";
    }
    return "?";
}

template <class T>
Json opt_json(const std::optional<T>& v) {
    return v ? Json(*v) : Json(nullptr);
}

}  // namespace

Json index_to_json(const IndexResult& r) {
    Json j;
    j["lower"] = r.lower;
    j["upper"] = r.upper;
    j["status"] = index_status_name(r.status);
    j["witness_s"] = r.witness_s;
    Json w = Json::array();
    for (const auto& f : r.witness) w.push_back(poly_to_json(f));
    j["witness"] = std::move(w);
    Json levels = Json::array();
    for (const auto& l : r.levels) levels.push_back({{"m", l.m}, {"outcome", outcome_name(l.outcome)}, {"reason", l.reason}});
    j["levels"] = std::move(levels);
    return j;
}

Json idealiser_to_json(const IdealiserResult& r) {
    Json j;
    j["side"] = r.side == Side::Left ? "left" : "right";
    j["order_exponent"] = r.order_exponent;
    j["is_field"] = r.is_field;
    j["sampled"] = r.sampled;
    return j;
}

Json report_to_json(const InvariantReport& r) {
    Json j;
    j["family"] = r.family;
    j["q"] = r.q;
    j["n"] = r.n;
    j["k"] = r.k;
    j["h"] = r.h.value;
    j["h_arg"] = r.h.arg;
    j["h_over_fq"] = r.h.over_fq;
    j["ind"] = {r.ind.lower, r.ind.upper};
    j["ind_status"] = index_status_name(r.ind.status);
    j["L_exp"] = r.left.order_exponent;
    j["R_exp"] = r.right.order_exponent;
    j["L_is_field"] = r.left.is_field;
    j["R_is_field"] = r.right.is_field;
    j["mrd"] = mrd_status_name(r.mrd.status);
    j["index"] = index_to_json(r.ind);
    return j;
}

Json fixture_to_json(const Fixture& f) {
    Json j;
    j["n"] = f.n;
    j["k"] = f.k;
    j["ind"] = opt_json(f.ind);
    j["h"] = opt_json(f.h);
    j["R_exp"] = opt_json(f.r_exp);
    j["L_exp"] = opt_json(f.l_exp);
    return j;
}

Json table1_row_to_json(const Table1Row& r) {
    Json j = report_to_json(r.report);
    j["expected"] = fixture_to_json(r.expected);
    j["h_match"] = r.h_match;
    j["R_match"] = r.r_match;
    j["ind_match"] = r.ind_match;
    j["fixture_match"] = r.fixture_match;
    j["verdict"] = r.verdict;
    return j;
}

Json fingerprint_to_json(const Fingerprint& f) {
    Json j;
    j["h"] = f.h;
    j["L_exp"] = f.l_exp;
    j["R_exp"] = f.r_exp;
    j["rank_profile"] = f.rank_profile;
    return j;
}

std::string rank_distribution_csv(const RankDistribution& d) {
    std::ostringstream os;
    os << "rank,count\n";
    for (std::size_t r = 0; r < d.size(); ++r) os << r << "," << d[r] << "\n";
    return os.str();
}

}  // namespace rankmetric
