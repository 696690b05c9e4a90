#include "helpers.hpp"
#include "rankmetric/serialize.hpp"

using namespace rankmetric;

TEST(Serialize, Context) {
    const auto c = context_for(2, 6);
    const auto j = context_to_json(*c);
    EXPECT_EQ(j.dump(), R"({"p":2,"e":1,"n":6,"modulus":[1,0,0,0,0,1,1]})");
    EXPECT_EQ(context_from_json(j).get(), c.get());
    auto bad = j;
    bad["modulus"] = {1, 1, 0, 0, 0, 0, 1};
    EXPECT_ERRC(context_from_json(bad), Errc::ContextMismatch);
    EXPECT_ERRC(context_from_json(Json::object()), Errc::ParseError);
}

TEST(Serialize, PolyUsesDigitStrings) {
    const auto c = context_for(2, 6);
    const auto f = LinearizedPoly::monomial(c, c->add(c->one(), c->from_digits("010000")), 1);
    EXPECT_EQ(poly_to_json(f).dump(), R"(["000000","110000","000000","000000","000000","000000"])");
    EXPECT_EQ(poly_from_json(c, poly_to_json(f)), f);
    EXPECT_ERRC(poly_from_json(c, Json::array({"1"})), Errc::ParseError);
}

TEST(Serialize, CodeRoundTrip) {
    Rng rng(1);
    for (auto [q, n] : {std::pair{2, 4}, {3, 3}, {4, 3}}) {
        const auto c = context_for(q, n);
        for (auto mode : {ScalarMode::FqLinear, ScalarMode::FqnLinearLeft}) {
            const auto code = random_code(c, 2, mode, rng);
            const auto j = code_to_json(code);
            EXPECT_EQ(j["scalars"], mode == ScalarMode::FqLinear ? "fq" : "fqn");
            const auto back = code_from_json(Json::parse(j.dump()));
            EXPECT_EQ(back, code);
            EXPECT_EQ(back.scalars(), mode);
        }
    }
    EXPECT_ERRC(code_from_json(Json::parse(R"({"ctx":{"p":2,"e":1,"n":2},"scalars":"zz","basis":[]})")), Errc::ParseError);
}

TEST(Serialize, RankDistributionCsv) {
    EXPECT_EQ(rank_distribution_csv({1, 0, 15}), "rank,count\n0,1\n1,0\n2,15\n");
}

TEST(Serialize, ReportFields) {
    const auto r = compute_report(gabidulin(context_for(2, 5), 2, 1), "G");
    const auto j = report_to_json(r);
    EXPECT_EQ(j["h"], 1);
    EXPECT_EQ(j["ind"], Json::array({2, 2}));
    EXPECT_EQ(j["ind_status"], "certified");
    EXPECT_EQ(j["L_exp"], 5);
    EXPECT_EQ(j["R_exp"], 5);
    EXPECT_EQ(j["mrd"], "verified_true");
}
