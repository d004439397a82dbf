// Copyright 2026 The apnlab Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <apnlab/claims.hpp>

using namespace apnlab;
using namespace apnlab::claims;

namespace {

const std::vector<std::string> kAcceptanceIds = {
    "APN-M3",      "INV-M3", "TABLE1", "LIN-M6",    "LIN-BOUND-M3", "U1-M3", "SEVENTH-POWER",   "THICK-F0/F1",
    "GOLD-REGIONS", "F0/F1-REGIONS", "TFL", "PERMPOLY", "BUDAGHYAN", "M9-D8", "PROPERTY-SUITES",
};

}  // namespace

TEST(Claims, RegistryCoversAcceptanceIds) {
    std::set<std::string> reg;
    for (const auto& c : registry()) {
        EXPECT_TRUE(reg.insert(c.id).second) << "duplicate " << c.id;
        EXPECT_FALSE(c.description.empty());
        EXPECT_FALSE(c.expected.is_null()) << c.id;
        EXPECT_TRUE(c.run) << c.id;
    }
    EXPECT_EQ(reg, std::set<std::string>(kAcceptanceIds.begin(), kAcceptanceIds.end()));
    EXPECT_TRUE(std::is_sorted(registry().begin(), registry().end(),
                               [](const Claim& a, const Claim& b) { return a.id < b.id; }));
}

TEST(Claims, SpectrumParser) {
    const auto j = spectrum("{0: 1, 6: 143, 7: 1295, 8: 2023, 9: 1296}");
    EXPECT_EQ(j.dump(), R"({"0":1,"6":143,"7":1295,"8":2023,"9":1296})");
    EXPECT_EQ(spectrum("{}").dump(), "{}");
    // totals of the stored published rows add up to the space counts
    for (const auto& c : registry()) {
        if (c.id != "F0/F1-REGIONS" && c.id != "GOLD-REGIONS") continue;
        std::vector<Json> tables;
        if (c.id == "GOLD-REGIONS") tables.push_back(c.expected);
        else tables = {c.expected["1011"], c.expected["1101"]};
        for (const auto& t : tables)
            for (const auto& row : t["regions"]) {
                std::uint64_t s = 0, d = 0;
                for (const auto& [k, v] : row["thickness"].items()) s += v.get<std::uint64_t>();
                for (const auto& [k, v] : row["degrees"].items()) d += v.get<std::uint64_t>();
                EXPECT_EQ(s, t["bounds"][1].get<std::uint64_t>()) << c.id << " " << row.dump();
                EXPECT_EQ(d, 511u);
            }
    }
}

TEST(Claims, FirstDifference) {
    const auto e = nlohmann::json::parse(R"({"a": 1, "b": {"c": [1, 2]}})");
    EXPECT_EQ(first_difference(e, e), "");
    EXPECT_EQ(first_difference(e, nlohmann::json::parse(R"({"a": 1, "b": {"c": [1, 3]}})")),
              "/b/c/1: expected 2, observed 3");
    EXPECT_EQ(first_difference(e, nlohmann::json::parse(R"({"a": 1})")), "/b: missing from observed");
    EXPECT_EQ(first_difference(e, nlohmann::json::parse(R"({"a": 1, "b": {"c": [1, 2]}, "z": 0})")),
              "/z: unexpected key");
}

TEST(Claims, Selection) {
    const auto fast = select("seconds");
    for (const auto& id : fast) EXPECT_EQ(find_claim(id)->cost, CostClass::seconds);
    EXPECT_NE(std::find(fast.begin(), fast.end(), "APN-M3"), fast.end());
    EXPECT_EQ(select("all").size(), registry().size());
    EXPECT_GT(select("minutes").size(), fast.size());
    EXPECT_EQ(select("U1-M3,APN-M3,U1-M3"), (std::vector<std::string>{"APN-M3", "U1-M3"}));
}

TEST(Claims, UnknownIdIsAnErrorAndOthersStillRun) {
    Context ctx(1);
    const auto rs = run_claims(select("NOPE,APN-M3"), ctx);
    ASSERT_EQ(rs.size(), 2u);
    EXPECT_EQ(rs[0].id, "APN-M3");
    EXPECT_EQ(rs[0].status, Status::pass) << rs[0].detail;
    EXPECT_EQ(rs[0].observed["1011"]["D"], 2);
    EXPECT_EQ(rs[1].status, Status::error);
    EXPECT_FALSE(all_passed(rs));
}

TEST(Claims, FastClaimsPass) {
    Context ctx;
    for (const char* id : {"INV-M3", "U1-M3", "SEVENTH-POWER", "LIN-BOUND-M3", "BUDAGHYAN"}) {
        const auto r = run_claim(id, ctx);
        EXPECT_EQ(r.status, Status::pass) << id << ": " << r.detail;
    }
}

TEST(Claims, ReportsAreStable) {
    std::vector<ClaimResult> rs(2);
    rs[0].id = "APN-M3";
    rs[0].status = Status::pass;
    rs[0].seconds = 1.5;
    rs[1].id = "X<&>";
    rs[1].status = Status::fail;
    rs[1].detail = "a \"b\"";
    const auto j = report_json(rs);
    EXPECT_EQ(j["passed"], 1);
    EXPECT_EQ(j["claims"][0]["cost_class"], "seconds");
    EXPECT_FALSE(j["claims"][0].contains("seconds"));
    rs[0].seconds = 99;
    EXPECT_EQ(report_json(rs).dump(), j.dump());
    const auto x = junit_xml(rs);
    EXPECT_NE(x.find("tests=\"2\" failures=\"1\""), std::string::npos);
    EXPECT_NE(x.find("name=\"X&lt;&amp;&gt;\""), std::string::npos);
    EXPECT_NE(x.find("message=\"a &quot;b&quot;\""), std::string::npos);
}
