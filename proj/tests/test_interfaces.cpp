#include <catch2/catch_amalgamated.hpp>

#include "beauville/report.hpp"
#include "beauville/suite.hpp"

using namespace beauville;

TEST_CASE("group JSON carries the spec fields", "[interfaces]") {
    nlohmann::json j = group_json(Group::fused(5, 3, 2, 2, 1));
    CHECK(j["family"] == "fused");
    CHECK(j["p"] == 5);
    CHECK(j["e"] == 3);
    CHECK(j["i"] == 2);
    CHECK(j["j"] == 2);
    CHECK(j["k"] == 1);
    CHECK(family_from_name("split").value() == Family::ClassTwoSplit);
    CHECK_FALSE(family_from_name("dihedral").has_value());
}

TEST_CASE("report JSON is schema-versioned and consistent", "[interfaces]") {
    VerificationReport r;
    r.checks.push_back({"alpha", "claim a", "fast", "1", "1", true, false, "", 0.5});
    r.checks.push_back({"beta", "claim b", "full", "2", "3", false, false, "", 1.5});
    r.checks.push_back({"gamma", "claim c", "heavy", "", "", false, true, "budget", 0.0});
    nlohmann::json j = report_json(r);
    CHECK(j["schema"] == 1);
    CHECK(j["summary"]["passed"] == 1);
    CHECK(j["summary"]["failed"] == 1);
    CHECK(j["summary"]["skipped"] == 1);
    CHECK(j["checks"].size() == 3);
    CHECK(r.exit_code() == 1);

    VerificationReport pass_only;
    pass_only.checks.push_back({"alpha", "", "fast", "1", "1", true, false, "", 0.1});
    CHECK(pass_only.exit_code() == 0);
    pass_only.checks.push_back({"delta", "", "heavy", "", "", false, true, "budget", 0.0});
    CHECK(pass_only.exit_code() == 3);
}

TEST_CASE("CSV escaping", "[interfaces]") {
    CHECK(csv_escape("plain") == "plain");
    CHECK(csv_escape("a,b") == "\"a,b\"");
    CHECK(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
    VerificationReport r;
    r.checks.push_back({"n", "c,laim", "fast", "1", "1", true, false, "", 0.5});
    std::string csv = report_csv(r);
    CHECK(csv.find("\"c,laim\"") != std::string::npos);
    CHECK(csv.rfind("name,tier,claim", 0) == 0);
}

TEST_CASE("the fast suite passes on the smallest abelian group", "[interfaces]") {
    SuiteConfig cfg;
    cfg.tier = "fast";
    VerificationReport report = run_suite(Group::abelian(5, 1), cfg);
    INFO(report_text(report));
    CHECK(report.failed() == 0);
    CHECK(report.passed() > 5);
    // fast run leaves the full/heavy rows skipped
    CHECK(report.skipped() > 0);
    CHECK(report.exit_code() == 3);
}

TEST_CASE("the fast suite passes on the order-125 split group", "[interfaces]") {
    SuiteConfig cfg;
    cfg.tier = "fast";
    VerificationReport report = run_suite(Group::split(5, 1, 1), cfg);
    INFO(report_text(report));
    CHECK(report.failed() == 0);
}

TEST_CASE("budget refusals are reported as skips, not failures", "[interfaces]") {
    SuiteConfig cfg;
    cfg.tier = "fast";
    // Metacyclic order 625: structure set is 4.5e9, far over every budget.
    VerificationReport report = run_suite(Group::metacyclic(5, 2, 1), cfg);
    INFO(report_text(report));
    CHECK(report.failed() == 0);
    bool saw_budget_skip = false;
    for (const auto& c : report.checks) {
        if (c.name == "orbit_count_fast") {
            CHECK(c.skipped);
            CHECK(c.skip_reason.find("formula value 200") != std::string::npos);
            saw_budget_skip = true;
        }
    }
    CHECK(saw_budget_skip);
}

TEST_CASE("structure JSON strings follow the element format", "[interfaces]") {
    Group S = Group::split(5, 1, 1);
    Structure s{make_triple(S, S.gen_a(), S.gen_b()),
                make_triple(S, S.parse("a^1 b^2 c^0"), S.parse("a^1 b^4 c^0"))};
    nlohmann::json arr = nlohmann::json::array();
    const Element* els[6] = {&s.t1.g1, &s.t1.g2, &s.t1.g3, &s.t2.g1, &s.t2.g2, &s.t2.g3};
    for (auto* g : els) arr.push_back(S.format(*g));
    CHECK(arr.size() == 6);
    CHECK(arr[0] == "a^1 b^0 c^0");
    for (const auto& entry : arr) CHECK(S.parse(entry.get<std::string>()) == S.parse(entry.get<std::string>()));
}
