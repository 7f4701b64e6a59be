#include <set>

#include "doctest.h"
#include "hilbcone/worksheets.hpp"

using namespace hilbcone;

namespace {

const Dataset& bundled() {
    static const Dataset ds = load_dataset(default_dataset_path());
    return ds;
}

CheckReport run_one(const std::string& id) {
    auto reports = run_checks(bundled(), {id});
    REQUIRE(reports.size() == 1);
    return reports[0];
}

std::string joined(const std::vector<std::string>& lines) {
    std::string s;
    for (const auto& l : lines) s += l + "\n";
    return s;
}

}  // namespace

TEST_CASE("registry holds the required checks with tagged expectations") {
    std::set<std::string> ids;
    for (const auto& c : check_registry()) {
        CHECK(ids.insert(c.id).second);
        CHECK_FALSE(c.provenance.empty());
        CHECK_FALSE(c.expected.empty());
        for (const auto& e : c.expected) CHECK_FALSE(e.source.empty());
    }
    for (int i = 1; i <= 12; ++i) CHECK(ids.count("W" + std::to_string(i)) == 1);
    CHECK(ids.count("W0_smoke") == 1);
    CHECK_THROWS_AS(find_check("nonexistent"), UnknownCheckError);
    CHECK_THROWS_AS(run_checks(bundled(), {"nonexistent"}), UnknownCheckError);
}

TEST_CASE("smoke check passes") {
    CHECK(run_one("W0_smoke").status == Status::Pass);
}

TEST_CASE("codimension 2 check lists the 8 nef rays") {
    CheckReport r = run_one("W6");
    CHECK(r.status == Status::Pass);
    std::string text = joined(r.details);
    CHECK(text.find("8 nef") != std::string::npos);
}

TEST_CASE("codimension 3 check") {
    CHECK(run_one("W7").status == Status::Pass);
}

TEST_CASE("correction scripts report their values") {
    CheckReport r = run_one("W9");
    CHECK(r.status == Status::Pass);
    std::string text = joined(r.details);
    for (const char* v : {"= -2", "= 2", "= -3", "= 1"}) CHECK(text.find(v) != std::string::npos);
}

TEST_CASE("checks that reproduce stored data pass") {
    for (const char* id : {"W1", "W2", "W3", "W4", "W8", "W10", "W11", "W12", "M0_registry"}) {
        CAPTURE(id);
        CheckReport r = run_one(id);
        CHECK_MESSAGE(r.status == Status::Pass, joined(r.details));
    }
}

TEST_CASE("the displayed E6 formula disagrees with the stored matrix and says why") {
    CheckReport r = run_one("W5");
    CHECK(r.status == Status::Fail);
    std::string text = joined(r.details);
    CHECK(text.find("E3,MS,RL times E3,RL,MS is the identity") != std::string::npos);
    CHECK(text.find("E3,RL,MS in place of E3,MS,RL the same formula reproduces") != std::string::npos);
}

TEST_CASE("runs are deterministic and independent of the selection") {
    auto strip = [](std::vector<CheckReport> rs) {
        for (auto& r : rs) r.elapsed_ms = 0;
        return rs;
    };
    auto a = strip(run_checks(bundled(), {"all"}));
    auto b = strip(run_checks(bundled(), {"all"}));
    REQUIRE(a.size() == check_registry().size());
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].id == check_registry()[i].id);
        CHECK(a[i].status == b[i].status);
        CHECK(a[i].details == b[i].details);
        CheckReport alone = strip(run_checks(bundled(), {a[i].id}))[0];
        CHECK(alone.status == a[i].status);
        CHECK(alone.details == a[i].details);
    }
    CHECK(text_report(a) == text_report(b));
    CHECK(json_report(a) == json_report(b));
}

TEST_CASE("a failing expectation is reported with the exact discrepancy") {
    Check probe{"probe", "probe", "test fixture", {{"value", Tag::Trivial, "fixture"}}, nullptr};
    Sheet s(probe);
    s.expect_eq("value", QMatrix{{1, 2}, {3, 4}}, QMatrix{{1, 2}, {3, 5}});
    CHECK(s.failed());
    std::string text = joined(s.lines());
    CHECK(text.find("4") != std::string::npos);
    CHECK(text.find("5") != std::string::npos);
    CHECK_THROWS(s.expect("undeclared", true, ""));
}
