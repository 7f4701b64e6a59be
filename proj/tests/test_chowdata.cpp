#include <fstream>
#include <sstream>

#include <json.hpp>

#include "doctest.h"
#include "hilbcone/chowdata.hpp"

using namespace hilbcone;
using nlohmann::json;

namespace {

std::string bundled_text() {
    std::ifstream in(default_dataset_path());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json bundled_json() { return json::parse(bundled_text()); }

const Dataset& bundled() {
    static const Dataset ds = load_dataset(default_dataset_path());
    return ds;
}

json& entry(json& doc, const char* section, const std::string& id) {
    for (auto& e : doc[section])
        if (e.value("id", "") == id) return e;
    throw std::runtime_error("fixture lacks " + id);
}

template <class E>
void expect_rejected(const json& doc) {
    CHECK_THROWS_AS(parse_dataset(doc.dump()), E);
}

}  // namespace

TEST_CASE("bundled dataset loads with its registries") {
    const Dataset& ds = bundled();
    CHECK(ds.spaces.size() == 2);
    CHECK(ds.pairings.size() >= 9);
    CHECK(ds.basis_changes.size() >= 6);
    CHECK(ds.cones.size() >= 10);
    CHECK(ds.basis("p3.ms.a2").labels.size() == 6);
    CHECK(ds.basis("p3.rl.a4").labels.size() == 13);
    CHECK(ds.pairing("i3x6.ms").matrix(9, 9) == Rational(9));
    CHECK(ds.cone("eff2.ms").rays.size() == 7);
    CHECK(ds.cone("nef3.ms").rays.size() == 26);
    CHECK_THROWS_AS(ds.basis("p3.xx.a1"), UnknownBasisError);
    CHECK_THROWS_AS(ds.pairing("nope"), UnknownEntryError);
    CHECK_THROWS_AS(ds.cone("nope"), UnknownEntryError);
    CHECK_THROWS_AS(ds.constant_as<ScalarConstant>("Y1.row"), DataInvariantError);
}

TEST_CASE("every registered matrix matches its basis sizes") {
    const Dataset& ds = bundled();
    for (const auto& p : ds.pairings) {
        CHECK(p.matrix.rows() == ds.basis(p.rows).size());
        CHECK(p.matrix.cols() == ds.basis(p.cols).size());
        CHECK(ds.basis(p.rows).k + ds.basis(p.cols).k == ds.space(ds.basis(p.rows).space).total_dim);
    }
    for (const auto& c : ds.basis_changes) {
        CHECK(c.matrix.rows() == ds.basis(c.to).size());
        CHECK(c.matrix.cols() == ds.basis(c.from).size());
    }
}

TEST_CASE("shape violations are schema errors with a pointer") {
    json doc = bundled_json();
    auto& m = entry(doc, "pairings", "i2x7.ms")["matrix"];
    m.erase(m.size() - 1);
    try {
        parse_dataset(doc.dump());
        FAIL("expected a schema error");
    } catch (const SchemaError& e) {
        CHECK(e.pointer().find("/pairings/") == 0);
    }

    json bad_type = bundled_json();
    entry(bad_type, "pairings", "i2x7.ms")["matrix"][0][0] = 1.5;
    expect_rejected<SchemaError>(bad_type);

    json missing = bundled_json();
    missing.erase("bases");
    expect_rejected<SchemaError>(missing);

    CHECK_THROWS_AS(parse_dataset("{not json"), SchemaError);
}

TEST_CASE("invariant violations are rejected") {
    json singular = bundled_json();
    auto& m = entry(singular, "pairings", "i2x7.ms")["matrix"];
    m[1] = m[0];
    expect_rejected<DataInvariantError>(singular);

    json not_inverse = bundled_json();
    entry(not_inverse, "basis_changes", "e3.rl.ms")["matrix"][0][0] = "2";
    expect_rejected<DataInvariantError>(not_inverse);

    json dup = bundled_json();
    dup["cones"].push_back(dup["cones"][0]);
    expect_rejected<DataInvariantError>(dup);

    json unknown_basis = bundled_json();
    entry(unknown_basis, "pairings", "i2x7.ms")["rows"] = "p3.ms.zz";
    expect_rejected<DataInvariantError>(unknown_basis);

    json no_source = bundled_json();
    entry(no_source, "cones", "eff2.ms")["provenance"] = "";
    expect_rejected<DataInvariantError>(no_source);

    json wrong_dim = bundled_json();
    wrong_dim["spaces"][0]["total_dim"] = 8;
    expect_rejected<DataInvariantError>(wrong_dim);
}

TEST_CASE("class lookup") {
    const Dataset& ds = bundled();
    CycleClass o2 = lookup_class(ds, "O2nonred");
    CHECK(o2.basis == "p3.rl.a7");
    const auto& b = ds.basis("p3.rl.a7");
    QVector want(b.size());
    for (auto [label, c] : {std::pair{"P2", 3}, std::pair{"P*H", -3}, std::pair{"l", 3}, std::pair{"p", 3}})
        want = want + QVector::unit(b.size(), *b.index_of(label)).scaled(Rational(c));
    CHECK(o2.coords == want);

    CycleClass mu = lookup_class(ds, "mu");
    CHECK(mu.basis == "p3.ms.a2");
    CHECK(mu.coords == QVector::unit(6, *ds.basis("p3.ms.a2").index_of("mu")));

    CycleClass y1 = lookup_class(ds, "Y1");
    CHECK(y1.basis == "p3.rl.a6");
    const auto& b6 = ds.basis("p3.rl.a6");
    CHECK(y1.coords[*b6.index_of("P3")] == Rational(3));
    CHECK(y1.coords[*b6.index_of("P2*H")] == Rational(-1));
    CHECK(y1.coords[*b6.index_of("P*l")] == Rational(1));

    CHECK(lookup_class(ds, "p3.ms.a7:M").basis == "p3.ms.a7");

    try {
        lookup_class(ds, "O2nonrd");
        FAIL("expected an unknown class error");
    } catch (const UnknownClassError& e) {
        const auto& near = e.near_matches();
        CHECK(std::find(near.begin(), near.end(), "O2nonred") != near.end());
    }
}

TEST_CASE("labels") {
    CHECK(is_valid_label("P3*H^2*l"));
    CHECK(is_valid_label("[P^2*H^2+P*H^3]"));
    CHECK_FALSE(is_valid_label("P3 * H"));
    CHECK_FALSE(is_valid_label("2*P"));
    CHECK(normalize_label("P3 * H ^ 2") == "P3*H^2");
    CHECK(scan_label("P2*H + l", 0) == 4);
    for (const auto& b : bundled().bases)
        for (const auto& l : b.labels) CHECK(is_valid_label(l));
}

TEST_CASE("canonical serialization is deterministic and round trips") {
    const Dataset& ds = bundled();
    std::string a = canonical_json(ds);
    CHECK(a == canonical_json(load_dataset(default_dataset_path())));
    Dataset again = parse_dataset(a);
    CHECK(canonical_json(again) == a);
    CHECK(again.pairing("i3x6.rl").matrix == ds.pairing("i3x6.rl").matrix);
    CHECK(again.cones.size() == ds.cones.size());
}
