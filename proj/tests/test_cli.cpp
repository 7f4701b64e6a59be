#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "commands.hpp"
#include "doctest.h"
#include "hilbcone/chowdata.hpp"
#include "hilbcone/cones.hpp"

using nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = hilbcone::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<hilbcone::Ray> rays_of(const json& doc) {
    std::vector<hilbcone::QVector> vs;
    for (const auto& r : doc["rays"]) {
        std::vector<hilbcone::Rational> e;
        for (const auto& x : r) e.push_back(*hilbcone::Rational::parse(x.get<std::string>()));
        vs.emplace_back(std::move(e));
    }
    return hilbcone::canonical_sorted(vs);
}

const hilbcone::Dataset& bundled() {
    static const hilbcone::Dataset ds = hilbcone::load_dataset(hilbcone::default_dataset_path());
    return ds;
}

}  // namespace

TEST_CASE("pair") {
    CHECK(cli({"pair", "p3.rl.a2", "P3*H^2*l", "p3.rl.a7", "P2"}).out == "1\n");
    CHECK(cli({"pair", "p3.ms.a2", "mu", "p3.ms.a7", "M"}).out == "1\n");
    Result wrong = cli({"pair", "p3.ms.a2", "mu", "p3.ms.a2", "mu"});
    CHECK(wrong.code == 2);
    CHECK(wrong.err.find("NoPairingPathError") != std::string::npos);

    Result bad = cli({"pair", "p3.ms.a2", "mu +", "p3.ms.a7", "M"});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("ParseError") != std::string::npos);
    CHECK(bad.err.find("^") != std::string::npos);

    json doc = json::parse(cli({"--format", "json", "pair", "p3.ms.a3", "nu4", "p3.ms.a6", "N4"}).out);
    CHECK(doc["value"] == "9");
}

TEST_CASE("convert") {
    CHECK(cli({"convert", "P2*H*l*p", "p3.rl.a2", "p3.ms.a2"}).out == "2*beta + 3*delta + 2*epsilon + mu\n");
    CHECK(cli({"convert", "epsilon+ 2*alpha", "p3.ms.a2", "p3.ms.a2"}).out == "2*alpha + epsilon\n");
    for (const auto& label : bundled().basis("p3.rl.a3").labels) {
        std::string ms = cli({"convert", label, "p3.rl.a3", "p3.ms.a3"}).out;
        ms.pop_back();
        CHECK(cli({"convert", "--", ms, "p3.ms.a3", "p3.rl.a3"}).out == label + "\n");
    }
    Result unknown = cli({"convert", "Q", "p3.rl.a2", "p3.ms.a2"});
    CHECK(unknown.code == 2);
    CHECK(unknown.err.find("UnknownLabelError") != std::string::npos);
}

TEST_CASE("dual and rays") {
    Result r = cli({"--format", "json", "dual", "eff2.ms", "--form", "i2x7.ms"});
    REQUIRE(r.code == 0);
    json doc = json::parse(r.out);
    CHECK(doc["basis"] == "p3.ms.a7");
    CHECK(rays_of(doc) == hilbcone::canonical_sorted(bundled().cone("nef2.ms").rays));

    json d3 = json::parse(cli({"--format", "json", "dual", "eff3.ms", "--form", "i3x6.ms"}).out);
    CHECK(d3["rays"].size() == 26);
    CHECK(rays_of(d3) == hilbcone::canonical_sorted(bundled().cone("nef3.ms").rays));

    json o = json::parse(cli({"--format", "json", "dual", "orthant3"}).out);
    CHECK(rays_of(o) == hilbcone::extreme_rays(hilbcone::Cone::orthant(3)));
    CHECK(o["lineality"].empty());

    json rays = json::parse(cli({"--format", "json", "rays", "eff3.ms"}).out);
    CHECK(rays["rays"].size() == 13);
    CHECK(cli({"rays", "eff3.ms"}).out.find("13 extreme rays") != std::string::npos);
}

TEST_CASE("cone output is read back by the cone loader") {
    std::string text = cli({"--format", "json", "dual", "eff2.ms", "--form", "i2x7.ms"}).out;
    auto path = std::filesystem::temp_directory_path() / "hilbcone_cli_dual.json";
    std::ofstream(path) << text;
    json again = json::parse(cli({"--format", "json", "rays", path.string()}).out);
    CHECK(rays_of(again) == rays_of(json::parse(text)));
    CHECK(again["basis"] == "p3.ms.a7");
    std::filesystem::remove(path);
}

TEST_CASE("member") {
    CHECK(cli({"member", "nef2.ms", "Ct"}).out == "true\n");
    CHECK(cli({"member", "nef2.ms", "At"}).out == "false\n");
    json doc = json::parse(cli({"--format", "json", "member", "eff2.ms", "alpha"}).out);
    CHECK(doc["member"].is_boolean());
}

TEST_CASE("verify") {
    Result one = cli({"verify", "--check", "W9"});
    CHECK(one.code == 0);
    CHECK(one.out.find("PASS  W9") != std::string::npos);

    Result none = cli({"verify", "--check", "nonexistent"});
    CHECK(none.code == 2);
    CHECK(none.err.find("UnknownCheckError") != std::string::npos);

    json doc = json::parse(cli({"--format", "json", "verify", "--check", "W0_smoke", "--check", "W6"}).out);
    REQUIRE(doc["checks"].size() == 2);
    CHECK(doc["checks"][0]["status"] == "pass");
    CHECK(doc["checks"][1]["elapsed_ms"].is_number());
}

TEST_CASE("verify --all passes on the bundled data") {
    Result all = cli({"verify", "--all"});
    CHECK_MESSAGE(all.code == 0, all.out);
}

TEST_CASE("usage and data errors exit with 2") {
    CHECK(cli({}).code == 2);
    CHECK(cli({"pair", "p3.ms.a2"}).code == 2);
    CHECK(cli({"--format", "yaml", "verify"}).code == 2);
    Result missing = cli({"--dataset", "/nonexistent/hilb.json", "verify"});
    CHECK(missing.code == 2);
    CHECK_FALSE(missing.err.empty());
    CHECK(cli({"member", "orthant2", "e1"}).code == 2);
}
