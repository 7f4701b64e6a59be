#include "hilbcone/worksheets.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <set>

#include "hilbcone/expr.hpp"

namespace hilbcone {

std::string tag_name(Tag t) {
    switch (t) {
        case Tag::Paper: return "PAPER";
        case Tag::Trivial: return "TRIVIAL";
        case Tag::Derived: return "DERIVED";
    }
    return "?";
}

std::string status_name(Status s) {
    switch (s) {
        case Status::Pass: return "pass";
        case Status::Fail: return "fail";
        case Status::Skipped: return "skipped";
    }
    return "?";
}

const Expectation& Sheet::declared(const std::string& key) {
    for (const auto& e : check_->expected)
        if (e.key == key) return e;
    throw Error("check " + check_->id + " compares undeclared value '" + key + "'");
}

void Sheet::record(const std::string& key, bool ok, const std::string& detail) {
    const Expectation& e = declared(key);
    ++compared_;
    if (!ok) failed_ = true;
    std::string line = std::string(ok ? "  ok   " : "  FAIL ") + "[" + tag_name(e.tag) + "] " + key;
    if (!detail.empty()) line += ": " + detail;
    lines_.push_back(line);
}

void Sheet::expect(const std::string& key, bool ok, const std::string& detail) { record(key, ok, detail); }

void Sheet::expect_eq(const std::string& key, const Rational& got, const Rational& want) {
    bool ok = got == want;
    record(key, ok, ok ? got.str() : "got " + got.str() + ", expected " + want.str());
}

void Sheet::expect_eq(const std::string& key, const QMatrix& got, const QMatrix& want) {
    if (got.rows() != want.rows() || got.cols() != want.cols()) {
        record(key, false,
               "shape " + std::to_string(got.rows()) + "x" + std::to_string(got.cols()) + ", expected " +
                   std::to_string(want.rows()) + "x" + std::to_string(want.cols()));
        return;
    }
    if (got == want) {
        record(key, true, std::to_string(got.rows()) + "x" + std::to_string(got.cols()) + " entries agree");
        return;
    }
    record(key, false, describe_diff(got, want, std::numeric_limits<std::size_t>::max()));
}

void Sheet::expect_eq(const std::string& key, const std::string& got, const std::string& want) {
    bool ok = got == want;
    record(key, ok, ok ? got : "got " + got + ", expected " + want);
}

std::string rays_as_exprs(const std::vector<Ray>& rays, const GradedBasis* basis) {
    std::string out;
    for (const auto& r : rays) {
        if (!out.empty()) out += "; ";
        out += basis ? render(CycleClass{basis->id, r.direction()}, *basis) : r.direction().str();
    }
    return out;
}

void Sheet::expect_rays(const std::string& key, const std::vector<Ray>& got, const std::vector<Ray>& want, const GradedBasis* basis) {
    if (got == want) {
        record(key, true, std::to_string(got.size()) + " rays: " + rays_as_exprs(got, basis));
        return;
    }
    std::vector<Ray> extra, missing;
    std::set_difference(got.begin(), got.end(), want.begin(), want.end(), std::back_inserter(extra));
    std::set_difference(want.begin(), want.end(), got.begin(), got.end(), std::back_inserter(missing));
    record(key, false,
           std::to_string(got.size()) + " rays, expected " + std::to_string(want.size()) + "; unexpected: [" +
               rays_as_exprs(extra, basis) + "]; missing: [" + rays_as_exprs(missing, basis) + "]");
}

const Check& find_check(const std::string& id) {
    for (const auto& c : check_registry())
        if (c.id == id) return c;
    throw UnknownCheckError("unknown check '" + id + "'");
}

std::vector<CheckReport> run_checks(const Dataset& ds, const std::vector<std::string>& selection) {
    const auto& registry = check_registry();
    std::set<std::string> wanted;
    bool everything = selection.empty() || std::find(selection.begin(), selection.end(), "all") != selection.end();
    for (const auto& id : selection)
        if (id != "all") wanted.insert(find_check(id).id);

    Calculator calc(ds);
    CheckContext ctx{ds, calc};
    std::vector<CheckReport> out;
    for (const auto& check : registry) {
        if (!everything && !wanted.count(check.id)) continue;
        CheckReport rep{check.id, check.title, Status::Pass, {}, 0};
        Sheet sheet(check);
        auto t0 = std::chrono::steady_clock::now();
        try {
            check.run(ctx, sheet);
            rep.status = sheet.failed() || sheet.compared() == 0 ? Status::Fail : Status::Pass;
            rep.details = sheet.lines();
        } catch (const UnknownEntryError& e) {
            rep.details = sheet.lines();
            rep.details.push_back(std::string("  skipped: dataset lacks an entry: ") + e.what());
            rep.status = Status::Skipped;
        } catch (const std::exception& e) {
            rep.details = sheet.lines();
            rep.details.push_back(std::string("  error: ") + e.what());
            rep.status = Status::Fail;
        }
        rep.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        out.push_back(std::move(rep));
    }
    return out;
}

bool all_passed(const std::vector<CheckReport>& reports) {
    return std::all_of(reports.begin(), reports.end(), [](const CheckReport& r) { return r.status == Status::Pass; });
}

}  // namespace hilbcone
