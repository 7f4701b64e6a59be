#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hilbcone/chowcalc.hpp"
#include "hilbcone/cones.hpp"

namespace hilbcone {

enum class Tag { Paper, Trivial, Derived };
enum class Status { Pass, Fail, Skipped };

std::string tag_name(Tag t);
std::string status_name(Status s);

// A value a check promises to compare, declared up front with where it comes from.
struct Expectation {
    std::string key;
    Tag tag;
    std::string source;
};

struct CheckContext {
    const Dataset& ds;
    const Calculator& calc;
};

class Sheet;

struct Check {
    std::string id;
    std::string title;
    std::string provenance;
    std::vector<Expectation> expected;
    std::function<void(const CheckContext&, Sheet&)> run;
};

// Collects the comparisons one check makes. Only declared keys may be compared.
class Sheet {
public:
    explicit Sheet(const Check& check) : check_(&check) {}

    void expect(const std::string& key, bool ok, const std::string& detail);
    void expect_eq(const std::string& key, const Rational& got, const Rational& want);
    void expect_eq(const std::string& key, const QMatrix& got, const QMatrix& want);
    void expect_eq(const std::string& key, const std::string& got, const std::string& want);
    void expect_rays(const std::string& key, const std::vector<Ray>& got, const std::vector<Ray>& want, const GradedBasis* basis);
    void note(const std::string& line) { lines_.push_back("  note: " + line); }

    bool failed() const { return failed_; }
    std::size_t compared() const { return compared_; }
    const std::vector<std::string>& lines() const { return lines_; }

private:
    const Expectation& declared(const std::string& key);
    void record(const std::string& key, bool ok, const std::string& detail);

    const Check* check_;
    std::vector<std::string> lines_;
    bool failed_ = false;
    std::size_t compared_ = 0;
};

struct CheckReport {
    std::string id;
    std::string title;
    Status status = Status::Skipped;
    std::vector<std::string> details;
    double elapsed_ms = 0;
};

const std::vector<Check>& check_registry();
const Check& find_check(const std::string& id);

// Selection of ids, or {"all"}; reports come back in registry order.
std::vector<CheckReport> run_checks(const Dataset& ds, const std::vector<std::string>& selection);
bool all_passed(const std::vector<CheckReport>& reports);

std::string text_report(const std::vector<CheckReport>& reports);
std::string json_report(const std::vector<CheckReport>& reports);

std::string rays_as_exprs(const std::vector<Ray>& rays, const GradedBasis* basis);

}  // namespace hilbcone
