#include "commands.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hilbcone/expr.hpp"
#include "hilbcone/worksheets.hpp"

namespace hilbcone::cli {

namespace {

using nlohmann::ordered_json;

struct Config {
    std::string dataset;
    std::string format = "text";
    bool all = false;
    std::vector<std::string> checks;
    std::vector<std::string> positional;
    std::string form;
};

// A cone with the basis its coordinates refer to (none for abstract cones).
struct LoadedCone {
    std::string id;
    std::optional<std::string> basis;
    Cone cone;
};

LoadedCone load_cone(const Dataset& ds, const std::string& ref) {
    if (const NamedCone* c = ds.find_cone(ref)) return {c->id, c->basis, Cone(c->dim, c->rays)};
    if (!std::filesystem::is_regular_file(ref)) throw UnknownEntryError("'" + ref + "' is neither a cone id nor a readable file");
    std::ifstream in(ref);
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError("/", std::string("cone file is not valid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("rays") || !doc["rays"].is_array()) throw SchemaError("/rays", "missing required key");
    std::optional<std::string> basis;
    std::optional<std::size_t> dim;
    if (doc.contains("basis") && !doc["basis"].is_null()) {
        basis = doc["basis"].get<std::string>();
        dim = ds.basis(*basis).size();
    }
    if (doc.contains("ambient_dim")) dim = doc["ambient_dim"].get<std::size_t>();
    std::vector<QVector> rays;
    auto read_vec = [&](const nlohmann::json& row, const std::string& ptr) {
        if (!row.is_array()) throw SchemaError(ptr, "expected an array");
        std::vector<Rational> e;
        for (std::size_t i = 0; i < row.size(); ++i) {
            auto q = row[i].is_string() ? Rational::parse(row[i].get<std::string>()) : std::nullopt;
            if (!q) throw SchemaError(ptr + "/" + std::to_string(i), "expected a rational written as a string");
            e.push_back(*q);
        }
        if (dim && e.size() != *dim) throw SchemaError(ptr, "expected " + std::to_string(*dim) + " entries");
        dim = e.size();
        return QVector(std::move(e));
    };
    for (std::size_t r = 0; r < doc["rays"].size(); ++r) rays.push_back(read_vec(doc["rays"][r], "/rays/" + std::to_string(r)));
    // Lineality directions are generators in both orientations.
    if (doc.contains("lineality"))
        for (std::size_t r = 0; r < doc["lineality"].size(); ++r) {
            QVector l = read_vec(doc["lineality"][r], "/lineality/" + std::to_string(r));
            rays.push_back(l);
            rays.push_back(l.scaled(-1));
        }
    if (!dim) throw SchemaError("/rays", "cannot infer the ambient dimension of an empty cone");
    return {doc.value("id", ref), basis, Cone(*dim, rays)};
}

ordered_json vec_json(const QVector& v) {
    ordered_json a = ordered_json::array();
    for (const auto& x : v) a.push_back(x.str());
    return a;
}

void print_cone(std::ostream& out, const Dataset& ds, const std::string& id, const std::optional<std::string>& basis,
                std::size_t dim, const ConeDescription& d, const std::string& format) {
    const GradedBasis* b = basis ? &ds.basis(*basis) : nullptr;
    auto show = [&](const QVector& v) { return b ? render(CycleClass{b->id, v}, *b) : v.str(); };
    if (format == "json") {
        ordered_json doc;
        doc["id"] = id;
        doc["basis"] = basis ? ordered_json(*basis) : ordered_json(nullptr);
        doc["ambient_dim"] = dim;
        doc["rays"] = ordered_json::array();
        for (const auto& r : d.rays) doc["rays"].push_back(vec_json(r.direction()));
        doc["lineality"] = ordered_json::array();
        for (const auto& l : d.lineality) doc["lineality"].push_back(vec_json(l));
        if (b) {
            doc["exprs"] = ordered_json::array();
            for (const auto& r : d.rays) doc["exprs"].push_back(show(r.direction()));
        }
        out << doc.dump(2) << "\n";
        return;
    }
    out << id << ": " << d.rays.size() << " extreme rays" << (basis ? " in " + *basis : std::string()) << "\n";
    for (const auto& r : d.rays) out << "  " << show(r.direction()) << "\n";
    if (!d.lineality.empty()) {
        out << "lineality: " << d.lineality.size() << "\n";
        for (const auto& l : d.lineality) out << "  " << show(l) << "\n";
    }
}

// Pairing matrix of the cone's basis against the other side of `table`, plus that side.
std::pair<QMatrix, std::optional<std::string>> form_for(const Calculator& calc, const LoadedCone& c, const PairingTable& t) {
    if (!c.basis) return {t.matrix, std::nullopt};
    if (*c.basis == t.rows) return {t.matrix, t.cols};
    if (*c.basis == t.cols) return {mat_transpose(t.matrix), t.rows};
    const Dataset& ds = calc.dataset();
    const GradedBasis& b = ds.basis(*c.basis);
    for (bool rows_side : {true, false}) {
        const std::string& side = rows_side ? t.rows : t.cols;
        const std::string& other = rows_side ? t.cols : t.rows;
        if (ds.basis(side).k != b.k) continue;
        const QMatrix& conv = calc.conversion(*c.basis, side).matrix;
        QMatrix table = rows_side ? t.matrix : mat_transpose(t.matrix);
        return {mat_mul(mat_transpose(conv), table), other};
    }
    throw NoPairingPathError("pairing " + t.id + " does not involve the dimension of basis " + *c.basis);
}

std::string kind_of(const std::exception& e) {
    if (dynamic_cast<const UnknownCheckError*>(&e)) return "UnknownCheckError: ";
    if (dynamic_cast<const NoPairingPathError*>(&e)) return "NoPairingPathError: ";
    if (dynamic_cast<const NoConversionPathError*>(&e)) return "NoConversionPathError: ";
    if (dynamic_cast<const UnknownClassError*>(&e)) return "UnknownClassError: ";
    if (dynamic_cast<const UnknownLabelError*>(&e)) return "UnknownLabelError: ";
    if (dynamic_cast<const UnknownBasisError*>(&e)) return "UnknownBasisError: ";
    if (dynamic_cast<const UnknownEntryError*>(&e)) return "UnknownEntryError: ";
    if (dynamic_cast<const SchemaError*>(&e)) return "SchemaError: ";
    if (dynamic_cast<const DataInvariantError*>(&e)) return "DataInvariantError: ";
    if (dynamic_cast<const DimensionError*>(&e)) return "DimensionError: ";
    return "";
}

void print_parse_error(std::ostream& err, const std::string& src, const ParseError& e) {
    err << "error: ParseError: " << e.what() << "\n  " << src << "\n  " << std::string(e.offset(), ' ') << "^\n";
}

int verify(const Dataset& ds, const Config& cfg, std::ostream& out) {
    std::vector<std::string> sel = cfg.checks;
    if (cfg.all || sel.empty()) sel = {"all"};
    for (const auto& id : sel)
        if (id != "all") find_check(id);
    auto reports = run_checks(ds, sel);
    out << (cfg.format == "json" ? json_report(reports) : text_report(reports));
    return all_passed(reports) ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact intersection tables and cone duality for Hilb3P2 and Hilb3P3", "hilbcone"};
    app.require_subcommand(1);
    app.fallthrough();
    Config cfg;
    app.add_option("--dataset", cfg.dataset, "dataset JSON (default: bundled data, or $HILBCONE_DATASET)");
    app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"text", "json"}));

    auto* verify_cmd = app.add_subcommand("verify", "run registered checks");
    verify_cmd->add_flag("--all", cfg.all, "run every check");
    verify_cmd->add_option("--check", cfg.checks, "check id (repeatable)");

    auto* pair_cmd = app.add_subcommand("pair", "intersection number of two classes");
    pair_cmd->add_option("args", cfg.positional, "BASIS_A EXPR_A BASIS_B EXPR_B")->expected(4)->allow_extra_args(false)->required();

    auto* convert_cmd = app.add_subcommand("convert", "rewrite a class in another basis");
    convert_cmd->add_option("args", cfg.positional, "EXPR FROM_BASIS TO_BASIS")->expected(3)->allow_extra_args(false)->required();

    auto* dual_cmd = app.add_subcommand("dual", "dual cone of a named cone or cone file");
    dual_cmd->add_option("cone", cfg.positional, "cone id or JSON file")->expected(1)->allow_extra_args(false)->required();
    dual_cmd->add_option("--form", cfg.form, "pairing table id");

    auto* rays_cmd = app.add_subcommand("rays", "extreme rays of a cone");
    rays_cmd->add_option("cone", cfg.positional, "cone id or JSON file")->expected(1)->allow_extra_args(false)->required();

    auto* member_cmd = app.add_subcommand("member", "whether a class lies in a cone");
    member_cmd->add_option("args", cfg.positional, "CONE EXPR")->expected(2)->allow_extra_args(false)->required();

    std::vector<std::string> argv = args;
    std::reverse(argv.begin(), argv.end());
    try {
        app.parse(argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return 2;
    }

    std::string expr_src;
    try {
        std::filesystem::path path = cfg.dataset.empty() ? default_dataset_path() : std::filesystem::path(cfg.dataset);
        Dataset ds = load_dataset(path);
        Calculator calc(ds);
        const bool json = cfg.format == "json";
        const auto& p = cfg.positional;

        if (verify_cmd->parsed()) return verify(ds, cfg, out);

        if (pair_cmd->parsed()) {
            expr_src = p[1];
            CycleClass x = calc.parse_class(p[0], p[1]);
            expr_src = p[3];
            CycleClass y = calc.parse_class(p[2], p[3]);
            expr_src.clear();
            Rational v = calc.pair(x, y);
            if (json) {
                ordered_json doc{{"value", v.str()}, {"route", describe_route(calc.pairing_route(x.basis, y.basis))}};
                out << doc.dump(2) << "\n";
            } else {
                out << v.str() << "\n";
            }
            return 0;
        }

        if (convert_cmd->parsed()) {
            expr_src = p[0];
            CycleClass x = calc.parse_class(p[1], p[0]);
            expr_src.clear();
            CycleClass y = calc.convert(x, p[2]);
            std::string text = render(y, ds.basis(p[2]));
            if (json) {
                const auto& route = calc.conversion(p[1], p[2]).bases;
                ordered_json doc{{"basis", p[2]}, {"expr", text}, {"coords", vec_json(y.coords)}, {"route", route}};
                out << doc.dump(2) << "\n";
            } else {
                out << text << "\n";
            }
            return 0;
        }

        if (dual_cmd->parsed() || rays_cmd->parsed()) {
            LoadedCone c = load_cone(ds, p[0]);
            if (rays_cmd->parsed()) {
                print_cone(out, ds, c.id, c.basis, c.cone.ambient_dim(), describe(c.cone), cfg.format);
                return 0;
            }
            Cone dual = [&] {
                if (cfg.form.empty()) return dual_cone(c.cone);
                auto [g, target] = form_for(calc, c, ds.pairing(cfg.form));
                c.basis = target;
                return dual_cone_with_form(c.cone, BilinearForm(g));
            }();
            if (cfg.form.empty() && c.basis) c.basis.reset();  // the standard dot product has no basis on the other side
            print_cone(out, ds, c.id + ".dual", c.basis, dual.ambient_dim(), describe(dual), cfg.format);
            return 0;
        }

        if (member_cmd->parsed()) {
            LoadedCone c = load_cone(ds, p[0]);
            if (!c.basis) throw UnknownBasisError("cone " + c.id + " has no basis to read '" + p[1] + "' in");
            expr_src = p[1];
            CycleClass x = calc.parse_class(*c.basis, p[1]);
            expr_src.clear();
            bool in = contains(c.cone, x.coords);
            if (json) {
                out << ordered_json{{"cone", c.id}, {"expr", render(x, ds.basis(*c.basis))}, {"member", in}}.dump(2) << "\n";
            } else {
                out << (in ? "true" : "false") << "\n";
            }
            return 0;
        }
    } catch (const ParseError& e) {
        print_parse_error(err, expr_src, e);
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << kind_of(e) << e.what() << "\n";
        return 2;
    }
    return 2;
}

}  // namespace hilbcone::cli
