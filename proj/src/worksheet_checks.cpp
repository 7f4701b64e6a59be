#include <algorithm>
#include <set>
#include <variant>

#include "hilbcone/expr.hpp"
#include "hilbcone/worksheets.hpp"

namespace hilbcone {

namespace {

constexpr Tag kPaper = Tag::Paper;
constexpr Tag kTrivial = Tag::Trivial;
constexpr Tag kDerived = Tag::Derived;

Cone named_cone(const Dataset& ds, const std::string& id) {
    const NamedCone& c = ds.cone(id);
    return Cone(c.dim, c.rays);
}

const GradedBasis* cone_basis(const Dataset& ds, const std::string& id) {
    const NamedCone& c = ds.cone(id);
    return c.basis ? &ds.basis(*c.basis) : nullptr;
}

std::vector<Ray> listed(const Dataset& ds, const std::string& id) { return canonical_sorted(ds.cone(id).rays); }

Cone dual_under(const Calculator& calc, const Cone& c, const std::string& from, const std::string& to) {
    return dual_cone_with_form(c, BilinearForm(calc.form_between(from, to)));
}

std::vector<QVector> expr_vectors(const CheckContext& ctx, const std::string& id) {
    const ExprList& l = ctx.ds.constant_as<ExprList>(id);
    std::vector<QVector> out;
    for (const auto& e : l.exprs) out.push_back(ctx.calc.parse_class(l.basis, e).coords);
    return out;
}

std::vector<QVector> converted(const Calculator& calc, const std::vector<QVector>& vs, const std::string& from, const std::string& to) {
    const QMatrix& m = calc.conversion(from, to).matrix;
    std::vector<QVector> out;
    for (const auto& v : vs) out.push_back(mat_vec(m, v));
    return out;
}

void expect_class(Sheet& s, const std::string& key, const Dataset& ds, const CycleClass& got, const CycleClass& want) {
    if (got.basis != want.basis) {
        s.expect(key, false, "class lives in " + got.basis + ", expected " + want.basis);
        return;
    }
    const GradedBasis& b = ds.basis(want.basis);
    s.expect_eq(key, render(got, b), render(want, b));
}

void expect_vector(Sheet& s, const std::string& key, const QVector& got, const QVector& want) {
    s.expect_eq(key, QMatrix::from_rows({got}, got.size()), QMatrix::from_rows({want}, want.size()));
}

const NamedClass& stored(const Dataset& ds, const std::string& name) {
    if (const NamedClass* c = ds.find_class(name)) return *c;
    throw UnknownEntryError("unknown class '" + name + "'");
}

// Pairing numbers of x against every element of `against`.
QVector pairing_row(const Calculator& calc, const CycleClass& x, const std::string& against) {
    QMatrix g = calc.form_between(x.basis, against);
    return mat_vec(mat_transpose(g), x.coords);
}

void smoke(const CheckContext&, Sheet& s) {
    for (std::size_t d : {2, 3}) {
        Cone o = Cone::orthant(d);
        Cone dual = dual_cone(o);
        s.expect("orthant" + std::to_string(d) + " self-dual", cones_equal(dual, o) && extreme_rays(dual) == extreme_rays(o),
                 rays_as_exprs(extreme_rays(dual), nullptr));
    }
}

void el_ms_consistency(const CheckContext& ctx, Sheet& s) {
    const auto& ds = ctx.ds;
    const QMatrix& el = ds.pairing("i4x2.el").matrix;
    const QMatrix& ms = ds.pairing("i4x2.ms").matrix;
    const QMatrix& e4 = ds.basis_change("e4.p2.el.ms").matrix;
    const QMatrix& e2 = ds.basis_change("e2.p2.el.ms").matrix;
    s.expect_eq("EL A4xA2 table through the conversion equations", mat_mul(mat_mul(mat_transpose(e4), ms), e2), el);

    const auto& hg = ds.constant_as<PairingRow>("Hg.row");
    expect_class(s, "Hg from its pairing row", ds, ctx.calc.class_from_pairings(hg.values, hg.against, "p2.ms.a3"),
                 stored(ds, "Hg").value);
    const auto& vh = ds.constant_as<PairingRow>("VH.row");
    expect_class(s, "V.H from its pairing row", ds, ctx.calc.class_from_pairings(vh.values, vh.against, "p2.ms.a2"),
                 stored(ds, "VH").value);
}

void small_plane_cones(const CheckContext& ctx, Sheet& s) {
    struct Pair {
        const char* key;
        const char* cone;
        const char* other;
    };
    for (const Pair& p : {Pair{"Eff2 dual is the listed Nef2", "eff2.p2", "nef2.p2"}, Pair{"Nef2 dual is the listed Eff2", "nef2.p2", "eff2.p2"},
                          Pair{"Eff3 dual is the listed Nef3", "eff3.p2", "nef3.p2"}, Pair{"Nef3 dual is the listed Eff3", "nef3.p2", "eff3.p2"}}) {
        const GradedBasis* from = cone_basis(ctx.ds, p.cone);
        const GradedBasis* to = cone_basis(ctx.ds, p.other);
        Cone dual = dual_under(ctx.calc, named_cone(ctx.ds, p.cone), from->id, to->id);
        if (!lineality_space(dual).empty()) {
            s.expect(p.key, false, "dual has a lineality space");
            continue;
        }
        s.expect_rays(p.key, extreme_rays(dual), listed(ctx.ds, p.other), to);
    }
}

void p3_conversion(const CheckContext& ctx, Sheet& s) {
    const auto& ds = ctx.ds;
    const auto& calc = ctx.calc;
    const QMatrix& e2 = ds.basis_change("e2.rl.ms").matrix;
    const QMatrix& e7 = ds.basis_change("e7.rl.ms").matrix;
    QMatrix transported = mat_mul(mat_mul(mat_transpose(mat_inverse(e2)), ds.pairing("i2x7.rl").matrix), mat_inverse(e7));
    s.expect_eq("RL A2xA7 table transported to the MS table", transported, mat_transpose(ds.pairing("i2x7.ms").matrix));

    expect_class(s, "l = Et", ds, calc.convert(calc.element("p3.rl.a7", "l"), "p3.ms.a7"), calc.parse_class("p3.ms.a7", "Et"));
    expect_class(s, "P2Hlp = 2 beta + 3 delta + 2 epsilon + mu", ds, calc.convert(calc.element("p3.rl.a2", "P2*H*l*p"), "p3.ms.a2"),
                 calc.parse_class("p3.ms.a2", "2*beta + 3*delta + 2*epsilon + mu"));

    const auto& mu = ds.constant_as<PairingRow>("mu.row");
    CycleClass mu_rl = calc.class_from_pairings(mu.values, mu.against, "p3.rl.a2");
    expect_class(s, "mu from its pairing row", ds, mu_rl, stored(ds, "mu.rl").value);
    expect_class(s, "mu in RL converts to mu", ds, calc.convert(mu_rl, "p3.ms.a2"), calc.element("p3.ms.a2", "mu"));
}

void extended_ms_pairing(const CheckContext& ctx, Sheet& s) {
    const auto& ds = ctx.ds;
    const auto& calc = ctx.calc;
    const QMatrix& e3 = ds.basis_change("e3.ms.rl").matrix;
    QMatrix e6_ms_rl = mat_inverse(ds.basis_change("e6.rl.ms").matrix);
    s.expect_eq("MS A3xA6 table from the RL table and E-matrices",
                mat_mul(mat_mul(mat_transpose(e3), ds.pairing("i3x6.rl").matrix), e6_ms_rl), ds.pairing("i3x6.ms").matrix);

    for (auto [key, row, label] : {std::tuple{"P3P2H from its MS pairing row", "P3P2H.row", "P3*P2*H"},
                                   std::tuple{"P3PH^2 from its MS pairing row", "P3PH2.row", "P3*P*H^2"}}) {
        const auto& r = ds.constant_as<PairingRow>(row);
        expect_class(s, key, ds, calc.class_from_pairings(r.values, r.against, "p3.rl.a3"), calc.element("p3.rl.a3", label));
    }
    expect_class(s, "P2H in the MS basis", ds, calc.convert(calc.element("p3.rl.a6", "P2*H"), "p3.ms.a6"), stored(ds, "P2H.ms").value);
    expect_class(s, "PH^2 in the MS basis", ds, calc.convert(calc.element("p3.rl.a6", "P*H^2"), "p3.ms.a6"), stored(ds, "PH2.ms").value);
}

void e_matrix_identities(const CheckContext& ctx, Sheet& s) {
    const auto& ds = ctx.ds;
    const QMatrix& e3_ms_rl = ds.basis_change("e3.ms.rl").matrix;
    const QMatrix& e3_rl_ms = ds.basis_change("e3.rl.ms").matrix;
    const QMatrix& i36_ms = ds.pairing("i3x6.ms").matrix;
    const QMatrix& i36_rl = ds.pairing("i3x6.rl").matrix;
    const QMatrix& e6 = ds.basis_change("e6.rl.ms").matrix;
    s.expect_eq("E3,MS,RL times E3,RL,MS is the identity", mat_mul(e3_ms_rl, e3_rl_ms), QMatrix::identity(e3_ms_rl.rows()));

    QMatrix formula = mat_mul(mat_inverse(mat_transpose(mat_mul(i36_ms, e3_ms_rl))), i36_rl);
    s.expect_eq("E6,RL,MS from the displayed formula", formula, e6);
    if (formula != e6) {
        QMatrix swapped = mat_mul(mat_inverse(mat_transpose(mat_mul(i36_ms, e3_rl_ms))), i36_rl);
        QMatrix pairing_consistent = mat_mul(mat_mul(mat_inverse(i36_ms), mat_transpose(e3_ms_rl)), i36_rl);
        s.note(std::string("with E3,RL,MS in place of E3,MS,RL the same formula ") +
               (swapped == e6 ? "reproduces" : "does not reproduce") + " the stored E6,RL,MS");
        s.note(std::string("I36MS^-1 E3,MS,RL^T I36RL (forced by the two pairing tables) ") +
               (pairing_consistent == e6 ? "reproduces" : "does not reproduce") + " the stored E6,RL,MS");
    }
}

struct TheoremCase {
    std::string eff, nef;  // MS cones
    std::string eff_basis, nef_basis;
    std::string e_eff, e_nef;  // e-bases
    std::string e_eff_list, e_nef_list;
    std::string theorem_eff, theorem_nef;
    std::size_t n_eff, n_nef;
};

void main_theorem(const CheckContext& ctx, Sheet& s, const TheoremCase& t) {
    const auto& ds = ctx.ds;
    const auto& calc = ctx.calc;
    const GradedBasis* nef_basis = &ds.basis(t.nef_basis);
    const GradedBasis* eff_basis = &ds.basis(t.eff_basis);

    QMatrix g = calc.form_between(t.e_eff, t.e_nef);
    s.expect_eq("e-basis duality", g, QMatrix::identity(g.rows()));

    std::vector<Ray> eff = listed(ds, t.eff);
    std::vector<Ray> nef = listed(ds, t.nef);
    s.expect("generator counts", eff.size() == t.n_eff && nef.size() == t.n_nef,
             std::to_string(eff.size()) + " effective, " + std::to_string(nef.size()) + " nef");
    s.expect_rays("theorem list matches the effective matrix", canonical_sorted(expr_vectors(ctx, t.theorem_eff)), eff, eff_basis);
    s.expect_rays("theorem list matches the nef matrix", canonical_sorted(expr_vectors(ctx, t.theorem_nef)), nef, nef_basis);

    std::vector<QVector> c_e = expr_vectors(ctx, t.e_eff_list);
    s.expect_rays("e-basis cone C is the effective cone", canonical_sorted(converted(calc, c_e, t.e_eff, t.eff_basis)), eff, eff_basis);

    Cone dual = dual_under(calc, named_cone(ds, t.eff), t.eff_basis, t.nef_basis);
    s.expect("dual is pointed", lineality_space(dual).empty(), std::to_string(lineality_space(dual).size()) + " lineality directions");
    s.expect_rays("dual extreme rays are the listed nef generators", extreme_rays(dual), nef, nef_basis);

    s.expect_rays("listed effective generators are irredundant", extreme_rays(named_cone(ds, t.eff)), eff, eff_basis);
    s.expect_rays("listed nef generators are irredundant", extreme_rays(named_cone(ds, t.nef)), nef, nef_basis);

    Cone dual_e = dual_cone(Cone(c_e.size() ? c_e.front().size() : 0, c_e));
    s.expect_rays("dual computed in the e-basis", canonical_sorted(converted(calc, directions(extreme_rays(dual_e)), t.e_nef, t.nef_basis)),
                  nef, nef_basis);

    // The printed e*-basis dual list is reported, not gated.
    const ExprList& printed = ds.constant_as<ExprList>(t.e_nef_list);
    std::vector<std::string> outside;
    for (const auto& e : printed.exprs)
        if (!contains(dual_e, calc.parse_class(printed.basis, e).coords)) outside.push_back(e);
    Cone printed_cone(dual_e.ambient_dim(), expr_vectors(ctx, t.e_nef_list));
    std::string msg = "printed e*-basis dual list has " + std::to_string(printed.exprs.size()) + " generators";
    if (outside.empty()) {
        msg += ", all inside the computed dual";
    } else {
        msg += "; not in the computed dual:";
        for (const auto& e : outside) msg += " " + e;
    }
    msg += cones_equal(printed_cone, dual_e) ? "; spans the computed dual" : "; does not span the computed dual";
    s.note(msg);
}

void theorem_codim2(const CheckContext& ctx, Sheet& s) {
    main_theorem(ctx, s,
                 {"eff2.ms", "nef2.ms", "p3.ms.a2", "p3.ms.a7", "p3.e.a2", "p3.e.a7", "proof.eff2.e", "proof.nef2.e", "theorem.eff2",
                  "theorem.nef2", 7, 8});
}

void theorem_codim3(const CheckContext& ctx, Sheet& s) {
    main_theorem(ctx, s,
                 {"eff3.ms", "nef3.ms", "p3.ms.a3", "p3.ms.a6", "p3.e.a3", "p3.e.a6", "proof.eff3.e", "proof.nef3.e", "theorem.eff3",
                  "theorem.nef3", 13, 26});
    const auto& calc = ctx.calc;
    CycleClass e10 = calc.convert(calc.element("p3.e.a6", "e10d"), "p3.ms.a6");
    expect_class(s, "e10* = N4/9", ctx.ds, e10, calc.parse_class("p3.ms.a6", "1/9*N4"));
    s.expect_eq("nu4 pairs to 1 with e10*", calc.pair(calc.element("p3.ms.a3", "nu4"), e10), Rational(1));
}

void corollaries(const CheckContext& ctx, Sheet& s) {
    const auto& ds = ctx.ds;
    for (auto [key, ms, rl] : {std::tuple{"M2,RL,Eff", "eff2.ms", "eff2.rl"}, std::tuple{"M2,RL,Nef", "nef2.ms", "nef2.rl"},
                               std::tuple{"M3,RL,Eff", "eff3.ms", "eff3.rl"}, std::tuple{"M3,RL,Nef", "nef3.ms", "nef3.rl"}}) {
        const NamedCone& from = ds.cone(ms);
        const NamedCone& to = ds.cone(rl);
        const QMatrix& m = ctx.calc.conversion(*from.basis, *to.basis).matrix;
        s.expect_eq(key, mat_mul(m, QMatrix::from_columns(from.rays)), QMatrix::from_columns(to.rays));
    }
}

// One summand of a reduction script: a stored scalar, a table lookup, or a product the data does not house.
struct Lookup {
    std::string basis_x, expr_x, basis_y, expr_y;
};
struct Unhoused {};
struct Atom {
    Rational coef;
    std::string name;
    std::variant<std::string, Lookup, Unhoused> source;  // string: scalar constant id
};

std::string ms_twin(std::string basis) {
    auto at = basis.find(".rl.");
    if (at == std::string::npos) throw UnknownBasisError("no MS counterpart for " + basis);
    return basis.replace(at, 4, ".ms.");
}

Rational run_script(const CheckContext& ctx, Sheet& s, const std::string& title, const std::vector<Atom>& atoms) {
    // Equal names are collected first, so terms that cancel are never looked up.
    std::vector<std::pair<const Atom*, Rational>> merged;
    for (const auto& a : atoms) {
        auto it = std::find_if(merged.begin(), merged.end(), [&](const auto& m) { return m.first->name == a.name; });
        if (it == merged.end()) {
            merged.emplace_back(&a, a.coef);
        } else {
            it->second += a.coef;
        }
    }
    Rational total = 0;
    std::string trace = title + " =";
    for (const auto& [atom, coef] : merged) {
        if (coef.is_zero()) {
            trace += " [" + atom->name + " cancels]";
            continue;
        }
        Rational value = std::visit(
            [&](const auto& src) -> Rational {
                using T = std::decay_t<decltype(src)>;
                if constexpr (std::is_same_v<T, std::string>) {
                    return ctx.ds.constant_as<ScalarConstant>(src).value;
                } else if constexpr (std::is_same_v<T, Lookup>) {
                    return ctx.calc.pair(ctx.calc.parse_class(src.basis_x, src.expr_x), ctx.calc.parse_class(src.basis_y, src.expr_y));
                } else {
                    throw Error("script needs the unhoused product " + atom->name);
                }
            },
            atom->source);
        trace += " " + (coef.sign() < 0 ? std::string("- ") : std::string("+ ")) + coef.abs().str() + "*(" + atom->name + " = " + value.str() + ")";
        total += coef * value;
    }
    s.note(trace + " = " + total.str());
    return total;
}

void corrections(const CheckContext& ctx, Sheet& s) {
    const auto& ds = ctx.ds;
    const Rational k = ds.constant_as<ScalarConstant>("P2^2*p/P3^2").value;
    const Lookup p3p2h_p2p{"p3.rl.a3", "P3*P2*H", "p3.rl.a6", "P2*P"};
    const Lookup p3p2l_h2{"p3.rl.a2", "P3*P2*l", "p3.rl.a7", "H^2"};
    const Lookup p3sq_h3{"p3.rl.a3", "P3^2", "p3.rl.a6", "H^3"};

    s.expect_eq("PP2^4", run_script(ctx, s, "PP2^4", {{5, "P P2 P3^2", std::string("P3^2*P2*P")}, {-2, "(P3P2H).(P2P)", p3p2h_p2p}}),
                Rational(-2));
    s.expect_eq("PP2^3l", run_script(ctx, s, "PP2^3l",
                                     {{5, "(F-H) l P3^2", std::string("P3^2*l*(F-H)")},
                                      {-2, "P3 P2 F l", std::string("P3*P2*F*l")},
                                      {2, "(P3P2l).(H^2)", p3p2l_h2}}),
                Rational(2));
    Rational ph2 = run_script(ctx, s, "PH^2P2^2p", {{k, "F H^2 P3^2", std::string("F*H^2*P3^2")}, {-k, "(P3^2).(H^3)", p3sq_h3}});
    s.expect_eq("PH^2P2^2p", ph2, Rational(-3));
    s.expect_eq("P^3p^3", run_script(ctx, s, "P^3p^3",
                                     {{4, "P3 p^3", std::string("P3*p^3")},
                                      {4, "Z_S1 p^3", std::string("Z_S1*p^3")},
                                      {1, "P2 H p^3", Unhoused{}},
                                      {-1, "P2 H p^3", Unhoused{}},
                                      {-1, "Z_G H p^3", std::string("Z_G*H*p^3")},
                                      {-3, "P3 p^3", std::string("P3*p^3")}}),
                Rational(1));

    Rational table4 = ds.constant_as<ScalarConstant>("rl90.table4.PH^2*P2^2*p").value;
    Rational table5 = ds.constant_as<ScalarConstant>("rl90.table5.PH^2*P2^2*p").value;
    s.expect_eq("PH^2P2^2p sign agrees with the first reference table", ph2, table4);
    s.note("reference tables list PH^2P2^2p as " + table4.str() + " and " + table5.str() + "; " +
           ds.constant("rl90.table5.PH^2*P2^2*p").provenance);

    bool same = true;
    std::string trace;
    for (const Lookup* l : {&p3p2h_p2p, &p3p2l_h2, &p3sq_h3}) {
        const auto& calc = ctx.calc;
        CycleClass x = calc.parse_class(l->basis_x, l->expr_x);
        CycleClass y = calc.parse_class(l->basis_y, l->expr_y);
        Rational direct = calc.pair(x, y);
        Rational via = calc.pair(calc.convert(x, ms_twin(l->basis_x)), calc.convert(y, ms_twin(l->basis_y)));
        same = same && direct == via;
        trace += (trace.empty() ? "" : ", ") + l->expr_x + "." + l->expr_y + ": " + direct.str() + " vs " + via.str();
    }
    s.expect("lookups agree through the MS bases", same, trace);
}

void appendix_classes(const CheckContext& ctx, Sheet& s) {
    const auto& ds = ctx.ds;
    const auto& calc = ctx.calc;
    const auto& y1 = ds.constant_as<PairingRow>("Y1.row");
    CycleClass y1c = calc.class_from_pairings(y1.values, y1.against, "p3.rl.a6");
    expect_class(s, "Y1 from its pairing row", ds, y1c, stored(ds, "Y1").value);
    expect_class(s, "Y1 = 3P3 - P2H + Pl", ds, y1c, calc.parse_class("p3.rl.a6", "3*P3 - P2*H + P*l"));
    const auto& y2 = ds.constant_as<PairingRow>("Y2.row");
    CycleClass y2c = calc.class_from_pairings(y2.values, y2.against, "p3.rl.a5");
    expect_class(s, "Y2 from its pairing row", ds, y2c, stored(ds, "Y2").value);
    expect_class(s, "Y2 = -P3P - P3H + P2p", ds, y2c, calc.parse_class("p3.rl.a5", "-P3*P - P3*H + P2*p"));
    CycleClass pl = calc.element("p3.rl.a6", "P*l");
    expect_class(s, "Y3 = Pl - Y1", ds, stored(ds, "Y3").value, CycleClass{"p3.rl.a6", pl.coords - y1c.coords});

    const QMatrix& e3 = ds.basis_change("e3.ms.rl").matrix;
    const GradedBasis& ms3 = ds.basis("p3.ms.a3");
    for (int i = 1; i <= 4; ++i) {
        std::string nu = "nu" + std::to_string(i);
        const auto& row = ds.constant_as<PairingRow>(nu + ".row");
        CycleClass got = calc.class_from_pairings(row.values, row.against, "p3.rl.a3");
        expect_vector(s, nu + " row matches its E3,MS,RL column", got.coords, e3.col(*ms3.index_of(nu)));
    }

    const auto& w1 = ds.constant_as<PairingRow>("W1.row");
    const auto& w2 = ds.constant_as<PairingRow>("W2.row");
    const auto& o1y1 = ds.constant_as<PairingRow>("O1Y1.row");
    expect_vector(s, "W1 pairing row", pairing_row(calc, stored(ds, "W1").value, w1.against), w1.values);
    expect_vector(s, "W2 pairing row", pairing_row(calc, stored(ds, "W2").value, w2.against), w2.values);
    expect_vector(s, "W1 + W2 row is the O1.Y1 row", w1.values + w2.values, o1y1.values);
}

void definitional(const CheckContext& ctx, Sheet& s) {
    const auto& ds = ctx.ds;
    const auto& calc = ctx.calc;
    CycleClass f = stored(ds, "F").value;
    expect_class(s, "F = H + P", ds, f, calc.parse_class("p3.rl.a8", "H + P"));
    const auto& frow = ds.constant_as<PairingRow>("F.row");
    expect_class(s, "F row through the plane", ds, calc.class_from_pairings(frow.values, frow.against, "p3.rl.a8"), f);
    CycleClass o1 = stored(ds, "O1").value;
    expect_class(s, "O1 = 2(H - P)", ds, o1, calc.parse_class("p3.rl.a8", "2*H - 2*P"));
    const auto& o1row = ds.constant_as<PairingRow>("O1.row");
    expect_vector(s, "O1 pairing row", pairing_row(calc, o1, o1row.against), o1row.values);
    expect_class(s, "O2col = P^2 - P2", ds, stored(ds, "O2col").value, calc.parse_class("p3.rl.a7", "P^2 - P2"));
    CycleClass o2 = stored(ds, "O2nonred").value;
    expect_class(s, "O2nonred = 3(P2 - PH + l + p)", ds, o2, calc.parse_class("p3.rl.a7", "3*P2 - 3*P*H + 3*l + 3*p"));
    expect_class(s, "O2nonred from the MS expression", ds, calc.convert(stored(ds, "O2nonred.ms").value, "p3.rl.a7"), o2);
    s.expect_eq("O2nonred.mu = 0", calc.pair(o2, calc.element("p3.ms.a2", "mu")), Rational(0));
    for (const auto& c : ds.classes)
        if (!c.scale_known) s.note(c.name + " is stored up to positive scale and takes no part in exact comparisons");
}

struct PatternCones {
    std::vector<QVector> eff;
    std::vector<QVector> nef;
};

// Effective side in coordinates of the chosen basis rows, nef side as functionals on those rows.
PatternCones pattern_cones(const SignPattern& p) {
    const QMatrix& m = p.matrix;
    std::vector<QVector> basis_rows;
    for (auto r : p.basis_rows) basis_rows.push_back(m.row(r));
    QMatrix mb = QMatrix::from_rows(basis_rows, m.cols());
    const std::size_t d = basis_rows.size();
    if (mat_rank(mb) != d) throw DataInvariantError("pattern basis rows are dependent");

    std::vector<std::size_t> cols;
    std::vector<QVector> picked;
    for (std::size_t j = 0; j < m.cols() && cols.size() < d; ++j) {
        picked.push_back(mb.col(j));
        if (rank_of(picked, d) == picked.size()) {
            cols.push_back(j);
        } else {
            picked.pop_back();
        }
    }
    QMatrix square = QMatrix::from_columns(picked);  // d x d, column t = column cols[t] of mb

    PatternCones out;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        std::vector<Rational> rhs;
        for (auto j : cols) rhs.push_back(m(r, j));
        QVector c = mat_solve(mat_transpose(square), QVector(rhs));
        if (mat_vec(mat_transpose(mb), c) != m.row(r))
            throw DataInvariantError("pattern row " + p.row_names[r] + " is not a combination of the basis rows");
        out.eff.push_back(c);
    }
    for (std::size_t j = 0; j < m.cols(); ++j) out.nef.push_back(mb.col(j));
    return out;
}

void cone_patterns(const CheckContext& ctx, Sheet& s) {
    const auto& ds = ctx.ds;
    for (auto [tag, pattern, eff, nef] : {std::tuple{"4-ray", "o3col.pattern5", "pattern4.eff", "pattern4.nef"},
                                          std::tuple{"7-ray", "o3col.pattern3", "pattern7.eff", "pattern7.nef"}}) {
        std::string t = tag;
        PatternCones pc = pattern_cones(ds.constant_as<SignPattern>(pattern));
        s.expect_rays(t + " pattern effective generators", canonical_sorted(pc.eff), listed(ds, eff), nullptr);
        s.expect_rays(t + " pattern nef generators", canonical_sorted(pc.nef), listed(ds, nef), nullptr);
        Cone e = named_cone(ds, eff);
        Cone n = named_cone(ds, nef);
        s.expect_rays(t + " effective dual is the nef cone", extreme_rays(dual_cone(e)), extreme_rays(n), nullptr);
        s.expect_rays(t + " nef dual is the effective cone", extreme_rays(dual_cone(n)), extreme_rays(e), nullptr);
    }
}

void registry_audit(const CheckContext& ctx, Sheet& s) {
    std::set<std::string> ids;
    bool unique = true;
    bool tagged = true;
    std::string problems;
    for (const auto& c : check_registry()) {
        unique = ids.insert(c.id).second && unique;
        std::set<std::string> keys;
        if (c.title.empty() || c.provenance.empty() || c.expected.empty()) {
            tagged = false;
            problems += " " + c.id + ":undeclared";
        }
        for (const auto& e : c.expected) {
            if (e.source.empty() || !keys.insert(e.key).second) {
                tagged = false;
                problems += " " + c.id + ":" + e.key;
            }
        }
    }
    s.expect("check ids are unique", unique, std::to_string(ids.size()) + " checks");
    s.expect("every expected value is tagged and sourced", tagged, problems.empty() ? "all declarations complete" : problems);

    std::size_t missing = 0, total = 0;
    auto audit = [&](const std::string& p) {
        ++total;
        if (p.find_first_not_of(" \t\r\n") == std::string::npos) ++missing;
    };
    const auto& ds = ctx.ds;
    for (const auto& x : ds.spaces) audit(x.provenance);
    for (const auto& x : ds.bases) audit(x.provenance);
    for (const auto& x : ds.classes) audit(x.provenance);
    for (const auto& x : ds.pairings) audit(x.provenance);
    for (const auto& x : ds.basis_changes) audit(x.provenance);
    for (const auto& x : ds.cones) audit(x.provenance);
    for (const auto& x : ds.constants) audit(x.provenance);
    s.expect("every dataset entry carries provenance", missing == 0,
             std::to_string(total - missing) + " of " + std::to_string(total) + " entries");
}

std::vector<Check> build_registry() {
    const std::string shared_theorem = "main theorem generator lists and the cone matrices";
    std::vector<Expectation> theorem_keys = {
        {"e-basis duality", kPaper, "e-basis chosen dual to the e*-basis"},
        {"generator counts", kPaper, "generated by the listed numbers of generators"},
        {"theorem list matches the effective matrix", kPaper, shared_theorem},
        {"theorem list matches the nef matrix", kPaper, shared_theorem},
        {"e-basis cone C is the effective cone", kPaper, "proof rewrites the effective cone in the e-basis"},
        {"dual is pointed", kDerived, "dual of a full-dimensional cone"},
        {"dual extreme rays are the listed nef generators", kPaper, "dual cone computation in the proof"},
        {"listed effective generators are irredundant", kPaper, "listed generators"},
        {"listed nef generators are irredundant", kPaper, "listed generators"},
        {"dual computed in the e-basis", kDerived, "same duality with the identity form"},
    };
    std::vector<Expectation> codim3_keys = theorem_keys;
    codim3_keys.push_back({"e10* = N4/9", kPaper, "e10* = (1/9)N4"});
    codim3_keys.push_back({"nu4 pairs to 1 with e10*", kPaper, "nu4.N4 = 9"});

    return {
        {"W0_smoke", "orthant self-duality", "positive orthant", {{"orthant2 self-dual", kTrivial, "orthant"}, {"orthant3 self-dual", kTrivial, "orthant"}}, smoke},
        {"W1", "EL and MS bases of Hilb3P2 agree", "P2 conversion equations and intersection tables",
         {{"EL A4xA2 table through the conversion equations", kPaper, "EL and MS A4xA2 tables with the EL-to-MS equations"},
          {"Hg from its pairing row", kPaper, "Hg = (Z - U + V) + 3Y"},
          {"V.H from its pairing row", kPaper, "V.H = 2 delta + epsilon"}},
         el_ms_consistency},
        {"W2", "Hilb3P2 effective and nef cones are dual", "effective and nef cones of Hilb3P2 in codimension 2 and 3",
         {{"Eff2 dual is the listed Nef2", kPaper, "listed generators"},
          {"Nef2 dual is the listed Eff2", kPaper, "listed generators"},
          {"Eff3 dual is the listed Nef3", kPaper, "listed generators"},
          {"Nef3 dual is the listed Eff3", kPaper, "listed generators"}},
         small_plane_cones},
        {"W3", "RL to MS conversion in dimensions 2 and 7", "P3 conversion equations",
         {{"RL A2xA7 table transported to the MS table", kPaper, "RL A2xA7 table and the MS in-text table"},
          {"l = Et", kPaper, "l = Et"},
          {"P2Hlp = 2 beta + 3 delta + 2 epsilon + mu", kPaper, "P2Hlp = 2 beta + 3 delta + 2 epsilon + mu"},
          {"mu from its pairing row", kPaper, "mu expressed in the RL basis"},
          {"mu in RL converts to mu", kDerived, "conversion round trip"}},
         p3_conversion},
        {"W4", "extended MS pairing in dimensions 3 and 6", "MS A3xA6 intersection matrix",
         {{"MS A3xA6 table from the RL table and E-matrices", kPaper, "E3,MS,RL^T I36RL E6,MS,RL = I36MS"},
          {"P3P2H from its MS pairing row", kPaper, "P3P2H against the MS A6 basis"},
          {"P3PH^2 from its MS pairing row", kPaper, "P3PH^2 against the MS A6 basis"},
          {"P2H in the MS basis", kPaper, "P2H = -Ut + Vt + 3Yt + Zt"},
          {"PH^2 in the MS basis", kPaper, "PH^2 = Vt - Wt + 4Xt + 2Zt + N3"}},
         extended_ms_pairing},
        {"W5", "E-matrix identities", "E3 and E6 change-of-basis matrices",
         {{"E3,MS,RL times E3,RL,MS is the identity", kPaper, "E3,RL,MS is the inverse of E3,MS,RL"},
          {"E6,RL,MS from the displayed formula", kPaper, "((I36MS E3,MS,RL)^T)^-1 I36RL = E6,RL,MS"}},
         e_matrix_identities},
        {"W6", "codimension 2 effective and nef cones of Hilb3P3", "main theorem, codimension 2", theorem_keys, theorem_codim2},
        {"W7", "codimension 3 effective and nef cones of Hilb3P3", "main theorem, codimension 3", codim3_keys, theorem_codim3},
        {"W8", "RL forms of the cone matrices", "corollary matrices in the RL basis",
         {{"M2,RL,Eff", kPaper, "M2,RL,Eff"}, {"M2,RL,Nef", kPaper, "M2,RL,Nef"}, {"M3,RL,Eff", kPaper, "M3,RL,Eff"}, {"M3,RL,Nef", kPaper, "M3,RL,Nef,1 and 2"}},
         corollaries},
        {"W9", "corrected intersection numbers", "four corrected values and their reductions",
         {{"PP2^4", kPaper, "PP2^4 = -2"},
          {"PP2^3l", kPaper, "PP2^3l = 2"},
          {"PH^2P2^2p", kPaper, "PH^2P2^2p = -3"},
          {"P^3p^3", kPaper, "P^3p^3 = 1"},
          {"PH^2P2^2p sign agrees with the first reference table", kPaper, "sign remark on the reference tables"},
          {"lookups agree through the MS bases", kDerived, "pairing invariance under conversion"}},
         corrections},
        {"W10", "classes recovered from pairing rows", "appendix computations of Y1, Y2, Y3, nu1-nu4, W1, W2",
         {{"Y1 from its pairing row", kPaper, "Y1 pairing table"},
          {"Y1 = 3P3 - P2H + Pl", kPaper, "Y1 = 3P3 - P2H + Pl"},
          {"Y2 from its pairing row", kPaper, "Y2 pairing table"},
          {"Y2 = -P3P - P3H + P2p", kPaper, "Y2 = -P3P - P3H + P2p"},
          {"Y3 = Pl - Y1", kPaper, "Y1 + Y3 = Pl"},
          {"nu1 row matches its E3,MS,RL column", kPaper, "nu intersection values"},
          {"nu2 row matches its E3,MS,RL column", kPaper, "nu intersection values"},
          {"nu3 row matches its E3,MS,RL column", kPaper, "nu intersection values"},
          {"nu4 row matches its E3,MS,RL column", kPaper, "nu intersection values"},
          {"W1 pairing row", kPaper, "k1 = 1"},
          {"W2 pairing row", kPaper, "k2 = 1"},
          {"W1 + W2 row is the O1.Y1 row", kPaper, "O1.Y1 = k1 W1 + k2 W2"}},
         appendix_classes},
        {"W11", "definitional identities", "identities stored as data",
         {{"F = H + P", kPaper, "F = H + P"},
          {"F row through the plane", kDerived, "restriction of F to a plane"},
          {"O1 = 2(H - P)", kPaper, "O1 = 2(H - P)"},
          {"O1 pairing row", kPaper, "O1.P3Hlp = 2, O1.P3Hl^2 = 0"},
          {"O2col = P^2 - P2", kPaper, "O2col = P^2 - P2"},
          {"O2nonred = 3(P2 - PH + l + p)", kPaper, "O2nonred = 3(P2 - PH + l + p)"},
          {"O2nonred from the MS expression", kPaper, "O2nonred = 3(At - Bt + Ct - Dt)"},
          {"O2nonred.mu = 0", kPaper, "O2nonred.mu = 0"}},
         definitional},
        {"W12", "abstract cone patterns", "orbit closure cone patterns",
         {{"4-ray pattern effective generators", kPaper, "<e1, e2, e3, e1 + e2 - e3>"},
          {"4-ray pattern nef generators", kPaper, "<e1*, e2*, e1* + e3*, e2* + e3*>"},
          {"4-ray effective dual is the nef cone", kPaper, "duality of the patterns"},
          {"4-ray nef dual is the effective cone", kPaper, "duality of the patterns"},
          {"7-ray pattern effective generators", kDerived, "sign pattern with basis rows"},
          {"7-ray pattern nef generators", kDerived, "sign pattern with basis rows"},
          {"7-ray effective dual is the nef cone", kPaper, "duality of the patterns"},
          {"7-ray nef dual is the effective cone", kPaper, "duality of the patterns"}},
         cone_patterns},
        {"M0_registry", "registry and dataset audit", "registry metadata",
         {{"check ids are unique", kTrivial, "registry"},
          {"every expected value is tagged and sourced", kTrivial, "registry"},
          {"every dataset entry carries provenance", kTrivial, "dataset"}},
         registry_audit},
    };
}

}  // namespace

const std::vector<Check>& check_registry() {
    static const std::vector<Check> registry = build_registry();
    return registry;
}

}  // namespace hilbcone
