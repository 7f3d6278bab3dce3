// ck: command-line front end.
//
//   ck decompose --punctured-elliptic --level 4
//   ck dims --punctured-elliptic --level 3 --rank 1 --s-size 1 --delta 0
//   ck ck-element [--cleared] [--generic --weight-bound N] [--verify-only]
//   ck points --curve 128a2 --S 2 --p 5
//   ck lvalue --p 5 --ap 1 --prec 2 --symbols table.json
//
// Exit codes: 0 ok, 2 invalid input, 3 uncovered formula range, 4 identity failure.

#include "ck/ck.hpp"
#include "ck/io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace {

using ck::io::json;
using ck::io::to_json;

struct Output {
    json doc;
    std::string table;
};

struct ShapeFlags {
    bool punctured_elliptic = false, affine = false, projective = false;
    int genus = 1;
    int punctures = 1;

    void add(CLI::App* app) {
        auto* pe = app->add_flag("--punctured-elliptic", punctured_elliptic, "elliptic curve minus the origin");
        auto* af = app->add_flag("--affine", affine, "genus g curve minus --punctures points");
        auto* pr = app->add_flag("--projective", projective, "smooth projective curve of genus g");
        pe->excludes(af)->excludes(pr);
        af->excludes(pr);
        app->add_option("--genus", genus, "genus")->check(CLI::NonNegativeNumber);
        app->add_option("--punctures", punctures, "number of punctures (affine)")->check(CLI::PositiveNumber);
    }

    ck::CurveShape shape() const {
        if (projective) return ck::CurveShape::projective(genus);
        if (affine) {
            if (genus < 1) throw ck::InvalidInput("affine shape needs genus >= 1");
            ck::K0Class h1 = ck::K0Class::M(1, 0, genus);
            if (punctures > 1) h1 += ck::K0Class::M(0, 1, punctures - 1);
            return ck::CurveShape::affine(h1);
        }
        if (punctured_elliptic) return ck::CurveShape::punctured_elliptic();
        throw ck::InvalidInput("choose one of --punctured-elliptic, --affine, --projective");
    }
    std::string name() const {
        if (projective) return "projective genus " + std::to_string(genus);
        if (affine) return "affine genus " + std::to_string(genus) + ", " + std::to_string(punctures) + " punctures";
        return "punctured elliptic";
    }
};

std::string pad_right(const std::string& s, std::size_t w) { return s.size() >= w ? s : s + std::string(w - s.size(), ' '); }

// ---------------------------------------------------------------------------

Output run_decompose(const ShapeFlags& sf, int level) {
    if (level < 0) throw ck::InvalidInput("level must be >= 0");
    json levels = json::array(), total = nullptr;
    std::ostringstream t;
    t << "shape: " << sf.name() << "\n";
    if (level > 0) {
        auto g = ck::graded_pieces(sf.shape(), level);
        t << pad_right("k", 4) << pad_right("dim", 8) << "[U[k]]\n";
        for (const auto& [k, c] : g.pieces) {
            levels.push_back({{"level", k}, {"piece", to_json(c)}});
            t << pad_right(std::to_string(k), 4) << pad_right(std::to_string(c.dim()), 8) << ck::to_string(c) << "\n";
        }
        total = to_json(g.total());
        t << "total: " << ck::to_string(g.total()) << " (dim " << g.total().dim() << ")\n";
    }
    return {{{"shape", sf.name()}, {"levels", levels}, {"total", total}}, t.str()};
}

struct DimsFlags {
    std::string level = "3";
    int rank = 0, s_size = -1, delta = 0;
    std::string field = "Q";
    bool s_good = false, s_meets_p = false;
};

Output run_dims(const ShapeFlags& sf, const DimsFlags& f) {
    ck::SelmerContext ctx;
    ctx.rank_r = f.rank;
    const bool use_S = f.s_size >= 0;
    ctx.s_size = use_S ? f.s_size : 0;
    ctx.delta_S = f.delta;
    ctx.s_bad_places = use_S && f.s_size > 0 && !f.s_good;
    ctx.s_meets_p = f.s_meets_p;
    if (f.field == "Q") ctx.field = ck::FieldProfile::rationals();
    else if (f.field == "iq") ctx.field = ck::FieldProfile::imaginary_quadratic();
    else throw ck::InvalidInput("--field must be Q or iq");
    ctx.validate();

    ck::K0Class x;
    if (f.level == "Q") {
        if (!sf.projective) throw ck::InvalidInput("level Q needs --projective");
        x = ck::quadratic_chabauty_piece(sf.genus);
    } else {
        int n = 0;
        try {
            n = std::stoi(f.level);
        } catch (const std::exception&) {
            throw ck::InvalidInput("--level must be a positive integer or Q");
        }
        if (n < 1) throw ck::InvalidInput("--level must be >= 1");
        x = ck::graded_pieces(sf.shape(), n).total(n);
    }
    auto rep = ck::dims_report(x, ctx, use_S);

    Output out;
    json rows = json::array();
    std::ostringstream t;
    t << "shape: " << sf.name() << ", level " << f.level << ", field " << f.field << ", r = " << f.rank;
    if (use_S) t << ", |S| = " << f.s_size << ", delta_S = " << f.delta;
    t << "\n" << pad_right("term", 12) << pad_right("mult", 6) << pad_right(use_S ? "d^S" : "d", 6) << pad_right("l", 6)
      << "c\n";
    for (const auto& r : rep.rows) {
        rows.push_back({{"term", {{"a", r.term.a}, {"b", r.term.b}, {"mult", r.mult}}}, {"d", r.d}, {"l", r.l}, {"c", r.c}});
        t << pad_right(ck::to_string(r.term), 12) << pad_right(std::to_string(r.mult), 6) << pad_right(std::to_string(r.d), 6)
          << pad_right(std::to_string(r.l), 6) << r.c << "\n";
    }
    t << pad_right("total", 18) << pad_right(std::to_string(rep.d_total), 6) << pad_right(std::to_string(rep.l_total), 6)
      << rep.c_total << "\n";
    t << "finite: " << (rep.finite ? "true" : "false") << " (margin " << rep.c_total << ")\n";
    out.doc = {{"shape", sf.name()},
               {"level", f.level},
               {"class", to_json(x)},
               {"context",
                {{"field", f.field}, {"rank", f.rank}, {"s_size", ctx.s_size}, {"delta_S", ctx.delta_S}, {"use_S", use_S}}},
               {"rows", rows},
               {"totals", {{"d", rep.d_total}, {"l", rep.l_total}, {"c", rep.c_total}}},
               {"finite", rep.finite},
               {"margin", rep.c_total}};
    out.table = t.str();
    return out;
}

// ---------------------------------------------------------------------------

struct ElementFlags {
    bool cleared = false, generic = false, verify_only = false;
    int weight_bound = 8;
};

Output run_ck_element(const ElementFlags& f) {
    Output out;
    std::ostringstream t;
    auto K = ck::build_K();
    auto L = ck::build_L();
    auto e = ck::build_final(f.cleared);
    const bool w3 = K.image.coeff({0, 0, 1}).is_zero();
    const bool w1w2 = L.image.coeff({1, 1, 0}).is_zero();
    const bool vanish = e.vanishes();
    json checks = {{"K_w3_cancels", w3}, {"L_w1w2_cancels", w1w2}, {"final_vanishes", vanish}};
    auto yes = [](bool b) { return b ? "true" : "false"; };
    t << "c#(K) has no w3 term: " << yes(w3) << "\n"
      << "c#(L) has no w1*w2 term: " << yes(w1w2) << "\n"
      << "c#(final) = 0: " << yes(vanish) << "\n";
    out.doc["checks"] = checks;
    if (!f.verify_only) {
        out.doc["element"] = to_json(e);
        out.doc["transcript"] = {{"K", {{"element", to_json(K.element)}, {"image", to_json(K.image)}}},
                                 {"L", {{"element", to_json(L.element)}, {"image", to_json(L.image)}}}};
        t << "\nelement" << (f.cleared ? " (cleared)" : "") << ", denominator " << ck::to_string(e.denominator) << ":\n";
        for (const auto& [m, x] : e.terms) {
            auto c = e.coefficient(m);
            t << "  " << pad_right(ck::to_string(m), 7) << (c ? ck::to_string(*c) : "(" + ck::to_string(x) + ") / denominator")
              << "\n";
        }
    }
    if (f.generic) {
        auto r = ck::generic_eliminate(ck::ck_monomial_basis(), f.weight_bound);
        bool member = ck::in_span(e, r);
        out.doc["generic"] = {{"weight_bound", f.weight_bound},
                              {"dim_per_weight", r.dim_per_weight},
                              {"dimension", r.dimension()},
                              {"contains_final", member}};
        t << "\ngeneric elimination, coefficient weight <= " << f.weight_bound << ": dimension " << r.dimension()
          << ", per weight [";
        for (std::size_t i = 0; i < r.dim_per_weight.size(); ++i) t << (i ? "," : "") << r.dim_per_weight[i];
        t << "], contains final element: " << yes(member) << "\n";
    }
    out.table = t.str();
    if (!(w3 && w1w2 && vanish)) throw ck::IdentityFailure("verification transcript failed\n" + t.str());
    return out;
}

// ---------------------------------------------------------------------------

struct PointsFlags {
    std::string curve, model, model_file, transform, registry = std::string(CK_DATA_DIR) + "/curves.json";
    std::vector<std::int64_t> S;
    bool S_given = false;
    std::int64_t p = 0;
    std::vector<std::int64_t> bad;
    std::int64_t max_num = 10'000'000, max_den = 1024;
};

std::vector<ck::Rational> parse_list(const std::string& s, std::size_t n, const char* what) {
    std::vector<ck::Rational> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(ck::parse_rational(item));
    if (out.size() != n) throw ck::InvalidInput(std::string(what) + " needs " + std::to_string(n) + " comma-separated values");
    return out;
}

Output run_points(PointsFlags f) {
    std::optional<ck::WeierstrassModel> model;
    std::optional<ck::ModelTransform> tr;
    std::string label = "custom";
    if (!f.curve.empty()) {
        auto reg = ck::io::load_curve_registry(f.registry);
        auto it = reg.find(f.curve);
        if (it == reg.end()) throw ck::InvalidInput("unknown curve label " + f.curve);
        model = it->second.model;
        tr = it->second.short_transform;
        if (!f.S_given) f.S = it->second.S;
        label = f.curve;
    } else if (!f.model.empty()) {
        auto a = parse_list(f.model, 5, "--model");
        model.emplace(a[0], a[1], a[2], a[3], a[4]);
    } else if (!f.model_file.empty()) {
        model = ck::io::model_from_json(ck::io::read_json_file(f.model_file));
    } else {
        throw ck::InvalidInput("give --curve, --model or --model-file");
    }
    if (!f.transform.empty()) {
        auto v = parse_list(f.transform, 4, "--transform");
        tr = ck::ModelTransform{v[0], v[1], v[2], v[3]};
    }

    auto pts = ck::search_S_integral_points(*model, f.S, {f.max_num, f.max_den});
    std::optional<ck::WeierstrassModel> shortm;
    std::vector<ck::RationalPoint> mapped;
    if (tr) {
        shortm = ck::apply_transform(*model, *tr);
        for (const auto& q : pts) mapped.push_back(ck::map_point(*tr, q));
    }

    Output out;
    std::ostringstream t;
    json S = f.S;
    t << "curve " << label << " " << model->to_string() << ", S = {";
    for (std::size_t i = 0; i < f.S.size(); ++i) t << (i ? "," : "") << f.S[i];
    t << "}, |num x| <= " << f.max_num << ", den x <= " << f.max_den << "\n";
    if (shortm) t << "transformed model " << shortm->to_string() << "\n";
    t << "known points: " << pts.size() << "\n";
    json jp = json::array();
    for (std::size_t i = 0; i < pts.size(); ++i) {
        json row = {{"label", "P" + std::to_string(i)}, {"point", to_json(pts[i])}};
        t << "  " << pad_right("P" + std::to_string(i), 5) << pad_right(ck::to_string(pts[i]), 28);
        if (tr) {
            row["transformed"] = to_json(mapped[i]);
            t << ck::to_string(mapped[i]);
        }
        t << "\n";
        jp.push_back(row);
    }
    out.doc = {{"curve", label}, {"model", model->to_string()}, {"S", S},
               {"bound", {{"numerator", f.max_num}, {"denominator", f.max_den}}}};
    if (shortm) out.doc["transformed_model"] = shortm->to_string();
    out.doc["known_points"] = jp;

    auto names = [](const std::vector<std::size_t>& idx) {
        std::vector<std::string> s;
        for (auto i : idx) s.push_back("P" + std::to_string(i));
        return s;
    };
    auto join = [](const std::vector<std::string>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i];
        return "{" + s + "}";
    };

    if (f.p) {
        const auto& dm = shortm ? *shortm : *model;
        auto discs = ck::residue_disc_partition(dm, f.p, shortm ? mapped : pts);
        json rows = json::array();
        t << "residue discs mod " << f.p << " on " << (shortm ? "transformed" : "given") << " model: " << discs.size() << "\n";
        for (std::size_t i = 0; i < discs.size(); ++i) {
            const auto& d = discs[i];
            std::string nm = "R" + std::to_string(i + 1);
            rows.push_back({{"disc", nm}, {"centre", {d.centre.first, d.centre.second}}, {"members", names(d.members)}});
            t << "  " << pad_right(nm, 5) << pad_right("(" + std::to_string(d.centre.first) + "," + std::to_string(d.centre.second) + ")", 10)
              << join(names(d.members)) << "\n";
        }
        out.doc["residue_discs"] = {{"p", f.p}, {"model", shortm ? "transformed" : "given"}, {"discs", rows}};
    }
    json bads = json::array();
    for (auto v : f.bad) {
        auto part = ck::classify_at_bad_prime(*model, v, pts);
        json classes = json::array();
        t << "fiber classes at " << v;
        if (part.node) t << ", node (" << part.node->first << "," << part.node->second << ")";
        t << "\n";
        for (const auto& c : part.classes) {
            classes.push_back({{"label", c.label}, {"members", names(c.members)}});
            t << "  " << pad_right(c.label, 8) << join(names(c.members)) << "\n";
        }
        json b = {{"v", v}, {"classes", classes}};
        if (part.node) b["node"] = {part.node->first, part.node->second};
        bads.push_back(b);
    }
    if (!f.bad.empty()) out.doc["bad_primes"] = bads;
    if (!f.S.empty()) {
        auto d = ck::delta_S(*model, f.S);
        out.doc["delta_S"] = {{"value", d.value}, {"skipped", d.skipped}};
        t << "delta_S = " << d.value;
        if (d.skipped) t << " (" << d.skipped << " members of S not multiplicative, skipped)";
        t << "\n";
    }
    out.table = t.str();
    return out;
}

// ---------------------------------------------------------------------------

Output run_lvalue(std::int64_t p, std::int64_t ap, int prec, const std::string& symbols) {
    auto table = ck::io::load_modular_symbols(symbols);
    auto alpha = ck::hensel_unit_root({p, ap}, prec);
    auto s = ck::mazur_stickelberger_sum({p, ap}, table, prec);
    Output out;
    out.doc = {{"p", p}, {"ap", ap}, {"prec", prec}, {"alpha", to_json(alpha)}, {"sum", to_json(s)},
               {"nonzero", ck::is_nonzero_at_precision(s)}};
    std::ostringstream t;
    t << "unit root alpha = " << alpha.to_string() << "\n"
      << "sum = " << s.to_string() << "\n"
      << "nonzero: " << (ck::is_nonzero_at_precision(s) ? "true" : "false") << "\n";
    out.table = t.str();
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Chabauty-Kim toolkit: motivic dimensions, cocycle elimination, worked curve data"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string format = "table", out_path;
    app.add_option("--format", format, "json or table")->check(CLI::IsMember({"json", "table"}));
    app.add_option("--out", out_path, "write output to this file");

    ShapeFlags dec_shape, dims_shape;
    int dec_level = 1;
    auto* dec = app.add_subcommand("decompose", "graded pieces of the fundamental group");
    dec_shape.add(dec);
    dec->add_option("--level", dec_level, "highest level")->required();

    DimsFlags dims_flags;
    auto* dims = app.add_subcommand("dims", "Selmer dimension table and finiteness verdict");
    dims_shape.add(dims);
    dims->add_option("--level", dims_flags.level, "level (integer) or Q");
    dims->add_option("--rank", dims_flags.rank, "Mordell-Weil rank r")->check(CLI::NonNegativeNumber);
    dims->add_option("--s-size", dims_flags.s_size, "|S|; selects S-integral dimensions")->check(CLI::NonNegativeNumber);
    dims->add_option("--delta", dims_flags.delta, "split multiplicative places in S")->check(CLI::NonNegativeNumber);
    dims->add_option("--field", dims_flags.field, "Q or iq (imaginary quadratic, p split)");
    dims->add_flag("--s-good", dims_flags.s_good, "S contains no place of bad reduction");
    dims->add_flag("--s-meets-p", dims_flags.s_meets_p, "S contains a place above p");

    ElementFlags el;
    auto* elem = app.add_subcommand("ck-element", "the level-3 Chabauty-Kim ideal element");
    elem->add_flag("--cleared", el.cleared, "multiply through by the denominator");
    elem->add_flag("--generic", el.generic, "run the generic elimination as well");
    elem->add_option("--weight-bound", el.weight_bound, "coefficient weight bound for --generic")->check(CLI::NonNegativeNumber);
    elem->add_flag("--verify-only", el.verify_only, "print only the three checks");

    PointsFlags pf;
    auto* pts = app.add_subcommand("points", "known S-integral points, residue discs, fiber classes");
    pts->add_option("--curve", pf.curve, "label in the curve registry (102a1, 128a2)");
    pts->add_option("--model", pf.model, "a1,a2,a3,a4,a6");
    pts->add_option("--model-file", pf.model_file, "JSON object with keys a1..a6");
    pts->add_option("--transform", pf.transform, "u,r,s,t to a second model for residue discs");
    pts->add_option("--registry", pf.registry, "curve registry file");
    auto* s_opt = pts->add_option("--S", pf.S, "primes of S")->delimiter(',');
    pts->add_option("--p", pf.p, "prime for residue discs");
    pts->add_option("--bad", pf.bad, "bad primes to classify")->delimiter(',');
    pts->add_option("--max-num", pf.max_num, "bound on |numerator of x|");
    pts->add_option("--max-den", pf.max_den, "bound on denominator of x");

    std::int64_t lp = 0, lap = 0;
    int lprec = 0;
    std::string symbols;
    auto* lv = app.add_subcommand("lvalue", "Mazur-Stickelberger sum from a modular symbol file");
    lv->add_option("--p", lp, "prime")->required();
    lv->add_option("--ap", lap, "trace of Frobenius at p")->required();
    lv->add_option("--prec", lprec, "precision")->required();
    lv->add_option("--symbols", symbols, "JSON array of {r, phi}")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        Output out;
        if (*dec) out = run_decompose(dec_shape, dec_level);
        else if (*dims) out = run_dims(dims_shape, dims_flags);
        else if (*elem) out = run_ck_element(el);
        else if (*pts) {
            pf.S_given = s_opt->count() > 0;
            out = run_points(pf);
        } else if (*lv) out = run_lvalue(lp, lap, lprec, symbols);

        std::string text = format == "json" ? out.doc.dump(2) + "\n" : out.table;
        if (out_path.empty()) {
            std::cout << text;
        } else {
            std::ofstream f(out_path);
            if (!f) throw ck::InvalidInput("cannot write " + out_path);
            f << text;
        }
        return 0;
    } catch (const ck::InvalidInput& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const ck::UncoveredRange& e) {
        std::cerr << "uncovered range: " << e.what() << "\n";
        return 3;
    } catch (const ck::IdentityFailure& e) {
        std::cerr << "identity failure: " << e.what() << "\n";
        return 4;
    } catch (const std::domain_error& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    }
}
