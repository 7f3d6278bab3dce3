// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
//
// The 128a2 L-value verdict needs modular-symbol data that is not bundled. Point
// CK_MODSYM_128A2 at a JSON file of {"r", "phi"} rows (sign -1) to run it; CK_MODSYM_PREC
// sets the precision (default 2).

#include "ck/ck.hpp"
#include "ck/io.hpp"
#include "oracles/rep_oracle.hpp"
#include "oracles/shuffle_oracle.hpp"
#include "worked_curves.hpp"
#include "worked_tables.hpp"

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

using namespace ck;
using namespace worked;

namespace {

struct Outcome {
    bool ok = true;
    std::string failure;
    std::string note;
    int checks = 0;

    void require(bool c, const std::string& what) {
        ++checks;
        if (!c && ok) {
            ok = false;
            failure = what;
        }
    }
};

K0Class M(int a, int b, std::int64_t c = 1) { return K0Class::M(a, b, c); }

SelmerContext ctx_q(int r, int s = 0, int delta = 0) {
    SelmerContext c;
    c.rank_r = r;
    c.s_size = s;
    c.delta_S = delta;
    c.s_bad_places = s > 0;
    return c;
}

SelmerContext ctx_iq(int r) {
    SelmerContext c;
    c.rank_r = r;
    c.field = FieldProfile::imaginary_quadratic();
    return c;
}

std::string ab(int a, int b) { return "(" + std::to_string(a) + "," + std::to_string(b) + ")"; }

// 1
void k0_powers(Outcome& o) {
    K0Class h1 = M(1, 0);
    o.require(power(h1, 2) == M(2, 0) + M(0, 1), "[h1]^2");
    o.require(power(h1, 3) == M(3, 0) + M(1, 1, 2), "[h1]^3");
    o.require(power(h1, 4) == M(4, 0) + M(2, 1, 3) + M(0, 2, 2), "[h1]^4");
    K0Class p5 = power(h1, 5);
    K0Class by_cg = h1;
    for (int k = 2; k <= 5; ++k) by_cg = oracle::cg_product(by_cg, h1);
    o.require(p5 == by_cg, "[h1]^5 against Clebsch-Gordan");
    CharacterPoly chi = CharacterPoly::of(IrrClass(1, 0)), chi5 = chi;
    for (int k = 2; k <= 5; ++k) chi5 = chi5 * chi;
    o.require(p5 == decompose_character(chi5), "[h1]^5 against characters");
    o.require(p5 == M(5, 0) + M(3, 1, 4) + M(1, 2, 5) && p5.dim() == 32, "[h1]^5 value");
    // the printed [M_{0,5}] leading term has weight -10 and dimension 1
    o.require(p5 != M(0, 5) + M(3, 1, 4) + M(1, 2, 5), "printed fifth power reading");
    o.note = "fifth power leads with [M_{5,0}], printed [M_{0,5}] differs";
}

// 2
void punctured_elliptic(Outcome& o) {
    auto g = graded_pieces(CurveShape::punctured_elliptic(), 4);
    o.require(g.pieces.size() == 4, "four pieces");
    o.require(g.at(1) == M(1, 0) && g.at(2) == M(0, 1) && g.at(3) == M(1, 1) && g.at(4) == M(2, 1), "pieces 1..4");
}

// 3
void genus_forms(Outcome& o) {
    for (int g = 1; g <= 6; ++g) {
        auto p = affine_graded_pieces(M(1, 0, g), 3);
        o.require(p.at(2) == M(2, 0, g * (g - 1) / 2) + M(0, 1, g * (g + 1) / 2), "affine level 2, g=" + std::to_string(g));
        o.require(p.at(3) == M(3, 0, (g * g * g - g) / 3) + M(1, 1, (2 * g * g * g + g) / 3),
                  "affine level 3, g=" + std::to_string(g));
    }
    auto p2 = projective_graded_pieces(2, 3);
    o.require(p2.at(2) == M(2, 0) + M(0, 1, 2) && p2.at(3) == M(3, 0, 2) + M(1, 1, 4), "projective g=2");
    auto p4 = projective_graded_pieces(4, 3);
    o.require(p4.at(2) == M(2, 0, 6) + M(0, 1, 9) && p4.at(3) == M(3, 0, 20) + M(1, 1, 40), "projective g=4");
}

// 4
void dimension_tables(Outcome& o) {
    int d_count = 0, l_count = 0;
    for (const auto& r : kTable) {
        o.require(d_global(r.a, r.b, FieldProfile::rationals()) == r.d_q, "d over Q at " + ab(r.a, r.b));
        o.require(d_global(r.a, r.b, FieldProfile::imaginary_quadratic()) == r.d_iq, "d over K at " + ab(r.a, r.b));
        o.require(l_local(r.a, r.b) == r.l, "l at " + ab(r.a, r.b));
        d_count += 2;
        ++l_count;
    }
    o.require(l_local(1, 0) == 1 && l_local(0, 1) == 1, "l at (1,0), (0,1)");
    l_count += 2;
    o.require(d_count == 18 && l_count == 11, "table sizes");
    for (auto [a, b, c] : q_list) o.require(c_functional(M(a, b), ctx_q(0)) == c, "c over Q at " + ab(a, b));
    for (auto [a, b, c] : iq_list) o.require(c_functional(M(a, b), ctx_iq(0)) == c, "c over K at " + ab(a, b));
    auto g = affine_graded_pieces(M(1, 0), 3);
    for (int r = 0; r <= 3; ++r)
        for (int s = 0; s <= 3; ++s)
            for (int d = 0; d <= s; ++d) {
                auto ctx = ctx_q(r, s, d);
                o.require(cS_functional(g.total(2), ctx) == 2 - r - s, "c^S(U_2) sweep");
                o.require(cS_functional(g.total(3), ctx) == 3 - r - s - d, "c^S(U_3) sweep");
            }
    auto p2 = projective_graded_pieces(2, 3);
    for (int r = 0; r <= 5; ++r) {
        o.require(c_functional(quadratic_chabauty_piece(2), ctx_q(r)) == 4 - 2 * r, "genus 2, 4-2r");
        o.require(c_functional(p2.total(2), ctx_iq(r)) == 5 - 2 * r, "genus 2, 5-2r");
        o.require(c_functional(p2.total(3), ctx_q(r)) == 14 - 2 * r, "genus 2, 14-2r");
        o.require(c_functional(p2.total(3), ctx_iq(r)) == 7 - 2 * r, "genus 2, 7-2r");
        o.require(c_functional(quadratic_chabauty_piece(4), ctx_iq(r)) == 13 - 4 * r, "Bring, 13-4r");
    }
    o.note = "delta swept over 0..|S|";
}

WPolynomial wf(WMonomial m, std::initializer_list<Letter> w, Rational c = 1) { return WPolynomial(m, ShuffleElem(Word(w), c)); }

// 5
void cocycle_forms(Outcome& o) {
    o.require(evaluate_word(Word()) == WPolynomial::one(), "empty word");
    o.require(evaluate_word(Word{e0}) == wf({1, 0, 0}, {pi0}), "e0");
    o.require(evaluate_word(Word{e1}) == wf({1, 0, 0}, {pi1}), "e1");
    o.require(evaluate_word(Word{e0, e1}) == wf({2, 0, 0}, {pi0, pi1}) + wf({0, 1, 0}, {tau}), "e0e1");
    o.require(evaluate_word(Word{e1, e0}) == wf({2, 0, 0}, {pi1, pi0}) - wf({0, 1, 0}, {tau}), "e1e0");
    o.require(evaluate_word(Word{e0, e1, e0}) ==
                  wf({3, 0, 0}, {pi0, pi1, pi0}) - wf({1, 1, 0}, {pi0, tau}) + wf({1, 1, 0}, {tau, pi0}) + wf({0, 0, 1}, {sig0}),
              "e0e1e0");
    o.require(evaluate_word(Word{e1, e0, e1}) == wf({3, 0, 0}, {pi1, pi0, pi1}) + wf({1, 1, 0}, {pi1, tau}) -
                                                     wf({1, 1, 0}, {tau, pi1}) - wf({0, 0, 1}, {sig1}),
              "e1e0e1");
    o.require(evaluate_word(Word{e0, e1, e1}) * Rational(2) ==
                  wf({3, 0, 0}, {pi0, pi1, pi1}, 2) + wf({1, 1, 0}, {tau, pi1}, 2) + wf({0, 0, 1}, {sig1}),
              "2 e0e1e1");
    o.require(evaluate_word(Word{e0, e1, e1}) * Rational(2) ==
                  evaluate_word(Word{e1}) * evaluate_word(Word{e0, e1}) - evaluate_word(Word{e1, e0, e1}),
              "2 e0e1e1 from the shuffle relation");
    WPolynomial c = evaluate_word(Word{e0, e1, e0});
    for (int a : {0, 1, -2, 3}) {
        WPolynomial cand = c + wf({0, 0, 1}, {sig1}, a);
        bool equivariant = cand + evaluate_word(Word{e0, e0, e0}) == gl2_act(GL2Element::N(), cand);
        o.require(equivariant == (a == 0), "a = 0 cancellation, a=" + std::to_string(a));
    }
    auto sol = solve_equivariant_cocycles(3);
    o.require(sol.dimension() == 3, "solution space dimension 3");
    for (int n = 0; n <= 3; ++n)
        for (const auto& l : words_of_weight(Alphabet::E, n))
            o.require(sol.images.at(l) == evaluate_word(l), "solver vs closed form at " + to_string(l));
    o.note = "e0e1e1 uses f_{tau pi1}";
}

ShuffleElem f(std::initializer_list<Letter> w) { return ShuffleElem::f(w); }

// 6
void geometric_step(Outcome& o) {
    o.require(build_K().image.coeff({0, 0, 1}).is_zero(), "c#(K) w3-component");
    o.require(build_L().image.coeff({1, 1, 0}).is_zero(), "c#(L) w1w2-component");
    auto e = build_final();
    o.require(e.vanishes(), "c#(final) = 0");
    o.require(e.cleared().vanishes(), "cleared c#(final) = 0");
    std::vector<std::string> names;
    for (const auto& m : e.support()) names.push_back(to_string(m));
    o.require(names == std::vector<std::string>{"J4", "J3", "J1*J2", "J1^3", "J1"}, "support");
    auto j1 = e.coefficient(JMonomial::J(1));
    ShuffleElem expect = oracle::shuffle_by_masks(oracle::shuffle_by_masks(f({pi1}), f({tau})), f({sig0})) * Rational(4);
    o.require(j1.has_value() && *j1 == expect && !j1->is_zero(), "J1 coefficient");
    o.note = "common denominator f_pi0^2";
}

// 7
void worked_examples(Outcome& o) {
    o.require(search_S_integral_points(e128(), {2}, {10'000'000, 1024}) == pts128, "128a2 search");
    o.require(search_S_integral_points(e102(), {2}, {10'000'000, 1024}) == pts102, "102a1 search");
    auto s128 = apply_transform(e128(), t128), s102 = apply_transform(e102(), t102);
    o.require(s128 == WeierstrassModel(0, 0, 0, -12096, 470016), "128a2 short model");
    o.require(s102 == WeierstrassModel(0, 0, 0, -3267, 45630), "102a1 short model");
    for (std::size_t i = 0; i < pts128.size(); ++i) o.require(map_point(t128, pts128[i]) == short128[i], "128a2 image");
    for (std::size_t i = 0; i < pts102.size(); ++i) o.require(map_point(t102, pts102[i]) == short102[i], "102a1 image");
    std::ostringstream digits;
    for (const auto& q : short102) digits << to_string(q);
    o.require(digits.str().find("(1329/16,-37719/64)") != std::string::npos, "102a1 image digits");

    o.require(reduced_affine_points(s128, 5) == printed_discs128, "128a2 mod-5 set");
    // printed 102a1 set: the affine points with (0:1:0) in second place
    auto aff = reduced_affine_points(s102, 5);
    std::vector<ResiduePoint> with_infinity = aff;
    with_infinity.insert(with_infinity.begin() + 1, ResiduePoint{0, 1});
    o.require(aff.size() == 9 && with_infinity == printed_discs102, "102a1 mod-5 set");
    o.require(!s102.contains(RationalPoint::affine(0, 1)), "(0,1) is off the 102a1 short model");
    o.require(disc_rows(residue_disc_partition(s128, 5, short128), printed_discs128) == rows128, "128a2 disc rows");
    o.require(disc_rows(residue_disc_partition(s102, 5, short102), printed_discs102) == rows102, "102a1 disc rows");

    auto part = classify_at_bad_prime(e102(), 3, pts102);
    o.require(singular_point(e102(), 3) == ResiduePoint{2, 2}, "node at 3");
    o.require(part.classes.size() == 2 && part.classes[0].members == fiber3_smooth && part.classes[1].members == fiber3_node,
              "F1/F2 at 3");
    o.note = "102a1 list read with (0,1) = (0:1:0)";
}

// 8
void padic_l(Outcome& o) {
    for (std::int64_t p : {3, 5, 7})
        for (std::int64_t ap : {-2, -1, 1, 2}) {
            auto alpha = hensel_unit_root({p, ap}, 6);
            BigInt m = ipow(BigInt(p), 6), x = alpha.residue();
            o.require(mod_floor(x * x - ap * x + p, m) == 0 && alpha.valuation() == 0,
                      "unit root p=" + std::to_string(p) + " a_p=" + std::to_string(ap));
        }
    std::mt19937 rng(808);
    std::uniform_int_distribution<int> num(-40, 40), den(1, 4), coef(-5, 5);
    auto table = [&](std::int64_t p, int n) {
        ModularSymbolTable t;
        BigInt pn = ipow(BigInt(p), static_cast<unsigned>(n));
        for (BigInt a = 1; a < pn; ++a) {
            if (a % p == 0) continue;
            for (int k : {n, n - 1}) {
                Rational r = Rational(a) / rpow(Rational(p), k);
                if (!t.contains(r)) t.set(r, Rational(num(rng), den(rng)));
            }
        }
        return t;
    };
    for (int trial = 0; trial < 100; ++trial) {
        const std::int64_t p = trial % 2 ? 3 : 5;
        const int n = 2;
        auto x = table(p, n), y = table(p, n);
        Rational cx = coef(rng), cy = coef(rng);
        ModularSymbolTable z;
        for (const auto& [r, v] : x.values()) z.set(r, cx * v + cy * y(r));
        auto alpha = hensel_unit_root({p, 1}, 6);
        for (BigInt a : {BigInt(1), BigInt(2), BigInt(p + 1)}) {
            auto lhs = mu(a, p, n, z, alpha);
            auto rhs = PadicNumber::from_rational(cx, p, 6) * mu(a, p, n, x, alpha) +
                       PadicNumber::from_rational(cy, p, 6) * mu(a, p, n, y, alpha);
            o.require(lhs == rhs, "mu linearity");
        }
        auto lhs = mazur_stickelberger_sum({p, 1}, z, n);
        auto rhs = PadicNumber::from_rational(cx, p, n) * mazur_stickelberger_sum({p, 1}, x, n) +
                   PadicNumber::from_rational(cy, p, n) * mazur_stickelberger_sum({p, 1}, y, n);
        o.require(lhs == rhs, "sum linearity");
    }
    const char* path = std::getenv("CK_MODSYM_128A2");
    if (!path || !*path) {
        o.note = "128a2 verdict externally gated, set CK_MODSYM_128A2 to run it";
        return;
    }
    int prec = 2;
    if (const char* s = std::getenv("CK_MODSYM_PREC")) prec = std::stoi(s);
    const std::int64_t p = 5;
    std::int64_t ap = p + 1 - static_cast<std::int64_t>(reduced_affine_points(e128(), p).size() + 1);
    auto sum = mazur_stickelberger_sum({p, ap}, io::load_modular_symbols(path), prec);
    o.require(is_nonzero_at_precision(sum), "128a2 sum nonzero at p=5");
    o.note = "128a2 sum at p=5: " + sum.to_string();
}

int mobius(int n) {
    int r = 1;
    for (int p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return 0;
            r = -r;
        }
    return n > 1 ? -r : r;
}

std::int64_t necklace(std::int64_t d, int k) {
    std::int64_t s = 0;
    for (int e = 1; e <= k; ++e)
        if (k % e == 0) {
            std::int64_t pw = 1;
            for (int i = 0; i < k / e; ++i) pw *= d;
            s += mobius(e) * pw;
        }
    return s / k;
}

// 9
void properties(Outcome& o) {
    std::mt19937 rng(909);
    int shuffle_cases = 0, lyndon_cases = 0, divide_cases = 0, gl2_cases = 0, witt_cases = 0;
    while (shuffle_cases < 200) {
        Alphabet a = shuffle_cases % 3 ? Alphabet::G : Alphabet::E;
        auto x = oracle::random_elem(rng, a, 2, 3), y = oracle::random_elem(rng, a, 2, 3), z = oracle::random_elem(rng, a, 2, 2);
        if ((x * y).max_weight() > 5) continue;
        o.require(x * y == oracle::shuffle_by_masks(x, y), "shuffle vs mask oracle");
        o.require(x * y == y * x && (x * y) * z == x * (y * z), "commutative, associative");
        o.require(deconcat_coproduct_full(x * y) == tensor_shuffle(deconcat_coproduct_full(x), deconcat_coproduct_full(y)),
                  "coproduct is multiplicative");
        ++shuffle_cases;
    }
    for (; lyndon_cases < 200; ++lyndon_cases) {
        auto x = oracle::random_elem(rng, lyndon_cases % 2 ? Alphabet::E : Alphabet::G, 4, 5);
        auto p = lyndon_decompose(x);
        for (const auto& [m, c] : p)
            for (const auto& w : m) o.require(is_lyndon(w), "Lyndon factors");
        o.require(expand_lyndon(p) == x, "Lyndon round trip");
    }
    while (divide_cases < 200) {
        auto q = oracle::random_elem(rng, Alphabet::G, 3, 3), y = oracle::random_elem(rng, Alphabet::G, 2, 2);
        if (y.is_zero()) continue;
        auto r = exact_divide(q * y, y);
        o.require(r.divisible && r.quotient == q, "exact divide round trip");
        ++divide_cases;
    }
    std::uniform_int_distribution<int> d(1, 5), sgn(0, 1);
    for (Alphabet a : {Alphabet::E, Alphabet::G})
        for (int n = 0; n <= 5; ++n)
            for (const Word& w : words_of_weight(a, n)) {
                ShuffleElem x(w);
                Rational x1(d(rng) * (sgn(rng) ? 1 : -1), d(rng)), x2(d(rng), d(rng)), c(d(rng), d(rng));
                auto s = GL2Element::s(), N = GL2Element::N(), t = GL2Element::torus(x1, x2);
                o.require(gl2_act(s * s, x) == x, "s^2 = 1");
                o.require(gl2_act(s * t * s, x) == gl2_act(GL2Element::torus(x2, x1), x), "s t s");
                o.require(gl2_act(t * N * GL2Element::torus(1 / x1, 1 / x2), x) == gl2_act(GL2Element::unipotent(x1 / x2), x),
                          "t N t^-1");
                o.require(gl2_act(GL2Element::unipotent(c) * GL2Element::unipotent(x1), x) ==
                              gl2_act(GL2Element::unipotent(c + x1), x),
                          "unipotent additivity");
                ++gl2_cases;
            }
    std::uniform_int_distribution<int> da(0, 2), db(0, 1), dc(1, 2);
    for (; witt_cases < 200; ++witt_cases) {
        K0Class h1 = M(da(rng), db(rng), dc(rng));
        if (witt_cases % 3 == 0) h1 += M(da(rng), db(rng));
        int n = h1.dim() <= 3 ? 5 : 4;
        auto g = affine_graded_pieces(h1, n);
        for (int k = 1; k <= n; ++k) o.require(g.at(k).dim() == necklace(h1.dim(), k), "Witt count " + to_string(h1));
    }
    o.require(gl2_cases >= 200, "GL2 case count");
    o.note = std::to_string(shuffle_cases) + "/" + std::to_string(lyndon_cases) + "/" + std::to_string(divide_cases) + "/" +
             std::to_string(gl2_cases) + "/" + std::to_string(witt_cases) + " cases";
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* title;
        double budget_s;
        std::function<void(Outcome&)> run;
    };
    const std::vector<Criterion> criteria{
        {1, "K0 powers", 1, k0_powers},
        {2, "punctured elliptic pieces", 0, punctured_elliptic},
        {3, "genus formulas", 0, genus_forms},
        {4, "dimension tables", 0, dimension_tables},
        {5, "cocycle closed forms", 10, cocycle_forms},
        {6, "geometric step", 30, geometric_step},
        {7, "worked examples", 60, worked_examples},
        {8, "p-adic L machinery", 0, padic_l},
        {9, "property suites", 0, properties},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        Outcome o;
        auto start = std::chrono::steady_clock::now();
        try {
            c.run(o);
        } catch (const std::exception& e) {
            o.ok = false;
            o.failure = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (o.ok && c.budget_s > 0 && secs > c.budget_s) {
            o.ok = false;
            o.failure = "over the " + std::to_string(static_cast<int>(c.budget_s)) + " s budget";
        }
        if (!o.ok) ++failed;
        std::cout << (o.ok ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.title << " [" << o.checks << " checks, "
                  << std::fixed << std::setprecision(2) << secs << " s]";
        if (!o.ok) std::cout << " first failure: " << o.failure;
        else if (!o.note.empty()) std::cout << " (" << o.note << ")";
        std::cout << "\n";
    }
    return failed == 0 ? 0 : 1;
}
