#include "ck/geomstep.hpp"

#include "oracles/shuffle_oracle.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace ck;

namespace ck {
inline void PrintTo(const WPolynomial& p, std::ostream* os) { *os << to_string(p); }
inline void PrintTo(const ShuffleElem& x, std::ostream* os) { *os << to_string(x); }
}  // namespace ck

namespace {

ShuffleElem f(std::initializer_list<Letter> w) { return ShuffleElem::f(w); }

// products through the subset-enumeration oracle only
ShuffleElem sh(const ShuffleElem& a, const ShuffleElem& b) { return oracle::shuffle_by_masks(a, b); }
ShuffleElem sh(const ShuffleElem& a, const ShuffleElem& b, const ShuffleElem& c) { return sh(sh(a, b), c); }
ShuffleElem sh(const ShuffleElem& a, const ShuffleElem& b, const ShuffleElem& c, const ShuffleElem& d) {
    return sh(sh(a, b, c), d);
}

ShuffleElem bracket_C() { return sh(f({sig1}), f({tau, pi0}) - f({pi0, tau})) - sh(f({sig0}), f({tau, pi1})) * Rational(2); }

}  // namespace

TEST(GeomStep, JMonomialText) {
    EXPECT_EQ(to_string(JMonomial::J(1) * JMonomial::J(2)), "J1*J2");
    EXPECT_EQ(to_string(JMonomial::J(1, 3)), "J1^3");
    EXPECT_EQ(parse_jmonomial("J1*J2"), JMonomial::J(1) * JMonomial::J(2));
    EXPECT_EQ(parse_jmonomial("J1^3"), JMonomial::J(1, 3));
    EXPECT_EQ(parse_jmonomial("1"), JMonomial());
    EXPECT_THROW(parse_jmonomial("J5"), InvalidInput);
    EXPECT_THROW(parse_jmonomial("J1^"), InvalidInput);
    EXPECT_THROW(parse_jmonomial("K1"), InvalidInput);
    std::vector<std::string> names;
    for (const auto& m : ck_monomial_basis()) names.push_back(to_string(m));
    EXPECT_EQ(names, (std::vector<std::string>{"J4", "J3", "J1*J2", "J1^3", "J1"}));
}

TEST(GeomStep, KImage) {
    auto k = build_K();
    EXPECT_TRUE(k.image.coeff({0, 0, 1}).is_zero());
    EXPECT_EQ(k.image.coeff({1, 0, 0}), sh(f({sig0}), f({pi1})) * Rational(-4));
    EXPECT_EQ(k.image.coeff({3, 0, 0}), sh(f({sig1}), f({pi0, pi1, pi0})) - sh(f({sig0}), f({pi0, pi1, pi1})) * Rational(2));
    EXPECT_EQ(k.image.coeff({1, 1, 0}), bracket_C());
    EXPECT_EQ(k.image.terms().size(), 3u);
}

TEST(GeomStep, LImage) {
    auto l = build_L();
    EXPECT_TRUE(l.image.coeff({1, 1, 0}).is_zero());
    EXPECT_EQ(l.image.coeff({1, 0, 0}), sh(f({pi0}), f({pi1}), f({tau}), f({sig0})) * Rational(-4));
    ShuffleElem inner = sh(f({sig1}), f({pi0, pi1, pi0})) - sh(f({sig0}), f({pi0, pi1, pi1})) * Rational(2);
    ShuffleElem expect = sh(sh(f({pi0}), f({tau})), inner) - sh(bracket_C(), sh(f({pi0}), f({pi0, pi1})));
    EXPECT_EQ(l.image.coeff({3, 0, 0}), expect);
    EXPECT_EQ(l.element.numerator(JMonomial::J(1) * JMonomial::J(2)), -bracket_C());
}

TEST(GeomStep, FinalElementVanishes) {
    auto e = build_final();
    EXPECT_TRUE(e.vanishes());
    EXPECT_TRUE(e.image().is_zero());
    EXPECT_TRUE(e.cleared().vanishes());
    EXPECT_EQ(e.support(), ck_monomial_basis());
}

TEST(GeomStep, FinalElementCoefficients) {
    auto e = build_final();
    EXPECT_EQ(e.denominator, shuffle_power(f({pi0}), 2));
    auto j1 = e.coefficient(JMonomial::J(1));
    ASSERT_TRUE(j1.has_value());
    EXPECT_EQ(*j1, sh(f({pi1}), f({tau}), f({sig0})) * Rational(4));
    EXPECT_FALSE(j1->is_zero());
    EXPECT_EQ(*e.coefficient(JMonomial::J(4)), sh(f({pi0}), f({tau}), f({sig0})) * Rational(-2));
    EXPECT_EQ(*e.coefficient(JMonomial::J(3)), sh(f({pi0}), f({tau}), f({sig1})));
    EXPECT_EQ(*e.coefficient(JMonomial::J(1) * JMonomial::J(2)), -bracket_C());
    // the J1^3 coefficient B / f_pi0^3 is only a fraction: B carries a single factor f_pi0
    EXPECT_FALSE(e.coefficient(JMonomial::J(1, 3)).has_value());
    ShuffleElem B = build_L().image.coeff({3, 0, 0});
    EXPECT_EQ(sh(-e.numerator(JMonomial::J(1, 3)), f({pi0})), B);
    EXPECT_FALSE(exact_divide(B, shuffle_power(f({pi0}), 2)).divisible);
    for (const auto& [m, x] : e.cleared().terms) {
        EXPECT_TRUE(x.is_homogeneous());
        EXPECT_EQ(x.max_weight(), 8) << to_string(m);
    }
}

TEST(GeomStep, PiOneTauVariantDoesNotCancel) {
    // building L with f_{pi1 tau} in place of f_{tau pi1} leaves a w1*w2 term
    ShuffleElem variant = sh(f({sig1}), f({tau, pi0}) - f({pi0, tau})) - sh(f({sig0}), f({pi1, tau})) * Rational(2);
    CKElement l = build_L().element;
    for (auto& [m, x] : l.terms)
        if (m == JMonomial::J(1) * JMonomial::J(2)) x = -variant;
    EXPECT_FALSE(l.image().coeff({1, 1, 0}).is_zero());
}

TEST(GeomStep, GenericTrivialCases) {
    auto a = generic_eliminate({JMonomial::J(1)}, 4);
    EXPECT_EQ(a.dimension(), 0);
    auto b = generic_eliminate({JMonomial::J(2), JMonomial::J(1, 2)}, 0);
    EXPECT_EQ(b.dimension(), 0);
    EXPECT_THROW(generic_eliminate({}, 3), InvalidInput);
    EXPECT_THROW(generic_eliminate({JMonomial::J(1), JMonomial::J(1)}, 3), InvalidInput);
}

TEST(GeomStep, GenericDifferentWDegrees) {
    // c#(J1) and c#(J1^2) live in different w1-degrees
    EXPECT_EQ(generic_eliminate({JMonomial::J(1), JMonomial::J(1, 2)}, 3).dimension(), 0);
    EXPECT_EQ(generic_eliminate({JMonomial::J(1, 2), JMonomial::J(1, 3)}, 2).dimension(), 0);
}

TEST(GeomStep, GenericNoRelationBelowWeightEight) {
    auto r = generic_eliminate(ck_monomial_basis(), 6);
    EXPECT_EQ(r.dim_per_weight, std::vector<int>(7, 0));
    EXPECT_FALSE(in_span(build_final(), r));
}

TEST(GeomStep, GenericRecoversFinalElement) {
    auto r = generic_eliminate(ck_monomial_basis(), 8);
    EXPECT_EQ(r.dim_per_weight, (std::vector<int>{0, 0, 0, 0, 0, 0, 0, 0, 1}));
    ASSERT_EQ(r.dimension(), 1);
    EXPECT_TRUE(r.basis[0].vanishes());
    EXPECT_TRUE(in_span(build_final(), r));
    EXPECT_TRUE(in_span(build_final(true), r));
}

TEST(GeomStepProperty, IdealClosedUnderMultiplication) {
    std::mt19937 rng(21);
    auto e = build_final(true);
    for (int t = 0; t < 200; ++t) {
        ShuffleElem g = oracle::random_elem(rng, Alphabet::G, 2, 1);
        CKElement h = e;
        for (auto& [m, x] : h.terms) x = g * x;
        ASSERT_TRUE(h.vanishes()) << to_string(g);
    }
}

TEST(GeomStepProperty, PerturbationBreaksVanishing) {
    std::mt19937 rng(22);
    auto e = build_final(true);
    std::uniform_int_distribution<std::size_t> which(0, 4);
    for (int t = 0; t < 200; ++t) {
        ShuffleElem g = oracle::random_elem(rng, Alphabet::G, 2, 2);
        if (g.is_zero()) continue;
        CKElement h = e;
        h.terms[which(rng)].second += g;
        ASSERT_FALSE(h.vanishes()) << to_string(g);
    }
}
