#pragma once

// The universal cocycle evaluation c#: O(Pi) -> A (x) Q[w1,w2,w3] for the level-3 quotient
// of the punctured elliptic curve; closed forms plus an independent linear solver.

#include "ck/linalg.hpp"
#include "ck/shuffle.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace ck {

/// Exponents of (w1, w2, w3).
using WMonomial = std::array<int, 3>;

inline int w_weight(const WMonomial& m) { return m[0] + 2 * m[1] + 3 * m[2]; }

inline WMonomial operator+(const WMonomial& a, const WMonomial& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }

inline std::string to_string(const WMonomial& m) {
    std::string out;
    for (int i = 0; i < 3; ++i) {
        if (m[static_cast<std::size_t>(i)] == 0) continue;
        if (!out.empty()) out += '*';
        out += "w" + std::to_string(i + 1);
        if (m[static_cast<std::size_t>(i)] > 1) out += "^" + std::to_string(m[static_cast<std::size_t>(i)]);
    }
    return out.empty() ? "1" : out;
}

/// Element of Q[w1,w2,w3].
class ScalarPoly {
  public:
    using Map = std::map<WMonomial, Rational>;
    ScalarPoly() = default;
    ScalarPoly(const Rational& c) {
        if (c != 0) t_[{0, 0, 0}] = c;
    }
    ScalarPoly(const WMonomial& m, const Rational& c) {
        if (c != 0) t_[m] = c;
    }
    static ScalarPoly w(int i) {
        WMonomial m{0, 0, 0};
        m[static_cast<std::size_t>(i - 1)] = 1;
        return ScalarPoly(m, 1);
    }

    const Map& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }

    ScalarPoly& operator+=(const ScalarPoly& o) {
        for (const auto& [m, c] : o.t_) {
            auto& slot = t_[m];
            slot += c;
            if (slot == 0) t_.erase(m);
        }
        return *this;
    }
    ScalarPoly& operator-=(const ScalarPoly& o) { return *this += o * Rational(-1); }
    ScalarPoly operator*(const Rational& k) const {
        ScalarPoly r;
        if (k == 0) return r;
        for (const auto& [m, c] : t_) r.t_.emplace(m, c * k);
        return r;
    }
    friend ScalarPoly operator*(const ScalarPoly& a, const ScalarPoly& b) {
        ScalarPoly r;
        for (const auto& [ma, ca] : a.t_)
            for (const auto& [mb, cb] : b.t_) r += ScalarPoly(ma + mb, ca * cb);
        return r;
    }
    friend ScalarPoly operator+(ScalarPoly a, const ScalarPoly& b) { return a += b; }
    friend ScalarPoly operator-(ScalarPoly a, const ScalarPoly& b) { return a -= b; }
    bool operator==(const ScalarPoly& o) const { return t_ == o.t_; }

  private:
    Map t_;
};

inline std::string to_string(const ScalarPoly& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        Rational a = c < 0 ? Rational(-c) : c;
        os << (first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + "));
        if (m == WMonomial{0, 0, 0}) os << to_string(a);
        else if (a == 1) os << to_string(m);
        else os << to_string(a) << "*" << to_string(m);
        first = false;
    }
    return os.str();
}

/// Element of A (x) Q[w1,w2,w3], stored as w-monomial -> coefficient in A.
class WPolynomial {
  public:
    using Map = std::map<WMonomial, ShuffleElem>;
    WPolynomial() = default;
    WPolynomial(const WMonomial& m, const ShuffleElem& x) {
        if (!x.is_zero()) t_[m] = x;
    }
    static WPolynomial one() { return WPolynomial({0, 0, 0}, ShuffleElem::one()); }

    const Map& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }

    ShuffleElem coeff(const WMonomial& m) const {
        auto it = t_.find(m);
        return it == t_.end() ? ShuffleElem() : it->second;
    }
    /// The polynomial multiplying f_w.
    ScalarPoly coeff_of_word(const Word& w) const {
        ScalarPoly r;
        for (const auto& [m, x] : t_) r += ScalarPoly(m, x.coeff(w));
        return r;
    }

    /// True when every term pairs a w-monomial and words of the same weight n.
    bool is_homogeneous(int n) const {
        for (const auto& [m, x] : t_) {
            if (w_weight(m) != n) return false;
            for (const auto& [w, c] : x.terms())
                if (w.weight() != n) return false;
        }
        return true;
    }

    WPolynomial& operator+=(const WPolynomial& o) {
        for (const auto& [m, x] : o.t_) {
            auto& slot = t_[m];
            slot += x;
            if (slot.is_zero()) t_.erase(m);
        }
        return *this;
    }
    WPolynomial& operator-=(const WPolynomial& o) { return *this += o * Rational(-1); }
    WPolynomial operator*(const Rational& k) const {
        WPolynomial r;
        if (k == 0) return r;
        for (const auto& [m, x] : t_) r.t_.emplace(m, x * k);
        return r;
    }
    friend WPolynomial operator*(const Rational& k, const WPolynomial& p) { return p * k; }
    friend WPolynomial operator*(const WPolynomial& a, const WPolynomial& b) {
        WPolynomial r;
        for (const auto& [ma, xa] : a.t_)
            for (const auto& [mb, xb] : b.t_) r += WPolynomial(ma + mb, xa * xb);
        return r;
    }
    friend WPolynomial operator+(WPolynomial a, const WPolynomial& b) { return a += b; }
    friend WPolynomial operator-(WPolynomial a, const WPolynomial& b) { return a -= b; }
    bool operator==(const WPolynomial& o) const { return t_ == o.t_; }
    bool operator!=(const WPolynomial& o) const { return !(t_ == o.t_); }

  private:
    Map t_;
};

inline WPolynomial gl2_act(const GL2Element& g, const WPolynomial& p) {
    WPolynomial r;
    for (const auto& [m, x] : p.terms()) r += WPolynomial(m, gl2_act(g, x));
    return r;
}

/// e.g. "w1^3*pi0.pi1.pi0 + w1*w2*(tau.pi0 - pi0.tau) + w3*sig0"
inline std::string to_string(const WPolynomial& p) {
    if (p.is_zero()) return "0";
    std::string out;
    // w-monomials of higher w1-degree first, matching the displayed closed forms
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const auto& [m, x] = *it;
        std::string cs = to_string(x);
        bool single = x.size() == 1;
        bool neg = single && cs[0] == '-';
        if (neg) cs = cs.substr(1);
        if (!out.empty()) out += neg ? " - " : " + ";
        else if (neg) out += "-";
        if (m == WMonomial{0, 0, 0}) out += single ? cs : "(" + cs + ")";
        else if (cs == "1") out += to_string(m);
        else out += to_string(m) + "*" + (single ? cs : "(" + cs + ")");
    }
    return out;
}

// Closed forms.

namespace detail {

inline WPolynomial wf(const WMonomial& m, std::initializer_list<Letter> w, const Rational& c = 1) {
    return WPolynomial(m, ShuffleElem(Word(w), c));
}

inline WPolynomial closed_form(const std::string& l) {
    auto c = [](std::initializer_list<Letter> w) { return closed_form(std::string(w.begin(), w.end())); };
    const Rational half(1, 2);
    if (l.empty()) return WPolynomial::one();
    if (l == std::string{e0}) return wf({1, 0, 0}, {pi0});
    if (l == std::string{e1}) return wf({1, 0, 0}, {pi1});
    if (l == std::string{e0, e0}) return c({e0}) * c({e0}) * half;
    if (l == std::string{e1, e1}) return c({e1}) * c({e1}) * half;
    if (l == std::string{e0, e1}) return wf({2, 0, 0}, {pi0, pi1}) + wf({0, 1, 0}, {tau});
    if (l == std::string{e1, e0}) return wf({2, 0, 0}, {pi1, pi0}) - wf({0, 1, 0}, {tau});
    if (l == std::string{e0, e0, e0}) return c({e0}) * c({e0}) * c({e0}) * Rational(1, 6);
    if (l == std::string{e1, e1, e1}) return c({e1}) * c({e1}) * c({e1}) * Rational(1, 6);
    if (l == std::string{e0, e1, e0})
        return wf({3, 0, 0}, {pi0, pi1, pi0}) + wf({1, 1, 0}, {tau, pi0}) - wf({1, 1, 0}, {pi0, tau}) +
               wf({0, 0, 1}, {sig0});
    if (l == std::string{e1, e0, e1})
        return wf({3, 0, 0}, {pi1, pi0, pi1}) + wf({1, 1, 0}, {pi1, tau}) - wf({1, 1, 0}, {tau, pi1}) -
               wf({0, 0, 1}, {sig1});
    if (l == std::string{e0, e1, e1})
        // (c#(e1) c#(e0e1) - c#(e1e0e1)) / 2; the w1*w2 term is f_{tau pi1}, as the coproduct forces
        return wf({3, 0, 0}, {pi0, pi1, pi1}) + wf({1, 1, 0}, {tau, pi1}) + wf({0, 0, 1}, {sig1}, half);
    // e0 (sh) e0e1 = 2 e0e0e1 + e0e1e0 and e0 (sh) e1e0 = e0e1e0 + 2 e1e0e0
    if (l == std::string{e0, e0, e1}) return (c({e0}) * c({e0, e1}) - c({e0, e1, e0})) * half;
    if (l == std::string{e1, e0, e0}) return (c({e0}) * c({e1, e0}) - c({e0, e1, e0})) * half;
    if (l == std::string{e1, e1, e0}) return gl2_act(GL2Element::s(), c({e0, e0, e1}));
    throw InvalidInput("no closed form for this word");
}

}  // namespace detail

/// c#(lambda) for a word over {e0, e1} of weight at most 3.
inline WPolynomial evaluate_word(const Word& lambda) {
    if (lambda.alphabet() == Alphabet::G) throw InvalidInput("cocycle evaluation takes words over e0, e1");
    if (lambda.weight() > 3) throw UncoveredRange("cocycle closed forms are tabulated only through weight 3");
    return detail::closed_form(lambda.letters());
}

/// Linear extension of evaluate_word.
inline WPolynomial evaluate(const ShuffleElem& x) {
    WPolynomial r;
    for (const auto& [w, c] : x.terms()) r += evaluate_word(w) * c;
    return r;
}

/// The generators J1..J4 of O(Pi / F^0 Pi).
inline ShuffleElem j_coordinate(int i) {
    switch (i) {
        case 1: return ShuffleElem::f({e0});
        case 2: return ShuffleElem::f({e0, e1});
        case 3: return ShuffleElem::f({e0, e1, e0});
        case 4: return ShuffleElem::f({e0, e1, e1}) + ShuffleElem::f({e1}) * Rational(2);
        default: throw InvalidInput("J index must be 1..4");
    }
}

inline WPolynomial evaluate_J(int i) { return evaluate(j_coordinate(i)); }

/// Terms of p whose words use only pi0, pi1.
inline WPolynomial pr_pi(const WPolynomial& p) {
    WPolynomial r;
    for (const auto& [m, x] : p.terms()) {
        ShuffleElem::Map kept;
        for (const auto& [w, c] : x.terms())
            if (std::all_of(w.letters().begin(), w.letters().end(), [](char l) { return l == pi0 || l == pi1; }))
                kept.emplace(w, c);
        r += WPolynomial(m, ShuffleElem(std::move(kept)));
    }
    return r;
}

/// Replace e_i by pi_i.
inline Word pi_of(const Word& lambda) {
    std::string s = lambda.letters();
    for (char& l : s) l = static_cast<char>(l + 2);
    return Word(s);
}

enum class RecursionSide { append, prepend };

/// phi_{lambda e_i}^{w pi_j} (append) or phi_{e_i lambda}^{pi_j w} (prepend) against
/// delta_ij w1 phi_lambda^w, on the closed forms.
inline bool verify_recursion(const Word& lambda, const Word& w, Letter ei, Letter pj, RecursionSide side) {
    if (lambda.alphabet() == Alphabet::G || w.alphabet() == Alphabet::E) throw InvalidInput("word alphabets");
    if ((ei != e0 && ei != e1) || (pj != pi0 && pj != pi1)) throw InvalidInput("letters must be e_i and pi_j");
    if (lambda.weight() != w.weight() || lambda.weight() + 1 > 3)
        throw InvalidInput("recursion needs weight(lambda) = weight(w) <= 2");
    Word big = side == RecursionSide::append ? lambda + Word(std::string{ei}) : Word(std::string{ei}) + lambda;
    Word bigw = side == RecursionSide::append ? w + Word(std::string{pj}) : Word(std::string{pj}) + w;
    ScalarPoly lhs = evaluate_word(big).coeff_of_word(bigw);
    ScalarPoly rhs;
    if (ei + 2 == pj) rhs = ScalarPoly::w(1) * evaluate_word(lambda).coeff_of_word(w);
    return lhs == rhs;
}

// Independent solver.

struct CocycleSolution {
    int max_weight = 0;
    std::vector<int> free_per_weight;  // index n-1
    std::map<Word, WPolynomial> images;

    int dimension() const {
        int d = 0;
        for (int f : free_per_weight) d += f;
        return d;
    }
};

namespace detail {

inline std::pair<Word, Word> designated_column(int n) {
    switch (n) {
        case 1: return {Word{e0}, Word{pi0}};
        case 2: return {Word{e0, e1}, Word{tau}};
        default: return {Word{e0, e1, e0}, Word{sig0}};
    }
}

}  // namespace detail

/// Solves for all weight-preserving Hopf maps O(Pi) -> A (x) Q[w] that commute with s, N and
/// a generic torus element, one weight at a time. The new free parameter at weight n is named
/// w_n; anything other than exactly one new parameter per weight is an IdentityFailure.
inline CocycleSolution solve_equivariant_cocycles(int max_weight = 3) {
    if (max_weight < 0) throw InvalidInput("max_weight must be nonnegative");
    if (max_weight > 3) throw UncoveredRange("the solver is set up through weight 3");
    CocycleSolution sol;
    sol.max_weight = max_weight;
    // phi[lambda][w]
    std::map<Word, std::map<Word, ScalarPoly>> phi;
    phi[Word()][Word()] = ScalarPoly(Rational(1));

    auto image = [&](const Word& l) {
        WPolynomial r;
        for (const auto& [w, p] : phi.at(l))
            for (const auto& [m, c] : p.terms()) r += WPolynomial(m, ShuffleElem(w, c));
        return r;
    };

    const std::vector<GL2Element> gens{GL2Element::s(), GL2Element::N(), GL2Element::torus(2, 3)};

    for (int n = 1; n <= max_weight; ++n) {
        auto lams = words_of_weight(Alphabet::E, n);
        auto ws = words_of_weight(Alphabet::G, n);
        auto [dl, dw] = detail::designated_column(n);
        std::map<std::pair<Word, Word>, std::size_t> col;
        std::vector<std::pair<Word, Word>> cols;
        for (const auto& l : lams)
            for (const auto& w : ws)
                if (!(l == dl && w == dw)) cols.emplace_back(l, w);
        cols.emplace_back(dl, dw);
        for (std::size_t i = 0; i < cols.size(); ++i) col[cols[i]] = i;
        const std::size_t nc = cols.size();

        RationalMatrix A;
        std::vector<ScalarPoly> b;
        auto new_row = [&]() -> std::vector<Rational>& {
            A.emplace_back(nc, Rational(0));
            b.emplace_back();
            return A.back();
        };

        // coproduct: phi_{lambda}^{w'w''} = phi_{lambda'}^{w'} phi_{lambda''}^{w''}
        for (const auto& l : lams)
            for (int m = 1; m < n; ++m) {
                Word lp = l.sub(0, static_cast<std::size_t>(m)), ls = l.sub(static_cast<std::size_t>(m));
                for (const auto& w1 : words_of_weight(Alphabet::G, m))
                    for (const auto& w2 : words_of_weight(Alphabet::G, n - m)) {
                        auto& row = new_row();
                        row[col.at({l, w1 + w2})] = 1;
                        b.back() = phi[lp][w1] * phi[ls][w2];
                    }
            }

        // shuffle homomorphism
        for (int a = 1; 2 * a <= n; ++a)
            for (const auto& u : words_of_weight(Alphabet::E, a))
                for (const auto& v : words_of_weight(Alphabet::E, n - a)) {
                    ShuffleElem uv = ShuffleElem(u) * ShuffleElem(v);
                    WPolynomial rhs = image(u) * image(v);
                    for (const auto& w : ws) {
                        auto& row = new_row();
                        for (const auto& [l, c] : uv.terms()) row[col.at({l, w})] += c;
                        b.back() = rhs.coeff_of_word(w);
                    }
                }

        // equivariance: c#(g lambda) = g c#(lambda)
        for (const auto& g : gens) {
            std::map<Word, ShuffleElem> gw;
            for (const auto& w : ws) gw[w] = gl2_act(g, ShuffleElem(w));
            for (const auto& l : lams) {
                ShuffleElem gl = gl2_act(g, ShuffleElem(l));
                for (const auto& w : ws) {
                    auto& row = new_row();
                    for (const auto& [lp, c] : gl.terms()) row[col.at({lp, w})] += c;
                    for (const auto& wp : ws) {
                        Rational k = gw[wp].coeff(w);
                        if (k != 0) row[col.at({l, wp})] -= k;
                    }
                }
            }
        }

        auto piv = rref_with_rhs(A, b);
        for (std::size_t r = piv.size(); r < A.size(); ++r)
            if (!b[r].is_zero()) throw InconsistencyError("cocycle constraints are inconsistent at weight " + std::to_string(n));
        std::vector<bool> is_piv(nc, false);
        for (auto c : piv) is_piv[c] = true;
        int nfree = 0;
        for (std::size_t c = 0; c < nc; ++c) nfree += is_piv[c] ? 0 : 1;
        sol.free_per_weight.push_back(nfree);
        if (nfree != 1 || is_piv[nc - 1])
            throw IdentityFailure("expected exactly one new cocycle parameter at weight " + std::to_string(n) +
                                  ", found " + std::to_string(nfree));

        ScalarPoly wn = ScalarPoly::w(n);
        for (const auto& l : lams) phi[l];
        phi[dl][dw] = wn;
        for (std::size_t r = 0; r < piv.size(); ++r) {
            ScalarPoly v = b[r] - wn * A[r][nc - 1];
            const auto& [l, w] = cols[piv[r]];
            if (!v.is_zero()) phi[l][w] = v;
        }
        for (auto& [l, row] : phi)
            for (auto it = row.begin(); it != row.end();)
                it = it->second.is_zero() ? row.erase(it) : std::next(it);
    }
    for (const auto& [l, row] : phi) sol.images[l] = image(l);
    return sol;
}

}  // namespace ck
