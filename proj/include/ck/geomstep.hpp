#pragma once

// Elimination of w1, w2, w3 from c#(J1..J4): the hand replay (K, L, final element) and a
// generic linear solver for A-linear relations among chosen J-monomials.

#include "ck/cocycle.hpp"
#include "ck/linalg.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace ck {

/// J1^a J2^b J3^c J4^d as exponents {a, b, c, d}.
struct JMonomial {
    std::array<int, 4> exp{0, 0, 0, 0};

    static JMonomial J(int i, int power = 1) {
        if (i < 1 || i > 4) throw InvalidInput("J index must be 1..4");
        if (power < 0) throw InvalidInput("negative J exponent");
        JMonomial m;
        m.exp[static_cast<std::size_t>(i - 1)] = power;
        return m;
    }
    friend JMonomial operator*(const JMonomial& a, const JMonomial& b) {
        JMonomial m;
        for (std::size_t i = 0; i < 4; ++i) m.exp[i] = a.exp[i] + b.exp[i];
        return m;
    }
    auto operator<=>(const JMonomial&) const = default;
};

/// "J1*J2", "J1^3", "1"
inline std::string to_string(const JMonomial& m) {
    std::string out;
    for (int i = 0; i < 4; ++i) {
        int e = m.exp[static_cast<std::size_t>(i)];
        if (e == 0) continue;
        if (!out.empty()) out += '*';
        out += "J" + std::to_string(i + 1);
        if (e > 1) out += "^" + std::to_string(e);
    }
    return out.empty() ? "1" : out;
}

inline JMonomial parse_jmonomial(std::string_view text) {
    std::string s;
    for (char ch : text)
        if (ch != ' ') s += ch;
    JMonomial m;
    if (s == "1") return m;
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t star = s.find('*', pos);
        std::string tok = s.substr(pos, star == std::string::npos ? std::string::npos : star - pos);
        if (tok.size() < 2 || tok[0] != 'J' || tok[1] < '1' || tok[1] > '4')
            throw InvalidInput("bad J-monomial factor '" + tok + "'");
        int power = 1;
        if (tok.size() > 2) {
            if (tok[2] != '^' || tok.size() == 3) throw InvalidInput("bad J-monomial factor '" + tok + "'");
            try {
                power = std::stoi(tok.substr(3));
            } catch (const std::exception&) {
                throw InvalidInput("bad J exponent in '" + tok + "'");
            }
        }
        m = m * JMonomial::J(tok[1] - '0', power);
        if (star == std::string::npos) break;
        pos = star + 1;
    }
    return m;
}

/// {J4, J3, J1*J2, J1^3, J1}
inline std::vector<JMonomial> ck_monomial_basis() {
    return {JMonomial::J(4), JMonomial::J(3), JMonomial::J(1) * JMonomial::J(2), JMonomial::J(1, 3), JMonomial::J(1)};
}

inline WPolynomial evaluate_monomial(const JMonomial& m) {
    WPolynomial r = WPolynomial::one();
    for (int i = 0; i < 4; ++i)
        for (int e = 0; e < m.exp[static_cast<std::size_t>(i)]; ++e) r = r * evaluate_J(i + 1);
    return r;
}

/// Sum of (numerator_m / denominator) * m. A is a domain, so the element is in the
/// Chabauty-Kim ideal iff the numerator part maps to zero.
struct CKElement {
    std::vector<std::pair<JMonomial, ShuffleElem>> terms;
    ShuffleElem denominator = ShuffleElem::one();

    ShuffleElem numerator(const JMonomial& m) const {
        for (const auto& [k, x] : terms)
            if (k == m) return x;
        return {};
    }
    /// numerator / denominator when that quotient lies in A
    std::optional<ShuffleElem> coefficient(const JMonomial& m) const {
        auto d = exact_divide(numerator(m), denominator);
        if (!d.divisible) return std::nullopt;
        return d.quotient;
    }
    std::vector<JMonomial> support() const {
        std::vector<JMonomial> out;
        for (const auto& [k, x] : terms)
            if (!x.is_zero()) out.push_back(k);
        return out;
    }
    CKElement cleared() const { return {terms, ShuffleElem::one()}; }
    /// c# of the cleared element
    WPolynomial image() const {
        WPolynomial r;
        for (const auto& [k, x] : terms) r += WPolynomial({0, 0, 0}, x) * evaluate_monomial(k);
        return r;
    }
    bool vanishes() const { return image().is_zero(); }
};

struct ReplayStep {
    CKElement element;
    WPolynomial image;
};

namespace detail {

/// Exact quotient; re-multiplies to confirm.
inline ShuffleElem checked_divide(const ShuffleElem& x, const ShuffleElem& y, const std::string& what) {
    auto d = exact_divide(x, y);
    if (!d.divisible) throw IdentityFailure(what + ": not divisible");
    if (d.quotient * y != x) throw IdentityFailure(what + ": quotient does not reproduce the dividend");
    return d.quotient;
}

}  // namespace detail

/// K = f_{sig1} J3 - 2 f_{sig0} J4; its image has no w3 part.
inline ReplayStep build_K() {
    ReplayStep s;
    s.element.terms = {{JMonomial::J(4), ShuffleElem::f({sig0}) * Rational(-2)}, {JMonomial::J(3), ShuffleElem::f({sig1})}};
    s.image = s.element.image();
    if (!s.image.coeff({0, 0, 1}).is_zero()) throw IdentityFailure("w3 survives in c#(K)");
    return s;
}

/// L = f_{pi0} f_tau K - C J1 J2 with C the w1*w2 coefficient of c#(K).
inline ReplayStep build_L() {
    ReplayStep k = build_K();
    ShuffleElem lead = ShuffleElem::f({pi0}) * ShuffleElem::f({tau});
    ShuffleElem C = k.image.coeff({1, 1, 0});
    ReplayStep s;
    for (const auto& [m, x] : k.element.terms) s.element.terms.emplace_back(m, lead * x);
    s.element.terms.emplace_back(JMonomial::J(1) * JMonomial::J(2), -C);
    s.image = s.element.image();
    if (!s.image.coeff({1, 1, 0}).is_zero()) throw IdentityFailure("w1*w2 survives in c#(L)");
    for (const auto& [mono, x] : s.image.terms())
        if (mono != WMonomial{3, 0, 0} && mono != WMonomial{1, 0, 0})
            throw IdentityFailure("unexpected w-monomial " + to_string(mono) + " in c#(L)");
    return s;
}

/// L - (B / f_{pi0}^3) J1^3 + (R / f_{pi0}) J1 where c#(L) = w1^3 B - w1 R. The J1^3
/// coefficient is kept over the smallest power of f_{pi0} that makes every numerator lie
/// in A; cleared=true drops that denominator.
inline CKElement build_final(bool cleared = false) {
    ReplayStep l = build_L();
    const ShuffleElem p0 = ShuffleElem::f({pi0});
    ShuffleElem B = l.image.coeff({3, 0, 0});
    ShuffleElem R = -l.image.coeff({1, 0, 0});
    ShuffleElem j1 = detail::checked_divide(R, p0, "w1 coefficient of c#(L) by f_pi0");

    int k = 0;
    ShuffleElem Q = B;
    while (k < 3) {
        auto d = exact_divide(Q, p0);
        if (!d.divisible) break;
        if (d.quotient * p0 != Q) throw IdentityFailure("exact division by f_pi0 failed to reproduce its dividend");
        Q = d.quotient;
        ++k;
    }
    ShuffleElem D = shuffle_power(p0, 3 - k);

    CKElement e;
    for (const auto& [m, x] : l.element.terms) e.terms.emplace_back(m, x * D);
    e.terms.emplace_back(JMonomial::J(1, 3), -Q);
    e.terms.emplace_back(JMonomial::J(1), j1 * D);
    e.denominator = D;
    // order as {J4, J3, J1J2, J1^3, J1}
    std::vector<std::pair<JMonomial, ShuffleElem>> ordered;
    for (const auto& m : ck_monomial_basis()) ordered.emplace_back(m, e.numerator(m));
    e.terms = std::move(ordered);
    if (!e.vanishes()) throw IdentityFailure("c# of the final element is nonzero");
    return cleared ? e.cleared() : e;
}

// Generic elimination.

struct EliminationResult {
    std::vector<JMonomial> monomials;
    int weight_bound = 0;
    std::vector<int> dim_per_weight;    // index d = coefficient weight
    std::vector<CKElement> basis;       // each with coefficients homogeneous of one weight
    int dimension() const { return static_cast<int>(basis.size()); }
};

namespace detail {

using EqKey = std::pair<WMonomial, Word>;

struct EqKeyHash {
    std::size_t operator()(const EqKey& k) const {
        std::size_t h = std::hash<std::string>()(k.second.letters());
        for (int e : k.first) h = h * 1000003u + static_cast<std::size_t>(e);
        return h;
    }
};

inline std::vector<std::vector<Rational>> solve_weight(const std::vector<WPolynomial>& images, int d,
                                                       std::size_t& ncols_out, std::vector<std::pair<std::size_t, Word>>& colinfo) {
    auto words = words_of_weight(Alphabet::G, d);
    colinfo.clear();
    for (std::size_t m = 0; m < images.size(); ++m)
        for (const auto& u : words) colinfo.emplace_back(m, u);
    const std::size_t nc = colinfo.size();
    ncols_out = nc;

    std::unordered_map<EqKey, std::size_t, EqKeyHash> row_of;
    std::vector<std::vector<std::pair<std::size_t, Rational>>> col_entries(nc);
    for (std::size_t c = 0; c < nc; ++c) {
        const auto& [m, u] = colinfo[c];
        std::map<std::size_t, Rational> acc;
        for (const auto& [mono, x] : images[m].terms()) {
            ShuffleElem prod = ShuffleElem(u) * x;
            for (const auto& [w, k] : prod.terms()) {
                auto [it, fresh] = row_of.emplace(EqKey{mono, w}, row_of.size());
                acc[it->second] += k;
            }
        }
        for (const auto& [r, k] : acc)
            if (k != 0) col_entries[c].emplace_back(r, k);
    }

    UnionFind uf(nc);
    std::vector<std::size_t> first_col(row_of.size(), nc);
    for (std::size_t c = 0; c < nc; ++c)
        for (const auto& [r, k] : col_entries[c]) {
            if (first_col[r] == nc) first_col[r] = c;
            else uf.unite(first_col[r], c);
        }
    std::map<std::size_t, std::vector<std::size_t>> comps;
    for (std::size_t c = 0; c < nc; ++c) comps[uf.find(c)].push_back(c);

    std::vector<std::vector<Rational>> basis;
    for (const auto& [root, cols] : comps) {
        std::map<std::size_t, std::size_t> local_row;
        for (auto c : cols)
            for (const auto& [r, k] : col_entries[c]) local_row.emplace(r, local_row.size());
        const std::size_t n = cols.size();
        std::vector<std::vector<std::uint64_t>> Am(local_row.size(), std::vector<std::uint64_t>(n, 0));
        for (std::size_t j = 0; j < n; ++j)
            for (const auto& [r, k] : col_entries[cols[j]]) Am[local_row[r]][j] = mod_from(k);
        auto ns = nullspace_mod_p(std::move(Am), n);
        if (ns.empty()) continue;

        // lift, then confirm over Q; fall back to an exact solve if lifting fails
        std::vector<std::vector<Rational>> lifted;
        bool ok = true;
        for (const auto& v : ns) {
            std::vector<Rational> q(n);
            for (std::size_t j = 0; j < n && ok; ++j) {
                auto r = rational_reconstruct(v[j]);
                if (!r) ok = false;
                else q[j] = *r;
            }
            if (!ok) break;
            std::map<std::size_t, Rational> res;
            for (std::size_t j = 0; j < n; ++j) {
                if (q[j] == 0) continue;
                for (const auto& [r, k] : col_entries[cols[j]]) res[r] += q[j] * k;
            }
            for (const auto& [r, k] : res)
                if (k != 0) ok = false;
            if (!ok) break;
            lifted.push_back(std::move(q));
        }
        if (!ok) {
            RationalMatrix Aq(local_row.size(), std::vector<Rational>(n, 0));
            for (std::size_t j = 0; j < n; ++j)
                for (const auto& [r, k] : col_entries[cols[j]]) Aq[local_row[r]][j] = k;
            lifted = nullspace(std::move(Aq), n);
        }
        for (const auto& q : lifted) {
            std::vector<Rational> full(nc, 0);
            for (std::size_t j = 0; j < n; ++j) full[cols[j]] = q[j];
            basis.push_back(std::move(full));
        }
    }
    return basis;
}

}  // namespace detail

/// All relations sum_m gamma_m * m with c#(...) = 0 and every gamma_m homogeneous of a
/// common weight d <= coeff_weight_bound. Different d never interact, so the solution space
/// is the direct sum of the per-weight spaces.
inline EliminationResult generic_eliminate(const std::vector<JMonomial>& monomials, int coeff_weight_bound) {
    if (monomials.empty()) throw InvalidInput("monomial list is empty");
    if (coeff_weight_bound < 0) throw InvalidInput("weight bound must be nonnegative");
    for (std::size_t i = 0; i < monomials.size(); ++i)
        for (std::size_t j = i + 1; j < monomials.size(); ++j)
            if (monomials[i] == monomials[j]) throw InvalidInput("repeated J-monomial");
    EliminationResult res;
    res.monomials = monomials;
    res.weight_bound = coeff_weight_bound;
    std::vector<WPolynomial> images;
    for (const auto& m : monomials) images.push_back(evaluate_monomial(m));
    for (int d = 0; d <= coeff_weight_bound; ++d) {
        std::size_t nc = 0;
        std::vector<std::pair<std::size_t, Word>> colinfo;
        auto basis = detail::solve_weight(images, d, nc, colinfo);
        res.dim_per_weight.push_back(static_cast<int>(basis.size()));
        for (const auto& v : basis) {
            std::vector<ShuffleElem> coeff(monomials.size());
            for (std::size_t c = 0; c < nc; ++c)
                if (v[c] != 0) coeff[colinfo[c].first] += ShuffleElem(colinfo[c].second, v[c]);
            CKElement e;
            for (std::size_t m = 0; m < monomials.size(); ++m) e.terms.emplace_back(monomials[m], coeff[m]);
            res.basis.push_back(std::move(e));
        }
    }
    return res;
}

/// Whether the cleared form of e lies in the span of the weight-d part of r, where d is the
/// common coefficient weight of e. Exact rational solve.
inline bool in_span(const CKElement& e, const EliminationResult& r) {
    auto c = e.cleared();
    int d = -1;
    for (const auto& [m, x] : c.terms) {
        if (x.is_zero()) continue;
        if (!x.is_homogeneous()) return false;
        int w = x.max_weight();
        if (d >= 0 && w != d) return false;
        d = w;
    }
    if (d < 0) return true;
    // coordinates: (monomial index, word) pairs present anywhere
    std::map<std::pair<std::size_t, Word>, std::size_t> idx;
    auto coord = [&](const CKElement& x, std::map<std::size_t, Rational>& out) -> bool {
        for (const auto& [m, s] : x.terms) {
            auto it = std::find(r.monomials.begin(), r.monomials.end(), m);
            if (it == r.monomials.end()) {
                if (!s.is_zero()) return false;
                continue;
            }
            std::size_t mi = static_cast<std::size_t>(it - r.monomials.begin());
            for (const auto& [w, k] : s.terms()) out[idx.emplace(std::make_pair(mi, w), idx.size()).first->second] += k;
        }
        return true;
    };
    std::vector<std::map<std::size_t, Rational>> gens;
    for (const auto& b : r.basis) {
        bool same_weight = false;
        for (const auto& [m, s] : b.terms)
            if (!s.is_zero()) same_weight = s.max_weight() == d;
        if (!same_weight) continue;
        gens.emplace_back();
        coord(b, gens.back());
    }
    std::map<std::size_t, Rational> target;
    if (!coord(c, target)) return false;
    if (gens.empty()) return false;
    // solve sum_i x_i gens_i = target
    RationalMatrix A(idx.size(), std::vector<Rational>(gens.size(), 0));
    std::vector<Rational> b(idx.size(), 0);
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (const auto& [row, k] : gens[i]) A[row][i] = k;
    for (const auto& [row, k] : target) b[row] = k;
    auto piv = rref_with_rhs(A, b);
    for (std::size_t row = piv.size(); row < A.size(); ++row)
        if (b[row] != 0) return false;
    return true;
}

}  // namespace ck
