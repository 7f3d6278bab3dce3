#pragma once

// Grothendieck ring of finite-dimensional GL2 representations.
// Basis: irreducibles M_{a,b} = Sym^a(std) (x) det^b, weight -a-2b.

#include "ck/errors.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace ck {

struct IrrClass {
    int a = 0;
    int b = 0;

    IrrClass() = default;
    IrrClass(int a_, int b_) : a(a_), b(b_) {
        if (a_ < 0) throw InvalidInput("M_{a,b} needs a >= 0, got a = " + std::to_string(a_));
    }

    int weight() const { return -a - 2 * b; }
    int dim() const { return a + 1; }
    bool anti_effective() const { return b >= 0; }

    auto operator<=>(const IrrClass&) const = default;
};

inline std::string to_string(const IrrClass& m) {
    return "M_{" + std::to_string(m.a) + "," + std::to_string(m.b) + "}";
}

/// Laurent polynomial in x1, x2 with integer coefficients, kept symmetric by callers.
class CharacterPoly {
  public:
    using Exp = std::pair<int, int>;
    using Map = std::map<Exp, std::int64_t>;

    CharacterPoly() = default;
    explicit CharacterPoly(Map m) : c_(std::move(m)) { prune(); }

    static CharacterPoly monomial(int i, int j, std::int64_t c = 1) {
        CharacterPoly p;
        if (c != 0) p.c_[{i, j}] = c;
        return p;
    }

    /// h_a(x1,x2) (x1 x2)^b
    static CharacterPoly of(const IrrClass& m) {
        CharacterPoly p;
        for (int i = 0; i <= m.a; ++i) p.c_[{i + m.b, m.a - i + m.b}] = 1;
        return p;
    }

    const Map& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }

    bool is_symmetric() const {
        for (const auto& [e, c] : c_) {
            auto it = c_.find({e.second, e.first});
            if (it == c_.end() || it->second != c) return false;
        }
        return true;
    }

    /// Value at x1 = x2 = 1.
    std::int64_t dim() const {
        std::int64_t s = 0;
        for (const auto& [e, c] : c_) s += c;
        return s;
    }

    /// x_k -> x_k^n
    CharacterPoly adams(int n) const {
        CharacterPoly p;
        for (const auto& [e, c] : c_) p.c_[{e.first * n, e.second * n}] += c;
        p.prune();
        return p;
    }

    CharacterPoly& operator+=(const CharacterPoly& o) {
        for (const auto& [e, c] : o.c_) c_[e] += c;
        prune();
        return *this;
    }
    CharacterPoly& operator-=(const CharacterPoly& o) {
        for (const auto& [e, c] : o.c_) c_[e] -= c;
        prune();
        return *this;
    }
    CharacterPoly operator*(std::int64_t k) const {
        CharacterPoly p;
        if (k == 0) return p;
        for (const auto& [e, c] : c_) p.c_[e] = c * k;
        return p;
    }
    friend CharacterPoly operator+(CharacterPoly x, const CharacterPoly& y) { return x += y; }
    friend CharacterPoly operator-(CharacterPoly x, const CharacterPoly& y) { return x -= y; }
    friend CharacterPoly operator*(const CharacterPoly& x, const CharacterPoly& y) {
        CharacterPoly p;
        for (const auto& [e1, c1] : x.c_)
            for (const auto& [e2, c2] : y.c_) p.c_[{e1.first + e2.first, e1.second + e2.second}] += c1 * c2;
        p.prune();
        return p;
    }

    /// Exact division of every coefficient by n.
    CharacterPoly divided_by(std::int64_t n) const {
        CharacterPoly p;
        for (const auto& [e, c] : c_) {
            if (c % n != 0) throw InconsistencyError("character coefficient not divisible in Newton identity");
            p.c_[e] = c / n;
        }
        return p;
    }

    bool operator==(const CharacterPoly&) const = default;

  private:
    void prune() { std::erase_if(c_, [](const auto& kv) { return kv.second == 0; }); }
    Map c_;
};

class K0Class {
  public:
    using Map = std::map<IrrClass, std::int64_t>;

    K0Class() = default;
    K0Class(const IrrClass& m, std::int64_t mult = 1) {
        if (mult != 0) t_[m] = mult;
    }
    explicit K0Class(Map m) : t_(std::move(m)) { prune(); }

    static K0Class M(int a, int b, std::int64_t mult = 1) { return K0Class(IrrClass(a, b), mult); }
    static K0Class one() { return M(0, 0); }

    const Map& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    std::int64_t mult(int a, int b) const {
        auto it = t_.find(IrrClass(a, b));
        return it == t_.end() ? 0 : it->second;
    }
    std::int64_t mult(const IrrClass& m) const { return mult(m.a, m.b); }

    std::int64_t dim() const {
        std::int64_t d = 0;
        for (const auto& [m, c] : t_) d += c * m.dim();
        return d;
    }

    bool is_effective() const {
        return std::all_of(t_.begin(), t_.end(), [](const auto& kv) { return kv.second >= 0; });
    }

    /// Every term has b >= 0.
    bool is_anti_effective() const {
        return std::all_of(t_.begin(), t_.end(), [](const auto& kv) { return kv.first.anti_effective(); });
    }

    std::vector<int> weights() const {
        std::vector<int> w;
        for (const auto& [m, c] : t_) w.push_back(m.weight());
        std::sort(w.begin(), w.end());
        w.erase(std::unique(w.begin(), w.end()), w.end());
        return w;
    }

    CharacterPoly character() const {
        CharacterPoly p;
        for (const auto& [m, c] : t_) p += CharacterPoly::of(m) * c;
        return p;
    }

    K0Class& operator+=(const K0Class& o) {
        for (const auto& [m, c] : o.t_) t_[m] += c;
        prune();
        return *this;
    }
    K0Class& operator-=(const K0Class& o) {
        for (const auto& [m, c] : o.t_) t_[m] -= c;
        prune();
        return *this;
    }
    friend K0Class operator+(K0Class x, const K0Class& y) { return x += y; }
    friend K0Class operator-(K0Class x, const K0Class& y) { return x -= y; }
    friend K0Class operator*(std::int64_t k, const K0Class& x) {
        K0Class r;
        if (k == 0) return r;
        for (const auto& [m, c] : x.t_) r.t_[m] = k * c;
        return r;
    }
    K0Class operator-() const { return -1 * *this; }

    bool operator==(const K0Class&) const = default;

  private:
    void prune() { std::erase_if(t_, [](const auto& kv) { return kv.second == 0; }); }
    Map t_;
};

/// Greedy subtraction of the irreducible whose highest weight x1^{a+b} x2^b
/// has the largest a (then largest b).
inline K0Class decompose_character(const CharacterPoly& c) {
    if (!c.is_symmetric()) throw InconsistencyError("character is not symmetric in x1, x2");
    K0Class out;
    CharacterPoly rest = c;
    while (!rest.is_zero()) {
        bool found = false;
        IrrClass lead;
        std::int64_t coeff = 0;
        for (const auto& [e, k] : rest.coeffs()) {
            if (e.first < e.second) continue;
            IrrClass cand(e.first - e.second, e.second);
            if (!found || cand > lead) {
                lead = cand;
                coeff = k;
                found = true;
            }
        }
        if (!found) throw InconsistencyError("character remainder has no dominant monomial");
        out += K0Class(lead, coeff);
        rest -= CharacterPoly::of(lead) * coeff;
    }
    return out;
}

inline K0Class mul(const K0Class& x, const K0Class& y) {
    return decompose_character(x.character() * y.character());
}

inline K0Class operator*(const K0Class& x, const K0Class& y) { return mul(x, y); }

inline K0Class power(const K0Class& x, int n) {
    if (n < 0) throw InvalidInput("negative exponent in K0 power");
    K0Class r = K0Class::one();
    for (int i = 0; i < n; ++i) r = mul(r, x);
    return r;
}

namespace detail {

inline void require_effective(const K0Class& x, const char* op) {
    if (!x.is_effective())
        throw InvalidInput(std::string(op) + " of a class with negative multiplicities is not defined");
}

// Newton: n h_n = sum_{k=1}^n p_k h_{n-k};  n e_n = sum_{k=1}^n (-1)^{k-1} p_k e_{n-k}.
inline CharacterPoly newton(const CharacterPoly& ch, int n, bool alternating) {
    std::vector<CharacterPoly> h{CharacterPoly::monomial(0, 0)};
    std::vector<CharacterPoly> p(n + 1);
    for (int k = 1; k <= n; ++k) p[k] = ch.adams(k);
    for (int m = 1; m <= n; ++m) {
        CharacterPoly acc;
        for (int k = 1; k <= m; ++k) {
            CharacterPoly term = p[k] * h[m - k];
            if (alternating && k % 2 == 0) acc -= term;
            else acc += term;
        }
        h.push_back(acc.divided_by(m));
    }
    return h[n];
}

}  // namespace detail

inline K0Class sym_power(const K0Class& x, int n) {
    detail::require_effective(x, "Sym");
    if (n < 0) throw InvalidInput("negative symmetric power");
    return decompose_character(detail::newton(x.character(), n, false));
}

inline K0Class ext_power(const K0Class& x, int n) {
    detail::require_effective(x, "Lambda");
    if (n < 0) throw InvalidInput("negative exterior power");
    return decompose_character(detail::newton(x.character(), n, true));
}

inline K0Class pr_weight(const K0Class& x, int n) {
    K0Class::Map kept;
    for (const auto& [m, c] : x.terms())
        if (m.weight() == n) kept[m] = c;
    return K0Class(kept);
}

/// e.g. "[M_{2,0}] + 3[M_{0,1}]"; zero prints as "0".
inline std::string to_string(const K0Class& x) {
    if (x.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = x.terms().rbegin(); it != x.terms().rend(); ++it) {
        auto [m, c] = *it;
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        std::int64_t a = c < 0 ? -c : c;
        if (a != 1) os << a;
        os << "[" << to_string(m) << "]";
        first = false;
    }
    return os.str();
}

}  // namespace ck
