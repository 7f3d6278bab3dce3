#pragma once

// Shuffle Hopf algebras on two weighted alphabets:
//   E = {e0, e1}                       (coordinates on the fundamental group)
//   G = {pi0, pi1, tau, sig0, sig1}    (dual basis f_w of the coefficient algebra)
// Product: shuffle. Coproduct: deconcatenation. Lyndon words give a polynomial basis.

#include "ck/errors.hpp"
#include "ck/rational.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

namespace ck {

enum Letter : char { e0 = 0, e1 = 1, pi0 = 2, pi1 = 3, tau = 4, sig0 = 5, sig1 = 6 };

inline constexpr int kLetterCount = 7;
inline constexpr std::array<int, kLetterCount> kLetterWeight{1, 1, 1, 1, 2, 3, 3};
inline constexpr std::array<std::string_view, kLetterCount> kLetterName{"e0", "e1", "pi0", "pi1", "tau", "sig0", "sig1"};

enum class Alphabet { none, E, G };

inline Alphabet alphabet_of(char l) { return l <= e1 ? Alphabet::E : Alphabet::G; }

inline Alphabet join(Alphabet a, Alphabet b) {
    if (a == Alphabet::none) return b;
    if (b == Alphabet::none || a == b) return a;
    throw InvalidInput("letters from different alphabets cannot be combined");
}

class Word {
  public:
    Word() = default;
    explicit Word(std::string letters) : s_(std::move(letters)) {
        for (char c : s_) {
            if (c < 0 || c >= kLetterCount) throw InvalidInput("bad letter code");
            alpha_ = join(alpha_, alphabet_of(c));
            w_ += kLetterWeight[static_cast<std::size_t>(c)];
        }
    }
    Word(std::initializer_list<Letter> ls) : Word(std::string(ls.begin(), ls.end())) {}

    const std::string& letters() const { return s_; }
    std::size_t size() const { return s_.size(); }
    bool empty() const { return s_.empty(); }
    int weight() const { return w_; }
    Alphabet alphabet() const { return alpha_; }
    char operator[](std::size_t i) const { return s_[i]; }

    Word sub(std::size_t pos, std::size_t len = std::string::npos) const { return Word(s_.substr(pos, len)); }
    friend Word operator+(const Word& a, const Word& b) { return Word(a.s_ + b.s_); }

    /// Weight first, then lexicographic in the letter order.
    friend bool operator<(const Word& a, const Word& b) {
        if (a.w_ != b.w_) return a.w_ < b.w_;
        return a.s_ < b.s_;
    }
    friend bool operator==(const Word& a, const Word& b) { return a.s_ == b.s_; }
    friend bool operator!=(const Word& a, const Word& b) { return a.s_ != b.s_; }

  private:
    std::string s_;
    int w_ = 0;
    Alphabet alpha_ = Alphabet::none;
};

/// "pi0.tau.pi0"; the empty word is "1".
inline std::string to_string(const Word& w) {
    if (w.empty()) return "1";
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out += '.';
        out += kLetterName[static_cast<std::size_t>(w[i])];
    }
    return out;
}

inline Word parse_word(std::string_view text) {
    if (text == "1" || text.empty()) return Word();
    std::string codes;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t dot = text.find('.', pos);
        std::string_view tok = text.substr(pos, dot == std::string_view::npos ? std::string_view::npos : dot - pos);
        auto it = std::find(kLetterName.begin(), kLetterName.end(), tok);
        if (it == kLetterName.end()) throw InvalidInput("unknown letter '" + std::string(tok) + "'");
        codes += static_cast<char>(it - kLetterName.begin());
        if (dot == std::string_view::npos) break;
        pos = dot + 1;
    }
    return Word(codes);
}

/// Words of exactly weight n over the given alphabet, in Word order.
inline std::vector<Word> words_of_weight(Alphabet a, int n) {
    std::vector<char> letters;
    if (a == Alphabet::E) letters = {e0, e1};
    else letters = {pi0, pi1, tau, sig0, sig1};
    std::vector<Word> out;
    std::string cur;
    std::function<void(int)> rec = [&](int left) {
        if (left == 0) {
            out.emplace_back(cur);
            return;
        }
        for (char l : letters) {
            int w = kLetterWeight[static_cast<std::size_t>(l)];
            if (w > left) continue;
            cur.push_back(l);
            rec(left - w);
            cur.pop_back();
        }
    };
    if (n >= 0) rec(n);
    std::sort(out.begin(), out.end());
    return out;
}

namespace detail {

/// Adds every interleaving of u and v (with multiplicity) to out.
inline void shuffle_into(const std::string& u, const std::string& v, std::int64_t coeff,
                         std::unordered_map<std::string, std::int64_t>& out) {
    std::string buf(u.size() + v.size(), '\0');
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t j) {
        if (i == u.size()) {
            std::copy(v.begin() + static_cast<std::ptrdiff_t>(j), v.end(), buf.begin() + static_cast<std::ptrdiff_t>(i + j));
            out[buf] += coeff;
            return;
        }
        if (j == v.size()) {
            std::copy(u.begin() + static_cast<std::ptrdiff_t>(i), u.end(), buf.begin() + static_cast<std::ptrdiff_t>(i + j));
            out[buf] += coeff;
            return;
        }
        buf[i + j] = u[i];
        rec(i + 1, j);
        buf[i + j] = v[j];
        rec(i, j + 1);
    };
    rec(0, 0);
}

}  // namespace detail

class ShuffleElem {
  public:
    using Map = std::map<Word, Rational>;

    ShuffleElem() = default;
    ShuffleElem(const Word& w, const Rational& c = 1) {
        if (c != 0) t_[w] = c;
    }
    explicit ShuffleElem(Map m) : t_(std::move(m)) { prune(); }
    static ShuffleElem one() { return ShuffleElem(Word()); }
    static ShuffleElem scalar(const Rational& c) { return ShuffleElem(Word(), c); }
    /// f_w for a word given by letters
    static ShuffleElem f(std::initializer_list<Letter> ls) { return ShuffleElem(Word(ls)); }

    const Map& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    std::size_t size() const { return t_.size(); }
    Rational coeff(const Word& w) const {
        auto it = t_.find(w);
        return it == t_.end() ? Rational(0) : it->second;
    }

    Alphabet alphabet() const {
        Alphabet a = Alphabet::none;
        for (const auto& [w, c] : t_) a = join(a, w.alphabet());
        return a;
    }

    bool is_homogeneous() const {
        return t_.empty() || t_.begin()->first.weight() == t_.rbegin()->first.weight();
    }
    int max_weight() const { return t_.empty() ? -1 : t_.rbegin()->first.weight(); }

    ShuffleElem pr_weight(int n) const {
        Map m;
        for (const auto& [w, c] : t_)
            if (w.weight() == n) m.emplace(w, c);
        return ShuffleElem(std::move(m));
    }

    ShuffleElem& operator+=(const ShuffleElem& o) {
        for (const auto& [w, c] : o.t_) {
            auto [it, fresh] = t_.emplace(w, c);
            if (!fresh) {
                it->second += c;
                if (it->second == 0) t_.erase(it);
            }
        }
        return *this;
    }
    ShuffleElem& operator-=(const ShuffleElem& o) { return *this += o * Rational(-1); }
    ShuffleElem operator-() const { return *this * Rational(-1); }
    ShuffleElem operator*(const Rational& k) const {
        if (k == 0) return {};
        ShuffleElem r;
        for (const auto& [w, c] : t_) r.t_.emplace(w, c * k);
        return r;
    }
    friend ShuffleElem operator*(const Rational& k, const ShuffleElem& x) { return x * k; }
    friend ShuffleElem operator+(ShuffleElem x, const ShuffleElem& y) { return x += y; }
    friend ShuffleElem operator-(ShuffleElem x, const ShuffleElem& y) { return x -= y; }

    bool operator==(const ShuffleElem& o) const { return t_ == o.t_; }
    bool operator!=(const ShuffleElem& o) const { return !(t_ == o.t_); }

  private:
    void prune() {
        for (auto it = t_.begin(); it != t_.end();)
            it = it->second == 0 ? t_.erase(it) : std::next(it);
    }
    Map t_;
};

inline ShuffleElem shuffle_product(const ShuffleElem& x, const ShuffleElem& y) {
    join(x.alphabet(), y.alphabet());
    std::map<Word, Rational> acc;
    for (const auto& [u, cu] : x.terms())
        for (const auto& [v, cv] : y.terms()) {
            std::unordered_map<std::string, std::int64_t> sh;
            detail::shuffle_into(u.letters(), v.letters(), 1, sh);
            Rational c = cu * cv;
            for (const auto& [s, n] : sh) acc[Word(s)] += c * n;
        }
    return ShuffleElem(std::move(acc));
}

/// Shuffle product.
inline ShuffleElem operator*(const ShuffleElem& x, const ShuffleElem& y) { return shuffle_product(x, y); }

inline ShuffleElem shuffle_power(const ShuffleElem& x, int n) {
    ShuffleElem r = ShuffleElem::one();
    for (int i = 0; i < n; ++i) r = r * x;
    return r;
}

/// e.g. "3/2*pi0.tau - pi1 + 1"; zero is "0".
inline std::string to_string(const ShuffleElem& x) {
    if (x.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, c] : x.terms()) {
        Rational a = c < 0 ? Rational(-c) : c;
        if (first) os << (c < 0 ? "-" : "");
        else os << (c < 0 ? " - " : " + ");
        if (w.empty()) os << to_string(a);
        else if (a == 1) os << to_string(w);
        else os << to_string(a) << "*" << to_string(w);
        first = false;
    }
    return os.str();
}

/// Inverse of to_string.
inline ShuffleElem parse_shuffle(std::string_view text) {
    std::string s;
    for (char ch : text)
        if (ch != ' ' && ch != '\t') s += ch;
    if (s.empty()) throw InvalidInput("empty shuffle element");
    if (s == "0") return {};
    ShuffleElem out;
    std::size_t i = 0;
    while (i < s.size()) {
        int sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            sign = s[i] == '-' ? -1 : 1;
            ++i;
        } else if (i != 0) {
            throw InvalidInput("expected + or - in shuffle element");
        }
        std::size_t j = i;
        while (j < s.size() && s[j] != '+' && s[j] != '-') ++j;
        std::string term = s.substr(i, j - i);
        if (term.empty()) throw InvalidInput("empty term in shuffle element");
        Rational c = 1;
        Word w;
        auto star = term.find('*');
        if (star != std::string::npos) {
            c = parse_rational(term.substr(0, star));
            if (star + 1 == term.size()) throw InvalidInput("missing word after '*'");
            w = parse_word(term.substr(star + 1));
        } else if (std::isdigit(static_cast<unsigned char>(term[0]))) {
            c = parse_rational(term);
        } else {
            w = parse_word(term);
        }
        out += ShuffleElem(w, c * sign);
        i = j;
    }
    return out;
}

// Coproducts.

using TensorElem = std::map<std::pair<Word, Word>, Rational>;

inline void add_to(TensorElem& t, const Word& a, const Word& b, const Rational& c) {
    if (c == 0) return;
    auto [it, fresh] = t.emplace(std::make_pair(a, b), c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) t.erase(it);
    }
}

/// Full deconcatenation: sum over all splits w = u v of u (x) v.
inline TensorElem deconcat_coproduct_full(const ShuffleElem& x) {
    TensorElem t;
    for (const auto& [w, c] : x.terms())
        for (std::size_t k = 0; k <= w.size(); ++k) add_to(t, w.sub(0, k), w.sub(k), c);
    return t;
}

/// Reduced coproduct: only splits with both parts nonempty.
inline TensorElem deconcat_coproduct(const ShuffleElem& x) {
    TensorElem t;
    for (const auto& [w, c] : x.terms())
        for (std::size_t k = 1; k < w.size(); ++k) add_to(t, w.sub(0, k), w.sub(k), c);
    return t;
}

inline TensorElem pr_bidegree(const TensorElem& t, int m, int n) {
    TensorElem r;
    for (const auto& [k, c] : t)
        if (k.first.weight() == m && k.second.weight() == n) r.emplace(k, c);
    return r;
}

/// (a (x) b)(c (x) d) = (a sh c) (x) (b sh d)
inline TensorElem tensor_shuffle(const TensorElem& x, const TensorElem& y) {
    TensorElem r;
    for (const auto& [k1, c1] : x)
        for (const auto& [k2, c2] : y) {
            ShuffleElem left = ShuffleElem(k1.first) * ShuffleElem(k2.first);
            ShuffleElem right = ShuffleElem(k1.second) * ShuffleElem(k2.second);
            for (const auto& [a, ca] : left.terms())
                for (const auto& [b, cb] : right.terms()) add_to(r, a, b, c1 * c2 * ca * cb);
        }
    return r;
}

// Lyndon words and the polynomial structure.

/// Strictly smaller than each proper rotation (letter order e0<e1, pi0<pi1<tau<sig0<sig1).
inline bool is_lyndon(const Word& w) {
    const std::string& s = w.letters();
    if (s.empty()) return false;
    for (std::size_t k = 1; k < s.size(); ++k)
        if (!(s < s.substr(k) + s.substr(0, k))) return false;
    return true;
}

/// Chen-Fox-Lyndon factorization w = l1 l2 ... lk with l1 >= ... >= lk (Duval).
inline std::vector<Word> lyndon_factorization(const Word& w) {
    const std::string& s = w.letters();
    std::vector<Word> out;
    std::size_t n = s.size(), i = 0;
    while (i < n) {
        std::size_t j = i + 1, k = i;
        while (j < n && s[k] <= s[j]) {
            k = s[k] < s[j] ? i : k + 1;
            ++j;
        }
        while (i <= k) {
            out.push_back(Word(s.substr(i, j - k)));
            i += j - k;
        }
    }
    return out;
}

/// Monomial in Lyndon-word variables: sorted (descending) multiset of Lyndon words.
using LyndonMonomial = std::vector<Word>;

inline bool lyndon_monomial_less(const LyndonMonomial& a, const LyndonMonomial& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                        [](const Word& x, const Word& y) { return x.letters() < y.letters(); });
}

struct LyndonMonomialLess {
    bool operator()(const LyndonMonomial& a, const LyndonMonomial& b) const {
        int wa = 0, wb = 0;
        for (const auto& w : a) wa += w.weight();
        for (const auto& w : b) wb += w.weight();
        if (wa != wb) return wa < wb;
        return lyndon_monomial_less(a, b);
    }
};

using LyndonPoly = std::map<LyndonMonomial, Rational, LyndonMonomialLess>;

inline LyndonMonomial make_monomial(std::vector<Word> ws) {
    std::sort(ws.begin(), ws.end(), [](const Word& x, const Word& y) { return x.letters() > y.letters(); });
    return ws;
}

/// Shuffle product of the Lyndon words in m.
inline ShuffleElem expand_monomial(const LyndonMonomial& m) {
    ShuffleElem r = ShuffleElem::one();
    for (const auto& w : m) r = r * ShuffleElem(w);
    return r;
}

inline ShuffleElem expand_lyndon(const LyndonPoly& p) {
    ShuffleElem r;
    for (const auto& [m, c] : p) r += expand_monomial(m) * c;
    return r;
}

/// Rewrites x as a polynomial in Lyndon words. The shuffle of the Lyndon factors of w
/// equals (product of factorials of repeated factors) * w plus lexicographically smaller words.
inline LyndonPoly lyndon_decompose(const ShuffleElem& x) {
    LyndonPoly out;
    ShuffleElem rest = x;
    while (!rest.is_zero()) {
        // largest word of the top weight, by plain lexicographic order
        const int top = rest.max_weight();
        const Word* lead = nullptr;
        for (const auto& [w, c] : rest.terms())
            if (w.weight() == top && (!lead || w.letters() > lead->letters())) lead = &w;
        Word w = *lead;
        Rational c = rest.coeff(w);
        LyndonMonomial m = make_monomial(lyndon_factorization(w));
        ShuffleElem e = expand_monomial(m);
        Rational lc = e.coeff(w);
        if (lc == 0) throw InconsistencyError("Lyndon triangularity failed for " + to_string(w));
        Rational q = c / lc;
        out[m] += q;
        if (out[m] == 0) out.erase(m);
        rest -= e * q;
    }
    return out;
}

namespace detail {

inline std::optional<LyndonMonomial> monomial_quotient(const LyndonMonomial& a, const LyndonMonomial& b) {
    // multiset difference a - b if b is contained in a
    std::map<std::string, int> count;
    for (const auto& w : a) ++count[w.letters()];
    for (const auto& w : b)
        if (--count[w.letters()] < 0) return std::nullopt;
    std::vector<Word> q;
    for (const auto& [s, n] : count)
        for (int i = 0; i < n; ++i) q.emplace_back(s);
    return make_monomial(std::move(q));
}

inline LyndonMonomial monomial_product(const LyndonMonomial& a, const LyndonMonomial& b) {
    std::vector<Word> v(a);
    v.insert(v.end(), b.begin(), b.end());
    return make_monomial(std::move(v));
}

}  // namespace detail

inline LyndonPoly lyndon_mul(const LyndonPoly& x, const LyndonPoly& y) {
    LyndonPoly r;
    for (const auto& [m1, c1] : x)
        for (const auto& [m2, c2] : y) {
            auto m = detail::monomial_product(m1, m2);
            r[m] += c1 * c2;
            if (r[m] == 0) r.erase(m);
        }
    return r;
}

struct DivisionResult {
    bool divisible = false;
    ShuffleElem quotient;
};

/// q with y sh q = x, if it exists. Division by zero is an error.
inline DivisionResult exact_divide(const ShuffleElem& x, const ShuffleElem& y) {
    if (y.is_zero()) throw InvalidInput("division by the zero shuffle element");
    LyndonPoly px = lyndon_decompose(x);
    LyndonPoly py = lyndon_decompose(y);
    const auto& [ly, cy] = *py.rbegin();
    LyndonPoly q;
    while (!px.empty()) {
        const auto& [lx, cx] = *px.rbegin();
        auto mq = detail::monomial_quotient(lx, ly);
        if (!mq) return {false, {}};
        LyndonPoly t{{*mq, cx / cy}};
        q[*mq] += cx / cy;
        LyndonPoly sub = lyndon_mul(t, py);
        for (const auto& [m, c] : sub) {
            px[m] -= c;
            if (px[m] == 0) px.erase(m);
        }
    }
    return {true, expand_lyndon(q)};
}

// GL2 action, letter by letter.

struct GenS {};
struct GenN {};
/// e1 -> e1 + c e0 (and likewise on pi1, sig1); c = 1 is N.
struct GenUnipotent {
    Rational c;
};
struct GenTorus {
    Rational x1, x2;
};

using GL2Generator = std::variant<GenS, GenN, GenUnipotent, GenTorus>;

/// Product g_1 g_2 ... g_k acting as g_1(g_2(...g_k(x))).
struct GL2Element {
    std::vector<GL2Generator> seq;

    static GL2Element s() { return {{GenS{}}}; }
    static GL2Element N() { return {{GenN{}}}; }
    static GL2Element unipotent(const Rational& c) { return {{GenUnipotent{c}}}; }
    static GL2Element torus(const Rational& x1, const Rational& x2) { return {{GenTorus{x1, x2}}}; }
    static GL2Element identity() { return {}; }

    friend GL2Element operator*(const GL2Element& g, const GL2Element& h) {
        GL2Element r = g;
        r.seq.insert(r.seq.end(), h.seq.begin(), h.seq.end());
        return r;
    }
};

namespace detail {

using LetterImage = std::vector<std::pair<char, Rational>>;

inline LetterImage letter_image(const GL2Generator& g, char l) {
    if (std::holds_alternative<GenS>(g)) {
        switch (l) {
            case e0: return {{e1, 1}};
            case e1: return {{e0, 1}};
            case pi0: return {{pi1, 1}};
            case pi1: return {{pi0, 1}};
            case tau: return {{tau, -1}};
            case sig0: return {{sig1, -1}};
            default: return {{sig0, -1}};
        }
    }
    if (std::holds_alternative<GenN>(g) || std::holds_alternative<GenUnipotent>(g)) {
        Rational c = std::holds_alternative<GenN>(g) ? Rational(1) : std::get<GenUnipotent>(g).c;
        switch (l) {
            case e1: return c == 0 ? LetterImage{{e1, 1}} : LetterImage{{e1, 1}, {e0, c}};
            case pi1: return c == 0 ? LetterImage{{pi1, 1}} : LetterImage{{pi1, 1}, {pi0, c}};
            case sig1: return c == 0 ? LetterImage{{sig1, 1}} : LetterImage{{sig1, 1}, {sig0, c}};
            default: return {{l, 1}};
        }
    }
    const auto& t = std::get<GenTorus>(g);
    switch (l) {
        case e0:
        case pi0: return {{l, t.x1}};
        case e1:
        case pi1: return {{l, t.x2}};
        case tau: return {{l, t.x1 * t.x2}};
        case sig0: return {{l, t.x1 * t.x1 * t.x2}};
        default: return {{l, t.x1 * t.x2 * t.x2}};
    }
}

inline ShuffleElem act_generator(const GL2Generator& g, const ShuffleElem& x) {
    std::map<Word, Rational> acc;
    for (const auto& [w, c] : x.terms()) {
        std::vector<std::pair<std::string, Rational>> partial{{"", c}};
        for (char l : w.letters()) {
            auto img = letter_image(g, l);
            std::vector<std::pair<std::string, Rational>> next;
            next.reserve(partial.size() * img.size());
            for (const auto& [s, k] : partial)
                for (const auto& [nl, nk] : img) next.emplace_back(s + nl, k * nk);
            partial = std::move(next);
        }
        for (const auto& [s, k] : partial) acc[Word(s)] += k;
    }
    return ShuffleElem(std::move(acc));
}

}  // namespace detail

inline ShuffleElem gl2_act(const GL2Element& g, const ShuffleElem& x) {
    ShuffleElem r = x;
    for (auto it = g.seq.rbegin(); it != g.seq.rend(); ++it) r = detail::act_generator(*it, r);
    return r;
}

}  // namespace ck
