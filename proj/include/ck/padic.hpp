#pragma once

// Fixed-precision p-adic numbers with pessimistic precision tracking, the unit root of
// x^2 - a_p x + p, and the Mazur-Stickelberger sum over a table of modular symbols.

#include "ck/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace ck {

/// p^val * unit + O(p^prec). Zero is stored as val = prec, unit = 0.
class PadicNumber {
public:
    PadicNumber(std::int64_t p, int prec) : p_(p), prec_(prec), val_(prec), unit_(0) { check_prime(); }

    static PadicNumber from_rational(const Rational& q, std::int64_t p, int prec) {
        PadicNumber x(p, prec);
        if (q == 0) return x;
        int v = ck::valuation(q, BigInt(p));
        if (v >= prec) return x;
        x.val_ = v;
        Rational u = q / rpow(Rational(p), v);
        x.unit_ = rational_mod(u, ipow(BigInt(p), static_cast<unsigned>(prec - v)));
        return x;
    }
    static PadicNumber from_integer(const BigInt& n, std::int64_t p, int prec) { return from_rational(Rational(n), p, prec); }

    std::int64_t prime() const { return p_; }
    int precision() const { return prec_; }
    /// Valuation of the representative; equals precision() when indistinguishable from 0.
    int valuation() const { return val_; }
    int relative_precision() const { return prec_ - val_; }
    const BigInt& unit() const { return unit_; }
    bool is_zero() const { return unit_ == 0; }

    /// Representative in [0, p^prec) when val >= 0.
    BigInt residue() const {
        if (val_ < 0) throw InvalidInput("p-adic number is not integral");
        return unit_ * ipow(BigInt(p_), static_cast<unsigned>(val_));
    }

    PadicNumber operator-() const {
        PadicNumber r = *this;
        if (!is_zero()) r.unit_ = mod_floor(-unit_, modulus(relative_precision()));
        return r;
    }

    PadicNumber operator+(const PadicNumber& o) const {
        same_prime(o);
        int prec = std::min(prec_, o.prec_);
        int v = std::min(val_, o.val_);
        if (v >= prec) return PadicNumber(p_, prec);
        BigInt m = modulus(prec - v);
        BigInt s = lift(v) + o.lift(v);
        return normalized(p_, prec, v, mod_floor(s, m));
    }
    PadicNumber operator-(const PadicNumber& o) const { return *this + (-o); }

    PadicNumber operator*(const PadicNumber& o) const {
        same_prime(o);
        if (is_zero() && o.is_zero()) return PadicNumber(p_, prec_ + o.prec_);
        if (is_zero()) return PadicNumber(p_, prec_ + o.val_);
        if (o.is_zero()) return PadicNumber(p_, o.prec_ + val_);
        int rel = std::min(relative_precision(), o.relative_precision());
        int v = val_ + o.val_;
        return normalized(p_, v + rel, v, mod_floor(unit_ * o.unit_, modulus(rel)));
    }

    PadicNumber inverse() const {
        if (is_zero()) throw InvalidInput("inverse of a p-adic number indistinguishable from 0");
        int rel = relative_precision();
        PadicNumber r(p_, rel - val_);
        r.val_ = -val_;
        r.unit_ = inverse_mod(unit_, modulus(rel));
        return r;
    }
    PadicNumber operator/(const PadicNumber& o) const { return *this * o.inverse(); }

    PadicNumber pow(int e) const {
        if (e < 0) return inverse().pow(-e);
        PadicNumber r = from_rational(1, p_, prec_);
        for (int i = 0; i < e; ++i) r = i == 0 ? *this : r * *this;
        return r;
    }

    /// Drops precision to at most n.
    PadicNumber truncate(int n) const {
        if (n >= prec_) return *this;
        if (val_ >= n) return PadicNumber(p_, n);
        PadicNumber r = *this;
        r.prec_ = n;
        r.unit_ = mod_floor(unit_, modulus(n - val_));
        return r;
    }

    /// Equality up to the smaller of the two precisions.
    bool operator==(const PadicNumber& o) const { return (*this - o).is_zero(); }

    /// "21 + O(5^2)", "3*5^-1 + O(5^1)"
    std::string to_string() const {
        std::string big = "O(" + std::to_string(p_) + "^" + std::to_string(prec_) + ")";
        if (is_zero()) return big;
        std::string head = val_ >= 0 ? residue().str()
                                     : unit_.str() + "*" + std::to_string(p_) + "^" + std::to_string(val_);
        return head + " + " + big;
    }

private:
    std::int64_t p_;
    int prec_;
    int val_;
    BigInt unit_;

    PadicNumber(std::int64_t p, int prec, int val, BigInt unit) : p_(p), prec_(prec), val_(val), unit_(std::move(unit)) {}

    void check_prime() const {
        if (p_ < 2) throw InvalidInput("p-adic prime must be >= 2");
        for (std::int64_t d = 2; d * d <= p_; ++d)
            if (p_ % d == 0) throw InvalidInput("not a prime: " + std::to_string(p_));
    }
    void same_prime(const PadicNumber& o) const {
        if (p_ != o.p_) throw InvalidInput("p-adic numbers over different primes");
    }
    BigInt modulus(int k) const { return ipow(BigInt(p_), static_cast<unsigned>(std::max(k, 0))); }
    /// this / p^v as an integer (requires val >= v)
    BigInt lift(int v) const { return is_zero() ? BigInt(0) : unit_ * modulus(val_ - v); }

    static PadicNumber normalized(std::int64_t p, int prec, int v, BigInt n) {
        if (n == 0) return PadicNumber(p, prec);
        while (n % p == 0) {
            n /= p;
            ++v;
        }
        if (v >= prec) return PadicNumber(p, prec);
        return PadicNumber(p, prec, v, mod_floor(n, ipow(BigInt(p), static_cast<unsigned>(prec - v))));
    }
};

inline std::string to_string(const PadicNumber& x) { return x.to_string(); }

/// True iff the representative has valuation below the stated precision.
inline bool is_nonzero_at_precision(const PadicNumber& x) { return x.valuation() < x.precision(); }

struct FrobeniusData {
    std::int64_t p;
    std::int64_t ap;
};

/// Unit root of x^2 - a_p x + p, Newton-lifted from a_p mod p.
inline PadicNumber hensel_unit_root(const FrobeniusData& fd, int prec) {
    if (prec < 1) throw InvalidInput("precision must be positive");
    static_cast<void>(PadicNumber(fd.p, prec));  // validates p
    if (fd.ap % fd.p == 0) throw InvalidInput("curve is supersingular at " + std::to_string(fd.p));
    BigInt P(fd.p), a(fd.ap);
    BigInt x = mod_floor(a, P);
    for (int k = 1; k < prec; k *= 2) {
        int next = std::min(prec, 2 * k);
        BigInt m = ipow(P, static_cast<unsigned>(next));
        BigInt f = x * x - a * x + P;
        BigInt df = 2 * x - a;
        x = mod_floor(x - f * inverse_mod(mod_floor(df, m), m), m);
    }
    BigInt m = ipow(P, static_cast<unsigned>(prec));
    if (mod_floor(x * x - a * x + P, m) != 0) throw IdentityFailure("Hensel lift failed");
    return PadicNumber::from_integer(x, fd.p, prec);
}

/// phi(r) for rationals r, keyed exactly.
class ModularSymbolTable {
public:
    int sign = -1;

    void set(const Rational& r, const Rational& value) {
        auto [it, fresh] = values_.emplace(r, value);
        if (!fresh && it->second != value) throw InvalidInput("conflicting modular symbol values at " + ck::to_string(r));
    }
    Rational operator()(const Rational& r) const {
        auto it = values_.find(r);
        if (it == values_.end()) throw CoverageError("modular symbol table has no value at " + ck::to_string(r));
        return it->second;
    }
    bool contains(const Rational& r) const { return values_.count(r) != 0; }
    std::size_t size() const { return values_.size(); }
    const std::map<Rational, Rational>& values() const { return values_; }

    /// Arguments a/p^n and a/p^(n-1) for 0 <= a < p^n, p not dividing a, that are absent.
    std::vector<Rational> missing(std::int64_t p, int n) const {
        std::vector<Rational> out;
        BigInt pn = ipow(BigInt(p), static_cast<unsigned>(n));
        for (BigInt a = 0; a < pn; ++a) {
            if (a % p == 0) continue;
            for (int k : {n, n - 1}) {
                Rational r = Rational(a) / rpow(Rational(p), k);
                if (!contains(r)) out.push_back(r);
            }
        }
        return out;
    }
    void require_coverage(std::int64_t p, int n) const {
        auto m = missing(p, n);
        if (!m.empty())
            throw CoverageError("modular symbol table misses " + std::to_string(m.size()) + " arguments, first " +
                                ck::to_string(m.front()));
    }

private:
    std::map<Rational, Rational> values_;
};

/// phi(a/p^n) alpha^-n - alpha^-(n+1) phi(a/p^(n-1)).
inline PadicNumber mu(const BigInt& a, std::int64_t p, int n, const ModularSymbolTable& phi, const PadicNumber& alpha) {
    if (a % p == 0) throw InvalidInput("mu needs a prime to p");
    int prec = alpha.precision();
    Rational pn = rpow(Rational(p), n);
    PadicNumber first = PadicNumber::from_rational(phi(Rational(a) / pn), p, prec);
    PadicNumber second = PadicNumber::from_rational(phi(Rational(a) * p / pn), p, prec);
    PadicNumber ainv = alpha.inverse();
    PadicNumber ainv_n = ainv.pow(n);
    return first * ainv_n - ainv_n * ainv * second;
}

/// sum over 0 <= a < p^prec, p not dividing a, of a * mu(a, p, prec, phi, alpha).
inline PadicNumber mazur_stickelberger_sum(const FrobeniusData& fd, const ModularSymbolTable& phi, int prec) {
    PadicNumber alpha = hensel_unit_root(fd, prec);
    phi.require_coverage(fd.p, prec);
    PadicNumber total(fd.p, prec);
    BigInt pn = ipow(BigInt(fd.p), static_cast<unsigned>(prec));
    for (BigInt a = 1; a < pn; ++a) {
        if (a % fd.p == 0) continue;
        total = total + PadicNumber::from_integer(a, fd.p, prec) * mu(a, fd.p, prec, phi, alpha);
    }
    return total;
}

}  // namespace ck
