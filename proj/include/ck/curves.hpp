#pragma once

// Weierstrass models over Q: coordinate changes, S-integral point search, reduction
// modulo primes, residue discs, and the nodal classification at multiplicative primes.

#include "ck/rational.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <compare>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ck {

struct RationalPoint {
    bool infinity = false;
    Rational x = 0, y = 0;

    static RationalPoint at_infinity() { return {true, 0, 0}; }
    static RationalPoint affine(Rational x, Rational y) { return {false, std::move(x), std::move(y)}; }

    bool operator==(const RationalPoint& o) const {
        return infinity == o.infinity && (infinity || (x == o.x && y == o.y));
    }
    /// Infinity first, then by (x, y).
    bool operator<(const RationalPoint& o) const {
        if (infinity != o.infinity) return infinity;
        if (infinity) return false;
        if (x != o.x) return x < o.x;
        return y < o.y;
    }
};

inline std::string to_string(const RationalPoint& p) {
    if (p.infinity) return "O";
    return "(" + to_string(p.x) + "," + to_string(p.y) + ")";
}

/// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 with nonzero discriminant.
class WeierstrassModel {
public:
    WeierstrassModel(Rational a1, Rational a2, Rational a3, Rational a4, Rational a6)
        : a_{std::move(a1), std::move(a2), std::move(a3), std::move(a4), std::move(a6)} {
        if (discriminant() == 0) throw InvalidInput("singular Weierstrass equation: " + to_string());
    }
    explicit WeierstrassModel(const std::array<Rational, 5>& a) : WeierstrassModel(a[0], a[1], a[2], a[3], a[4]) {}

    const Rational& a1() const { return a_[0]; }
    const Rational& a2() const { return a_[1]; }
    const Rational& a3() const { return a_[2]; }
    const Rational& a4() const { return a_[3]; }
    const Rational& a6() const { return a_[4]; }
    const std::array<Rational, 5>& ainvs() const { return a_; }

    Rational b2() const { return a1() * a1() + 4 * a2(); }
    Rational b4() const { return 2 * a4() + a1() * a3(); }
    Rational b6() const { return a3() * a3() + 4 * a6(); }
    Rational b8() const {
        return a1() * a1() * a6() + 4 * a2() * a6() - a1() * a3() * a4() + a2() * a3() * a3() - a4() * a4();
    }
    Rational c4() const { return b2() * b2() - 24 * b4(); }
    Rational c6() const { return -b2() * b2() * b2() + 36 * b2() * b4() - 216 * b6(); }
    Rational discriminant() const {
        Rational B2 = b2(), B4 = b4(), B6 = b6(), B8 = b8();
        return -B2 * B2 * B8 - 8 * B4 * B4 * B4 - 27 * B6 * B6 + 9 * B2 * B4 * B6;
    }
    Rational j_invariant() const {
        Rational c = c4();
        return c * c * c / discriminant();
    }

    /// lhs - rhs of the equation at (x, y).
    Rational evaluate(const Rational& x, const Rational& y) const {
        return y * y + a1() * x * y + a3() * y - x * x * x - a2() * x * x - a4() * x - a6();
    }
    bool contains(const RationalPoint& p) const { return p.infinity || evaluate(p.x, p.y) == 0; }

    bool is_integral() const {
        return std::all_of(a_.begin(), a_.end(), [](const Rational& a) { return ck::is_integer(a); });
    }
    bool is_integral_at(const BigInt& p) const {
        return std::all_of(a_.begin(), a_.end(), [&](const Rational& a) { return denominator_of(a) % p != 0; });
    }

    bool operator==(const WeierstrassModel& o) const { return a_ == o.a_; }

    /// "[a1,a2,a3,a4,a6]"
    std::string to_string() const {
        std::string s = "[";
        for (std::size_t i = 0; i < 5; ++i) s += (i ? "," : "") + ck::to_string(a_[i]);
        return s + "]";
    }

private:
    std::array<Rational, 5> a_;
};

/// New coordinates from old: x = u^2 x' + r, y = u^3 y' + s u^2 x' + t.
struct ModelTransform {
    Rational u = 1, r = 0, s = 0, t = 0;

    static ModelTransform identity() { return {}; }

    ModelTransform inverse() const {
        if (u == 0) throw InvalidInput("transform with u = 0");
        Rational ui = Rational(1) / u;
        return {ui, -r * ui * ui, -s * ui, (r * s - t) * ui * ui * ui};
    }
    /// this, then next.
    ModelTransform then(const ModelTransform& next) const {
        const auto& [u2, r2, s2, t2] = next;
        return {u * u2, u2 * u2 * r + r2, u2 * s + s2, u2 * u2 * u2 * t + s2 * u2 * u2 * r + t2};
    }
    bool operator==(const ModelTransform&) const = default;
};

inline ModelTransform invert(const ModelTransform& t) { return t.inverse(); }
inline ModelTransform compose(const ModelTransform& first, const ModelTransform& second) { return first.then(second); }

inline RationalPoint map_point(const ModelTransform& t, const RationalPoint& p) {
    if (t.u == 0) throw InvalidInput("transform with u = 0");
    if (p.infinity) return p;
    Rational u2 = t.u * t.u;
    return RationalPoint::affine(u2 * p.x + t.r, u2 * t.u * p.y + t.s * u2 * p.x + t.t);
}

/// The model satisfied by map_point(t, P) for P on m.
inline WeierstrassModel apply_transform(const WeierstrassModel& m, const ModelTransform& t) {
    // old = U^2 new + R etc. with (U,R,S,T) = t^{-1}
    const auto [u, r, s, t0] = t.inverse();
    const Rational &a1 = m.a1(), &a2 = m.a2(), &a3 = m.a3(), &a4 = m.a4(), &a6 = m.a6();
    Rational u2 = u * u, u3 = u2 * u;
    return WeierstrassModel((a1 + 2 * s) / u,
                            (a2 - s * a1 + 3 * r - s * s) / u2,
                            (a3 + r * a1 + 2 * t0) / u3,
                            (a4 - s * a3 + 2 * r * a2 - (t0 + r * s) * a1 + 3 * r * r - 2 * s * t0) / (u2 * u2),
                            (a6 + r * a4 + r * r * a2 + r * r * r - t0 * a3 - t0 * t0 - r * t0 * a1) / (u3 * u3));
}

// ---------------------------------------------------------------------------
// Point search

struct PointSearchBound {
    std::int64_t numerator = 10'000'000;  ///< |numerator of x|
    std::int64_t denominator = 1024;      ///< denominator of x
};

namespace detail {

inline bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::int64_t to_i64(const Rational& q, const char* what) {
    if (!is_integer(q)) throw InvalidInput(std::string(what) + " is not an integer");
    const BigInt& n = numerator_of(q);
    if (n > BigInt(INT64_MAX / 4) || n < -BigInt(INT64_MAX / 4)) throw InvalidInput(std::string(what) + " too large");
    return static_cast<std::int64_t>(n);
}

inline BigInt from_i128(__int128 v) {
    bool neg = v < 0;
    unsigned __int128 m = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
    BigInt r = static_cast<std::uint64_t>(m >> 64);
    r <<= 64;
    r += static_cast<std::uint64_t>(m);
    return neg ? BigInt(-r) : r;
}

/// floor(sqrt(v)) if v is a perfect square.
inline std::optional<__int128> exact_sqrt(__int128 v) {
    if (v < 0) return std::nullopt;
    static const auto residues = [] {
        std::array<std::vector<bool>, 4> t;
        const int mods[4] = {64, 63, 65, 11};
        for (int k = 0; k < 4; ++k) {
            t[k].assign(mods[k], false);
            for (int i = 0; i < mods[k]; ++i) t[k][(i * i) % mods[k]] = true;
        }
        return t;
    }();
    if (!residues[0][static_cast<int>(v % 64)] || !residues[1][static_cast<int>(v % 63)] ||
        !residues[2][static_cast<int>(v % 65)] || !residues[3][static_cast<int>(v % 11)])
        return std::nullopt;
    __int128 r = static_cast<__int128>(std::sqrt(static_cast<long double>(v)));
    while (r > 0 && r * r > v) --r;
    while ((r + 1) * (r + 1) <= v) ++r;
    if (r * r != v) return std::nullopt;
    return r;
}

inline bool is_s_unit(BigInt n, const std::vector<std::int64_t>& S) {
    if (n < 0) n = -n;
    for (auto p : S)
        while (n % p == 0) n /= p;
    return n == 1;
}

}  // namespace detail

/// Affine points with x, y in Z[1/S] on an integral model, x = n/d^2 with |n| and d^2
/// within the bound. Sorted by (x, y). Known points only: no completeness claim.
inline std::vector<RationalPoint> search_S_integral_points(const WeierstrassModel& m, std::vector<std::int64_t> S,
                                                           PointSearchBound bound = {}) {
    if (!m.is_integral()) throw InvalidInput("point search needs an integral model");
    for (auto p : S)
        if (!detail::is_prime(p)) throw InvalidInput("S contains a non-prime: " + std::to_string(p));
    if (bound.numerator < 0 || bound.denominator < 1) throw InvalidInput("bad height bound");
    std::sort(S.begin(), S.end());
    S.erase(std::unique(S.begin(), S.end()), S.end());
    const std::int64_t b2 = detail::to_i64(m.b2(), "b2"), b4 = detail::to_i64(m.b4(), "b4"),
                       b6 = detail::to_i64(m.b6(), "b6");

    std::vector<std::int64_t> dens{1};
    for (std::size_t i = 0; i < dens.size(); ++i)
        for (auto p : S) {
            std::int64_t d = dens[i] * p;
            if (d * d <= bound.denominator && std::find(dens.begin(), dens.end(), d) == dens.end()) dens.push_back(d);
        }
    std::sort(dens.begin(), dens.end());

    std::vector<RationalPoint> out;
    for (std::int64_t d : dens) {
        const __int128 d2 = d * d, d4 = d2 * d2, d6 = d4 * d2;
        const __int128 c2 = b2 * d2, c1 = 2 * b4 * d4, c0 = b6 * d6;
        for (std::int64_t n = -bound.numerator; n <= bound.numerator; ++n) {
            if (d > 1 && std::gcd(n, d) != 1) continue;
            const __int128 N = n;
            // (2y + a1 x + a3)^2 d^6 = 4n^3 + b2 n^2 d^2 + 2 b4 n d^4 + b6 d^6
            __int128 R = ((4 * N + c2) * N + c1) * N + c0;
            auto root = detail::exact_sqrt(R);
            if (!root) continue;
            Rational x(n, d * d);
            BigInt sq = detail::from_i128(*root);
            for (int sign : {-1, 1}) {
                if (sign == 1 && sq == 0) break;
                Rational y = (Rational(sign * sq, BigInt(d) * d * d) - m.a1() * x - m.a3()) / 2;
                if (!detail::is_s_unit(denominator_of(y), S)) continue;
                if (m.evaluate(x, y) != 0) throw IdentityFailure("point search produced an off-curve point");
                out.push_back(RationalPoint::affine(x, y));
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Reduction modulo a prime

using ResiduePoint = std::pair<std::int64_t, std::int64_t>;

namespace detail {

struct ReducedModel {
    std::int64_t p;
    std::array<std::int64_t, 5> a;  // a1 a2 a3 a4 a6 mod p

    std::int64_t md(__int128 v) const {
        __int128 r = v % p;
        return static_cast<std::int64_t>(r < 0 ? r + p : r);
    }
    std::int64_t F(std::int64_t x, std::int64_t y) const {
        __int128 X = x, Y = y;
        return md(Y * Y + a[0] * X * Y + a[2] * Y - md(X * X) * X - a[1] * md(X * X) - a[3] * X - a[4]);
    }
    std::int64_t Fx(std::int64_t x, std::int64_t y) const {
        __int128 X = x;
        return md(a[0] * static_cast<__int128>(y) - 3 * md(X * X) - 2 * a[1] * X - a[3]);
    }
    std::int64_t Fy(std::int64_t x, std::int64_t y) const { return md(2 * static_cast<__int128>(y) + a[0] * static_cast<__int128>(x) + a[2]); }
};

inline std::int64_t prime_of(std::int64_t p) {
    if (!is_prime(p)) throw InvalidInput("not a prime: " + std::to_string(p));
    if (p > 1'000'000) throw UncoveredRange("residue-field enumeration limited to p <= 10^6");
    return p;
}

inline ReducedModel reduce_model(const WeierstrassModel& m, std::int64_t p) {
    BigInt P(p);
    if (!m.is_integral_at(P)) throw InvalidInput("model is not integral at " + std::to_string(p));
    ReducedModel r{p, {}};
    for (std::size_t i = 0; i < 5; ++i) r.a[i] = static_cast<std::int64_t>(rational_mod(m.ainvs()[i], P));
    return r;
}

/// All y in F_p with F(x, y) = 0, ascending.
inline std::vector<std::int64_t> fibre_over(const ReducedModel& r, std::int64_t x, const std::vector<std::int64_t>& sqrt_table) {
    std::vector<std::int64_t> ys;
    const std::int64_t p = r.p;
    if (p == 2) {
        for (std::int64_t y = 0; y < 2; ++y)
            if (r.F(x, y) == 0) ys.push_back(y);
        return ys;
    }
    // (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6
    std::int64_t c = r.md(static_cast<__int128>(r.a[0]) * x + r.a[2]);
    std::int64_t disc = r.md(static_cast<__int128>(c) * c + 4 * static_cast<__int128>(r.md(static_cast<__int128>(x) * x)) * x +
                             4 * static_cast<__int128>(r.a[1]) * r.md(static_cast<__int128>(x) * x) + 4 * static_cast<__int128>(r.a[3]) * x +
                             4 * static_cast<__int128>(r.a[4]));
    std::int64_t s = sqrt_table[disc];
    if (s < 0) return ys;
    std::int64_t inv2 = (p + 1) / 2;
    for (std::int64_t root : {s, r.md(-static_cast<__int128>(s))}) {
        std::int64_t y = r.md(static_cast<__int128>(r.md(root - c)) * inv2);
        if (std::find(ys.begin(), ys.end(), y) == ys.end()) ys.push_back(y);
    }
    std::sort(ys.begin(), ys.end());
    return ys;
}

inline std::vector<std::int64_t> sqrt_table(std::int64_t p) {
    std::vector<std::int64_t> t(static_cast<std::size_t>(p), -1);
    for (std::int64_t y = 0; y < p; ++y) {
        auto v = static_cast<std::size_t>((static_cast<__int128>(y) * y) % p);
        if (t[v] < 0) t[v] = y;
    }
    return t;
}

inline int valuation_at(const Rational& q, std::int64_t p) { return valuation(q, BigInt(p)); }

}  // namespace detail

/// Affine points of the reduction of m modulo p (singular points included), sorted.
inline std::vector<ResiduePoint> reduced_affine_points(const WeierstrassModel& m, std::int64_t p) {
    auto r = detail::reduce_model(m, detail::prime_of(p));
    auto table = detail::sqrt_table(p);
    std::vector<ResiduePoint> pts;
    for (std::int64_t x = 0; x < p; ++x)
        for (auto y : detail::fibre_over(r, x, table)) pts.emplace_back(x, y);
    return pts;
}

/// Reduction of a p-integral affine point; InvalidInput otherwise.
inline ResiduePoint reduce_point(const RationalPoint& pt, std::int64_t p) {
    if (pt.infinity) throw InvalidInput("the point at infinity is not affine");
    BigInt P(p);
    if (denominator_of(pt.x) % P == 0 || denominator_of(pt.y) % P == 0)
        throw InvalidInput("point " + to_string(pt) + " is not integral at " + std::to_string(p));
    return {static_cast<std::int64_t>(rational_mod(pt.x, P)), static_cast<std::int64_t>(rational_mod(pt.y, P))};
}

struct ResidueDisc {
    std::int64_t p;
    ResiduePoint centre;
    std::vector<std::size_t> members;  ///< indices into the input point list
};

/// One disc per affine F_p-point of the good reduction of m, in (x, y) order.
inline std::vector<ResidueDisc> residue_disc_partition(const WeierstrassModel& m, std::int64_t p,
                                                       const std::vector<RationalPoint>& points) {
    detail::prime_of(p);
    if (!m.is_integral_at(BigInt(p)) || detail::valuation_at(m.discriminant(), p) != 0)
        throw InvalidInput("model does not have good reduction at " + std::to_string(p));
    std::vector<ResidueDisc> discs;
    for (const auto& c : reduced_affine_points(m, p)) discs.push_back({p, c, {}});
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!m.contains(points[i])) throw InvalidInput("point " + to_string(points[i]) + " is not on the model");
        auto c = reduce_point(points[i], p);
        auto it = std::find_if(discs.begin(), discs.end(), [&](const ResidueDisc& d) { return d.centre == c; });
        if (it == discs.end()) throw IdentityFailure("reduced point missing from the reduced curve");
        it->members.push_back(i);
    }
    return discs;
}

// ---------------------------------------------------------------------------
// Bad primes

enum class ReductionKind { good, multiplicative, additive };

inline ReductionKind reduction_type(const WeierstrassModel& m, std::int64_t v) {
    detail::prime_of(v);
    if (!m.is_integral_at(BigInt(v))) throw InvalidInput("model is not integral at " + std::to_string(v));
    if (detail::valuation_at(m.discriminant(), v) == 0) return ReductionKind::good;
    return denominator_of(m.c4()) % v != 0 && numerator_of(m.c4()) % v != 0 ? ReductionKind::multiplicative
                                                                           : ReductionKind::additive;
}

/// The unique singular point of the reduction at a bad prime.
inline ResiduePoint singular_point(const WeierstrassModel& m, std::int64_t v) {
    if (reduction_type(m, v) == ReductionKind::good) throw InvalidInput("good reduction at " + std::to_string(v));
    auto r = detail::reduce_model(m, v);
    std::vector<ResiduePoint> found;
    for (std::int64_t x = 0; x < v; ++x) {
        std::vector<std::int64_t> ys;
        if (v == 2) ys = {0, 1};
        else ys = {r.md(static_cast<__int128>(r.md(-static_cast<__int128>(r.a[0]) * x - r.a[2])) * ((v + 1) / 2))};
        for (auto y : ys)
            if (r.F(x, y) == 0 && r.Fx(x, y) == 0 && r.Fy(x, y) == 0) found.emplace_back(x, y);
    }
    if (found.size() != 1) throw IdentityFailure("expected exactly one singular point mod " + std::to_string(v));
    return found.front();
}

struct FiberClass {
    std::string label;                 ///< "alpha1" smooth locus, "alpha2" exceptional, "*" single class
    std::vector<std::size_t> members;  ///< indices into the input point list
};

struct FiberPartition {
    std::int64_t v;
    ReductionKind type;
    std::optional<ResiduePoint> node;
    std::vector<FiberClass> classes;
};

/// Splits points by whether they reduce to the node. One class at good primes and when
/// v(Delta) = 1 (the model is then regular); additive primes are rejected.
inline FiberPartition classify_at_bad_prime(const WeierstrassModel& m, std::int64_t v,
                                            const std::vector<RationalPoint>& points) {
    auto type = reduction_type(m, v);
    if (type == ReductionKind::additive) throw InvalidInput("additive reduction at " + std::to_string(v));
    std::vector<std::size_t> all(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!m.contains(points[i])) throw InvalidInput("point " + to_string(points[i]) + " is not on the model");
        all[i] = i;
    }
    if (type == ReductionKind::good) return {v, type, std::nullopt, {{"*", all}}};
    auto node = singular_point(m, v);
    std::vector<std::size_t> smooth, exceptional;
    BigInt V(v);
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto& pt = points[i];
        // points that are not v-integral reduce to the point at infinity
        bool integral = !pt.infinity && denominator_of(pt.x) % V != 0 && denominator_of(pt.y) % V != 0;
        if (integral && reduce_point(pt, v) == node) exceptional.push_back(i);
        else smooth.push_back(i);
    }
    if (detail::valuation_at(m.discriminant(), v) == 1) {
        if (!exceptional.empty()) throw IdentityFailure("integral point through the node of a regular model");
        return {v, type, node, {{"*", all}}};
    }
    return {v, type, node, {{"alpha1", smooth}, {"alpha2", exceptional}}};
}

/// Whether the tangent slopes at the node are rational over F_v.
inline bool is_split_multiplicative(const WeierstrassModel& m, std::int64_t v) {
    auto type = reduction_type(m, v);
    if (type != ReductionKind::multiplicative)
        throw InvalidInput(std::string(type == ReductionKind::good ? "good" : "additive") + " reduction at " +
                           std::to_string(v));
    auto r = detail::reduce_model(m, v);
    auto [x0, y0] = singular_point(m, v);
    // tangent cone Y^2 + a1 XY - (3 x0 + a2) X^2
    for (std::int64_t T = 0; T < v; ++T) {
        __int128 t = T;
        if (r.md(t * t + r.a[0] * t - 3 * static_cast<__int128>(x0) - r.a[1]) == 0) return true;
    }
    return false;
}

struct DeltaS {
    int value = 0;    ///< split multiplicative primes in S
    int skipped = 0;  ///< members of S with good or additive reduction
};

inline DeltaS delta_S(const WeierstrassModel& m, const std::vector<std::int64_t>& S) {
    DeltaS d;
    for (auto v : S) {
        if (reduction_type(m, v) != ReductionKind::multiplicative) {
            ++d.skipped;
            continue;
        }
        if (is_split_multiplicative(m, v)) ++d.value;
    }
    return d;
}

}  // namespace ck
