#pragma once

// Small dense linear algebra: exact rational row reduction (with a right-hand side of
// any additive type), modular nullspaces over a 61-bit prime, rational reconstruction.

#include "ck/rational.hpp"

#include <cstdint>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

namespace ck {

using RationalMatrix = std::vector<std::vector<Rational>>;

/// Reduces [A | b] to reduced row echelon form in place; rows beyond the rank are zero
/// in A (their b entries are the consistency conditions). Returns pivot columns in order.
/// Rhs needs operator-=(Rhs) and operator*(Rational).
template <class Rhs>
std::vector<std::size_t> rref_with_rhs(RationalMatrix& A, std::vector<Rhs>& b) {
    std::vector<std::size_t> pivots;
    if (A.empty()) return pivots;
    const std::size_t rows = A.size(), cols = A[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && A[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(A[piv], A[r]);
        std::swap(b[piv], b[r]);
        Rational inv = Rational(1) / A[r][c];
        for (std::size_t k = c; k < cols; ++k) A[r][k] *= inv;
        b[r] = b[r] * inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || A[i][c] == 0) continue;
            Rational f = A[i][c];
            for (std::size_t k = c; k < cols; ++k)
                if (A[r][k] != 0) A[i][k] -= f * A[r][k];
            b[i] -= b[r] * f;
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

/// Basis of {x : A x = 0} over Q, one vector per free column.
inline std::vector<std::vector<Rational>> nullspace(RationalMatrix A, std::size_t cols) {
    struct Zero {
        Zero operator*(const Rational&) const { return {}; }
        Zero& operator-=(const Zero&) { return *this; }
    };
    std::vector<Zero> b(A.size());
    auto piv = rref_with_rhs(A, b);
    std::vector<bool> is_piv(cols, false);
    for (auto c : piv) is_piv[c] = true;
    std::vector<std::vector<Rational>> basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_piv[f]) continue;
        std::vector<Rational> v(cols, 0);
        v[f] = 1;
        for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -A[i][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

// Arithmetic modulo the Mersenne prime 2^61 - 1.

inline constexpr std::uint64_t kModP = (std::uint64_t{1} << 61) - 1;

inline std::uint64_t mod_mul(std::uint64_t a, std::uint64_t b) {
    unsigned __int128 z = static_cast<unsigned __int128>(a) * b;
    std::uint64_t lo = static_cast<std::uint64_t>(z & kModP);
    std::uint64_t hi = static_cast<std::uint64_t>(z >> 61);
    std::uint64_t s = lo + hi;
    return s >= kModP ? s - kModP : s;
}
inline std::uint64_t mod_add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t s = a + b;
    return s >= kModP ? s - kModP : s;
}
inline std::uint64_t mod_sub(std::uint64_t a, std::uint64_t b) { return a >= b ? a - b : a + kModP - b; }
inline std::uint64_t mod_pow(std::uint64_t a, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e) {
        if (e & 1) r = mod_mul(r, a);
        a = mod_mul(a, a);
        e >>= 1;
    }
    return r;
}
inline std::uint64_t mod_inv(std::uint64_t a) { return mod_pow(a, kModP - 2); }
inline std::uint64_t mod_from(std::int64_t v) {
    std::int64_t r = v % static_cast<std::int64_t>(kModP);
    return static_cast<std::uint64_t>(r < 0 ? r + static_cast<std::int64_t>(kModP) : r);
}
inline std::uint64_t mod_from(const Rational& q) {
    BigInt m(kModP);
    BigInt n = rational_mod(q, m);
    return static_cast<std::uint64_t>(n);
}

/// Nullspace basis of a dense matrix over F_p, normalized with a 1 in each free column.
inline std::vector<std::vector<std::uint64_t>> nullspace_mod_p(std::vector<std::vector<std::uint64_t>> A,
                                                               std::size_t cols) {
    const std::size_t rows = A.size();
    std::vector<std::size_t> piv;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && A[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(A[p], A[r]);
        std::uint64_t inv = mod_inv(A[r][c]);
        for (std::size_t k = c; k < cols; ++k) A[r][k] = mod_mul(A[r][k], inv);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || A[i][c] == 0) continue;
            std::uint64_t f = A[i][c];
            for (std::size_t k = c; k < cols; ++k)
                if (A[r][k]) A[i][k] = mod_sub(A[i][k], mod_mul(f, A[r][k]));
        }
        piv.push_back(c);
        ++r;
    }
    std::vector<bool> is_piv(cols, false);
    for (auto c : piv) is_piv[c] = true;
    std::vector<std::vector<std::uint64_t>> basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_piv[f]) continue;
        std::vector<std::uint64_t> v(cols, 0);
        v[f] = 1;
        for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = mod_sub(0, A[i][f]);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Wang's rational reconstruction: n/d = a mod p with |n|, d <= sqrt(p/2).
inline std::optional<Rational> rational_reconstruct(std::uint64_t a) {
    using I = __int128;
    const I p = static_cast<I>(kModP);
    I bound = 1;
    while ((bound + 1) * (bound + 1) * 2 <= p) bound *= 2;
    // refine to floor(sqrt(p/2))
    I lo = bound, hi = bound * 2;
    while (lo < hi) {
        I mid = (lo + hi + 1) / 2;
        if (mid * mid * 2 <= p) lo = mid;
        else hi = mid - 1;
    }
    bound = lo;
    I r0 = p, r1 = static_cast<I>(a), t0 = 0, t1 = 1;
    while (r1 > bound) {
        I q = r0 / r1;
        I tmp = r0 - q * r1;
        r0 = r1;
        r1 = tmp;
        tmp = t0 - q * t1;
        t0 = t1;
        t1 = tmp;
    }
    if (t1 == 0) return std::nullopt;
    I n = r1, d = t1;
    if (d < 0) {
        d = -d;
        n = -n;
    }
    if (d > bound) return std::nullopt;
    I g = std::gcd(static_cast<long long>(n < 0 ? -n : n), static_cast<long long>(d));
    if (g != 1) return std::nullopt;
    return Rational(BigInt(static_cast<long long>(n)), BigInt(static_cast<long long>(d)));
}

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), std::size_t{0}); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

}  // namespace ck
