#pragma once

// Classes of the graded pieces U[k] = U^k/U^{k+1} of the unipotent fundamental
// group of a mixed-elliptic curve.

#include "ck/errors.hpp"
#include "ck/k0ring.hpp"

#include <functional>
#include <map>
#include <vector>

namespace ck {

enum class CurveKind { affine, projective };

struct CurveShape {
    CurveKind kind = CurveKind::affine;
    K0Class h1_class;
    int genus = 0;

    /// Punctured elliptic curve E' = E minus the origin.
    static CurveShape punctured_elliptic() { return {CurveKind::affine, K0Class::M(1, 0), 1}; }
    static CurveShape affine(const K0Class& h1) { return {CurveKind::affine, h1, 0}; }
    static CurveShape projective(int g) { return {CurveKind::projective, K0Class::M(1, 0, g), g}; }
};

struct GradedLieClass {
    std::map<int, K0Class> pieces;

    const K0Class& at(int k) const { return pieces.at(k); }

    /// [U_n] = sum_{k<=n} [U[k]]
    K0Class total(int n) const {
        K0Class s;
        for (const auto& [k, c] : pieces)
            if (k <= n) s += c;
        return s;
    }
    K0Class total() const { return total(pieces.empty() ? 0 : pieces.rbegin()->first); }
};

/// Calls f(n) for every (n_1, ..., n_{k-1}) with sum i*n_i = k, n_i >= 0,
/// in lexicographic order of the tuple.
inline void for_each_lower_partition(int k, const std::function<void(const std::vector<int>&)>& f) {
    if (k < 2) return;
    std::vector<int> n(k, 0);  // n[i] for i in 1..k-1
    std::function<void(int, int)> rec = [&](int i, int remaining) {
        if (i == k) {
            if (remaining == 0) f(n);
            return;
        }
        for (int c = 0; c * i <= remaining; ++c) {
            n[i] = c;
            rec(i + 1, remaining - c * i);
        }
        n[i] = 0;
    };
    rec(1, k);
}

/// pr_{-k} [Sym(U[1] + ... + U[k-1])]
inline K0Class sym_partition_term(const std::map<int, K0Class>& pieces, int k) {
    for (int j = 1; j < k; ++j)
        if (!pieces.count(j)) throw InvalidInput("missing level " + std::to_string(j) + " below " + std::to_string(k));
    std::map<std::pair<int, int>, K0Class> sym_cache;
    auto sym = [&](int j, int n) -> const K0Class& {
        auto key = std::make_pair(j, n);
        auto it = sym_cache.find(key);
        if (it == sym_cache.end()) it = sym_cache.emplace(key, sym_power(pieces.at(j), n)).first;
        return it->second;
    };
    K0Class total;
    for_each_lower_partition(k, [&](const std::vector<int>& n) {
        K0Class term = K0Class::one();
        for (int j = 1; j < k; ++j)
            if (n[j] > 0) term = mul(term, sym(j, n[j]));
        total += term;
    });
    return total;
}

/// Free pro-unipotent case: [U[k]] = [h1]^k - pr_{-k}[Sym(U[<k])].
inline GradedLieClass affine_graded_pieces(const K0Class& h1, int n) {
    if (n < 0) throw InvalidInput("level must be non-negative");
    if (!h1.is_effective()) throw InvalidInput("h1 class must be effective");
    GradedLieClass g;
    K0Class pw = K0Class::one();
    for (int k = 1; k <= n; ++k) {
        pw = mul(pw, h1);
        g.pieces[k] = pw - sym_partition_term(g.pieces, k);
    }
    return g;
}

/// Levels 1..n <= 3 of a smooth projective curve of genus g with h1 = g[M_{1,0}]:
/// the relation removes [M_{0,1}] at level 2 and g[M_{1,1}] at level 3.
inline GradedLieClass projective_graded_pieces(int g, int n) {
    if (g < 2) throw InvalidInput("projective curve needs genus >= 2, got " + std::to_string(g));
    if (n > 3) throw UncoveredRange("projective graded pieces are only known for levels <= 3");
    GradedLieClass out = affine_graded_pieces(K0Class::M(1, 0, g), n);
    if (n >= 2) out.pieces[2] -= K0Class::M(0, 1);
    if (n >= 3) out.pieces[3] -= K0Class::M(1, 1, g);
    return out;
}

/// [U_Q] = [U[1]] + (multiplicity of M_{0,1} in [U[2]]) [M_{0,1}].
inline K0Class quadratic_chabauty_piece(int g) {
    GradedLieClass p = projective_graded_pieces(g, 2);
    return p.at(1) + K0Class::M(0, 1, p.at(2).mult(0, 1));
}

inline GradedLieClass graded_pieces(const CurveShape& shape, int n) {
    if (shape.kind == CurveKind::projective) return projective_graded_pieces(shape.genus, n);
    return affine_graded_pieces(shape.h1_class, n);
}

}  // namespace ck
