#pragma once

// Dimensions of global and local Bloch-Kato Selmer groups of the motives
// M_{a,b}, and the functionals d, l, c = l - d (and S-variants) on K0.

#include "ck/errors.hpp"
#include "ck/k0ring.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace ck {

enum class FieldKind { rationals, imaginary_quadratic };

struct FieldProfile {
    FieldKind kind = FieldKind::rationals;
    bool split_at_p = true;    // imaginary quadratic: p splits, so k_p = Q_p
    bool curve_over_Q = true;  // imaginary quadratic: E is the base change of a curve over Q

    static FieldProfile rationals() { return {}; }
    static FieldProfile imaginary_quadratic(bool split = true) { return {FieldKind::imaginary_quadratic, split, true}; }
};

struct SelmerContext {
    int rank_r = 0;
    int s_size = 0;
    int delta_S = 0;  // places of S with split multiplicative reduction
    FieldProfile field;
    bool s_bad_places = false;  // S contains a place of bad reduction
    bool s_meets_p = false;     // S contains a place above p

    void validate() const {
        if (rank_r < 0) throw InvalidInput("rank must be non-negative");
        if (s_size < 0) throw InvalidInput("|S| must be non-negative");
        if (delta_S < 0 || delta_S > s_size) throw InvalidInput("need 0 <= delta_S <= |S|");
        if (delta_S > 0 && !s_bad_places)
            throw InvalidInput("split multiplicative places in S are places of bad reduction");
    }
};

namespace detail {

inline std::string ab(int a, int b) { return "(a,b) = (" + std::to_string(a) + "," + std::to_string(b) + ")"; }

inline void require_field(const FieldProfile& f) {
    if (f.kind == FieldKind::imaginary_quadratic && !f.curve_over_Q)
        throw UncoveredRange("imaginary quadratic formulas need E defined over Q");
}

}  // namespace detail

/// h^1_f(G_k; M_{a,b}) for b >= 0, weight <= -2, (a,b) != (0,1).
inline int d_global(int a, int b, const FieldProfile& field) {
    detail::require_field(field);
    if (a < 0) throw InvalidInput("a must be non-negative");
    if (b < 0) throw UncoveredRange("no global formula for negative twist " + detail::ab(a, b));
    if (a == 1 && b == 0) throw UncoveredRange("d_{1,0} is the Selmer rank; supply it through the context");
    if (a == 0 && b == 1) throw UncoveredRange("d_{0,1} depends on S; use d_S " + detail::ab(a, b));
    if (-a - 2 * b > -2) throw UncoveredRange("no global formula in weight >= -1 for " + detail::ab(a, b));
    if (field.kind == FieldKind::imaginary_quadratic) return b == 0 ? a - 1 : a + 1;
    if (b == 0) return a % 2 ? (a - 1) / 2 : a / 2 - 1;
    if (a % 2) return (a + 1) / 2;
    return b % 2 == 0 ? a / 2 : a / 2 + 1;
}

/// As above, with d_{1,0} = rank_r.
inline int d_global(int a, int b, const SelmerContext& ctx) {
    if (a == 1 && b == 0) {
        detail::require_field(ctx.field);
        return ctx.rank_r;
    }
    return d_global(a, b, ctx.field);
}

/// h^1_f(G_p; M_{a,b}) at a place of good reduction with completion Q_p.
inline int l_local(int a, int b, const FieldProfile& field = FieldProfile::rationals()) {
    if (field.kind == FieldKind::imaginary_quadratic && !field.split_at_p)
        throw UncoveredRange("local formula needs k_p = Q_p (p split)");
    if (a < 0) throw InvalidInput("a must be non-negative");
    if (b < 0) throw UncoveredRange("no local formula for negative twist " + detail::ab(a, b));
    if (-a - 2 * b >= 0) throw UncoveredRange("local formula needs negative weight, got " + detail::ab(a, b));
    return b == 0 ? a : a + 1;
}

/// h^1_{f,S}(G_k; M_{a,b}) for S avoiding p.
inline int d_S(int a, int b, const SelmerContext& ctx) {
    ctx.validate();
    detail::require_field(ctx.field);
    if (ctx.s_meets_p) throw UncoveredRange("S must avoid the places above p");
    if (a < 0) throw InvalidInput("a must be non-negative");
    if (b < 0) throw UncoveredRange("no S-integral formula for negative twist " + detail::ab(a, b));
    const bool q = ctx.field.kind == FieldKind::rationals;
    if (a == 1 && b == 0) return ctx.rank_r;
    if (ctx.s_size == 0) {
        if (a == 0 && b == 1) return 0;
        return d_global(a, b, ctx);
    }
    if (b >= 2) return d_global(a, b, ctx);
    if (a == 0 && b == 1) {
        if (!q) throw UncoveredRange("d^S_{0,1} is only known over Q");
        return ctx.s_size;
    }
    if (a == 1 && b == 1) {
        if (!q) throw UncoveredRange("d^S_{1,1} is only known over Q");
        return 1 + ctx.delta_S;
    }
    if (a == 2 && b == 0) throw UncoveredRange("d^S_{2,0} may depend on S " + detail::ab(a, b));
    if (ctx.s_bad_places)
        throw UncoveredRange("S contains bad places; d^S unknown for " + detail::ab(a, b));
    return d_global(a, b, ctx);
}

enum class ReductionType {
    good,
    potentially_good,
    split_multiplicative,
    nonsplit_multiplicative,
    potentially_multiplicative,
};

struct PlaceData {
    ReductionType reduction = ReductionType::good;
    bool over_p = false;
};

/// d^{S+v}_{a,b} - d^S_{a,b} in the cases where it is determined.
inline int d_change_under_place(int a, int b, const PlaceData& v) {
    if (v.over_p) throw UncoveredRange("the added place must not lie above p");
    if (a < 0) throw InvalidInput("a must be non-negative");
    if (b < 0 || -a - 2 * b >= 0) throw UncoveredRange("no change formula for " + detail::ab(a, b));
    if (a == 1 && b == 0) return 0;
    if (b >= 2) return 0;
    if (a == 0 && b == 1) return 1;
    if (a == 1 && b == 1) return v.reduction == ReductionType::split_multiplicative ? 1 : 0;
    const bool pot_good = v.reduction == ReductionType::good || v.reduction == ReductionType::potentially_good;
    if (pot_good && -a - 2 * b != -2) return 0;
    throw UncoveredRange("change of d^S under this place is not determined for " + detail::ab(a, b));
}

// Functionals on K0 classes.

inline std::int64_t d_functional(const K0Class& x, const SelmerContext& ctx) {
    std::int64_t s = 0;
    for (const auto& [m, c] : x.terms()) {
        int d = (m.a == 0 && m.b == 1) ? (detail::require_field(ctx.field), 0) : d_global(m.a, m.b, ctx);
        s += c * d;
    }
    return s;
}

inline std::int64_t l_functional(const K0Class& x, const SelmerContext& ctx) {
    std::int64_t s = 0;
    for (const auto& [m, c] : x.terms()) s += c * l_local(m.a, m.b, ctx.field);
    return s;
}

inline std::int64_t dS_functional(const K0Class& x, const SelmerContext& ctx) {
    std::int64_t s = 0;
    for (const auto& [m, c] : x.terms()) s += c * d_S(m.a, m.b, ctx);
    return s;
}

inline std::int64_t c_functional(const K0Class& x, const SelmerContext& ctx) {
    return l_functional(x, ctx) - d_functional(x, ctx);
}

inline std::int64_t cS_functional(const K0Class& x, const SelmerContext& ctx) {
    return l_functional(x, ctx) - dS_functional(x, ctx);
}

struct DimRow {
    IrrClass term;
    std::int64_t mult = 0;
    int d = 0;
    int l = 0;
    int c = 0;
};

struct DimReport {
    std::vector<DimRow> rows;  // sorted by (a,b)
    std::int64_t d_total = 0;
    std::int64_t l_total = 0;
    std::int64_t c_total = 0;
    bool finite = false;
};

/// Per-term table with totals. use_S selects d^S instead of d.
inline DimReport dims_report(const K0Class& x, const SelmerContext& ctx, bool use_S) {
    DimReport r;
    for (const auto& [m, c] : x.terms()) {
        DimRow row;
        row.term = m;
        row.mult = c;
        row.d = use_S ? d_S(m.a, m.b, ctx) : static_cast<int>(d_functional(K0Class(m), ctx));
        row.l = l_local(m.a, m.b, ctx.field);
        row.c = row.l - row.d;
        r.d_total += c * row.d;
        r.l_total += c * row.l;
        r.c_total += c * row.c;
        r.rows.push_back(row);
    }
    r.finite = r.c_total > 0;
    return r;
}

struct FinitenessVerdict {
    bool finite = false;
    std::int64_t margin = 0;
};

/// c(x) > 0 (or c^S(x) > 0) predicts a finite Chabauty-Kim locus at this level.
inline FinitenessVerdict check_finiteness(const K0Class& x, const SelmerContext& ctx, bool use_S) {
    std::int64_t c = use_S ? cS_functional(x, ctx) : c_functional(x, ctx);
    return {c > 0, c};
}

}  // namespace ck
