#pragma once

// Shuffle products by enumerating position subsets; no recursion shared with the library.

#include "ck/shuffle.hpp"

#include <bit>
#include <map>
#include <random>
#include <string>

namespace oracle {

inline ck::ShuffleElem shuffle_by_masks(const ck::Word& u, const ck::Word& v) {
    const std::string& a = u.letters();
    const std::string& b = v.letters();
    const unsigned n = static_cast<unsigned>(a.size() + b.size());
    std::map<ck::Word, ck::Rational> acc;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        if (static_cast<std::size_t>(std::popcount(mask)) != a.size()) continue;
        std::string w;
        std::size_t i = 0, j = 0;
        for (unsigned k = 0; k < n; ++k) w += (mask >> k & 1u) ? a[i++] : b[j++];
        acc[ck::Word(w)] += 1;
    }
    return ck::ShuffleElem(acc);
}

inline ck::ShuffleElem shuffle_by_masks(const ck::ShuffleElem& x, const ck::ShuffleElem& y) {
    ck::ShuffleElem r;
    for (const auto& [u, cu] : x.terms())
        for (const auto& [v, cv] : y.terms()) r += shuffle_by_masks(u, v) * (cu * cv);
    return r;
}

inline ck::Word random_word(std::mt19937& rng, ck::Alphabet a, int max_len) {
    std::uniform_int_distribution<int> len(0, max_len);
    std::uniform_int_distribution<int> le(0, 1), lg(2, 6);
    std::string s;
    int n = len(rng);
    for (int i = 0; i < n; ++i) s += static_cast<char>(a == ck::Alphabet::E ? le(rng) : lg(rng));
    return ck::Word(s);
}

inline ck::ShuffleElem random_elem(std::mt19937& rng, ck::Alphabet a, int max_terms, int max_len) {
    std::uniform_int_distribution<int> nt(1, max_terms), c(-4, 4), d(1, 3);
    ck::ShuffleElem x;
    int n = nt(rng);
    for (int i = 0; i < n; ++i) {
        int k = c(rng);
        if (k == 0) k = 1;
        x += ck::ShuffleElem(random_word(rng, a, max_len), ck::Rational(k, d(rng)));
    }
    return x;
}

}  // namespace oracle
