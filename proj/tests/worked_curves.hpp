#pragma once

// The two worked curves, their searched point lists and the short-model images.

#include "ck/curves.hpp"

#include <algorithm>
#include <vector>

namespace worked {

using namespace ck;

inline RationalPoint P(const char* x, const char* y) { return RationalPoint::affine(parse_rational(x), parse_rational(y)); }

inline const WeierstrassModel& e128() {
    static const WeierstrassModel m(0, 1, 0, -9, 7);
    return m;
}
inline const WeierstrassModel& e102() {
    static const WeierstrassModel m(1, 1, 0, -2, 0);
    return m;
}
inline const ModelTransform t128{6, 12, 0, 0};
inline const ModelTransform t102{6, 15, 3, 0};

inline const std::vector<RationalPoint> pts128 = {P("-3", "-4"),   P("-3", "4"),    P("-1", "-4"), P("-1", "4"), P("1", "0"),
                                           P("2", "-1"),    P("2", "1"),     P("3", "-4"),  P("3", "4"),  P("29/4", "-155/8"),
                                           P("29/4", "155/8"), P("19", "-84"), P("19", "84")};
inline const std::vector<RationalPoint> short128 = {P("-96", "-864"), P("-96", "864"),   P("-24", "-864"), P("-24", "864"),
                                             P("48", "0"),     P("84", "-216"),   P("84", "216"),   P("120", "-864"),
                                             P("120", "864"),  P("273", "-4185"), P("273", "4185"), P("696", "-18144"),
                                             P("696", "18144")};

inline const std::vector<RationalPoint> pts102 = {
    P("-2", "0"),      P("-2", "2"),          P("-1", "-1"),        P("-1", "2"),  P("-1/4", "-5/8"),
    P("-1/4", "7/8"),  P("0", "0"),           P("1", "-1"),         P("1", "0"),   P("121/64", "-1881/512"),
    P("121/64", "913/512"), P("2", "-4"),     P("2", "2"),          P("8", "-28"), P("8", "20"),
    P("9", "-33"),     P("9", "24"),          P("2738", "-144670"), P("2738", "141932")};
inline const std::vector<RationalPoint> short102 = {
    P("-57", "-216"),     P("-57", "216"),      P("-21", "-324"),       P("-21", "324"),     P("6", "-162"),
    P("6", "162"),        P("15", "0"),         P("51", "-108"),        P("51", "108"),      P("1329/16", "-37719/64"),
    P("1329/16", "37719/64"), P("87", "-648"),  P("87", "648"),         P("303", "-5184"),   P("303", "5184"),
    P("339", "-6156"),    P("339", "6156"),     P("98583", "-30953016"), P("98583", "30953016")};


// mod-5 residue points as printed, in printed order, with the disc membership rows
inline const std::vector<ResiduePoint> printed_discs128{{0, 1}, {0, 4}, {1, 1}, {1, 4}, {3, 0}, {4, 1}, {4, 4}};
inline const std::vector<std::vector<std::size_t>> rows128{{7}, {8}, {2, 11}, {3, 12}, {4, 9, 10}, {0, 6}, {1, 5}};
// the second entry is the projective point (0:1:0) in the printed sort order
inline const std::vector<ResiduePoint> printed_discs102{{0, 0}, {0, 1}, {1, 2}, {1, 3}, {2, 2},
                                                        {2, 3}, {3, 1}, {3, 4}, {4, 1}, {4, 4}};
inline const std::vector<std::vector<std::size_t>> rows102{{6},          {},           {5, 7},        {4, 8},       {11},
                                                           {12},         {1, 13, 18},  {0, 14, 17},   {2, 10, 16},  {3, 9, 15}};

// components at 3 for 102a1
inline const std::vector<std::size_t> fiber3_smooth{0, 1, 6, 7, 8, 9, 10, 15, 16};
inline const std::vector<std::size_t> fiber3_node{2, 3, 4, 5, 11, 12, 13, 14, 17, 18};

// discs given by the printed list of residue points and the printed membership rows
inline std::vector<std::vector<std::size_t>> disc_rows(const std::vector<ResidueDisc>& discs,
                                                const std::vector<ResiduePoint>& printed) {
    std::vector<std::vector<std::size_t>> rows;
    for (const auto& c : printed) {
        auto it = std::find_if(discs.begin(), discs.end(), [&](const ResidueDisc& d) { return d.centre == c; });
        rows.push_back(it == discs.end() ? std::vector<std::size_t>{} : it->members);
    }
    return rows;
}

}  // namespace worked
