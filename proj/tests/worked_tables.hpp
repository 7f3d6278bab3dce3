#pragma once

// Selmer dimension tables: d over Q, d over an imaginary quadratic field and l, per (a, b),
// and the c-values of single classes with r = 0.

#include <tuple>
#include <vector>

namespace worked {

struct Row {
    int a, b, d_q, d_iq, l;
};

inline const std::vector<Row> kTable{
    {2, 0, 0, 1, 2}, {3, 0, 1, 2, 3}, {1, 1, 1, 2, 2}, {0, 2, 0, 1, 1}, {2, 1, 2, 3, 3},
    {4, 0, 1, 3, 4}, {1, 2, 1, 2, 2}, {3, 1, 2, 4, 4}, {5, 0, 2, 4, 5},
};

inline const std::vector<std::tuple<int, int, int>> q_list{{0, 1, 1}, {2, 0, 2}, {3, 0, 2}, {1, 1, 1}, {0, 2, 1}, {2, 1, 1},
    {4, 0, 3}, {1, 2, 1}, {3, 1, 2}, {5, 0, 3}};
inline const std::vector<std::tuple<int, int, int>> iq_list{{0, 1, 1}, {2, 0, 1}, {3, 0, 1}, {1, 1, 0}, {0, 2, 0}, {2, 1, 0},
    {4, 0, 1}, {1, 2, 0}, {3, 1, 0}, {5, 0, 1}};

}  // namespace worked
