#pragma once

#include <cstdint>
#include <cstdlib>
#include <string>
#include <utility>
#include <vector>

#include "checked.hpp"

namespace mcg {

using IntRows = std::vector<std::vector<std::int64_t>>;

// Nonzero diagonal entries d1 | d2 | ... of the Smith normal form.
// Pivot is the entry of smallest absolute value in the remaining block.
inline std::vector<std::int64_t> smith_normal_form(IntRows a) {
    std::size_t rows = a.size();
    std::size_t cols = rows ? a[0].size() : 0;
    std::vector<std::int64_t> diag;
    auto row_op = [&](std::size_t dst, std::size_t src, std::int64_t f, std::size_t from) {
        for (std::size_t j = from; j < cols; ++j) a[dst][j] = checked_sub(a[dst][j], checked_mul(f, a[src][j]));
    };
    auto col_op = [&](std::size_t dst, std::size_t src, std::int64_t f, std::size_t from) {
        for (std::size_t i = from; i < rows; ++i) a[i][dst] = checked_sub(a[i][dst], checked_mul(f, a[i][src]));
    };
    for (std::size_t t = 0; t < rows && t < cols; ++t) {
        for (;;) {
            std::size_t pi = rows, pj = cols;
            for (std::size_t i = t; i < rows; ++i)
                for (std::size_t j = t; j < cols; ++j)
                    if (a[i][j] && (pi == rows || std::llabs(a[i][j]) < std::llabs(a[pi][pj]))) pi = i, pj = j;
            if (pi == rows) return diag;  // remaining block is zero
            std::swap(a[t], a[pi]);
            for (std::size_t i = 0; i < rows; ++i) std::swap(a[i][t], a[i][pj]);
            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i)
                if (a[i][t]) {
                    row_op(i, t, a[i][t] / a[t][t], t);
                    if (a[i][t]) clean = false;
                }
            for (std::size_t j = t + 1; j < cols; ++j)
                if (a[t][j]) {
                    col_op(j, t, a[t][j] / a[t][t], t);
                    if (a[t][j]) clean = false;
                }
            if (!clean) continue;
            // pivot must divide the rest of the block
            std::size_t bad_i = rows;
            for (std::size_t i = t + 1; i < rows && bad_i == rows; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (a[i][j] % a[t][t]) {
                        bad_i = i;
                        break;
                    }
            if (bad_i == rows) break;
            for (std::size_t j = t; j < cols; ++j) a[t][j] = checked_add(a[t][j], a[bad_i][j]);
        }
        diag.push_back(std::llabs(a[t][t]));
    }
    return diag;
}

struct AbelianGroup {
    int free_rank = 0;
    std::vector<std::int64_t> torsion;  // each >= 2, each dividing the next

    bool trivial() const { return free_rank == 0 && torsion.empty(); }
    friend bool operator==(const AbelianGroup&, const AbelianGroup&) = default;

    std::string str() const {
        if (trivial()) return "0";
        std::string s;
        if (free_rank) s = free_rank == 1 ? "Z" : "Z^" + std::to_string(free_rank);
        for (auto t : torsion) s += (s.empty() ? "" : "+") + std::string("Z") + std::to_string(t);
        return s;
    }
};

// Cokernel of a matrix with `rows` rows, i.e. Z^rows / column span.
inline AbelianGroup cokernel(const IntRows& a, std::size_t rows) {
    AbelianGroup g;
    auto d = smith_normal_form(a);
    g.free_rank = static_cast<int>(rows - d.size());
    for (auto x : d)
        if (x > 1) g.torsion.push_back(x);
    return g;
}

} // namespace mcg
