#pragma once

// Independent reference implementations used only by the tests. They share no
// code with the library beyond the Letter/Word value types.

#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "mcg/word.hpp"

namespace oracle {

using Mat = std::vector<std::vector<std::int64_t>>;
using Vec = std::vector<std::int64_t>;

// Free reduction by repeated left-to-right scans until nothing changes.
inline mcg::Word free_reduce(mcg::Word w) {
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t i = 0; i + 1 < w.size(); ++i)
            if (w[i].curve == w[i + 1].curve && w[i].sign == -w[i + 1].sign) {
                w.erase(w.begin() + static_cast<long>(i), w.begin() + static_cast<long>(i) + 2);
                changed = true;
                break;
            }
    }
    return w;
}

inline Mat identity(std::size_t n) {
    Mat m(n, Vec(n, 0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

inline Mat form(std::size_t n) {
    Mat j(n, Vec(n, 0));
    for (std::size_t i = 0; i < n; i += 2) j[i][i + 1] = 1, j[i + 1][i] = -1;
    return j;
}

inline Mat mul(const Mat& a, const Mat& b) {
    std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
    Mat r(n, Vec(m, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t t = 0; t < k; ++t) r[i][j] += a[i][t] * b[t][j];
    return r;
}

inline Mat transpose(const Mat& a) {
    Mat t(a.empty() ? 0 : a[0].size(), Vec(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
    return t;
}

// <u,v> = u^T J v
inline std::int64_t pairing(const Vec& u, const Vec& v) {
    Mat j = form(u.size());
    std::int64_t s = 0;
    for (std::size_t a = 0; a < u.size(); ++a)
        for (std::size_t b = 0; b < v.size(); ++b) s += u[a] * j[a][b] * v[b];
    return s;
}

// Column j is T(e_j) = e_j + sign <e_j, c> c.
inline Mat twist(const Vec& c, int sign) {
    std::size_t n = c.size();
    Mat m = identity(n);
    for (std::size_t j = 0; j < n; ++j) {
        Vec e(n, 0);
        e[j] = 1;
        std::int64_t p = pairing(e, c);
        for (std::size_t i = 0; i < n; ++i) m[i][j] += sign * p * c[i];
    }
    return m;
}

// Leftmost letter acts first, so later letters multiply on the left.
template <class ClassOf>
Mat act(const mcg::Word& w, std::size_t n, ClassOf class_of) {
    Mat m = identity(n);
    for (const auto& l : w) m = mul(twist(class_of(l.curve), l.sign), m);
    return m;
}

inline std::int64_t det(Mat a) {
    // Bareiss fraction-free elimination
    std::size_t n = a.size();
    if (n == 0) return 1;
    std::int64_t sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && a[p][k] == 0) ++p;
            if (p == n) return 0;
            std::swap(a[k], a[p]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

inline void subsets(std::size_t n, std::size_t k, std::size_t from, std::vector<std::size_t>& cur, std::vector<std::vector<std::size_t>>& out) {
    if (cur.size() == k) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = from; i < n; ++i) {
        cur.push_back(i);
        subsets(n, k, i + 1, cur, out);
        cur.pop_back();
    }
}

// Invariant factors from determinantal divisors: d_k = gcd of the k x k minors.
inline std::vector<std::int64_t> invariant_factors(const Mat& a) {
    std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    std::vector<std::int64_t> out;
    std::int64_t prev = 1;
    for (std::size_t k = 1; k <= std::min(rows, cols); ++k) {
        std::vector<std::vector<std::size_t>> rs, cs;
        std::vector<std::size_t> cur;
        subsets(rows, k, 0, cur, rs);
        subsets(cols, k, 0, cur, cs);
        std::int64_t g = 0;
        for (const auto& r : rs)
            for (const auto& c : cs) {
                Mat m(k, Vec(k));
                for (std::size_t i = 0; i < k; ++i)
                    for (std::size_t j = 0; j < k; ++j) m[i][j] = a[r[i]][c[j]];
                g = std::gcd(g, det(m));
            }
        if (g == 0) break;
        out.push_back(g / prev);
        prev = g;
    }
    return out;
}

inline mcg::Word random_word(std::mt19937& rng, const std::vector<std::string>& alphabet, std::size_t max_len) {
    std::uniform_int_distribution<std::size_t> len(0, max_len), pick(0, alphabet.size() - 1);
    std::bernoulli_distribution neg(0.4);
    mcg::Word w;
    for (std::size_t i = 0, n = len(rng); i < n; ++i) w.push_back({alphabet[pick(rng)], neg(rng) ? -1 : 1});
    return w;
}

inline Vec random_class(std::mt19937& rng, std::size_t n, int bound) {
    std::uniform_int_distribution<int> d(-bound, bound);
    Vec v(n);
    for (auto& x : v) x = d(rng);
    return v;
}

} // namespace oracle
