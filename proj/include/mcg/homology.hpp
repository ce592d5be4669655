#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "checked.hpp"

namespace mcg {

// Coefficients in the basis (a1, b1, ..., ag, bg).
using HomologyClass = std::vector<std::int64_t>;

inline std::int64_t intersection(const HomologyClass& u, const HomologyClass& v) {
    if (u.size() != v.size() || u.size() % 2) throw std::invalid_argument("intersection: length mismatch");
    std::int64_t s = 0;
    for (std::size_t i = 0; i < u.size(); i += 2) {
        s = checked_add(s, checked_mul(u[i], v[i + 1]));
        s = checked_sub(s, checked_mul(u[i + 1], v[i]));
    }
    return s;
}

inline bool is_zero(const HomologyClass& c) {
    for (auto x : c)
        if (x) return false;
    return true;
}

inline HomologyClass negated(const HomologyClass& c) {
    HomologyClass out(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) out[i] = checked_sub(0, c[i]);
    return out;
}

inline bool equal_up_to_sign(const HomologyClass& u, const HomologyClass& v) {
    return u == v || u == negated(v);
}

// First nonzero coefficient positive.
inline HomologyClass sign_normalized(const HomologyClass& c) {
    for (auto x : c) {
        if (x > 0) return c;
        if (x < 0) return negated(c);
    }
    return c;
}

class IntMatrix {
public:
    IntMatrix() = default;
    explicit IntMatrix(std::size_t n) : n_(n), a_(n * n, 0) {}

    static IntMatrix identity(std::size_t n) {
        IntMatrix m(n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    // The form J with <u,v> = u^T J v.
    static IntMatrix form(std::size_t n) {
        IntMatrix m(n);
        for (std::size_t i = 0; i < n; i += 2) {
            m(i, i + 1) = 1;
            m(i + 1, i) = -1;
        }
        return m;
    }

    std::size_t size() const { return n_; }
    std::int64_t& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    std::int64_t operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

    bool is_identity() const { return *this == identity(n_); }

    IntMatrix transposed() const {
        IntMatrix t(n_);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    friend IntMatrix operator*(const IntMatrix& x, const IntMatrix& y) {
        if (x.n_ != y.n_) throw std::invalid_argument("matrix size mismatch");
        IntMatrix r(x.n_);
        for (std::size_t i = 0; i < x.n_; ++i)
            for (std::size_t k = 0; k < x.n_; ++k) {
                std::int64_t xik = x(i, k);
                if (!xik) continue;
                for (std::size_t j = 0; j < x.n_; ++j)
                    if (y(k, j)) r(i, j) = checked_add(r(i, j), checked_mul(xik, y(k, j)));
            }
        return r;
    }

    HomologyClass apply(const HomologyClass& v) const {
        HomologyClass r(n_, 0);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j)
                if ((*this)(i, j) && v[j]) r[i] = checked_add(r[i], checked_mul((*this)(i, j), v[j]));
        return r;
    }

    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

    std::string str() const {
        std::string s;
        for (std::size_t i = 0; i < n_; ++i) {
            s += "[";
            for (std::size_t j = 0; j < n_; ++j) s += (j ? " " : "") + std::to_string((*this)(i, j));
            s += "]\n";
        }
        return s;
    }

private:
    std::size_t n_ = 0;
    std::vector<std::int64_t> a_;
};

using SymplecticMatrix = IntMatrix;

inline bool is_symplectic(const IntMatrix& m) {
    IntMatrix j = IntMatrix::form(m.size());
    return m.transposed() * j * m == j;
}

// Inverse of a symplectic matrix: M^-1 = -J M^T J.
inline IntMatrix symplectic_inverse(const IntMatrix& m) {
    IntMatrix j = IntMatrix::form(m.size());
    IntMatrix r = j * m.transposed() * j;
    IntMatrix out(m.size());
    for (std::size_t a = 0; a < m.size(); ++a)
        for (std::size_t b = 0; b < m.size(); ++b) out(a, b) = checked_sub(0, r(a, b));
    return out;
}

// Matrix of x -> x + sign <x,c> c.
inline IntMatrix transvection(const HomologyClass& c, int sign = 1) {
    std::size_t n = c.size();
    IntMatrix m = IntMatrix::identity(n);
    for (std::size_t j = 0; j < n; ++j) {
        // <e_j, c>
        std::int64_t ejc = (j % 2 == 0) ? c[j + 1] : -c[j - 1];
        if (!ejc) continue;
        for (std::size_t i = 0; i < n; ++i)
            m(i, j) = checked_add(m(i, j), checked_mul(sign, checked_mul(c[i], ejc)));
    }
    return m;
}

// T_c^sign * m without forming T_c: column j gains sign <m e_j, c> c.
inline void left_multiply_transvection(IntMatrix& m, const HomologyClass& c, int sign) {
    std::size_t n = m.size();
    for (std::size_t j = 0; j < n; ++j) {
        std::int64_t ip = 0;
        for (std::size_t i = 0; i < n; i += 2) {
            ip = checked_add(ip, checked_mul(m(i, j), c[i + 1]));
            ip = checked_sub(ip, checked_mul(m(i + 1, j), c[i]));
        }
        if (!ip) continue;
        std::int64_t f = sign > 0 ? ip : checked_sub(0, ip);
        for (std::size_t i = 0; i < n; ++i)
            if (c[i]) m(i, j) = checked_add(m(i, j), checked_mul(f, c[i]));
    }
}

inline IntMatrix matrix_power(const IntMatrix& m, int n) {
    IntMatrix r = IntMatrix::identity(m.size());
    for (int i = 0; i < n; ++i) r = r * m;
    return r;
}

inline std::optional<int> matrix_order(const IntMatrix& m, int bound = 12) {
    if (bound < 1) throw std::invalid_argument("matrix_order: bound must be >= 1");
    IntMatrix p = m;
    for (int n = 1; n <= bound; ++n) {
        if (p.is_identity()) return n;
        if (n < bound) p = p * m;
    }
    return std::nullopt;
}

} // namespace mcg
