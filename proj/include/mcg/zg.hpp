#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "relation.hpp"
#include "word.hpp"

namespace mcg {

namespace detail {

inline std::string idx(const char* s, int i) { return s + std::to_string(i); }

// Single factor of the achiral chain-construction word for g >= 4, before any
// genus-specific lantern. Odd genus writes e_j as the extra curve c_{2g+1+j}
// unless extra_names is false.
inline Word zg_word(int g, bool extra_names = true) {
    if (g < 4) throw std::out_of_range("chain construction word needs g >= 4");
    bool odd = g % 2 == 1;
    auto c = [](int i) { return idx("c", i); };
    auto e = [&](int j) { return odd && extra_names ? c(2 * g + 1 + j) : idx("e", j); };
    std::string s = "c1 d x1 c3 r1 " + e(1) + " " + e(1) + " c4 x2 c5 f2^-1";
    int last = odd ? g - 1 : g;
    for (int i = 6; i <= last; i += 2) {
        s += " " + c(2 * i - 6) + " " + idx("x", i - 3) + " " + c(2 * i - 5) + " " + idx("r", i - 3) + " " + e(i - 3) + " " + e(i - 3) + " " +
             c(2 * i - 4) + " " + idx("x", i - 2) + " " + c(2 * i - 3) + " " + idx("f", i - 2) + "^-1";
    }
    if (odd) {
        s += " " + c(2 * g - 4) + " " + idx("x", g - 2) + " " + c(2 * g - 3) + " " + idx("r", g - 2) + " " + e(g - 2) + " " + e(g - 2) + " " +
             c(2 * g - 2) + " " + idx("x", g - 1) + " " + c(2 * g - 1) + " " + c(2 * g) + " " + c(2 * g + 1);
    } else {
        s += " " + c(2 * g - 2) + " " + idx("x", g - 1) + " " + c(2 * g - 1) + " " + c(2 * g) + " " + c(2 * g + 1) + " " + c(2 * g + 1) + " " +
             c(2 * g) + " " + c(2 * g + 1) + " " + c(2 * g);
    }
    return parse_word(s);
}

} // namespace detail

inline Word build_zg_word(int g) {
    if (g < 7) throw std::out_of_range("build_zg_word needs g >= 7");
    return detail::zg_word(g);
}

// Relation counts behind sigma(Z_g): the base composition counts once, the
// single-copy insertions and substitutions count three times.
struct LedgerTerm {
    RelationKind kind;
    int count;
};

inline std::vector<LedgerTerm> zg_ledger_terms(int g) {
    if (g < 2) throw std::out_of_range("genus must be at least 2");
    int odd_c3 = (g - 1) / 2;  // chain pieces with negative exponent in the base
    int even_c3 = (g - 2) / 2;
    std::vector<LedgerTerm> t;
    t.push_back({RelationKind::ChainC2, 1});
    t.push_back({RelationKind::ChainC3, even_c3 - odd_c3});
    t.push_back({RelationKind::ChainC2, g % 2 ? 1 : -1});
    t.push_back({RelationKind::ChainC3, 3 * odd_c3});
    if (g % 2 == 0) t.push_back({RelationKind::ChainC2, 3});
    t.push_back({RelationKind::Lantern, 3 * (g - 1)});
    return t;
}

inline long zg_ledger_sigma(int g) {
    long s = 0;
    for (const auto& t : zg_ledger_terms(g)) s += static_cast<long>(t.count) * signature_of(t.kind);
    return s;
}

} // namespace mcg
