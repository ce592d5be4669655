#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "curve_table.hpp"
#include "smith.hpp"
#include "word.hpp"

namespace mcg {

inline long euler_characteristic(int g, long s) { return 4 - 4L * g + s; }

// H1 of the total space: Z^2g modulo the vanishing-cycle classes.
inline AbelianGroup h1_of_fibration(const Word& w, const CurveTable& table, const DefinitionTable& defs = {}) {
    if (!is_positive(w)) throw std::domain_error("h1_of_fibration needs a positive word");
    HomologyModel m(table, defs);
    std::size_t n = m.dim();
    IntRows a(n, std::vector<std::int64_t>(w.size(), 0));
    for (std::size_t j = 0; j < w.size(); ++j) {
        const auto& c = m.class_of(w[j].curve);
        for (std::size_t i = 0; i < n; ++i) a[i][j] = c[i];
    }
    return cokernel(a, n);
}

enum class Family { Xg, Xgk, X3km, ZgEven, ZgOdd, Y4, Y4k, Y5, Y6 };

struct FamilyParams {
    int g = 0;
    int k = 0;
    int m = 0;
};

inline std::optional<Family> parse_family(const std::string& s) {
    if (s == "X_g") return Family::Xg;
    if (s == "X_g,k") return Family::Xgk;
    if (s == "X_3,k,m") return Family::X3km;
    if (s == "Z_g-even") return Family::ZgEven;
    if (s == "Z_g-odd") return Family::ZgOdd;
    if (s == "Y4") return Family::Y4;
    if (s == "Y4,k") return Family::Y4k;
    if (s == "Y5") return Family::Y5;
    if (s == "Y6") return Family::Y6;
    return std::nullopt;
}

inline int closed_form_sigma(Family f, FamilyParams p) {
    auto range = [](bool ok, const char* what) {
        if (!ok) throw std::out_of_range(what);
    };
    switch (f) {
    case Family::Xg:
        range(p.g >= 2 && p.g <= 4, "X_g is defined for g = 2, 3, 4");
        return -2 * (p.g + 7);
    case Family::Xgk:
        range(p.g >= 2 && p.g <= 4, "X_g,k is defined for g = 2, 3, 4");
        range(p.k >= 1 && p.k <= (p.g == 2 ? 6 : 3), "k out of range (1..6 for g = 2, 1..3 for g = 3, 4)");
        return -2 * (p.g + 7) + p.k;
    case Family::X3km:
        range(p.m >= 1 && p.m <= p.k && p.k <= 3, "X_3,k,m needs 1 <= m <= k <= 3");
        return -20 + p.k - 6 * p.m;
    case Family::ZgEven:
        range(p.g >= 2 && p.g % 2 == 0, "Z_g-even needs an even genus");
        return -6 * p.g - 6;
    case Family::ZgOdd:
        range(p.g >= 3 && p.g % 2 == 1, "Z_g-odd needs an odd genus >= 3");
        return -6 * p.g - 2;
    case Family::Y4:
        return -27;
    case Family::Y4k:
        range(p.k >= 1 && p.k <= 3, "Y4,k needs 1 <= k <= 3");
        return -27 + p.k;
    case Family::Y5:
        return -29;
    case Family::Y6:
        return -30;
    }
    throw std::logic_error("unknown family");
}

struct FibrationInvariants {
    int genus = 0;
    long s = 0;
    long chi = 0;
    long sigma = 0;
    long chi_h = 0;
    long c1sq = 0;
    AbelianGroup h1;
};

class SigmaMismatch : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline FibrationInvariants invariants_report(const Word& w, const CurveTable& table, const DefinitionTable& defs,
                                             std::optional<long> ledger_sigma, std::optional<long> formula_sigma = std::nullopt) {
    if (!ledger_sigma && !formula_sigma) throw std::invalid_argument("no signature source");
    if (ledger_sigma && formula_sigma && *ledger_sigma != *formula_sigma)
        throw SigmaMismatch("ledger gives " + std::to_string(*ledger_sigma) + " but the closed form gives " + std::to_string(*formula_sigma));
    FibrationInvariants f;
    f.genus = table.genus;
    f.s = letter_count(w);
    f.chi = euler_characteristic(f.genus, f.s);
    f.sigma = ledger_sigma ? *ledger_sigma : *formula_sigma;
    if ((f.sigma + f.chi) % 4 != 0) throw std::domain_error("sigma + chi is not divisible by 4");
    f.chi_h = (f.sigma + f.chi) / 4;
    f.c1sq = 3 * f.sigma + 2 * f.chi;
    f.h1 = h1_of_fibration(w, table, defs);
    return f;
}

} // namespace mcg
