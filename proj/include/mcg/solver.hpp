#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "relation.hpp"

namespace mcg {

struct SolveResult {
    std::vector<std::string> unknowns;  // sorted
    std::vector<CurveTable> tables;     // lexicographic by the unknowns' classes
    bool truncated = false;
    std::string diagnostic;
};

namespace detail {

struct Frac {
    std::int64_t n = 0, d = 1;
    Frac() = default;
    Frac(std::int64_t num, std::int64_t den = 1) : n(num), d(den) { norm(); }
    void norm() {
        if (d < 0) {
            n = -n;
            d = -d;
        }
        std::int64_t g = std::gcd(n < 0 ? -n : n, d);
        if (g > 1) {
            n /= g;
            d /= g;
        }
    }
    friend Frac operator-(Frac a, Frac b) { return Frac(checked_sub(checked_mul(a.n, b.d), checked_mul(b.n, a.d)), checked_mul(a.d, b.d)); }
    friend Frac operator*(Frac a, Frac b) { return Frac(checked_mul(a.n, b.n), checked_mul(a.d, b.d)); }
    friend Frac operator/(Frac a, Frac b) { return Frac(checked_mul(a.n, b.d), checked_mul(a.d, b.n)); }
    bool zero() const { return n == 0; }
};

// Integer points of {u : A u = b} inside the box [-B, B]^n, via reduced row echelon form.
inline std::vector<HomologyClass> box_solutions(std::vector<std::vector<Frac>> a, std::vector<Frac> b, std::size_t n, int bound,
                                                std::size_t max_points) {
    std::size_t rows = a.size();
    std::vector<int> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c].zero()) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        std::swap(b[p], b[r]);
        Frac inv = Frac(1) / a[r][c];
        for (auto& x : a[r]) x = x * inv;
        b[r] = b[r] * inv;
        for (std::size_t q = 0; q < rows; ++q) {
            if (q == r || a[q][c].zero()) continue;
            Frac f = a[q][c];
            for (std::size_t k = 0; k < n; ++k) a[q][k] = a[q][k] - f * a[r][k];
            b[q] = b[q] - f * b[r];
        }
        pivot_col.push_back(static_cast<int>(c));
        ++r;
    }
    for (std::size_t q = r; q < rows; ++q)
        if (!b[q].zero()) return {};
    std::vector<std::size_t> free;
    for (std::size_t c = 0; c < n; ++c)
        if (std::find(pivot_col.begin(), pivot_col.end(), static_cast<int>(c)) == pivot_col.end()) free.push_back(c);
    std::vector<HomologyClass> out;
    std::vector<std::int64_t> vals(free.size(), -bound);
    for (;;) {
        HomologyClass u(n, 0);
        for (std::size_t k = 0; k < free.size(); ++k) u[free[k]] = vals[k];
        bool ok = true;
        for (std::size_t q = 0; q < r && ok; ++q) {
            Frac v = b[q];
            for (std::size_t k = 0; k < free.size(); ++k) v = v - a[q][free[k]] * Frac(vals[k]);
            if (v.d != 1 || v.n < -bound || v.n > bound)
                ok = false;
            else
                u[pivot_col[q]] = v.n;
        }
        if (ok) {
            out.push_back(u);
            if (out.size() > max_points) return out;
        }
        std::size_t k = 0;
        while (k < free.size() && vals[k] == bound) vals[k++] = -bound;
        if (k == free.size()) break;
        ++vals[k];
    }
    return out;
}

enum class PairReq { Zero, Unit };

} // namespace detail

// Exhaustive search for the classes of curves missing from `partial`, with all
// coefficients in [-bound, bound]. Classes are reported sign-normalized.
inline SolveResult solve_classes_detailed(const CurveTable& partial, const std::vector<RelationInstance>& constraints, int bound,
                                          std::size_t max_solutions = 100000) {
    SolveResult res;
    std::size_t n = static_cast<std::size_t>(2 * partial.genus);
    std::set<std::string> unknown_set;
    auto note = [&](const std::string& name) {
        if (!partial.has(name)) unknown_set.insert(name);
    };
    for (const auto& r : constraints) {
        for (const auto& l : r.lhs) note(l.curve);
        for (const auto& l : r.rhs) note(l.curve);
    }
    for (const auto& [a, b] : partial.disjoint_pairs) note(a), note(b);
    for (const auto& [a, b] : partial.unit_pairs) note(a), note(b);
    for (const auto& s : partial.separating) note(s);
    res.unknowns.assign(unknown_set.begin(), unknown_set.end());

    // pairwise requirements implied by declarations and constraint shapes
    std::map<NamePair, detail::PairReq> req;
    auto want = [&](const std::string& a, const std::string& b, detail::PairReq k) {
        if (a != b) req[ordered_pair(a, b)] = k;
    };
    for (const auto& [a, b] : partial.disjoint_pairs) want(a, b, detail::PairReq::Zero);
    for (const auto& [a, b] : partial.unit_pairs) want(a, b, detail::PairReq::Unit);
    for (const auto& r : constraints) {
        std::vector<std::string> names;
        for (const auto& l : r.lhs) names.push_back(l.curve);
        for (const auto& l : r.rhs) names.push_back(l.curve);
        switch (r.kind) {
        case RelationKind::Lantern:
            for (auto& a : names)
                for (auto& b : names) want(a, b, detail::PairReq::Zero);
            break;
        case RelationKind::Braid:
            if (r.lhs.size() == 3) want(r.lhs[0].curve, r.lhs[1].curve, detail::PairReq::Unit);
            break;
        case RelationKind::Commute:
            if (r.lhs.size() == 2) want(r.lhs[0].curve, r.lhs[1].curve, detail::PairReq::Zero);
            break;
        case RelationKind::ChainC2:
            if (r.lhs.size() >= 2) want(r.lhs[0].curve, r.lhs[1].curve, detail::PairReq::Unit);
            for (const auto& d : r.rhs)
                for (const auto& l : r.lhs) want(d.curve, l.curve, detail::PairReq::Zero);
            break;
        case RelationKind::ChainC3:
            if (r.lhs.size() == 12) {
                want(r.lhs[0].curve, r.lhs[1].curve, detail::PairReq::Unit);
                want(r.lhs[1].curve, r.lhs[2].curve, detail::PairReq::Unit);
                want(r.lhs[0].curve, r.lhs[2].curve, detail::PairReq::Zero);
            }
            for (const auto& d : r.rhs)
                for (const auto& l : r.lhs) want(d.curve, l.curve, detail::PairReq::Zero);
            break;
        case RelationKind::Star:
            if (r.lhs.size() == 12) {
                for (int i = 0; i < 3; ++i) {
                    want(r.lhs[i].curve, r.lhs[3].curve, detail::PairReq::Unit);
                    for (int j = i + 1; j < 3; ++j) want(r.lhs[i].curve, r.lhs[j].curve, detail::PairReq::Zero);
                }
            }
            for (const auto& d : r.rhs)
                for (const auto& l : r.lhs) want(d.curve, l.curve, detail::PairReq::Zero);
            break;
        default:
            break;
        }
    }

    // candidate classes per unknown from constraints against known curves
    std::map<std::string, std::vector<HomologyClass>> cand;
    for (const auto& u : res.unknowns) {
        std::set<HomologyClass> found;
        if (partial.separating.count(u)) {
            found.insert(HomologyClass(n, 0));
        } else {
            std::vector<std::vector<detail::Frac>> rows;
            std::vector<int> kinds;
            for (const auto& [p, k] : req) {
                const std::string* other = nullptr;
                if (p.first == u) other = &p.second;
                if (p.second == u) other = &p.first;
                if (!other || !partial.has(*other)) continue;
                const auto& c = partial.classes.at(*other);
                std::vector<detail::Frac> row(n);
                // <u, c> = sum u_a c_b - u_b c_a
                for (std::size_t i = 0; i < n; i += 2) {
                    row[i] = c[i + 1];
                    row[i + 1] = -c[i];
                }
                rows.push_back(row);
                kinds.push_back(k == detail::PairReq::Unit);
            }
            std::vector<std::size_t> unit_rows;
            for (std::size_t i = 0; i < kinds.size(); ++i)
                if (kinds[i]) unit_rows.push_back(i);
            for (std::size_t mask = 0; mask < (std::size_t{1} << unit_rows.size()); ++mask) {
                std::vector<detail::Frac> rhs(rows.size(), detail::Frac(0));
                for (std::size_t k = 0; k < unit_rows.size(); ++k) rhs[unit_rows[k]] = (mask >> k) & 1 ? -1 : 1;
                for (auto& v : detail::box_solutions(rows, rhs, n, bound, max_solutions)) found.insert(sign_normalized(v));
                if (found.size() > max_solutions) break;
            }
        }
        cand[u].assign(found.begin(), found.end());
        if (cand[u].empty()) {
            res.diagnostic = "no candidate class for '" + u + "'";
            return res;
        }
    }

    std::vector<std::string> order = res.unknowns;
    std::stable_sort(order.begin(), order.end(), [&](const auto& a, const auto& b) { return cand[a].size() < cand[b].size(); });
    std::map<std::string, std::size_t> rank;
    for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = i;
    auto rank_of = [&](const std::string& name) -> long { return partial.has(name) ? -1 : static_cast<long>(rank.at(name)); };

    // each constraint is checked when its last unknown is assigned
    std::vector<std::vector<const RelationInstance*>> due(order.size() + 1);
    for (const auto& r : constraints) {
        long last = -1;
        for (const auto* side : {&r.lhs, &r.rhs})
            for (const auto& l : *side) last = std::max(last, rank_of(l.curve));
        due[static_cast<std::size_t>(last + 1)].push_back(&r);
    }
    std::vector<std::vector<std::pair<std::string, detail::PairReq>>> pair_due(order.size());
    for (const auto& [p, k] : req) {
        long ra = rank_of(p.first), rb = rank_of(p.second);
        if (ra < 0 || rb < 0) continue;  // handled by the linear system
        if (ra > rb)
            pair_due[static_cast<std::size_t>(ra)].emplace_back(p.second, k);
        else
            pair_due[static_cast<std::size_t>(rb)].emplace_back(p.first, k);
    }

    CurveTable work = partial;
    DefinitionTable no_defs;
    auto constraints_hold = [&](std::size_t level) {
        if (due[level].empty()) return true;
        HomologyModel m(work, no_defs);
        for (const auto* r : due[level]) {
            if (shape_violation(*r, m, work)) return false;
            if (m.act(r->lhs) != m.act(r->rhs)) return false;
        }
        return true;
    };
    if (!constraints_hold(0)) {
        res.diagnostic = "constraints on known curves already fail";
        return res;
    }

    std::vector<std::vector<HomologyClass>> found;
    std::function<void(std::size_t)> go = [&](std::size_t level) {
        if (res.truncated) return;
        if (level == order.size()) {
            std::vector<HomologyClass> sol;
            for (const auto& u : res.unknowns) sol.push_back(work.classes.at(u));
            found.push_back(sol);
            if (found.size() >= max_solutions) res.truncated = true;
            return;
        }
        const std::string& u = order[level];
        for (const auto& c : cand[u]) {
            bool ok = true;
            for (const auto& [other, k] : pair_due[level]) {
                auto v = intersection(c, work.classes.at(other));
                if ((k == detail::PairReq::Zero && v != 0) || (k == detail::PairReq::Unit && v != 1 && v != -1)) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            work.classes[u] = c;
            if (constraints_hold(level + 1)) go(level + 1);
            work.classes.erase(u);
        }
    };
    go(0);
    std::sort(found.begin(), found.end());
    for (const auto& sol : found) {
        CurveTable t = partial;
        for (std::size_t i = 0; i < res.unknowns.size(); ++i) t.classes[res.unknowns[i]] = sol[i];
        res.tables.push_back(std::move(t));
    }
    if (res.tables.empty() && res.diagnostic.empty()) res.diagnostic = "constraints are inconsistent within the search bound";
    return res;
}

inline std::vector<CurveTable> solve_classes(const CurveTable& partial, const std::vector<RelationInstance>& constraints, int bound) {
    return solve_classes_detailed(partial, constraints, bound).tables;
}

} // namespace mcg
