#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "curve_table.hpp"
#include "word.hpp"

namespace mcg {

enum class RelationKind { Braid, Commute, ChainC2, ChainC3, Lantern, Star, TorusOrder, ConjugationDef };

struct KindInfo {
    RelationKind kind;
    const char* tag;
    int signature;
};

inline const std::vector<KindInfo>& builtin_kinds() {
    static const std::vector<KindInfo> kinds = {
        {RelationKind::Braid, "Braid", 0},         {RelationKind::Commute, "Commute", 0},
        {RelationKind::ChainC2, "ChainC2", -7},    {RelationKind::ChainC3, "ChainC3", -6},
        {RelationKind::Lantern, "Lantern", 1},     {RelationKind::Star, "Star", -5},
        {RelationKind::TorusOrder, "TorusOrder", 0}, {RelationKind::ConjugationDef, "ConjugationDef", 0},
    };
    return kinds;
}

inline const KindInfo& kind_info(RelationKind k) {
    for (const auto& i : builtin_kinds())
        if (i.kind == k) return i;
    throw std::logic_error("unknown relation kind");
}

inline int signature_of(RelationKind k) { return kind_info(k).signature; }
inline std::string kind_tag(RelationKind k) { return kind_info(k).tag; }

inline std::optional<RelationKind> parse_kind(const std::string& tag) {
    for (const auto& i : builtin_kinds())
        if (tag == i.tag) return i.kind;
    return std::nullopt;
}

struct RelationInstance {
    std::string name;
    RelationKind kind = RelationKind::Braid;
    Word lhs;
    Word rhs;

    // lhs rhs^-1, the relator read as an identity word
    Word relator() const { return concat(lhs, invert(rhs)); }
};

struct Registry {
    std::vector<RelationInstance> instances;

    const RelationInstance* find(const std::string& name) const {
        for (const auto& r : instances)
            if (r.name == name) return &r;
        return nullptr;
    }
    const RelationInstance& at(const std::string& name) const {
        if (auto* r = find(name)) return *r;
        throw std::out_of_range("unknown relation '" + name + "'");
    }
    void add(RelationInstance r) {
        if (find(r.name)) throw std::invalid_argument("duplicate relation '" + r.name + "'");
        instances.push_back(std::move(r));
    }
    std::size_t count(RelationKind k) const {
        return static_cast<std::size_t>(std::count_if(instances.begin(), instances.end(), [&](const auto& r) { return r.kind == k; }));
    }
};

// Relation names may use capitals, unlike curve names.
inline bool is_relation_name(std::string_view s) {
    if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
    for (char ch : s)
        if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_') return false;
    return true;
}

namespace detail {

inline std::string quoted_after(std::istringstream& ls, int lineno) {
    char ch;
    if (!(ls >> ch) || ch != '"') throw ParseError("expected quoted word", lineno, 1);
    std::string s;
    while (ls.get(ch) && ch != '"') s.push_back(ch);
    if (ch != '"') throw ParseError("unterminated quoted word", lineno, 1);
    return s;
}

} // namespace detail

inline Registry parse_relations(const std::string& text) {
    Registry reg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw)) continue;
        if (kw != "relation") throw ParseError("expected 'relation'", lineno, 1);
        RelationInstance r;
        std::string k, tag, l, rr;
        if (!(ls >> r.name) || !is_relation_name(r.name)) throw ParseError("bad relation name", lineno, 1);
        if (!(ls >> k) || k != "kind" || !(ls >> tag)) throw ParseError("expected 'kind <tag>'", lineno, 1);
        auto kind = parse_kind(tag);
        if (!kind) throw ParseError("unknown kind '" + tag + "'", lineno, 1);
        r.kind = *kind;
        if (!(ls >> l) || l != "lhs") throw ParseError("expected 'lhs'", lineno, 1);
        r.lhs = parse_word(detail::quoted_after(ls, lineno));
        if (!(ls >> rr) || rr != "rhs") throw ParseError("expected 'rhs'", lineno, 1);
        r.rhs = parse_word(detail::quoted_after(ls, lineno));
        std::string extra;
        if (ls >> extra) throw ParseError("unexpected '" + extra + "'", lineno, 1);
        if (reg.find(r.name)) throw ParseError("duplicate relation '" + r.name + "'", lineno, 1);
        reg.instances.push_back(std::move(r));
    }
    return reg;
}

inline std::string render_relation(const RelationInstance& r) {
    return "relation " + r.name + " kind " + kind_tag(r.kind) + " lhs \"" + render_word(r.lhs) + "\" rhs \"" + render_word(r.rhs) + "\"";
}

inline std::string render_relations(const Registry& reg) {
    std::string out;
    for (const auto& r : reg.instances) out += render_relation(r) + "\n";
    return out;
}

inline Registry load_relations(const std::string& path) { return parse_relations(read_file(path)); }

namespace detail {

inline bool all_positive(const Word& w) { return is_positive(w); }

// w == u^n for some u of length p; returns u.
inline std::optional<Word> period(const Word& w, std::size_t p, std::size_t n) {
    if (w.size() != p * n) return std::nullopt;
    Word u(w.begin(), w.begin() + static_cast<long>(p));
    if (power(u, static_cast<int>(n)) != w) return std::nullopt;
    return u;
}

} // namespace detail

// Returns a reason when the shape constraint for r.kind fails, nullopt when it holds.
inline std::optional<std::string> shape_violation(const RelationInstance& r, const HomologyModel& m, const CurveTable& table) {
    auto ip = [&](const Letter& a, const Letter& b) { return intersection(m.class_of(a.curve), m.class_of(b.curve)); };
    auto unit = [&](const Letter& a, const Letter& b) {
        auto v = ip(a, b);
        return v == 1 || v == -1;
    };
    const Word& L = r.lhs;
    const Word& R = r.rhs;
    switch (r.kind) {
    case RelationKind::Braid:
        if (L.size() != 3 || R.size() != 3 || !detail::all_positive(L) || !detail::all_positive(R))
            return "braid needs aba = bab with positive letters";
        if (L[0] != L[2] || R[0] != R[2] || L[0] != R[1] || L[1] != R[0] || L[0] == L[1])
            return "braid needs aba = bab";
        if (!unit(L[0], L[1])) return "braid pair must intersect once";
        return std::nullopt;
    case RelationKind::Commute:
        if (L.size() != 2 || R.size() != 2 || L[0] != R[1] || L[1] != R[0]) return "commute needs ab = ba";
        if (ip(L[0], L[1]) != 0) return "commuting pair has nonzero intersection";
        if (!table.is_disjoint(L[0].curve, L[1].curve)) return "commuting pair not declared disjoint";
        return std::nullopt;
    case RelationKind::ChainC2:
    case RelationKind::TorusOrder: {
        auto u = detail::period(L, 2, 6);
        if (!u || !detail::all_positive(L) || (*u)[0] == (*u)[1]) return "lhs must be (ab)^6";
        if (!unit((*u)[0], (*u)[1])) return "chain pair must intersect once";
        if (r.kind == RelationKind::TorusOrder) {
            if (!R.empty()) return "torus order relation has empty rhs";
        } else if (R.size() != 1 || R[0].sign != 1) {
            return "rhs must be one boundary twist";
        }
        return std::nullopt;
    }
    case RelationKind::ChainC3: {
        if (R.size() != 2 || !detail::all_positive(R) || !detail::all_positive(L)) return "rhs must be two boundary twists";
        if (auto u = detail::period(L, 3, 4)) {
            const Word& x = *u;
            if (x[0] == x[1] || x[1] == x[2] || x[0] == x[2]) return "chain letters must differ";
            if (!unit(x[0], x[1]) || !unit(x[1], x[2]) || ip(x[0], x[2]) != 0) return "(abc)^4 needs a chain a-b-c";
            return std::nullopt;
        }
        if (auto u = detail::period(L, 4, 3)) {
            // some cyclic rotation of b a b c
            for (std::size_t s = 0; s < 4; ++s) {
                Word x = cyclic_rotate(*u, static_cast<long>(s));
                if (x[0] == x[2] && x[1] != x[3] && x[0] != x[1] && x[0] != x[3]) {
                    if (!unit(x[0], x[1]) || !unit(x[0], x[3]) || ip(x[1], x[3]) != 0) return "(baba c)^3 needs a chain";
                    return std::nullopt;
                }
            }
        }
        return "lhs must be (abc)^4 or (babc)^3";
    }
    case RelationKind::Lantern: {
        if (L.size() != 3 || R.size() != 4 || !detail::all_positive(L) || !detail::all_positive(R))
            return "lantern needs three interior and four boundary twists";
        std::vector<HomologyClass> all;
        for (const auto& l : L) all.push_back(m.class_of(l.curve));
        for (const auto& l : R) all.push_back(m.class_of(l.curve));
        for (std::size_t i = 0; i < all.size(); ++i)
            for (std::size_t j = i + 1; j < all.size(); ++j)
                if (intersection(all[i], all[j]) != 0) return "lantern curves must be pairwise disjoint";
        std::size_t n = all[0].size();
        for (int signs = 0; signs < 8; ++signs) {
            std::array<int, 4> eps = {1, signs & 1 ? -1 : 1, signs & 2 ? -1 : 1, signs & 4 ? -1 : 1};
            std::array<HomologyClass, 4> d;
            HomologyClass sum(n, 0);
            for (int k = 0; k < 4; ++k) {
                d[k] = all[3 + k];
                if (eps[k] < 0) d[k] = negated(d[k]);
                for (std::size_t i = 0; i < n; ++i) sum[i] = checked_add(sum[i], d[k][i]);
            }
            if (!is_zero(sum)) continue;
            auto pair_sum = [&](int a, int b) {
                HomologyClass s(n);
                for (std::size_t i = 0; i < n; ++i) s[i] = checked_add(d[a][i], d[b][i]);
                return s;
            };
            std::array<HomologyClass, 3> sums = {pair_sum(0, 1), pair_sum(0, 2), pair_sum(0, 3)};
            std::array<int, 3> perm = {0, 1, 2};
            do {
                bool ok = true;
                for (int k = 0; k < 3 && ok; ++k) ok = equal_up_to_sign(all[k], sums[perm[k]]);
                if (ok) return std::nullopt;
            } while (std::next_permutation(perm.begin(), perm.end()));
        }
        return "interior classes are not the pair sums of the boundary";
    }
    case RelationKind::Star: {
        auto u = detail::period(L, 4, 3);
        if (!u || R.size() != 3 || !detail::all_positive(L) || !detail::all_positive(R)) return "star needs (a1 a2 a3 b)^3 = d1 d2 d3";
        const Word& x = *u;
        for (int i = 0; i < 3; ++i) {
            if (!unit(x[i], x[3])) return "star arms must meet the core once";
            for (int j = i + 1; j < 3; ++j)
                if (x[i] == x[j] || ip(x[i], x[j]) != 0) return "star arms must be distinct and disjoint";
        }
        return std::nullopt;
    }
    case RelationKind::ConjugationDef: {
        if (R.size() != 1 || R[0].sign != 1) return "conjugation rhs must be one defined letter";
        auto it = m.defs().find(R[0].curve);
        if (it == m.defs().end()) return "'" + R[0].curve + "' is not defined";
        if (it->second != L) return "lhs differs from the definition of '" + R[0].curve + "'";
        return std::nullopt;
    }
    }
    return "unknown kind";
}

// Both sides act identically and the shape matches; throws UnknownCurve.
inline bool check_instance(const RelationInstance& r, const CurveTable& table, const DefinitionTable& defs = {}) {
    HomologyModel m(table, defs);
    for (const auto* side : {&r.lhs, &r.rhs})
        for (const auto& l : *side) m.class_of(l.curve);
    if (shape_violation(r, m, table)) return false;
    return m.act(r.lhs) == m.act(r.rhs);
}

// The alternate form of a C3 instance: (abc)^4 <-> (babc)^3 with b the middle letter.
inline Word chain_c3_other_form(const RelationInstance& r) {
    if (r.kind != RelationKind::ChainC3) throw std::invalid_argument("not a C3 instance");
    if (auto u = detail::period(r.lhs, 3, 4)) {
        const Word& x = *u;
        return power(Word{x[1], x[0], x[1], x[2]}, 3);
    }
    if (auto u = detail::period(r.lhs, 4, 3)) {
        for (std::size_t s = 0; s < 4; ++s) {
            Word x = cyclic_rotate(*u, static_cast<long>(s));
            if (x[0] == x[2]) return power(Word{x[1], x[0], x[3]}, 4);
        }
    }
    throw std::invalid_argument("malformed C3 instance");
}

// Curve-table checks plus every registered instance.
inline Report validate_table(const CurveTable& t, const Registry& reg, const DefinitionTable& defs = {}) {
    Report r = validate_table(t, defs);
    if (!r.ok()) return r;
    HomologyModel m(t, defs);
    for (const auto& inst : reg.instances) {
        try {
            if (auto why = shape_violation(inst, m, t)) {
                r.fail("relation " + inst.name + ": " + *why);
                continue;
            }
            if (m.act(inst.lhs) != m.act(inst.rhs)) r.fail("relation " + inst.name + ": sides act differently on homology");
        } catch (const UnknownCurve& e) {
            r.fail("relation " + inst.name + ": unknown curve \"" + e.name() + "\"");
        } catch (const std::exception& e) {
            r.fail("relation " + inst.name + ": " + e.what());
        }
    }
    // interior curves of one lantern always intersect geometrically
    for (const auto& inst : reg.instances) {
        if (inst.kind != RelationKind::Lantern || inst.lhs.size() != 3) continue;
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j)
                if (t.is_disjoint(inst.lhs[i].curve, inst.lhs[j].curve))
                    r.fail("disjoint pair (" + inst.lhs[i].curve + ", " + inst.lhs[j].curve + ") are interior curves of lantern " + inst.name);
    }
    return r;
}

} // namespace mcg
