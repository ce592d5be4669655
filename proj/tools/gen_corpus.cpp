// Builds the corpus assets: curve tables solved from local constraints,
// relation registries, definitions and every derivation script.
#include <filesystem>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "mcg/authoring.hpp"
#include "mcg/corpus.hpp"
#include "mcg/solver.hpp"
#include "mcg/zg.hpp"

using namespace mcg;
namespace fs = std::filesystem;

namespace {

std::string c(int i) { return "c" + std::to_string(i); }
std::string n(const std::string& s, int i) { return s + std::to_string(i); }
Word W(const std::string& s) { return parse_word(s); }

struct Tables {
    std::string dir;
    CurveTable table;
    Registry reg;
    DefinitionTable defs;

    void rel(const std::string& name, RelationKind kind, const std::string& lhs, const std::string& rhs) {
        reg.add(RelationInstance{name, kind, W(lhs), W(rhs)});
    }
    void def(const std::string& name, const std::string& body) { defs[name] = W(body); }

    // Solves for every curve still missing a class, using only the named
    // relations and the pair declarations made so far. Takes the least solution.
    void solve(const std::vector<std::string>& rel_names, int bound, const std::string& label) {
        std::vector<RelationInstance> cons;
        for (const auto& r : rel_names) cons.push_back(reg.at(r));
        auto res = solve_classes_detailed(table, cons, bound);
        if (res.tables.empty()) throw std::runtime_error(dir + " " + label + ": " + res.diagnostic);
        std::string names;
        for (const auto& u : res.unknowns) names += " " + u;
        table = res.tables.front();
        table.comments.push_back(label + ":" + names + " (" + std::to_string(res.tables.size()) + " solution" +
                                 (res.tables.size() == 1 ? "" : "s") + ", least taken)");
    }

    void disjoint_from_chain(const std::string& name, std::initializer_list<int> except) {
        for (int i = 1; i <= 2 * table.genus + 1; ++i) {
            bool skip = false;
            for (int e : except) skip |= e == i;
            if (!skip) table.declare_disjoint(name, c(i));
        }
    }
};

Tables chain_tables(int g, const std::string& dir) {
    Tables t;
    t.dir = dir;
    t.table = standard_chain_table(g);
    t.table.comments.push_back("genus " + std::to_string(g) + " curve classes, basis a1 b1 ... ag bg");
    return t;
}

struct Entry {
    std::string name;
    EntryManifest manifest;
    Derivation d;
    Word word;
};

struct Out {
    fs::path root;
    std::vector<Tables> tables;
    std::vector<Entry> entries;

    void add(const std::string& name, const Tables& t, const ScriptBuilder& b, const Word& base, int pw, const std::string& family,
             const std::string& row, std::map<std::string, int> params = {}) {
        Entry e;
        e.name = name;
        e.manifest.genus = t.table.genus;
        e.manifest.tables = t.dir;
        e.manifest.power = pw;
        e.manifest.family = family;
        e.manifest.row = row;
        e.manifest.params = std::move(params);
        e.d = b.derivation();
        e.word = base;
        if (power(base, pw) != b.word()) throw std::runtime_error(name + ": script does not end at the entry word");
        entries.push_back(e);
    }

    void write() {
        for (const auto& t : tables) {
            fs::create_directories(root / t.dir);
            write_file((root / t.dir / "curves.mcgc").string(), render_curve_table(t.table));
            write_file((root / t.dir / "relations.mcgr").string(), render_relations(t.reg));
            write_file((root / t.dir / "defs.mcgdef").string(), render_definitions(t.defs));
        }
        for (const auto& e : entries) {
            fs::create_directories(root / e.name);
            write_file((root / e.name / "word.mcgw").string(), render_word(e.word) + "\n");
            write_file((root / e.name / "derivation.mcgd").string(), render_derivation(e.d));
            write_file((root / e.name / "entry.mcge").string(), render_manifest(e.manifest));
        }
    }
};

// ---------------------------------------------------------------- genus 2

Tables genus2_tables() {
    Tables t = chain_tables(2, "g2");
    t.table.separating.insert("delta");
    t.disjoint_from_chain("x", {2, 3, 4});
    t.rel("C2a", RelationKind::ChainC2, "(c1 c2)^6", "delta");
    t.rel("C2b", RelationKind::ChainC2, "(c5 c4)^6", "delta");
    t.rel("L", RelationKind::Lantern, "delta x c3", "c5 c5 c1 c1");
    t.solve({"L"}, 2, "lantern L");
    // second reading of the same lantern, interior letters in the other cyclic order
    t.rel("L2", RelationKind::Lantern, "c3 delta x", "c1 c1 c5 c5");
    t.rel("K", RelationKind::Lantern, "k1 h1 c1", "c3 c3 c5 c5");
    t.solve({"K"}, 2, "lantern K");
    t.def("m", "c4^-1 c3 c4 c3^-1 c4");
    t.def("n", "c4^-1 k1 c4");
    t.def("p", "c4^-1 h1 c4");
    t.def("t2", "c3 c4 c3^-1");
    t.def("s2", "c5^-1 c4 c5");
    return t;
}

const char* X2_BASE = "c1 c2 x c3 c4 c5 c5 c4 c5 c4";

void x2(Out& out, Tables& t) {
    ScriptBuilder b(t.table, t.reg, t.defs);
    b.start(2, t.dir, W("(c1 c2)^2 (c5 c4)^-2"), {{"C2a", 1}, {"C2b", -1}});
    b.comment("(c1 c2)^2 (c5 c4)^-2, cubed at the end; chain relations C2a and C2b with opposite signs");
    b.insert("C2b", 4);
    for (long i : {16, 15, 14, 13}) b.cancel(i);
    b.check("(c1 c2)^2 delta^-1 (c5 c4)^4");
    b.subst("L", 4);
    b.check("(c1 c2)^2 x c3 c1^-1 c1^-1 c5^-1 c5^-1 (c5 c4)^4");
    b.commute_to("c1 c2 c1 c2 c1^-1 c1^-1 x c3 c5^-1 c5^-1 c5 c4 c5 c4 c5 c4 c5 c4");
    b.cancel(9);
    b.braid(1);
    b.braid(9);
    b.cancel(8);
    b.cancel(3);
    b.check("c1 c1 c2 c1^-1 x c3 c4 c5 c5 c4 c5 c4");
    b.power(3);
    b.rotate(1);
    b.reduce();
    b.check(power(W(X2_BASE), 3));
    out.add("X2", t, b, W(X2_BASE), 3, "X_g", "X2", {{"g", 2}});

    // lantern sites: site A in copy j replaces c3 c3 c5 c5 by k1 h1 c1; site B
    // (rotated frame only) then replaces c1 c1 c5 c5 by c3 delta x
    std::vector<Move> x2_moves(b.derivation().moves.begin(), b.derivation().moves.end() - 1);
    auto site_a = [&](ScriptBuilder& s, long o) {
        s.uncancel(Letter{"c3", -1}, o + 5);
        s.uncancel(Letter{"c3", -1}, o + 6);
        s.subst("K", o + 7, 1, 4, 3);
    };
    auto mnp = [&](ScriptBuilder& s, long o) {
        // c3 c4 c3^-2 k1 h1 c1 c4 -> m n p c1
        s.uncancel(Letter{"c4", -1}, o + 3);
        s.braid(o + 4);
        s.cancel(o + 6);
        s.swap(o + 9);
        s.uncancel(Letter{"c4", 1}, o + 7);
        s.uncancel(Letter{"c4", 1}, o + 10);
        s.collapse("m", o + 3);
        s.collapse("n", o + 4);
        s.collapse("p", o + 5);
    };
    for (int k = 1; k <= 6; ++k) {
        ScriptBuilder s(t.table, t.reg, t.defs);
        s.start(2, t.dir, b.derivation().base, b.derivation().base_relations);
        s.comment("X2 derivation followed by " + std::to_string(k) + " lantern insertion" + (k > 1 ? "s" : ""));
        s.replay(x2_moves);
        Word full;
        if (k <= 3) {
            for (int j = k - 1; j >= 0; --j) {
                site_a(s, 10L * j);
                mnp(s, 10L * j);
            }
            for (int j = 0; j < 3; ++j) full = concat(full, W(j < k ? "c1 c2 x m n p c1 c5 c4" : X2_BASE));
        } else {
            s.rotate(1);
            int both = k - 3;
            for (int j = 2; j >= 0; --j) {
                long o = 10L * j - 1;
                site_a(s, o);
                if (j < both) {
                    // ... k1 h1 c1 c4 c5 c4 c1 -> c2 x t2 k1 h1 delta x s2
                    s.move_letter(o + 13, o + 10);
                    s.uncancel(Letter{"c5", 1}, o + 11);
                    s.uncancel(Letter{"c5", 1}, o + 12);
                    s.subst("L2", o + 9, 1, 4, 3);
                    s.move_letter(o + 9, o + 7);
                    s.cancel(o + 6);
                    s.braid(o + 12);
                    s.cancel(o + 11);
                    s.collapse("t2", o + 3);
                    s.collapse("s2", o + 8);
                } else {
                    mnp(s, o);
                }
            }
            for (int j = 0; j < 3; ++j) full = concat(full, W(j < both ? "c2 x t2 k1 h1 delta x s2" : "c2 x m n p c1 c5 c4 c1"));
        }
        s.check(full);
        std::string name = "X2-k" + std::to_string(k);
        if (k == 6) {
            out.add(name, t, s, W("c2 x t2 k1 h1 delta x s2"), 3, "X_g,k", "X2,6", {{"g", 2}, {"k", 6}});
        } else {
            out.add(name, t, s, full, 1, "X_g,k", "X2,k", {{"g", 2}, {"k", k}});
        }
    }
}

// ------------------------------------------------- chain construction, g >= 3

std::string e_(int i) { return n("e", i); }
std::string f_(int i) { return n("f", i); }
std::string delta(int j) { return n("delta", j); }
std::string piece(int i) { return c(2 * i + 2) + " " + e_(i) + " " + c(2 * i + 2) + " " + f_(i); }

// Chain pieces, lanterns and (odd genus) the extra curves c_{2g+1+j} identified with e_j.
Tables chain_family_tables(int g, bool extras) {
    Tables t = chain_tables(g, "g" + std::to_string(g));
    for (int j = 1; j <= g - 1; ++j) t.table.separating.insert(delta(j));
    t.rel("C2first", RelationKind::ChainC2, "(c1 c2)^6", delta(1));
    for (int i = 1; i <= g - 2; ++i) {
        for (const auto& s : {e_(i), f_(i)}) {
            t.table.declare_unit(s, c(2 * i + 2));
            t.disjoint_from_chain(s, {2 * i + 2});
        }
        std::string name = "C3_" + std::to_string(i);
        t.rel(name, RelationKind::ChainC3, "(" + piece(i) + ")^3", delta(i) + " " + delta(i + 1));
        t.solve({name}, 2, "chain " + name);
    }
    t.rel("C2last", RelationKind::ChainC2, "(" + c(2 * g + 1) + " " + c(2 * g) + ")^6", delta(g - 1));
    for (int j = 1; j <= g - 1; ++j) {
        std::string lhs = delta(j) + " " + n("x", j) + " " + c(2 * j + 1);
        std::string rhs = j == 1 ? f_(1) + " " + e_(1) + " c1 c1" : f_(j) + " " + e_(j) + " " + f_(j - 1) + " " + e_(j - 1);
        if (j == g - 1) rhs = c(2 * g + 1) + " " + c(2 * g + 1) + " " + f_(g - 2) + " " + e_(g - 2);
        t.disjoint_from_chain(n("x", j), {2 * j, 2 * j + 1, 2 * j + 2});
        t.rel(n("L", j), RelationKind::Lantern, lhs, rhs);
        t.solve({n("L", j)}, 2, "lantern " + n("L", j));
    }
    t.def("d", "c1 c2 c1^-1");
    for (int j = 1; j <= g - 2; j += 2) {
        t.def(n("r", j), f_(j) + "^-1 " + c(2 * j + 2) + " " + f_(j));
        if (extras) {
            std::string extra = c(2 * g + 1 + j);
            t.table.declare_unit(extra, c(2 * j + 2));
            t.disjoint_from_chain(extra, {2 * j + 2});
            t.solve({}, 2, "extra curve " + extra);
            t.table.aliases.emplace_back(extra, e_(j));
            t.def(extra, e_(j));
        }
    }
    return t;
}

bool has(const ScriptBuilder& b, const Word& pat, long from = 0) {
    for (long i = from; i + static_cast<long>(pat.size()) <= b.size(); ++i)
        if (detail::window_equals(b.word(), i, pat)) return true;
    return false;
}

// One factor of the cubed chain-construction word: chain insertions, lantern
// substitutions, braids and cancellations, ending at the form
// c1 c1 c2 x1 c3 c1^-1 f1^-1 c4 e1 f1 e1 c4 x2 c5 ...
void chain_single_copy(ScriptBuilder& b, const Tables& t, int g) {
    std::string base = "(c1 c2)^2";
    std::vector<std::pair<std::string, int>> base_rel = {{"C2first", 1}};
    for (int i = 1; i <= g - 2; ++i) {
        int eps = i % 2 ? -1 : 1;
        base += eps < 0 ? " (" + piece(i) + ")^-1" : " " + piece(i);
        base_rel.push_back({"C3_" + std::to_string(i), eps});
    }
    int last = g % 2 ? 1 : -1;
    std::string torus = "(" + c(2 * g + 1) + " " + c(2 * g) + ")";
    base += " " + torus + (last > 0 ? "^2" : "^-2");
    base_rel.push_back({"C2last", last});
    b.start(g, t.dir, W(base), base_rel);
    b.comment(base + ", cubed at the end");

    // chain relations for the negative pieces
    for (int i = 1; i <= g - 2; i += 2) {
        long p = b.find("(" + piece(i) + ")^-1");
        b.insert("C3_" + std::to_string(i), p);
        for (long k : {13, 12, 11, 10}) b.cancel(p + k);
        b.move_letter(p, p + 9);
    }
    if (last < 0) {
        long p = b.find(torus + "^-2");
        b.insert("C2last", p);
        for (long k : {12, 11, 10, 9}) b.cancel(p + k);
    }
    for (int j = 1; j <= g - 1; ++j) b.subst(n("L", j), b.find(delta(j) + "^-1"));

    // braids on c2 c1 c2, on every c e c, and on the tail
    b.braid(1);
    for (int i = 1; i <= g - 2; ++i) {
        Word tri = W(c(2 * i + 2) + " " + e_(i) + " " + c(2 * i + 2));
        while (has(b, tri)) b.braid(b.find(tri));
    }
    std::string cl = c(2 * g + 1), cp = c(2 * g);
    if (last < 0) {
        long p = b.find(cl + "^-1 " + cl + "^-1 " + cl + " " + cp);
        b.cancel(p + 1);
        b.braid(p + 1);
        b.cancel(p);
    } else {
        long p = b.find(cl + "^-1 " + cl + "^-1 " + cl + " " + cp + " " + cl + " " + cp);
        b.braid(p + 3);
        b.cancel(p + 1);
        b.cancel(p);
    }
    b.reduce();
}

using NameSet = std::set<std::string>;

// Expanded form of a compact word: defined letters not in `keep` replaced by their bodies.
Word expand_defs(const Word& w, const DefinitionTable& defs, const NameSet& keep = {}) {
    Word out;
    for (const auto& l : w) {
        auto it = defs.find(l.curve);
        if (it == defs.end() || keep.count(l.curve)) {
            out.push_back(l);
            continue;
        }
        Word body = l.sign > 0 ? it->second : invert(it->second);
        out.insert(out.end(), body.begin(), body.end());
    }
    return out;
}

// Reorders the window [o, o + target.size()) into target by swaps.
void commute_window(ScriptBuilder& b, long o, const Word& target) {
    Word full(b.word().begin(), b.word().begin() + o);
    full.insert(full.end(), target.begin(), target.end());
    full.insert(full.end(), b.word().begin() + o + static_cast<long>(target.size()), b.word().end());
    b.commute_to(full);
}

// Brings the copy at o into `compact`: reorders its letters, then collapses the
// defined letters of `compact` that are not in `keep`, left to right.
void settle_copy(ScriptBuilder& b, long o, const Word& compact, const DefinitionTable& defs, const NameSet& keep = {}) {
    commute_window(b, o, expand_defs(compact, defs, keep));
    long pos = o;
    for (const auto& l : compact) {
        if (defs.count(l.curve) && !keep.count(l.curve)) b.collapse(l.curve, pos);
        ++pos;
    }
}

const char* X3_NEG = "c1 c1 c2 x1 c3 c1^-1 f1^-1 c4 e1 f1 e1 c4 x2 c5 c6 c7";
const char* X3_BASE = "c1 c2 x1 c3 r c8 c8 c4 x2 c5 c6 c7";
const char* X3_PLAIN = "c1 d x1 c3 r c8 c8 c4 x2 c5 c6 c7";
const char* X3_ALT = "ybar1 x1 t v s2 c8 f1 c8 s2 xbar2 r3";
const char* X3_ALT2 = "ybar1 x1 t v s2 (c1 c2 c3)^4 c8 s2 xbar2 r3";

void genus3_extras(Tables& t) {
    t.disjoint_from_chain("t", {2, 4, 6});
    t.disjoint_from_chain("v", {2, 4, 6});
    t.rel("La", RelationKind::Lantern, "f1 t v", "c7 c5 c3 c1");
    t.solve({"La"}, 2, "lantern La");
    t.rel("Ca", RelationKind::ChainC3, "(c1 c2 c3)^4", "e1 f1");
    t.rel("C3e", RelationKind::ChainC3, "(e1 c4 f1)^4", "delta1 delta2");
    t.defs.erase("r1");
    t.def("r", "f1^-1 c4 f1");
    t.def("ybar1", "c1 c1 c2 c1^-1 c1^-1");
    t.def("s2", "c5^-1 c4 c5");
    t.def("r3", "c7^-1 c6 c7");
    t.def("xbar2", "c5^-1 x2 c5");
}

// Lantern La on the copy at o (in the X3_NEG form), ending at X3_ALT.
void x3_alt_copy(ScriptBuilder& b, long o, const DefinitionTable& defs) {
    b.subst("La", o + 6);
    b.cancel_pair(o + 4, o + 9);
    b.uncancel(Letter{"c5", 1}, o + 11);
    b.uncancel(Letter{"c5", 1}, o + 17);
    settle_copy(b, o, W(X3_ALT), defs);
}

void x3_chain_copy(ScriptBuilder& b, long o) {
    long p = b.find("c8 f1", o);
    long occ = 0;
    for (long i = 0; i < p; ++i) occ += b.word()[i].curve == "c8";
    b.expand("c8", occ);
    b.subst("Ca", p, 1, 2, 12);
}

void x3(Out& out, Tables& t) {
    const long len = 16;
    ScriptBuilder b(t.table, t.reg, t.defs);
    chain_single_copy(b, t, 3);
    b.check(X3_NEG);
    std::vector<Move> neg_moves = b.derivation().moves;
    settle_copy(b, 0, W("c1 c1 c2 c1^-1 x1 c3 r e1 e1 c4 x2 c5 c6 c7"), t.defs);
    b.power(3);
    b.rotate(1);
    b.reduce();
    for (long k = 0; k < 6; ++k) b.collapse("c8", b.find("e1"));
    b.check(power(W(X3_BASE), 3));
    out.add("X3", t, b, W(X3_BASE), 3, "X_g", "X3", {{"g", 3}});

    for (int k = 1; k <= 3; ++k)
        for (int m = 0; m <= k; ++m) {
            ScriptBuilder s(t.table, t.reg, t.defs);
            s.start(3, t.dir, b.derivation().base, b.derivation().base_relations);
            s.comment("X3 single copy, cubed, lantern La in the first " + std::to_string(k) + " copies" +
                      (m ? ", chain Ca in the first " + std::to_string(m) : ""));
            s.replay(neg_moves);
            s.power(3);
            Word full;
            for (int j = 2; j >= 0; --j) {
                if (j < k) {
                    x3_alt_copy(s, len * j, t.defs);
                    if (j < m) x3_chain_copy(s, len * j);
                } else {
                    settle_copy(s, len * j, W(X3_PLAIN), t.defs);
                }
            }
            for (int j = 0; j < 3; ++j) full = concat(full, W(j < m ? X3_ALT2 : j < k ? X3_ALT : X3_PLAIN));
            s.check(full);
            std::string name = "X3-k" + std::to_string(k) + (m ? "-m" + std::to_string(m) : "");
            std::map<std::string, int> params = {{"g", 3}, {"k", k}};
            std::string fam = "X_g,k", row = "X3,k";
            if (m) params = {{"k", k}, {"m", m}}, fam = "X_3,k,m", row = "X3,k,m";
            if (k == 3 && m == k) out.add(name, t, s, W(X3_ALT2), 3, fam, row, params);
            else if (k == 3 && m == 0) out.add(name, t, s, W(X3_ALT), 3, fam, row, params);
            else out.add(name, t, s, full, 1, fam, row, params);
        }
}

// Z_g for g >= 7: single copy, settle into the compact word, cube.
void zg(Out& out, Tables& t, int g) {
    ScriptBuilder b(t.table, t.reg, t.defs);
    chain_single_copy(b, t, g);
    Word compact = detail::zg_word(g);
    Word with_e;
    for (auto l : compact) {
        auto it = t.defs.find(l.curve);
        if (it != t.defs.end() && it->second.size() == 1) l = it->second[0];
        with_e.push_back(l);
    }
    settle_copy(b, 0, with_e, t.defs);
    for (long i = 0; i < static_cast<long>(compact.size()); ++i)
        if (compact[i] != with_e[i]) b.collapse(compact[i].curve, i);
    b.check(compact);
    b.power(3);
    out.add("Z" + std::to_string(g), t, b, compact, 3, g % 2 ? "Z_g-odd" : "Z_g-even", "", {{"g", g}});
}

// ---------------------------------------------------------- genus 4, 5, 6

long occurrence(const ScriptBuilder& b, const std::string& name, long before) {
    long k = 0;
    for (long i = 0; i < before; ++i) k += b.word()[i].curve == name;
    return k;
}

// r e e c f^-1 at p -> y y c, with r = f^-1 c f and y = f^-1 c e c^-1 f
void r_to_y(ScriptBuilder& b, long p, const std::string& r, const std::string& y, const DefinitionTable& defs) {
    const Word& body = defs.at(r);
    Letter f = body[2], cc = body[1];
    b.expand(r, occurrence(b, r, p));
    b.move_letter(p + 2, p + 4);  // f^-1 c e e f c f^-1
    b.uncancel(cc.inverse(), p + 4);
    b.braid(p + 5);  // c f c -> f c f
    b.cancel(p + 7);  // f^-1 c e e c^-1 f c
    b.uncancel(cc.inverse(), p + 3);
    b.uncancel(f, p + 4);
    b.collapse(y, p);
    b.collapse(y, p + 1);
}

// f^-1 r e e c at p -> r rbar rbar, with rbar = c^-1 e c
void f_r_to_rbar(ScriptBuilder& b, long p, const std::string& r, const std::string& rbar, const DefinitionTable& defs) {
    Letter cc = defs.at(r)[1];
    b.expand(r, occurrence(b, r, p));  // f^-1 f^-1 c f e e c
    b.uncancel(cc, p + 4);
    b.braid(p + 2);
    b.cancel(p + 1);  // f^-1 c f c^-1 e e c
    b.uncancel(cc, p + 5);
    b.collapse(r, p);
    b.collapse(rbar, p + 1);
    b.collapse(rbar, p + 2);
}

// x c -> c xbar at p, with xbar = c^-1 x c
void x_conjugate(ScriptBuilder& b, long p, const std::string& xbar) {
    b.uncancel(b.word()[p + 1], p);
    b.collapse(xbar, p + 1);
}

void collapse_at(ScriptBuilder& b, const std::string& def, const DefinitionTable& defs) { b.collapse(def, b.find(defs.at(def))); }

// Chain construction single copy settled into the achiral compact word.
void chain_compact(ScriptBuilder& b, const Tables& t, int g) {
    chain_single_copy(b, t, g);
    Word z = detail::zg_word(g, false);
    settle_copy(b, 0, z, t.defs);
    b.check(z);
}

void cube_and_rotate(ScriptBuilder& b) {
    b.expand("d", 0);
    b.power(3);
    b.rotate(1);
    b.reduce();
}

const char* Y4_S = "c1 d x1 c3 r1 e1 e1 c4 f1^-1 x2 t v s3 xbar3 c8 c9 c9 c8 c8";
const char* Y4_BASE = "c1 c2 x1 c3 y2 y2 c4 x2 t v s3 xbar3 c8 c9 c9 c8 c8";
const char* Y4_PLAIN = "c1 d x1 c3 y2 y2 c4 x2 t v s3 xbar3 c8 c9 c9 c8 c8";
const char* Y4_ALT = "ybar1 x1 u1 e1 e1 sbar2 t1_4 v1_4 w z s3 xbar3 r4 c9 c8 c8";

void genus4_extras(Tables& t) {
    t.disjoint_from_chain("t", {4, 6, 8});
    t.disjoint_from_chain("v", {4, 6, 8});
    t.rel("Lb", RelationKind::Lantern, "f2 t v", "c9 c7 c5 f1");
    t.disjoint_from_chain("t1_4", {2, 4, 6, 8});
    t.disjoint_from_chain("v1_4", {2, 4, 6, 8});
    t.rel("Lc", RelationKind::Lantern, "f1 t1_4 v1_4", "c9 v c3 c1");
    t.solve({"Lb", "Lc"}, 2, "lanterns Lb Lc");
    t.def("xbar3", "c7^-1 x3 c7");
    t.def("s3", "c7^-1 c6 c7");
    t.def("y2", "f1^-1 c4 e1 c4^-1 f1");
    t.def("ybar1", "c1 c1 c2 c1^-1 c1^-1");
    t.def("u1", "c3 r1 c3^-1");
    t.def("sbar2", "c3 c4 c3^-1");
    t.def("w", "v^-1 x2 v");
    t.def("z", "v^-1 t v");
    t.def("r4", "c9^-1 c8 c9");
}

void y4_alt_copy(ScriptBuilder& b, long o, const DefinitionTable& defs) {
    b.subst("Lc", o + 8);
    b.expand("d", occurrence(b, "d", o + 1));
    b.uncancel(Letter{"c3", -1}, o + 7);
    b.uncancel(Letter{"v", 1}, b.find("x2", o) + 1);
    settle_copy(b, o, W(Y4_ALT), defs, {"s3", "xbar3"});
}

void y4(Out& out, Tables& t) {
    ScriptBuilder b(t.table, t.reg, t.defs);
    chain_compact(b, t, 4);
    b.subst("Lb", 10);
    b.commute_to("c1 d x1 c3 r1 e1 e1 c4 f1^-1 x2 c5 t v c5^-1 c7^-1 c6 x3 c7 c9^-1 c8 c9 c9 c8 c9 c8");
    b.cancel_pair(10, 13);
    x_conjugate(b, b.find("x3 c7"), "xbar3");
    b.braid(b.find("c9 c8 c9"));
    collapse_at(b, "s3", t.defs);
    long q = b.find("c8 c9 c8");
    b.braid(q);
    b.cancel(q - 1);
    b.check(Y4_S);
    std::vector<Move> pre = b.derivation().moves;
    r_to_y(b, 4, "r1", "y2", t.defs);
    b.check(Y4_PLAIN);
    cube_and_rotate(b);
    b.check(power(W(Y4_BASE), 3));
    out.add("Y4", t, b, W(Y4_BASE), 3, "Y4", "Y4");

    const long len = static_cast<long>(W(Y4_S).size());
    for (int k = 1; k <= 3; ++k) {
        ScriptBuilder s(t.table, t.reg, t.defs);
        s.start(4, t.dir, b.derivation().base, b.derivation().base_relations);
        s.comment("Y4 single copy, cubed, lantern Lc in the first " + std::to_string(k) + " copies");
        s.replay(pre);
        s.power(3);
        Word full;
        for (int j = 2; j >= 0; --j) {
            if (j < k)
                y4_alt_copy(s, len * j, t.defs);
            else
                r_to_y(s, len * j + 4, "r1", "y2", t.defs);
        }
        for (int j = 0; j < 3; ++j) full = concat(full, W(j < k ? Y4_ALT : Y4_PLAIN));
        s.check(full);
        std::string name = "Y4-k" + std::to_string(k);
        if (k == 3)
            out.add(name, t, s, W(Y4_ALT), 3, "Y4,k", "Y4,k", {{"k", k}});
        else
            out.add(name, t, s, full, 1, "Y4,k", "Y4,k", {{"k", k}});
    }
}

const char* Y5_BASE = "c1 c2 x1 c3 y2 y2 c4 x2 t v s3 xbar3 r3 rbar3 rbar3 x4 c9 c10 c11";

void genus5_extras(Tables& t) {
    t.disjoint_from_chain("t", {4, 6, 8});
    t.disjoint_from_chain("v", {4, 6, 8});
    t.rel("Lb", RelationKind::Lantern, "f2 t v", "f3 c7 c5 f1");
    t.solve({"Lb"}, 2, "lantern Lb");
    t.def("xbar3", "c7^-1 x3 c7");
    t.def("s3", "c7^-1 c6 c7");
    t.def("y2", "f1^-1 c4 e1 c4^-1 f1");
    t.def("rbar3", "c8^-1 e3 c8");
}

void y5(Out& out, Tables& t) {
    ScriptBuilder b(t.table, t.reg, t.defs);
    chain_compact(b, t, 5);
    b.subst("Lb", 10);
    b.commute_to("c1 d x1 c3 r1 e1 e1 c4 f1^-1 x2 c5 t v c5^-1 c7^-1 c6 x3 c7 f3^-1 r3 e3 e3 c8 x4 c9 c10 c11");
    b.cancel_pair(10, 13);
    x_conjugate(b, b.find("x3 c7"), "xbar3");
    collapse_at(b, "s3", t.defs);
    r_to_y(b, 4, "r1", "y2", t.defs);
    f_r_to_rbar(b, b.find("f3^-1 r3"), "r3", "rbar3", t.defs);
    b.check("c1 d x1 c3 y2 y2 c4 x2 t v s3 xbar3 r3 rbar3 rbar3 x4 c9 c10 c11");
    cube_and_rotate(b);
    b.check(power(W(Y5_BASE), 3));
    out.add("Y5", t, b, W(Y5_BASE), 3, "Y5", "Y5");
}

const char* Y6_BASE = "u1 xbar1 y2 y2 c4 x2 t2_4 s3 xbar3_2 t2_6 t1_2_6 v1_6 y4_6 y4_6 c8_12 x4_5 tbar4_6 s5 xbar5 w6 c12 c13";

void genus6_extras(Tables& t) {
    t.disjoint_from_chain("t2_4", {4, 6, 8});
    t.disjoint_from_chain("v2_4", {4, 6, 8});
    t.rel("Ld", RelationKind::Lantern, "f2 t2_4 v2_4", "f3 c7 c5 f1");
    t.disjoint_from_chain("t4_6", {8, 10, 12});
    t.disjoint_from_chain("v4_6", {8, 10, 12});
    t.rel("Le", RelationKind::Lantern, "f4 t4_6 v4_6", "c13 c11 c9 f3");
    t.disjoint_from_chain("t2_6", {4, 6, 8, 10, 12});
    t.disjoint_from_chain("v2_6", {4, 6, 8, 10, 12});
    t.rel("Lf", RelationKind::Lantern, "f3 t2_6 v2_6", "c13 v4_6 v2_4 f1");
    t.disjoint_from_chain("t1_6", {2, 4, 6, 8, 10, 12});
    t.disjoint_from_chain("v1_6", {2, 4, 6, 8, 10, 12});
    t.rel("Lg", RelationKind::Lantern, "f1 t1_6 v1_6", "c13 v2_6 c3 c1");
    t.solve({"Ld", "Le", "Lf", "Lg"}, 1, "lanterns Ld Le Lf Lg");
    t.def("xbar1", "c3^-1 x1 c3");
    t.def("xbar3", "c7^-1 x3 c7");
    t.def("xbar5", "c11^-1 x5 c11");
    t.def("s3", "c7^-1 c6 c7");
    t.def("s5", "c11^-1 c10 c11");
    t.def("s6", "c13^-1 c12 c13");
    t.def("y2", "f1^-1 c4 e1 c4^-1 f1");
    t.def("y4", "f3^-1 c8 e3 c8^-1 f3");
    t.def("tbar4_6", "v4_6^-1 t4_6 v4_6");
    t.def("y4_6", "v4_6^-1 y4 v4_6");
    t.def("c8_12", "v4_6^-1 c8 v4_6");
    t.def("x4_5", "v4_6^-1 x4 v4_6");
    t.def("xbar3_2", "v2_4 xbar3 v2_4^-1");
    t.def("y6", "c13^-1 s6 c13");
    t.def("t1_2_6", "v2_6 t1_6 v2_6^-1");
    t.def("w6", "c13^-1 y6 c13");
    t.def("u1", "c3^-1 d c3");
}

void y6(Out& out, Tables& t) {
    ScriptBuilder b(t.table, t.reg, t.defs);
    chain_compact(b, t, 6);
    b.subst("Ld", b.find("f2^-1"));
    b.subst("Le", b.find("f4^-1"));
    b.cancel_pair(b.find("c5"), b.find("c5^-1"));
    b.cancel_pair(b.find("c9"), b.find("c9^-1"));
    x_conjugate(b, b.find("x3 c7"), "xbar3");
    x_conjugate(b, b.find("x5 c11"), "xbar5");
    b.commute_to("c1 d x1 c3 r1 e1 e1 c4 f1^-1 x2 t2_4 v2_4 c7^-1 c6 c7 xbar3 f3^-1 r3 e3 e3 c8 f3^-1 x4 t4_6 v4_6 "
                 "c11^-1 c10 c11 xbar5 c13^-1 c12 c13 c13 c12 c13 c12");
    r_to_y(b, b.find("r1"), "r1", "y2", t.defs);
    r_to_y(b, b.find("r3"), "r3", "y4", t.defs);
    for (const char* s : {"s3", "s5", "s6"}) collapse_at(b, s, t.defs);
    b.check("c1 d x1 c3 y2 y2 c4 x2 t2_4 v2_4 s3 xbar3 f3^-1 y4 y4 c8 x4 t4_6 v4_6 s5 xbar5 s6 c13 c12 c13 c12");

    b.subst("Lf", b.find("f3^-1"));
    long p = b.find("t4_6 v4_6");
    b.uncancel(Letter{"v4_6", 1}, p);
    b.collapse("tbar4_6", p + 1);
    b.commute_to("c1 d x1 c3 y2 y2 c4 x2 t2_4 s3 v2_4 xbar3 v2_4^-1 t2_6 v2_6 f1^-1 v4_6^-1 y4 y4 c8 x4 v4_6 tbar4_6 "
                 "s5 xbar5 c13^-1 s6 c13 c12 c13 c12");
    p = b.find("v4_6^-1 y4");
    for (long k : {2, 5, 8}) b.uncancel(Letter{"v4_6", 1}, p + k);
    b.collapse("y4_6", p);
    b.collapse("y4_6", p + 1);
    b.collapse("c8_12", p + 2);
    b.collapse("x4_5", p + 3);
    collapse_at(b, "xbar3_2", t.defs);
    collapse_at(b, "y6", t.defs);
    b.check("c1 d x1 c3 y2 y2 c4 x2 t2_4 s3 xbar3_2 t2_6 v2_6 f1^-1 y4_6 y4_6 c8_12 x4_5 tbar4_6 s5 xbar5 y6 c12 c13 c12");

    b.subst("Lg", b.find("f1^-1"));
    b.commute_to("c1 d x1 c3 y2 y2 c4 x2 t2_4 s3 xbar3_2 t2_6 v2_6 t1_6 v2_6^-1 v1_6 y4_6 y4_6 c8_12 x4_5 tbar4_6 s5 xbar5 "
                 "c13^-1 y6 c12 c13 c12 c1^-1 c3^-1");
    b.braid(b.find("c12 c13 c12"));
    collapse_at(b, "t1_2_6", t.defs);
    collapse_at(b, "w6", t.defs);
    b.check("c1 d x1 c3 y2 y2 c4 x2 t2_4 s3 xbar3_2 t2_6 t1_2_6 v1_6 y4_6 y4_6 c8_12 x4_5 tbar4_6 s5 xbar5 w6 c12 c13 c1^-1 c3^-1");

    // c1^-1 meets the c1 of the next copy; c3^-1 then opens each copy
    b.power(3);
    b.rotate(1);
    b.reduce();
    b.rotate(b.size() - 1);
    const long len = b.size() / 3;
    for (long j = 2; j >= 0; --j) {
        b.uncancel(Letter{"c3", 1}, len * j + 2);
        b.collapse("u1", len * j);
        b.collapse("xbar1", len * j + 1);
    }
    b.check(power(W(Y6_BASE), 3));
    out.add("Y6", t, b, W(Y6_BASE), 3, "Y6", "Y6");
}

// ------------------------------------------------------------- genus 4 rose

// Three handles a_i b_i glued around a central piece carrying the star arms
// alpha_i and core d. Basis: a_i, b_i for the handles, alpha1 and d for the last.
Tables rose_tables() {
    Tables t;
    t.dir = "g4-rose";
    t.table.genus = 4;
    t.table.comments.push_back("genus 4 rose: basis a1 b1 a2 b2 a3 b3 alpha1 d");
    auto basis = [&](const std::string& name, int k) {
        HomologyClass v(8, 0);
        v[static_cast<std::size_t>(k)] = 1;
        t.table.classes[name] = v;
    };
    std::vector<std::string> hb;
    for (int i = 1; i <= 3; ++i) {
        basis(n("a", i), 2 * i - 2);
        basis(n("b", i), 2 * i - 1);
        t.table.declare_unit(n("a", i), n("b", i));
        hb.push_back(n("a", i));
        hb.push_back(n("b", i));
    }
    basis("alpha1", 6);
    basis("d", 7);
    t.table.declare_unit("alpha1", "d");
    for (std::size_t i = 0; i < hb.size(); ++i) {
        for (std::size_t j = i + 1; j < hb.size(); ++j)
            if (hb[i].substr(1) != hb[j].substr(1)) t.table.declare_disjoint(hb[i], hb[j]);
        t.table.declare_disjoint(hb[i], "alpha1");
        t.table.declare_disjoint(hb[i], "d");
    }
    for (int i = 1; i <= 3; ++i) t.table.separating.insert(n("delta", i));
    for (const char* a : {"alpha2", "alpha3"})
        for (const auto& h : hb) t.table.declare_disjoint(a, h);
    t.rel("Star", RelationKind::Star, "(alpha1 alpha2 alpha3 d)^3", "delta3 delta2 delta1");
    t.solve({"Star"}, 2, "star");
    for (int i = 1; i <= 3; ++i) {
        std::string ai = n("a", i), bi = n("b", i), next = n("alpha", i % 3 + 1);
        t.rel(n("C2_", i), RelationKind::ChainC2, "(" + bi + " " + ai + ")^6", n("delta", i));
        for (const auto& u : {n("x", i), n("c", i)})
            for (const auto& h : hb)
                if (h != bi) t.table.declare_disjoint(u, h);
        std::string rhs = i < 3 ? next + " " + n("alpha", i) + " " + ai + " " + ai : "alpha1 alpha3 a3 a3";
        t.rel(n("L", i), RelationKind::Lantern, n("delta", i) + " " + n("x", i) + " " + n("c", i), rhs);
        t.solve({n("L", i)}, 2, "lantern " + n("L", i));
    }
    for (const char* u : {"t", "v"})
        for (const char* h : {"a1", "a2", "a3", "b3"}) t.table.declare_disjoint(u, h);
    t.rel("La", RelationKind::Lantern, "alpha2 t v", "a1 a2 c1 c2");
    t.solve({"La"}, 2, "lantern La");
    t.def("r", "alpha3^-1 alpha2^-1 alpha1^-1 d alpha1 alpha2 alpha3");
    t.def("g1", "a1 b1 a1^-1");
    t.def("g2", "a2 b2 a2^-1");
    return t;
}

const char* X4_BASE = "a1 b1 a2 b2 a3 b3 x1 c1 x2 c2 x3 c3 r d";
const char* X4_ALT = "g1 g2 a3 b3 x1 x2 alpha2 t v x3 c3 r d";

// Lantern La on the copy at o, in the X4_BASE form.
void x4_alt_copy(ScriptBuilder& b, long o, const DefinitionTable& defs) {
    b.uncancel(Letter{"a1", -1}, o + 2);
    b.uncancel(Letter{"a2", -1}, o + 6);
    commute_window(b, o, W("a1 b1 a1^-1 a2 b2 a2^-1 a3 b3 x1 x2 a1 a2 c1 c2 x3 c3 r d"));
    b.subst("La", o + 10, 1, 4, 3);
    settle_copy(b, o, W(X4_ALT), defs, {"r"});
}

void x4(Out& out, Tables& t) {
    ScriptBuilder b(t.table, t.reg, t.defs);
    b.start(4, t.dir, W("(b1 a1)^2 (b2 a2)^2 (b3 a3)^2 (alpha1 alpha2 alpha3 d)^-1"),
            {{"C2_1", 1}, {"C2_2", 1}, {"C2_3", 1}, {"Star", -1}});
    b.comment("(b1 a1)^2 (b2 a2)^2 (b3 a3)^2 (alpha1 alpha2 alpha3 d)^-1, cubed at the end");
    b.insert("Star", 12);
    for (long k : {26, 25, 24, 23}) b.cancel(k);
    for (int i = 1; i <= 3; ++i) b.subst(n("L", i), b.find(n("delta", i) + "^-1"));
    b.reduce();
    for (int i = 1; i <= 3; ++i) b.braid(b.find(n("b", i) + " " + n("a", i) + " " + n("b", i)));
    b.reduce();
    settle_copy(b, 0, W(X4_BASE), t.defs);
    b.check(X4_BASE);
    b.power(3);
    std::vector<Move> moves = b.derivation().moves;
    out.add("X4", t, b, W(X4_BASE), 3, "X_g", "X4", {{"g", 4}});

    const long len = static_cast<long>(W(X4_BASE).size());
    for (int k = 1; k <= 3; ++k) {
        ScriptBuilder s(t.table, t.reg, t.defs);
        s.start(4, t.dir, b.derivation().base, b.derivation().base_relations);
        s.comment("X4 from the rose, cubed, lantern La in the first " + std::to_string(k) + " copies");
        s.replay(moves);
        Word full;
        for (int j = k - 1; j >= 0; --j) x4_alt_copy(s, len * j, t.defs);
        for (int j = 0; j < 3; ++j) full = concat(full, W(j < k ? X4_ALT : X4_BASE));
        s.check(full);
        std::string name = "X4-k" + std::to_string(k);
        if (k == 3)
            out.add(name, t, s, W(X4_ALT), 3, "X_g,k", "X4,k", {{"g", 4}, {"k", k}});
        else
            out.add(name, t, s, full, 1, "X_g,k", "X4,k", {{"g", 4}, {"k", k}});
    }
}

} // namespace

int main(int argc, char** argv) {
    Out out;
    out.root = argc > 1 ? argv[1] : "corpus";
    try {
        Tables g2 = genus2_tables();
        x2(out, g2);
        out.tables.push_back(g2);
        Tables g3 = chain_family_tables(3, true);
        genus3_extras(g3);
        x3(out, g3);
        out.tables.push_back(g3);
        Tables g4 = chain_family_tables(4, false);
        genus4_extras(g4);
        y4(out, g4);
        out.tables.push_back(g4);
        Tables rose = rose_tables();
        x4(out, rose);
        out.tables.push_back(rose);
        Tables g5 = chain_family_tables(5, false);
        genus5_extras(g5);
        y5(out, g5);
        out.tables.push_back(g5);
        Tables g6 = chain_family_tables(6, false);
        genus6_extras(g6);
        y6(out, g6);
        out.tables.push_back(g6);
        for (int g = 7; g <= 12; ++g) {
            Tables tz = chain_family_tables(g, g % 2 == 1);
            zg(out, tz, g);
            out.tables.push_back(tz);
        }
        out.write();
    } catch (const std::exception& e) {
        std::cerr << "gen_corpus: " << e.what() << "\n";
        return 1;
    }
    std::cout << "wrote " << out.tables.size() << " tables and " << out.entries.size() << " entries to " << out.root << "\n";
    return 0;
}
