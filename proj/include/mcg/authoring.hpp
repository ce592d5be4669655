#pragma once

#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "rewrite.hpp"

namespace mcg {

// Helper for writing derivation scripts in code. Every step goes through
// apply_move, so a script that builds here replays identically from the file.
// Swaps and braids declare the pairs they use; a pair is accepted only if its
// homology is right and the two curves are not interior curves of one lantern.
class ScriptBuilder {
public:
    ScriptBuilder(CurveTable& table, Registry& registry, DefinitionTable& defs) : table_(table), registry_(registry), defs_(defs) {}

    void start(int genus, const std::string& tables, const Word& base, std::vector<std::pair<std::string, int>> base_relations = {}) {
        d_ = Derivation{};
        d_.genus = genus;
        d_.tables = tables;
        d_.base = base;
        d_.base_relations = std::move(base_relations);
        w_ = base;
        ledger_ = base_ledger(d_, registry_);
    }

    // replays an existing derivation's moves on top of the current word
    void replay(const std::vector<Move>& moves) {
        for (const auto& m : moves) apply(m);
    }

    const Word& word() const { return w_; }
    long size() const { return static_cast<long>(w_.size()); }
    const Derivation& derivation() const { return d_; }
    Derivation& derivation() { return d_; }
    const SignatureLedger& ledger() const { return ledger_; }
    void comment(const std::string& c) { d_.comments.push_back(c); }

    void apply(const Move& m) {
        RewriteContext ctx{table_, registry_, defs_};
        try {
            w_ = apply_move(w_, m, ctx, &ledger_);
        } catch (const std::exception& e) {
            throw std::runtime_error("authoring step " + std::to_string(d_.moves.size()) + " '" + render_move(m) + "' on '" +
                                     render_word(w_) + "': " + e.what());
        }
        d_.moves.push_back(m);
    }

    // ---- primitive moves ----
    void insert(const std::string& rel, long pos, int dir = 1) { apply(mk(Move::Op::Insert, rel, pos, dir)); }
    void subst(const std::string& rel, long pos, int dir = 1, long span = 1, long offset = 0) {
        Move m = mk(Move::Op::Subst, rel, pos, dir);
        m.span = span;
        m.offset = offset;
        apply(m);
    }
    void cancel(long pos) { apply(mk(Move::Op::Cancel, "", pos)); }
    void uncancel(const Letter& l, long pos) {
        Move m = mk(Move::Op::Uncancel, "", pos);
        m.letter = l;
        apply(m);
    }
    void swap(long pos) {
        need_disjoint(w_.at(static_cast<std::size_t>(pos)).curve, w_.at(static_cast<std::size_t>(pos) + 1).curve);
        apply(mk(Move::Op::Swap, "", pos));
    }
    // aba -> bab at pos; the direction follows the registered instance
    void braid(long pos) {
        if (pos < 0 || pos + 3 > size()) throw std::runtime_error("braid position out of range");
        Word win(w_.begin() + pos, w_.begin() + pos + 3);
        if (win[0].sign < 0) win = invert(win);
        apply(mk(Move::Op::Braid, "", pos, need_braid(win[0].curve, win[1].curve)));
    }
    void rotate(long k) { apply(mk(Move::Op::Rotate, "", k)); }
    void expand(const std::string& def, long occ) { apply(mk(Move::Op::Expand, def, occ)); }
    void collapse(const std::string& def, long pos) { apply(mk(Move::Op::Collapse, def, pos)); }
    void power(int n) { apply(mk(Move::Op::Power, "", n)); }
    void check(const Word& expect) {
        Move m = mk(Move::Op::Assert, "", 0);
        m.word = expect;
        apply(m);
    }
    void check(const std::string& expect) { check(parse_word(expect)); }

    // ---- search helpers (authoring only) ----

    // Position of the first occurrence of pat at or after `from`.
    long find(const Word& pat, long from = 0) const {
        for (long i = std::max(0L, from); i + static_cast<long>(pat.size()) <= size(); ++i)
            if (detail::window_equals(w_, i, pat)) return i;
        throw std::runtime_error("pattern '" + render_word(pat) + "' not found from " + std::to_string(from) + " in '" + render_word(w_) + "'");
    }
    long find(const std::string& pat, long from = 0) const { return find(parse_word(pat), from); }

    // Position of the occ-th occurrence (0-based) of a letter.
    long nth(const Letter& l, long occ = 0) const {
        long seen = 0;
        for (long i = 0; i < size(); ++i)
            if (w_[i] == l && seen++ == occ) return i;
        throw std::runtime_error("occurrence " + std::to_string(occ) + " of " + render_letter(l) + " not found in '" + render_word(w_) + "'");
    }

    bool may_commute(const std::string& a, const std::string& b) const {
        if (a == b) return false;
        HomologyModel m(table_, defs_);
        if (intersection(m.class_of(a), m.class_of(b)) != 0) return false;
        return !co_interior(a, b);
    }

    // Moves the letter at `from` to index `to` by adjacent swaps.
    void move_letter(long from, long to) {
        while (from < to) swap(from++);
        while (from > to) swap(--from);
    }

    // Reorders the word into `target`, which must be a permutation of it, using swaps only.
    void commute_to(const Word& target) {
        if (target.size() != w_.size()) throw std::runtime_error("commute_to: length differs, target '" + render_word(target) + "' from '" + render_word(w_) + "'");
        std::map<Letter, std::vector<long>> slots;
        for (long i = 0; i < static_cast<long>(target.size()); ++i) slots[target[i]].push_back(i);
        std::map<Letter, std::size_t> used;
        std::vector<long> rank(w_.size());
        for (std::size_t i = 0; i < w_.size(); ++i) {
            auto& s = slots[w_[i]];
            if (used[w_[i]] >= s.size()) throw std::runtime_error("commute_to: '" + render_word(target) + "' is not a permutation of '" + render_word(w_) + "'");
            rank[i] = s[used[w_[i]]++];
        }
        for (bool changed = true; changed;) {
            changed = false;
            for (std::size_t i = 0; i + 1 < rank.size(); ++i)
                if (rank[i] > rank[i + 1]) {
                    swap(static_cast<long>(i));
                    std::swap(rank[i], rank[i + 1]);
                    changed = true;
                }
        }
    }
    void commute_to(const std::string& target) { commute_to(parse_word(target)); }

    // Cancels w[i] against a later inverse at j, sliding w[j] left through letters it commutes with.
    void cancel_pair(long i, long j) {
        if (w_[j] != w_[i].inverse()) throw std::runtime_error("cancel_pair: not inverse letters");
        move_letter(j, i + 1);
        cancel(i);
    }

    // Repeatedly cancels a letter against the nearest later inverse that it can reach
    // through commuting letters. Returns the number of pairs removed.
    int reduce() {
        int removed = 0;
        for (bool again = true; again;) {
            again = false;
            for (long i = 0; i < size() && !again; ++i)
                for (long j = i + 1; j < size(); ++j) {
                    if (w_[j] == w_[i].inverse()) {
                        cancel_pair(i, j);
                        ++removed;
                        again = true;
                        break;
                    }
                    if (!may_commute(w_[j].curve, w_[i].curve)) break;
                }
        }
        return removed;
    }

    // Reaches `target` by reduce() followed by commute_to().
    void reach(const Word& target) {
        reduce();
        commute_to(target);
    }
    void reach(const std::string& target) { reach(parse_word(target)); }

    // Pairs used so far, so callers can report them.
    const std::set<NamePair>& used_disjoint() const { return used_disjoint_; }

private:
    CurveTable& table_;
    Registry& registry_;
    DefinitionTable& defs_;
    Derivation d_;
    Word w_;
    SignatureLedger ledger_;
    std::set<NamePair> used_disjoint_;

    static Move mk(Move::Op op, const std::string& name, long pos, int dir = 1) {
        Move m;
        m.op = op;
        m.name = name;
        m.pos = pos;
        m.dir = dir;
        return m;
    }

    bool co_interior(const std::string& a, const std::string& b) const {
        for (const auto& r : registry_.instances) {
            if (r.kind != RelationKind::Lantern) continue;
            bool ha = false, hb = false;
            for (const auto& l : r.lhs) ha |= l.curve == a, hb |= l.curve == b;
            if (ha && hb) return true;
        }
        return false;
    }

    void need_disjoint(const std::string& a, const std::string& b) {
        if (table_.is_disjoint(a, b)) return;
        if (!may_commute(a, b)) throw std::runtime_error("authoring: refusing to commute " + a + " and " + b + " in '" + render_word(w_) + "'");
        table_.declare_disjoint(a, b);
        used_disjoint_.insert(ordered_pair(a, b));
    }

    int need_braid(const std::string& a, const std::string& b) {
        HomologyModel m(table_, defs_);
        auto v = intersection(m.class_of(a), m.class_of(b));
        if (v != 1 && v != -1) throw std::runtime_error("authoring: " + a + " and " + b + " do not meet once");
        table_.declare_unit(a, b);
        // the registered instance reads lhs -> rhs for fwd
        Word from = {Letter{a, 1}, Letter{b, 1}, Letter{a, 1}};
        Word to = {Letter{b, 1}, Letter{a, 1}, Letter{b, 1}};
        for (const auto& r : registry_.instances)
            if (r.kind == RelationKind::Braid && ((r.lhs == from && r.rhs == to) || (r.lhs == to && r.rhs == from)))
                return r.lhs == from ? 1 : -1;
        RelationInstance r;
        r.name = "braid_" + a + "_" + b;
        r.kind = RelationKind::Braid;
        r.lhs = from;
        r.rhs = to;
        registry_.add(r);
        return 1;
    }
};

} // namespace mcg
