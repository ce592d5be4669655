#pragma once

#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "curve_table.hpp"
#include "relation.hpp"
#include "word.hpp"

namespace mcg {

struct Move {
    enum class Op { Insert, Subst, Cancel, Uncancel, Swap, Braid, Rotate, Expand, Collapse, Power, Assert };
    Op op = Op::Cancel;
    std::string name;  // relation or definition name
    long pos = 0;      // position, occurrence index, rotation amount or power
    int dir = 1;       // +1 fwd, -1 rev
    long span = 1;     // subst only
    long offset = 0;   // subst only
    Letter letter;     // uncancel only
    Word word;         // assert only
    int line = 0;      // source line in the script, 0 if built in code
};

struct LedgerEntry {
    std::string relation;
    RelationKind kind;
    int orientation;
    bool base = false;

    int contribution() const { return orientation * signature_of(kind); }
    friend bool operator==(const LedgerEntry&, const LedgerEntry&) = default;
};

struct SignatureLedger {
    std::vector<LedgerEntry> entries;
};

inline int ledger_total(const SignatureLedger& l) {
    int s = 0;
    for (const auto& e : l.entries) s += e.contribution();
    return s;
}

// Counts per (relation, orientation), in first-seen order, e.g. "C2b:+3".
inline std::string render_ledger(const SignatureLedger& l) {
    std::vector<std::pair<std::string, int>> keys;
    std::vector<int> counts;
    for (const auto& e : l.entries) {
        std::string k = e.relation + (e.base ? "(base)" : "");
        bool hit = false;
        for (std::size_t i = 0; i < keys.size(); ++i)
            if (keys[i].first == k && keys[i].second == e.orientation) {
                ++counts[i];
                hit = true;
            }
        if (!hit) {
            keys.emplace_back(k, e.orientation);
            counts.push_back(1);
        }
    }
    std::string out;
    for (std::size_t i = 0; i < keys.size(); ++i)
        out += (i ? " " : "") + keys[i].first + ":" + (keys[i].second > 0 ? "+" : "-") + std::to_string(counts[i]);
    return out;
}

struct Derivation {
    int genus = 0;
    std::string tables;  // table directory name, defaults to g<genus>
    Word base;
    std::vector<std::pair<std::string, int>> base_relations;
    std::vector<Move> moves;
    std::vector<std::string> comments;

    std::optional<Word> expected_final() const {
        if (!moves.empty() && moves.back().op == Move::Op::Assert) return moves.back().word;
        return std::nullopt;
    }
};

class MoveError : public std::runtime_error {
public:
    MoveError(std::size_t step, int line, const std::string& why)
        : std::runtime_error("step " + std::to_string(step) + (line ? " (line " + std::to_string(line) + ")" : "") + ": " + why),
          step_(step), reason_(why) {}
    std::size_t step() const { return step_; }
    const std::string& reason() const { return reason_; }

private:
    std::size_t step_;
    std::string reason_;
};

struct RewriteContext {
    const CurveTable& table;
    const Registry& registry;
    const DefinitionTable& defs;
};

namespace detail {

inline std::string dir_name(int d) { return d > 0 ? "fwd" : "rev"; }

inline bool window_equals(const Word& w, long i, const Word& pat) {
    if (i < 0 || static_cast<std::size_t>(i) + pat.size() > w.size()) return false;
    for (std::size_t k = 0; k < pat.size(); ++k)
        if (w[static_cast<std::size_t>(i) + k] != pat[k]) return false;
    return true;
}

inline Word splice(const Word& w, long i, long len, const Word& repl) {
    Word out(w.begin(), w.begin() + i);
    out.insert(out.end(), repl.begin(), repl.end());
    out.insert(out.end(), w.begin() + i + len, w.end());
    return out;
}

// The relation read as an identity word in the chosen direction.
inline Word oriented_relator(const RelationInstance& r, int dir) { return dir > 0 ? r.relator() : invert(r.relator()); }

} // namespace detail

// Applies one move. Ledger entries (if any) are appended to `ledger`.
inline Word apply_move(const Word& w, const Move& m, const RewriteContext& ctx, SignatureLedger* ledger = nullptr) {
    auto fail = [&](const std::string& why) -> Word { throw std::invalid_argument(why); };
    long n = static_cast<long>(w.size());
    auto check_pos = [&](long need) {
        if (m.pos < 0 || m.pos + need > n)
            throw std::invalid_argument("position " + std::to_string(m.pos) + " out of range for word of length " + std::to_string(n));
    };
    switch (m.op) {
    case Move::Op::Insert: {
        const auto* r = ctx.registry.find(m.name);
        if (!r) return fail("unknown relation '" + m.name + "'");
        if (m.pos < 0 || m.pos > n) return fail("insert position out of range");
        Word piece = m.dir > 0 ? concat(invert(r->rhs), r->lhs) : concat(invert(r->lhs), r->rhs);
        if (ledger) ledger->entries.push_back({r->name, r->kind, m.dir, false});
        return detail::splice(w, m.pos, 0, piece);
    }
    case Move::Op::Subst: {
        const auto* r = ctx.registry.find(m.name);
        if (!r) return fail("unknown relation '" + m.name + "'");
        Word rel = detail::oriented_relator(*r, m.dir);
        long len = static_cast<long>(rel.size());
        if (m.span < 1 || m.span > len) return fail("span out of range");
        if (m.offset < 0 || m.offset >= len) return fail("offset out of range");
        rel = cyclic_rotate(rel, m.offset);
        Word head(rel.begin(), rel.begin() + m.span);
        Word tail(rel.begin() + m.span, rel.end());
        check_pos(m.span);
        if (!detail::window_equals(w, m.pos, invert(head)))
            return fail("subst " + m.name + " " + detail::dir_name(m.dir) + ": expected '" + render_word(invert(head)) + "' at " +
                        std::to_string(m.pos));
        if (ledger) ledger->entries.push_back({r->name, r->kind, m.dir, false});
        return detail::splice(w, m.pos, m.span, tail);
    }
    case Move::Op::Cancel:
        check_pos(2);
        if (w[m.pos] != w[m.pos + 1].inverse()) return fail("no inverse pair at " + std::to_string(m.pos));
        return detail::splice(w, m.pos, 2, {});
    case Move::Op::Uncancel:
        if (m.pos < 0 || m.pos > n) return fail("uncancel position out of range");
        return detail::splice(w, m.pos, 0, {m.letter, m.letter.inverse()});
    case Move::Op::Swap: {
        check_pos(2);
        const auto& a = w[m.pos];
        const auto& b = w[m.pos + 1];
        if (a.curve == b.curve) return fail("swap of a letter with itself at " + std::to_string(m.pos));
        if (!ctx.table.is_disjoint(a.curve, b.curve)) return fail("swap: " + a.curve + " and " + b.curve + " not declared disjoint");
        return detail::splice(w, m.pos, 2, {b, a});
    }
    case Move::Op::Braid: {
        check_pos(3);
        Word win(w.begin() + m.pos, w.begin() + m.pos + 3);
        int sign = win[0].sign;
        if (win[1].sign != sign || win[2].sign != sign) return fail("braid needs letters of one sign");
        Word pos_win = sign > 0 ? win : invert(win);
        for (const auto& r : ctx.registry.instances) {
            if (r.kind != RelationKind::Braid) continue;
            const Word& from = m.dir > 0 ? r.lhs : r.rhs;
            const Word& to = m.dir > 0 ? r.rhs : r.lhs;
            if (from != pos_win) continue;
            if (!ctx.table.is_unit(from[0].curve, from[1].curve))
                return fail("braid: " + from[0].curve + " and " + from[1].curve + " not declared as a unit pair");
            return detail::splice(w, m.pos, 3, sign > 0 ? to : invert(to));
        }
        return fail("braid " + detail::dir_name(m.dir) + ": no registered braid relation matches '" + render_word(win) + "'");
    }
    case Move::Op::Rotate:
        return cyclic_rotate(w, m.pos);
    case Move::Op::Expand: {
        auto it = ctx.defs.find(m.name);
        if (it == ctx.defs.end()) return fail("unknown definition '" + m.name + "'");
        long seen = 0;
        for (long i = 0; i < n; ++i) {
            if (w[i].curve != m.name) continue;
            if (seen++ == m.pos) return detail::splice(w, i, 1, w[i].sign > 0 ? it->second : invert(it->second));
        }
        return fail("occurrence " + std::to_string(m.pos) + " of '" + m.name + "' not found");
    }
    case Move::Op::Collapse: {
        auto it = ctx.defs.find(m.name);
        if (it == ctx.defs.end()) return fail("unknown definition '" + m.name + "'");
        long len = static_cast<long>(it->second.size());
        if (detail::window_equals(w, m.pos, it->second)) return detail::splice(w, m.pos, len, {Letter{m.name, 1}});
        if (detail::window_equals(w, m.pos, invert(it->second))) return detail::splice(w, m.pos, len, {Letter{m.name, -1}});
        return fail("collapse: definition of '" + m.name + "' not found at " + std::to_string(m.pos));
    }
    case Move::Op::Power: {
        if (m.pos < 2) return fail("power must be at least 2");
        if (ledger)
            for (std::size_t k = 0, count = ledger->entries.size(); k < count; ++k)
                if (!ledger->entries[k].base)
                    for (long c = 1; c < m.pos; ++c) ledger->entries.push_back(ledger->entries[k]);
        return power(w, static_cast<int>(m.pos));
    }
    case Move::Op::Assert:
        if (w != m.word) return fail("assert failed: have '" + render_word(w) + "'");
        return w;
    }
    return w;
}

struct TraceStep {
    Word word;
    long move = -1;  // index of the move that produced it, -1 for the base
};

struct Replay {
    Word final;
    SignatureLedger ledger;
    std::vector<TraceStep> trace;
};

inline SignatureLedger base_ledger(const Derivation& d, const Registry& reg) {
    SignatureLedger l;
    for (const auto& [name, o] : d.base_relations) {
        const auto* r = reg.find(name);
        if (!r) throw std::invalid_argument("unknown base relation '" + name + "'");
        l.entries.push_back({name, r->kind, o, true});
    }
    return l;
}

inline Replay run_derivation(const Derivation& d, const RewriteContext& ctx) {
    Replay out;
    out.ledger = base_ledger(d, ctx.registry);
    Word w = d.base;
    out.trace.push_back({w, -1});
    int powers = 0;
    for (std::size_t i = 0; i < d.moves.size(); ++i) {
        const Move& m = d.moves[i];
        if (m.op == Move::Op::Power && ++powers > 1) throw MoveError(i, m.line, "only one power step is allowed");
        try {
            w = apply_move(w, m, ctx, &out.ledger);
        } catch (const std::exception& e) {
            throw MoveError(i, m.line, e.what());
        }
        if (m.op != Move::Op::Assert) out.trace.push_back({w, static_cast<long>(i)});
    }
    out.final = free_reduce(w);
    if (auto expect = d.expected_final(); expect && free_reduce(*expect) != out.final)
        throw MoveError(d.moves.size(), 0, "final word differs from the expected word");
    return out;
}

struct HomologyVerdict {
    bool ok = true;
    long failing_step = -1;  // trace index
    std::string reason;
};

// Each trace word is a closed relator at its level: before a pending power n,
// M(w)^n = I; afterwards M(w) = I. Non-rotate moves must preserve M exactly and
// rotations must conjugate by the rotated prefix.
inline HomologyVerdict verify_derivation_homology(const Derivation& d, const Replay& replay, const RewriteContext& ctx) {
    HomologyModel model(ctx.table, ctx.defs);
    HomologyVerdict v;
    int pending = 1;
    for (const auto& m : d.moves)
        if (m.op == Move::Op::Power) pending = static_cast<int>(m.pos);
    IntMatrix prev;
    for (std::size_t k = 0; k < replay.trace.size(); ++k) {
        const auto& step = replay.trace[k];
        IntMatrix cur;
        try {
            cur = model.act(step.word);
        } catch (const std::exception& e) {
            return {false, static_cast<long>(k), e.what()};
        }
        const Move* m = step.move >= 0 ? &d.moves[static_cast<std::size_t>(step.move)] : nullptr;
        if (m && m->op == Move::Op::Power) pending = 1;
        if (!matrix_power(cur, pending).is_identity())
            return {false, static_cast<long>(k), pending > 1 ? "power of the word is not the identity" : "word is not the identity"};
        if (m && m->op == Move::Op::Rotate) {
            const Word& before = replay.trace[k - 1].word;
            long len = static_cast<long>(before.size());
            long s = len ? ((m->pos % len) + len) % len : 0;
            IntMatrix p = model.act(Word(before.begin(), before.begin() + s));
            if (cur != p * prev * symplectic_inverse(p)) return {false, static_cast<long>(k), "rotation is not a conjugation"};
        } else if (m && m->op != Move::Op::Power && cur != prev) {
            return {false, static_cast<long>(k), "move changed the homology action"};
        }
        prev = cur;
    }
    return v;
}

inline HomologyVerdict verify_derivation_homology(const Derivation& d, const RewriteContext& ctx) {
    return verify_derivation_homology(d, run_derivation(d, ctx), ctx);
}

// ---- script format ----

inline Derivation parse_derivation(const std::string& text) {
    Derivation d;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    bool moves_started = false;
    while (std::getline(in, line)) {
        ++lineno;
        // '#' inside quotes is not a comment, quoted words never contain one anyway
        auto hash = line.find('#');
        if (hash != std::string::npos) {
            if (!moves_started && d.base.empty()) {
                std::string c = line.substr(hash + 1);
                if (!c.empty() && c[0] == ' ') c.erase(0, 1);
                d.comments.push_back(c);
            }
            line.erase(hash);
        }
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw)) continue;
        auto bad = [&](const std::string& why) { throw ParseError(why, lineno, 1); };
        auto read_long = [&](long& x) {
            if (!(ls >> x)) bad("expected integer after '" + kw + "'");
        };
        auto read_at = [&](Move& m) {
            std::string at;
            if (!(ls >> at) || at != "at") bad("expected 'at'");
            read_long(m.pos);
        };
        auto read_dir = [&](Move& m) {
            std::string dir;
            if (!(ls >> dir) || (dir != "fwd" && dir != "rev")) bad("expected fwd or rev");
            m.dir = dir == "fwd" ? 1 : -1;
        };
        auto quoted = [&]() {
            try {
                return parse_word(detail::quoted_after(ls, lineno));
            } catch (const ParseError& e) {
                throw ParseError(e.what(), lineno, 1);
            }
        };
        Move m;
        m.line = lineno;
        if (kw == "genus") {
            if (!(ls >> d.genus) || d.genus < 1) bad("bad genus");
        } else if (kw == "tables") {
            if (!(ls >> d.tables)) bad("expected table directory");
        } else if (kw == "base") {
            d.base = quoted();
        } else if (kw == "base-relation") {
            std::string name;
            long o;
            if (!(ls >> name)) bad("expected relation name");
            read_long(o);
            if (o != 1 && o != -1) bad("orientation must be +1 or -1");
            d.base_relations.emplace_back(name, static_cast<int>(o));
        } else {
            moves_started = true;
            if (kw == "insert" || kw == "subst") {
                m.op = kw == "insert" ? Move::Op::Insert : Move::Op::Subst;
                if (!(ls >> m.name)) bad("expected relation name");
                read_at(m);
                read_dir(m);
                std::string opt;
                while (m.op == Move::Op::Subst && ls >> opt) {
                    if (opt == "span")
                        read_long(m.span);
                    else if (opt == "offset")
                        read_long(m.offset);
                    else
                        bad("unknown option '" + opt + "'");
                }
            } else if (kw == "cancel" || kw == "swap") {
                m.op = kw == "cancel" ? Move::Op::Cancel : Move::Op::Swap;
                read_at(m);
            } else if (kw == "uncancel") {
                m.op = Move::Op::Uncancel;
                std::string tok;
                if (!(ls >> tok)) bad("expected letter");
                Word l;
                try {
                    l = parse_word(tok);
                } catch (const ParseError&) {
                    bad("bad letter '" + tok + "'");
                }
                if (l.size() != 1) bad("expected a single letter");
                m.letter = l[0];
                read_at(m);
            } else if (kw == "braid") {
                m.op = Move::Op::Braid;
                read_at(m);
                read_dir(m);
            } else if (kw == "rotate") {
                m.op = Move::Op::Rotate;
                read_long(m.pos);
            } else if (kw == "expand") {
                m.op = Move::Op::Expand;
                std::string occ;
                if (!(ls >> m.name) || !(ls >> occ) || occ != "occ") bad("expected 'expand <def> occ <j>'");
                read_long(m.pos);
            } else if (kw == "collapse") {
                m.op = Move::Op::Collapse;
                if (!(ls >> m.name)) bad("expected definition name");
                read_at(m);
            } else if (kw == "power") {
                m.op = Move::Op::Power;
                read_long(m.pos);
            } else if (kw == "assert") {
                m.op = Move::Op::Assert;
                m.word = quoted();
            } else {
                bad("unknown directive '" + kw + "'");
            }
            std::string extra;
            if (ls >> extra) bad("unexpected '" + extra + "'");
            d.moves.push_back(m);
        }
    }
    if (d.genus < 1) throw ParseError("missing genus", lineno, 1);
    if (d.tables.empty()) d.tables = "g" + std::to_string(d.genus);
    return d;
}

inline std::string render_move(const Move& m) {
    using Op = Move::Op;
    auto dir = detail::dir_name(m.dir);
    switch (m.op) {
    case Op::Insert:
        return "insert " + m.name + " at " + std::to_string(m.pos) + " " + dir;
    case Op::Subst: {
        std::string s = "subst " + m.name + " at " + std::to_string(m.pos) + " " + dir;
        if (m.span != 1) s += " span " + std::to_string(m.span);
        if (m.offset != 0) s += " offset " + std::to_string(m.offset);
        return s;
    }
    case Op::Cancel:
        return "cancel at " + std::to_string(m.pos);
    case Op::Uncancel:
        return "uncancel " + render_letter(m.letter) + " at " + std::to_string(m.pos);
    case Op::Swap:
        return "swap at " + std::to_string(m.pos);
    case Op::Braid:
        return "braid at " + std::to_string(m.pos) + " " + dir;
    case Op::Rotate:
        return "rotate " + std::to_string(m.pos);
    case Op::Expand:
        return "expand " + m.name + " occ " + std::to_string(m.pos);
    case Op::Collapse:
        return "collapse " + m.name + " at " + std::to_string(m.pos);
    case Op::Power:
        return "power " + std::to_string(m.pos);
    case Op::Assert:
        return "assert \"" + render_word(m.word) + "\"";
    }
    return "";
}

inline std::string render_derivation(const Derivation& d) {
    std::string out;
    for (const auto& c : d.comments) out += "# " + c + "\n";
    out += "genus " + std::to_string(d.genus) + "\n";
    if (!d.tables.empty() && d.tables != "g" + std::to_string(d.genus)) out += "tables " + d.tables + "\n";
    out += "base \"" + render_word(d.base) + "\"\n";
    for (const auto& [name, o] : d.base_relations) out += "base-relation " + name + (o > 0 ? " +1" : " -1") + "\n";
    for (const auto& m : d.moves) out += render_move(m) + "\n";
    return out;
}

} // namespace mcg
