#pragma once

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "curve_table.hpp"
#include "invariants.hpp"
#include "relation.hpp"
#include "rewrite.hpp"
#include "word.hpp"

#ifndef MCG_DEFAULT_CORPUS_DIR
#define MCG_DEFAULT_CORPUS_DIR "corpus"
#endif

namespace mcg {

class CorpusError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::string corpus_dir() {
    if (const char* env = std::getenv("MCG_CORPUS_DIR"); env && *env) return env;
    return MCG_DEFAULT_CORPUS_DIR;
}

// ---- entry manifest (entry.mcge) ----

struct EntryManifest {
    int genus = 0;
    std::string tables;
    int power = 3;       // the relator is word^power
    std::string family;  // closed-form family, empty if none
    std::string row;     // row of the summary table, empty if none
    std::map<std::string, int> params;
};

inline std::string render_manifest(const EntryManifest& m) {
    std::string out = "genus " + std::to_string(m.genus) + "\ntables " + m.tables + "\npower " + std::to_string(m.power) + "\n";
    if (!m.family.empty()) out += "family " + m.family + "\n";
    if (!m.row.empty()) out += "row " + m.row + "\n";
    for (const auto& [k, v] : m.params) out += "param " + k + " " + std::to_string(v) + "\n";
    return out;
}

inline EntryManifest parse_manifest(const std::string& text) {
    EntryManifest m;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw)) continue;
        bool ok = true;
        if (kw == "genus")
            ok = static_cast<bool>(ls >> m.genus) && m.genus >= 1;
        else if (kw == "tables")
            ok = static_cast<bool>(ls >> m.tables);
        else if (kw == "power")
            ok = static_cast<bool>(ls >> m.power) && m.power >= 1;
        else if (kw == "family")
            ok = static_cast<bool>(ls >> m.family) && parse_family(m.family).has_value();
        else if (kw == "row")
            ok = static_cast<bool>(ls >> m.row);
        else if (kw == "param") {
            std::string k;
            int v;
            ok = static_cast<bool>(ls >> k >> v);
            if (ok) m.params[k] = v;
        } else
            throw ParseError("unknown manifest directive '" + kw + "'", lineno, 1);
        if (!ok) throw ParseError("bad '" + kw + "' line", lineno, 1);
    }
    if (m.genus < 1) throw ParseError("manifest without genus", lineno, 1);
    if (m.tables.empty()) m.tables = "g" + std::to_string(m.genus);
    return m;
}

// ---- tables and entries ----

struct TableSet {
    std::string dir;
    CurveTable table;
    Registry registry;
    DefinitionTable defs;

    RewriteContext ctx() const { return {table, registry, defs}; }
};

inline TableSet load_tables(const std::string& dir, const std::string& root = corpus_dir()) {
    namespace fs = std::filesystem;
    fs::path p = fs::path(root) / dir;
    if (!fs::is_directory(p)) throw CorpusError("missing table directory " + p.string());
    TableSet t;
    t.dir = dir;
    t.table = load_curve_table((p / "curves.mcgc").string());
    t.registry = load_relations((p / "relations.mcgr").string());
    if (fs::exists(p / "defs.mcgdef")) t.defs = parse_definitions(read_file((p / "defs.mcgdef").string()));
    return t;
}

// Relation instances used by one table directory, each checked against its table.
inline Registry registry_for(const std::string& dir, const std::string& root = corpus_dir()) {
    auto t = load_tables(dir, root);
    auto rep = validate_table(t.table, t.registry, t.defs);
    if (!rep.ok()) throw CorpusError(dir + ": " + rep.failures.front());
    return t.registry;
}

inline Registry registry_for(int genus, const std::string& root = corpus_dir()) { return registry_for("g" + std::to_string(genus), root); }

// Paper-facing names that share an asset with another entry.
inline const std::map<std::string, std::string>& entry_aliases() {
    static const std::map<std::string, std::string> a = {
        {"X2-alt", "X2-k6"},   {"X3-alt", "X3-k3"},   {"X3-alt2", "X3-k3-m3"}, {"X4-rose", "X4"},
        {"X4-rose-alt", "X4-k3"}, {"X4-alt", "Y4-k3"}, {"Zg-even", "Z8"},       {"Zg-odd", "Z7"},
    };
    return a;
}

inline std::string resolve_entry_name(const std::string& name) {
    auto it = entry_aliases().find(name);
    return it == entry_aliases().end() ? name : it->second;
}

struct CorpusEntry {
    std::string name;
    EntryManifest manifest;
    Word word;  // base word
    Derivation derivation;
    TableSet tables;

    Word relator() const { return power(word, manifest.power); }
};

inline CorpusEntry load_entry(const std::string& name, const std::string& root = corpus_dir()) {
    namespace fs = std::filesystem;
    CorpusEntry e;
    e.name = resolve_entry_name(name);
    fs::path p = fs::path(root) / e.name;
    if (!fs::exists(p / "entry.mcge")) throw CorpusError("no corpus entry '" + name + "' under " + root);
    e.manifest = parse_manifest(read_file((p / "entry.mcge").string()));
    e.word = parse_word(read_file((p / "word.mcgw").string()));
    e.derivation = parse_derivation(read_file((p / "derivation.mcgd").string()));
    e.tables = load_tables(e.manifest.tables, root);
    if (e.derivation.genus != e.manifest.genus || e.tables.table.genus != e.manifest.genus)
        throw CorpusError("genus mismatch in entry '" + e.name + "'");
    return e;
}

inline std::vector<std::string> entry_names(const std::string& root = corpus_dir()) {
    namespace fs = std::filesystem;
    std::vector<std::string> out;
    if (!fs::is_directory(root)) throw CorpusError("missing corpus directory " + root);
    for (const auto& d : fs::directory_iterator(root))
        if (d.is_directory() && fs::exists(d.path() / "entry.mcge")) out.push_back(d.path().filename().string());
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<std::string> table_dirs(const std::string& root = corpus_dir()) {
    namespace fs = std::filesystem;
    std::vector<std::string> out;
    for (const auto& d : fs::directory_iterator(root))
        if (d.is_directory() && fs::exists(d.path() / "curves.mcgc")) out.push_back(d.path().filename().string());
    std::sort(out.begin(), out.end());
    return out;
}

// ---- expected table ----

// Integer linear expression over named parameters, e.g. "28-k+10m" or "-2".
inline long eval_linear(const std::string& expr, const std::map<std::string, int>& params) {
    long total = 0;
    std::size_t i = 0;
    if (expr.empty()) throw std::invalid_argument("empty expression");
    while (i < expr.size()) {
        int sign = 1;
        if (expr[i] == '+' || expr[i] == '-') sign = expr[i++] == '-' ? -1 : 1;
        else if (i != 0) throw std::invalid_argument("bad expression '" + expr + "'");
        long coef = 1;
        bool digits = false;
        if (i < expr.size() && std::isdigit(static_cast<unsigned char>(expr[i]))) {
            coef = 0;
            while (i < expr.size() && std::isdigit(static_cast<unsigned char>(expr[i]))) coef = coef * 10 + (expr[i++] - '0');
            digits = true;
        }
        std::string var;
        while (i < expr.size() && std::isalpha(static_cast<unsigned char>(expr[i]))) var.push_back(expr[i++]);
        if (!digits && var.empty()) throw std::invalid_argument("bad expression '" + expr + "'");
        if (!var.empty()) {
            auto it = params.find(var);
            if (it == params.end()) throw std::invalid_argument("expression '" + expr + "' needs parameter " + var);
            coef *= it->second;
        }
        total += sign * coef;
    }
    return total;
}

struct ExpectedRow {
    std::string name;
    std::string chi, sigma, chih, c1sq;  // linear expressions
    std::string h1;                      // "1" trivial, "Z3" etc, "-" no expectation
    std::vector<std::string> over;       // corpus entries realizing the row
};

inline std::vector<ExpectedRow> parse_expected_table(const std::string& text) {
    std::vector<ExpectedRow> rows;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw)) continue;
        if (kw != "row") throw ParseError("expected 'row'", lineno, 1);
        ExpectedRow r;
        if (!(ls >> r.name)) throw ParseError("missing row name", lineno, 1);
        std::string key;
        while (ls >> key) {
            std::string* slot = key == "chi" ? &r.chi : key == "sigma" ? &r.sigma : key == "chih" ? &r.chih : key == "c1sq" ? &r.c1sq : key == "h1" ? &r.h1 : nullptr;
            if (slot) {
                if (!(ls >> *slot)) throw ParseError("missing value for " + key, lineno, 1);
            } else if (key == "over") {
                std::string e;
                while (ls >> e) r.over.push_back(e);
            } else {
                throw ParseError("unknown row field '" + key + "'", lineno, 1);
            }
        }
        if (r.chi.empty() || r.sigma.empty() || r.chih.empty() || r.c1sq.empty() || r.h1.empty() || r.over.empty())
            throw ParseError("incomplete row '" + r.name + "'", lineno, 1);
        rows.push_back(r);
    }
    return rows;
}

// ---- evaluation ----

struct EntryEvaluation {
    Replay replay;
    HomologyVerdict homology;
    std::optional<FibrationInvariants> invariants;  // only for positive relators
    std::optional<int> formula_sigma;
};

inline EntryEvaluation evaluate_entry(const CorpusEntry& e) {
    EntryEvaluation ev;
    auto ctx = e.tables.ctx();
    ev.replay = run_derivation(e.derivation, ctx);
    if (ev.replay.final != free_reduce(e.relator()))
        throw CorpusError("entry '" + e.name + "': derivation ends at '" + render_word(ev.replay.final) + "', not at its word");
    ev.homology = verify_derivation_homology(e.derivation, ev.replay, ctx);
    if (!e.manifest.family.empty()) {
        FamilyParams p;
        p.g = e.manifest.genus;
        if (auto it = e.manifest.params.find("k"); it != e.manifest.params.end()) p.k = it->second;
        if (auto it = e.manifest.params.find("m"); it != e.manifest.params.end()) p.m = it->second;
        ev.formula_sigma = closed_form_sigma(*parse_family(e.manifest.family), p);
    }
    Word rel = e.relator();
    if (is_positive(rel))
        ev.invariants = invariants_report(rel, e.tables.table, e.tables.defs, ledger_total(ev.replay.ledger), ev.formula_sigma);
    return ev;
}

struct RowResult {
    std::string entry;
    std::map<std::string, int> params;
    long chi = 0, sigma = 0, chih = 0, c1sq = 0;
    std::string h1;
    bool ok = false;
    std::vector<std::string> diffs;
};

struct TableReport {
    std::vector<std::pair<ExpectedRow, std::vector<RowResult>>> rows;
    std::vector<std::string> errors;

    bool ok() const {
        if (!errors.empty()) return false;
        for (const auto& [row, res] : rows)
            for (const auto& r : res)
                if (!r.ok) return false;
        return true;
    }
    std::size_t diff_count() const {
        std::size_t n = 0;
        for (const auto& [row, res] : rows)
            for (const auto& r : res) n += r.diffs.size();
        return n;
    }
};

inline bool h1_matches(const std::string& expected, const AbelianGroup& g) {
    if (expected == "-") return true;
    if (expected == "1") return g.trivial();
    return g.str() == expected;
}

inline TableReport reproduce_table(const std::string& root = corpus_dir()) {
    TableReport rep;
    std::vector<ExpectedRow> rows;
    try {
        rows = parse_expected_table(read_file((std::filesystem::path(root) / "expected_table.txt").string()));
    } catch (const std::exception& e) {
        rep.errors.push_back(e.what());
        return rep;
    }
    for (const auto& row : rows) {
        std::vector<RowResult> results;
        for (const auto& name : row.over) {
            RowResult r;
            r.entry = name;
            try {
                auto e = load_entry(name, root);
                r.params = e.manifest.params;
                if (e.manifest.row != row.name) r.diffs.push_back("entry belongs to row " + e.manifest.row);
                auto ev = evaluate_entry(e);
                if (!ev.invariants) throw CorpusError("relator is not positive");
                const auto& f = *ev.invariants;
                r.chi = f.chi, r.sigma = f.sigma, r.chih = f.chi_h, r.c1sq = f.c1sq;
                r.h1 = f.h1.str();
                auto cmp = [&](const char* what, long have, const std::string& expr) {
                    long want = eval_linear(expr, r.params);
                    if (have != want) r.diffs.push_back(std::string(what) + " " + std::to_string(have) + " expected " + std::to_string(want));
                };
                cmp("chi", r.chi, row.chi);
                cmp("sigma", r.sigma, row.sigma);
                cmp("chih", r.chih, row.chih);
                cmp("c1sq", r.c1sq, row.c1sq);
                if (!h1_matches(row.h1, f.h1)) r.diffs.push_back("h1 " + r.h1 + " expected " + row.h1);
                if ((r.sigma + r.chi) % 4 != 0) r.diffs.push_back("sigma + chi not divisible by 4");
                if (!ev.homology.ok) r.diffs.push_back("homology check failed: " + ev.homology.reason);
            } catch (const std::exception& ex) {
                r.diffs.push_back(ex.what());
            }
            r.ok = r.diffs.empty();
            results.push_back(r);
        }
        rep.rows.emplace_back(row, results);
    }
    return rep;
}

inline std::string params_text(const std::map<std::string, int>& p) {
    std::string s;
    for (const auto& [k, v] : p) s += (s.empty() ? "" : ",") + k + "=" + std::to_string(v);
    return s;
}

inline std::string render_table_report(const TableReport& rep) {
    std::ostringstream out;
    for (const auto& e : rep.errors) out << "error " << e << "\n";
    for (const auto& [row, res] : rep.rows) {
        bool ok = std::all_of(res.begin(), res.end(), [](const RowResult& r) { return r.ok; });
        out << "row " << row.name << " chi " << row.chi << " sigma " << row.sigma << " chih " << row.chih << " c1sq " << row.c1sq << " h1 "
            << row.h1 << " status " << (ok ? "ok" : "diff") << "\n";
        for (const auto& r : res) {
            out << "  " << r.entry << (r.params.empty() ? "" : " " + params_text(r.params)) << " chi " << r.chi << " sigma " << r.sigma
                << " chih " << r.chih << " c1sq " << r.c1sq << " h1 " << r.h1 << " status " << (r.ok ? "ok" : "diff") << "\n";
            for (const auto& d : r.diffs) out << "    " << d << "\n";
        }
    }
    return out.str();
}

// ---- whole-corpus validation ----

inline Report validate_corpus(const std::string& root = corpus_dir()) {
    Report rep;
    try {
        for (const auto& dir : table_dirs(root)) {
            auto t = load_tables(dir, root);
            for (const auto& problem : check_definitions(t.defs)) rep.fail(dir + ": " + problem);
            rep.merge(validate_table(t.table, t.registry, t.defs), dir + ": ");
            for (const auto& c : t.table.comments) rep.notes.push_back(dir + ": " + c);
        }
        for (const auto& name : entry_names(root)) {
            try {
                auto e = load_entry(name, root);
                auto ev = evaluate_entry(e);
                if (!ev.homology.ok)
                    rep.fail(name + ": homology check failed at trace step " + std::to_string(ev.homology.failing_step) + ": " + ev.homology.reason);
                HomologyModel m(e.tables.table, e.tables.defs);
                if (!m.act(e.relator()).is_identity()) rep.fail(name + ": relator does not act as the identity");
                if (e.manifest.power > 1) {
                    auto order = matrix_order(m.act(e.word));
                    if (order != e.manifest.power)
                        rep.fail(name + ": base word has order " + (order ? std::to_string(*order) : "> 12") + ", expected " +
                                 std::to_string(e.manifest.power));
                }
                rep.notes.push_back(name + ": ledger " + render_ledger(ev.replay.ledger) + " total " + std::to_string(ledger_total(ev.replay.ledger)));
            } catch (const std::exception& ex) {
                rep.fail(name + ": " + ex.what());
            }
        }
        auto table = reproduce_table(root);
        for (const auto& e : table.errors) rep.fail("table: " + e);
        for (const auto& [row, res] : table.rows)
            for (const auto& r : res)
                for (const auto& d : r.diffs) rep.fail("table row " + row.name + " (" + r.entry + "): " + d);
    } catch (const std::exception& ex) {
        rep.fail(ex.what());
    }
    return rep;
}

} // namespace mcg
