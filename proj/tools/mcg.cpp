#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "mcg/mcg.hpp"

using namespace mcg;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

// Usage and input problems exit with 2, verification failures with 1.
class UsageError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string input;
    std::string curves, defs, relations, tables;
    std::string family;
    int genus = 0, k = 0, m = 0;
    std::optional<long> sigma;
    std::optional<int> power;
    int bound = 12;
    bool ledger = false;
    bool json = false;
};

struct Source {
    std::optional<CorpusEntry> entry;
    TableSet tables;
    bool have_tables = false;
};

bool is_entry(const std::string& s) {
    if (fs::exists(s)) return false;
    return fs::exists(fs::path(corpus_dir()) / resolve_entry_name(s) / "entry.mcge");
}

std::string read_input(const std::string& path) {
    if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
    if (!fs::exists(path)) throw UsageError("cannot read '" + path + "'");
    return read_file(path);
}

// Tables from explicit files, a corpus table directory, or the entry itself.
Source load_source(const Options& o, bool want_entry = true) {
    Source s;
    if (want_entry && is_entry(o.input)) {
        s.entry = load_entry(o.input);
        s.tables = s.entry->tables;
        s.have_tables = true;
    }
    if (!o.tables.empty()) {
        s.tables = load_tables(o.tables);
        s.have_tables = true;
    }
    if (!o.curves.empty()) {
        s.tables.table = parse_curve_table(read_input(o.curves));
        s.tables.defs = o.defs.empty() ? DefinitionTable{} : parse_definitions(read_input(o.defs));
        s.tables.registry = o.relations.empty() ? Registry{} : parse_relations(read_input(o.relations));
        s.have_tables = true;
    } else if (!o.defs.empty()) {
        s.tables.defs = parse_definitions(read_input(o.defs));
    }
    return s;
}

Word load_word(const Options& o, const Source& s) {
    if (s.entry) return s.entry->word;
    return parse_word(read_input(o.input));
}

const TableSet& need_tables(const Source& s) {
    if (!s.have_tables) throw UsageError("no curve table: pass --curves, --tables or a corpus entry name");
    return s.tables;
}

json group_json(const AbelianGroup& g) { return {{"free_rank", g.free_rank}, {"torsion", g.torsion}, {"text", g.str()}}; }

int cmd_parse(const Options& o) {
    Source s = load_source(o);
    Word w = load_word(o, s);
    auto p = positivity(w, s.tables.defs);
    if (o.json) {
        std::cout << json{{"word", render_word(w)}, {"length", w.size()}, {"positive", p.raw}, {"positive_expanded", p.expanded}}.dump() << "\n";
    } else {
        std::cout << render_word(w) << "\n";
        std::cout << "length " << w.size() << "\npositive " << (p.raw ? "true" : "false") << " expanded " << (p.expanded ? "true" : "false")
                  << "\n";
    }
    return 0;
}

int cmd_reduce(const Options& o) {
    Source s = load_source(o);
    Word w = free_reduce(load_word(o, s));
    if (o.json)
        std::cout << json{{"word", render_word(w)}, {"length", w.size()}}.dump() << "\n";
    else
        std::cout << render_word(w) << "\n";
    return 0;
}

int cmd_verify(const Options& o) {
    Source s = load_source(o);
    Word w = load_word(o, s);
    const auto& t = need_tables(s);
    int pw = o.power ? *o.power : s.entry ? s.entry->manifest.power : 3;
    HomologyModel model(t.table, t.defs);
    IntMatrix m = model.act(w);
    IntMatrix mp = matrix_power(m, pw);
    auto order = matrix_order(m, o.bound);
    auto pos = positivity(w, t.defs);
    long bad_row = -1;
    for (std::size_t i = 0; i < mp.size() && bad_row < 0; ++i)
        for (std::size_t j = 0; j < mp.size(); ++j)
            if (mp(i, j) != (i == j ? 1 : 0)) {
                bad_row = static_cast<long>(i);
                break;
            }
    bool ok = bad_row < 0;
    if (o.json) {
        json j{{"pass", ok}, {"power", pw}, {"order", order ? json(*order) : json(nullptr)}, {"positive", pos.raw}, {"positive_expanded", pos.expanded}};
        if (!ok) {
            std::vector<std::int64_t> row;
            for (std::size_t c = 0; c < mp.size(); ++c) row.push_back(mp(static_cast<std::size_t>(bad_row), c));
            j["failing_row"] = bad_row;
            j["row"] = row;
        }
        std::cout << j.dump() << "\n";
    } else {
        std::cout << (ok ? "pass" : "fail") << ": M(W)^" << pw << (ok ? " is the identity" : " is not the identity") << "\n";
        if (!ok) {
            std::cout << "first failing row " << bad_row << ":";
            for (std::size_t c = 0; c < mp.size(); ++c) std::cout << " " << mp(static_cast<std::size_t>(bad_row), c);
            std::cout << "\n";
        }
        std::cout << "order " << (order ? std::to_string(*order) : "none up to " + std::to_string(o.bound)) << "\n";
        std::cout << "positive " << (pos.raw ? "true" : "false") << " expanded " << (pos.expanded ? "true" : "false") << "\n";
    }
    return ok ? 0 : 1;
}

int cmd_order(const Options& o) {
    Source s = load_source(o);
    Word w = load_word(o, s);
    const auto& t = need_tables(s);
    auto order = matrix_order(act_on_homology(w, t.table, t.defs), o.bound);
    if (o.json)
        std::cout << json{{"order", order ? json(*order) : json(nullptr)}, {"bound", o.bound}}.dump() << "\n";
    else
        std::cout << (order ? std::to_string(*order) : "none up to " + std::to_string(o.bound)) << "\n";
    return order ? 0 : 1;
}

int cmd_derive(const Options& o) {
    Source s = load_source(o);
    Derivation d = s.entry ? s.entry->derivation : parse_derivation(read_input(o.input));
    if (!s.have_tables) {
        s.tables = load_tables(d.tables.empty() ? "g" + std::to_string(d.genus) : d.tables);
        s.have_tables = true;
    }
    auto ctx = s.tables.ctx();
    Replay r;
    try {
        r = run_derivation(d, ctx);
    } catch (const MoveError& e) {
        if (o.json)
            std::cout << json{{"pass", false}, {"step", e.step()}, {"error", e.reason()}}.dump() << "\n";
        else
            std::cout << "fail: " << e.what() << "\n";
        return 1;
    }
    auto v = verify_derivation_homology(d, r, ctx);
    int total = ledger_total(r.ledger);
    if (o.json) {
        json j{{"pass", v.ok}, {"final", render_word(r.final)}, {"length", r.final.size()}, {"ledger", render_ledger(r.ledger)}, {"sigma", total}};
        if (!v.ok) j["homology_failure"] = {{"step", v.failing_step}, {"reason", v.reason}};
        if (o.ledger) {
            json entries = json::array();
            for (const auto& e : r.ledger.entries)
                entries.push_back({{"relation", e.relation}, {"kind", kind_tag(e.kind)}, {"orientation", e.orientation}, {"base", e.base}, {"contribution", e.contribution()}});
            j["entries"] = entries;
        }
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "final " << render_word(r.final) << "\n";
        std::cout << "length " << r.final.size() << "\n";
        if (o.ledger)
            for (const auto& e : r.ledger.entries)
                std::cout << "  " << e.relation << (e.base ? " (base)" : "") << " " << kind_tag(e.kind) << " " << (e.orientation > 0 ? "+" : "-")
                          << " " << e.contribution() << "\n";
        std::cout << "ledger " << render_ledger(r.ledger) << "\n";
        std::cout << "sigma " << total << "\n";
        std::cout << "homology " << (v.ok ? "ok" : "fail at trace step " + std::to_string(v.failing_step) + ": " + v.reason) << "\n";
    }
    return v.ok ? 0 : 1;
}

int cmd_invariants(const Options& o) {
    Source s = load_source(o);
    const auto& t = need_tables(s);
    Word rel;
    std::optional<long> ledger_sigma = o.sigma;
    std::optional<long> formula;
    if (s.entry) {
        auto ev = evaluate_entry(*s.entry);
        rel = s.entry->relator();
        ledger_sigma = ledger_total(ev.replay.ledger);
        if (ev.formula_sigma) formula = *ev.formula_sigma;
    } else {
        int pw = o.power ? *o.power : 1;
        rel = power(parse_word(read_input(o.input)), pw);
    }
    if (!o.family.empty()) {
        auto f = parse_family(o.family);
        if (!f) throw UsageError("unknown family '" + o.family + "'");
        formula = closed_form_sigma(*f, {o.genus ? o.genus : t.table.genus, o.k, o.m});
    }
    if (!ledger_sigma && !formula) throw UsageError("no signature source: pass --sigma or --family, or name a corpus entry");
    FibrationInvariants f;
    try {
        f = invariants_report(rel, t.table, t.defs, ledger_sigma, formula);
    } catch (const SigmaMismatch& e) {
        std::cout << "fail: " << e.what() << "\n";
        return 1;
    }
    if (o.json)
        std::cout << json{{"genus", f.genus}, {"s", f.s}, {"chi", f.chi}, {"sigma", f.sigma}, {"chih", f.chi_h}, {"c1sq", f.c1sq}, {"h1", group_json(f.h1)}}.dump()
                  << "\n";
    else
        std::cout << "genus " << f.genus << "\ns " << f.s << "\nchi " << f.chi << "\nsigma " << f.sigma << "\nchih " << f.chi_h << "\nc1sq " << f.c1sq
                  << "\nh1 " << f.h1.str() << "\n";
    return 0;
}

int cmd_table(const Options& o) {
    auto rep = reproduce_table();
    if (o.json) {
        json rows = json::array();
        for (const auto& [row, res] : rep.rows)
            for (const auto& r : res)
                rows.push_back({{"row", row.name}, {"entry", r.entry}, {"params", r.params}, {"chi", r.chi}, {"sigma", r.sigma}, {"chih", r.chih},
                                {"c1sq", r.c1sq}, {"h1", r.h1}, {"status", r.ok ? "ok" : "diff"}, {"diffs", r.diffs}});
        std::cout << json{{"pass", rep.ok()}, {"rows", rows}, {"errors", rep.errors}}.dump() << "\n";
    } else {
        std::cout << render_table_report(rep);
        std::cout << rep.rows.size() << " rows, " << rep.diff_count() << " diffs\n";
    }
    if (!rep.errors.empty() && rep.rows.empty()) return 2;
    return rep.ok() ? 0 : 1;
}

int cmd_solve(const Options& o) {
    CurveTable partial = parse_curve_table(read_input(o.input));
    std::vector<RelationInstance> constraints;
    if (!o.relations.empty()) constraints = parse_relations(read_input(o.relations)).instances;
    auto res = solve_classes_detailed(partial, constraints, o.bound);
    if (o.json) {
        json tables = json::array();
        for (const auto& t : res.tables) {
            json c;
            for (const auto& u : res.unknowns) c[u] = t.classes.at(u);
            tables.push_back(c);
        }
        std::cout << json{{"unknowns", res.unknowns}, {"solutions", tables}, {"truncated", res.truncated}, {"diagnostic", res.diagnostic}}.dump() << "\n";
    } else {
        std::cout << "# " << res.tables.size() << " solution(s) for " << res.unknowns.size() << " unknown(s)" << (res.truncated ? ", truncated" : "") << "\n";
        if (!res.diagnostic.empty()) std::cout << "# " << res.diagnostic << "\n";
        if (!res.tables.empty()) std::cout << render_curve_table(res.tables.front());
    }
    return res.tables.empty() ? 1 : 0;
}

int cmd_validate(const Options& o) {
    auto rep = validate_corpus();
    if (o.json) {
        std::cout << json{{"pass", rep.ok()}, {"failures", rep.failures}, {"notes", rep.notes}}.dump() << "\n";
    } else {
        for (const auto& n : rep.notes) std::cout << "note " << n << "\n";
        for (const auto& f : rep.failures) std::cout << "FAIL " << f << "\n";
        std::cout << (rep.ok() ? "corpus ok" : std::to_string(rep.failures.size()) + " failure(s)") << "\n";
    }
    return rep.ok() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dehn twist word calculus"};
    app.require_subcommand(1, 1);
    Options o;

    auto tables_opts = [&](CLI::App* c) {
        c->add_option("--curves", o.curves, "curve table file (.mcgc)");
        c->add_option("--defs", o.defs, "definition table file");
        c->add_option("--relations", o.relations, "relation registry file (.mcgr)");
        c->add_option("--tables", o.tables, "table directory inside the corpus, e.g. g3");
    };
    auto json_opt = [&](CLI::App* c) { c->add_flag("--json", o.json, "machine-readable output"); };
    auto input = [&](CLI::App* c, const char* what) { c->add_option("input", o.input, what)->required(); };

    auto* parse = app.add_subcommand("parse", "parse a word file and print its canonical form");
    input(parse, "word file, '-' for stdin, or a corpus entry");
    parse->add_option("--defs", o.defs, "definition table file");
    json_opt(parse);

    auto* reduce = app.add_subcommand("reduce", "freely reduce a word");
    input(reduce, "word file, '-' for stdin, or a corpus entry");
    json_opt(reduce);

    auto* verify = app.add_subcommand("verify", "check that a power of the word acts trivially on homology");
    input(verify, "word file or corpus entry");
    tables_opts(verify);
    verify->add_option("--power", o.power, "exponent of the relator (default: the entry's, else 3)");
    verify->add_option("--bound", o.bound, "largest order searched")->check(CLI::PositiveNumber);
    json_opt(verify);

    auto* order = app.add_subcommand("order", "order of the word's homology action");
    input(order, "word file or corpus entry");
    tables_opts(order);
    order->add_option("--bound", o.bound, "largest order searched")->check(CLI::PositiveNumber);
    json_opt(order);

    auto* derive = app.add_subcommand("derive", "replay a derivation and print its signature ledger");
    input(derive, "derivation file or corpus entry");
    tables_opts(derive);
    derive->add_flag("--ledger", o.ledger, "list every ledger entry");
    json_opt(derive);

    auto* inv = app.add_subcommand("invariants", "chi, sigma, chi_h, c1^2 and H1 of a positive relator");
    input(inv, "corpus entry or word file");
    tables_opts(inv);
    inv->add_option("--sigma", o.sigma, "signature from an external ledger");
    inv->add_option("--family", o.family, "closed-form family (X_g, X_g,k, X_3,k,m, Z_g-even, Z_g-odd, Y4, Y4,k, Y5, Y6)");
    inv->add_option("--genus", o.genus, "family genus");
    inv->add_option("-k", o.k, "family parameter k");
    inv->add_option("-m", o.m, "family parameter m");
    inv->add_option("--power", o.power, "exponent applied to a word file (default 1)");
    json_opt(inv);

    auto* table = app.add_subcommand("table", "recompute the invariants table and diff it");
    json_opt(table);

    auto* solve = app.add_subcommand("solve-curves", "solve unknown curve classes from local constraints");
    input(solve, "partial curve table");
    solve->add_option("--relations", o.relations, "relation instances used as constraints");
    solve->add_option("--bound", o.bound, "coefficient bound")->check(CLI::PositiveNumber);
    json_opt(solve);

    auto* validate = app.add_subcommand("validate-corpus", "replay and check every corpus asset");
    json_opt(validate);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*parse) return cmd_parse(o);
        if (*reduce) return cmd_reduce(o);
        if (*verify) return cmd_verify(o);
        if (*order) return cmd_order(o);
        if (*derive) return cmd_derive(o);
        if (*inv) return cmd_invariants(o);
        if (*table) return cmd_table(o);
        if (*solve) return cmd_solve(o);
        if (*validate) return cmd_validate(o);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
