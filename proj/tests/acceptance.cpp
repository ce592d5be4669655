// Acceptance run: one line per criterion, exit status 0 iff all pass.

#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "mcg/mcg.hpp"
#include "oracles.hpp"

using namespace mcg;
namespace fs = std::filesystem;

namespace {

constexpr int kCases = 1000;

struct Check {
    std::ostringstream log;
    bool ok = true;
    void expect(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            log << " [" << what << "]";
        }
    }
};

struct Evaluated {
    CorpusEntry entry;
    EntryEvaluation ev;
};

Evaluated eval(const std::string& name) {
    Evaluated e{load_entry(name), {}};
    e.ev = evaluate_entry(e.entry);
    return e;
}

// 1. letter counts and chi of the cubed relators
void euler(Check& c) {
    const std::vector<std::tuple<const char*, long, long>> want = {{"X2", 30, 26}, {"X3", 36, 28}, {"X4", 42, 30}};
    for (auto [name, s, chi] : want) {
        auto e = load_entry(name);
        long got = letter_count(e.relator());
        c.expect(got == s, std::string(name) + " s=" + std::to_string(got));
        c.expect(euler_characteristic(e.manifest.genus, got) == chi, std::string(name) + " chi");
        c.expect(chi == 2 * e.manifest.genus + 22, std::string(name) + " 2g+22");
        c.log << " " << name << ":s=" << got << ",chi=" << euler_characteristic(e.manifest.genus, got);
    }
}

// 2. replayed signature ledgers and the Z_g formulas
void ledgers(Check& c) {
    const std::vector<std::pair<const char*, int>> want = {{"X2", -18}, {"X3", -20}, {"X4", -22}, {"Y4", -27}, {"Y5", -29}, {"Y6", -30}};
    for (auto [name, sigma] : want) {
        auto e = eval(name);
        int got = ledger_total(e.ev.replay.ledger);
        c.expect(got == sigma, std::string(name) + " sigma=" + std::to_string(got));
        c.log << " " << name << "=" << got;
    }
    for (int g = 7; g <= 12; ++g) {
        auto e = eval("Z" + std::to_string(g));
        int formula = g % 2 ? -6 * g - 2 : -6 * g - 6;
        int replay = ledger_total(e.ev.replay.ledger);
        c.expect(e.entry.word == build_zg_word(g), "Z" + std::to_string(g) + " word differs from build_Zg_word");
        c.expect(replay == formula, "Z" + std::to_string(g) + " replay " + std::to_string(replay));
        c.expect(zg_ledger_sigma(g) == formula, "Z" + std::to_string(g) + " ledger formula");
        c.expect(closed_form_sigma(g % 2 ? Family::ZgOdd : Family::ZgEven, {g}) == formula, "Z" + std::to_string(g) + " closed form");
        c.log << " Z" << g << "=" << replay;
    }
}

// 3. the twelve table rows
void table(Check& c) {
    auto rep = reproduce_table();
    for (const auto& e : rep.errors) c.expect(false, e);
    c.expect(rep.rows.size() == 12, "row count " + std::to_string(rep.rows.size()));
    const std::set<std::string> names = {"X2", "X2,k", "X2,6", "X3", "X3,k", "X3,k,m", "X4", "X4,k", "Y4", "Y4,k", "Y5", "Y6"};
    std::size_t evaluated = 0;
    for (const auto& [row, res] : rep.rows) {
        c.expect(names.count(row.name) == 1, "unexpected row " + row.name);
        c.expect(!res.empty(), "row " + row.name + " has no entries");
        for (const auto& r : res) {
            ++evaluated;
            c.expect(r.ok, "row " + row.name + " " + r.entry + (r.diffs.empty() ? "" : ": " + r.diffs.front()));
            c.expect((r.sigma + r.chi) % 4 == 0, "row " + row.name + " divisibility");
        }
    }
    c.log << " rows=" << rep.rows.size() << " fibrations=" << evaluated << " diffs=" << rep.diff_count();
}

// 4. every relator is the identity; tables regenerate from local constraints
void homology(Check& c, const std::string& generator) {
    std::size_t n = 0;
    for (const auto& name : entry_names()) {
        auto e = eval(name);
        HomologyModel m(e.entry.tables.table, e.entry.tables.defs);
        c.expect(m.act(e.entry.relator()).is_identity(), name + " relator");
        c.expect(e.ev.homology.ok, name + " trace: " + e.ev.homology.reason);
        ++n;
    }
    c.log << " relators=" << n;
    if (generator.empty()) {
        c.expect(false, "table generator not available");
        return;
    }
    fs::path tmp = fs::temp_directory_path() / "mcg_acceptance_tables";
    fs::remove_all(tmp);
    std::string cmd = "\"" + generator + "\" \"" + tmp.string() + "\" > /dev/null";
    c.expect(std::system(cmd.c_str()) == 0, "table generator failed");
    std::size_t tables = 0;
    for (const auto& dir : table_dirs()) {
        auto shipped = load_curve_table((fs::path(corpus_dir()) / dir / "curves.mcgc").string());
        auto fresh = load_curve_table((tmp / dir / "curves.mcgc").string());
        c.expect(shipped.classes == fresh.classes, dir + " classes differ from a fresh solve");
        ++tables;
    }
    fs::remove_all(tmp);
    c.log << " re-solved tables=" << tables;
}

// 5. order three of every base word
void order(Check& c) {
    std::size_t n = 0;
    for (const auto& name : entry_names()) {
        auto e = load_entry(name);
        if (e.manifest.power != 3) continue;
        HomologyModel m(e.tables.table, e.tables.defs);
        IntMatrix a = m.act(e.word);
        c.expect(!a.is_identity() && matrix_power(a, 3).is_identity(), name);
        c.expect(matrix_order(a) == 3, name + " order");
        ++n;
    }
    c.log << " base words=" << n;
}

// 6. H1 anchors
void h1(Check& c) {
    for (const char* name : {"X2", "X3", "X4"}) {
        auto e = load_entry(name);
        auto g = h1_of_fibration(e.relator(), e.tables.table, e.tables.defs);
        c.expect(g.trivial(), std::string(name) + " H1=" + g.str());
        c.log << " " << name << ":" << g.str();
    }
    auto e = load_entry("X2-k6");
    auto g = h1_of_fibration(e.relator(), e.tables.table, e.tables.defs);
    c.expect(g.free_rank == 0 && g.torsion == std::vector<std::int64_t>{3}, "X2,6 H1=" + g.str());
    c.log << " X2,6:" << g.str();
}

// 7. randomized properties
void properties(Check& c) {
    std::mt19937 rng(2024);
    const std::vector<std::string> small = {"a", "b", "c", "d"};
    int count = 0;
    auto suite = [&](const char* name, const std::function<bool()>& one) {
        int fails = 0;
        for (int i = 0; i < kCases; ++i)
            if (!one()) ++fails;
        c.expect(fails == 0, std::string(name) + " failed " + std::to_string(fails));
        ++count;
    };
    suite("free_reduce", [&] {
        Word w = oracle::random_word(rng, small, 40);
        Word r = free_reduce(w);
        return free_reduce(r) == r && r == oracle::free_reduce(w) && is_freely_reduced(r);
    });
    suite("invert", [&] {
        Word w = oracle::random_word(rng, small, 40);
        return invert(invert(w)) == w && free_reduce(concat(w, invert(w))).empty();
    });
    auto ts = load_tables("g4");
    std::vector<std::string> alpha;
    for (const auto& [n, cls] : ts.table.classes) alpha.push_back(n);
    HomologyModel model(ts.table, ts.defs);
    suite("homomorphism", [&] {
        Word u = oracle::random_word(rng, alpha, 10), v = oracle::random_word(rng, alpha, 10);
        return model.act(concat(u, v)) == model.act(v) * model.act(u);
    });
    suite("symplectic", [&] {
        IntMatrix m = model.act(oracle::random_word(rng, alpha, 15));
        return is_symplectic(m);
    });
    auto pair_suite = [&](const char* name, bool unit) {
        suite(name, [&] {
            for (;;) {
                auto a = oracle::random_class(rng, 4, 2), b = oracle::random_class(rng, 4, 2);
                auto v = intersection(a, b);
                if (unit ? std::abs(v) != 1 : v != 0) continue;
                IntMatrix ta = transvection(a), tb = transvection(b);
                return unit ? ta * tb * ta == tb * ta * tb : ta * tb == tb * ta;
            }
        });
    };
    pair_suite("braid", true);
    pair_suite("commute", false);
    suite("smith", [&] {
        std::uniform_int_distribution<int> dim(1, 4), e(-5, 5), f(-2, 2);
        std::size_t r = dim(rng), k = dim(rng);
        oracle::Mat a(r, oracle::Vec(k));
        for (auto& row : a)
            for (auto& x : row) x = e(rng);
        auto left = oracle::identity(r), right = oracle::identity(k);
        for (int s = 0; s < 4; ++s) {
            std::size_t i = rng() % r, j = rng() % r;
            std::int64_t m = f(rng);
            if (i != j)
                for (std::size_t t = 0; t < r; ++t) left[i][t] += m * left[j][t];
            i = rng() % k, j = rng() % k;
            m = f(rng);
            if (i != j)
                for (std::size_t t = 0; t < k; ++t) right[t][i] += m * right[t][j];
        }
        return smith_normal_form(oracle::mul(oracle::mul(left, a), right)) == smith_normal_form(a);
    });
    c.log << " suites=" << count << " cases=" << kCases << " each";
}

// 8. one lantern moves (chi, sigma) by (-1, +1), one chain by (+10, -6)
void arithmetic(Check& c) {
    auto inv = [](const std::string& name) {
        auto e = eval(name);
        return std::make_pair(e.ev.invariants->chi, e.ev.invariants->sigma);
    };
    const std::vector<std::pair<std::string, std::string>> lanterns = {
        {"X2", "X2-k1"},    {"X2-k1", "X2-k2"}, {"X2-k2", "X2-k3"}, {"X2-k3", "X2-k4"},       {"X2-k4", "X2-k5"},       {"X2-k5", "X2-k6"},
        {"X3", "X3-k1"},    {"X3-k1", "X3-k2"}, {"X3-k2", "X3-k3"}, {"X3-k1-m1", "X3-k2-m1"}, {"X3-k2-m2", "X3-k3-m2"}, {"X4", "X4-k1"},
        {"X4-k1", "X4-k2"}, {"X4-k2", "X4-k3"}, {"Y4", "Y4-k1"},    {"Y4-k1", "Y4-k2"},       {"Y4-k2", "Y4-k3"},
    };
    for (const auto& [a, b] : lanterns) {
        auto [ca, sa] = inv(a);
        auto [cb, sb] = inv(b);
        c.expect(cb - ca == -1 && sb - sa == 1, a + "->" + b);
    }
    const std::vector<std::pair<std::string, std::string>> chains = {
        {"X3-k1", "X3-k1-m1"}, {"X3-k2", "X3-k2-m1"}, {"X3-k2-m1", "X3-k2-m2"}, {"X3-k3", "X3-k3-m1"}, {"X3-k3-m1", "X3-k3-m2"}, {"X3-k3-m2", "X3-k3-m3"},
    };
    for (const auto& [a, b] : chains) {
        auto [ca, sa] = inv(a);
        auto [cb, sb] = inv(b);
        c.expect(cb - ca == 10 && sb - sa == -6, a + "->" + b);
    }
    Word explicit_word = concat(parse_word("c1 c2 x m n p c1 c5 c4"), power(parse_word("c1 c2 x c3 c4 c5 c5 c4 c5 c4"), 2));
    c.expect(load_entry("X2-k1").relator() == explicit_word, "X2,1 word");
    auto [chi, sigma] = inv("X2-k1");
    c.expect(chi == 25 && sigma == -17, "X2,1 invariants");
    c.log << " lantern steps=" << lanterns.size() << " chain steps=" << chains.size() << " X2,1:chi=" << chi << ",sigma=" << sigma;
}

} // namespace

int main(int argc, char** argv) {
    std::string generator = argc > 1 ? argv[1] : "";
    const std::vector<std::pair<const char*, std::function<void(Check&)>>> criteria = {
        {"Euler characteristics", euler},
        {"signature ledgers", ledgers},
        {"table reproduction", table},
        {"homology identity", [&](Check& c) { homology(c, generator); }},
        {"order three", order},
        {"H1 anchors", h1},
        {"property suites", properties},
        {"lantern and chain arithmetic", arithmetic},
    };
    bool all = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Check c;
        try {
            criteria[i].second(c);
        } catch (const std::exception& e) {
            c.expect(false, std::string("exception: ") + e.what());
        }
        all &= c.ok;
        std::cout << (c.ok ? "PASS" : "FAIL") << " criterion " << i + 1 << " (" << criteria[i].first << "):" << c.log.str() << "\n";
    }
    return all ? 0 : 1;
}
