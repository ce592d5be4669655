#pragma once

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "homology.hpp"
#include "word.hpp"

namespace mcg {

class UnknownCurve : public std::runtime_error {
public:
    explicit UnknownCurve(const std::string& name) : std::runtime_error("unknown curve '" + name + "'"), name_(name) {}
    const std::string& name() const { return name_; }

private:
    std::string name_;
};

using NamePair = std::pair<std::string, std::string>;

inline NamePair ordered_pair(const std::string& a, const std::string& b) { return a < b ? NamePair{a, b} : NamePair{b, a}; }

struct CurveTable {
    int genus = 0;
    std::map<std::string, HomologyClass> classes;
    std::set<NamePair> disjoint_pairs;
    std::set<NamePair> unit_pairs;
    std::set<std::string> separating;
    std::vector<NamePair> aliases;     // (alias, original)
    std::vector<std::string> comments;  // header comment lines, kept on round trip

    bool has(const std::string& name) const { return classes.count(name) > 0; }
    void declare_disjoint(const std::string& a, const std::string& b) { disjoint_pairs.insert(ordered_pair(a, b)); }
    void declare_unit(const std::string& a, const std::string& b) { unit_pairs.insert(ordered_pair(a, b)); }
    bool is_disjoint(const std::string& a, const std::string& b) const { return disjoint_pairs.count(ordered_pair(a, b)) > 0; }
    bool is_unit(const std::string& a, const std::string& b) const { return unit_pairs.count(ordered_pair(a, b)) > 0; }
};

// Standard chain c1..c_{2g+1}: [c_{2i}] = a_i, [c_{2i+1}] = b_i + b_{i+1}.
inline HomologyClass chain_class(int genus, int index) {
    HomologyClass c(2 * genus, 0);
    if (index % 2 == 0) {
        c[index - 2] = 1;
    } else {
        int i = (index - 1) / 2;
        if (i >= 1) c[2 * i - 1] = 1;
        if (i + 1 <= genus) c[2 * i + 1] = 1;
    }
    return c;
}

inline CurveTable standard_chain_table(int genus) {
    CurveTable t;
    t.genus = genus;
    for (int i = 1; i <= 2 * genus + 1; ++i) t.classes["c" + std::to_string(i)] = chain_class(genus, i);
    for (int i = 1; i <= 2 * genus + 1; ++i)
        for (int j = i + 1; j <= 2 * genus + 1; ++j) {
            auto a = "c" + std::to_string(i), b = "c" + std::to_string(j);
            if (j == i + 1)
                t.declare_unit(a, b);
            else
                t.declare_disjoint(a, b);
        }
    return t;
}

namespace detail {

inline HomologyClass parse_vector(const std::string& text, int lineno) {
    auto l = text.find('['), r = text.find(']');
    if (l == std::string::npos || r == std::string::npos || r < l) throw ParseError("expected [ ... ]", lineno, 1);
    HomologyClass v;
    std::string body = text.substr(l + 1, r - l - 1);
    std::istringstream in(body);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            std::size_t used = 0;
            long long x = std::stoll(item, &used);
            for (std::size_t k = used; k < item.size(); ++k)
                if (!std::isspace(static_cast<unsigned char>(item[k]))) throw std::invalid_argument("junk");
            v.push_back(x);
        } catch (const std::exception&) {
            throw ParseError("bad integer '" + item + "'", lineno, 1);
        }
    }
    for (std::size_t k = r + 1; k < text.size(); ++k)
        if (!std::isspace(static_cast<unsigned char>(text[k]))) throw ParseError("trailing text after ]", lineno, static_cast<int>(k) + 1);
    return v;
}

inline std::string render_vector(const HomologyClass& c) {
    std::string s = "[";
    for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
    return s + "]";
}

} // namespace detail

inline CurveTable parse_curve_table(const std::string& text) {
    CurveTable t;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    bool body_started = false;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) {
            if (!body_started) {
                std::string c = line.substr(hash + 1);
                if (!c.empty() && c[0] == ' ') c.erase(0, 1);
                t.comments.push_back(c);
            }
            line.erase(hash);
        }
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw)) continue;
        body_started = true;
        auto need_name = [&](std::string& s) {
            if (!(ls >> s) || !is_identifier(s)) throw ParseError("expected curve name after '" + kw + "'", lineno, 1);
        };
        auto no_more = [&] {
            std::string extra;
            if (ls >> extra) throw ParseError("unexpected '" + extra + "'", lineno, 1);
        };
        if (kw == "genus") {
            if (!(ls >> t.genus) || t.genus < 1) throw ParseError("bad genus", lineno, 1);
            no_more();
        } else if (kw == "curve") {
            std::string name, eq;
            need_name(name);
            if (!(ls >> eq) || eq != "=") throw ParseError("expected '='", lineno, 1);
            std::string rest;
            std::getline(ls, rest);
            if (t.classes.count(name)) throw ParseError("duplicate curve '" + name + "'", lineno, 1);
            t.classes[name] = detail::parse_vector(rest, lineno);
            if (t.genus < 1) throw ParseError("'genus' must come before curves", lineno, 1);
            if (static_cast<int>(t.classes[name].size()) != 2 * t.genus)
                throw ParseError("class of '" + name + "' needs " + std::to_string(2 * t.genus) + " entries", lineno, 1);
        } else if (kw == "disjoint" || kw == "unit" || kw == "alias") {
            std::string a, b;
            need_name(a);
            need_name(b);
            no_more();
            if (kw == "disjoint")
                t.declare_disjoint(a, b);
            else if (kw == "unit")
                t.declare_unit(a, b);
            else
                t.aliases.emplace_back(a, b);
        } else if (kw == "separating") {
            std::string a;
            need_name(a);
            no_more();
            t.separating.insert(a);
        } else {
            throw ParseError("unknown directive '" + kw + "'", lineno, 1);
        }
    }
    if (t.genus < 1) throw ParseError("missing genus", lineno, 1);
    return t;
}

inline std::string render_curve_table(const CurveTable& t) {
    std::string out;
    for (const auto& c : t.comments) out += "# " + c + "\n";
    out += "genus " + std::to_string(t.genus) + "\n";
    for (const auto& [name, cls] : t.classes) out += "curve " + name + " = " + detail::render_vector(cls) + "\n";
    for (const auto& s : t.separating) out += "separating " + s + "\n";
    for (const auto& [a, b] : t.aliases) out += "alias " + a + " " + b + "\n";
    for (const auto& [a, b] : t.unit_pairs) out += "unit " + a + " " + b + "\n";
    for (const auto& [a, b] : t.disjoint_pairs) out += "disjoint " + a + " " + b + "\n";
    return out;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

inline CurveTable load_curve_table(const std::string& path) { return parse_curve_table(read_file(path)); }

// Homology action of words over a table plus definitions. Classes of defined
// letters are computed once: for d = w a w^-1 the class is M(w)^-1 [a].
class HomologyModel {
public:
    HomologyModel(const CurveTable& table, const DefinitionTable& defs) : table_(&table), defs_(&defs) {
        for (const auto& [name, body] : defs) {
            std::vector<std::string> stack;
            try {
                resolve(name, stack);
            } catch (const std::exception& e) {
                errors_[name] = e.what();
            }
        }
    }

    int genus() const { return table_->genus; }
    std::size_t dim() const { return static_cast<std::size_t>(2 * table_->genus); }
    const CurveTable& table() const { return *table_; }
    const DefinitionTable& defs() const { return *defs_; }

    bool knows(const std::string& name) const { return table_->has(name) || derived_.count(name); }

    const HomologyClass& class_of(const std::string& name) const {
        if (defs_->count(name)) {
            auto e = errors_.find(name);
            if (e != errors_.end()) throw std::runtime_error(e->second);
            return derived_.at(name);
        }
        auto it = table_->classes.find(name);
        if (it == table_->classes.end()) throw UnknownCurve(name);
        return it->second;
    }

    // Leftmost letter acts first: M(uv) = M(v) M(u).
    IntMatrix act(const Word& w) const {
        IntMatrix m = IntMatrix::identity(dim());
        for (const auto& l : w) left_multiply_transvection(m, class_of(l.curve), l.sign);
        return m;
    }

private:
    const CurveTable* table_;
    const DefinitionTable* defs_;
    std::map<std::string, HomologyClass> derived_;
    std::map<std::string, std::string> errors_;

    const HomologyClass& resolve(const std::string& name, std::vector<std::string>& stack) {
        auto done = derived_.find(name);
        if (done != derived_.end()) return done->second;
        auto def = defs_->find(name);
        if (def == defs_->end()) {
            auto it = table_->classes.find(name);
            if (it == table_->classes.end()) throw UnknownCurve(name);
            return it->second;
        }
        for (const auto& s : stack)
            if (s == name) throw DefinitionError("cyclic definition involving '" + name + "'");
        stack.push_back(name);
        Word conj;
        Letter core;
        if (!split_conjugate(def->second, conj, core))
            throw DefinitionError("definition '" + name + "' is not a conjugate of a positive letter");
        HomologyClass c = resolve(core.curve, stack);
        IntMatrix m = IntMatrix::identity(dim());
        for (auto it = conj.rbegin(); it != conj.rend(); ++it)
            left_multiply_transvection(m, resolve(it->curve, stack), -it->sign);
        stack.pop_back();
        return derived_[name] = m.apply(c);
    }
};

inline IntMatrix act_on_homology(const Word& w, const CurveTable& table, const DefinitionTable& defs = {}) {
    return HomologyModel(table, defs).act(w);
}

struct Report {
    std::vector<std::string> failures;
    std::vector<std::string> notes;
    bool ok() const { return failures.empty(); }
    void fail(const std::string& s) { failures.push_back(s); }
    void merge(const Report& r, const std::string& prefix = "") {
        for (const auto& f : r.failures) failures.push_back(prefix + f);
        for (const auto& n : r.notes) notes.push_back(prefix + n);
    }
};

inline Report validate_table(const CurveTable& t, const DefinitionTable& defs = {}) {
    Report r;
    if (t.genus < 1) r.fail("genus must be positive");
    for (const auto& [name, cls] : t.classes)
        if (static_cast<int>(cls.size()) != 2 * t.genus) r.fail("class of '" + name + "' has wrong length");
    if (!r.ok()) return r;
    for (const auto& p : check_definitions(defs)) r.fail(p);
    HomologyModel model(t, defs);
    auto pair_value = [&](const NamePair& p, std::int64_t& v) {
        try {
            v = intersection(model.class_of(p.first), model.class_of(p.second));
            return true;
        } catch (const std::exception& e) {
            r.fail(std::string(e.what()) + " in pair (" + p.first + ", " + p.second + ")");
            return false;
        }
    };
    for (const auto& p : t.disjoint_pairs) {
        std::int64_t v;
        if (pair_value(p, v) && v != 0)
            r.fail("disjoint pair (" + p.first + ", " + p.second + ") has intersection " + std::to_string(v));
    }
    for (const auto& p : t.unit_pairs) {
        std::int64_t v;
        if (pair_value(p, v) && v != 1 && v != -1)
            r.fail("unit pair (" + p.first + ", " + p.second + ") has intersection " + std::to_string(v));
    }
    for (const auto& s : t.separating) {
        auto it = t.classes.find(s);
        if (it == t.classes.end())
            r.fail("unknown curve '" + s + "' declared separating");
        else if (!is_zero(it->second))
            r.fail("separating curve '" + s + "' has a nonzero class");
    }
    for (const auto& [a, b] : t.aliases) {
        if (!t.has(a) || !t.has(b))
            r.fail("alias (" + a + ", " + b + ") names an unknown curve");
        else if (!equal_up_to_sign(t.classes.at(a), t.classes.at(b)))
            r.fail("alias " + a + " and " + b + " have different classes");
    }
    return r;
}

} // namespace mcg
