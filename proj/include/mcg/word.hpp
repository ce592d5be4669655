#pragma once

#include <cctype>
#include <cstddef>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mcg {

struct Letter {
    std::string curve;
    int sign = 1;

    Letter inverse() const { return {curve, -sign}; }
    friend bool operator==(const Letter&, const Letter&) = default;
    friend auto operator<=>(const Letter&, const Letter&) = default;
};

using Word = std::vector<Letter>;

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, int line, int column)
        : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
          line_(line), column_(column) {}
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

inline bool is_identifier(std::string_view s) {
    if (s.empty() || !(s[0] >= 'a' && s[0] <= 'z')) return false;
    for (char ch : s)
        if (!((ch >= 'a' && ch <= 'z') || (ch >= '0' && ch <= '9') || ch == '_')) return false;
    return true;
}

inline Word invert(const Word& w) {
    Word out;
    out.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(it->inverse());
    return out;
}

inline Word concat(const Word& a, const Word& b) {
    Word out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

inline Word power(const Word& w, int n) {
    Word base = n < 0 ? invert(w) : w;
    Word out;
    for (int i = 0; i < (n < 0 ? -n : n); ++i) out.insert(out.end(), base.begin(), base.end());
    return out;
}

namespace detail {

class WordParser {
public:
    explicit WordParser(std::string_view text) : text_(text) {}

    Word parse() {
        Word w = parse_seq(false);
        skip();
        if (pos_ < text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
        return w;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, col_); }

    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    void skip() {
        while (pos_ < text_.size()) {
            char ch = text_[pos_];
            if (ch == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(ch))) {
                advance();
            } else {
                break;
            }
        }
    }

    Word parse_seq(bool nested) {
        Word out;
        for (;;) {
            skip();
            if (pos_ >= text_.size()) {
                if (nested) fail("missing ')'");
                return out;
            }
            char ch = text_[pos_];
            if (ch == ')') {
                if (!nested) fail("unmatched ')'");
                return out;
            }
            Word term;
            if (ch == '(') {
                advance();
                term = parse_seq(true);
                advance();  // ')'
                skip();
                if (pos_ >= text_.size() || text_[pos_] != '^') fail("parenthesized group needs a power");
                term = power(term, parse_power());
            } else if (ch >= 'a' && ch <= 'z') {
                std::string name;
                while (pos_ < text_.size()) {
                    char c = text_[pos_];
                    if (!((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_')) break;
                    name.push_back(c);
                    advance();
                }
                term = {Letter{name, 1}};
                if (pos_ < text_.size() && text_[pos_] == '^') term = power(term, parse_power());
            } else {
                fail("unexpected character '" + std::string(1, ch) + "'");
            }
            out.insert(out.end(), term.begin(), term.end());
        }
    }

    int parse_power() {
        advance();  // '^'
        bool neg = false;
        if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
            neg = text_[pos_] == '-';
            advance();
        }
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
            fail("expected integer exponent");
        long value = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            value = value * 10 + (text_[pos_] - '0');
            if (value > 100000) fail("exponent too large");
            advance();
        }
        if (value == 0) fail("exponent 0 is not allowed");
        return static_cast<int>(neg ? -value : value);
    }
};

} // namespace detail

inline Word parse_word(std::string_view text) { return detail::WordParser(text).parse(); }

inline std::string render_letter(const Letter& l) { return l.sign < 0 ? l.curve + "^-1" : l.curve; }

inline std::string render_word(const Word& w) {
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out.push_back(' ');
        out += render_letter(w[i]);
    }
    return out;
}

inline Word free_reduce(const Word& w) {
    Word out;
    for (const auto& l : w) {
        if (!out.empty() && out.back().curve == l.curve && out.back().sign == -l.sign)
            out.pop_back();
        else
            out.push_back(l);
    }
    return out;
}

inline bool is_freely_reduced(const Word& w) {
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
        if (w[i] == w[i + 1].inverse()) return false;
    return true;
}

inline Word cyclic_rotate(const Word& w, long k) {
    if (w.empty()) return w;
    long n = static_cast<long>(w.size());
    long s = ((k % n) + n) % n;
    Word out(w.begin() + s, w.end());
    out.insert(out.end(), w.begin(), w.begin() + s);
    return out;
}

// name -> definition word, each a conjugate w a w^-1 of one positive letter
using DefinitionTable = std::map<std::string, Word>;

class DefinitionError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Splits a definition into (conjugator, core letter). Returns false if the word
// is not of the form w a w^-1 with a positive.
inline bool split_conjugate(const Word& def, Word& conj, Letter& core) {
    if (def.size() % 2 == 0) return false;
    std::size_t mid = def.size() / 2;
    if (def[mid].sign != 1) return false;
    for (std::size_t i = 0; i < mid; ++i)
        if (def[i] != def[def.size() - 1 - i].inverse()) return false;
    conj.assign(def.begin(), def.begin() + static_cast<long>(mid));
    core = def[mid];
    return true;
}

namespace detail {

inline void expand_into(const Letter& l, const DefinitionTable& defs, std::vector<std::string>& stack, Word& out) {
    auto it = defs.find(l.curve);
    if (it == defs.end()) {
        out.push_back(l);
        return;
    }
    for (const auto& s : stack)
        if (s == l.curve) throw DefinitionError("cyclic definition involving '" + l.curve + "'");
    stack.push_back(l.curve);
    Word body = l.sign > 0 ? it->second : invert(it->second);
    for (const auto& x : body) expand_into(x, defs, stack, out);
    stack.pop_back();
}

} // namespace detail

inline Word expand_definitions(const Word& w, const DefinitionTable& defs) {
    Word out;
    std::vector<std::string> stack;
    for (const auto& l : w) detail::expand_into(l, defs, stack, out);
    return out;
}

// Variant that also rejects letters that are neither defined nor in the base alphabet.
inline Word expand_definitions(const Word& w, const DefinitionTable& defs, const std::set<std::string>& base) {
    Word out = expand_definitions(w, defs);
    for (const auto& l : out)
        if (!base.count(l.curve)) throw DefinitionError("unknown letter '" + l.curve + "'");
    return out;
}

// Problems with a definition table: cycles and non-conjugate entries.
inline std::vector<std::string> check_definitions(const DefinitionTable& defs) {
    std::vector<std::string> problems;
    for (const auto& [name, body] : defs) {
        Word conj;
        Letter core;
        if (!split_conjugate(body, conj, core))
            problems.push_back("definition '" + name + "' is not a conjugate of a positive letter");
        try {
            expand_definitions(Word{Letter{name, 1}}, defs);
        } catch (const DefinitionError& e) {
            problems.push_back(e.what());
        }
    }
    return problems;
}

inline DefinitionTable parse_definitions(std::string_view text) {
    DefinitionTable defs;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto eq = line.find('=');
        std::istringstream ls(line.substr(0, eq == std::string::npos ? line.size() : eq));
        std::string name, extra;
        if (!(ls >> name)) continue;
        if (eq == std::string::npos || (ls >> extra) || !is_identifier(name))
            throw ParseError("expected '<name> = <word>'", lineno, 1);
        if (defs.count(name)) throw ParseError("duplicate definition '" + name + "'", lineno, 1);
        try {
            defs[name] = parse_word(line.substr(eq + 1));
        } catch (const ParseError& e) {
            throw ParseError(e.what(), lineno, static_cast<int>(eq) + 2);
        }
    }
    return defs;
}

inline std::string render_definitions(const DefinitionTable& defs) {
    std::string out;
    for (const auto& [name, body] : defs) out += name + " = " + render_word(body) + "\n";
    return out;
}

struct Positivity {
    bool raw = true;       // every letter has sign +1, defined letters taken as atoms
    bool expanded = true;  // every letter of the fully expanded word has sign +1
};

inline Positivity positivity(const Word& w, const DefinitionTable& defs) {
    Positivity p;
    for (const auto& l : w)
        if (l.sign < 0) p.raw = false;
    for (const auto& l : expand_definitions(w, defs))
        if (l.sign < 0) p.expanded = false;
    return p;
}

// Defined letters are twists about image curves, so a word is positive when
// every letter (defined or not) carries sign +1.
inline bool is_positive(const Word& w) {
    for (const auto& l : w)
        if (l.sign < 0) return false;
    return true;
}

inline long letter_count(const Word& w) {
    if (!is_positive(w)) throw std::domain_error("letter_count needs a positive word");
    return static_cast<long>(w.size());
}

} // namespace mcg
