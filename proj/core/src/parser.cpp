#include "ndsos/parser.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace ndsos {

namespace {

struct Lexer {
    const std::string& text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= text.size();
    }
    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }
    bool accept(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    std::string read_integer() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) throw ParseError("expected integer", start);
        return text.substr(start, pos - start);
    }

    std::string read_identifier() {
        skip_ws();
        std::size_t start = pos;
        if (pos >= text.size() || !std::isalpha(static_cast<unsigned char>(text[pos])))
            throw ParseError("expected variable name", start);
        ++pos;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
            ++pos;
        return text.substr(start, pos - start);
    }
};

}  // namespace

Polynomial parse_polynomial(const std::string& text, const std::vector<std::string>& variables) {
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < variables.size(); ++i) index[variables[i]] = i;

    Polynomial out(variables.size());
    Lexer lx{text};

    bool first = true;
    while (!lx.eof()) {
        int sign = 1;
        if (lx.accept('+')) {
        } else if (lx.accept('-')) {
            sign = -1;
        } else if (!first) {
            throw ParseError("expected '+' or '-' between terms", lx.pos);
        }
        // Additional prefixed signs fold in ("--x" is x).
        for (;;) {
            if (lx.accept('-')) sign = -sign;
            else if (lx.accept('+')) {
            } else
                break;
        }
        first = false;
        if (lx.eof()) throw ParseError("dangling sign", lx.pos);

        Rational coeff(sign);
        bool saw_number = false;
        if (std::isdigit(static_cast<unsigned char>(lx.peek()))) {
            std::string num = lx.read_integer();
            if (lx.accept('/')) {
                std::size_t den_pos = lx.pos;
                std::string den = lx.read_integer();
                if (rat_from_string(den) == 0) throw ParseError("zero denominator", den_pos);
                coeff *= rat_from_string(num + "/" + den);
            } else {
                coeff *= rat_from_string(num);
            }
            saw_number = true;
            if (lx.accept('*') && lx.eof()) throw ParseError("dangling '*'", lx.pos);
        }

        Exponent e(variables.size());
        bool saw_variable = false;
        while (!lx.eof() && std::isalpha(static_cast<unsigned char>(lx.peek()))) {
            std::size_t name_pos = lx.pos;
            std::string name = lx.read_identifier();
            auto it = index.find(name);
            if (it == index.end()) throw ParseError("unknown variable '" + name + "'", name_pos);
            int power = 1;
            if (lx.accept('^')) {
                if (lx.peek() == '-') throw ParseError("negative exponent", lx.pos);
                power = std::stoi(lx.read_integer());
            }
            long next = static_cast<long>(e[it->second]) + power;
            if (next > (1L << 30)) throw ParseError("exponent overflow", name_pos);
            e[it->second] = static_cast<int>(next);
            saw_variable = true;
            if (lx.accept('*') && lx.eof()) throw ParseError("dangling '*'", lx.pos);
        }
        if (!saw_number && !saw_variable) throw ParseError("expected term", lx.pos);

        out.add_term(e, coeff);
    }
    return out;
}

std::vector<std::string> infer_variables(const std::string& text) {
    std::vector<std::string> vars;
    for (std::size_t i = 0; i < text.size();) {
        if (std::isalpha(static_cast<unsigned char>(text[i]))) {
            std::size_t start = i;
            ++i;
            while (i < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_'))
                ++i;
            std::string name = text.substr(start, i - start);
            if (std::find(vars.begin(), vars.end(), name) == vars.end()) vars.push_back(name);
        } else {
            ++i;
        }
    }
    return vars;
}

std::vector<std::string> default_variables(std::size_t nvars) {
    static const char* kShort[] = {"x", "y", "z", "w"};
    std::vector<std::string> out;
    for (std::size_t i = 0; i < nvars; ++i)
        out.push_back(nvars <= 4 ? kShort[i] : "x" + std::to_string(i + 1));
    return out;
}

std::string to_string(const Polynomial& f, const std::vector<std::string>& variables,
                      const LocalOrder& order) {
    if (f.nvars() != variables.size()) throw std::invalid_argument("variable list length mismatch");
    if (f.is_zero()) return "0";

    std::vector<const Exponent*> keys;
    keys.reserve(f.term_count());
    for (const auto& [e, c] : f.terms()) keys.push_back(&e);
    std::sort(keys.begin(), keys.end(),
              [&](const Exponent* a, const Exponent* b) { return order.greater(*a, *b); });

    std::string s;
    for (const Exponent* e : keys) {
        Rational c = f.coeff(*e);
        bool negative = c < 0;
        Rational mag = negative ? Rational(-c) : c;
        if (s.empty()) {
            if (negative) s += "-";
        } else {
            s += negative ? " - " : " + ";
        }
        std::string monostr;
        for (std::size_t i = 0; i < variables.size(); ++i) {
            if ((*e)[i] == 0) continue;
            if (!monostr.empty()) monostr += "*";
            monostr += variables[i];
            if ((*e)[i] > 1) monostr += "^" + std::to_string((*e)[i]);
        }
        if (monostr.empty()) {
            s += rat_str(mag);
        } else if (mag == 1) {
            s += monostr;
        } else {
            s += rat_str(mag) + "*" + monostr;
        }
    }
    return s;
}

}  // namespace ndsos
