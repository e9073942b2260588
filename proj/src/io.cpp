#include "nctorus/io.hpp"

#include <cctype>
#include <sstream>
#include <vector>

namespace nct {

// ---------------------------------------------------------------------------
// Rational text
// ---------------------------------------------------------------------------

std::string to_string(const Rational& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

Rational parse_rational(const std::string& s) {
    size_t i = 0;
    auto fail = [&](const char* why) {
        throw parse_error("bad rational '" + s + "': " + why);
    };
    if (s.empty()) fail("empty");
    bool neg = false;
    if (s[i] == '+' || s[i] == '-') neg = s[i++] == '-';
    if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i]))) fail("expected digit");
    Integer num = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) num = num * 10 + (s[i++] - '0');
    Integer den = 1;
    if (i < s.size() && s[i] == '/') {
        ++i;
        if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i]))) fail("expected denominator");
        den = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) den = den * 10 + (s[i++] - '0');
        if (den == 0) fail("zero denominator");
    }
    if (i != s.size()) fail("trailing characters");
    Rational r(num, den);
    return neg ? -r : r;
}

// ---------------------------------------------------------------------------
// ScalarPoly text
// ---------------------------------------------------------------------------

static std::string mono_text(const ScalarMono& m, bool explicit_exp) {
    std::string out;
    for (int i = 0; i < kNumVars; ++i) {
        if (m.e[i] == 0) continue;
        if (!out.empty()) out += '*';
        out += var_name(static_cast<Var>(i));
        if (explicit_exp || m.e[i] != 1) out += '^' + std::to_string(m.e[i]);
    }
    return out;
}

std::string to_string(const ScalarPoly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        Rational cp = c;
        if (first) {
            first = false;
        } else if (cp < 0) {
            out += " - ";
            cp = -cp;
        } else {
            out += " + ";
        }
        std::string mt = mono_text(m, /*explicit_exp=*/true);
        if (mt.empty()) out += to_string(cp);
        else out += to_string(cp) + "*" + mt;
    }
    return out;
}

namespace {

struct Cursor {
    const std::string& s;
    size_t i = 0;

    bool done() const { return i >= s.size(); }
    char peek() const { return i < s.size() ? s[i] : '\0'; }
    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    [[noreturn]] void fail(const std::string& why) const {
        throw parse_error("parse error at position " + std::to_string(i) + ": " + why +
                          " in '" + s + "'");
    }
    int read_int() {
        skip_ws();
        bool neg = false;
        if (peek() == '+' || peek() == '-') neg = s[i++] == '-';
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected integer");
        long v = 0;
        while (std::isdigit(static_cast<unsigned char>(peek()))) v = v * 10 + (s[i++] - '0');
        return static_cast<int>(neg ? -v : v);
    }
    std::string read_name() {
        skip_ws();
        size_t start = i;
        while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])))) ++i;
        if (start == i) fail("expected name");
        return s.substr(start, i - start);
    }
};

}  // namespace

ScalarPoly parse_scalar_poly(const std::string& text) {
    Cursor c{text};
    ScalarPoly out;
    c.skip_ws();
    if (c.done()) c.fail("empty polynomial");
    bool first = true;
    while (true) {
        c.skip_ws();
        if (c.done()) break;
        int sign = 1;
        if (c.peek() == '+' || c.peek() == '-') {
            sign = c.s[c.i++] == '-' ? -1 : 1;
            c.skip_ws();
        } else if (!first) {
            c.fail("expected '+' or '-' between terms");
        }
        // term: [rational][(*var^exp)*]
        Rational coeff = 1;
        ScalarMono mono;
        bool saw_factor = false;
        if (std::isdigit(static_cast<unsigned char>(c.peek()))) {
            size_t start = c.i;
            while (std::isdigit(static_cast<unsigned char>(c.peek()))) ++c.i;
            if (c.peek() == '/') {
                ++c.i;
                while (std::isdigit(static_cast<unsigned char>(c.peek()))) ++c.i;
            }
            coeff = parse_rational(c.s.substr(start, c.i - start));
            saw_factor = true;
        }
        while (true) {
            c.skip_ws();
            if (c.peek() == '*') {
                ++c.i;
                c.skip_ws();
            } else if (saw_factor) {
                break;
            }
            if (!std::isalpha(static_cast<unsigned char>(c.peek()))) {
                if (saw_factor) break;
                c.fail("expected variable");
            }
            std::string name = c.read_name();
            auto v = var_from_name(name);
            if (!v) c.fail("unknown variable '" + name + "'");
            int exp = 1;
            if (c.peek() == '^') {
                ++c.i;
                exp = c.read_int();
            }
            mono.set(*v, mono.exp(*v) + exp);
            saw_factor = true;
        }
        if (!(coeff == 0)) out.add_term(mono, sign == 1 ? coeff : -coeff);
        first = false;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Word text
// ---------------------------------------------------------------------------

static std::string twist_text(int q2) {
    if (q2 % 2 == 0) return std::to_string(q2 / 2);
    return std::to_string(q2) + "/2";
}

static std::string atom_text(const Atom& a, bool canonical) {
    switch (a.kind) {
        case AtomKind::B0:
            return (canonical || a.p != 1) ? "b0^" + std::to_string(a.p) : "b0";
        case AtomKind::K:
            return (canonical || a.p != 1) ? "k^" + std::to_string(a.p) : "k";
        case AtomKind::DK:
        case AtomKind::LogK: {
            std::string head = a.kind == AtomKind::DK ? "dk" : "logk";
            std::string out = head + "(" + std::to_string(a.a) + "," + std::to_string(a.b);
            if (canonical || a.q2 != 0) out += ";" + twist_text(a.q2);
            return out + ")";
        }
    }
    return "?";
}

std::string to_string(const Word& w) {
    if (w.empty()) return "1";
    std::string out;
    for (const Atom& a : w.atoms) {
        if (!out.empty()) out += ' ';
        out += atom_text(a, /*canonical=*/true);
    }
    return out;
}

Word parse_word(const std::string& text) {
    Cursor c{text};
    std::vector<Atom> atoms;
    c.skip_ws();
    if (c.done()) c.fail("empty word");
    while (true) {
        c.skip_ws();
        if (c.done()) break;
        if (c.peek() == '1' && atoms.empty()) {
            ++c.i;
            c.skip_ws();
            if (!c.done()) c.fail("unexpected token after '1'");
            break;
        }
        std::string name = c.read_name();
        if (name == "b0" || name == "k") {
            int exp = 1;
            if (c.peek() == '^') {
                ++c.i;
                exp = c.read_int();
            }
            atoms.push_back(name == "b0" ? Atom::b0(exp) : Atom::k(exp));
        } else if (name == "dk" || name == "logk") {
            if (c.peek() != '(') c.fail("expected '(' after " + name);
            ++c.i;
            int a = c.read_int();
            c.skip_ws();
            if (c.peek() != ',') c.fail("expected ','");
            ++c.i;
            int b = c.read_int();
            c.skip_ws();
            int q2 = 0;
            if (c.peek() == ';') {
                ++c.i;
                int num = c.read_int();
                c.skip_ws();
                if (c.peek() == '/') {
                    ++c.i;
                    int den = c.read_int();
                    if (den != 2) c.fail("twist denominator must be 2");
                    q2 = num;
                } else {
                    q2 = 2 * num;
                }
            }
            c.skip_ws();
            if (c.peek() != ')') c.fail("expected ')'");
            ++c.i;
            atoms.push_back(name == "dk" ? Atom::dk(a, b, q2) : Atom::logk(a, b, q2));
        } else {
            c.fail("unknown atom '" + name + "'");
        }
    }
    return Word(std::move(atoms));
}

// ---------------------------------------------------------------------------
// NCPoly text
// ---------------------------------------------------------------------------

std::string to_string(const NCPoly& p) {
    if (p.is_zero()) return "0\n";
    std::string out;
    for (const auto& [w, c] : p.terms()) {
        out += to_string(c);
        out += " | ";
        out += to_string(w);
        out += '\n';
    }
    return out;
}

NCPoly parse_ncpoly(const std::string& text) {
    NCPoly out;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') continue;
        if (line.substr(start) == "0") continue;
        size_t bar = line.find(" | ");
        if (bar == std::string::npos)
            throw parse_error("line " + std::to_string(lineno) + ": missing ' | ' separator");
        try {
            ScalarPoly c = parse_scalar_poly(line.substr(0, bar));
            Word w = parse_word(line.substr(bar + 3));
            out.add_term(w, c);
        } catch (const parse_error& e) {
            throw parse_error("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Pretty display form
// ---------------------------------------------------------------------------

static std::string pretty_word(const Word& w) {
    if (w.empty()) return "";
    std::string out;
    for (const Atom& a : w.atoms) {
        if (!out.empty()) out += '*';
        out += atom_text(a, /*canonical=*/false);
    }
    return out;
}

// Monomial restricted to tau variables / to the rest.
static ScalarMono tau_part(const ScalarMono& m) {
    ScalarMono t;
    t.set(Var::tau1, m.exp(Var::tau1));
    t.set(Var::tau2, m.exp(Var::tau2));
    return t;
}

static ScalarMono display_part(const ScalarMono& m) {
    ScalarMono d = m;
    d.set(Var::tau1, 0);
    d.set(Var::tau2, 0);
    return d;
}

static std::string pretty_scalar(const ScalarPoly& p) {
    std::string out;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        Rational cp = c;
        if (first) {
            first = false;
            if (cp < 0) {
                out += '-';
                cp = -cp;
            }
        } else if (cp < 0) {
            out += '-';
            cp = -cp;
        } else {
            out += '+';
        }
        std::string mt = mono_text(m, /*explicit_exp=*/false);
        if (mt.empty()) out += to_string(cp);
        else if (cp == 1) out += mt;
        else out += to_string(cp) + "*" + mt;
    }
    return out.empty() ? "0" : out;
}

std::string pretty(const NCPoly& p) {
    if (p.is_zero()) return "0";
    struct Chunk {
        Rational lead_sign;
        std::string body;
    };
    std::vector<Chunk> chunks;
    for (const auto& [w, poly] : p.terms()) {
        // Group the coefficient by its non-tau monomial.
        std::map<ScalarMono, ScalarPoly, MonoLess> groups;
        for (const auto& [m, c] : poly.terms())
            groups[display_part(m)].add_term(tau_part(m), c);
        // Pure powers before mixed ones: ascending min(xi exponents), then
        // descending xi1.
        std::vector<std::pair<ScalarMono, ScalarPoly>> ordered(groups.begin(), groups.end());
        std::stable_sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
            int ma = std::min(a.first.exp(Var::xi1), a.first.exp(Var::xi2));
            int mb = std::min(b.first.exp(Var::xi1), b.first.exp(Var::xi2));
            if (ma != mb) return ma < mb;
            return a.first.exp(Var::xi1) > b.first.exp(Var::xi1);
        });
        for (auto& [dm, tp] : ordered) {
            std::string piece;
            Rational sign = 1;
            if (tp.terms().size() == 1) {
                auto [tm, c] = *tp.terms().begin();
                Rational cp = c;
                if (cp < 0) {
                    sign = -1;
                    cp = -cp;
                }
                std::string factors = mono_text(tm * dm, /*explicit_exp=*/false);
                std::string wt = pretty_word(w);
                if (!wt.empty()) factors = factors.empty() ? wt : factors + "*" + wt;
                if (factors.empty()) piece = to_string(cp);
                else if (cp == 1) piece = factors;
                else piece = to_string(cp) + "*" + factors;
            } else {
                piece = "(" + pretty_scalar(tp) + ")";
                std::string rest = mono_text(dm, /*explicit_exp=*/false);
                if (!rest.empty()) piece += "*" + rest;
                std::string wt = pretty_word(w);
                if (!wt.empty()) piece += "*" + wt;
            }
            chunks.push_back({sign, piece});
        }
    }
    std::string out;
    for (size_t i = 0; i < chunks.size(); ++i) {
        if (i == 0) {
            if (chunks[i].lead_sign < 0) out += "-";
        } else {
            out += chunks[i].lead_sign < 0 ? " - " : " + ";
        }
        out += chunks[i].body;
    }
    return out;
}

std::uint64_t content_hash(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace nct
