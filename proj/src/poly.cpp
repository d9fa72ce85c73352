#include "korlov/poly.hpp"

#include <algorithm>

namespace korlov {

int VarTable::index_of(const std::string& n) const {
    for (int i = 0; i < (int)names.size(); ++i)
        if (names[i] == n) return i;
    return -1;
}

int mono_degree(const Mono& m, const VarTable& vars) {
    int d = 0;
    for (size_t i = 0; i < m.size(); ++i) d += (int)m[i] * vars.degrees[i];
    return d;
}

bool degrevlex_less(const Mono& a, const Mono& b, const VarTable& vars) {
    int da = mono_degree(a, vars), db = mono_degree(b, vars);
    if (da != db) return da < db;
    for (size_t i = a.size(); i-- > 0;)
        if (a[i] != b[i]) return a[i] > b[i];
    return false;
}

std::string mono_to_string(const Mono& m, const VarTable& vars) {
    std::string s;
    for (size_t i = 0; i < m.size(); ++i) {
        if (!m[i]) continue;
        if (!s.empty()) s += "*";
        s += vars.names[i];
        if (m[i] > 1) s += "^" + std::to_string((int)m[i]);
    }
    return s.empty() ? "1" : s;
}

Poly Poly::monomial(Mono m, Rat c) {
    Poly p;
    if (!c.is_zero()) p.terms.push_back({std::move(m), std::move(c)});
    return p;
}

void Poly::add_term(const Mono& m, const Rat& c, const VarTable& vars, const Field& f) {
    Rat rc = f.reduce(c);
    if (rc.is_zero()) return;
    auto it = std::lower_bound(terms.begin(), terms.end(), m, [&](const auto& t, const Mono& mm) {
        return degrevlex_less(t.first, mm, vars);
    });
    if (it != terms.end() && it->first == m) {
        it->second = f.add(it->second, rc);
        if (it->second.is_zero()) terms.erase(it);
    } else {
        terms.insert(it, {m, rc});
    }
}

bool Poly::is_homogeneous(const VarTable& vars, int* degree_out) const {
    if (terms.empty()) {
        if (degree_out) *degree_out = 0;
        return true;
    }
    int d = mono_degree(terms[0].first, vars);
    for (auto& [m, c] : terms)
        if (mono_degree(m, vars) != d) return false;
    if (degree_out) *degree_out = d;
    return true;
}

std::string Poly::to_string(const VarTable& vars) const {
    if (terms.empty()) return "0";
    std::string s;
    for (auto& [m, c] : terms) {
        std::string cs = c.to_string();
        if (!s.empty()) {
            if (cs[0] == '-') {
                s += " - ";
                cs = cs.substr(1);
            } else
                s += " + ";
        }
        std::string ms = mono_to_string(m, vars);
        if (ms == "1")
            s += cs;
        else if (cs == "1")
            s += ms;
        else if (cs == "-1")
            s += "-" + ms;
        else
            s += cs + "*" + ms;
    }
    return s;
}

/* ---------------- parser ---------------- */

namespace {

struct Parser {
    const std::string& s;
    const VarTable& vars;
    const Field& field;
    size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t' || s[pos] == '\n' || s[pos] == '\r')) ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= s.size();
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool accept(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    std::string integer_digits() {
        skip_ws();
        size_t start = pos;
        if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
        size_t d0 = pos;
        while (pos < s.size() && isdigit((unsigned char)s[pos])) ++pos;
        if (pos == d0) throw ParseError(pos, "expected integer");
        return s.substr(start, pos - start);
    }

    long long posint() {
        skip_ws();
        size_t d0 = pos;
        while (pos < s.size() && isdigit((unsigned char)s[pos])) ++pos;
        if (pos == d0) throw ParseError(pos, "expected positive integer");
        long long v = std::stoll(s.substr(d0, pos - d0));
        if (v <= 0) throw ParseError(d0, "expected positive integer");
        return v;
    }

    std::string identifier() {
        skip_ws();
        size_t start = pos;
        if (pos >= s.size() || !(isalpha((unsigned char)s[pos]) || s[pos] == '_'))
            throw ParseError(pos, "expected variable");
        ++pos;
        while (pos < s.size() && (isalnum((unsigned char)s[pos]) || s[pos] == '_')) ++pos;
        return s.substr(start, pos - start);
    }

    // factor := var ('^' posint)?
    Mono factor() {
        size_t at = pos;
        std::string name = identifier();
        int vi = vars.index_of(name);
        if (vi < 0) throw ParseError(at, "undeclared variable '" + name + "'");
        long long e = 1;
        if (accept('^')) e = posint();
        if (e > 60000) throw ParseError(at, "exponent too large");
        Mono m(vars.count(), 0);
        m[vi] = (uint16_t)e;
        return m;
    }

    static Mono mono_mul(const Mono& a, const Mono& b) {
        Mono r = a;
        for (size_t i = 0; i < r.size(); ++i) r[i] = (uint16_t)(r[i] + b[i]);
        return r;
    }

    // term := coeff ('*' factor)* | factor ('*' factor)*
    void term(Poly& out, bool negate) {
        skip_ws();
        Rat coef(1);
        Mono m(vars.count(), 0);
        char c = peek();
        if (isdigit((unsigned char)c) || c == '-' || c == '+') {
            std::string num = integer_digits();
            if (accept('/')) {
                long long den = posint();
                coef = Rat::from_big(BigInt::from_string(num), BigInt(den));
            } else {
                coef = Rat::from_big(BigInt::from_string(num), BigInt(1));
            }
            while (accept('*')) m = mono_mul(m, factor());
        } else {
            m = factor();
            while (accept('*')) m = mono_mul(m, factor());
        }
        if (negate) coef = -coef;
        out.add_term(m, coef, vars, field);
    }

    Poly expr() {
        Poly p;
        term(p, false);
        while (true) {
            skip_ws();
            if (accept('+'))
                term(p, false);
            else if (accept('-'))
                term(p, true);
            else
                break;
        }
        if (!eof()) throw ParseError(pos, "unexpected input");
        return p;
    }
};

}  // namespace

Poly parse_poly(const std::string& text, const VarTable& vars, const Field& field) {
    Parser p{text, vars, field};
    return p.expr();
}

static void enumerate_monos(int vi, int remaining, Mono& cur, const VarTable& vars, std::vector<Mono>& out) {
    if (vi == vars.count()) {
        if (remaining == 0) out.push_back(cur);
        return;
    }
    int w = vars.degrees[vi];
    for (int e = 0; e * w <= remaining; ++e) {
        cur[vi] = (uint16_t)e;
        enumerate_monos(vi + 1, remaining - e * w, cur, vars, out);
    }
    cur[vi] = 0;
}

std::vector<Mono> monomials_of_degree(int d, const VarTable& vars) {
    std::vector<Mono> out;
    if (d < 0) return out;
    if (vars.count() == 0) {
        if (d == 0) out.push_back(Mono{});
        return out;
    }
    Mono cur(vars.count(), 0);
    enumerate_monos(0, d, cur, vars, out);
    std::sort(out.begin(), out.end(), [&](const Mono& a, const Mono& b) { return degrevlex_less(a, b, vars); });
    return out;
}

}  // namespace korlov
