#pragma once
/* Multivariate polynomials with rational coefficients over a declared
 * variable list, and the parser for the input grammar:
 *
 *   expr   := term (('+'|'-') term)*
 *   term   := coeff ('*' factor)* | factor ('*' factor)*
 *   factor := var ('^' posint)?
 *   coeff  := integer | integer '/' posint
 *
 * Whitespace is insignificant. Variables must be declared.
 */
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "korlov/bigint.hpp"
#include "korlov/field.hpp"

namespace korlov {

struct ParseError : std::runtime_error {
    size_t position;
    ParseError(size_t pos, const std::string& msg)
        : std::runtime_error(msg + " at position " + std::to_string(pos)), position(pos) {}
};

struct VarTable {
    std::vector<std::string> names;
    std::vector<int> degrees;  // positive internal degrees
    int count() const { return (int)names.size(); }
    int index_of(const std::string& n) const;  // -1 if absent
};

using Mono = std::vector<uint16_t>;  // exponent vector, length = vars.count()

int mono_degree(const Mono& m, const VarTable& vars);
std::string mono_to_string(const Mono& m, const VarTable& vars);
// degree-reverse-lexicographic: lower degree first; ties broken by the last
// variable with differing exponent, larger exponent there coming later
bool degrevlex_less(const Mono& a, const Mono& b, const VarTable& vars);

struct Poly {
    // terms sorted by degrevlex, no zero coefficients
    std::vector<std::pair<Mono, Rat>> terms;

    bool is_zero() const { return terms.empty(); }
    bool is_homogeneous(const VarTable& vars, int* degree_out) const;
    std::string to_string(const VarTable& vars) const;

    static Poly zero() { return {}; }
    static Poly monomial(Mono m, Rat c);
    void add_term(const Mono& m, const Rat& c, const VarTable& vars, const Field& f);
};

Poly parse_poly(const std::string& text, const VarTable& vars, const Field& field);

// all monomials of total degree d, in degrevlex order
std::vector<Mono> monomials_of_degree(int d, const VarTable& vars);

}  // namespace korlov
