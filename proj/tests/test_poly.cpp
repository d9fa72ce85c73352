#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "korlov/poly.hpp"

using namespace korlov;

static VarTable std_vars(int n) {
    VarTable v;
    for (int i = 0; i < n; ++i) {
        v.names.push_back("x" + std::to_string(i));
        v.degrees.push_back(1);
    }
    return v;
}

TEST_CASE("parser handles the grammar") {
    Field q = Field::rationals();
    auto vars = std_vars(3);
    auto p = parse_poly("x0^2 - x0*x1 + 2*x2", vars, q);
    CHECK(p.terms.size() == 3);
    CHECK(p.to_string(vars) == "2*x2 - x0*x1 + x0^2");  // degrevlex order, degree first

    auto c = parse_poly("3/4", vars, q);
    REQUIRE(c.terms.size() == 1);
    CHECK(c.terms[0].second == Rat(3, 4));

    auto z = parse_poly("x0 - x0", vars, q);
    CHECK(z.is_zero());

    auto m = parse_poly("2*x0^2*x1", vars, q);
    REQUIRE(m.terms.size() == 1);
    CHECK(mono_degree(m.terms[0].first, vars) == 3);

    CHECK(parse_poly(" x0 ^ 2 ", vars, q).terms.size() == 1);  // whitespace insignificant
}

TEST_CASE("parser reports positions for malformed input") {
    Field q = Field::rationals();
    auto vars = std_vars(2);
    CHECK_THROWS_AS(parse_poly("x0^", vars, q), ParseError);
    try {
        parse_poly("x0^", vars, q);
    } catch (const ParseError& e) {
        CHECK(e.position == 3);
    }
    CHECK_THROWS_AS(parse_poly("y0", vars, q), ParseError);
    CHECK_THROWS_AS(parse_poly("x0 +", vars, q), ParseError);
    CHECK_THROWS_AS(parse_poly("x0^0", vars, q), ParseError);  // posint required
    CHECK_THROWS_AS(parse_poly("1/0", vars, q), ParseError);
}

TEST_CASE("homogeneity detection") {
    Field q = Field::rationals();
    auto vars = std_vars(2);
    int d = 0;
    CHECK(parse_poly("x0^2 + x0*x1", vars, q).is_homogeneous(vars, &d));
    CHECK(d == 2);
    CHECK(!parse_poly("x0^2 + x1", vars, q).is_homogeneous(vars, &d));
}

TEST_CASE("monomial enumeration matches binomial counts") {
    auto vars = std_vars(3);
    for (int d = 0; d <= 6; ++d) {
        auto ms = monomials_of_degree(d, vars);
        CHECK((int)ms.size() == (d + 2) * (d + 1) / 2);
        for (size_t i = 1; i < ms.size(); ++i) CHECK(degrevlex_less(ms[i - 1], ms[i], vars));
    }
    // weighted
    VarTable w;
    w.names = {"u", "v"};
    w.degrees = {1, 2};
    CHECK(monomials_of_degree(4, w).size() == 3);  // u^4, u^2 v, v^2
}

TEST_CASE("F_p coefficient reduction in parsing") {
    Field f = Field::prime(5);
    auto vars = std_vars(1);
    auto p = parse_poly("6*x0", vars, f);
    REQUIRE(p.terms.size() == 1);
    CHECK(p.terms[0].second == Rat(1));
    CHECK(parse_poly("5*x0", vars, f).is_zero());
}
