#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "korlov/invariants.hpp"

using namespace korlov;

static VarTable std_vars(int n) {
    VarTable v;
    for (int i = 0; i < n; ++i) {
        v.names.push_back("x" + std::to_string(i));
        v.degrees.push_back(1);
    }
    return v;
}

TEST_CASE("ext_table(k,k): basics and concentration") {
    Field q = Field::rationals();
    auto a = DgAlgebra::koszul_complex(q, std_vars(2), {"x0^2"});
    auto r = resolve_ground_field(a, 8, -12);
    auto n = realize_ground_field(a, {0, 8, -10, 0});
    ExtOptions eo;
    eo.p_lo = 0;
    eo.p_hi = 8;
    eo.j_lo = -8;
    eo.j_hi = 3;
    auto t = ext_table(r, n, eo);
    // Ext^0(k,k)_0 = 1 for every connected algebra
    CHECK(t.dim_at({0, 0}) == 1);
    CHECK(t.certified_at({0, 0}));
    // concentrated in internal degrees <= 0
    for (auto& [b, e] : t.entries)
        if (b.i > 0 && e.certified) CHECK(e.dim == 0);
    // Ext^p(k,k)_0 = 0 for p != 0
    for (int p = 1; p <= 8; ++p) CHECK(t.dim_at({0, p}) == 0);
    // tor(k,k) dims match generator counts of the minimal resolution
    std::map<Bidegree, long long> counts;
    for (auto& g : r.free.gens) counts[g.bd]++;
    for (int p = 0; p <= 6; ++p)
        for (int j = -6; j <= 0; ++j) {
            Bidegree gb{-j, -p};
            long long expect = counts.count(gb) ? counts[gb] : 0;
            if (t.certified_at({j, p})) CHECK(t.dim_at({j, p}) == expect);
        }
}

TEST_CASE("Ext_E(k,E) of an exterior algebra: single entry at internal degree d") {
    Field q = Field::rationals();
    auto e = DgAlgebra::exterior_algebra(q, {1, 1, 1});
    int d = 3;
    GorensteinOptions go;
    go.D = 8;
    go.p_lo = -8;
    go.p_hi = 8;
    go.j_lo = -8;
    go.j_hi = 8;
    auto reading = gorenstein_parameter(e, {0, 8, -8, 0}, go);
    CHECK(reading.certified);
    CHECK(reading.a == -d);
    // the single nonzero entry sits at internal degree d
    long long nonzero = 0;
    for (auto& [b, en] : reading.table.entries)
        if (en.dim != 0) {
            ++nonzero;
            CHECK(b.i == d);
            CHECK(en.dim == 1);
        }
    CHECK(nonzero == 1);
}

TEST_CASE("gorenstein_parameter: k[x]/(x^3) has a = -2") {
    Field q = Field::rationals();
    auto a = DgAlgebra::truncated_polynomial(q, 1, 3);
    GorensteinOptions go;
    go.D = 10;
    go.j_lo = -10;
    go.j_hi = 6;
    auto reading = gorenstein_parameter(a, {0, 10, -10, 0}, go);
    CHECK(reading.certified);
    CHECK(reading.a == -2);
    CHECK(reading.n == 0);
}

TEST_CASE("gorenstein_parameter: polynomial ring k[x0,x1] has a = 2") {
    Field q = Field::rationals();
    auto a = DgAlgebra::koszul_complex(q, std_vars(2), {});
    GorensteinOptions go;
    go.D = 6;
    go.p_hi = 6;
    auto reading = gorenstein_parameter(a, {0, 8, -8, 0}, go);
    CHECK(reading.certified);
    CHECK(reading.a == 2);
    CHECK(reading.n == -2);  // RHom(k, S) = k(2)[-2]
}

TEST_CASE("gorenstein_parameter agrees with the shortcut formula (small Koszul instances)") {
    Field f = Field::prime(32003);
    struct Case {
        int nvars;
        std::vector<std::string> forms;
        std::vector<int> degs;
    };
    std::vector<Case> cases = {
        {2, {"x0^2"}, {2}},
        {2, {"x0^2", "x1^2"}, {2, 2}},
        {3, {"x0*x1"}, {2}},
        {1, {"x0^3"}, {3}},
        {3, {"x0^2", "x1^3"}, {2, 3}},
    };
    for (auto& c : cases) {
        auto a = DgAlgebra::koszul_complex(f, std_vars(c.nvars), c.forms);
        GorensteinOptions go;
        go.D = 9;
        go.p_hi = 8;
        go.p_lo = -8;
        go.j_lo = -9;
        go.j_hi = 7;
        auto reading = gorenstein_parameter(a, {0, 10, -10, 0}, go);
        long long expect = koszul_parameter_formula(c.nvars, c.degs);
        CHECK(reading.certified);
        CHECK(reading.a == expect);
    }
}

TEST_CASE("strongness_negative: k[x]/(x^3) fails with witness (1,-1)") {
    Field q = Field::rationals();
    auto a = DgAlgebra::truncated_polynomial(q, 1, 3);
    auto v = strongness_negative(a, -2, {0, 8, -8, 0}, 8);
    CHECK(!v.strong);
    REQUIRE(v.witness.has_value());
    CHECK(v.witness->i == -1);  // internal degree
    CHECK(v.witness->j == 1);   // Ext degree p
}

TEST_CASE("strongness_negative: k[x]/(x^2) is strong") {
    Field q = Field::rationals();
    auto a = DgAlgebra::truncated_polynomial(q, 1, 2);
    auto v = strongness_negative(a, -1, {0, 8, -8, 0}, 8);
    CHECK(v.strong);
    CHECK(v.certified);
}

TEST_CASE("strongness_negative: exterior generator of internal degree 2 is strong") {
    Field q = Field::rationals();
    auto e = DgAlgebra::exterior_algebra(q, {2});
    auto v = strongness_negative(e, -2, {0, 8, -8, 0}, 8);
    CHECK(v.strong);
}

TEST_CASE("strongness_positive: regular sequences are strong, the 8-variable example is not") {
    Field f = Field::prime(32003);
    // Koszul on x0, x1 over 4 variables: a = 2, acyclic below degree 0
    auto reg = DgAlgebra::koszul_complex(f, std_vars(4), {"x0", "x1"});
    auto v1 = strongness_positive(reg, 2, {0, 8, -6, 0});
    CHECK(v1.strong);
    // polynomial ring: strong
    auto poly = DgAlgebra::koszul_complex(f, std_vars(3), {});
    auto v2 = strongness_positive(poly, 3, {0, 8, -6, 0});
    CHECK(v2.strong);
    // the 8-variable Koszul example: witness (3, -1)
    auto k8 = DgAlgebra::koszul_complex(f, std_vars(8), {"x0^2", "x0*x1"});
    auto v3 = strongness_positive(k8, 4, {0, 12, -12, 0});
    CHECK(!v3.strong);
    REQUIRE(v3.witness.has_value());
    CHECK(v3.witness->i == 3);
    CHECK(v3.witness->j == -1);
}

TEST_CASE("tor_table: spec examples") {
    Field q = Field::rationals();
    // Tor^{k[x]}(k,k): dims 1 at internal degrees 0 and 1
    auto a = DgAlgebra::koszul_complex(q, std_vars(1), {});
    auto r = resolve_ground_field(a, 6, -8);
    auto n = realize_ground_field(a, {0, 6, -6, 0});
    TorOptions to;
    to.i_hi = 5;
    to.h_lo = -5;
    auto t = tor_table(r, n, to);
    CHECK(t.dim_at({0, 0}) == 1);
    CHECK(t.dim_at({1, -1}) == 1);
    long long total = 0;
    for (auto& [b, e] : t.entries) total += e.dim;
    CHECK(total == 2);
    CHECK(t.certified_at({1, -1}));
}

TEST_CASE("dual_collection_hom: endomorphisms and orthogonality on k[x]/(x^3)") {
    Field q = Field::rationals();
    auto a = DgAlgebra::truncated_polynomial(q, 1, 3);
    BidegWindow w{0, 8, -6, 0};
    // a = -2: collection E_0, E_1
    CHECK(dual_collection_hom(a, -2, 0, 0, 0, w) == 1);
    CHECK(dual_collection_hom(a, -2, 1, 1, 0, w) == 1);
    for (int p = -3; p <= 3; ++p) CHECK(dual_collection_hom(a, -2, 1, 0, p, w) == 0);
}
