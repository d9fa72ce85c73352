#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "korlov/resolution.hpp"

using namespace korlov;

static VarTable std_vars(int n) {
    VarTable v;
    for (int i = 0; i < n; ++i) {
        v.names.push_back("x" + std::to_string(i));
        v.degrees.push_back(1);
    }
    return v;
}

static std::vector<std::pair<int, int>> gen_bidegrees(const Resolution& r) {
    std::vector<std::pair<int, int>> out;
    for (auto& g : r.free.gens) out.push_back({g.bd.i, g.bd.j});
    return out;
}

TEST_CASE("k over k[x]: two-term resolution") {
    Field q = Field::rationals();
    auto a = DgAlgebra::koszul_complex(q, std_vars(1), {});
    auto r = resolve_ground_field(a, 6, -8);
    REQUIRE(r.free.gens.size() == 2);
    CHECK(r.free.gens[0].bd == Bidegree{0, 0});
    CHECK(r.free.gens[1].bd == Bidegree{1, -1});
    // d(g1) = g0 * x
    REQUIRE(r.free.dcols[1].size() == 1);
    CHECK(r.free.dcols[1][0].first == 0);
    CHECK(r.free.dcols[1][0].second.bd == Bidegree{1, 0});
    CHECK(r.cert.minimal);
}

TEST_CASE("k over the Koszul complex on x: the algebra itself") {
    Field q = Field::rationals();
    auto a = DgAlgebra::koszul_complex(q, std_vars(1), {"x0"});
    auto r = resolve_ground_field(a, 6, -8);
    REQUIRE(r.free.gens.size() == 1);
    CHECK(r.free.gens[0].bd == Bidegree{0, 0});
    CHECK(r.cert.model == "layered");  // x0 is not in the square of the maximal ideal
}

TEST_CASE("k over k[x]/(x^3): 2-periodic generator degrees") {
    Field q = Field::rationals();
    auto a = DgAlgebra::truncated_polynomial(q, 1, 3);
    BidegWindow w{0, 10, -9, 0};
    auto k = realize_ground_field(a, w);
    auto r = semifree_resolution(k, 10);
    auto bds = gen_bidegrees(r);
    std::vector<std::pair<int, int>> expect = {{0, 0}, {1, -1}, {3, -2}, {4, -3}, {6, -4}, {7, -5}, {9, -6}, {10, -7}};
    CHECK(bds == expect);
    CHECK(r.cert.minimal);
}

TEST_CASE("closed-form model matches the layered algorithm where both apply") {
    Field q = Field::rationals();
    auto a = DgAlgebra::koszul_complex(q, std_vars(2), {"x0^2"});
    auto tate = resolve_ground_field(a, 5, -8);
    CHECK(tate.cert.model == "closed-form");
    BidegWindow w{0, 5, -9, 0};
    auto k = realize_ground_field(a, w);
    auto layered = semifree_resolution(k, 5);
    // same generator bidegree multisets
    auto b1 = gen_bidegrees(tate), b2 = gen_bidegrees(layered);
    std::sort(b1.begin(), b1.end());
    std::sort(b2.begin(), b2.end());
    CHECK(b1 == b2);
}

TEST_CASE("closed-form model: d^2 = 0 and quasi-isomorphism") {
    Field q = Field::rationals();
    auto a = DgAlgebra::koszul_complex(q, std_vars(2), {"x0^2", "x0*x1"});
    auto r = resolve_ground_field(a, 6, -10);
    BidegWindow w{0, 5, -8, 0};
    auto gw = realize_free(r.free, w);
    // d^2 = 0 on the realization
    for (auto& [b, mat] : gw.d_mats) {
        if (!gw.d_mats.count({b.i, b.j + 1})) continue;
        CHECK(is_zero_matrix(multiply(gw.d_mats.at({b.i, b.j + 1}), mat)));
    }
    // cone of the augmentation is exact on the certified region
    auto k = realize_ground_field(a, w);
    auto eps = augmentation_morphism(r, gw, k);
    REQUIRE(!morphism_defect(eps));
    auto c = cone(eps);
    auto t = cohomology_table(c, {0, 4, -6, 0});
    for (auto& [b, e] : t.entries)
        if (e.certified) CHECK(e.dim == 0);
}

TEST_CASE("layered algorithm: quasi-isomorphism for a truncated module target") {
    Field q = Field::rationals();
    auto a = DgAlgebra::koszul_complex(q, std_vars(2), {"x0*x1"});
    BidegWindow w{0, 6, -5, 0};
    auto m = truncate_internal(realize_algebra(a, w), 1);  // A_{>=1}
    auto r = semifree_resolution(m, 5);
    CHECK(!r.free.gens.empty());
    auto gw = realize_free(r.free, {0, 5, -4, 0});
    auto eps = augmentation_morphism(r, gw, m);
    REQUIRE(!morphism_defect(eps));
    auto c = cone(eps);
    auto t = cohomology_table(c, {0, 4, -3, 0});
    for (auto& [b, e] : t.entries)
        if (e.certified) CHECK(e.dim == 0);
}

TEST_CASE("base_resolution: spec examples") {
    Field q = Field::rationals();
    // k over k[x0,x1]: generators at internal degrees 0,1,1,2
    auto s2 = DgAlgebra::koszul_complex(q, std_vars(2), {});
    auto rk = resolve_ground_field(s2, 5, -6);
    std::vector<int> degs;
    for (auto& g : rk.free.gens) degs.push_back(g.bd.i);
    std::sort(degs.begin(), degs.end());
    CHECK(degs == std::vector<int>{0, 1, 1, 2});

    // A0/A0_{>=2} over k[x]: generators at internal degrees 0 and 2
    auto s1 = DgAlgebra::koszul_complex(q, std_vars(1), {});
    BidegWindow w{0, 6, -3, 0};
    auto mq = quotient_below(realize_algebra(s1, w), 2);
    auto rq = base_resolution(mq, 6);
    std::vector<int> dq;
    for (auto& g : rq.free.gens) dq.push_back(g.bd.i);
    CHECK(dq == std::vector<int>{0, 2});
}

TEST_CASE("Euler characteristic conservation per internal degree") {
    Field q = Field::rationals();
    auto a = DgAlgebra::koszul_complex(q, std_vars(2), {"x0^2"});
    BidegWindow w{0, 5, -6, 0};
    auto m = quotient_below(realize_algebra(a, w), 3);  // A/A_{>=3}
    auto r = semifree_resolution(m, 5);
    auto gw = realize_free(r.free, w);
    // per internal degree column: alternating sums of slice dimensions agree with M
    for (int i = 0; i <= 4; ++i) {
        long long chi_g = 0, chi_m = 0;
        for (int j = -5; j <= 0; ++j) {
            long long sgn = (j % 2) ? -1 : 1;
            chi_g += sgn * gw.dim_at({i, j});
            chi_m += sgn * m.dim_at({i, j});
        }
        CHECK(chi_g == chi_m);
    }
}

TEST_CASE("semi-freeness: columns reference strictly earlier cells") {
    Field q = Field::rationals();
    auto a = DgAlgebra::truncated_polynomial(q, 1, 3);
    auto k = realize_ground_field(a, {0, 8, -8, 0});
    auto r = semifree_resolution(k, 8);
    for (auto& g : r.free.gens)
        for (auto& [t, elt] : r.free.dcols[g.id]) {
            CHECK(r.free.gens[t].layer < g.layer);
            CHECK(r.free.gens[t].bd.i <= g.bd.i);
        }
}

TEST_CASE("determinism: generator lists are identical across runs") {
    Field f = Field::prime(32003);
    auto a = DgAlgebra::koszul_complex(f, std_vars(2), {"x0^2", "x0*x1"});
    BidegWindow w{0, 6, -6, 0};
    auto m = truncate_internal(realize_algebra(a, w), 2);
    auto r1 = semifree_resolution(m, 5);
    auto r2 = semifree_resolution(m, 5);
    CHECK(gen_bidegrees(r1) == gen_bidegrees(r2));
    REQUIRE(r1.free.dcols.size() == r2.free.dcols.size());
    for (size_t i = 0; i < r1.free.dcols.size(); ++i) {
        REQUIRE(r1.free.dcols[i].size() == r2.free.dcols[i].size());
        for (size_t t = 0; t < r1.free.dcols[i].size(); ++t) {
            CHECK(r1.free.dcols[i][t].first == r2.free.dcols[i][t].first);
            CHECK(r1.free.dcols[i][t].second.coords == r2.free.dcols[i][t].second.coords);
        }
    }
}

TEST_CASE("compact_model: spec examples") {
    Field q = Field::rationals();
    // periodic resolution of k over k[x]/(x^3), truncated at J = -6
    auto a = DgAlgebra::truncated_polynomial(q, 1, 3);
    BidegWindow w{0, 12, -9, 0};
    auto k = realize_ground_field(a, w);
    auto r = semifree_resolution(k, 12);
    auto cm = compact_model(r, k, -6, w);
    // cohomology table unchanged on a certified region: H = k at (0,0)
    auto t = cohomology_table(cm, {0, 8, -5, 0});
    for (auto& [b, e] : t.entries)
        if (e.certified) CHECK(e.dim == (b == Bidegree{0, 0} ? 1 : 0));
    // finitely generated: slices bounded by the remaining generators
    CHECK(cm.dim_at({2, -1}) > 0);

    // a resolution with no generators at cohomological degree <= J over a
    // cohomologically-trivial algebra stays as it is
    auto s1 = DgAlgebra::koszul_complex(q, std_vars(1), {});
    auto rk = resolve_ground_field(s1, 4, -4);
    BidegWindow w2{0, 4, -4, 0};
    auto gw = realize_free(rk.free, w2);
    auto cm2 = compact_model(rk, realize_ground_field(s1, w2), -2, w2);
    for (auto& [b, d] : gw.dims) CHECK(cm2.dim_at(b) == d);

    // an exact complex compacts to the zero module: cone(id_k) is exact
    // (covered by the vanishing hypothesis check passing everywhere)
}

TEST_CASE("tor dims of k,k match generator counts (minimality)") {
    Field q = Field::rationals();
    auto a = DgAlgebra::koszul_complex(q, std_vars(2), {"x0^2"});
    auto r = resolve_ground_field(a, 5, -8);
    // G (x) k has zero differential for a minimal resolution; slice dims = gen counts
    std::map<Bidegree, int> counts;
    for (auto& g : r.free.gens) counts[g.bd]++;
    // realize G (x) k: dims at (i,j) = #gens at (i,j); verified via free_slice against k
    for (auto& [b, c] : counts) {
        auto sl = free_slice(r.free, b);
        int at_origin = 0;
        for (auto& [t, aidx] : sl.elems)
            if (r.free.gens[t].bd == b) ++at_origin;
        CHECK(at_origin == c);
    }
}
