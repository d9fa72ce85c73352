#pragma once
/* Derived invariants: Ext and Tor tables over the algebra, Gorenstein
 * parameter detection, the Koszul shortcut formula, and the strong-
 * exceptionality criteria.
 *
 * Ext tables are computed from the generator-based Hom complex of a semi-free
 * resolution of the first argument. When the second argument has bounded
 * internal degree (k, internal truncations, dual-collection quotients) the
 * computation is exact and certification is a finiteness count. When it is
 * unbounded (the algebra itself, its twists), the table is evaluated against
 * the tower of internal truncations N/N_{>=q}; values are reported with a
 * per-entry stabilization flag once consecutive rungs agree, and are never
 * silently trusted beyond that.
 */
#include "korlov/resolution.hpp"

namespace korlov {

struct ExtOptions {
    int p_lo = -8, p_hi = 8;   // cohomological range of reported entries
    int j_lo = -12, j_hi = 8;  // internal range of reported entries
    int stab_window = 3;       // consecutive agreeing rungs required on the truncation ladder
    long long cell_budget = 6'000'000;  // forecast cap (sum of slot dims) per column and rung
    int q_cap = 0;             // optional cap on ladder rungs (0 = derive from windows)
};

BigradedDimTable ext_table(const Resolution& r, const WindowedModule& n, const ExtOptions& opt);

/* Tor_m(M, N)_i is stored at Bidegree{i, -m} (cohomological slot of the tensor complex). */
struct TorOptions {
    int i_lo = 0, i_hi = 10;
    int h_lo = -10, h_hi = 0;
};
BigradedDimTable tor_table(const Resolution& r, const WindowedModule& n, const TorOptions& opt);

struct GorensteinReading {
    int a = 0;
    int n = 0;
    bool certified = false;
    BidegWindow region = BidegWindow::empty();
    BigradedDimTable table;  // the inspected Ext(k, A) table
    std::string note;
    nlohmann::json to_json() const;
};

struct GorensteinOptions {
    int D = 10;
    int p_hi = 10, p_lo = -10;
    int j_lo = -12, j_hi = 8;
    int stab_window = 3;
    long long cell_budget = 6'000'000;
};

GorensteinReading gorenstein_parameter(const AlgebraPtr& a, const BidegWindow& window,
                                       const GorensteinOptions& opt);

// a_S - sum(deg f_i); standard graded base has a_S = number of variables
long long koszul_parameter_formula(long long base_parameter, const std::vector<int>& form_degrees);

struct StrongnessVerdict {
    bool strong = false;
    bool certified = false;
    std::optional<Bidegree> witness;  // (internal, cohomological) of the violation
    std::string criterion;
    nlohmann::json to_json() const;
};

// a > 0: strong iff H^p(A)_j = 0 for all p < 0 and j <= a-1
StrongnessVerdict strongness_positive(const AlgebraPtr& a, int gor_a, const BidegWindow& w);
// a < 0: strong iff Ext^p(k,k)_j = 0 for all p > 0 and j >= a+1
StrongnessVerdict strongness_negative(const AlgebraPtr& a, int gor_a, const BidegWindow& w, int D);

// dim Hom(E_i, E_j[p]) = dim H^p(E_j)_{-i-a-1} for the dual collection when a < 0
long long dual_collection_hom(const AlgebraPtr& a, int gor_a, int i, int j, int p, const BidegWindow& w);

}  // namespace korlov
