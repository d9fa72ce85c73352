#include "korlov/invariants.hpp"

#include <algorithm>

namespace korlov {

nlohmann::json GorensteinReading::to_json() const {
    return {{"a", a},
            {"n", n},
            {"certified", certified},
            {"region",
             {{"i_min", region.i_min},
              {"i_max", region.i_max},
              {"j_min", region.j_min},
              {"j_max", region.j_max}}},
            {"note", note},
            {"table", table.to_json()}};
}

nlohmann::json StrongnessVerdict::to_json() const {
    nlohmann::json w = nullptr;
    if (witness) w = {{"i", witness->i}, {"j", witness->j}};
    return {{"strong", strong}, {"certified", certified}, {"witness", w}, {"criterion", criterion}};
}

/* right multiplication of a module slice by a (homogeneous) algebra element */
static ExactMatrix mult_elt_matrix(const WindowedModule& n, Bidegree from, const AlgElt& elt) {
    const Field f = n.field();
    Bidegree to = from + elt.bd;
    ExactMatrix out(f, n.dim_at(to), n.dim_at(from));
    for (auto& [aidx, coef] : elt.coords) {
        ExactMatrix part = n.mult_matrix(from, elt.bd, aidx);
        for (int c = 0; c < part.ncols(); ++c)
            for (auto& [r, v] : part.column(c)) out.add_entry(r, c, f.mul(coef, v));
    }
    return out;
}

namespace {

struct RevAdj {
    // for each generator t: the list of (s, elt) with g_t * elt appearing in d(g_s)
    std::vector<std::vector<std::pair<int, const AlgElt*>>> rev;
    explicit RevAdj(const FreeDgModule& g) : rev(g.gens.size()) {
        for (int s = 0; s < (int)g.dcols.size(); ++s)
            for (auto& [t, elt] : g.dcols[s]) rev[t].push_back({s, &elt});
    }
};

using MultCache = std::map<std::pair<const AlgElt*, Bidegree>, ExactMatrix>;

struct HomColumn {
    int lo = 0, hi = -1;                                  // slot range
    std::vector<std::vector<std::pair<int, int>>> bases;  // per slot: (gen id, offset into N slice)
    std::vector<int> dims;
};

HomColumn build_column(const Resolution& r, const WindowedModule& n, int j, int lo, int hi) {
    HomColumn col;
    col.lo = lo;
    col.hi = hi;
    col.bases.resize(hi - lo + 1);
    for (auto& g : r.free.gens)
        for (int p = lo; p <= hi; ++p) {
            int d = n.dim_at({g.bd.i + j, g.bd.j + p});
            auto& base = col.bases[p - lo];
            for (int v = 0; v < d; ++v) base.push_back({g.id, v});
        }
    for (auto& b : col.bases) col.dims.push_back((int)b.size());
    return col;
}

/* cohomological support of the Hom column over all generators */
std::pair<int, int> column_support(const Resolution& r, const WindowedModule& n, int j) {
    int lo = 1, hi = 0;
    int jmin = n.support.j_min ? *n.support.j_min : n.window.j_min;
    for (auto& g : r.free.gens)
        for (int p = jmin - g.bd.j; p <= n.support.j_max - g.bd.j; ++p) {
            if (n.dim_at({g.bd.i + j, g.bd.j + p}) == 0) continue;
            if (lo > hi)
                lo = hi = p;
            else {
                lo = std::min(lo, p);
                hi = std::max(hi, p);
            }
        }
    return {lo, hi};
}

ExactMatrix column_map(const Resolution& r, const RevAdj& rev, const WindowedModule& n, int j,
                       const HomColumn& col, int p, MultCache& cache) {
    const Field f = n.field();
    int si = p - col.lo;
    auto& src = col.bases[si];
    auto& dst = col.bases[si + 1];
    std::map<std::pair<int, int>, int> dst_index;
    for (int rr = 0; rr < (int)dst.size(); ++rr) dst_index[dst[rr]] = rr;
    ExactMatrix out(f, (int)dst.size(), (int)src.size());
    bool odd_p = ((p % 2) + 2) % 2 == 1;
    for (int c = 0; c < (int)src.size(); ++c) {
        auto [gid, v] = src[c];
        Bidegree nb{r.free.gens[gid].bd.i + j, r.free.gens[gid].bd.j + p};
        // d_N(phi(g))
        ExactMatrix dn = n.d_at(nb);
        for (auto& [rr, val] : dn.column(v)) {
            auto it = dst_index.find({gid, rr});
            if (it != dst_index.end()) out.add_entry(it->second, c, val);
        }
        // -(-1)^p phi(g_t) . c_{t,s}: phi's value on g_{gid} feeds the row block of every s
        for (auto& [s, elt] : rev.rev[gid]) {
            auto key = std::make_pair(elt, nb);
            auto itc = cache.find(key);
            if (itc == cache.end()) itc = cache.emplace(key, mult_elt_matrix(n, nb, *elt)).first;
            for (auto& [rr, val] : itc->second.column(v)) {
                auto it = dst_index.find({s, rr});
                if (it != dst_index.end()) out.add_entry(it->second, c, odd_p ? val : f.neg(val));
            }
        }
    }
    return out;
}

struct ColumnResult {
    std::vector<long long> h;
    bool exact = false;
};

/* Lower bound for the internal degree of a generator of a minimal resolution
 * sitting at cohomological degree -m: every such generator comes from a
 * bar-type word on the augmentation ideal, each factor of which costs internal
 * degree while dropping cohomological degree.
 */
struct DepthBound {
    std::vector<long long> min_cost;  // min internal cost to achieve a given drop
    int i_min = 0, j_min = 0;
    bool valid = false;

    DepthBound(const Resolution& r) {
        if (!r.cert.minimal) return;
        auto types = r.free.algebra->bar_factor_types();
        if (types.empty()) return;
        const int cap = 512;
        min_cost.assign(cap + 1, -1);
        min_cost[0] = 0;
        for (int d = 1; d <= cap; ++d) {
            long long best = -1;
            for (auto& [cost, drop] : types) {
                long long sub = min_cost[std::max(0, d - drop)];
                if (sub < 0) continue;
                long long c = cost + sub;
                if (best < 0 || c < best) best = c;
            }
            min_cost[d] = best;
        }
        i_min = r.cert.target_i_min;
        j_min = r.cert.target_j_min;
        valid = true;
    }
    // smallest internal degree a generator at coh degree -m can have
    long long min_internal(int m) const {
        int drop = std::max(0, m + j_min);
        if (drop >= (int)min_cost.size() || min_cost[drop] < 0) return 1 << 30;
        return i_min + min_cost[drop];
    }
};

/* exact Ext column against an internally bounded N */
ColumnResult ext_column_bounded(const Resolution& r, const DepthBound& depth, const RevAdj& rev,
                                const WindowedModule& n, int j, int p_lo, int p_hi, long long budget) {
    ColumnResult out;
    out.h.assign(p_hi - p_lo + 1, 0);
    if (!n.support.i_max) throw std::logic_error("ext column needs an internally bounded target");
    int i_top = *n.support.i_max;
    if (i_top - j > r.cert.bound_D) return out;  // some contributing generators may be unknown
    if (n.window.i_max < std::min(i_top, r.cert.bound_D + j)) return out;  // N window too small
    auto [s_lo, s_hi] = column_support(r, n, j);
    int jmin_n = n.support.j_min ? *n.support.j_min : n.window.j_min;
    bool full = n.field().kind() == Field::Kind::Q;  // rational mode wants the whole support
    // generators deeper than the resolution's cohomological range must be
    // unable to reach the slots we evaluate
    {
        int m0 = -r.cert.coh_min + 1;  // first cohomological depth not enumerated
        bool unknown_could_contribute;
        if (full) {
            // any slot matters
            unknown_could_contribute = !(depth.valid && depth.min_internal(m0) > i_top - j);
        } else {
            int hi_cap = p_hi + 1;
            unknown_could_contribute = m0 <= hi_cap - jmin_n &&
                                       !(depth.valid && depth.min_internal(m0) > i_top - j);
        }
        if (unknown_could_contribute) return out;
    }
    if (s_lo > s_hi) {
        out.exact = true;
        return out;
    }
    int lo = full ? s_lo : std::max(s_lo, p_lo - 1);
    int hi = full ? s_hi : std::min(s_hi, p_hi + 1);
    if (lo > hi) {
        out.exact = true;
        return out;
    }
    auto col = build_column(r, n, j, lo, hi);
    long long cost = 0;
    for (int d : col.dims) cost += d;
    if (budget > 0 && cost > budget) return out;
    MultCache cache;
    std::vector<ExactMatrix> maps;
    for (int p = lo; p < hi; ++p) maps.push_back(column_map(r, rev, n, j, col, p, cache));
    std::vector<long long> h;
    if (full) {
        h = complex_h_dims(col.dims, maps);
    } else {
        std::vector<long long> rk;
        for (auto& m : maps) rk.push_back(rank(m));
        h.resize(col.dims.size());
        for (size_t s = 0; s < col.dims.size(); ++s) {
            long long rout = s < rk.size() ? rk[s] : 0;
            long long rin = s > 0 ? rk[s - 1] : 0;
            h[s] = col.dims[s] - rout - rin;
        }
    }
    for (int p = std::max(p_lo, s_lo); p <= std::min(p_hi, s_hi); ++p) out.h[p - p_lo] = h[p - lo];
    out.exact = true;
    return out;
}

}  // namespace

BigradedDimTable ext_table(const Resolution& r, const WindowedModule& n, const ExtOptions& opt) {
    BigradedDimTable t;
    RevAdj rev(r.free);
    DepthBound depth(r);
    bool bounded = n.support.i_max.has_value();
    for (int j = opt.j_lo; j <= opt.j_hi; ++j) {
        std::vector<long long> vals;
        bool certified = false;
        if (bounded) {
            auto res = ext_column_bounded(r, depth, rev, n, j, opt.p_lo, opt.p_hi, opt.cell_budget);
            vals = res.h;
            certified = res.exact;
        } else {
            // evaluate against the tower N/N_{>=q}; report once `stab_window`
            // consecutive rungs agree
            int q_top = std::min(n.window.i_max + 1, r.cert.bound_D + 1 + j);
            if (opt.q_cap > 0) q_top = std::min(q_top, opt.q_cap);
            int q0 = std::max(n.support.i_min + 1, 1);
            std::vector<long long> last;
            int run = 1;
            for (int q = q0; q <= q_top; ++q) {
                auto nq = quotient_below(n, q);
                auto res = ext_column_bounded(r, depth, rev, nq, j, opt.p_lo, opt.p_hi, opt.cell_budget);
                if (!res.exact) break;
                if (!last.empty() && res.h == last)
                    ++run;
                else
                    run = 1;
                last = res.h;
                if (run >= opt.stab_window) {
                    certified = true;
                    break;
                }
            }
            vals = last;
        }
        for (int p = opt.p_lo; p <= opt.p_hi; ++p) {
            long long v = vals.empty() ? 0 : vals[p - opt.p_lo];
            if (certified)
                t.set({j, p}, v, true, true);
            else if (v != 0 || !vals.empty())
                t.set({j, p}, v, false, false);
        }
    }
    t.certified_region = {opt.j_lo, opt.j_hi, opt.p_lo, opt.p_hi};
    return t;
}

BigradedDimTable tor_table(const Resolution& r, const WindowedModule& n, const TorOptions& opt) {
    if (!n.algebra->commutative())
        throw InvalidInputError("tor_table requires a graded-commutative algebra");
    BigradedDimTable t;
    const Field f = n.field();
    RevAdj rev(r.free);
    int jmin_n = n.support.j_min ? *n.support.j_min : n.window.j_min;
    for (int i = opt.i_lo; i <= opt.i_hi; ++i) {
        bool exact = (i - n.support.i_min) <= r.cert.bound_D && n.window.i_max >= i &&
                     r.cert.coh_min <= opt.h_lo - 1 - n.support.j_max;
        int h_lo = opt.h_lo - 1, h_hi = opt.h_hi + 1;
        std::vector<std::vector<std::pair<int, int>>> bases(h_hi - h_lo + 1);
        for (auto& g : r.free.gens) {
            if (g.bd.i > i - n.support.i_min) continue;
            for (int h = h_lo; h <= h_hi; ++h) {
                int d = n.dim_at({i - g.bd.i, h - g.bd.j});
                auto& base = bases[h - h_lo];
                for (int v = 0; v < d; ++v) base.push_back({g.id, v});
            }
        }
        std::vector<int> dims;
        for (auto& b : bases) dims.push_back((int)b.size());
        MultCache cache;
        std::vector<ExactMatrix> maps;
        for (int h = h_lo; h < h_hi; ++h) {
            auto& src = bases[h - h_lo];
            auto& dst = bases[h - h_lo + 1];
            std::map<std::pair<int, int>, int> dst_index;
            for (int rr = 0; rr < (int)dst.size(); ++rr) dst_index[dst[rr]] = rr;
            ExactMatrix m(f, (int)dst.size(), (int)src.size());
            for (int c = 0; c < (int)src.size(); ++c) {
                auto [gid, v] = src[c];
                Bidegree nb{i - r.free.gens[gid].bd.i, h - r.free.gens[gid].bd.j};
                // (-1)^{|g|} g (x) d(v)
                bool gsg = ((r.free.gens[gid].bd.j % 2) + 2) % 2 == 1;
                ExactMatrix dn = n.d_at(nb);
                for (auto& [rr, val] : dn.column(v)) {
                    auto it = dst_index.find({gid, rr});
                    if (it != dst_index.end()) m.add_entry(it->second, c, gsg ? f.neg(val) : val);
                }
                // d(g_s) has g_{gid} * elt: contributes g_s (x) (elt . v) with the
                // commutation sign (-1)^{|elt||v|} turning the left action into the right one
                for (auto& [s, elt] : rev.rev[gid]) {
                    int vcoh = h - r.free.gens[gid].bd.j;
                    bool esg = (((elt->bd.j * vcoh) % 2) + 2) % 2 == 1;
                    auto key = std::make_pair(elt, nb);
                    auto itc = cache.find(key);
                    if (itc == cache.end()) itc = cache.emplace(key, mult_elt_matrix(n, nb, *elt)).first;
                    for (auto& [rr, val] : itc->second.column(v)) {
                        auto it = dst_index.find({s, rr});
                        if (it != dst_index.end()) m.add_entry(it->second, c, esg ? f.neg(val) : val);
                    }
                }
            }
            maps.push_back(std::move(m));
        }
        auto h = complex_h_dims(dims, maps);
        for (int hh = opt.h_lo; hh <= opt.h_hi; ++hh) t.set({i, hh}, h[hh - h_lo], exact, true);
    }
    t.certified_region = {opt.i_lo, opt.i_hi, opt.h_lo, opt.h_hi};
    return t;
}

GorensteinReading gorenstein_parameter(const AlgebraPtr& a, const BidegWindow& window,
                                       const GorensteinOptions& opt) {
    GorensteinReading out;
    int coh_min = std::min(window.j_min, -(opt.p_hi + 2));
    auto r = resolve_ground_field(a, std::min(opt.D, window.i_max), coh_min);
    BidegWindow nw{0, window.i_max, std::min(window.j_min, -1), 0};
    auto n = realize_algebra(a, nw);
    ExtOptions eo;
    eo.p_lo = opt.p_lo;
    eo.p_hi = opt.p_hi;
    eo.j_lo = std::max(opt.j_lo, -window.i_max);
    eo.j_hi = std::min(opt.j_hi, window.i_max);
    eo.stab_window = opt.stab_window;
    eo.cell_budget = opt.cell_budget;
    out.table = ext_table(r, n, eo);
    out.region = out.table.certified_region;
    std::vector<Bidegree> nonzero;
    for (auto& [b, e] : out.table.entries)
        if (e.certified && e.dim != 0) nonzero.push_back(b);
    if (nonzero.size() == 1 && out.table.entries.at(nonzero[0]).dim == 1) {
        out.a = -nonzero[0].i;
        out.n = -nonzero[0].j;
        out.certified = true;
    } else {
        out.certified = false;
        out.note = nonzero.empty() ? "no nonzero certified entry in the inspected region"
                                   : "multiple nonzero entries in the inspected region";
    }
    return out;
}

long long koszul_parameter_formula(long long base_parameter, const std::vector<int>& form_degrees) {
    long long d = 0;
    for (int x : form_degrees) d += x;
    return base_parameter - d;
}

StrongnessVerdict strongness_positive(const AlgebraPtr& a, int gor_a, const BidegWindow& w) {
    if (gor_a <= 0) throw InvalidInputError("positive-parameter criterion needs a > 0");
    StrongnessVerdict v;
    v.criterion = "H^p(A)_j = 0 for p < 0, j <= a-1";
    int itop = std::min(w.i_max, gor_a - 1);
    BidegWindow fit{0, std::max(0, itop), w.j_min, 0};
    auto m = realize_algebra(a, fit);
    auto t = cohomology_table(m, {0, itop, w.j_min, -1});
    v.strong = true;
    v.certified = true;
    for (int j = 0; j <= itop && v.strong; ++j)
        for (int p = -1; p >= w.j_min && v.strong; --p) {
            Bidegree b{j, p};
            auto it = t.entries.find(b);
            if (it == t.entries.end()) continue;
            if (!it->second.certified) {
                v.certified = false;
                continue;
            }
            if (it->second.dim != 0) {
                v.strong = false;
                v.witness = b;
            }
        }
    return v;
}

StrongnessVerdict strongness_negative(const AlgebraPtr& a, int gor_a, const BidegWindow& w, int D) {
    if (gor_a >= 0) throw InvalidInputError("negative-parameter criterion needs a < 0");
    StrongnessVerdict v;
    v.criterion = "Ext^p(k,k)_j = 0 for p > 0, j >= a+1";
    int coh_min = std::min(w.j_min, -(D + 2));
    auto r = resolve_ground_field(a, D, coh_min);
    auto n = realize_ground_field(a, {0, std::max(1, w.i_max), std::min(w.j_min, -1), 0});
    ExtOptions eo;
    eo.p_lo = 0;
    eo.p_hi = std::min(D, -coh_min - 1);
    eo.j_lo = gor_a + 1;
    eo.j_hi = 0;
    auto t = ext_table(r, n, eo);
    v.strong = true;
    v.certified = true;
    for (int j = gor_a + 1; j <= 0 && v.strong; ++j)
        for (int p = 1; p <= eo.p_hi && v.strong; ++p) {
            Bidegree b{j, p};
            auto it = t.entries.find(b);
            if (it == t.entries.end()) continue;
            if (!it->second.certified) {
                v.certified = false;
                continue;
            }
            if (it->second.dim != 0) {
                v.strong = false;
                v.witness = b;
            }
        }
    return v;
}

long long dual_collection_hom(const AlgebraPtr& a, int gor_a, int i, int j, int p,
                              const BidegWindow& w) {
    if (gor_a >= 0) throw InvalidInputError("the dual collection exists for a < 0");
    if (i < 0 || j < 0 || i > -gor_a - 1 || j > -gor_a - 1)
        throw InvalidInputError("collection index out of range");
    auto ej = realize(a, ModuleSpec::dual_e(j, gor_a), w);
    int target_i = -i - gor_a - 1;
    Bidegree b{target_i, p};
    if (ej.support.certainly_zero(b)) return 0;  // H^p is a subquotient of the slice
    auto t = cohomology_table(ej, {target_i, target_i, p, p});
    if (!t.certified_at(b)) throw WindowInsufficientError(b, "dual-collection Hom value not certified");
    return t.dim_at(b);
}

}  // namespace korlov
