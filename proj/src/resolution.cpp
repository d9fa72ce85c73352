#include "korlov/resolution.hpp"

#include <algorithm>
#include <functional>

namespace korlov {

std::vector<int> FreeDgModule::gens_at_internal(int i) const {
    std::vector<int> out;
    for (auto& g : gens)
        if (g.bd.i == i) out.push_back(g.id);
    return out;
}

int FreeDgModule::max_gen_internal() const {
    int m = 0;
    for (auto& g : gens) m = std::max(m, g.bd.i);
    return m;
}

int FreeDgModule::min_gen_coh() const {
    int m = 0;
    for (auto& g : gens) m = std::min(m, g.bd.j);
    return m;
}

nlohmann::json FreeDgModule::to_json() const {
    nlohmann::json gens_j = nlohmann::json::array();
    for (auto& g : gens)
        gens_j.push_back({{"id", g.id}, {"i", g.bd.i}, {"j", g.bd.j}, {"layer", g.layer}, {"label", g.label}});
    nlohmann::json cols = nlohmann::json::array();
    for (int s = 0; s < (int)dcols.size(); ++s) {
        nlohmann::json terms = nlohmann::json::array();
        for (auto& [t, elt] : dcols[s]) {
            auto& labels = algebra->slice(elt.bd).labels;
            for (auto& [idx, c] : elt.coords)
                terms.push_back({{"target_id", t},
                                 {"coefficient_monomial", labels[idx]},
                                 {"scalar", c.to_string()}});
        }
        cols.push_back({{"id", s}, {"terms", terms}});
    }
    return {{"generators", gens_j}, {"differential", cols}};
}

nlohmann::json ResolutionCertificate::to_json() const {
    return {{"bound_D", bound_D},
            {"coh_min", coh_min},
            {"minimal", minimal},
            {"model", model},
            {"cone_checked", !cone_checked.empty_marker()},
            {"cone_checked_region", cone_checked.to_string()}};
}

FreeSliceBasis free_slice(const FreeDgModule& g, Bidegree b) {
    FreeSliceBasis out;
    for (auto& gen : g.gens) {
        Bidegree rel{b.i - gen.bd.i, b.j - gen.bd.j};
        if (rel.i < 0 || rel.j > 0) continue;
        int d = g.algebra->slice(rel).dim();
        for (int a = 0; a < d; ++a) out.elems.push_back({gen.id, a});
    }
    return out;
}

ExactMatrix free_diff_matrix(const FreeDgModule& g, Bidegree b) {
    const Field f = g.algebra->field();
    Bidegree tb{b.i, b.j + 1};
    auto src = free_slice(g, b);
    auto dst = free_slice(g, tb);
    std::map<std::pair<int, int>, int> dst_index;
    for (int r = 0; r < dst.dim(); ++r) dst_index[dst.elems[r]] = r;
    ExactMatrix out(f, dst.dim(), src.dim());
    for (int c = 0; c < src.dim(); ++c) {
        auto [t, aidx] = src.elems[c];
        Bidegree abd{b.i - g.gens[t].bd.i, b.j - g.gens[t].bd.j};
        // d(g_t) * a
        for (auto& [s, elt] : g.dcols[t]) {
            auto prod = g.algebra->mul_elt_basis(elt.bd, elt.coords, abd, aidx);
            for (auto& [pidx, v] : prod) {
                auto it = dst_index.find({s, pidx});
                if (it != dst_index.end()) out.add_entry(it->second, c, v);
            }
        }
        // (-1)^{|g_t|} g_t * d(a)
        int sgn = g.gens[t].bd.j % 2;
        for (auto& [didx, v] : g.algebra->diff_basis(abd, aidx)) {
            auto it = dst_index.find({t, didx});
            if (it != dst_index.end()) out.add_entry(it->second, c, sgn ? f.neg(v) : v);
        }
    }
    return out;
}

/* right multiplication of a module slice vector by an algebra basis element */
static SparseVec module_mult_vec(const WindowedModule& m, Bidegree from, const SparseVec& vec,
                                 Bidegree ebd, int eidx) {
    Bidegree to = from + ebd;
    if (m.dim_at(to) == 0) return {};
    if (m.backed) {
        const Field f = m.field();
        Bidegree afrom{from.i + m.backed->twist, from.j + m.backed->shift};
        std::map<int, Rat> acc;
        for (auto& [r, v] : vec)
            for (auto& [r2, v2] : m.algebra->mul_basis(afrom, r, ebd, eidx)) {
                Rat add = f.mul(v, v2);
                auto it = acc.find(r2);
                if (it == acc.end())
                    acc[r2] = add;
                else
                    it->second = f.add(it->second, add);
            }
        SparseVec out;
        for (auto& [r, v] : acc)
            if (!v.is_zero()) out.push_back({r, v});
        return out;
    }
    return mat_apply(m.mult_matrix(from, ebd, eidx), vec);
}

/* the augmentation block eps: G(b) -> M(b) */
static ExactMatrix eps_matrix(const FreeDgModule& g, const std::vector<SparseVec>& eps,
                              const WindowedModule& m, Bidegree b) {
    auto src = free_slice(g, b);
    ExactMatrix out(m.field(), m.dim_at(b), src.dim());
    for (int c = 0; c < src.dim(); ++c) {
        auto [t, aidx] = src.elems[c];
        if (eps[t].empty()) continue;
        Bidegree abd{b.i - g.gens[t].bd.i, b.j - g.gens[t].bd.j};
        for (auto& [r, v] : module_mult_vec(m, g.gens[t].bd, eps[t], abd, aidx)) out.add_entry(r, c, v);
    }
    return out;
}

/* cone differential at cell (q, j): [G(q,j+1) + M(q,j)] -> [G(q,j+2) + M(q,j+1)] */
static ExactMatrix cone_diff(const FreeDgModule& g, const std::vector<SparseVec>& eps,
                             const WindowedModule& m, Bidegree b) {
    const Field f = m.field();
    Bidegree gb{b.i, b.j + 1};
    auto gdim = free_slice(g, gb).dim();
    auto gdim2 = free_slice(g, {b.i, b.j + 2}).dim();
    int mdim = m.dim_at(b), mdim2 = m.dim_at({b.i, b.j + 1});
    ExactMatrix out(f, gdim2 + mdim2, gdim + mdim);
    ExactMatrix dg = free_diff_matrix(g, gb);
    for (int c = 0; c < gdim; ++c)
        for (auto& [r, v] : dg.column(c)) out.add_entry(r, c, f.neg(v));
    ExactMatrix ep = eps_matrix(g, eps, m, gb);
    for (int c = 0; c < gdim; ++c)
        for (auto& [r, v] : ep.column(c)) out.add_entry(gdim2 + r, c, v);
    ExactMatrix dm = m.d_at(b);
    for (int c = 0; c < mdim; ++c)
        for (auto& [r, v] : dm.column(c)) out.add_entry(gdim2 + r, gdim + c, v);
    return out;
}

Resolution semifree_resolution(const WindowedModule& m, int D) {
    if (m.window.i_max < D)
        throw WindowInsufficientError({m.window.i_max + 1, 0}, "resolution bound exceeds window");
    if (m.window.j_max < m.support.j_max)
        throw WindowInsufficientError({m.window.i_min, m.support.j_max}, "window misses the module's top");
    Resolution r;
    r.free.algebra = m.algebra;
    const Field f = m.field();
    int j_lo = m.window.j_min + 1;
    int layer = 0;
    int q0 = std::max(m.support.i_min, m.window.i_min);
    for (int q = q0; q <= D; ++q) {
        int j_hi = std::max(m.support.j_max, 0);
        for (int j = j_hi; j >= j_lo; --j) {
            Bidegree cell{q, j};
            int gdim = free_slice(r.free, {q, j + 1}).dim();
            int mdim = m.dim_at(cell);
            if (gdim + mdim == 0) continue;
            ExactMatrix d_out = cone_diff(r.free, r.eps, m, cell);
            ExactMatrix d_in = cone_diff(r.free, r.eps, m, {q, j - 1});
            auto slot = cohomology_representatives(d_in, d_out);
            if (slot.dim == 0) continue;
            auto gslice = free_slice(r.free, {q, j + 1});
            for (auto& rep : slot.reps) {
                int id = (int)r.free.gens.size();
                r.free.gens.push_back({id, cell, layer, "g" + std::to_string(id)});
                std::map<int, std::pair<Bidegree, std::map<int, Rat>>> col;
                SparseVec mpart;
                for (auto& [idx, v] : rep) {
                    if (idx < gslice.dim()) {
                        auto [t, aidx] = gslice.elems[idx];
                        Bidegree abd{q - r.free.gens[t].bd.i, j + 1 - r.free.gens[t].bd.j};
                        auto& slot2 = col[t];
                        slot2.first = abd;
                        slot2.second[aidx] = v;
                    } else {
                        mpart.push_back({idx - gslice.dim(), f.neg(v)});
                    }
                }
                std::vector<std::pair<int, AlgElt>> dcol;
                for (auto& [t, pr] : col) {
                    AlgElt elt;
                    elt.bd = pr.first;
                    for (auto& [aidx, v] : pr.second)
                        if (!v.is_zero()) elt.coords.push_back({aidx, v});
                    if (!elt.coords.empty()) dcol.push_back({t, std::move(elt)});
                }
                r.free.dcols.push_back(std::move(dcol));
                r.eps.push_back(std::move(mpart));
            }
            ++layer;
        }
    }
    r.cert.bound_D = D;
    r.cert.coh_min = j_lo;
    r.cert.model = "layered";
    r.cert.minimal = true;
    r.cert.target_i_min = m.support.i_min;
    r.cert.target_j_min = m.support.j_min ? *m.support.j_min : m.window.j_min;
    for (auto& col : r.free.dcols)
        for (auto& [t, elt] : col)
            if (elt.bd.i == 0 && elt.bd.j == 0) r.cert.minimal = false;
    return r;
}

Resolution base_resolution(const WindowedModule& m, int D) { return semifree_resolution(m, D); }

/* closed-form acyclic model for k over a generator-form algebra whose forms
 * lie in the square of the maximal ideal */
static Resolution tate_model(const AlgebraPtr& a, int D, int coh_min) {
    const GenForm& gf = a->gen_form();
    const Field f = a->field();
    int nv = gf.vars.count(), nc = (int)gf.odd.size();
    std::vector<std::vector<Poly>> h(nc, std::vector<Poly>(nv));
    for (int j = 0; j < nc; ++j)
        for (auto& [mono, coef] : gf.odd[j].diff.terms) {
            int v0 = -1;
            for (int v = 0; v < nv; ++v)
                if (mono[v]) {
                    v0 = v;
                    break;
                }
            if (v0 < 0) throw std::logic_error("Koszul form with constant term");
            Mono rest = mono;
            rest[v0] -= 1;
            h[j][v0].add_term(rest, coef, gf.vars, f);
        }
    struct TateGen {
        std::vector<uint8_t> sigma;
        std::vector<uint16_t> alpha;
        Bidegree bd;
    };
    std::vector<TateGen> tg;
    std::vector<std::vector<uint16_t>> alphas;
    {
        std::vector<uint16_t> cur(nc, 0);
        std::function<void(int, int)> rec = [&](int pos, int rem) {
            if (pos == nc) {
                alphas.push_back(cur);
                return;
            }
            int w = gf.odd[pos].internal;
            for (int e = 0; e * w <= rem; ++e) {
                cur[pos] = (uint16_t)e;
                rec(pos + 1, rem - e * w);
            }
            cur[pos] = 0;
        };
        rec(0, D);
    }
    for (int mask = 0; mask < (1 << nv); ++mask) {
        std::vector<uint8_t> s;
        int sdeg = 0;
        for (int v = 0; v < nv; ++v)
            if (mask & (1 << v)) {
                s.push_back((uint8_t)v);
                sdeg += gf.vars.degrees[v];
            }
        if (sdeg > D) continue;
        for (auto& al : alphas) {
            int deg = sdeg, coh = -(int)s.size();
            for (int j = 0; j < nc; ++j) {
                deg += al[j] * gf.odd[j].internal;
                coh -= 2 * al[j];
            }
            if (deg > D || coh < coh_min) continue;
            tg.push_back({s, al, {deg, coh}});
        }
    }
    std::sort(tg.begin(), tg.end(), [](const TateGen& x, const TateGen& y) {
        if (x.bd.i != y.bd.i) return x.bd.i < y.bd.i;
        if (x.bd.j != y.bd.j) return x.bd.j > y.bd.j;
        if (x.sigma != y.sigma) return x.sigma < y.sigma;
        return x.alpha < y.alpha;
    });
    std::map<std::pair<std::vector<uint8_t>, std::vector<uint16_t>>, int> index;
    for (int i = 0; i < (int)tg.size(); ++i) index[{tg[i].sigma, tg[i].alpha}] = i;

    Resolution r;
    r.free.algebra = a;
    Mono zero_mono(nv, 0);
    auto mono_of_var = [&](int v) {
        Mono m(nv, 0);
        m[v] = 1;
        return m;
    };
    for (int i = 0; i < (int)tg.size(); ++i) {
        auto& g = tg[i];
        std::string lab;
        for (uint8_t v : g.sigma) lab += (lab.empty() ? "" : "*") + ("Y" + gf.vars.names[v]);
        for (int j = 0; j < nc; ++j)
            if (g.alpha[j]) {
                lab += (lab.empty() ? "" : "*") + ("T" + std::to_string(j + 1));
                if (g.alpha[j] > 1) lab += "^(" + std::to_string((int)g.alpha[j]) + ")";
            }
        if (lab.empty()) lab = "1";
        r.free.gens.push_back({i, g.bd, g.bd.i, lab});
        std::map<int, std::map<std::pair<Bidegree, int>, Rat>> acc;
        auto add_term = [&](const std::vector<uint8_t>& sig, const std::vector<uint16_t>& al,
                            Bidegree ebd, const Mono& mono, const std::vector<uint8_t>& esub, Rat c) {
            auto it = index.find({sig, al});
            if (it == index.end()) return;  // target generator outside the truncation
            int idx = a->monomial_slice_index(ebd, mono, esub);
            if (idx < 0) throw std::logic_error("coefficient outside its slice");
            Rat rc = f.reduce(c);
            if (rc.is_zero()) return;
            auto key = std::make_pair(ebd, idx);
            auto& cell = acc[it->second][key];
            cell = f.add(cell, rc);
        };
        for (size_t l = 0; l < g.sigma.size(); ++l) {
            std::vector<uint8_t> rest;
            for (size_t t = 0; t < g.sigma.size(); ++t)
                if (t != l) rest.push_back(g.sigma[t]);
            int v = g.sigma[l];
            add_term(rest, g.alpha, {gf.vars.degrees[v], 0}, mono_of_var(v), {},
                     Rat(l % 2 == 0 ? 1 : -1));
        }
        int s_par = (int)g.sigma.size() % 2;
        for (int j = 0; j < nc; ++j) {
            if (!g.alpha[j]) continue;
            auto al = g.alpha;
            al[j] -= 1;
            // (-1)^{|sigma|} (Y_sigma T^{alpha - e_j}) e_j
            add_term(g.sigma, al, {gf.odd[j].internal, -1}, zero_mono, {(uint8_t)j},
                     Rat(s_par ? -1 : 1));
            // -(-1)^{|sigma|} sum_i (Y_sigma Y_i) T^{alpha - e_j} h_{ij}
            for (int v = 0; v < nv; ++v) {
                if (h[j][v].is_zero()) continue;
                bool present = false;
                int after = 0;
                for (uint8_t sv : g.sigma) {
                    if (sv == v) present = true;
                    if (sv > v) ++after;
                }
                if (present) continue;
                std::vector<uint8_t> bigger = g.sigma;
                bigger.push_back((uint8_t)v);
                std::sort(bigger.begin(), bigger.end());
                int sgn = ((after % 2) ? -1 : 1) * (s_par ? 1 : -1);
                for (auto& [hm, hc] : h[j][v].terms)
                    add_term(bigger, al, {mono_degree(hm, gf.vars), 0}, hm, {}, f.mul(Rat(sgn), hc));
            }
        }
        std::vector<std::pair<int, AlgElt>> dcol;
        for (auto& [t, cells] : acc) {
            std::map<Bidegree, SparseVec> by_bd;
            for (auto& [key, c] : cells)
                if (!c.is_zero()) by_bd[key.first].push_back({key.second, c});
            for (auto& [bd, coords] : by_bd) {
                if (coords.empty()) continue;
                AlgElt elt;
                elt.bd = bd;
                elt.coords = coords;
                std::sort(elt.coords.begin(), elt.coords.end(),
                          [](auto& x, auto& y) { return x.first < y.first; });
                dcol.push_back({t, std::move(elt)});
            }
        }
        r.free.dcols.push_back(std::move(dcol));
        r.eps.push_back(i == 0 ? SparseVec{{0, Rat(1)}} : SparseVec{});
    }
    r.cert.bound_D = D;
    r.cert.coh_min = coh_min;
    r.cert.model = "closed-form";
    r.cert.minimal = true;
    r.cert.target_i_min = 0;
    r.cert.target_j_min = 0;
    return r;
}

Resolution resolve_ground_field(const AlgebraPtr& a, int D, int coh_min) {
    if (a->is_generator_form() && a->forms_in_square_of_max_ideal()) {
        auto r = tate_model(a, D, coh_min);
        r.target_spec = ModuleSpec::ground_field();
        return r;
    }
    BidegWindow w{0, D, coh_min - 1, 1};
    auto k = realize_ground_field(a, w);
    auto r = semifree_resolution(k, D);
    r.target_spec = ModuleSpec::ground_field();
    return r;
}

WindowedModule realize_free(const FreeDgModule& g, const BidegWindow& w) {
    WindowedModule m;
    m.algebra = g.algebra;
    m.window = w;
    m.certified = w;
    m.name = "G";
    m.support.i_min = 0;
    for (auto& gen : g.gens) m.support.i_min = std::min(m.support.i_min, gen.bd.i);
    m.support.j_max = 0;
    const Field f = g.algebra->field();
    for (int i = w.i_min; i <= w.i_max; ++i)
        for (int j = w.j_min; j <= w.j_max; ++j) {
            auto sl = free_slice(g, {i, j});
            if (sl.dim()) {
                m.dims[{i, j}] = sl.dim();
                std::vector<std::string> labs;
                for (auto& [t, aidx] : sl.elems) {
                    Bidegree abd{i - g.gens[t].bd.i, j - g.gens[t].bd.j};
                    labs.push_back(g.gens[t].label + "." + g.algebra->slice(abd).labels[aidx]);
                }
                m.labels[{i, j}] = labs;
            }
        }
    for (auto& [b, dim] : m.dims) m.d_mats.emplace(b, free_diff_matrix(g, b));
    auto gens = g.algebra->generators();
    for (auto& [b, dim] : m.dims)
        for (int gi = 0; gi < (int)gens.size(); ++gi) {
            Bidegree tb = b + gens[gi].bidegree;
            if (!m.dims.count(tb)) continue;
            auto src = free_slice(g, b);
            auto dst = free_slice(g, tb);
            std::map<std::pair<int, int>, int> dst_index;
            for (int rr = 0; rr < dst.dim(); ++rr) dst_index[dst.elems[rr]] = rr;
            auto [gbd, gidx] = g.algebra->generator_position(gens[gi]);
            ExactMatrix act(f, dst.dim(), src.dim());
            for (int c = 0; c < src.dim(); ++c) {
                auto [t, aidx] = src.elems[c];
                Bidegree abd{b.i - g.gens[t].bd.i, b.j - g.gens[t].bd.j};
                for (auto& [pidx, v] : g.algebra->mul_basis(abd, aidx, gbd, gidx)) {
                    auto it = dst_index.find({t, pidx});
                    if (it != dst_index.end()) act.add_entry(it->second, c, v);
                }
            }
            m.action_mats.emplace(std::make_pair(gi, b), std::move(act));
        }
    return m;
}

ModuleMorphism augmentation_morphism(const Resolution& r, const WindowedModule& gw,
                                     const WindowedModule& m) {
    ModuleMorphism f;
    f.src = &gw;
    f.dst = &m;
    for (auto& [b, dim] : gw.dims) {
        if (!m.known_at(b)) continue;
        f.mats.emplace(b, eps_matrix(r.free, r.eps, m, b));
    }
    return f;
}

WindowedModule compact_model(const Resolution& r, const WindowedModule& m, int J, const BidegWindow& w) {
    auto gw = realize_free(r.free, w);
    auto table = cohomology_table(gw, {w.i_min, w.i_max, w.j_min, J});
    for (auto& [b, e] : table.entries)
        if (e.certified && e.dim != 0)
            throw CertificationError("compact model: cohomology is nonzero at " + b.to_string() +
                                     ", vanishing hypothesis fails");
    (void)m;
    return smart_truncate(gw, J + 1, TruncSide::AtAndAbove);
}

}  // namespace korlov
