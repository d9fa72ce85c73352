#include "korlov/presentation.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <sstream>

namespace {
void acc_add(const korlov::Field& f, std::map<int, korlov::Rat>& acc, int key, const korlov::Rat& v) {
    auto it = acc.find(key);
    if (it == acc.end())
        acc[key] = v;
    else
        it->second = f.add(it->second, v);
}
}  // namespace

namespace korlov {

int subset_merge_sign(const std::vector<uint8_t>& a, const std::vector<uint8_t>& b) {
    // number of pairs (x in a, y in b) with x > y
    int inversions = 0;
    for (uint8_t x : a)
        for (uint8_t y : b)
            if (x > y) ++inversions;
    return inversions % 2 ? -1 : 1;
}

nlohmann::json ValidationReport::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (auto& c : checks) arr.push_back({{"check", c.name}, {"pass", c.pass}, {"witness", c.witness}});
    return {{"pass", ok()}, {"checks", arr}};
}

/* ---------------- slice enumeration ---------------- */

static void subsets_of_size(int n, int k, std::vector<std::vector<uint8_t>>& out) {
    std::vector<uint8_t> cur;
    std::function<void(int)> rec = [&](int start) {
        if ((int)cur.size() == k) {
            out.push_back(cur);
            return;
        }
        for (int v = start; v < n; ++v) {
            cur.push_back((uint8_t)v);
            rec(v + 1);
            cur.pop_back();
        }
    };
    rec(0);
}

const std::vector<DgAlgebra::GenElem>& DgAlgebra::gen_elems(Bidegree b) const {
    std::lock_guard<std::mutex> lk(cache_mutex_);
    auto it = gen_elems_.find(b);
    if (it != gen_elems_.end()) return *it->second;
    const GenForm& g = gen_form();
    auto elems = std::make_shared<std::vector<GenElem>>();
    int s = -b.j;
    if (b.i >= 0 && s >= 0 && s <= (int)g.odd.size()) {
        std::vector<std::vector<uint8_t>> subs;
        subsets_of_size((int)g.odd.size(), s, subs);
        for (auto& sub : subs) {
            int wt = 0;
            for (uint8_t l : sub) wt += g.odd[l].internal;
            if (wt > b.i) continue;
            for (auto& m : monomials_of_degree(b.i - wt, g.vars)) elems->push_back({m, sub});
        }
        // canonical order: degrevlex on the even part first, then subset-lex
        std::sort(elems->begin(), elems->end(), [&](const GenElem& x, const GenElem& y) {
            if (!(x.first == y.first)) return degrevlex_less(x.first, y.first, g.vars);
            return x.second < y.second;
        });
    }
    auto idx = std::make_shared<std::map<GenElem, int>>();
    for (int i = 0; i < (int)elems->size(); ++i) (*idx)[(*elems)[i]] = i;
    gen_elems_[b] = elems;
    gen_index_[b] = idx;
    return *elems;
}

int DgAlgebra::gen_elem_index(Bidegree b, const GenElem& e) const {
    gen_elems(b);
    std::lock_guard<std::mutex> lk(cache_mutex_);
    auto& idx = *gen_index_.at(b);
    auto it = idx.find(e);
    return it == idx.end() ? -1 : it->second;
}

void DgAlgebra::build_table_positions() const {
    if (!table_pos_.empty()) return;
    const TableForm& t = table_form();
    std::map<Bidegree, int> counters;
    for (int gidx = 0; gidx < (int)t.labels.size(); ++gidx)
        table_pos_[gidx] = {t.bdeg[gidx], counters[t.bdeg[gidx]]++};
}

const std::vector<int>& DgAlgebra::table_slice(Bidegree b) const {
    std::lock_guard<std::mutex> lk(cache_mutex_);
    auto it = table_slice_.find(b);
    if (it != table_slice_.end()) return *it->second;
    build_table_positions();
    const TableForm& t = table_form();
    auto v = std::make_shared<std::vector<int>>();
    for (int g = 0; g < (int)t.labels.size(); ++g)
        if (t.bdeg[g] == b) v->push_back(g);
    table_slice_[b] = v;
    return *v;
}

std::pair<Bidegree, int> DgAlgebra::table_position(int global) const {
    std::lock_guard<std::mutex> lk(cache_mutex_);
    build_table_positions();
    return table_pos_.at(global);
}

const BasisSlice& DgAlgebra::slice(Bidegree b) const {
    {
        std::lock_guard<std::mutex> lk(cache_mutex_);
        auto it = slice_cache_.find(b);
        if (it != slice_cache_.end()) return *it->second;
    }
    auto s = std::make_shared<BasisSlice>();
    s->bidegree = b;
    if (is_generator_form()) {
        const GenForm& g = gen_form();
        for (auto& [m, sub] : gen_elems(b)) {
            std::string lab = mono_to_string(m, g.vars);
            if (lab == "1" && !sub.empty()) lab.clear();
            for (uint8_t l : sub) lab += (lab.empty() ? "" : "*") + g.odd[l].name;
            if (lab.empty()) lab = "1";
            s->labels.push_back(lab);
        }
    } else {
        const TableForm& t = table_form();
        for (int g : table_slice(b)) s->labels.push_back(t.labels[g]);
    }
    std::lock_guard<std::mutex> lk(cache_mutex_);
    auto [it, inserted] = slice_cache_.try_emplace(b, s);
    return *it->second;
}

/* ---------------- basis multiplication and differential ---------------- */

SparseVec DgAlgebra::localize_table_combo(const SparseVec& global_combo, Bidegree target) const {
    SparseVec out;
    for (auto& [g, c] : global_combo) {
        auto [bd, local] = table_position(g);
        if (!(bd == target)) throw InvalidInputError("inhomogeneous table entry");
        out.push_back({local, c});
    }
    std::sort(out.begin(), out.end(), [](auto& a, auto& b) { return a.first < b.first; });
    return out;
}

SparseVec DgAlgebra::mul_basis(Bidegree a, int ia, Bidegree b, int ib) const {
    Bidegree target = a + b;
    if (is_generator_form()) {
        const auto& ea = gen_elems(a)[ia];
        const auto& eb = gen_elems(b)[ib];
        // disjointness of odd parts
        std::vector<uint8_t> merged;
        {
            size_t x = 0, y = 0;
            const auto &sa = ea.second, &sb = eb.second;
            while (x < sa.size() && y < sb.size()) {
                if (sa[x] == sb[y]) return {};
                merged.push_back(std::min(sa[x], sb[y]));
                (sa[x] < sb[y] ? x : y)++;
            }
            while (x < sa.size()) merged.push_back(sa[x++]);
            while (y < sb.size()) merged.push_back(sb[y++]);
        }
        int sign = subset_merge_sign(ea.second, eb.second);
        Mono m = ea.first;
        for (size_t i = 0; i < m.size(); ++i) m[i] = (uint16_t)(m[i] + eb.first[i]);
        int idx = gen_elem_index(target, {m, merged});
        if (idx < 0) throw std::logic_error("product fell outside its slice");
        return {{idx, field_.reduce(Rat(sign))}};
    }
    const TableForm& t = table_form();
    int ga = table_slice(a)[ia], gb = table_slice(b)[ib];
    return localize_table_combo(t.mult[ga][gb], target);
}

SparseVec DgAlgebra::diff_basis(Bidegree a, int ia) const {
    Bidegree target{a.i, a.j + 1};
    if (is_generator_form()) {
        const GenForm& g = gen_form();
        const auto& e = gen_elems(a)[ia];
        std::map<int, Rat> acc;
        const auto& sub = e.second;
        for (size_t l = 0; l < sub.size(); ++l) {
            int sgn = (l % 2 == 0) ? 1 : -1;
            const Poly& f = g.odd[sub[l]].diff;
            std::vector<uint8_t> rest;
            for (size_t t2 = 0; t2 < sub.size(); ++t2)
                if (t2 != l) rest.push_back(sub[t2]);
            for (auto& [fm, fc] : f.terms) {
                Mono m = e.first;
                for (size_t i = 0; i < m.size(); ++i) m[i] = (uint16_t)(m[i] + fm[i]);
                int idx = gen_elem_index(target, {m, rest});
                if (idx < 0) throw std::logic_error("differential fell outside its slice");
                Rat add = field_.mul(fc, Rat(sgn));
                auto it = acc.find(idx);
                if (it == acc.end())
                    acc[idx] = add;
                else
                    it->second = field_.add(it->second, add);
            }
        }
        SparseVec out;
        for (auto& [i, v] : acc)
            if (!v.is_zero()) out.push_back({i, v});
        return out;
    }
    const TableForm& t = table_form();
    int ga = table_slice(a)[ia];
    return localize_table_combo(t.diff[ga], target);
}

SparseVec DgAlgebra::mul_elt_basis(Bidegree a, const SparseVec& x, Bidegree b, int ib) const {
    std::map<int, Rat> acc;
    for (auto& [ia, c] : x)
        for (auto& [k, v] : mul_basis(a, ia, b, ib)) {
            Rat add = field_.mul(c, v);
            auto it = acc.find(k);
            if (it == acc.end())
                acc[k] = add;
            else
                it->second = field_.add(it->second, add);
        }
    SparseVec out;
    for (auto& [i, v] : acc)
        if (!v.is_zero()) out.push_back({i, v});
    return out;
}

/* ---------------- constructors ---------------- */

AlgebraPtr DgAlgebra::koszul_complex_poly(Field f, VarTable vars, std::vector<Poly> forms) {
    for (int i = 0; i < vars.count(); ++i) {
        if (vars.degrees[i] < 1) throw InvalidInputError("variable '" + vars.names[i] + "' must have positive degree");
        for (int j = i + 1; j < vars.count(); ++j)
            if (vars.names[i] == vars.names[j]) throw InvalidInputError("duplicate variable name");
    }
    GenForm g;
    g.vars = std::move(vars);
    int c = 0;
    for (auto& p : forms) {
        int deg = 0;
        if (!p.is_homogeneous(g.vars, &deg))
            throw InvalidInputError("Koszul form " + p.to_string(g.vars) + " is not homogeneous");
        if (p.is_zero() || deg < 1)
            throw InvalidInputError("Koszul form must have positive degree");
        g.odd.push_back({"e" + std::to_string(++c), deg, std::move(p)});
    }
    auto a = AlgebraPtr(new DgAlgebra(f, true, std::move(g)));
    a->validate_or_throw();
    return a;
}

AlgebraPtr DgAlgebra::koszul_complex(Field f, VarTable vars, const std::vector<std::string>& forms) {
    std::vector<Poly> ps;
    for (auto& s : forms) ps.push_back(parse_poly(s, vars, f));
    return koszul_complex_poly(f, std::move(vars), std::move(ps));
}

AlgebraPtr DgAlgebra::exterior_algebra(Field f, const std::vector<int>& degrees) {
    GenForm g;
    int c = 0;
    for (int d : degrees) {
        if (d < 1) throw InvalidInputError("exterior generator degree must be positive");
        g.odd.push_back({"e" + std::to_string(c++), d, Poly::zero()});
    }
    auto a = AlgebraPtr(new DgAlgebra(f, true, std::move(g)));
    a->validate_or_throw();
    return a;
}

AlgebraPtr DgAlgebra::from_table(Field f, TableForm t, bool commutative) {
    if (t.labels.empty()) throw InvalidInputError("table algebra needs at least the unit");
    if (!(t.bdeg[0] == Bidegree{0, 0})) throw InvalidInputError("basis element 0 must be the unit at (0,0)");
    size_t n = t.labels.size();
    if (t.bdeg.size() != n || t.mult.size() != n || t.diff.size() != n)
        throw InvalidInputError("table shape mismatch");
    for (auto& row : t.mult)
        if (row.size() != n) throw InvalidInputError("table shape mismatch");
    // canonicalize coefficients through the field
    for (auto& row : t.mult)
        for (auto& combo : row)
            for (auto& [g, c] : combo) c = f.reduce(c);
    for (auto& combo : t.diff)
        for (auto& [g, c] : combo) c = f.reduce(c);
    auto a = AlgebraPtr(new DgAlgebra(f, commutative, std::move(t)));
    a->validate_or_throw();
    return a;
}

AlgebraPtr DgAlgebra::truncated_polynomial(Field f, int d, int n) {
    if (d < 1 || n < 2) throw InvalidInputError("truncated polynomial ring needs degree >= 1, power >= 2");
    TableForm t;
    for (int k = 0; k < n; ++k) {
        t.labels.push_back(k == 0 ? "1" : (k == 1 ? "x" : "x^" + std::to_string(k)));
        t.bdeg.push_back({k * d, 0});
    }
    t.mult.assign(n, std::vector<SparseVec>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i + j < n) t.mult[i][j] = {{i + j, Rat(1)}};
    t.diff.assign(n, {});
    return from_table(f, std::move(t), true);
}

AlgebraPtr DgAlgebra::trivial_extension(const AlgebraPtr& base, int b, int d) {
    if (base->is_generator_form())
        throw InvalidInputError("trivial extension requires a finite table-form base");
    const TableForm& B = base->table_form();
    const Field f = base->field();
    int n = (int)B.labels.size();
    TableForm t;
    t.labels = B.labels;
    t.bdeg = B.bdeg;
    for (int k = 0; k < n; ++k) {
        t.labels.push_back(B.labels[k] + "'");
        t.bdeg.push_back({b - B.bdeg[k].i, -d - B.bdeg[k].j});
    }
    t.mult.assign(2 * n, std::vector<SparseVec>(2 * n));
    auto coeff_of = [&](const SparseVec& combo, int g) {
        for (auto& [gg, c] : combo)
            if (gg == g) return c;
        return Rat();
    };
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) t.mult[x][y] = B.mult[x][y];
    for (int k = 0; k < n; ++k) {
        for (int y = 0; y < n; ++y) {
            // right action: b_k^v . y = sum_m coeff_{b_k}(y * b_m) b_m^v
            SparseVec right;
            for (int m = 0; m < n; ++m) {
                Rat c = coeff_of(B.mult[y][m], k);
                if (!c.is_zero()) right.push_back({n + m, c});
            }
            t.mult[n + k][y] = right;
            // b_y * b_k^v = (-1)^{|y||psi|} y o psi with (y o psi)(z) = (-1)^{|y||z|} psi(z y)
            int jpsi = -d - B.bdeg[k].j;  // cohomological degree of the dual element
            SparseVec left;
            for (int m = 0; m < n; ++m) {
                Rat c = coeff_of(B.mult[m][y], k);
                if (c.is_zero()) continue;
                int e = B.bdeg[y].j * jpsi + B.bdeg[y].j * B.bdeg[m].j;
                left.push_back({n + m, (e % 2) ? f.neg(c) : c});
            }
            t.mult[y][n + k] = left;
        }
    }
    t.diff.assign(2 * n, {});
    for (int k = 0; k < n; ++k) t.diff[k] = B.diff[k];
    for (int k = 0; k < n; ++k) {
        // d(b_k^v) = -(-1)^{|b_k^v|} sum_m coeff_{b_k}(d b_m) b_m^v
        int jpsi = -d - B.bdeg[k].j;
        SparseVec dv;
        for (int m = 0; m < n; ++m) {
            Rat c = coeff_of(B.diff[m], k);
            if (c.is_zero()) continue;
            // -(-1)^{|psi|} c
            dv.push_back({n + m, (jpsi % 2 != 0) ? c : f.neg(c)});
        }
        t.diff[n + k] = dv;
    }
    return from_table(f, std::move(t), base->commutative());
}

AlgebraPtr DgAlgebra::tensor_product(const AlgebraPtr& left, const AlgebraPtr& right) {
    if (left->field() != right->field()) throw FieldMismatchError();
    if (left->is_generator_form() || right->is_generator_form())
        throw InvalidInputError("tensor product requires finite table-form factors");
    const TableForm &A = left->table_form(), &B = right->table_form();
    const Field f = left->field();
    int na = (int)A.labels.size(), nb = (int)B.labels.size();
    auto id = [&](int a, int b) { return a * nb + b; };
    TableForm t;
    for (int a = 0; a < na; ++a)
        for (int b = 0; b < nb; ++b) {
            t.labels.push_back(A.labels[a] == "1" ? B.labels[b]
                               : B.labels[b] == "1" ? A.labels[a]
                                                    : A.labels[a] + "(x)" + B.labels[b]);
            t.bdeg.push_back(A.bdeg[a] + B.bdeg[b]);
        }
    t.mult.assign(na * nb, std::vector<SparseVec>(na * nb));
    for (int a = 0; a < na; ++a)
        for (int b = 0; b < nb; ++b)
            for (int a2 = 0; a2 < na; ++a2)
                for (int b2 = 0; b2 < nb; ++b2) {
                    // (a (x) b)(a2 (x) b2) = (-1)^{|b||a2|} a a2 (x) b b2
                    int sgn = (B.bdeg[b].j * A.bdeg[a2].j) % 2;
                    std::map<int, Rat> acc;
                    for (auto& [ga, ca] : A.mult[a][a2])
                        for (auto& [gb, cb] : B.mult[b][b2]) {
                            Rat c = f.mul(ca, cb);
                            if (sgn) c = f.neg(c);
                            acc_add(f, acc, id(ga, gb), c);
                        }
                    SparseVec out;
                    for (auto& [g, c] : acc)
                        if (!c.is_zero()) out.push_back({g, c});
                    t.mult[id(a, b)][id(a2, b2)] = out;
                }
    t.diff.assign(na * nb, {});
    for (int a = 0; a < na; ++a)
        for (int b = 0; b < nb; ++b) {
            std::map<int, Rat> acc;
            for (auto& [ga, c] : A.diff[a]) acc[id(ga, b)] = c;
            int sgn = A.bdeg[a].j % 2;
            for (auto& [gb, c] : B.diff[b]) {
                Rat cc = sgn ? f.neg(c) : c;
                auto key = id(a, gb);
                auto it = acc.find(key);
                if (it == acc.end())
                    acc[key] = cc;
                else
                    it->second = f.add(it->second, cc);
            }
            SparseVec out;
            for (auto& [g, c] : acc)
                if (!c.is_zero()) out.push_back({g, c});
            t.diff[id(a, b)] = out;
        }
    return from_table(f, std::move(t), left->commutative() && right->commutative());
}

AlgebraPtr DgAlgebra::koszul_over_polys(const AlgebraPtr& base, const std::vector<Poly>& lifts) {
    if (!base->is_generator_form())
        throw InvalidInputError("polynomial lifts require a generator-form base");
    if (!base->commutative()) throw InvalidInputError("Koszul construction needs a graded-commutative base");
    GenForm g = base->gen_form();
    int c = (int)g.odd.size();
    for (auto& p : lifts) {
        int deg = 0;
        if (!p.is_homogeneous(g.vars, &deg) || p.is_zero() || deg < 1)
            throw InvalidInputError("Koszul lift must be homogeneous of positive degree");
        g.odd.push_back({"e" + std::to_string(++c), deg, p});
    }
    auto a = AlgebraPtr(new DgAlgebra(base->field(), true, std::move(g)));
    a->validate_or_throw();
    return a;
}

AlgebraPtr DgAlgebra::koszul_over_table_elts(const AlgebraPtr& base,
                                             const std::vector<std::pair<int, SparseVec>>& lifts) {
    if (base->is_generator_form()) throw InvalidInputError("expected a table-form base");
    if (!base->commutative()) throw InvalidInputError("Koszul construction needs a graded-commutative base");
    const TableForm& B = base->table_form();
    const Field f = base->field();
    int n = (int)B.labels.size();
    int c = (int)lifts.size();
    // verify the lifts are degree-(deg,0) cocycles
    for (auto& [deg, combo] : lifts) {
        if (deg < 1) throw InvalidInputError("Koszul lift must have positive internal degree");
        std::map<int, Rat> dacc;
        for (auto& [g, coef] : combo) {
            if (!(B.bdeg[g] == Bidegree{deg, 0}))
                throw InvalidInputError("Koszul lift is not homogeneous of bidegree (deg, 0)");
            for (auto& [h, dc] : B.diff[g]) {
                auto it = dacc.find(h);
                Rat add = f.mul(coef, dc);
                if (it == dacc.end())
                    dacc[h] = add;
                else
                    it->second = f.add(it->second, add);
            }
        }
        for (auto& [h, v] : dacc)
            if (!v.is_zero()) throw InvalidInputError("Koszul lift is not a cocycle");
    }
    // basis: (g, subset of {0..c-1}); subset encoded as bitmask order
    std::vector<std::vector<uint8_t>> subs;
    for (int s = 0; s <= c; ++s) subsets_of_size(c, s, subs);
    int ns = (int)subs.size();
    auto id = [&](int g, int si) { return g * ns + si; };
    std::map<std::vector<uint8_t>, int> sub_index;
    for (int si = 0; si < ns; ++si) sub_index[subs[si]] = si;
    TableForm t;
    for (int g = 0; g < n; ++g)
        for (int si = 0; si < ns; ++si) {
            std::string lab = B.labels[g];
            int wt = 0;
            for (uint8_t l : subs[si]) {
                lab += (lab == "1" ? (lab.clear(), "") : "*") + ("E" + std::to_string((int)l + 1));
                wt += lifts[l].first;
            }
            if (lab.empty()) lab = "1";
            t.labels.push_back(lab);
            t.bdeg.push_back({B.bdeg[g].i + wt, B.bdeg[g].j - (int)subs[si].size()});
        }
    t.mult.assign(n * ns, std::vector<SparseVec>(n * ns));
    for (int g = 0; g < n; ++g)
        for (int si = 0; si < ns; ++si)
            for (int g2 = 0; g2 < n; ++g2)
                for (int si2 = 0; si2 < ns; ++si2) {
                    const auto &s1 = subs[si], &s2 = subs[si2];
                    bool disjoint = true;
                    for (uint8_t x : s1)
                        for (uint8_t y : s2)
                            if (x == y) disjoint = false;
                    if (!disjoint) continue;
                    std::vector<uint8_t> merged = s1;
                    merged.insert(merged.end(), s2.begin(), s2.end());
                    std::sort(merged.begin(), merged.end());
                    // (g e_{s1})(g2 e_{s2}) = (-1)^{|s1||g2|} merge_sign * (g g2) e_{merged}
                    int e = ((int)s1.size() * B.bdeg[g2].j) % 2;
                    int sgn = subset_merge_sign(s1, s2) * (e ? -1 : 1);
                    int mi = sub_index[merged];
                    SparseVec out;
                    for (auto& [gg, cc] : B.mult[g][g2]) {
                        Rat v = sgn < 0 ? f.neg(cc) : cc;
                        out.push_back({id(gg, mi), v});
                    }
                    std::sort(out.begin(), out.end(), [](auto& a, auto& b) { return a.first < b.first; });
                    t.mult[id(g, si)][id(g2, si2)] = out;
                }
    t.diff.assign(n * ns, {});
    for (int g = 0; g < n; ++g)
        for (int si = 0; si < ns; ++si) {
            std::map<int, Rat> acc;
            for (auto& [h, dc] : B.diff[g]) acc[id(h, si)] = dc;
            // + (-1)^{|g|} g . sum_l (-1)^{l-1} f_{s[l]} e_{s minus l}
            const auto& s1 = subs[si];
            int gsign = B.bdeg[g].j % 2;
            for (size_t l = 0; l < s1.size(); ++l) {
                std::vector<uint8_t> rest;
                for (size_t t2 = 0; t2 < s1.size(); ++t2)
                    if (t2 != l) rest.push_back(s1[t2]);
                int ri = sub_index[rest];
                int ls = (l % 2 == 0 ? 1 : -1) * (gsign ? -1 : 1);
                for (auto& [fg, fc] : lifts[s1[l]].second)
                    for (auto& [gg, cc] : B.mult[g][fg]) {
                        Rat add = f.mul(fc, cc);
                        if (ls < 0) add = f.neg(add);
                        auto key = id(gg, ri);
                        auto it = acc.find(key);
                        if (it == acc.end())
                            acc[key] = add;
                        else
                            it->second = f.add(it->second, add);
                    }
            }
            SparseVec out;
            for (auto& [k, v] : acc)
                if (!v.is_zero()) out.push_back({k, v});
            t.diff[id(g, si)] = out;
        }
    return from_table(f, std::move(t), base->commutative());
}

AlgebraPtr DgAlgebra::connected_cover(const AlgebraPtr& a, const BidegWindow& w) {
    if (a->is_generator_form()) return a;  // generator-form constructions are connected
    const TableForm& T = a->table_form();
    const Field f = a->field();
    int n = (int)T.labels.size();
    // hypothesis: nothing survives in cohomology at i<0 or j>0 (checked on the window),
    // and internal degree 0 is spanned by the unit
    for (int g = 1; g < n; ++g)
        if (T.bdeg[g].i == 0)
            throw InvalidInputError("connected cover: degree-0 part is larger than the ground field");
    for (int i = w.i_min; i <= w.i_max; ++i)
        for (int j = w.j_min; j <= w.j_max; ++j) {
            if (!(i < 0 || j > 0)) continue;
            Bidegree b{i, j};
            auto cur = a->table_slice(b);
            if (cur.empty()) continue;
            // H at (i,j)
            auto prev = a->table_slice({i, j - 1});
            ExactMatrix din(f, (int)cur.size(), (int)prev.size()), dout(f, (int)a->table_slice({i, j + 1}).size(), (int)cur.size());
            for (int cidx = 0; cidx < (int)prev.size(); ++cidx)
                for (auto& [tg, c] : a->localize_table_combo(T.diff[prev[cidx]], b)) din.add_entry(tg, cidx, c);
            for (int cidx = 0; cidx < (int)cur.size(); ++cidx)
                for (auto& [tg, c] : a->localize_table_combo(T.diff[cur[cidx]], {i, j + 1})) dout.add_entry(tg, cidx, c);
            if (cohomology_dim(din, dout) != 0)
                throw InvalidInputError("connected cover: cohomology does not vanish at " + b.to_string());
        }
    // keep (i>=0, j<0) basis vectors; at j=0 keep a kernel basis of d
    struct NewElt {
        SparseVec combo;  // over old global basis
        Bidegree bd;
        std::string label;
    };
    std::vector<NewElt> elts;
    std::map<int, int> old_to_new;  // for pure old elements kept
    for (int g = 0; g < n; ++g) {
        if (T.bdeg[g].i < 0 || T.bdeg[g].j > 0) continue;
        if (T.bdeg[g].j < 0 || g == 0) {
            old_to_new[g] = (int)elts.size();
            elts.push_back({{{g, Rat(1)}}, T.bdeg[g], T.labels[g]});
        }
    }
    // j = 0, i > 0: kernel of d per internal degree
    std::map<int, std::vector<int>> by_deg;
    for (int g = 1; g < n; ++g)
        if (T.bdeg[g].j == 0 && T.bdeg[g].i > 0) by_deg[T.bdeg[g].i].push_back(g);
    for (auto& [deg, globals] : by_deg) {
        Bidegree up{deg, 1};
        auto updim = (int)a->table_slice(up).size();
        ExactMatrix d0(f, updim, (int)globals.size());
        for (int c = 0; c < (int)globals.size(); ++c)
            for (auto& [tg, v] : a->localize_table_combo(T.diff[globals[c]], up)) d0.add_entry(tg, c, v);
        int kn = 0;
        for (auto& kv : kernel_basis(d0)) {
            SparseVec combo;
            for (auto& [ci, v] : kv) combo.push_back({globals[ci], v});
            elts.push_back({combo, {deg, 0}, "c" + std::to_string(deg) + "_" + std::to_string(kn++)});
        }
    }
    // build the new table by re-expressing products/differentials over the new elements
    int m = (int)elts.size();
    // per-bidegree: matrix of new-basis combos for solving coordinates
    std::map<Bidegree, std::vector<int>> slice_elts;
    for (int e = 0; e < m; ++e) slice_elts[elts[e].bd].push_back(e);
    auto express = [&](const std::map<int, Rat>& vec_global, Bidegree bd) {
        SparseVec out;
        if (vec_global.empty()) return out;
        auto it = slice_elts.find(bd);
        if (it == slice_elts.end()) throw InvalidInputError("connected cover: product leaves the cover");
        auto& basis = it->second;
        // solve sum_k x_k elts[basis[k]].combo = vec (coordinates over old globals in this slice)
        std::vector<int> globals = a->table_slice(bd);
        std::map<int, int> gpos;
        for (int p = 0; p < (int)globals.size(); ++p) gpos[globals[p]] = p;
        ExactMatrix mat(f, (int)globals.size(), (int)basis.size());
        for (int c = 0; c < (int)basis.size(); ++c)
            for (auto& [g, v] : elts[basis[c]].combo) mat.add_entry(gpos.at(g), c, v);
        SparseVec rhs;
        for (auto& [g, v] : vec_global)
            if (!v.is_zero()) rhs.push_back({gpos.at(g), v});
        auto sol = solve(mat, rhs);
        if (!sol) throw InvalidInputError("connected cover: element not expressible in the cover");
        for (auto& [c, v] : *sol) out.push_back({basis[c], v});
        return out;
    };
    TableForm t;
    for (auto& e : elts) {
        t.labels.push_back(e.label);
        t.bdeg.push_back(e.bd);
    }
    t.mult.assign(m, std::vector<SparseVec>(m));
    t.diff.assign(m, {});
    for (int x = 0; x < m; ++x) {
        for (int y = 0; y < m; ++y) {
            std::map<int, Rat> prod;
            for (auto& [gx, cx] : elts[x].combo)
                for (auto& [gy, cy] : elts[y].combo)
                    for (auto& [gz, cz] : T.mult[gx][gy]) {
                        Rat add = f.mul(f.mul(cx, cy), cz);
                        auto it = prod.find(gz);
                        if (it == prod.end())
                            prod[gz] = add;
                        else
                            it->second = f.add(it->second, add);
                    }
            for (auto it = prod.begin(); it != prod.end();)
                it = it->second.is_zero() ? prod.erase(it) : std::next(it);
            t.mult[x][y] = express(prod, elts[x].bd + elts[y].bd);
        }
        std::map<int, Rat> dif;
        for (auto& [gx, cx] : elts[x].combo)
            for (auto& [gz, cz] : T.diff[gx]) {
                Rat add = f.mul(cx, cz);
                auto it = dif.find(gz);
                if (it == dif.end())
                    dif[gz] = add;
                else
                    it->second = f.add(it->second, add);
            }
        for (auto it = dif.begin(); it != dif.end();)
            it = it->second.is_zero() ? dif.erase(it) : std::next(it);
        t.diff[x] = express(dif, {elts[x].bd.i, elts[x].bd.j + 1});
    }
    return from_table(f, std::move(t), a->commutative());
}

/* ---------------- misc queries ---------------- */

std::vector<AlgebraGenerator> DgAlgebra::generators() const {
    std::vector<AlgebraGenerator> out;
    if (is_generator_form()) {
        const GenForm& g = gen_form();
        for (int i = 0; i < g.vars.count(); ++i)
            out.push_back({g.vars.names[i], {g.vars.degrees[i], 0}, false, i});
        for (int i = 0; i < (int)g.odd.size(); ++i)
            out.push_back({g.odd[i].name, {g.odd[i].internal, -1}, true, i});
    } else {
        const TableForm& t = table_form();
        for (int g = 1; g < (int)t.labels.size(); ++g) out.push_back({t.labels[g], t.bdeg[g], false, g});
    }
    return out;
}

std::vector<AlgebraGenerator> DgAlgebra::degree_zero_generators() const {
    std::vector<AlgebraGenerator> out;
    for (auto& g : generators())
        if (g.bidegree.j == 0) out.push_back(g);
    return out;
}

std::pair<Bidegree, int> DgAlgebra::generator_position(const AlgebraGenerator& g) const {
    if (is_generator_form()) {
        const GenForm& gf = gen_form();
        GenElem e;
        e.first = Mono(gf.vars.count(), 0);
        if (g.odd)
            e.second = {(uint8_t)g.index};
        else
            e.first[g.index] = 1;
        int idx = gen_elem_index(g.bidegree, e);
        if (idx < 0) throw std::logic_error("generator not found in its slice");
        return {g.bidegree, idx};
    }
    return table_position(g.index);
}

int DgAlgebra::monomial_slice_index(Bidegree b, const Mono& m, const std::vector<uint8_t>& odd_subset) const {
    return gen_elem_index(b, {m, odd_subset});
}

std::vector<AlgebraGenerator> DgAlgebra::factor_basis_element(Bidegree b, int idx) const {
    std::vector<AlgebraGenerator> out;
    if (is_generator_form()) {
        const GenForm& g = gen_form();
        const auto& e = gen_elems(b)[idx];
        for (int v = 0; v < g.vars.count(); ++v)
            for (int rep = 0; rep < (int)e.first[v]; ++rep)
                out.push_back({g.vars.names[v], {g.vars.degrees[v], 0}, false, v});
        for (uint8_t l : e.second) out.push_back({g.odd[l].name, {g.odd[l].internal, -1}, true, l});
        return out;
    }
    int global = table_slice(b)[idx];
    if (global != 0) {
        const TableForm& t = table_form();
        out.push_back({t.labels[global], t.bdeg[global], false, global});
    }
    return out;
}

bool DgAlgebra::finite_dimensional() const {
    if (is_generator_form()) return gen_form().vars.count() == 0;
    return true;
}

int DgAlgebra::max_internal_nonzero() const {
    if (is_generator_form()) {
        int m = 0;
        for (auto& o : gen_form().odd) m += o.internal;
        return m;
    }
    int m = 0;
    for (auto& b : table_form().bdeg) m = std::max(m, b.i);
    return m;
}

bool DgAlgebra::a0_standard_polynomial() const {
    if (!is_generator_form()) return false;
    const GenForm& g = gen_form();
    if (g.vars.count() == 0) return false;
    for (int d : g.vars.degrees)
        if (d != 1) return false;
    return true;
}

AlgebraPtr DgAlgebra::degree_zero_subalgebra() const {
    if (!is_generator_form()) throw InvalidInputError("A^0 extraction needs a generator-form algebra");
    return koszul_complex_poly(field_, gen_form().vars, {});
}

bool DgAlgebra::forms_in_square_of_max_ideal() const {
    if (!is_generator_form()) return false;
    const GenForm& g = gen_form();
    for (auto& o : g.odd)
        for (auto& [m, c] : o.diff.terms) {
            int deg = mono_degree(m, g.vars);
            int minw = 1 << 30;
            for (size_t v = 0; v < m.size(); ++v)
                if (m[v]) minw = std::min(minw, g.vars.degrees[v]);
            if (minw == 1 << 30 || deg - minw < 1) return false;
        }
    return true;
}

std::vector<std::pair<int, int>> DgAlgebra::bar_factor_types() const {
    std::vector<std::pair<int, int>> out;
    if (is_generator_form()) {
        const GenForm& g = gen_form();
        if (g.vars.count() > 0) {
            int minw = g.vars.degrees[0];
            for (int d : g.vars.degrees) minw = std::min(minw, d);
            out.push_back({minw, 1});
        }
        // s odd generators at once: internal >= the s smallest degrees, drop 1+s
        std::vector<int> degs;
        for (auto& o : g.odd) degs.push_back(o.internal);
        std::sort(degs.begin(), degs.end());
        int acc = 0;
        for (int s = 1; s <= (int)degs.size(); ++s) {
            acc += degs[s - 1];
            out.push_back({acc, 1 + s});
        }
    } else {
        const TableForm& t = table_form();
        for (int g = 1; g < (int)t.labels.size(); ++g) out.push_back({t.bdeg[g].i, 1 - t.bdeg[g].j});
    }
    return out;
}

std::string DgAlgebra::describe() const {
    std::ostringstream os;
    if (is_generator_form()) {
        const GenForm& g = gen_form();
        os << "generator form: " << g.vars.count() << " even";
        if (!g.odd.empty()) {
            os << ", odd gens:";
            for (auto& o : g.odd) os << " " << o.name << "(" << o.internal << ",-1)";
        }
    } else {
        os << "table form: " << table_form().labels.size() << " basis elements";
    }
    os << " over " << field_.to_string();
    return os.str();
}

/* ---------------- validation ---------------- */

ValidationReport DgAlgebra::validate(unsigned random_pairs, unsigned seed) const {
    ValidationReport rep;
    auto add = [&](const std::string& n, bool p, const std::string& w = "") {
        rep.checks.push_back({n, p, p ? "" : w});
    };
    if (is_generator_form()) {
        const GenForm& g = gen_form();
        bool conn = true;
        std::string w;
        for (int i = 0; i < g.vars.count(); ++i)
            if (g.vars.degrees[i] < 1) {
                conn = false;
                w = g.vars.names[i];
            }
        for (auto& o : g.odd)
            if (o.internal < 1) {
                conn = false;
                w = o.name;
            }
        add("connected", conn, w);
        bool homog = true;
        for (auto& o : g.odd) {
            int d = 0;
            if (!o.diff.is_homogeneous(g.vars, &d) || (!o.diff.is_zero() && d != o.internal)) {
                homog = false;
                w = o.name;
            }
        }
        add("differential_homogeneous", homog, w);
        // d^2 = 0 holds since d(S) = 0; spot-check d^2 and Leibniz on random pairs
        std::mt19937 rng(seed);
        bool leib = true, dsq = true, comm = true;
        std::string wl, wd, wc;
        int maxdeg = 1;
        for (auto& o : g.odd) maxdeg = std::max(maxdeg, o.internal);
        for (unsigned t = 0; t < random_pairs && (leib || comm); ++t) {
            Bidegree a{(int)(rng() % (2 * maxdeg + 1)), -(int)(rng() % (g.odd.size() + 1))};
            Bidegree b{(int)(rng() % (2 * maxdeg + 1)), -(int)(rng() % (g.odd.size() + 1))};
            const auto& sa = gen_elems(a);
            const auto& sb = gen_elems(b);
            if (sa.empty() || sb.empty()) continue;
            int ia = (int)(rng() % sa.size()), ib = (int)(rng() % sb.size());
            // d(xy) = dx y + (-1)^{|x|} x dy
            auto xy = mul_basis(a, ia, b, ib);
            std::map<int, Rat> lhs;
            for (auto& [k, c] : xy)
                for (auto& [h, dc] : diff_basis(a + b, k)) {
                    auto it = lhs.find(h);
                    Rat add2 = field_.mul(c, dc);
                    if (it == lhs.end())
                        lhs[h] = add2;
                    else
                        it->second = field_.add(it->second, add2);
                }
            std::map<int, Rat> rhs;
            for (auto& [k, dc] : diff_basis(a, ia))
                for (auto& [h, c] : mul_elt_basis({a.i, a.j + 1}, {{k, dc}}, b, ib)) {
                    auto it = rhs.find(h);
                    if (it == rhs.end())
                        rhs[h] = c;
                    else
                        it->second = field_.add(it->second, c);
                }
            int sgn = a.j % 2;
            for (auto& [k, dc] : diff_basis(b, ib)) {
                auto prod = mul_basis(a, ia, {b.i, b.j + 1}, k);
                for (auto& [h, c] : prod) {
                    Rat cc = field_.mul(dc, c);
                    if (sgn) cc = field_.neg(cc);
                    auto it = rhs.find(h);
                    if (it == rhs.end())
                        rhs[h] = cc;
                    else
                        it->second = field_.add(it->second, cc);
                }
            }
            for (auto& [k, v] : lhs) {
                Rat diff = field_.sub(v, rhs.count(k) ? rhs[k] : Rat());
                if (!diff.is_zero()) {
                    leib = false;
                    wl = slice(a).labels[ia] + " , " + slice(b).labels[ib];
                }
            }
            for (auto& [k, v] : rhs)
                if (!lhs.count(k) && !v.is_zero()) {
                    leib = false;
                    wl = slice(a).labels[ia] + " , " + slice(b).labels[ib];
                }
            // graded commutativity
            if (commutative_) {
                auto yx = mul_basis(b, ib, a, ia);
                int s2 = (a.j * b.j) % 2;
                std::map<int, Rat> diffm;
                for (auto& [k, v] : xy) diffm[k] = v;
                for (auto& [k, v] : yx) {
                    Rat vv = s2 ? v : field_.neg(v);
                    auto it = diffm.find(k);
                    if (it == diffm.end())
                        diffm[k] = field_.neg(vv);
                    else
                        it->second = field_.add(it->second, vv);
                }
                // xy - (-1)^{|a||b|} yx = 0
                for (auto& [k, v] : diffm)
                    if (!v.is_zero()) {
                        comm = false;
                        wc = slice(a).labels[ia] + " , " + slice(b).labels[ib];
                    }
            }
        }
        add("d_squared", dsq, wd);
        add("leibniz", leib, wl);
        if (commutative_) add("graded_commutative", comm, wc);
    } else {
        const TableForm& t = table_form();
        int n = (int)t.labels.size();
        bool conn = t.bdeg[0] == Bidegree{0, 0};
        std::string w;
        for (int g = 0; g < n; ++g) {
            if (t.bdeg[g].i < 0 || t.bdeg[g].j > 0) {
                conn = false;
                w = t.labels[g];
            }
            if (g > 0 && t.bdeg[g] == Bidegree{0, 0}) {
                conn = false;
                w = t.labels[g];
            }
        }
        add("connected", conn, w);
        auto combo_bd_ok = [&](const SparseVec& combo, Bidegree expect) {
            for (auto& [g, c] : combo)
                if (!(t.bdeg[g] == expect)) return false;
            return true;
        };
        bool homog = true;
        for (int a = 0; a < n && homog; ++a) {
            if (!combo_bd_ok(t.diff[a], {t.bdeg[a].i, t.bdeg[a].j + 1})) {
                homog = false;
                w = t.labels[a];
            }
            for (int b = 0; b < n && homog; ++b)
                if (!combo_bd_ok(t.mult[a][b], t.bdeg[a] + t.bdeg[b])) {
                    homog = false;
                    w = t.labels[a] + " , " + t.labels[b];
                }
        }
        add("homogeneous", homog, w);
        bool unit = true;
        for (int a = 0; a < n; ++a) {
            SparseVec ea{{a, Rat(1)}};
            if (!(t.mult[0][a] == ea) || !(t.mult[a][0] == ea)) {
                unit = false;
                w = t.labels[a];
            }
        }
        add("unit", unit, w);
        auto combo_add = [&](std::map<int, Rat>& acc, const SparseVec& v, const Rat& scale) {
            for (auto& [g, c] : v) {
                Rat add2 = field_.mul(scale, c);
                auto it = acc.find(g);
                if (it == acc.end())
                    acc[g] = add2;
                else
                    it->second = field_.add(it->second, add2);
            }
        };
        bool dsq = true;
        for (int a = 0; a < n; ++a) {
            std::map<int, Rat> acc;
            for (auto& [g, c] : t.diff[a]) combo_add(acc, t.diff[g], c);
            for (auto& [g, v] : acc)
                if (!v.is_zero()) {
                    dsq = false;
                    w = t.labels[a];
                }
        }
        add("d_squared", dsq, w);
        bool leib = true;
        for (int a = 0; a < n && leib; ++a)
            for (int b = 0; b < n && leib; ++b) {
                std::map<int, Rat> lhs, rhs;
                for (auto& [g, c] : t.mult[a][b]) combo_add(lhs, t.diff[g], c);
                for (auto& [g, c] : t.diff[a]) combo_add(rhs, t.mult[g][b], c);
                int sgn = t.bdeg[a].j % 2;
                for (auto& [g, c] : t.diff[b]) combo_add(rhs, t.mult[a][g], sgn ? field_.neg(c) : c);
                for (auto& [g, v] : rhs) {
                    auto it = lhs.find(g);
                    Rat dv = it == lhs.end() ? field_.neg(v) : field_.sub(it->second, v);
                    if (it != lhs.end()) it->second = dv;
                    if (it == lhs.end() && !v.is_zero()) lhs[g] = dv;
                }
                for (auto& [g, v] : lhs)
                    if (!v.is_zero()) {
                        leib = false;
                        w = t.labels[a] + " , " + t.labels[b];
                    }
            }
        add("leibniz", leib, w);
        if (commutative_) {
            bool comm = true;
            for (int a = 0; a < n && comm; ++a)
                for (int b = 0; b < n && comm; ++b) {
                    std::map<int, Rat> acc;
                    combo_add(acc, t.mult[a][b], Rat(1));
                    int sgn = (t.bdeg[a].j * t.bdeg[b].j) % 2;
                    combo_add(acc, t.mult[b][a], sgn ? Rat(1) : Rat(-1));
                    for (auto& [g, v] : acc)
                        if (!v.is_zero()) {
                            comm = false;
                            w = t.labels[a] + " , " + t.labels[b];
                        }
                }
            add("graded_commutative", comm, w);
        }
        // associativity, capped for large tables
        if ((long long)n * n * n <= 2000000) {
            bool assoc = true;
            for (int a = 0; a < n && assoc; ++a)
                for (int b = 0; b < n && assoc; ++b)
                    for (int c = 0; c < n && assoc; ++c) {
                        std::map<int, Rat> lhs, rhs;
                        for (auto& [g, v] : t.mult[a][b]) combo_add(lhs, t.mult[g][c], v);
                        for (auto& [g, v] : t.mult[b][c]) combo_add(rhs, t.mult[a][g], v);
                        for (auto& [g, v] : rhs) {
                            auto it = lhs.find(g);
                            if (it == lhs.end())
                                lhs[g] = field_.neg(v);
                            else
                                it->second = field_.sub(it->second, v);
                        }
                        for (auto& [g, v] : lhs)
                            if (!v.is_zero()) {
                                assoc = false;
                                w = t.labels[a] + "," + t.labels[b] + "," + t.labels[c];
                            }
                    }
            add("associative", assoc, w);
        }
    }
    return rep;
}

void DgAlgebra::validate_or_throw() const {
    auto rep = validate(64, 1);
    if (!rep.ok()) {
        for (auto& c : rep.checks)
            if (!c.pass)
                throw InvalidInputError("presentation validation failed: " + c.name +
                                        (c.witness.empty() ? "" : " (witness " + c.witness + ")"));
    }
}

}  // namespace korlov
