#include "korlov/exactlin.hpp"

#include <algorithm>
#include <cassert>
#include <map>

namespace korlov {

void ExactMatrix::add_entry(int r, int c, const Rat& v) {
    assert(r >= 0 && r < nrows_ && c >= 0 && c < ncols_);
    Rat rv = field_.reduce(v);
    if (rv.is_zero()) return;
    auto& col = cols_[c];
    auto it = std::lower_bound(col.begin(), col.end(), r,
                               [](const std::pair<int, Rat>& e, int row) { return e.first < row; });
    if (it != col.end() && it->first == r) {
        it->second = field_.add(it->second, rv);
        if (it->second.is_zero()) col.erase(it);
    } else {
        col.insert(it, {r, rv});
    }
}

void ExactMatrix::set_scalar(int r, int c, const FieldScalar& s) {
    if (s.field != field_) throw FieldMismatchError();
    add_entry(r, c, s.value);
}

Rat ExactMatrix::at(int r, int c) const {
    const auto& col = cols_[c];
    auto it = std::lower_bound(col.begin(), col.end(), r,
                               [](const std::pair<int, Rat>& e, int row) { return e.first < row; });
    if (it != col.end() && it->first == r) return it->second;
    return Rat();
}

long long ExactMatrix::nnz() const {
    long long n = 0;
    for (auto& c : cols_) n += (long long)c.size();
    return n;
}

ExactMatrix ExactMatrix::identity(Field f, int n) {
    ExactMatrix m(f, n, n);
    for (int i = 0; i < n; ++i) m.add_entry(i, i, Rat(1));
    return m;
}

/* ---------------- field op kernels ---------------- */

struct FpOps {
    Field f;
    using V = uint32_t;
    bool is0(V a) const { return a == 0; }
    V add(V a, V b) const { return f.fp_add(a, b); }
    V sub(V a, V b) const { return f.fp_sub(a, b); }
    V mul(V a, V b) const { return f.fp_mul(a, b); }
    V neg(V a) const { return f.fp_neg(a); }
    V inv(V a) const { return f.fp_inv(a); }
    V from_rat(const Rat& r) const { return f.to_fp(r); }
    Rat to_rat(V a) const { return Rat((long long)a); }
};

struct QOps {
    using V = Rat;
    bool is0(const V& a) const { return a.is_zero(); }
    V add(const V& a, const V& b) const { return a + b; }
    V sub(const V& a, const V& b) const { return a - b; }
    V mul(const V& a, const V& b) const { return a * b; }
    V neg(const V& a) const { return -a; }
    V inv(const V& a) const { return a.inv(); }
    V from_rat(const Rat& r) const { return r; }
    Rat to_rat(const V& a) const { return a; }
};

template <class Ops>
using Col = std::vector<std::pair<int, typename Ops::V>>;

template <class Ops>
static std::vector<Col<Ops>> to_cols(const ExactMatrix& m, const Ops& ops) {
    std::vector<Col<Ops>> cols(m.ncols());
    for (int c = 0; c < m.ncols(); ++c) {
        cols[c].reserve(m.column(c).size());
        for (auto& [r, v] : m.column(c)) {
            auto w = ops.from_rat(v);
            if (!ops.is0(w)) cols[c].push_back({r, w});
        }
    }
    return cols;
}

/* ---------------- right-looking sparse rank ----------------
 * Pivot choice: among active columns of minimal nnz, the entry whose row
 * currently meets the fewest columns. Rank is independent of the order.
 */
template <class Ops>
static long long sparse_rank_impl(std::vector<Col<Ops>> cols, int nrows, const Ops& ops) {
    using V = typename Ops::V;
    const int ncols = (int)cols.size();
    std::vector<char> col_alive(ncols, 1), row_alive(nrows, 1);
    std::vector<int> row_deg(nrows, 0);
    std::vector<std::vector<int>> rows_of(nrows);
    for (int c = 0; c < ncols; ++c)
        for (auto& [r, v] : cols[c]) {
            ++row_deg[r];
            rows_of[r].push_back(c);
        }
    // bucket queue of columns by nnz (lazy)
    size_t max_b = 1;
    for (auto& c : cols) max_b = std::max(max_b, c.size() + 1);
    std::vector<std::vector<int>> bucket(max_b + 1);
    for (int c = 0; c < ncols; ++c)
        if (!cols[c].empty()) bucket[cols[c].size()].push_back(c);

    auto col_has = [&](int c, int r) {
        auto& col = cols[c];
        auto it = std::lower_bound(col.begin(), col.end(), r,
                                   [](const std::pair<int, V>& e, int row) { return e.first < row; });
        return it != col.end() && it->first == r ? (int)(it - col.begin()) : -1;
    };

    long long rank = 0;
    std::vector<std::pair<int, V>> updated;
    for (size_t b = 1; b < bucket.size(); ++b) {
        for (size_t bi = 0; bi < bucket[b].size(); ++bi) {
            int pc = bucket[b][bi];
            if (!col_alive[pc]) continue;
            if (cols[pc].empty()) {
                col_alive[pc] = 0;
                continue;
            }
            if (cols[pc].size() > b) {  // grew since enqueued: revisit later
                if (cols[pc].size() >= bucket.size()) bucket.resize(cols[pc].size() + 1);
                bucket[cols[pc].size()].push_back(pc);
                continue;
            }
            // pivot row: min degree
            int prow = -1, best = 1 << 30;
            for (auto& [r, v] : cols[pc])
                if (row_alive[r] && row_deg[r] < best) {
                    best = row_deg[r];
                    prow = r;
                }
            if (prow < 0) continue;  // shouldn't happen: entries on dead rows are purged below
            ++rank;
            col_alive[pc] = 0;
            row_alive[prow] = 0;
            V pinv = ops.inv(cols[pc].at(col_has(pc, prow)).second);
            for (auto& [r, v] : cols[pc])
                if (row_alive[r] || r == prow) --row_deg[r];
            // eliminate prow from all other alive columns
            auto hit = std::move(rows_of[prow]);
            rows_of[prow].clear();
            for (int oc : hit) {
                if (!col_alive[oc]) continue;
                int pos = col_has(oc, prow);
                if (pos < 0) continue;
                V lambda = ops.neg(ops.mul(cols[oc][pos].second, pinv));
                // oc += lambda * pc  (merging sorted, dropping dead rows)
                updated.clear();
                auto &a = cols[oc], &p = cols[pc];
                size_t i = 0, j = 0;
                while (i < a.size() || j < p.size()) {
                    if (j >= p.size() || (i < a.size() && a[i].first < p[j].first)) {
                        if (row_alive[a[i].first]) updated.push_back(a[i]);
                        ++i;
                    } else if (i >= a.size() || p[j].first < a[i].first) {
                        if (row_alive[p[j].first]) {
                            V nv = ops.mul(lambda, p[j].second);
                            if (!ops.is0(nv)) {
                                updated.push_back({p[j].first, nv});
                                ++row_deg[p[j].first];
                                rows_of[p[j].first].push_back(oc);
                            }
                        }
                        ++j;
                    } else {
                        if (row_alive[a[i].first]) {
                            V nv = ops.add(a[i].second, ops.mul(lambda, p[j].second));
                            if (!ops.is0(nv))
                                updated.push_back({a[i].first, nv});
                            else
                                --row_deg[a[i].first];
                        }
                        ++i;
                        ++j;
                    }
                }
                cols[oc].swap(updated);
                if (cols[oc].empty())
                    col_alive[oc] = 0;
                else if (cols[oc].size() != b) {
                    size_t nb = std::max(cols[oc].size(), b);  // shrunk columns reprocess in this bucket
                    if (nb >= bucket.size()) bucket.resize(nb + 1);
                    bucket[nb].push_back(oc);
                }
            }
            cols[pc].clear();
        }
        bucket[b].clear();
        bucket[b].shrink_to_fit();
    }
    return rank;
}

/* ---------------- incremental echelon with carried coordinates ---------------- */

template <class Ops>
class Echelon {
public:
    Echelon(int nrows, const Ops& ops, bool with_carry)
        : nrows_(nrows), ops_(ops), with_carry_(with_carry), work_(nrows), inwork_(nrows, 0) {}

    long long rank() const { return (long long)pivots_.size(); }

    // Insert a column with an optional carried coordinate vector. Returns the
    // new pivot index, or -1 if the column reduced to zero; in that case
    // *out_carry (if requested) receives the reduced carry.
    int insert(const Col<Ops>& col, const Col<Ops>& carry, Col<Ops>* out_carry) {
        using V = typename Ops::V;
        touched_.clear();
        for (auto& [r, v] : col) {
            work_[r] = v;
            inwork_[r] = 1;
            touched_.push_back(r);
        }
        std::vector<std::pair<int, V>> lam;
        for (size_t pi = 0; pi < pivots_.size(); ++pi) {
            int r = pivots_[pi].row;
            if (!inwork_[r]) continue;
            V l = work_[r];
            if (ops_.is0(l)) continue;
            lam.push_back({(int)pi, l});
            for (auto& [rr, vv] : pivots_[pi].col) {
                V d = ops_.mul(l, vv);
                if (!inwork_[rr]) {
                    work_[rr] = ops_.neg(d);
                    inwork_[rr] = 1;
                    touched_.push_back(rr);
                } else {
                    work_[rr] = ops_.sub(work_[rr], d);
                }
            }
        }
        Col<Ops> rem;
        for (int r : touched_)
            if (inwork_[r] && !ops_.is0(work_[r])) rem.push_back({r, work_[r]});
        for (int r : touched_) inwork_[r] = 0;
        std::sort(rem.begin(), rem.end(), [](auto& a, auto& b) { return a.first < b.first; });

        Col<Ops> cred;
        if (with_carry_) {
            // cred = carry - sum lam_i * pivot_carry_i   (sparse accumulation)
            cwork_.clear();
            for (auto& [i, v] : carry) cwork_[i] = v;
            for (auto& [pi, l] : lam)
                for (auto& [i, v] : pivots_[pi].carry) {
                    auto it = cwork_.find(i);
                    V d = ops_.mul(l, v);
                    if (it == cwork_.end())
                        cwork_[i] = ops_.neg(d);
                    else
                        it->second = ops_.sub(it->second, d);
                }
            for (auto& [i, v] : cwork_)
                if (!ops_.is0(v)) cred.push_back({i, v});
            std::sort(cred.begin(), cred.end(), [](auto& a, auto& b) { return a.first < b.first; });
        }

        if (rem.empty()) {
            if (out_carry) *out_carry = std::move(cred);
            return -1;
        }
        // new pivot: smallest row index, normalized monic
        int prow = rem.front().first;
        typename Ops::V pv = rem.front().second;
        typename Ops::V pinv = ops_.inv(pv);
        for (auto& [r, v] : rem) v = ops_.mul(v, pinv);
        for (auto& [i, v] : cred) v = ops_.mul(v, pinv);
        pivots_.push_back({prow, std::move(rem), std::move(cred)});
        return (int)pivots_.size() - 1;
    }

private:
    struct Piv {
        int row;
        Col<Ops> col;    // monic at row; zero at all earlier pivot rows
        Col<Ops> carry;  // expression over original column indices
    };
    int nrows_;
    const Ops& ops_;
    bool with_carry_;
    std::vector<Piv> pivots_;
    std::vector<typename Ops::V> work_;
    std::vector<char> inwork_;
    std::vector<int> touched_;
    std::map<int, typename Ops::V> cwork_;
};

/* ---------------- public operations ---------------- */

template <class Ops>
static long long rank_t(const ExactMatrix& m, const Ops& ops) {
    return sparse_rank_impl<Ops>(to_cols(m, ops), m.nrows(), ops);
}

long long rank(const ExactMatrix& m) {
    if (m.field().kind() == Field::Kind::Fp) return rank_t(m, FpOps{m.field()});
    return rank_t(m, QOps{});
}

template <class Ops>
static std::vector<SparseVec> kernel_t(const ExactMatrix& m, const Ops& ops) {
    auto cols = to_cols(m, ops);
    Echelon<Ops> ech(m.nrows(), ops, true);
    std::vector<SparseVec> out;
    for (int j = 0; j < m.ncols(); ++j) {
        Col<Ops> carry{{j, ops.from_rat(Rat(1))}};
        Col<Ops> red;
        if (ech.insert(cols[j], carry, &red) < 0) {
            SparseVec v;
            v.reserve(red.size());
            for (auto& [i, w] : red) v.push_back({i, ops.to_rat(w)});
            out.push_back(std::move(v));
        }
    }
    return out;
}

std::vector<SparseVec> kernel_basis(const ExactMatrix& m) {
    if (m.field().kind() == Field::Kind::Fp) return kernel_t(m, FpOps{m.field()});
    return kernel_t(m, QOps{});
}

template <class Ops>
static std::optional<SparseVec> solve_t(const ExactMatrix& m, const SparseVec& b, const Ops& ops) {
    auto cols = to_cols(m, ops);
    Echelon<Ops> ech(m.nrows(), ops, true);
    for (int j = 0; j < m.ncols(); ++j) {
        Col<Ops> carry{{j, ops.from_rat(Rat(1))}};
        ech.insert(cols[j], carry, nullptr);
    }
    Col<Ops> bb;
    for (auto& [r, v] : b) {
        auto w = ops.from_rat(m.field().reduce(v));
        if (!ops.is0(w)) bb.push_back({r, w});
    }
    Col<Ops> red;
    if (ech.insert(bb, {}, &red) >= 0) return std::nullopt;  // b created a pivot: not in image
    SparseVec x;
    for (auto& [i, w] : red) x.push_back({i, ops.to_rat(ops.neg(w))});
    return x;
}

std::optional<SparseVec> solve(const ExactMatrix& m, const SparseVec& b) {
    if (m.field().kind() == Field::Kind::Fp) return solve_t(m, b, FpOps{m.field()});
    return solve_t(m, b, QOps{});
}

ExactMatrix multiply(const ExactMatrix& a, const ExactMatrix& b) {
    if (a.field() != b.field()) throw FieldMismatchError();
    assert(a.ncols() == b.nrows());
    ExactMatrix out(a.field(), a.nrows(), b.ncols());
    const Field& f = a.field();
    for (int c = 0; c < b.ncols(); ++c) {
        std::map<int, Rat> acc;
        for (auto& [k, bv] : b.column(c))
            for (auto& [r, av] : a.column(k)) {
                auto it = acc.find(r);
                Rat d = f.mul(av, bv);
                if (it == acc.end())
                    acc[r] = d;
                else
                    it->second = f.add(it->second, d);
            }
        SparseVec col;
        for (auto& [r, v] : acc)
            if (!v.is_zero()) col.push_back({r, v});
        out.set_column(c, std::move(col));
    }
    return out;
}

SparseVec mat_apply(const ExactMatrix& m, const SparseVec& v) {
    const Field& f = m.field();
    std::map<int, Rat> acc;
    for (auto& [k, x] : v)
        for (auto& [r, av] : m.column(k)) {
            Rat d = f.mul(av, x);
            auto it = acc.find(r);
            if (it == acc.end())
                acc[r] = d;
            else
                it->second = f.add(it->second, d);
        }
    SparseVec out;
    for (auto& [r, x] : acc)
        if (!x.is_zero()) out.push_back({r, x});
    return out;
}

bool is_zero_matrix(const ExactMatrix& m) {
    for (int c = 0; c < m.ncols(); ++c)
        if (!m.column(c).empty()) return false;
    return true;
}

SparseVec axpy(const Field& f, const Rat& lambda, const SparseVec& x, const SparseVec& y) {
    SparseVec out;
    size_t i = 0, j = 0;
    while (i < x.size() || j < y.size()) {
        if (j >= y.size() || (i < x.size() && x[i].first < y[j].first)) {
            Rat v = f.mul(lambda, x[i].second);
            if (!v.is_zero()) out.push_back({x[i].first, v});
            ++i;
        } else if (i >= x.size() || y[j].first < x[i].first) {
            out.push_back(y[j]);
            ++j;
        } else {
            Rat v = f.add(f.mul(lambda, x[i].second), y[j].second);
            if (!v.is_zero()) out.push_back({x[i].first, v});
            ++i;
            ++j;
        }
    }
    return out;
}

long long cohomology_dim(const ExactMatrix& d_in, const ExactMatrix& d_out) {
    if (d_in.field() != d_out.field()) throw FieldMismatchError();
    if (d_in.ncols() > 0 && d_out.ncols() > 0 && d_in.nrows() != d_out.ncols())
        throw std::invalid_argument("cohomology_dim: incompatible shapes");
    if (d_in.ncols() > 0 && d_out.ncols() > 0 && !is_zero_matrix(multiply(d_out, d_in)))
        throw NotAComplexError();
    long long kd = (long long)d_out.ncols() - rank(d_out);
    return kd - rank(d_in);
}

template <class Ops>
static CohomologySlot reps_t(const ExactMatrix& d_in, const ExactMatrix& d_out, const Ops& ops) {
    const int dimC = d_out.ncols();
    long long r_in = rank_t(d_in, ops);
    long long r_out = rank_t(d_out, ops);
    CohomologySlot slot;
    slot.dim = (long long)dimC - r_out - r_in;
    if (slot.dim == 0) return slot;
    auto cols_out = to_cols(d_out, ops);
    Echelon<Ops> ker_ech(d_out.nrows(), ops, true);
    Echelon<Ops> mod_ech(dimC, ops, false);
    auto cols_in = to_cols(d_in, ops);
    for (auto& c : cols_in) mod_ech.insert(c, {}, nullptr);
    for (int j = 0; j < dimC && (long long)slot.reps.size() < slot.dim; ++j) {
        Col<Ops> carry{{j, ops.from_rat(Rat(1))}};
        Col<Ops> red;
        if (ker_ech.insert(cols_out[j], carry, &red) < 0) {
            if (mod_ech.insert(red, {}, nullptr) >= 0) {
                SparseVec v;
                for (auto& [i, w] : red) v.push_back({i, ops.to_rat(w)});
                slot.reps.push_back(std::move(v));
            }
        }
    }
    return slot;
}

CohomologySlot cohomology_representatives(const ExactMatrix& d_in, const ExactMatrix& d_out) {
    if (d_in.field() != d_out.field()) throw FieldMismatchError();
    if (d_in.field().kind() == Field::Kind::Fp) return reps_t(d_in, d_out, FpOps{d_in.field()});
    return reps_t(d_in, d_out, QOps{});
}

std::vector<long long> complex_h_dims(const std::vector<int>& dims, const std::vector<ExactMatrix>& maps) {
    const size_t k = dims.size();
    assert(maps.size() + 1 == k || (k == 0 && maps.empty()));
    if (k == 0) return {};
    Field f = maps.empty() ? Field::rationals() : maps[0].field();
    auto h_from_ranks = [&](const std::vector<long long>& rk) {
        std::vector<long long> h(k);
        for (size_t i = 0; i < k; ++i) {
            long long rout = i < maps.size() ? rk[i] : 0;
            long long rin = i > 0 ? rk[i - 1] : 0;
            h[i] = (long long)dims[i] - rout - rin;
        }
        return h;
    };
    if (maps.empty()) return {(long long)dims[0]};
    if (f.kind() == Field::Kind::Fp) {
        std::vector<long long> rk;
        for (auto& m : maps) rk.push_back(rank(m));
        return h_from_ranks(rk);
    }
    // Q: probe modulo a large prime; certified exact when the probe answer is
    // concentrated in one parity (mod-p ranks are lower bounds, Euler
    // characteristic is field-independent).
    bool probe_ok = true;
    std::vector<long long> rk_p;
    try {
        Field probe = Field::prime(2147483647u);
        FpOps ops{probe};
        for (auto& m : maps) {
            std::vector<Col<FpOps>> cols(m.ncols());
            for (int c = 0; c < m.ncols(); ++c)
                for (auto& [r, v] : m.column(c)) {
                    uint32_t w = probe.to_fp(v);
                    if (w) cols[c].push_back({r, w});
                }
            rk_p.push_back(sparse_rank_impl<FpOps>(std::move(cols), m.nrows(), ops));
        }
    } catch (const std::domain_error&) {
        probe_ok = false;
    }
    if (probe_ok) {
        auto h = h_from_ranks(rk_p);
        int par = -1;
        bool concentrated = true;
        for (size_t i = 0; i < k; ++i)
            if (h[i] != 0) {
                int pi = (int)(i & 1);
                if (par == -1)
                    par = pi;
                else if (par != pi)
                    concentrated = false;
            }
        if (concentrated) return h;
    }
    std::vector<long long> rk;
    for (auto& m : maps) rk.push_back(rank(m));
    return h_from_ranks(rk);
}

}  // namespace korlov
