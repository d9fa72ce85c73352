#pragma once
/* Exact sparse linear algebra over Q and F_p: rank, kernels, solving,
 * and cohomology of bounded column complexes. All outputs are canonical:
 * kernels come from the reduced row echelon form (leftmost pivot profile),
 * solve() sets free variables to zero.
 */
#include <optional>
#include <utility>
#include <vector>

#include "korlov/field.hpp"

namespace korlov {

using SparseVec = std::vector<std::pair<int, Rat>>;  // sorted by index, no zeros

struct FieldScalar {
    Field field;
    Rat value;
};

class ExactMatrix {
public:
    ExactMatrix(Field f, int nrows, int ncols) : field_(f), nrows_(nrows), ncols_(ncols), cols_(ncols) {}

    Field field() const { return field_; }
    int nrows() const { return nrows_; }
    int ncols() const { return ncols_; }

    // accumulate (reduces through the field; drops zeros at query time)
    void add_entry(int r, int c, const Rat& v);
    void set_scalar(int r, int c, const FieldScalar& s);
    void set_column(int c, SparseVec col) { cols_[c] = std::move(col); }
    const SparseVec& column(int c) const { return cols_[c]; }
    Rat at(int r, int c) const;
    long long nnz() const;

    static ExactMatrix identity(Field f, int n);

private:
    Field field_;
    int nrows_, ncols_;
    std::vector<SparseVec> cols_;
};

long long rank(const ExactMatrix& m);

// basis of ker(m), reduced-echelon normal form, ordered by free column index
std::vector<SparseVec> kernel_basis(const ExactMatrix& m);

// some x with m x = b (free variables zero), or nullopt if b is not in the image
std::optional<SparseVec> solve(const ExactMatrix& m, const SparseVec& b);

// dim ker(d_out) - rank(d_in); checks d_out * d_in = 0
struct NotAComplexError : std::runtime_error {
    NotAComplexError() : std::runtime_error("composition of differentials is nonzero") {}
};
long long cohomology_dim(const ExactMatrix& d_in, const ExactMatrix& d_out);

// cohomology basis at the middle slot: vectors in ker(d_out) spanning a
// complement of im(d_in), in deterministic order
struct CohomologySlot {
    long long dim;
    std::vector<SparseVec> reps;
};
CohomologySlot cohomology_representatives(const ExactMatrix& d_in, const ExactMatrix& d_out);

/* Cohomology dimensions of a bounded complex C^0 -> C^1 -> ... -> C^k given by
 * maps[i]: C^i -> C^{i+1}. Over Q this first probes ranks modulo a fixed large
 * prime; mod-p ranks bound ranks over Q from below, so when the probe
 * cohomology is concentrated in slots of a single parity the Euler
 * characteristic pins the rational answer exactly. Otherwise it falls back to
 * rational elimination.
 */
std::vector<long long> complex_h_dims(const std::vector<int>& dims, const std::vector<ExactMatrix>& maps);

// plumbing shared by the module layer
ExactMatrix multiply(const ExactMatrix& a, const ExactMatrix& b);
SparseVec mat_apply(const ExactMatrix& m, const SparseVec& v);
bool is_zero_matrix(const ExactMatrix& m);
SparseVec axpy(const Field& f, const Rat& lambda, const SparseVec& x, const SparseVec& y);  // lambda*x + y

}  // namespace korlov
