#pragma once
/* Connected bigraded dg-algebras in two shapes:
 *  - generator form: a graded polynomial ring S = k[x_0..x_n] together with
 *    odd exterior generators e_1..e_c at cohomological degree -1 whose
 *    differentials are polynomials in S (covers polynomial rings, Koszul
 *    complexes, exterior algebras, and iterated Koszul constructions);
 *  - table form: a finite basis with explicit multiplication and differential
 *    tables (covers truncated rings, trivial extensions, tensor products).
 *
 * Instances are validated at construction and immutable afterwards; basis
 * slices are cached per bidegree and safe to query concurrently.
 */
#include <memory>
#include <mutex>
#include <optional>
#include <variant>
#include <vector>

#include "korlov/bidegree.hpp"
#include "korlov/exactlin.hpp"
#include "korlov/poly.hpp"

namespace korlov {

struct BasisSlice {
    Bidegree bidegree;
    std::vector<std::string> labels;
    int dim() const { return (int)labels.size(); }
};

struct ValidationCheck {
    std::string name;
    bool pass;
    std::string witness;  // empty when passing
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;
    bool ok() const {
        for (auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    nlohmann::json to_json() const;
};

/* a generating element of the algebra, used for module action matrices */
struct AlgebraGenerator {
    std::string name;
    Bidegree bidegree;
    // position in the internal generator list (even index or odd index)
    bool odd;
    int index;
};

class DgAlgebra;
using AlgebraPtr = std::shared_ptr<const DgAlgebra>;

struct GenForm {
    VarTable vars;  // even generators, bidegree (deg, 0)
    struct OddGen {
        std::string name;
        int internal;  // bidegree (internal, -1)
        Poly diff;     // element of S, homogeneous of degree `internal`
    };
    std::vector<OddGen> odd;
};

struct TableForm {
    std::vector<std::string> labels;  // labels[0] is the unit
    std::vector<Bidegree> bdeg;
    // mult[a][b] = sparse combination over global basis indices
    std::vector<std::vector<SparseVec>> mult;
    std::vector<SparseVec> diff;
};

class DgAlgebra : public std::enable_shared_from_this<DgAlgebra> {
public:
    // constructors validate; invalid presentations throw InvalidInputError
    static AlgebraPtr koszul_complex(Field f, VarTable vars, const std::vector<std::string>& forms);
    static AlgebraPtr koszul_complex_poly(Field f, VarTable vars, std::vector<Poly> forms);
    static AlgebraPtr exterior_algebra(Field f, const std::vector<int>& degrees);
    static AlgebraPtr from_table(Field f, TableForm t, bool commutative);
    static AlgebraPtr trivial_extension(const AlgebraPtr& base, int b, int d);
    static AlgebraPtr tensor_product(const AlgebraPtr& left, const AlgebraPtr& right);
    static AlgebraPtr koszul_over_polys(const AlgebraPtr& base, const std::vector<Poly>& lifts);
    static AlgebraPtr koszul_over_table_elts(const AlgebraPtr& base,
                                             const std::vector<std::pair<int, SparseVec>>& lifts);
    static AlgebraPtr connected_cover(const AlgebraPtr& a, const BidegWindow& check_window);
    // k[x]/(x^n) with x in internal degree d, as a table
    static AlgebraPtr truncated_polynomial(Field f, int d, int n);

    Field field() const { return field_; }
    bool commutative() const { return commutative_; }
    bool is_generator_form() const { return std::holds_alternative<GenForm>(data_); }
    const GenForm& gen_form() const { return std::get<GenForm>(data_); }
    const TableForm& table_form() const { return std::get<TableForm>(data_); }

    const BasisSlice& slice(Bidegree b) const;
    int slice_dim(Bidegree b) const { return slice(b).dim(); }

    // product of two slice basis elements, as a combination in slice(a+b)
    SparseVec mul_basis(Bidegree a, int ia, Bidegree b, int ib) const;
    // differential of a slice basis element, in slice(i, j+1)
    SparseVec diff_basis(Bidegree a, int ia) const;
    // multiply a slice element (sparse over slice(a)) by a basis element of slice(b) on the right
    SparseVec mul_elt_basis(Bidegree a, const SparseVec& x, Bidegree b, int ib) const;

    std::vector<AlgebraGenerator> generators() const;          // algebra generators
    std::vector<AlgebraGenerator> degree_zero_generators() const;  // generators of A^0
    // position of a generator inside its own basis slice
    std::pair<Bidegree, int> generator_position(const AlgebraGenerator& g) const;
    // slice index of an explicit monomial (generator form only); -1 if absent
    int monomial_slice_index(Bidegree b, const Mono& m, const std::vector<uint8_t>& odd_subset) const;
    // factorization of a slice basis element into a canonical product of generators
    std::vector<AlgebraGenerator> factor_basis_element(Bidegree b, int idx) const;
    bool finite_dimensional() const;
    int max_internal_nonzero() const;  // only for finite-dimensional algebras
    // generator form with all variable degrees 1 (A^0 a standard polynomial ring)
    bool a0_standard_polynomial() const;
    AlgebraPtr degree_zero_subalgebra() const;  // A^0 as an algebra (generator form only)
    // true when every odd generator's differential lies in (x)^2 (no scalar or
    // linear division is forced when resolving k); exterior algebras qualify
    bool forms_in_square_of_max_ideal() const;
    // bar-factor shapes (internal cost, cohomological drop 1-j) of the nonzero
    // slice shapes of the augmentation ideal; used to bound how deep in
    // cohomological degree a generator of a minimal resolution can sit for a
    // given internal degree
    std::vector<std::pair<int, int>> bar_factor_types() const;

    ValidationReport validate(unsigned random_pairs = 100, unsigned seed = 1) const;
    std::string describe() const;

private:
    DgAlgebra(Field f, bool comm, std::variant<GenForm, TableForm> d)
        : field_(f), commutative_(comm), data_(std::move(d)) {}
    void validate_or_throw() const;

    Field field_;
    bool commutative_;
    std::variant<GenForm, TableForm> data_;

    struct GenSliceCache;
    mutable std::mutex cache_mutex_;
    mutable std::map<Bidegree, std::shared_ptr<const BasisSlice>> slice_cache_;
    // generator form: per-slice element lists and index maps
    using GenElem = std::pair<Mono, std::vector<uint8_t>>;  // (monomial, sorted odd subset)
    mutable std::map<Bidegree, std::shared_ptr<const std::vector<GenElem>>> gen_elems_;
    mutable std::map<Bidegree, std::shared_ptr<const std::map<GenElem, int>>> gen_index_;
    // table form: per-slice global index lists
    mutable std::map<Bidegree, std::shared_ptr<const std::vector<int>>> table_slice_;
    mutable std::map<int, std::pair<Bidegree, int>> table_pos_;  // global -> (bidegree, local)

    const std::vector<GenElem>& gen_elems(Bidegree b) const;
    int gen_elem_index(Bidegree b, const GenElem& e) const;  // -1 if absent
    const std::vector<int>& table_slice(Bidegree b) const;
    std::pair<Bidegree, int> table_position(int global) const;
    void build_table_positions() const;
    SparseVec localize_table_combo(const SparseVec& global_combo, Bidegree target) const;
};

// shuffle sign for merging two disjoint sorted odd-subsets (-1)^{inversions}
int subset_merge_sign(const std::vector<uint8_t>& a, const std::vector<uint8_t>& b);

}  // namespace korlov
