#pragma once
/* Semi-free resolutions. The general algorithm adds, one internal degree at a
 * time, free generators covering the cohomology of the cone of the partial
 * augmentation; cocycle representatives come from reduced-echelon bases and
 * lifts are canonical, so generator lists are reproducible. For the residue
 * field over a generator-form algebra whose Koszul forms lie in the square of
 * the maximal ideal there is a closed-form model (exterior variables killing
 * the even generators, divided-power variables killing the odd cycles) that
 * avoids the layer-by-layer linear algebra entirely.
 */
#include "korlov/module.hpp"

namespace korlov {

struct AlgElt {
    Bidegree bd;
    SparseVec coords;  // over the algebra slice basis at bd
};

struct FreeGen {
    int id;
    Bidegree bd;
    int layer;  // construction cell ordinal; columns only reference earlier cells
    std::string label;
};

struct FreeDgModule {
    AlgebraPtr algebra;
    std::vector<FreeGen> gens;
    std::vector<std::vector<std::pair<int, AlgElt>>> dcols;  // d(g_s) = sum_t g_t * elt

    nlohmann::json to_json() const;
    std::vector<int> gens_at_internal(int i) const;
    int max_gen_internal() const;
    int min_gen_coh() const;
    // multiset of generator internal degrees at a given layer depth is derived
    // directly from `gens`
};

struct ResolutionCertificate {
    int bound_D = 0;        // generators complete through this internal degree
    int coh_min = 0;        // generators complete down to this cohomological degree
    bool minimal = false;   // no scalar entries in differential columns
    std::string model;      // "layered" or "closed-form"
    int target_i_min = 0;   // support bounds of the resolved module
    int target_j_min = 0;
    BidegWindow cone_checked = BidegWindow::empty();  // region where cone acyclicity was verified
    nlohmann::json to_json() const;
};

struct Resolution {
    FreeDgModule free;
    std::vector<SparseVec> eps;  // augmentation value of each generator, in M's slice at gen.bd
    ModuleSpec target_spec;
    ResolutionCertificate cert;
};

/* slice basis of a free dg-module: pairs (generator, algebra basis index) */
struct FreeSliceBasis {
    std::vector<std::pair<int, int>> elems;  // (gen id, index in algebra slice at bd - gen.bd)
    int dim() const { return (int)elems.size(); }
};
FreeSliceBasis free_slice(const FreeDgModule& g, Bidegree b);
ExactMatrix free_diff_matrix(const FreeDgModule& g, Bidegree b);  // slice(b) -> slice(i, j+1)

/* the inductive construction; requires M certified on [*, D] x its coh window */
Resolution semifree_resolution(const WindowedModule& m, int D);

/* closed-form model of k when available; falls back to the layered algorithm */
Resolution resolve_ground_field(const AlgebraPtr& a, int D, int coh_min);

/* resolution of a module over the degree-zero part (trivial cohomological grading) */
Resolution base_resolution(const WindowedModule& m, int D);

WindowedModule realize_free(const FreeDgModule& g, const BidegWindow& w);
// the quasi-isomorphism G -> M as a windowed morphism (gw must realize r.free)
ModuleMorphism augmentation_morphism(const Resolution& r, const WindowedModule& gw,
                                     const WindowedModule& m);

/* G / (G^{<= J} + d G^{<= J}): finitely generated model, same cohomology;
 * requires H^j = 0 for j <= J, verified on the realization window */
WindowedModule compact_model(const Resolution& r, const WindowedModule& m, int J, const BidegWindow& w);

}  // namespace korlov
