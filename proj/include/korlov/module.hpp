#pragma once
/* Windowed right dg-modules: per-bidegree slices, differential and
 * generator-action matrices, restricted to a finite bidegree window with a
 * certified sub-region and structural support bounds. Operations follow the
 * conservative region calculus: certification never grows under an operation.
 */
#include <optional>

#include "korlov/presentation.hpp"

namespace korlov {

/* bounds outside of which slices vanish identically (structural knowledge,
 * valid beyond the window) */
struct SupportBounds {
    int i_min = 0;
    std::optional<int> i_max;  // set for internally bounded modules
    std::optional<int> j_min;
    int j_max = 0;

    bool certainly_zero(const Bidegree& b) const {
        if (b.i < i_min || b.j > j_max) return true;
        if (i_max && b.i > *i_max) return true;
        if (j_min && b.j < *j_min) return true;
        return false;
    }
};

class WindowedModule {
public:
    AlgebraPtr algebra;
    BidegWindow window;
    BidegWindow certified;
    SupportBounds support;
    std::string name;

    // slice data; bidegrees absent from `dims` are zero inside the window
    std::map<Bidegree, int> dims;
    std::map<Bidegree, std::vector<std::string>> labels;
    // back-map to algebra slices when this module is a twist/shift/truncation
    // of the free rank-one module (enables fast multiplication)
    struct AlgebraBacked {
        int twist = 0;  // slice(i,j) = A(i+twist, j+shift), within cutoffs
        int shift = 0;
        int sign_d = 1;  // differential sign from cohomological shifts
    };
    std::optional<AlgebraBacked> backed;

    std::map<Bidegree, ExactMatrix> d_mats;                       // (i,j) -> (i,j+1)
    std::map<std::pair<int, Bidegree>, ExactMatrix> action_mats;  // generator index -> matrix

    int dim_at(Bidegree b) const {
        if (support.certainly_zero(b)) return 0;
        auto it = dims.find(b);
        return it == dims.end() ? 0 : it->second;
    }
    bool known_at(Bidegree b) const { return window.contains(b) || support.certainly_zero(b); }
    ExactMatrix d_at(Bidegree b) const;                 // zero matrix when absent
    ExactMatrix action_at(int gen, Bidegree b) const;   // generator's action at b
    // right multiplication by an algebra basis element along a slice
    ExactMatrix mult_matrix(Bidegree from, Bidegree elt_bd, int elt_idx) const;

    Field field() const { return algebra->field(); }
};

struct ModuleMorphism {
    const WindowedModule* src;
    const WindowedModule* dst;
    std::map<Bidegree, ExactMatrix> mats;  // degree (0,0)
    ExactMatrix mat_at(Bidegree b) const;
};

/* module constructors and operations */
WindowedModule realize_algebra(const AlgebraPtr& a, const BidegWindow& w);
WindowedModule realize_ground_field(const AlgebraPtr& a, const BidegWindow& w);
// A^0/(forms) as a module over a purely even generator-form algebra
WindowedModule realize_ideal_quotient(const AlgebraPtr& a, const std::vector<Poly>& forms,
                                      const BidegWindow& w);

WindowedModule twist(const WindowedModule& m, int t);
WindowedModule shift(const WindowedModule& m, int n);
WindowedModule truncate_internal(const WindowedModule& m, int q);   // M_{>=q}
WindowedModule quotient_below(const WindowedModule& m, int q);      // M / M_{>=q}
enum class TruncSide { AtAndAbove, AtAndBelow };
WindowedModule smart_truncate(const WindowedModule& m, int level, TruncSide side);
WindowedModule cone(const ModuleMorphism& f);

std::optional<Bidegree> morphism_defect(const ModuleMorphism& f);  // first failing bidegree

BigradedDimTable cohomology_table(const WindowedModule& m);
BigradedDimTable cohomology_table(const WindowedModule& m, const BidegWindow& region);

struct TorsionVerdict {
    bool torsion;
    std::optional<Bidegree> witness;  // class location when not torsion
    std::string witness_label;
};
TorsionVerdict torsion_check(const WindowedModule& m, int n_max);

/* structured module descriptions for realize() */
struct ModuleSpec {
    enum class Kind { Algebra, GroundField, Twist, Shift, TruncGeq, QuotBelow, DualE, IdealQuotient };
    Kind kind = Kind::Algebra;
    int arg0 = 0, arg1 = 0;
    std::vector<std::string> forms;
    std::shared_ptr<ModuleSpec> sub;

    static ModuleSpec algebra() { return {}; }
    static ModuleSpec ground_field();
    static ModuleSpec twisted(int m, ModuleSpec inner);
    static ModuleSpec shifted(int n, ModuleSpec inner);
    static ModuleSpec trunc_geq(int q, ModuleSpec inner);
    static ModuleSpec quot_below(int q, ModuleSpec inner);
    static ModuleSpec dual_e(int idx, int a);
    static ModuleSpec ideal_quotient(std::vector<std::string> forms);
    std::string to_string() const;
};

WindowedModule realize(const AlgebraPtr& a, const ModuleSpec& spec, const BidegWindow& w);

}  // namespace korlov
