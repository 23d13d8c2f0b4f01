// The polynomial approximation machinery: star and its homotopy variant,
// the T_n / P_n towers with stabilization detection, the auxiliary tower,
// Rezk-style comparison objects, homotopy Cartesian cube predicates with
// the boundary operation, and co-Cartesian/latching classification.
#pragma once

#include "fc/reedy.hpp"
#include "fc/simp.hpp"

#include <functional>
#include <memory>

namespace fc {

struct GradedMap {
    ChainComplex src, dst;
    int degree = 0;  // components src_n -> dst_{n+degree}
    std::map<int, IntMat> comp;
    IntMat at(int deg) const;
};

struct FunctorSpec {
    std::string name;
    std::function<ChainComplex(const ChainComplex&)> on_obj;
    std::function<ChainMap(const ChainMap&)> on_map;
    // linear action on graded maps; only additive functors provide one
    std::function<GradedMap(const GradedMap&)> on_graded;
    bool preserves_zero = false;
    bool exact_on_fiber_squares = false;
};

FunctorSpec functor_identity();
FunctorSpec functor_constant(const ChainComplex& c0);
FunctorSpec functor_double();                         // X -> X (+) X
FunctorSpec functor_tensor_with(const ChainComplex& c0);
FunctorSpec functor_square();                         // X -> X (x) X
FunctorSpec functor_shift(int k);
FunctorSpec functor_by_name(const std::string& name); // CLI grammar

struct FlagReport {
    bool preserves_zero_ok = false;
    bool exact_on_fiber_squares_ok = false;
    bool functorial_ok = false;
};
FlagReport verify_functor_flags(const FunctorSpec& f, unsigned long long seed, int samples = 3);

// ---- star ----

FinCat subset_category(unsigned mask);                       // discrete, labeled by elements
CatFunctor subset_inclusion(unsigned small, unsigned large);
CatFunctor plus_functor(const CatFunctor& u, const PlusResult& src, const PlusResult& dst);

Diagram r_diagram(const FinCat& j, const ChainComplex& x);   // on plus(j).cat; object 0 is the cone point

struct StarResult {
    ChainComplex value;
    ChainMap from_x;  // the cone-point inclusion X -> J * X
};
StarResult star(const FinCat& j, const ChainComplex& x);
ChainMap star_map_x(const FinCat& j, const ChainMap& f);              // J * f
ChainMap star_map_shape(const CatFunctor& u, const ChainComplex& x);  // I*X -> J*X along u: I -> J

// homotopy variant over the spider, with its comparison to star
IntPoResult int_po_labels(const std::vector<std::string>& labels);
struct StarHResult {
    ChainComplex value;
    ChainMap compare;  // S *h X -> S * X
};
StarHResult star_h(unsigned mask, const ChainComplex& x);
ChainMap star_h_map_shape(unsigned small, unsigned large, const ChainComplex& x);

// ---- towers ----

struct TnResult {
    ChainComplex value;
    ChainMap unit;  // F(X) -> T_n F (X)
    Diagram diagram;
};
TnResult t_n(const FunctorSpec& f, const ChainComplex& x, int n);
FunctorSpec t_n_functor(const FunctorSpec& f, int n);  // cached evaluation

// general index: a family of loop-free categories
struct CatFamily {
    FinCat shape;
    std::vector<FinCat> value;
    std::vector<CatFunctor> action;
};
CatFamily family_point();
CatFamily family_int_pb(const CatFamily& f);
TnResult t_n_family(const FunctorSpec& f, const ChainComplex& x, int n, const CatFamily& j);

struct TowerStage {
    int level = 0;
    ChainComplex value;
    ChainMap from_prev;
    int iterates = 0;
    bool stabilized = false;
    std::vector<ChainComplex> iterate_value;  // iterate 0 is F(X)
    std::vector<ChainMap> iterate_map;        // t_i : iterate i -> iterate i+1
};
TowerStage p_n(const FunctorSpec& f, const ChainComplex& x, int n, int max_iter = 3);
ChainMap stage_unit(const TowerStage& s);  // F(X) -> stage value

struct TowerMapResult {
    ChainMap map;  // P_{n+1}F(X) -> P_nF(X), presented at compatible iterates
    TowerStage src_stage, dst_stage;
    bool compatible_with_units = false;  // q o p_{n+1} = p_n on homology
};
TowerMapResult tower_map(const FunctorSpec& f, const ChainComplex& x, int n, int max_iter = 3);

struct AuxStage {
    TowerStage stage;               // the star_h tower
    ChainMap compare;               // aux value -> plain value at matched iterates
    bool compare_qiso = false;
};
AuxStage aux_tower(const FunctorSpec& f, const ChainComplex& x, int n, int max_iter = 3);

// ---- Rezk comparison objects ----

struct RezkResult {
    ChainComplex x2;          // hocolim over the spider of the square diagram
    ChainComplex xu;          // hocolim of X(T) <- sum_U X(T) -> sum_U X(T u s)
    ChainMap xu_to_x2;
    ChainMap x2_to_starh;     // into U *h X(T)
};
RezkResult rezk_objects(const Diagram& x, const PowersetResult& ps, unsigned u_mask, unsigned t_mask);

// ---- homotopy Cartesian cubes ----

struct Cube {
    Diagram diag;      // over shape.cat = plus(j)
    FinCat j;
    PlusResult shape;
};
Cube make_cube(const FinCat& j, Diagram diag_on_plus);
// assemble a cube over (int_pb J)+ from an arrow of J+-diagrams
Cube cube_from_arrow(const FinCat& j, const Cube& left, const Cube& right,
                     const std::vector<ChainMap>& alpha);

bool is_homotopy_cartesian(const Cube& x);
Cube cartesian_replacement(const FinCat& j, const Diagram& x);
// objectwise comparison maps X(j) -> (replacement restricted to J)(j)
std::vector<ChainMap> replacement_comparison(const FinCat& j, const Diagram& x, const Cube& replacement);

struct DelResult {
    Cube boundary;                  // over plus(j)
    Cube left, right;               // the two faces, over plus(j)
    std::vector<ChainMap> arrow;    // left => right as J+-diagrams
};
DelResult del(const Cube& x, const FinCat& j);  // x lives over plus(int_pb(j))

struct FiberCommReport {
    bool flags_ok = false;
    std::vector<bool> left_qiso, right_qiso;  // per object of J+
    bool all_ok() const;
};
FiberCommReport fiber_commutation(const FunctorSpec& f, const Cube& x, const FinCat& j,
                                  unsigned long long seed);

// ---- co-Cartesian side ----

struct CocartCube {
    Diagram diag;  // over the full powerset poset
    PowersetResult ps;
    int n = 0;
};
CocartCube make_cocart_cube(int n, Diagram diag);

ChainMap latching_map(const CocartCube& x, unsigned s_mask);  // hocolim over P1(S) -> X(S)

struct CubeClass {
    bool cofibration_cube = false;
    bool ho_cocartesian = false;
    bool strongly_ho_cocartesian = false;
};
CubeClass cube_classify(const CocartCube& x);

// strict colimit of the restriction to proper subsets of S, with the induced
// map to X(S); used by the cofibration-cube test
struct StrictLatch {
    bool injective = false;
    bool split_with_free_cokernel = false;
};
StrictLatch strict_latching(const CocartCube& x, unsigned s_mask);

}  // namespace fc
