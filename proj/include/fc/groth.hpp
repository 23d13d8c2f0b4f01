// Grothendieck constructions and the subset-poset combinatorics built from
// them: J+, int_pb, int_po, the J(n) sequence, powerset posets, twisted
// arrow categories, xi, and coends as colimits over the twisted category.
#pragma once

#include "fc/fincat.hpp"

#include <map>

namespace fc {

enum class Variance { Contravariant, Covariant };

struct CatDiagram {
    FinCat base;
    std::vector<FinCat> fiber;          // per base object
    std::vector<CatFunctor> transition; // per base morphism
    Variance variance = Variance::Contravariant;
};

ValidationReport validate_cat_diagram(const CatDiagram& psi);

struct GrothResult {
    FinCat total;
    CatFunctor projection;                      // total -> base
    std::vector<CatFunctor> fiber_inclusion;    // per base object
    std::vector<std::pair<int, int>> obj_pair;  // total object -> (base obj, fiber obj)
    std::vector<std::pair<int, int>> mor_pair;  // total morphism -> (base mor, fiber mor)
    int object_of(int base_obj, int fiber_obj) const;
    // a total morphism is pinned by endpoints plus its (base, fiber) pair;
    // the pair alone is ambiguous when a transition collapses fibers
    int morphism_of(int src_obj, int dst_obj, int base_mor, int fiber_mor) const;
    std::map<std::pair<int, int>, int> obj_lookup;
    std::map<std::tuple<int, int, int, int>, int> mor_lookup;
};

GrothResult groth(const CatDiagram& psi);

struct PlusResult {
    FinCat cat;
    CatFunctor inclusion;  // J -> J+
    int init_obj = 0;
    std::vector<int> obj_map, mor_map;  // J -> J+
    std::vector<int> arrow_from_init;   // per J+ object, the unique arrow from the initial object
};
PlusResult plus(const FinCat& j);

struct IntPbResult {
    GrothResult g;
    CatFunctor tau0, tau1;  // J -> total, j -> (0,j) resp. (1,j)
};
IntPbResult int_pb(const FinCat& j);

struct JnResult {
    std::vector<FinCat> stage;        // stage[k] = J(k+1), stage[0] = J
    std::vector<CatFunctor> tau0, tau1;  // stage[k] -> stage[k+1]
    std::vector<IntPbResult> step;    // step[k] built stage[k+1] from stage[k]
};
JnResult jn(const FinCat& j, int n, int max_total_objects = 10000);

enum class PowersetVariant { Full, Punctured, Copunctured };

struct PowersetResult {
    FinCat cat;
    std::vector<unsigned> mask;           // per object
    std::map<unsigned, int> object_of_mask;
};
PowersetResult powerset(int n, PowersetVariant variant);

// tau0: P0(n) -> P0(n+1), S -> S; tau1: S -> S u {n+1}
CatFunctor powerset_tau0(int n);
CatFunctor powerset_tau1(int n);

struct IntPoResult {
    GrothResult g;
    int body_obj = -1;
};
IntPoResult int_po(int s);  // S = discrete {1..s}

struct TwistedResult {
    FinCat cat;
    std::vector<int> object_mor;                // object -> morphism of J
    std::vector<std::pair<int, int>> mor_pair;  // morphism -> (u, w) in J
    int object_of(int m) const;
    int morphism_of(int src_obj, int dst_obj, int u, int w) const;
};
TwistedResult twisted_arrow(const FinCat& j);

// the natural isomorphism int_po S -> (S+)_tau for a discrete set S
struct XiResult {
    IntPoResult spider;
    PlusResult splus;
    TwistedResult twisted;
    CatFunctor iso;
};
XiResult xi(int s);

// explicit iso *(n) -> P0(n), the subset-poset identification
CatFunctor cube_iso(const JnResult& tower, int k);

// coend of Z: (J+)^op x (J+) -> Set, computed two independent ways
struct CoendResult {
    int size_twisted = 0;
    int size_direct = 0;
    bool bijective = false;
    std::vector<std::vector<int>> diag_class_twisted;  // per J+ object, per element
    std::vector<std::vector<int>> diag_class_direct;
};
// z lives on product_with_projections(opposite(J+), J+).cat with matching object order
CoendResult coend_via_twisted(const PlusResult& jplus, const FinSetDiagram& z);

// instance check of the pushout presentation (formula-style gluing) of int_pb
bool verify_int_pb_pushout(const FinCat& j);

struct SubcatResult {
    FinCat cat;
    CatFunctor inclusion;
    std::vector<int> object_map;  // new -> old
    std::vector<int> mor_map;     // new -> old
};
SubcatResult full_subcategory(const FinCat& c, const std::vector<int>& objects);

}  // namespace fc
