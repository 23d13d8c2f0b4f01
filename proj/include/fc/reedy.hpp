// Reedy structures: degree functions with direct/inverse subcategory
// markings, unique factorizations, constants criteria via latching/matching
// category connectivity, degree filtrations and latching categories.
#pragma once

#include "fc/groth.hpp"

namespace fc {

struct ReedyStructure {
    FinCat cat;
    std::vector<int> degree;     // per object
    std::vector<char> direct;    // per morphism
    std::vector<char> inverse;   // per morphism
};

ValidationReport check_reedy(const ReedyStructure& r);

enum class ConstantsSide { Cofibrant, Fibrant };

struct ConstantsReport {
    bool holds = false;
    // failing objects with their component counts (empty when holds)
    std::vector<std::pair<int, int>> witnesses;
};
ConstantsReport constants_criterion(const ReedyStructure& r, ConstantsSide side);

// keeps every object; keep[m] selects non-identity morphisms
SubcatResult wide_subcategory(const FinCat& c, const std::vector<char>& keep);

struct LatchingResult {
    FinCat cat;
    CatFunctor to_ambient;        // sends the arrow f: x -> a to x (dually for matching)
    std::vector<int> object_mor;  // per object, the underlying morphism of the ambient category
};
// full subcategory of the over-comma of the direct part at a, identity removed
LatchingResult latching_category(const ReedyStructure& r, int obj);
// dual: under-comma of the inverse part, identity removed
LatchingResult matching_category(const ReedyStructure& r, int obj);

struct FiltrationResult {
    FinCat cat;
    CatFunctor inclusion;
    std::vector<int> object_map;
};
FiltrationResult filtration(const ReedyStructure& r, int n);

struct InheritedResult {
    bool ok = false;
    ReedyStructure structure;
    std::string note;  // which candidate validated, or why both failed
};
InheritedResult inherit_plus(const ReedyStructure& r);
InheritedResult inherit_int_pb(const ReedyStructure& r);

// the all-inverse structure on P0(n): direct part discrete, degree n - |S|
ReedyStructure reedy_punctured_cube(int n);
// the all-direct structure on P(n): inverse part discrete, degree |S|
ReedyStructure reedy_full_cube(int n);
// dual structure on the spider int_po(S): fibrant constants
ReedyStructure reedy_spider(int s);

}  // namespace fc
