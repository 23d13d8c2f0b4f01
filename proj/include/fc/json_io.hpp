// JSON formats for the CLI-facing artifacts: categories, Reedy structures,
// simplicial sets, complexes, diagrams/cubes and homology reports.
#pragma once

#include "fc/calculus.hpp"
#include "fc/reedy.hpp"
#include "fc/simp.hpp"

#include "json.hpp"

namespace fc {

using Json = nlohmann::json;

Json cat_to_json(const FinCat& c);
FinCat cat_from_json(const Json& j);

Json reedy_to_json(const ReedyStructure& r);
ReedyStructure reedy_from_json(const Json& j);

Json sset_to_json(const FinSimpSet& s);

Json complex_to_json(const ChainComplex& c);
ChainComplex complex_from_json(const Json& j);

Json homology_to_json(const HomologySummary& h);

// diagrams and cubes: values in object order, maps keyed by morphism id
Json diagram_to_json(const Diagram& d);
Diagram diagram_from_json(const Json& j);

Json cartesian_cube_to_json(const Cube& c);
Cube cartesian_cube_from_json(const Json& j);
Json cocart_cube_to_json(const CocartCube& c);
CocartCube cocart_cube_from_json(const Json& j);

// the morphism id grammar shared by categories and diagrams
std::string morphism_id(const FinCat& c, int m);

}  // namespace fc
