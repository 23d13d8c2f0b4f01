// The property battery behind `verify`: one callable case per invariant,
// plus the random generators shared with the acceptance suite.
#pragma once

#include "fc/calculus.hpp"

namespace fc {

struct CaseResult {
    std::string id, name;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

struct PropertyCase {
    std::string id, suite, name;
    std::function<CaseResult(unsigned long long seed)> run;
};

const std::vector<PropertyCase>& property_battery();
std::vector<CaseResult> run_suite(const std::string& suite, unsigned long long seed);

// ---- generators (deterministic in the seed) ----

// a functorial diagram on a thin loop-free shape: a sum of representable
// cells, sometimes coned off along a transformation
struct FreeCells {
    Diagram diag;
    std::vector<std::pair<int, ChainComplex>> cells;  // (object, cell complex)
};
FreeCells free_cells_diagram(const FinCat& shape, const std::vector<std::pair<int, ChainComplex>>& cells);
std::vector<ChainMap> transformation_from_cells(const FreeCells& x, const Diagram& y,
                                                const std::vector<ChainMap>& base);
Diagram cone_of_transformation(const Diagram& x, const Diagram& y, const std::vector<ChainMap>& phi);

Diagram random_poset_diagram(const FinCat& shape, Rng& rng, int max_cells = 3);
Cube random_cube(const FinCat& j, Rng& rng);            // over plus(j), unconstrained
Cube random_cartesian_cube_v(const FinCat& j, Rng& rng);  // via the replacement

// maps of replacements induced by a strict map of J-diagrams
std::vector<ChainMap> replacement_functor_map(const FinCat& j, const Diagram& x, const Diagram& y,
                                              const std::vector<ChainMap>& alpha);

struct ArrowOfCubes {
    Cube left, right, total;  // total lives over plus(int_pb(j).g.total)
    std::vector<ChainMap> alpha;
};
// both faces homotopy Cartesian by construction
ArrowOfCubes random_cartesian_arrow(const FinCat& j, Rng& rng);

// cell cubes over the full powerset: always cofibration cubes; the cube is
// strongly co-Cartesian exactly when every cell at a subset of size >= 2 is
// acyclic, which the generator records
struct CellCube {
    CocartCube cube;
    std::map<unsigned, std::vector<ChainComplex>> cells;  // per mask
    bool expected_strongly_cocartesian = false;
};
CellCube random_cell_cube(int n, Rng& rng, bool force_cocartesian);

}  // namespace fc
