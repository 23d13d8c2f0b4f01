// Bounded complexes of finitely generated free abelian groups: the target
// category. Exact homology via Smith normal form, homotopy (co)limits over
// finite loop-free shapes via normalized (co)simplicial replacement, mapping
// cones and fibers, tensors, and a unit-cancellation reduction that keeps
// the larger computations tractable.
#pragma once

#include "fc/fincat.hpp"
#include "fc/intmat.hpp"

#include <map>

namespace fc {

struct ChainComplex {
    int lo = 0;
    std::vector<int> ranks;            // ranks[i] = rank in degree lo + i
    std::vector<IntMat> d;             // d[i] : C_{lo+i} -> C_{lo+i-1}; d[0] has 0 rows

    int hi() const { return lo + (int)ranks.size() - 1; }
    int rank_at(int deg) const;
    IntMat diff(int deg) const;        // d : deg -> deg-1, zero-shaped outside support
    int total_rank() const;
    bool is_zero_complex() const { return total_rank() == 0; }
    ValidationReport validate() const;
    std::string fingerprint() const;
    void trim();                       // drop zero-rank fringe degrees
};

ChainComplex zero_complex();
ChainComplex free_complex(int deg, int rank = 1);                   // Z^rank concentrated in one degree
ChainComplex two_term(int deg, const Int& mult);                    // Z -> Z by mult, degrees deg, deg-1

struct ChainMap {
    ChainComplex src, dst;
    std::map<int, IntMat> comp;        // per source degree; absent means zero

    IntMat at(int deg) const;
    ValidationReport validate() const;
};

ChainMap identity_map(const ChainComplex& c);
ChainMap zero_map(const ChainComplex& src, const ChainComplex& dst);
ChainMap compose_maps(const ChainMap& g, const ChainMap& f);
ChainMap add_maps(const ChainMap& f, const ChainMap& g);
ChainMap negate_map(const ChainMap& f);

struct HomologySummary {
    // degree -> (betti, torsion invariant factors > 1)
    std::map<int, std::pair<long long, std::vector<Int>>> groups;
    bool trivial() const;
    bool operator==(const HomologySummary& o) const { return groups == o.groups; }
    bool operator!=(const HomologySummary& o) const { return !(*this == o); }
    std::string str() const;
};

HomologySummary homology(const ChainComplex& c);
HomologySummary homology_direct(const ChainComplex& c);  // pure Smith normal form, no reduction
bool is_acyclic(const ChainComplex& c);
bool is_quasi_iso(const ChainMap& f);

ChainComplex shift(const ChainComplex& c, int k);
ChainMap shift_map(const ChainMap& f, int k);

struct DsumResult {
    ChainComplex sum;
    std::vector<ChainMap> incl, proj;
};
DsumResult dsum(const std::vector<ChainComplex>& parts);

ChainComplex tensor(const ChainComplex& a, const ChainComplex& b);
ChainMap tensor_map(const ChainMap& f, const ChainMap& g);
// Hom(w, c): internal cochains of w with coefficients in c
ChainComplex cotensor_complex(const ChainComplex& c, const ChainComplex& w);

ChainComplex cone(const ChainMap& f);
// corrected homotopy limit of src -> dst <- 0; quasi-isomorphic to cone shifted down
ChainComplex chf(const ChainMap& f);

// ---- diagrams and Bousfield-Kan (co)simplicial replacements ----

struct Diagram {
    FinCat shape;
    std::vector<ChainComplex> value;   // per object
    std::vector<ChainMap> action;      // per morphism
    ValidationReport validate() const;
};

Diagram restrict_diagram(const Diagram& x, const CatFunctor& u);  // x o u

struct TotalLayout {
    bool colimit_side = true;          // value at the chain start (hocolim) or end (holim)
    ChainIndex chains;
    int lo = 0;
    // per total degree (offset by lo), block offsets keyed by (p, chain index)
    std::vector<std::map<std::pair<int, int>, int>> offsets;
    int vertex_of(int p, int c) const;
    int offset_of(int deg, int p, int c) const;  // -1 when the block is empty/absent
};

struct HocolimResult {
    ChainComplex total;
    TotalLayout layout;
    std::vector<ChainMap> cocone;      // per object; commute with the diagram up to homotopy
};
HocolimResult hocolim(const Diagram& x);

struct HolimResult {
    ChainComplex total;
    TotalLayout layout;
    std::vector<ChainMap> cone;        // per object (coordinate projections)
};
HolimResult holim(const Diagram& x);

// replacement hooks: every object here is fibrant and cofibrant, the hooks
// are identities and corrected (co)limits coincide with the plain ones
Diagram fibrant_replace(const Diagram& x);
Diagram cofibrant_replace(const Diagram& x);
HolimResult corrected_holim(const Diagram& x);
HocolimResult corrected_hocolim(const Diagram& x);

// functorial pieces used throughout the tower and cube machinery
ChainMap hocolim_map(const Diagram& x, const Diagram& y, const std::vector<ChainMap>& phi);
ChainMap holim_map(const Diagram& x, const Diagram& y, const std::vector<ChainMap>& phi);
// hocolim_I (x o u) -> hocolim_J x along u: I -> J
ChainMap hocolim_reindex(const CatFunctor& u, const Diagram& x);
// holim_J x -> holim_I (x o u)
ChainMap holim_restrict(const CatFunctor& u, const Diagram& x);
// strict cone z -> holim x from components z -> x(j)
ChainMap map_into_holim(const ChainComplex& z, const Diagram& x, const std::vector<ChainMap>& components);
// strict cocone hocolim x -> z from components x(j) -> z
ChainMap map_from_hocolim(const Diagram& x, const ChainComplex& z, const std::vector<ChainMap>& components);

// ---- reduction ----

struct Reduction {
    ChainComplex core;
    ChainMap proj, incl;  // tracked only when requested
    bool with_maps = false;
};
Reduction reduce(const ChainComplex& c, bool with_maps = false);

bool induces_zero_on_homology(const ChainMap& h);
bool maps_equal_on_homology(const ChainMap& f, const ChainMap& g);

// ---- deterministic random generation for the property suites ----

struct Rng {
    unsigned long long state;
    explicit Rng(unsigned long long seed) : state(seed ? seed : 0x9e3779b97f4a7c15ull) {}
    unsigned long long next();
    long long range(long long n);      // uniform-ish in [0, n)
    long long pick_int(long long lo, long long hi);
};

ChainComplex random_complex(Rng& rng, int max_rank, int lo, int span);
// a uniformly drawn integer combination of a basis of the chain-map lattice
ChainMap random_chain_map(Rng& rng, const ChainComplex& a, const ChainComplex& b, int coeff_bound = 2);

}  // namespace fc
