// Finite categories as explicit object/morphism tables with a dense
// composition table, plus functors, commas, Set-valued (co)limits and
// brute-force isomorphism search.
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fc {

struct GuardError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Morph {
    int src = -1, dst = -1;
    std::string name;
};

class FinCat {
public:
    FinCat() = default;

    int add_object(std::string label);
    // identity morphisms are created by add_object; this adds a non-identity arrow
    int add_morphism(int src, int dst, std::string name);
    void set_compose(int g, int f, int gf);
    // fills composites with identities and checks the table is total
    void finish();

    int object_count() const { return (int)objects_.size(); }
    int morphism_count() const { return (int)mors_.size(); }
    const std::string& object_label(int o) const { return objects_[o]; }
    const Morph& morph(int m) const { return mors_[m]; }
    int identity(int o) const { return identity_[o]; }
    bool is_identity(int m) const { return mors_[m].src == mors_[m].dst && identity_[mors_[m].src] == m; }
    int src(int m) const { return mors_[m].src; }
    int dst(int m) const { return mors_[m].dst; }

    bool composable(int g, int f) const { return mors_[f].dst == mors_[g].src; }
    int compose(int g, int f) const;  // g after f

    int find_object(const std::string& label) const;  // -1 if absent
    std::vector<int> hom(int a, int b) const;

    bool operator==(const FinCat& o) const;

private:
    std::vector<std::string> objects_;
    std::vector<Morph> mors_;
    std::vector<int> identity_;
    std::vector<std::vector<int>> comp_;  // comp_[g][f], -1 when not composable
    friend struct FinCatAccess;
};

struct ValidationReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

ValidationReport validate_category(const FinCat& c);

// Common small shapes.
FinCat terminal_category();
FinCat empty_category();
FinCat arrow_category();                  // [1]
FinCat pb_category();                     // 0 -> 1 <- 2
FinCat po_category();                     // 0 <- 1 -> 2
FinCat discrete_category(int n);          // objects "1".."n"
FinCat linear_category(int n);            // 0 -> 1 -> ... -> n

struct CatFunctor {
    FinCat source, target;
    std::vector<int> obj_map;
    std::vector<int> mor_map;
};

bool check_functor(const CatFunctor& f, std::string* why = nullptr);
CatFunctor identity_functor(const FinCat& c);
CatFunctor compose_functors(const CatFunctor& g, const CatFunctor& f);
bool functor_equal(const CatFunctor& f, const CatFunctor& g);

// mor_map, when given, receives the morphism correspondence (original -> opposite)
FinCat opposite(const FinCat& c, std::vector<int>* mor_map = nullptr);
FinCat product(const FinCat& c, const FinCat& d);
// projections and pair lookup for product categories
struct ProductCat {
    FinCat cat;
    CatFunctor proj_left, proj_right;
    std::vector<std::pair<int, int>> obj_pair, mor_pair;
};
ProductCat product_with_projections(const FinCat& c, const FinCat& d);

enum class CommaVariant { Over, Under };

struct CommaResult {
    FinCat cat;
    CatFunctor projection;        // to the ambient category
    std::vector<int> object_mor;  // comma object -> morphism of the ambient category
};

CommaResult comma(const FinCat& c, int anchor, CommaVariant variant);
// (b down p) for a functor p: E -> B; objects are pairs (e, u: b -> p(e))
struct CommaFunctorResult {
    FinCat cat;
    CatFunctor projection;  // to E
    std::vector<std::pair<int, int>> objects;  // (object of E, morphism of B)
};
CommaFunctorResult comma_under_functor(int b, const CatFunctor& p);

bool is_loop_free(const FinCat& c);

std::optional<CatFunctor> find_isomorphism(const FinCat& c, const FinCat& d);

// Composable chains of non-identity arrows, the combinatorial skeleton of the
// nerve. chains(k) are the nondegenerate k-simplices; faces compose or drop.
struct Chain {
    std::vector<int> objects;  // length p+1
    std::vector<int> mors;     // length p
};
struct ChainIndex {
    std::vector<std::vector<Chain>> by_dim;
    // face i of chain (dim, idx): index in dimension dim-1, or -1 when the
    // face is degenerate (an inner composite became an identity)
    std::vector<std::vector<std::vector<int>>> face;
    int dim() const { return (int)by_dim.size() - 1; }
    int count(int k) const { return k < (int)by_dim.size() ? (int)by_dim[k].size() : 0; }
    int find(int k, const Chain& c) const;
};
ChainIndex enumerate_chains(const FinCat& c);  // requires loop-free

struct FinSetDiagram {
    FinCat shape;
    std::vector<int> size;                  // per object
    std::vector<std::vector<int>> action;   // per morphism, a function table
};

ValidationReport validate_set_diagram(const FinSetDiagram& x);

struct SetColimit {
    int size = 0;
    std::vector<std::vector<int>> cocone;  // per object, element -> class
};
SetColimit set_colimit(const FinSetDiagram& x);

struct SetLimit {
    std::vector<std::vector<int>> elements;  // tuples indexed by object
    int size() const { return (int)elements.size(); }
};
SetLimit set_limit(const FinSetDiagram& x);

}  // namespace fc
