// Finite simplicial sets presented by nondegenerate simplices with face
// tables; degenerate targets are recorded as (nondegenerate base, degeneracy
// word). Nerves of loop-free categories, products via shuffles, and
// normalized chains.
#pragma once

#include "fc/chain.hpp"

namespace fc {

// a possibly-degenerate simplex: s_{word[0]} s_{word[1]} ... base, with the
// word strictly decreasing (the canonical form)
struct SimplexRef {
    int dim = 0;    // dimension of the nondegenerate base
    int index = 0;  // index among nondegenerate simplices of that dimension
    std::vector<int> word;
    int total_dim() const { return dim + (int)word.size(); }
    bool degenerate() const { return !word.empty(); }
    bool operator==(const SimplexRef& o) const = default;
};

// canonical form of a degeneracy word (strictly decreasing), using
// s_i s_j = s_{j+1} s_i for i <= j
std::vector<int> normalize_word(std::vector<int> word);

class FinSimpSet {
public:
    int dim() const { return (int)labels_.size() - 1; }
    int count(int k) const { return k < 0 || k > dim() ? 0 : (int)labels_[k].size(); }
    const std::string& label(int k, int i) const { return labels_[k][i]; }
    const SimplexRef& face(int k, int i, int j) const { return faces_[k][i][j]; }

    int add_simplex(int k, std::string label, std::vector<SimplexRef> faces);

    // face operator on a possibly-degenerate term of total dimension dim+|word|
    SimplexRef face_of(const SimplexRef& term, int j) const;

    std::vector<int> fvector() const;
    long long euler_characteristic() const;
    ValidationReport validate() const;  // simplicial identities on the presentation

private:
    std::vector<std::vector<std::string>> labels_;
    std::vector<std::vector<std::vector<SimplexRef>>> faces_;
};

FinSimpSet point_sset();
FinSimpSet standard_simplex(int n);

struct NerveResult {
    FinSimpSet sset;
    ChainIndex chains;  // simplex (k, i) is chains.by_dim[k][i]
};
NerveResult nerve(const FinCat& c);

FinSimpSet sset_product(const FinSimpSet& a, const FinSimpSet& b);

ChainComplex normalized_chains(const FinSimpSet& a);

// tensor and cotensor with a finite simplicial set, through normalized chains
ChainComplex tensor_sset(const ChainComplex& c, const FinSimpSet& k);
ChainComplex cotensor_sset(const ChainComplex& c, const FinSimpSet& k);

}  // namespace fc
