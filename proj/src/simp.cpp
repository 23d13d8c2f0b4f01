#include "fc/simp.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace fc {

std::vector<int> normalize_word(std::vector<int> word) {
    // bubble toward strictly decreasing using s_i s_j = s_{j+1} s_i (i <= j)
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t k = 0; k + 1 < word.size(); ++k) {
            if (word[k] <= word[k + 1]) {
                int i = word[k], j = word[k + 1];
                word[k] = j + 1;
                word[k + 1] = i;
                changed = true;
            }
        }
    }
    return word;
}

int FinSimpSet::add_simplex(int k, std::string label, std::vector<SimplexRef> faces) {
    if ((int)labels_.size() <= k) {
        labels_.resize(k + 1);
        faces_.resize(k + 1);
    }
    if (k > 0 && (int)faces.size() != k + 1) throw std::invalid_argument("add_simplex: need k+1 faces");
    labels_[k].push_back(std::move(label));
    faces_[k].push_back(std::move(faces));
    return (int)labels_[k].size() - 1;
}

SimplexRef FinSimpSet::face_of(const SimplexRef& term, int j) const {
    // walk d_j through the degeneracy word
    std::vector<int> out;
    int f = j;
    for (size_t k = 0; k < term.word.size(); ++k) {
        int w = term.word[k];
        if (f < w) {
            out.push_back(w - 1);
        } else if (f == w || f == w + 1) {
            // the face is absorbed
            out.insert(out.end(), term.word.begin() + k + 1, term.word.end());
            return SimplexRef{term.dim, term.index, normalize_word(std::move(out))};
        } else {
            out.push_back(w);
            --f;
        }
    }
    const SimplexRef& base_face = faces_[term.dim][term.index][f];
    out.insert(out.end(), base_face.word.begin(), base_face.word.end());
    return SimplexRef{base_face.dim, base_face.index, normalize_word(std::move(out))};
}

std::vector<int> FinSimpSet::fvector() const {
    std::vector<int> f;
    for (int k = 0; k <= dim(); ++k) f.push_back(count(k));
    return f;
}

long long FinSimpSet::euler_characteristic() const {
    long long chi = 0;
    for (int k = 0; k <= dim(); ++k) chi += (k % 2 == 0 ? 1 : -1) * (long long)count(k);
    return chi;
}

ValidationReport FinSimpSet::validate() const {
    ValidationReport rep;
    for (int k = 1; k <= dim(); ++k)
        for (int i = 0; i < count(k); ++i) {
            for (int j = 0; j <= k; ++j) {
                const SimplexRef& f = faces_[k][i][j];
                if (f.total_dim() != k - 1)
                    rep.violations.push_back("face dimension wrong at (" + std::to_string(k) + "," +
                                             std::to_string(i) + ")");
            }
            if (k >= 2) {
                SimplexRef self{k, i, {}};
                for (int a = 0; a < k; ++a)
                    for (int b = a + 1; b <= k; ++b) {
                        SimplexRef lhs = face_of(face_of(self, b), a);
                        SimplexRef rhs = face_of(face_of(self, a), b - 1);
                        if (!(lhs == rhs))
                            rep.violations.push_back("simplicial identity fails at (" + std::to_string(k) + "," +
                                                     std::to_string(i) + ") faces (" + std::to_string(a) + "," +
                                                     std::to_string(b) + ")");
                    }
            }
        }
    return rep;
}

FinSimpSet point_sset() {
    FinSimpSet s;
    s.add_simplex(0, "*", {});
    return s;
}

FinSimpSet standard_simplex(int n) { return nerve(linear_category(n)).sset; }

NerveResult nerve(const FinCat& c) {
    NerveResult res;
    res.chains = enumerate_chains(c);
    const ChainIndex& ch = res.chains;
    for (int k = 0; k <= ch.dim(); ++k)
        for (int i = 0; i < ch.count(k); ++i) {
            std::ostringstream os;
            const Chain& chain = ch.by_dim[k][i];
            os << "[";
            for (size_t t = 0; t < chain.objects.size(); ++t) {
                if (t) os << "->";
                os << c.object_label(chain.objects[t]);
            }
            os << "]";
            std::vector<SimplexRef> faces;
            if (k > 0) {
                for (int j = 0; j <= k; ++j) {
                    int f = ch.face[k][i][j];
                    if (f >= 0) {
                        faces.push_back(SimplexRef{k - 1, f, {}});
                    } else {
                        // an inner composite became an identity (src = dst);
                        // the face is s_{j-1} of the chain with both arrows
                        // and the repeated vertex removed
                        Chain base;
                        for (size_t t = 0; t < chain.objects.size(); ++t)
                            if ((int)t != j && (int)t != j + 1) base.objects.push_back(chain.objects[t]);
                        for (size_t t = 0; t < chain.mors.size(); ++t)
                            if ((int)t != j - 1 && (int)t != j) base.mors.push_back(chain.mors[t]);
                        int idx = ch.find(k - 2, base);
                        if (idx < 0) throw std::logic_error("nerve: degenerate face base missing");
                        faces.push_back(SimplexRef{k - 2, idx, {j - 1}});
                    }
                }
            }
            res.sset.add_simplex(k, os.str(), std::move(faces));
        }
    ValidationReport rep = res.sset.validate();
    if (!rep.ok()) throw std::logic_error("nerve: " + rep.violations.front());
    return res;
}

namespace {

void enumerate_subsets(int k, int size, std::vector<std::vector<int>>& out) {
    std::vector<int> cur;
    std::function<void(int)> go = [&](int from) {
        if ((int)cur.size() == size) {
            out.push_back(cur);
            return;
        }
        for (int v = from; v < k; ++v) {
            cur.push_back(v);
            go(v + 1);
            cur.pop_back();
        }
    };
    go(0);
}

std::vector<int> desc_word(const std::vector<int>& set) { return {set.rbegin(), set.rend()}; }

}  // namespace

FinSimpSet sset_product(const FinSimpSet& a, const FinSimpSet& b) {
    FinSimpSet out;
    if (a.dim() < 0 || b.dim() < 0) return out;
    int maxdim = a.dim() + b.dim();
    struct Gen {
        int xd, xi;
        std::vector<int> u;
        int yd, yi;
        std::vector<int> v;
        bool operator==(const Gen& o) const = default;
    };
    std::vector<std::vector<Gen>> gens(maxdim + 1);
    for (int k = 0; k <= maxdim; ++k)
        for (int xd = 0; xd <= std::min(k, a.dim()); ++xd)
            for (int yd = 0; yd <= std::min(k, b.dim()); ++yd) {
                if (xd + yd < k) continue;
                std::vector<std::vector<int>> us, vs;
                enumerate_subsets(k, k - xd, us);
                enumerate_subsets(k, k - yd, vs);
                for (int xi = 0; xi < a.count(xd); ++xi)
                    for (int yi = 0; yi < b.count(yd); ++yi)
                        for (auto& u : us)
                            for (auto& v : vs) {
                                bool disjoint = true;
                                for (int e : u)
                                    if (std::find(v.begin(), v.end(), e) != v.end()) disjoint = false;
                                if (disjoint) gens[k].push_back({xd, xi, u, yd, yi, v});
                            }
            }
    auto find_gen = [&](int k, const Gen& g) {
        for (size_t i = 0; i < gens[k].size(); ++i)
            if (gens[k][i] == g) return (int)i;
        return -1;
    };
    auto word_to_set = [](const std::vector<int>& w) { return std::vector<int>(w.rbegin(), w.rend()); };
    for (int k = 0; k <= maxdim; ++k)
        for (auto& g : gens[k]) {
            std::ostringstream os;
            os << "(" << a.label(g.xd, g.xi);
            for (int e : g.u) os << ".s" << e;
            os << "|" << b.label(g.yd, g.yi);
            for (int e : g.v) os << ".s" << e;
            os << ")";
            std::vector<SimplexRef> faces;
            if (k > 0)
                for (int j = 0; j <= k; ++j) {
                    SimplexRef tx = a.face_of(SimplexRef{g.xd, g.xi, desc_word(g.u)}, j);
                    SimplexRef ty = b.face_of(SimplexRef{g.yd, g.yi, desc_word(g.v)}, j);
                    std::vector<int> su = word_to_set(tx.word), sv = word_to_set(ty.word);
                    std::vector<int> w;
                    for (int e : su)
                        if (std::find(sv.begin(), sv.end(), e) != sv.end()) w.push_back(e);
                    auto shift = [&](const std::vector<int>& s) {
                        std::vector<int> outp;
                        for (int e : s) {
                            if (std::find(w.begin(), w.end(), e) != w.end()) continue;
                            int drop = 0;
                            for (int x : w)
                                if (x < e) ++drop;
                            outp.push_back(e - drop);
                        }
                        return outp;
                    };
                    Gen fg{tx.dim, tx.index, shift(su), ty.dim, ty.index, shift(sv)};
                    int bd = k - 1 - (int)w.size();
                    int idx = find_gen(bd, fg);
                    if (idx < 0) throw std::logic_error("sset_product: face base missing");
                    faces.push_back(SimplexRef{bd, idx, desc_word(w)});
                }
            out.add_simplex(k, os.str(), std::move(faces));
        }
    ValidationReport rep = out.validate();
    if (!rep.ok()) throw std::logic_error("sset_product: " + rep.violations.front());
    return out;
}

ChainComplex normalized_chains(const FinSimpSet& a) {
    ChainComplex c;
    if (a.dim() < 0) return c;
    c.lo = 0;
    for (int k = 0; k <= a.dim(); ++k) c.ranks.push_back(a.count(k));
    c.d.resize(c.ranks.size());
    c.d[0] = IntMat(0, c.ranks[0]);
    for (int k = 1; k <= a.dim(); ++k) {
        IntMat m(a.count(k - 1), a.count(k));
        for (int i = 0; i < a.count(k); ++i)
            for (int j = 0; j <= k; ++j) {
                const SimplexRef& f = a.face(k, i, j);
                if (f.degenerate()) continue;
                m.add(f.index, i, j % 2 == 0 ? 1 : -1);
            }
        c.d[k] = std::move(m);
    }
    ValidationReport rep = c.validate();
    if (!rep.ok()) throw std::logic_error("normalized_chains: " + rep.violations.front());
    c.trim();
    return c;
}

ChainComplex tensor_sset(const ChainComplex& c, const FinSimpSet& k) { return tensor(c, normalized_chains(k)); }

ChainComplex cotensor_sset(const ChainComplex& c, const FinSimpSet& k) {
    return cotensor_complex(c, normalized_chains(k));
}

}  // namespace fc
