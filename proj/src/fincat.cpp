#include "fc/fincat.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace fc {

int FinCat::add_object(std::string label) {
    int o = (int)objects_.size();
    objects_.push_back(std::move(label));
    int id = (int)mors_.size();
    mors_.push_back({o, o, "id:" + objects_[o]});
    identity_.push_back(id);
    return o;
}

int FinCat::add_morphism(int src, int dst, std::string name) {
    int m = (int)mors_.size();
    mors_.push_back({src, dst, std::move(name)});
    return m;
}

void FinCat::set_compose(int g, int f, int gf) {
    if (comp_.empty()) comp_.assign(mors_.size(), std::vector<int>(mors_.size(), -1));
    if ((int)comp_.size() != (int)mors_.size()) throw std::logic_error("set_compose after finish/resize");
    comp_[g][f] = gf;
}

void FinCat::finish() {
    if (comp_.empty()) comp_.assign(mors_.size(), std::vector<int>(mors_.size(), -1));
    int n = (int)mors_.size();
    for (int f = 0; f < n; ++f) {
        comp_[identity_[mors_[f].dst]][f] = f;
        comp_[f][identity_[mors_[f].src]] = f;
    }
    for (int g = 0; g < n; ++g)
        for (int f = 0; f < n; ++f)
            if (mors_[f].dst == mors_[g].src && comp_[g][f] < 0)
                throw std::logic_error("composition table incomplete: " + mors_[g].name + " o " + mors_[f].name);
}

int FinCat::compose(int g, int f) const {
    if (!composable(g, f)) throw std::invalid_argument("compose: not composable");
    return comp_[g][f];
}

int FinCat::find_object(const std::string& label) const {
    for (int i = 0; i < (int)objects_.size(); ++i)
        if (objects_[i] == label) return i;
    return -1;
}

std::vector<int> FinCat::hom(int a, int b) const {
    std::vector<int> out;
    for (int m = 0; m < (int)mors_.size(); ++m)
        if (mors_[m].src == a && mors_[m].dst == b) out.push_back(m);
    return out;
}

bool FinCat::operator==(const FinCat& o) const {
    return objects_ == o.objects_ && identity_ == o.identity_ && comp_ == o.comp_ &&
           [&] {
               if (mors_.size() != o.mors_.size()) return false;
               for (size_t i = 0; i < mors_.size(); ++i)
                   if (mors_[i].src != o.mors_[i].src || mors_[i].dst != o.mors_[i].dst ||
                       mors_[i].name != o.mors_[i].name)
                       return false;
               return true;
           }();
}

ValidationReport validate_category(const FinCat& c) {
    ValidationReport rep;
    int n = c.morphism_count();
    for (int g = 0; g < n; ++g)
        for (int f = 0; f < n; ++f) {
            if (!c.composable(g, f)) continue;
            int gf = c.compose(g, f);
            if (gf < 0 || gf >= n) {
                rep.violations.push_back("composite out of range for (" + c.morph(g).name + ", " + c.morph(f).name + ")");
                continue;
            }
            if (c.src(gf) != c.src(f) || c.dst(gf) != c.dst(g))
                rep.violations.push_back("typing: " + c.morph(g).name + " o " + c.morph(f).name + " = " + c.morph(gf).name);
        }
    for (int f = 0; f < n; ++f) {
        int il = c.identity(c.dst(f)), ir = c.identity(c.src(f));
        if (c.composable(il, f) && c.compose(il, f) != f)
            rep.violations.push_back("left identity fails at " + c.morph(f).name);
        if (c.composable(f, ir) && c.compose(f, ir) != f)
            rep.violations.push_back("right identity fails at " + c.morph(f).name);
    }
    for (int h = 0; h < n; ++h)
        for (int g = 0; g < n; ++g) {
            if (!c.composable(h, g)) continue;
            int hg = c.compose(h, g);
            for (int f = 0; f < n; ++f) {
                if (!c.composable(g, f)) continue;
                int gf = c.compose(g, f);
                // mistyped composites are already reported; skip triples they break
                if (!c.composable(hg, f) || !c.composable(h, gf)) continue;
                if (c.compose(hg, f) != c.compose(h, gf))
                    rep.violations.push_back("associativity fails on (" + c.morph(h).name + ", " + c.morph(g).name +
                                             ", " + c.morph(f).name + ")");
            }
        }
    return rep;
}

FinCat terminal_category() {
    FinCat c;
    c.add_object("*");
    c.finish();
    return c;
}

FinCat empty_category() {
    FinCat c;
    c.finish();
    return c;
}

FinCat arrow_category() {
    FinCat c;
    int a = c.add_object("0"), b = c.add_object("1");
    c.add_morphism(a, b, "0->1");
    c.finish();
    return c;
}

FinCat pb_category() {
    FinCat c;
    int o0 = c.add_object("0"), o1 = c.add_object("1"), o2 = c.add_object("2");
    c.add_morphism(o0, o1, "0->1");
    c.add_morphism(o2, o1, "2->1");
    c.finish();
    return c;
}

FinCat po_category() {
    FinCat c;
    int o0 = c.add_object("0"), o1 = c.add_object("1"), o2 = c.add_object("2");
    c.add_morphism(o1, o0, "1->0");
    c.add_morphism(o1, o2, "1->2");
    c.finish();
    return c;
}

FinCat discrete_category(int n) {
    FinCat c;
    for (int i = 1; i <= n; ++i) c.add_object(std::to_string(i));
    c.finish();
    return c;
}

FinCat linear_category(int n) {
    FinCat c;
    for (int i = 0; i <= n; ++i) c.add_object(std::to_string(i));
    std::vector<std::vector<int>> arrow(n + 1, std::vector<int>(n + 1, -1));
    for (int i = 0; i <= n; ++i) arrow[i][i] = c.identity(i);
    for (int i = 0; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            arrow[i][j] = c.add_morphism(i, j, std::to_string(i) + "->" + std::to_string(j));
    for (int i = 0; i <= n; ++i)
        for (int j = i; j <= n; ++j)
            for (int k = j; k <= n; ++k) c.set_compose(arrow[j][k], arrow[i][j], arrow[i][k]);
    c.finish();
    return c;
}

bool check_functor(const CatFunctor& f, std::string* why) {
    auto fail = [&](const std::string& s) {
        if (why) *why = s;
        return false;
    };
    if ((int)f.obj_map.size() != f.source.object_count()) return fail("object map size");
    if ((int)f.mor_map.size() != f.source.morphism_count()) return fail("morphism map size");
    for (int m = 0; m < f.source.morphism_count(); ++m) {
        int fm = f.mor_map[m];
        if (fm < 0 || fm >= f.target.morphism_count()) return fail("morphism image out of range");
        if (f.target.src(fm) != f.obj_map[f.source.src(m)] || f.target.dst(fm) != f.obj_map[f.source.dst(m)])
            return fail("source/target not preserved at " + f.source.morph(m).name);
    }
    for (int o = 0; o < f.source.object_count(); ++o)
        if (f.mor_map[f.source.identity(o)] != f.target.identity(f.obj_map[o]))
            return fail("identity not preserved at " + f.source.object_label(o));
    for (int g = 0; g < f.source.morphism_count(); ++g)
        for (int m = 0; m < f.source.morphism_count(); ++m) {
            if (!f.source.composable(g, m)) continue;
            if (f.mor_map[f.source.compose(g, m)] != f.target.compose(f.mor_map[g], f.mor_map[m]))
                return fail("composition not preserved on (" + f.source.morph(g).name + ", " + f.source.morph(m).name + ")");
        }
    return true;
}

CatFunctor identity_functor(const FinCat& c) {
    CatFunctor f{c, c, {}, {}};
    f.obj_map.resize(c.object_count());
    std::iota(f.obj_map.begin(), f.obj_map.end(), 0);
    f.mor_map.resize(c.morphism_count());
    std::iota(f.mor_map.begin(), f.mor_map.end(), 0);
    return f;
}

CatFunctor compose_functors(const CatFunctor& g, const CatFunctor& f) {
    CatFunctor out{f.source, g.target, {}, {}};
    out.obj_map.reserve(f.obj_map.size());
    for (int o : f.obj_map) out.obj_map.push_back(g.obj_map[o]);
    out.mor_map.reserve(f.mor_map.size());
    for (int m : f.mor_map) out.mor_map.push_back(g.mor_map[m]);
    return out;
}

bool functor_equal(const CatFunctor& f, const CatFunctor& g) {
    return f.obj_map == g.obj_map && f.mor_map == g.mor_map;
}

FinCat opposite(const FinCat& c, std::vector<int>* mor_map) {
    FinCat out;
    for (int o = 0; o < c.object_count(); ++o) out.add_object(c.object_label(o));
    std::vector<int> tr(c.morphism_count());
    for (int m = 0; m < c.morphism_count(); ++m) {
        if (c.is_identity(m))
            tr[m] = out.identity(c.src(m));
        else
            tr[m] = out.add_morphism(c.dst(m), c.src(m), c.morph(m).name);
    }
    for (int g = 0; g < c.morphism_count(); ++g)
        for (int f = 0; f < c.morphism_count(); ++f)
            if (c.composable(g, f)) out.set_compose(tr[f], tr[g], tr[c.compose(g, f)]);
    out.finish();
    if (mor_map) *mor_map = tr;
    return out;
}

ProductCat product_with_projections(const FinCat& c, const FinCat& d) {
    ProductCat pr;
    FinCat& out = pr.cat;
    std::vector<std::vector<int>> obj(c.object_count(), std::vector<int>(d.object_count()));
    for (int a = 0; a < c.object_count(); ++a)
        for (int b = 0; b < d.object_count(); ++b) {
            obj[a][b] = out.add_object("(" + c.object_label(a) + "," + d.object_label(b) + ")");
            pr.obj_pair.push_back({a, b});
        }
    std::vector<std::vector<int>> mor(c.morphism_count(), std::vector<int>(d.morphism_count()));
    std::vector<std::pair<int, int>> mor_pair_by_id;
    mor_pair_by_id.resize((size_t)c.object_count() * d.object_count());  // identities first
    for (int a = 0; a < c.object_count(); ++a)
        for (int b = 0; b < d.object_count(); ++b) {
            mor[c.identity(a)][d.identity(b)] = out.identity(obj[a][b]);
            mor_pair_by_id[out.identity(obj[a][b])] = {c.identity(a), d.identity(b)};
        }
    for (int f = 0; f < c.morphism_count(); ++f)
        for (int g = 0; g < d.morphism_count(); ++g) {
            if (c.is_identity(f) && d.is_identity(g)) continue;
            mor[f][g] = out.add_morphism(obj[c.src(f)][d.src(g)], obj[c.dst(f)][d.dst(g)],
                                         "(" + c.morph(f).name + "," + d.morph(g).name + ")");
            mor_pair_by_id.push_back({f, g});
        }
    for (int f1 = 0; f1 < c.morphism_count(); ++f1)
        for (int g1 = 0; g1 < d.morphism_count(); ++g1)
            for (int f0 = 0; f0 < c.morphism_count(); ++f0)
                for (int g0 = 0; g0 < d.morphism_count(); ++g0) {
                    if (!c.composable(f1, f0) || !d.composable(g1, g0)) continue;
                    out.set_compose(mor[f1][g1], mor[f0][g0], mor[c.compose(f1, f0)][d.compose(g1, g0)]);
                }
    out.finish();
    pr.mor_pair = std::move(mor_pair_by_id);
    pr.proj_left.source = out;
    pr.proj_left.target = c;
    pr.proj_right.source = out;
    pr.proj_right.target = d;
    for (auto& [a, b] : pr.obj_pair) {
        pr.proj_left.obj_map.push_back(a);
        pr.proj_right.obj_map.push_back(b);
    }
    for (auto& [f, g] : pr.mor_pair) {
        pr.proj_left.mor_map.push_back(f);
        pr.proj_right.mor_map.push_back(g);
    }
    return pr;
}

FinCat product(const FinCat& c, const FinCat& d) { return product_with_projections(c, d).cat; }

CommaResult comma(const FinCat& c, int anchor, CommaVariant variant) {
    if (anchor < 0 || anchor >= c.object_count()) throw std::invalid_argument("comma: anchor not in category");
    CommaResult res;
    FinCat& out = res.cat;
    std::vector<int> under;  // underlying morphism of c, per morphism of out
    auto track = [&](int expected_id, int h) {
        if ((int)under.size() <= expected_id) under.resize(expected_id + 1, -1);
        under[expected_id] = h;
    };
    for (int m = 0; m < c.morphism_count(); ++m) {
        bool keep = variant == CommaVariant::Over ? c.dst(m) == anchor : c.src(m) == anchor;
        if (!keep) continue;
        int o = out.add_object(c.morph(m).name);
        track(out.identity(o), c.identity(variant == CommaVariant::Over ? c.src(m) : c.dst(m)));
        res.object_mor.push_back(m);
    }
    // morphisms (f -> g) are arrows h with g o h = f (over) or h o f = g (under)
    for (size_t i = 0; i < res.object_mor.size(); ++i)
        for (size_t j = 0; j < res.object_mor.size(); ++j) {
            int f = res.object_mor[i], g = res.object_mor[j];
            for (int h = 0; h < c.morphism_count(); ++h) {
                bool ok = variant == CommaVariant::Over
                              ? (c.src(h) == c.src(f) && c.dst(h) == c.src(g) && c.compose(g, h) == f)
                              : (c.src(h) == c.dst(f) && c.dst(h) == c.dst(g) && c.compose(h, f) == g);
                if (!ok) continue;
                if (i == j && c.is_identity(h)) continue;
                int id = out.add_morphism((int)i, (int)j, c.morph(h).name + "@" + out.object_label((int)i));
                track(id, h);
            }
        }
    for (int g = 0; g < out.morphism_count(); ++g)
        for (int f = 0; f < out.morphism_count(); ++f) {
            if (!out.composable(g, f)) continue;
            int h = c.compose(under[g], under[f]);
            int found = -1;
            for (int mm = 0; mm < out.morphism_count(); ++mm)
                if (out.src(mm) == out.src(f) && out.dst(mm) == out.dst(g) && under[mm] == h) {
                    found = mm;
                    break;
                }
            if (found < 0) throw std::logic_error("comma: composition left the category");
            out.set_compose(g, f, found);
        }
    out.finish();
    res.projection.source = out;
    res.projection.target = c;
    for (int f : res.object_mor)
        res.projection.obj_map.push_back(variant == CommaVariant::Over ? c.src(f) : c.dst(f));
    res.projection.mor_map = under;
    return res;
}

CommaFunctorResult comma_under_functor(int b, const CatFunctor& p) {
    const FinCat& e = p.source;
    const FinCat& base = p.target;
    if (b < 0 || b >= base.object_count()) throw std::invalid_argument("comma: anchor not in category");
    CommaFunctorResult res;
    FinCat& out = res.cat;
    std::vector<int> under;
    auto track = [&](int expected_id, int k) {
        if ((int)under.size() <= expected_id) under.resize(expected_id + 1, -1);
        under[expected_id] = k;
    };
    for (int x = 0; x < e.object_count(); ++x)
        for (int u = 0; u < base.morphism_count(); ++u)
            if (base.src(u) == b && base.dst(u) == p.obj_map[x]) {
                int o = out.add_object("(" + e.object_label(x) + "," + base.morph(u).name + ")");
                track(out.identity(o), e.identity(x));
                res.objects.push_back({x, u});
            }
    for (size_t i = 0; i < res.objects.size(); ++i)
        for (size_t j = 0; j < res.objects.size(); ++j) {
            auto [x, u] = res.objects[i];
            auto [y, v] = res.objects[j];
            for (int k = 0; k < e.morphism_count(); ++k) {
                if (e.src(k) != x || e.dst(k) != y) continue;
                if (base.compose(p.mor_map[k], u) != v) continue;
                if (i == j && e.is_identity(k)) continue;
                int id = out.add_morphism((int)i, (int)j, e.morph(k).name + "@" + out.object_label((int)i));
                track(id, k);
            }
        }
    for (int g = 0; g < out.morphism_count(); ++g)
        for (int f = 0; f < out.morphism_count(); ++f) {
            if (!out.composable(g, f)) continue;
            int ke = e.compose(under[g], under[f]);
            int found = -1;
            for (int mm = 0; mm < out.morphism_count(); ++mm)
                if (out.src(mm) == out.src(f) && out.dst(mm) == out.dst(g) && under[mm] == ke) {
                    found = mm;
                    break;
                }
            if (found < 0) throw std::logic_error("comma_under_functor: composition left the category");
            out.set_compose(g, f, found);
        }
    out.finish();
    res.projection.source = out;
    res.projection.target = e;
    for (auto& [x, u] : res.objects) {
        res.projection.obj_map.push_back(x);
        (void)u;
    }
    res.projection.mor_map = under;
    return res;
}

bool is_loop_free(const FinCat& c) {
    for (int m = 0; m < c.morphism_count(); ++m)
        if (c.src(m) == c.dst(m) && !c.is_identity(m)) return false;
    // reachability antisymmetry
    int n = c.object_count();
    std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
    for (int i = 0; i < n; ++i) reach[i][i] = 1;
    for (int m = 0; m < c.morphism_count(); ++m) reach[c.src(m)][c.dst(m)] = 1;
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (reach[i][k] && reach[k][j]) reach[i][j] = 1;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && reach[i][j] && reach[j][i]) return false;
    return true;
}

namespace {

struct Profile {
    int indeg = 0, outdeg = 0, endos = 0;
    bool operator==(const Profile&) const = default;
    bool operator<(const Profile& o) const {
        return std::tie(indeg, outdeg, endos) < std::tie(o.indeg, o.outdeg, o.endos);
    }
};

std::vector<Profile> profiles(const FinCat& c) {
    std::vector<Profile> p(c.object_count());
    for (int m = 0; m < c.morphism_count(); ++m) {
        if (c.is_identity(m)) continue;
        p[c.src(m)].outdeg++;
        p[c.dst(m)].indeg++;
        if (c.src(m) == c.dst(m)) p[c.src(m)].endos++;
    }
    return p;
}

bool extend_morphisms(const FinCat& c, const FinCat& d, const std::vector<int>& obj_iso, CatFunctor& out) {
    // object bijection fixed; match morphisms hom-set by hom-set
    out.mor_map.assign(c.morphism_count(), -1);
    std::vector<char> used(d.morphism_count(), 0);
    struct Slot {
        std::vector<int> src_moms, dst_moms;
    };
    std::vector<Slot> slots;
    for (int a = 0; a < c.object_count(); ++a)
        for (int b = 0; b < c.object_count(); ++b) {
            auto hc = c.hom(a, b);
            if (hc.empty()) continue;
            auto hd = d.hom(obj_iso[a], obj_iso[b]);
            if (hc.size() != hd.size()) return false;
            slots.push_back({hc, hd});
        }
    // identities are forced
    for (int o = 0; o < c.object_count(); ++o) {
        out.mor_map[c.identity(o)] = d.identity(obj_iso[o]);
        used[d.identity(obj_iso[o])] = 1;
    }
    // backtracking over the remaining hom entries
    std::vector<std::pair<int, std::vector<int>>> vars;  // (morphism of c, candidates in d)
    for (auto& s : slots)
        for (int m : s.src_moms) {
            if (c.is_identity(m)) continue;
            std::vector<int> cands;
            for (int mm : s.dst_moms)
                if (!d.is_identity(mm)) cands.push_back(mm);
            vars.push_back({m, cands});
        }
    std::function<bool(size_t)> go = [&](size_t k) -> bool {
        if (k == vars.size()) {
            // full functoriality both ways
            std::string why;
            if (!check_functor(out, &why)) return false;
            return true;
        }
        auto& [m, cands] = vars[k];
        for (int mm : cands) {
            if (used[mm]) continue;
            out.mor_map[m] = mm;
            used[mm] = 1;
            // partial consistency: composites among already-assigned must match
            bool ok = true;
            for (size_t k2 = 0; k2 <= k && ok; ++k2) {
                int m2 = vars[k2].first;
                if (c.composable(m, m2)) {
                    int comp = out.mor_map[c.compose(m, m2)];
                    if (comp >= 0 && comp != d.compose(mm, out.mor_map[m2])) ok = false;
                }
                if (ok && c.composable(m2, m)) {
                    int comp = out.mor_map[c.compose(m2, m)];
                    if (comp >= 0 && comp != d.compose(out.mor_map[m2], mm)) ok = false;
                }
            }
            if (ok && go(k + 1)) return true;
            used[mm] = 0;
            out.mor_map[m] = -1;
        }
        return false;
    };
    return go(0);
}

}  // namespace

std::optional<CatFunctor> find_isomorphism(const FinCat& c, const FinCat& d) {
    if (c.object_count() > 64 || d.object_count() > 64)
        throw GuardError("find_isomorphism: object count exceeds guard (64)");
    if (c.object_count() != d.object_count() || c.morphism_count() != d.morphism_count()) return std::nullopt;
    auto pc = profiles(c), pd = profiles(d);
    {
        auto a = pc, b = pd;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (!(a == b)) return std::nullopt;
    }
    int n = c.object_count();
    // order source objects by profile rarity for early pruning
    std::map<Profile, int> freq;
    for (auto& p : pd) freq[p]++;
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (freq[pc[a]] != freq[pc[b]]) return freq[pc[a]] < freq[pc[b]];
        return a < b;
    });
    std::vector<int> obj_iso(n, -1);
    std::vector<char> used(n, 0);
    std::optional<CatFunctor> result;
    std::function<bool(int)> assign = [&](int k) -> bool {
        if (k == n) {
            CatFunctor f{c, d, obj_iso, {}};
            if (extend_morphisms(c, d, obj_iso, f)) {
                result = f;
                return true;
            }
            return false;
        }
        int a = order[k];
        for (int b = 0; b < n; ++b) {
            if (used[b] || !(pc[a] == pd[b])) continue;
            bool ok = true;
            for (int k2 = 0; k2 < k && ok; ++k2) {
                int a2 = order[k2];
                if (c.hom(a, a2).size() != d.hom(b, obj_iso[a2]).size()) ok = false;
                if (ok && c.hom(a2, a).size() != d.hom(obj_iso[a2], b).size()) ok = false;
            }
            if (!ok) continue;
            obj_iso[a] = b;
            used[b] = 1;
            if (assign(k + 1)) return true;
            obj_iso[a] = -1;
            used[b] = 0;
        }
        return false;
    };
    if (assign(0)) return result;
    return std::nullopt;
}

ChainIndex enumerate_chains(const FinCat& c) {
    if (!is_loop_free(c)) throw GuardError("enumerate_chains: category has loops, nerve is infinite-dimensional");
    ChainIndex idx;
    idx.by_dim.push_back({});
    for (int o = 0; o < c.object_count(); ++o) idx.by_dim[0].push_back({{o}, {}});
    while (true) {
        auto& prev = idx.by_dim.back();
        std::vector<Chain> next;
        for (auto& ch : prev)
            for (int m = 0; m < c.morphism_count(); ++m) {
                if (c.is_identity(m) || c.src(m) != ch.objects.back()) continue;
                Chain ext = ch;
                ext.objects.push_back(c.dst(m));
                ext.mors.push_back(m);
                next.push_back(std::move(ext));
            }
        if (next.empty()) break;
        idx.by_dim.push_back(std::move(next));
    }
    // face tables
    idx.face.resize(idx.by_dim.size());
    for (size_t p = 1; p < idx.by_dim.size(); ++p) {
        idx.face[p].resize(idx.by_dim[p].size());
        for (size_t i = 0; i < idx.by_dim[p].size(); ++i) {
            const Chain& ch = idx.by_dim[p][i];
            idx.face[p][i].assign(p + 1, -1);
            for (size_t f = 0; f <= p; ++f) {
                Chain fc;
                bool degenerate = false;
                if (f == 0) {
                    fc.objects.assign(ch.objects.begin() + 1, ch.objects.end());
                    fc.mors.assign(ch.mors.begin() + 1, ch.mors.end());
                } else if (f == p) {
                    fc.objects.assign(ch.objects.begin(), ch.objects.end() - 1);
                    fc.mors.assign(ch.mors.begin(), ch.mors.end() - 1);
                } else {
                    fc = ch;
                    int comp = c.compose(ch.mors[f], ch.mors[f - 1]);
                    if (c.is_identity(comp)) degenerate = true;
                    fc.objects.erase(fc.objects.begin() + f);
                    fc.mors.erase(fc.mors.begin() + f - 1, fc.mors.begin() + f + 1);
                    fc.mors.insert(fc.mors.begin() + (f - 1), comp);
                }
                if (!degenerate) idx.face[p][i][f] = idx.find((int)p - 1, fc);
            }
        }
    }
    return idx;
}

int ChainIndex::find(int k, const Chain& c) const {
    const auto& v = by_dim[k];
    for (size_t i = 0; i < v.size(); ++i)
        if (v[i].objects == c.objects && v[i].mors == c.mors) return (int)i;
    return -1;
}

ValidationReport validate_set_diagram(const FinSetDiagram& x) {
    ValidationReport rep;
    const FinCat& j = x.shape;
    if ((int)x.size.size() != j.object_count()) {
        rep.violations.push_back("value table size mismatch");
        return rep;
    }
    if ((int)x.action.size() != j.morphism_count()) {
        rep.violations.push_back("action table size mismatch");
        return rep;
    }
    for (int m = 0; m < j.morphism_count(); ++m) {
        if ((int)x.action[m].size() != x.size[j.src(m)]) {
            rep.violations.push_back("action domain mismatch at " + j.morph(m).name);
            continue;
        }
        for (int v : x.action[m])
            if (v < 0 || v >= x.size[j.dst(m)]) rep.violations.push_back("action range at " + j.morph(m).name);
    }
    if (!rep.ok()) return rep;
    for (int o = 0; o < j.object_count(); ++o)
        for (int e = 0; e < x.size[o]; ++e)
            if (x.action[j.identity(o)][e] != e) {
                rep.violations.push_back("identity not preserved at " + j.object_label(o));
                break;
            }
    for (int g = 0; g < j.morphism_count(); ++g)
        for (int f = 0; f < j.morphism_count(); ++f) {
            if (!j.composable(g, f)) continue;
            int gf = j.compose(g, f);
            for (int e = 0; e < x.size[j.src(f)]; ++e)
                if (x.action[g][x.action[f][e]] != x.action[gf][e]) {
                    rep.violations.push_back("functoriality fails on (" + j.morph(g).name + ", " + j.morph(f).name + ")");
                    break;
                }
        }
    return rep;
}

namespace {
struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};
}  // namespace

SetColimit set_colimit(const FinSetDiagram& x) {
    const FinCat& j = x.shape;
    std::vector<int> offset(j.object_count() + 1, 0);
    for (int o = 0; o < j.object_count(); ++o) offset[o + 1] = offset[o] + x.size[o];
    UnionFind uf(offset.back());
    for (int m = 0; m < j.morphism_count(); ++m)
        for (int e = 0; e < x.size[j.src(m)]; ++e)
            uf.unite(offset[j.src(m)] + e, offset[j.dst(m)] + x.action[m][e]);
    // classes numbered in order of first appearance
    std::map<int, int> cls;
    for (int i = 0; i < offset.back(); ++i) {
        int r = uf.find(i);
        if (!cls.count(r)) cls[r] = (int)cls.size();
    }
    SetColimit out;
    out.size = (int)cls.size();
    out.cocone.resize(j.object_count());
    for (int o = 0; o < j.object_count(); ++o) {
        out.cocone[o].resize(x.size[o]);
        for (int e = 0; e < x.size[o]; ++e) out.cocone[o][e] = cls[uf.find(offset[o] + e)];
    }
    // spot-check: the cocone commutes, and the quotient is exactly the set of
    // components of the element graph (recomputed by a plain traversal)
    for (int m = 0; m < j.morphism_count(); ++m)
        for (int e = 0; e < x.size[j.src(m)]; ++e)
            if (out.cocone[j.dst(m)][x.action[m][e]] != out.cocone[j.src(m)][e])
                throw std::logic_error("set_colimit: cocone does not commute");
    {
        std::vector<std::vector<int>> adj(offset.back());
        for (int m = 0; m < j.morphism_count(); ++m)
            for (int e = 0; e < x.size[j.src(m)]; ++e) {
                adj[offset[j.src(m)] + e].push_back(offset[j.dst(m)] + x.action[m][e]);
                adj[offset[j.dst(m)] + x.action[m][e]].push_back(offset[j.src(m)] + e);
            }
        std::vector<int> seen(offset.back(), -1);
        int comps = 0;
        for (int i = 0; i < offset.back(); ++i) {
            if (seen[i] >= 0) continue;
            std::vector<int> stack = {i};
            seen[i] = comps;
            while (!stack.empty()) {
                int v = stack.back();
                stack.pop_back();
                for (int w : adj[v])
                    if (seen[w] < 0) {
                        seen[w] = comps;
                        stack.push_back(w);
                    }
            }
            ++comps;
        }
        if (comps != out.size) throw std::logic_error("set_colimit: quotient misses the component count");
    }
    return out;
}

SetLimit set_limit(const FinSetDiagram& x) {
    const FinCat& j = x.shape;
    long long prod = 1;
    for (int s : x.size) {
        prod *= std::max(s, 1);
        if (prod > 1000000) throw GuardError("set_limit: product exceeds guard");
    }
    SetLimit out;
    std::vector<int> tuple(j.object_count(), 0);
    std::function<void(int)> go = [&](int o) {
        if (o == j.object_count()) {
            out.elements.push_back(tuple);
            return;
        }
        for (int e = 0; e < x.size[o]; ++e) {
            tuple[o] = e;
            bool ok = true;
            for (int m = 0; m < j.morphism_count() && ok; ++m) {
                int s = j.src(m), d = j.dst(m);
                if (s <= o && d <= o && x.action[m][tuple[s]] != tuple[d]) ok = false;
            }
            if (ok) go(o + 1);
        }
    };
    go(0);
    // spot-check: every returned tuple is a matching family under every arrow
    for (auto& tuple : out.elements)
        for (int m = 0; m < j.morphism_count(); ++m)
            if (x.action[m][tuple[j.src(m)]] != tuple[j.dst(m)])
                throw std::logic_error("set_limit: tuple is not a matching family");
    return out;
}

}  // namespace fc
