#include "fc/groth.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace fc {

ValidationReport validate_cat_diagram(const CatDiagram& psi) {
    ValidationReport rep;
    const FinCat& b = psi.base;
    if ((int)psi.fiber.size() != b.object_count() || (int)psi.transition.size() != b.morphism_count()) {
        rep.violations.push_back("fiber/transition table size mismatch");
        return rep;
    }
    bool contra = psi.variance == Variance::Contravariant;
    for (int m = 0; m < b.morphism_count(); ++m) {
        const CatFunctor& t = psi.transition[m];
        int from = contra ? b.dst(m) : b.src(m);
        int to = contra ? b.src(m) : b.dst(m);
        if (!(t.source == psi.fiber[from]) || !(t.target == psi.fiber[to]))
            rep.violations.push_back("transition endpoints wrong at " + b.morph(m).name);
        std::string why;
        if (!check_functor(t, &why)) rep.violations.push_back("transition not a functor at " + b.morph(m).name + ": " + why);
    }
    if (!rep.ok()) return rep;
    for (int o = 0; o < b.object_count(); ++o)
        if (!functor_equal(psi.transition[b.identity(o)], identity_functor(psi.fiber[o])))
            rep.violations.push_back("identity transition not the identity at " + b.object_label(o));
    for (int g = 0; g < b.morphism_count(); ++g)
        for (int f = 0; f < b.morphism_count(); ++f) {
            if (!b.composable(g, f)) continue;
            int gf = b.compose(g, f);
            CatFunctor expect = contra ? compose_functors(psi.transition[f], psi.transition[g])
                                       : compose_functors(psi.transition[g], psi.transition[f]);
            if (!functor_equal(psi.transition[gf], expect))
                rep.violations.push_back("transitions not functorial on (" + b.morph(g).name + ", " + b.morph(f).name + ")");
        }
    return rep;
}

int GrothResult::object_of(int base_obj, int fiber_obj) const {
    auto it = obj_lookup.find({base_obj, fiber_obj});
    return it == obj_lookup.end() ? -1 : it->second;
}

int GrothResult::morphism_of(int src_obj, int dst_obj, int base_mor, int fiber_mor) const {
    auto it = mor_lookup.find({src_obj, dst_obj, base_mor, fiber_mor});
    return it == mor_lookup.end() ? -1 : it->second;
}

GrothResult groth(const CatDiagram& psi) {
    ValidationReport rep = validate_cat_diagram(psi);
    if (!rep.ok()) throw std::invalid_argument("groth: invalid CatDiagram: " + rep.violations.front());
    const FinCat& b = psi.base;
    bool contra = psi.variance == Variance::Contravariant;
    GrothResult res;
    FinCat& total = res.total;

    for (int bo = 0; bo < b.object_count(); ++bo)
        for (int x = 0; x < psi.fiber[bo].object_count(); ++x) {
            int o = total.add_object("(" + b.object_label(bo) + "," + psi.fiber[bo].object_label(x) + ")");
            res.obj_pair.push_back({bo, x});
            res.obj_lookup[{bo, x}] = o;
            // identity is (id_b, id_x)
            if ((int)res.mor_pair.size() <= total.identity(o)) res.mor_pair.resize(total.identity(o) + 1, {-1, -1});
            res.mor_pair[total.identity(o)] = {b.identity(bo), psi.fiber[bo].identity(x)};
            res.mor_lookup[{o, o, b.identity(bo), psi.fiber[bo].identity(x)}] = total.identity(o);
        }

    // arrows (b,x) -> (b',y): pairs (u: b->b', f) with
    //   contravariant: f: x -> Psi(u)(y) in Psi(b)
    //   covariant:     f: Psi(u)(x) -> y in Psi(b')
    for (int u = 0; u < b.morphism_count(); ++u) {
        const CatFunctor& t = psi.transition[u];
        int bs = b.src(u), bd = b.dst(u);
        const FinCat& fs = psi.fiber[bs];
        const FinCat& fd = psi.fiber[bd];
        const FinCat& home = contra ? fs : fd;
        for (int x = 0; x < fs.object_count(); ++x)
            for (int y = 0; y < fd.object_count(); ++y) {
                int from = contra ? x : t.obj_map[x];
                int to = contra ? t.obj_map[y] : y;
                for (int f : home.hom(from, to)) {
                    if (b.is_identity(u) && home.is_identity(f)) continue;
                    int src = res.object_of(bs, x), dst = res.object_of(bd, y);
                    int m = total.add_morphism(src, dst,
                                               "(" + b.morph(u).name + "," + home.morph(f).name + ")");
                    if ((int)res.mor_pair.size() <= m) res.mor_pair.resize(m + 1, {-1, -1});
                    res.mor_pair[m] = {u, f};
                    res.mor_lookup[{src, dst, u, f}] = m;
                }
            }
    }

    for (int m2 = 0; m2 < total.morphism_count(); ++m2)
        for (int m1 = 0; m1 < total.morphism_count(); ++m1) {
            if (!total.composable(m2, m1)) continue;
            auto [u, f] = res.mor_pair[m1];
            auto [v, g] = res.mor_pair[m2];
            int vu = b.compose(v, u);
            int comp_fiber;
            if (contra) {
                // Psi(u)(g) o f in Psi(src u)
                int tg = psi.transition[u].mor_map[g];
                comp_fiber = psi.fiber[b.src(u)].compose(tg, f);
            } else {
                // g o Psi(v)(f) in Psi(dst v)
                int tf = psi.transition[v].mor_map[f];
                comp_fiber = psi.fiber[b.dst(v)].compose(g, tf);
            }
            int found = res.morphism_of(total.src(m1), total.dst(m2), vu, comp_fiber);
            if (found < 0) throw std::logic_error("groth: composite missing");
            total.set_compose(m2, m1, found);
        }
    total.finish();

    res.projection.source = total;
    res.projection.target = b;
    for (auto& [bo, x] : res.obj_pair) {
        res.projection.obj_map.push_back(bo);
        (void)x;
    }
    for (auto& [u, f] : res.mor_pair) {
        res.projection.mor_map.push_back(u);
        (void)f;
    }
    for (int bo = 0; bo < b.object_count(); ++bo) {
        CatFunctor inc;
        inc.source = psi.fiber[bo];
        inc.target = total;
        for (int x = 0; x < psi.fiber[bo].object_count(); ++x) inc.obj_map.push_back(res.object_of(bo, x));
        for (int f = 0; f < psi.fiber[bo].morphism_count(); ++f) {
            const FinCat& fib = psi.fiber[bo];
            inc.mor_map.push_back(res.morphism_of(res.object_of(bo, fib.src(f)), res.object_of(bo, fib.dst(f)),
                                                  b.identity(bo), f));
        }
        res.fiber_inclusion.push_back(std::move(inc));
    }
    return res;
}

PlusResult plus(const FinCat& j) {
    PlusResult res;
    FinCat& out = res.cat;
    res.init_obj = out.add_object("∅");
    res.obj_map.resize(j.object_count());
    res.mor_map.resize(j.morphism_count(), -1);
    for (int o = 0; o < j.object_count(); ++o) {
        res.obj_map[o] = out.add_object(j.object_label(o));
        res.mor_map[j.identity(o)] = out.identity(res.obj_map[o]);
    }
    for (int m = 0; m < j.morphism_count(); ++m)
        if (!j.is_identity(m)) res.mor_map[m] = out.add_morphism(res.obj_map[j.src(m)], res.obj_map[j.dst(m)], j.morph(m).name);
    res.arrow_from_init.assign(out.object_count(), -1);
    res.arrow_from_init[res.init_obj] = out.identity(res.init_obj);
    for (int o = 0; o < j.object_count(); ++o)
        res.arrow_from_init[res.obj_map[o]] = out.add_morphism(res.init_obj, res.obj_map[o], "∅->" + j.object_label(o));
    for (int g = 0; g < j.morphism_count(); ++g)
        for (int f = 0; f < j.morphism_count(); ++f)
            if (j.composable(g, f)) out.set_compose(res.mor_map[g], res.mor_map[f], res.mor_map[j.compose(g, f)]);
    for (int m = 0; m < j.morphism_count(); ++m)
        out.set_compose(res.mor_map[m], res.arrow_from_init[res.obj_map[j.src(m)]],
                        res.arrow_from_init[res.obj_map[j.dst(m)]]);
    out.finish();
    res.inclusion.source = j;
    res.inclusion.target = out;
    res.inclusion.obj_map = res.obj_map;
    res.inclusion.mor_map = res.mor_map;
    return res;
}

IntPbResult int_pb(const FinCat& j) {
    if (j.object_count() == 0) throw GuardError("int_pb: J must be nonempty");
    CatDiagram psi;
    psi.base = pb_category();
    psi.variance = Variance::Contravariant;
    FinCat term = terminal_category();
    psi.fiber = {j, j, term};
    psi.transition.resize(psi.base.morphism_count());
    for (int o = 0; o < 3; ++o) psi.transition[psi.base.identity(o)] = identity_functor(psi.fiber[o]);
    // arrow 0->1 : Psi(1) -> Psi(0) is the identity of J
    // arrow 2->1 : Psi(1) -> Psi(2) collapses J to the point
    CatFunctor collapse;
    collapse.source = j;
    collapse.target = term;
    collapse.obj_map.assign(j.object_count(), 0);
    collapse.mor_map.assign(j.morphism_count(), term.identity(0));
    int a01 = -1, a21 = -1;
    for (int m = 0; m < psi.base.morphism_count(); ++m) {
        if (psi.base.is_identity(m)) continue;
        if (psi.base.src(m) == 0) a01 = m;
        if (psi.base.src(m) == 2) a21 = m;
    }
    psi.transition[a01] = identity_functor(j);
    psi.transition[a21] = collapse;

    IntPbResult res;
    res.g = groth(psi);
    res.tau0.source = j;
    res.tau0.target = res.g.total;
    res.tau1.source = j;
    res.tau1.target = res.g.total;
    for (int o = 0; o < j.object_count(); ++o) {
        res.tau0.obj_map.push_back(res.g.object_of(0, o));
        res.tau1.obj_map.push_back(res.g.object_of(1, o));
    }
    for (int m = 0; m < j.morphism_count(); ++m) {
        res.tau0.mor_map.push_back(res.g.morphism_of(res.g.object_of(0, j.src(m)), res.g.object_of(0, j.dst(m)),
                                                     psi.base.identity(0), m));
        res.tau1.mor_map.push_back(res.g.morphism_of(res.g.object_of(1, j.src(m)), res.g.object_of(1, j.dst(m)),
                                                     psi.base.identity(1), m));
    }
    return res;
}

JnResult jn(const FinCat& j, int n, int max_total_objects) {
    if (j.object_count() == 0) throw GuardError("jn: J must be nonempty");
    if (n < 1) throw std::invalid_argument("jn: n must be positive");
    JnResult res;
    res.stage.push_back(j);
    long long total = j.object_count();
    for (int k = 1; k < n; ++k) {
        total = 2 * total + 1;
        if (total > max_total_objects) throw GuardError("jn: object count exceeds guard");
        // the next stage has 3m + o + 1 morphisms; its dense composition
        // table must stay desk-sized
        long long next_mors = 3LL * res.stage.back().morphism_count() + res.stage.back().object_count() + 1;
        if (next_mors > 3000) throw GuardError("jn: morphism table exceeds guard");
        IntPbResult step = int_pb(res.stage.back());
        res.tau0.push_back(step.tau0);
        res.tau1.push_back(step.tau1);
        res.stage.push_back(step.g.total);
        res.step.push_back(std::move(step));
    }
    return res;
}

namespace {
std::string mask_label(unsigned mask) {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (int i = 0; i < 32; ++i)
        if (mask & (1u << i)) {
            if (!first) os << ",";
            os << (i + 1);
            first = false;
        }
    os << "}";
    return os.str();
}
}  // namespace

PowersetResult powerset(int n, PowersetVariant variant) {
    if (n < 0 || n > 12) throw GuardError("powerset: n exceeds guard (12)");
    PowersetResult res;
    unsigned full = (1u << n) - 1;
    for (unsigned m = 0; m <= full; ++m) {
        if (variant == PowersetVariant::Punctured && m == 0) continue;
        if (variant == PowersetVariant::Copunctured && m == full) continue;
        int o = res.cat.add_object(mask_label(m));
        res.mask.push_back(m);
        res.object_of_mask[m] = o;
    }
    int nobj = res.cat.object_count();
    std::vector<std::vector<int>> arrow(nobj, std::vector<int>(nobj, -1));
    for (int a = 0; a < nobj; ++a) arrow[a][a] = res.cat.identity(a);
    for (int a = 0; a < nobj; ++a)
        for (int b = 0; b < nobj; ++b) {
            if (a == b) continue;
            if ((res.mask[a] & res.mask[b]) == res.mask[a])
                arrow[a][b] = res.cat.add_morphism(a, b, mask_label(res.mask[a]) + "<=" + mask_label(res.mask[b]));
        }
    for (int a = 0; a < nobj; ++a)
        for (int b = 0; b < nobj; ++b)
            for (int c = 0; c < nobj; ++c)
                if (arrow[a][b] >= 0 && arrow[b][c] >= 0) res.cat.set_compose(arrow[b][c], arrow[a][b], arrow[a][c]);
    res.cat.finish();
    return res;
}

namespace {
CatFunctor powerset_tau(int n, bool add_new) {
    PowersetResult src = powerset(n, PowersetVariant::Punctured);
    PowersetResult dst = powerset(n + 1, PowersetVariant::Punctured);
    CatFunctor f;
    f.source = src.cat;
    f.target = dst.cat;
    unsigned extra = add_new ? (1u << n) : 0u;
    for (int o = 0; o < src.cat.object_count(); ++o) f.obj_map.push_back(dst.object_of_mask.at(src.mask[o] | extra));
    for (int m = 0; m < src.cat.morphism_count(); ++m) {
        int a = f.obj_map[src.cat.src(m)], b = f.obj_map[src.cat.dst(m)];
        auto h = dst.cat.hom(a, b);
        f.mor_map.push_back(h.front());
    }
    return f;
}
}  // namespace

CatFunctor powerset_tau0(int n) { return powerset_tau(n, false); }
CatFunctor powerset_tau1(int n) { return powerset_tau(n, true); }

IntPoResult int_po(int s) {
    if (s <= 0) throw GuardError("int_po: S must be nonempty");
    FinCat disc = discrete_category(s);
    CatDiagram psi;
    psi.base = po_category();
    psi.variance = Variance::Covariant;
    FinCat term = terminal_category();
    psi.fiber = {disc, disc, term};
    psi.transition.resize(psi.base.morphism_count());
    for (int o = 0; o < 3; ++o) psi.transition[psi.base.identity(o)] = identity_functor(psi.fiber[o]);
    CatFunctor collapse;
    collapse.source = disc;
    collapse.target = term;
    collapse.obj_map.assign(disc.object_count(), 0);
    collapse.mor_map.assign(disc.morphism_count(), term.identity(0));
    int a10 = -1, a12 = -1;
    for (int m = 0; m < psi.base.morphism_count(); ++m) {
        if (psi.base.is_identity(m)) continue;
        if (psi.base.dst(m) == 0) a10 = m;
        if (psi.base.dst(m) == 2) a12 = m;
    }
    psi.transition[a10] = identity_functor(disc);
    psi.transition[a12] = collapse;
    IntPoResult res;
    res.g = groth(psi);
    res.body_obj = res.g.object_of(2, 0);
    return res;
}

TwistedResult twisted_arrow(const FinCat& j) {
    TwistedResult res;
    FinCat& out = res.cat;
    for (int m = 0; m < j.morphism_count(); ++m) {
        int o = out.add_object(j.morph(m).name);
        res.object_mor.push_back(m);
        if ((int)res.mor_pair.size() <= out.identity(o)) res.mor_pair.resize(out.identity(o) + 1, {-1, -1});
        res.mor_pair[out.identity(o)] = {j.identity(j.src(m)), j.identity(j.dst(m))};
    }
    // map f -> f' is (u: src f -> src f', w: dst f' -> dst f) with w o f' o u = f
    for (size_t i = 0; i < res.object_mor.size(); ++i)
        for (size_t k = 0; k < res.object_mor.size(); ++k) {
            int f = res.object_mor[i], f2 = res.object_mor[k];
            for (int u = 0; u < j.morphism_count(); ++u) {
                if (j.src(u) != j.src(f) || j.dst(u) != j.src(f2)) continue;
                for (int w = 0; w < j.morphism_count(); ++w) {
                    if (j.src(w) != j.dst(f2) || j.dst(w) != j.dst(f)) continue;
                    if (j.compose(w, j.compose(f2, u)) != f) continue;
                    if (i == k && j.is_identity(u) && j.is_identity(w)) continue;
                    int m = out.add_morphism((int)i, (int)k, "(" + j.morph(u).name + "," + j.morph(w).name + ")");
                    if ((int)res.mor_pair.size() <= m) res.mor_pair.resize(m + 1, {-1, -1});
                    res.mor_pair[m] = {u, w};
                }
            }
        }
    for (int m2 = 0; m2 < out.morphism_count(); ++m2)
        for (int m1 = 0; m1 < out.morphism_count(); ++m1) {
            if (!out.composable(m2, m1)) continue;
            auto [u1, w1] = res.mor_pair[m1];
            auto [u2, w2] = res.mor_pair[m2];
            int u = j.compose(u2, u1), w = j.compose(w1, w2);
            int found = res.morphism_of(out.src(m1), out.dst(m2), u, w);
            if (found < 0) throw std::logic_error("twisted_arrow: composite missing");
            out.set_compose(m2, m1, found);
        }
    out.finish();
    return res;
}

int TwistedResult::object_of(int m) const {
    for (size_t i = 0; i < object_mor.size(); ++i)
        if (object_mor[i] == m) return (int)i;
    return -1;
}

int TwistedResult::morphism_of(int src_obj, int dst_obj, int u, int w) const {
    for (int m = 0; m < cat.morphism_count(); ++m)
        if (cat.src(m) == src_obj && cat.dst(m) == dst_obj && mor_pair[m] == std::make_pair(u, w)) return m;
    return -1;
}

XiResult xi(int s) {
    XiResult res;
    res.spider = int_po(s);
    res.splus = plus(discrete_category(s));
    res.twisted = twisted_arrow(res.splus.cat);
    const FinCat& spider = res.spider.g.total;
    const FinCat& sp = res.splus.cat;
    CatFunctor& f = res.iso;
    f.source = spider;
    f.target = res.twisted.cat;
    f.obj_map.resize(spider.object_count());
    for (int o = 0; o < spider.object_count(); ++o) {
        auto [b, x] = res.spider.g.obj_pair[o];
        int target_mor;
        if (b == 0)
            target_mor = sp.identity(res.splus.obj_map[x]);  // (0,j) -> Id_j
        else if (b == 1)
            target_mor = res.splus.arrow_from_init[res.splus.obj_map[x]];  // (1,j) -> (initial -> j)
        else
            target_mor = sp.identity(res.splus.init_obj);  // body -> Id_initial
        f.obj_map[o] = res.twisted.object_of(target_mor);
    }
    f.mor_map.resize(spider.morphism_count());
    for (int m = 0; m < spider.morphism_count(); ++m) {
        if (spider.is_identity(m)) {
            f.mor_map[m] = res.twisted.cat.identity(f.obj_map[spider.src(m)]);
            continue;
        }
        auto [b, x] = res.spider.g.obj_pair[spider.src(m)];
        auto [b2, x2] = res.spider.g.obj_pair[spider.dst(m)];
        (void)x2;
        int u, w;
        int jx = res.splus.obj_map[x];
        if (b == 1 && b2 == 0) {  // (1,j) -> (0,j): (u = init->j, w = id_j)
            u = res.splus.arrow_from_init[jx];
            w = sp.identity(jx);
        } else if (b == 1 && b2 == 2) {  // (1,j) -> body: (u = id_init, w = init->j)
            u = sp.identity(res.splus.init_obj);
            w = res.splus.arrow_from_init[jx];
        } else {
            throw std::logic_error("xi: unexpected spider morphism");
        }
        f.mor_map[m] = res.twisted.morphism_of(f.obj_map[spider.src(m)], f.obj_map[spider.dst(m)], u, w);
        if (f.mor_map[m] < 0) throw std::logic_error("xi: image morphism missing");
    }
    std::string why;
    if (!check_functor(f, &why)) throw std::logic_error("xi: not a functor: " + why);
    return res;
}

CatFunctor cube_iso(const JnResult& tower, int k) {
    // iso from tower.stage[k] (= *(k+1) when the tower starts at the point)
    // onto P0(k+1), built by the inductive subset formulas
    PowersetResult target = powerset(k + 1, PowersetVariant::Punctured);
    std::vector<std::vector<unsigned>> mask_of;  // per stage, per object
    mask_of.push_back({1u});                     // *(1): the point is {1}
    for (int i = 0; i < k; ++i) {
        const GrothResult& g = tower.step[i].g;
        std::vector<unsigned> cur(g.total.object_count());
        for (int o = 0; o < g.total.object_count(); ++o) {
            auto [b, x] = g.obj_pair[o];
            if (b == 0)
                cur[o] = mask_of[i][x];
            else if (b == 1)
                cur[o] = mask_of[i][x] | (1u << (i + 1));
            else
                cur[o] = 1u << (i + 1);
        }
        mask_of.push_back(std::move(cur));
    }
    const FinCat& src = tower.stage[k];
    CatFunctor f;
    f.source = src;
    f.target = target.cat;
    for (int o = 0; o < src.object_count(); ++o) f.obj_map.push_back(target.object_of_mask.at(mask_of[k][o]));
    for (int m = 0; m < src.morphism_count(); ++m) {
        auto h = target.cat.hom(f.obj_map[src.src(m)], f.obj_map[src.dst(m)]);
        if (h.size() != 1) throw std::logic_error("cube_iso: hom not a singleton");
        f.mor_map.push_back(h.front());
    }
    std::string why;
    if (!check_functor(f, &why)) throw std::logic_error("cube_iso: not a functor: " + why);
    return f;
}

CoendResult coend_via_twisted(const PlusResult& jplus, const FinSetDiagram& z) {
    const FinCat& jp = jplus.cat;
    std::vector<int> op_mor;
    FinCat jp_op = opposite(jp, &op_mor);
    ProductCat prod = product_with_projections(jp_op, jp);
    if (!(z.shape == prod.cat)) throw std::invalid_argument("coend: Z must live on (J+)^op x (J+)");
    std::map<std::pair<int, int>, int> prod_obj, prod_mor;
    for (int o = 0; o < prod.cat.object_count(); ++o) prod_obj[prod.obj_pair[o]] = o;
    for (int m = 0; m < prod.cat.morphism_count(); ++m) prod_mor[prod.mor_pair[m]] = m;
    auto zobj = [&](int b, int a) { return prod_obj.at({b, a}); };  // Z(b, a), b in op coords
    auto zmor = [&](int w, int u) { return prod_mor.at({op_mor[w], u}); };

    CoendResult res;
    // twisted route: colim over (J+)_tau of Z o K, K(f: a->b) = (b, a)
    TwistedResult tw = twisted_arrow(jp);
    FinSetDiagram zk;
    zk.shape = tw.cat;
    zk.size.resize(tw.cat.object_count());
    for (int o = 0; o < tw.cat.object_count(); ++o) {
        int f = tw.object_mor[o];
        zk.size[o] = z.size[zobj(jp.dst(f), jp.src(f))];
    }
    zk.action.resize(tw.cat.morphism_count());
    for (int m = 0; m < tw.cat.morphism_count(); ++m) {
        auto [u, w] = tw.mor_pair[m];
        zk.action[m] = z.action[zmor(w, u)];
    }
    ValidationReport rep = validate_set_diagram(zk);
    if (!rep.ok()) throw std::logic_error("coend: Z o K not functorial: " + rep.violations.front());
    SetColimit colim_tw = set_colimit(zk);
    res.size_twisted = colim_tw.size;

    // direct route: coequalizer of coproducts over the diagonal
    std::vector<int> offset(jp.object_count() + 1, 0);
    for (int o = 0; o < jp.object_count(); ++o) offset[o + 1] = offset[o] + z.size[zobj(o, o)];
    std::vector<int> parent(offset.back());
    for (int i = 0; i < offset.back(); ++i) parent[i] = i;
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    for (int f = 0; f < jp.morphism_count(); ++f) {
        int a = jp.src(f), b = jp.dst(f);
        int zf_left = zmor(f, jp.identity(a));   // Z(b,a) -> Z(a,a)
        int zf_right = zmor(jp.identity(b), f);  // Z(b,a) -> Z(b,b)
        for (int e = 0; e < z.size[zobj(b, a)]; ++e) {
            int l = offset[a] + z.action[zf_left][e];
            int r = offset[b] + z.action[zf_right][e];
            parent[find(l)] = find(r);
        }
    }
    std::map<int, int> cls;
    for (int i = 0; i < offset.back(); ++i) {
        int r = find(i);
        if (!cls.count(r)) cls[r] = (int)cls.size();
    }
    res.size_direct = (int)cls.size();

    // compare through the diagonal cocones
    res.diag_class_twisted.resize(jp.object_count());
    res.diag_class_direct.resize(jp.object_count());
    std::map<int, int> tw_to_direct;
    bool consistent = true;
    for (int o = 0; o < jp.object_count(); ++o) {
        int tobj = tw.object_of(jp.identity(o));
        res.diag_class_twisted[o].resize(z.size[zobj(o, o)]);
        res.diag_class_direct[o].resize(z.size[zobj(o, o)]);
        for (int e = 0; e < z.size[zobj(o, o)]; ++e) {
            int ct = colim_tw.cocone[tobj][e];
            int cd = cls[find(offset[o] + e)];
            res.diag_class_twisted[o][e] = ct;
            res.diag_class_direct[o][e] = cd;
            auto [it, inserted] = tw_to_direct.try_emplace(ct, cd);
            if (!inserted && it->second != cd) consistent = false;
        }
    }
    std::set<int> image;
    for (auto& kv : tw_to_direct) image.insert(kv.second);
    res.bijective = consistent && (int)tw_to_direct.size() == res.size_twisted &&
                    (int)image.size() == (int)tw_to_direct.size() && res.size_twisted == res.size_direct;
    return res;
}

bool verify_int_pb_pushout(const FinCat& j) {
    IntPbResult r = int_pb(j);
    PlusResult jp = plus(j);
    ProductCat j1 = product_with_projections(j, arrow_category());
    const FinCat& total = r.g.total;
    const FinCat& base = pb_category();
    int a01 = -1, a21 = -1;
    for (int m = 0; m < base.morphism_count(); ++m) {
        if (base.is_identity(m)) continue;
        if (base.src(m) == 0) a01 = m;
        if (base.src(m) == 2) a21 = m;
    }
    // beta: J x [1] -> total, (j,0) -> (0,j), (j,1) -> (1,j)
    FinCat one = arrow_category();
    CatFunctor beta;
    beta.source = j1.cat;
    beta.target = total;
    for (auto& [a, b] : j1.obj_pair) beta.obj_map.push_back(r.g.object_of(b == 0 ? 0 : 1, a));
    for (int m = 0; m < j1.cat.morphism_count(); ++m) {
        auto [f, g] = j1.mor_pair[m];
        int u = one.is_identity(g) ? base.identity(one.src(g) == 0 ? 0 : 1) : a01;
        beta.mor_map.push_back(
            r.g.morphism_of(beta.obj_map[j1.cat.src(m)], beta.obj_map[j1.cat.dst(m)], u, f));
    }
    // alpha: J+ -> total, empty -> (2,*), j -> (1,j)
    CatFunctor alpha;
    alpha.source = jp.cat;
    alpha.target = total;
    alpha.obj_map.resize(jp.cat.object_count());
    alpha.obj_map[jp.init_obj] = r.g.object_of(2, 0);
    for (int o = 0; o < j.object_count(); ++o) alpha.obj_map[jp.obj_map[o]] = r.g.object_of(1, o);
    alpha.mor_map.resize(jp.cat.morphism_count());
    alpha.mor_map[jp.cat.identity(jp.init_obj)] = total.identity(r.g.object_of(2, 0));
    for (int m = 0; m < j.morphism_count(); ++m)
        alpha.mor_map[jp.mor_map[m]] =
            r.g.morphism_of(r.g.object_of(1, j.src(m)), r.g.object_of(1, j.dst(m)), base.identity(1), m);
    int id_point = terminal_category().identity(0);  // fiber part of (2,*) -> (1,y) arrows
    for (int o = 0; o < j.object_count(); ++o)
        alpha.mor_map[jp.arrow_from_init[jp.obj_map[o]]] =
            r.g.morphism_of(r.g.object_of(2, 0), r.g.object_of(1, o), a21, id_point);
    std::string why;
    if (!check_functor(alpha, &why) || !check_functor(beta, &why)) return false;
    // agreement on the glued copy of J: alpha(j) = beta(j, 1)
    for (int o = 0; o < j.object_count(); ++o) {
        int via_beta = beta.obj_map[j1.cat.find_object("(" + j.object_label(o) + ",1)")];
        if (alpha.obj_map[jp.obj_map[o]] != via_beta) return false;
    }
    // joint surjectivity on objects and morphisms with the right count
    std::set<int> objs, mors;
    for (int o : alpha.obj_map) objs.insert(o);
    for (int o : beta.obj_map) objs.insert(o);
    for (int m : alpha.mor_map) mors.insert(m);
    for (int m : beta.mor_map) mors.insert(m);
    if ((int)objs.size() != total.object_count()) return false;
    if ((int)mors.size() != total.morphism_count()) return false;
    if (total.object_count() != 2 * j.object_count() + 1) return false;
    return true;
}

SubcatResult full_subcategory(const FinCat& c, const std::vector<int>& objects) {
    SubcatResult res;
    std::vector<int> obj_new(c.object_count(), -1);
    std::vector<int> mor_new(c.morphism_count(), -1);
    for (int o : objects) {
        obj_new[o] = res.cat.add_object(c.object_label(o));
        res.object_map.push_back(o);
        mor_new[c.identity(o)] = res.cat.identity(obj_new[o]);
    }
    for (int m = 0; m < c.morphism_count(); ++m) {
        if (c.is_identity(m)) continue;
        if (obj_new[c.src(m)] < 0 || obj_new[c.dst(m)] < 0) continue;
        mor_new[m] = res.cat.add_morphism(obj_new[c.src(m)], obj_new[c.dst(m)], c.morph(m).name);
    }
    for (int g = 0; g < c.morphism_count(); ++g)
        for (int f = 0; f < c.morphism_count(); ++f) {
            if (!c.composable(g, f)) continue;
            if (mor_new[g] < 0 || mor_new[f] < 0) continue;
            res.cat.set_compose(mor_new[g], mor_new[f], mor_new[c.compose(g, f)]);
        }
    res.cat.finish();
    res.mor_map.assign(res.cat.morphism_count(), -1);
    for (int m = 0; m < c.morphism_count(); ++m)
        if (mor_new[m] >= 0) res.mor_map[mor_new[m]] = m;
    res.inclusion.source = res.cat;
    res.inclusion.target = c;
    res.inclusion.obj_map = res.object_map;
    res.inclusion.mor_map = res.mor_map;
    return res;
}

}  // namespace fc
