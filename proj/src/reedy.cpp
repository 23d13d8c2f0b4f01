#include "fc/reedy.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace fc {

ValidationReport check_reedy(const ReedyStructure& r) {
    ValidationReport rep;
    const FinCat& c = r.cat;
    if ((int)r.degree.size() != c.object_count() || (int)r.direct.size() != c.morphism_count() ||
        (int)r.inverse.size() != c.morphism_count()) {
        rep.violations.push_back("table sizes mismatch");
        return rep;
    }
    for (int d : r.degree)
        if (d < 0 || d > 64) rep.violations.push_back("degree out of range [0,64]");
    for (int o = 0; o < c.object_count(); ++o) {
        if (!r.direct[c.identity(o)]) rep.violations.push_back("direct part misses identity of " + c.object_label(o));
        if (!r.inverse[c.identity(o)]) rep.violations.push_back("inverse part misses identity of " + c.object_label(o));
    }
    for (int m = 0; m < c.morphism_count(); ++m) {
        if (c.is_identity(m)) continue;
        if (r.direct[m] && r.inverse[m])
            rep.violations.push_back("morphism marked both direct and inverse: " + c.morph(m).name);
        if (r.direct[m] && r.degree[c.src(m)] >= r.degree[c.dst(m)])
            rep.violations.push_back("direct morphism does not raise degree: " + c.morph(m).name);
        if (r.inverse[m] && r.degree[c.src(m)] <= r.degree[c.dst(m)])
            rep.violations.push_back("inverse morphism does not lower degree: " + c.morph(m).name);
    }
    for (int g = 0; g < c.morphism_count(); ++g)
        for (int f = 0; f < c.morphism_count(); ++f) {
            if (!c.composable(g, f)) continue;
            int gf = c.compose(g, f);
            if (r.direct[g] && r.direct[f] && !r.direct[gf])
                rep.violations.push_back("direct part not closed under composition at (" + c.morph(g).name + ", " +
                                         c.morph(f).name + ")");
            if (r.inverse[g] && r.inverse[f] && !r.inverse[gf])
                rep.violations.push_back("inverse part not closed under composition at (" + c.morph(g).name + ", " +
                                         c.morph(f).name + ")");
        }
    // unique factorization f = (direct) o (inverse)
    for (int f = 0; f < c.morphism_count(); ++f) {
        int count = 0;
        for (int h = 0; h < c.morphism_count(); ++h) {
            if (!r.inverse[h] || c.src(h) != c.src(f)) continue;
            for (int g = 0; g < c.morphism_count(); ++g) {
                if (!r.direct[g] || !c.composable(g, h)) continue;
                if (c.dst(g) == c.dst(f) && c.compose(g, h) == f) ++count;
            }
        }
        if (count != 1)
            rep.violations.push_back("factorization of " + c.morph(f).name + " not unique (" +
                                     std::to_string(count) + " found)");
    }
    return rep;
}

SubcatResult wide_subcategory(const FinCat& c, const std::vector<char>& keep) {
    SubcatResult res;
    std::vector<int> mor_new(c.morphism_count(), -1);
    for (int o = 0; o < c.object_count(); ++o) {
        res.cat.add_object(c.object_label(o));
        res.object_map.push_back(o);
        mor_new[c.identity(o)] = res.cat.identity(o);
    }
    for (int m = 0; m < c.morphism_count(); ++m) {
        if (c.is_identity(m) || !keep[m]) continue;
        mor_new[m] = res.cat.add_morphism(c.src(m), c.dst(m), c.morph(m).name);
    }
    for (int g = 0; g < c.morphism_count(); ++g)
        for (int f = 0; f < c.morphism_count(); ++f) {
            if (!c.composable(g, f) || mor_new[g] < 0 || mor_new[f] < 0) continue;
            int gf = c.compose(g, f);
            if (mor_new[gf] < 0) throw std::logic_error("wide_subcategory: not closed under composition");
            res.cat.set_compose(mor_new[g], mor_new[f], mor_new[gf]);
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

namespace {

LatchingResult boundary_comma(const ReedyStructure& r, int obj, bool direct_side) {
    const std::vector<char>& keep = direct_side ? r.direct : r.inverse;
    SubcatResult part = wide_subcategory(r.cat, keep);
    CommaResult cm = comma(part.cat, obj, direct_side ? CommaVariant::Over : CommaVariant::Under);
    std::vector<int> keep_objs;
    for (int o = 0; o < cm.cat.object_count(); ++o)
        if (!part.cat.is_identity(cm.object_mor[o])) keep_objs.push_back(o);
    SubcatResult sub = full_subcategory(cm.cat, keep_objs);
    LatchingResult res;
    res.cat = sub.cat;
    res.to_ambient = compose_functors(part.inclusion, compose_functors(cm.projection, sub.inclusion));
    for (int o = 0; o < sub.cat.object_count(); ++o)
        res.object_mor.push_back(part.mor_map[cm.object_mor[sub.object_map[o]]]);
    return res;
}

int component_count(const FinCat& c) {
    std::vector<int> parent(c.object_count());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    for (int m = 0; m < c.morphism_count(); ++m) parent[find(c.src(m))] = find(c.dst(m));
    int n = 0;
    for (int o = 0; o < c.object_count(); ++o)
        if (find(o) == o) ++n;
    return n;
}

}  // namespace

LatchingResult latching_category(const ReedyStructure& r, int obj) {
    if (obj < 0 || obj >= r.cat.object_count()) throw std::invalid_argument("latching_category: object missing");
    return boundary_comma(r, obj, true);
}

LatchingResult matching_category(const ReedyStructure& r, int obj) {
    if (obj < 0 || obj >= r.cat.object_count()) throw std::invalid_argument("matching_category: object missing");
    return boundary_comma(r, obj, false);
}

ConstantsReport constants_criterion(const ReedyStructure& r, ConstantsSide side) {
    ConstantsReport rep;
    rep.holds = true;
    for (int o = 0; o < r.cat.object_count(); ++o) {
        LatchingResult b = side == ConstantsSide::Cofibrant ? latching_category(r, o) : matching_category(r, o);
        if (b.cat.object_count() == 0) continue;
        int comps = component_count(b.cat);
        if (comps > 1) {
            rep.holds = false;
            rep.witnesses.push_back({o, comps});
        }
    }
    return rep;
}

FiltrationResult filtration(const ReedyStructure& r, int n) {
    std::vector<int> objs;
    for (int o = 0; o < r.cat.object_count(); ++o)
        if (r.degree[o] <= n) objs.push_back(o);
    SubcatResult sub = full_subcategory(r.cat, objs);
    return {sub.cat, sub.inclusion, sub.object_map};
}

namespace {

InheritedResult validate_candidate(ReedyStructure cand, const std::string& label) {
    InheritedResult res;
    ValidationReport rep = check_reedy(cand);
    if (!rep.ok()) {
        res.note = label + " failed: " + rep.violations.front();
        return res;
    }
    ConstantsReport cc = constants_criterion(cand, ConstantsSide::Cofibrant);
    if (!cc.holds) {
        res.note = label + " failed cofibrant-constants";
        return res;
    }
    res.ok = true;
    res.structure = std::move(cand);
    res.note = label;
    return res;
}

}  // namespace

InheritedResult inherit_plus(const ReedyStructure& r) {
    PlusResult p = plus(r.cat);
    int maxdeg = 0;
    for (int d : r.degree) maxdeg = std::max(maxdeg, d);

    auto base = [&](int init_degree) {
        ReedyStructure s;
        s.cat = p.cat;
        s.degree.assign(p.cat.object_count(), 0);
        s.degree[p.init_obj] = init_degree;
        for (int o = 0; o < r.cat.object_count(); ++o) s.degree[p.obj_map[o]] = r.degree[o];
        s.direct.assign(p.cat.morphism_count(), 0);
        s.inverse.assign(p.cat.morphism_count(), 0);
        for (int m = 0; m < p.cat.morphism_count(); ++m)
            if (p.cat.is_identity(m)) s.direct[m] = s.inverse[m] = 1;
        for (int m = 0; m < r.cat.morphism_count(); ++m) {
            if (r.cat.is_identity(m)) continue;
            s.direct[p.mor_map[m]] = r.direct[m];
            s.inverse[p.mor_map[m]] = r.inverse[m];
        }
        return s;
    };

    // candidate A: the added initial object at degree 0 with direct arrows out
    ReedyStructure a = base(0);
    for (int o = 0; o < r.cat.object_count(); ++o) a.direct[p.arrow_from_init[p.obj_map[o]]] = 1;
    InheritedResult ra = validate_candidate(std::move(a), "initial at degree 0, arrows direct");
    if (ra.ok) return ra;

    // candidate B: initial object above everything with inverse arrows out
    ReedyStructure b = base(maxdeg + 1);
    for (int o = 0; o < r.cat.object_count(); ++o) b.inverse[p.arrow_from_init[p.obj_map[o]]] = 1;
    InheritedResult rb = validate_candidate(std::move(b), "initial at top degree, arrows inverse");
    if (rb.ok) return rb;
    rb.note = ra.note + "; " + rb.note;
    return rb;
}

InheritedResult inherit_int_pb(const ReedyStructure& r) {
    IntPbResult ip = int_pb(r.cat);
    const FinCat& total = ip.g.total;
    int maxdeg = 0;
    for (int d : r.degree) maxdeg = std::max(maxdeg, d);

    ReedyStructure s;
    s.cat = total;
    s.degree.assign(total.object_count(), 0);
    for (int o = 0; o < total.object_count(); ++o) {
        auto [b, x] = ip.g.obj_pair[o];
        if (b == 0)
            s.degree[o] = r.degree[x] + 1;
        else if (b == 1)
            s.degree[o] = r.degree[x];
        else
            s.degree[o] = maxdeg + 1;
    }
    s.direct.assign(total.morphism_count(), 0);
    s.inverse.assign(total.morphism_count(), 0);
    const FinCat base = pb_category();
    for (int m = 0; m < total.morphism_count(); ++m) {
        if (total.is_identity(m)) {
            s.direct[m] = s.inverse[m] = 1;
            continue;
        }
        auto [u, f] = ip.g.mor_pair[m];
        if (base.is_identity(u)) {
            s.direct[m] = r.direct[f];
            s.inverse[m] = r.inverse[f];
        } else if (base.src(u) == 2) {
            s.inverse[m] = 1;  // body to the tau1 copy
        } else {
            // (0,x) -> (1,y) over f: x -> y; the tau0 copy sits one degree up
            bool f_inverse_or_id = r.cat.is_identity(f) || r.inverse[f];
            if (f_inverse_or_id)
                s.inverse[m] = 1;
            else
                s.direct[m] = 1;
        }
    }
    return validate_candidate(std::move(s), "fiberwise degrees with tau0 copy shifted up");
}

ReedyStructure reedy_punctured_cube(int n) {
    PowersetResult p = powerset(n, PowersetVariant::Punctured);
    ReedyStructure r;
    r.cat = p.cat;
    for (int o = 0; o < p.cat.object_count(); ++o)
        r.degree.push_back(n - __builtin_popcount(p.mask[o]));
    r.direct.assign(p.cat.morphism_count(), 0);
    r.inverse.assign(p.cat.morphism_count(), 1);
    for (int m = 0; m < p.cat.morphism_count(); ++m)
        if (p.cat.is_identity(m)) r.direct[m] = 1;
    return r;
}

ReedyStructure reedy_full_cube(int n) {
    PowersetResult p = powerset(n, PowersetVariant::Full);
    ReedyStructure r;
    r.cat = p.cat;
    for (int o = 0; o < p.cat.object_count(); ++o) r.degree.push_back(__builtin_popcount(p.mask[o]));
    r.direct.assign(p.cat.morphism_count(), 1);
    r.inverse.assign(p.cat.morphism_count(), 0);
    for (int m = 0; m < p.cat.morphism_count(); ++m)
        if (p.cat.is_identity(m)) r.inverse[m] = 1;
    return r;
}

ReedyStructure reedy_spider(int s) {
    // dual convention to the punctured-cube structure: all arrows direct,
    // inverse part discrete, so matching categories are empty
    IntPoResult sp = int_po(s);
    ReedyStructure r;
    r.cat = sp.g.total;
    r.degree.assign(r.cat.object_count(), 0);
    for (int o = 0; o < r.cat.object_count(); ++o) {
        auto [b, x] = sp.g.obj_pair[o];
        (void)x;
        r.degree[o] = b == 1 ? 0 : 1;  // legs below their feet and the body
    }
    r.direct.assign(r.cat.morphism_count(), 1);
    r.inverse.assign(r.cat.morphism_count(), 0);
    for (int m = 0; m < r.cat.morphism_count(); ++m)
        if (r.cat.is_identity(m)) r.inverse[m] = 1;
    return r;
}

}  // namespace fc
