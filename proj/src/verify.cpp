#include "fc/verify.hpp"

#include <chrono>
#include <numeric>
#include <sstream>

namespace fc {

// ---- generators ----

FreeCells free_cells_diagram(const FinCat& shape, const std::vector<std::pair<int, ChainComplex>>& cells) {
    FreeCells out;
    out.cells = cells;
    Diagram& d = out.diag;
    d.shape = shape;
    std::vector<std::vector<int>> present(shape.object_count());
    for (int o = 0; o < shape.object_count(); ++o) {
        std::vector<ChainComplex> parts;
        for (size_t k = 0; k < cells.size(); ++k)
            if (!shape.hom(cells[k].first, o).empty()) {
                present[o].push_back((int)k);
                parts.push_back(cells[k].second);
            }
        d.value.push_back(dsum(parts).sum);
    }
    d.action.resize(shape.morphism_count());
    for (int m = 0; m < shape.morphism_count(); ++m) {
        int a = shape.src(m), b = shape.dst(m);
        std::vector<ChainComplex> pa, pb;
        for (int k : present[a]) pa.push_back(cells[k].second);
        for (int k : present[b]) pb.push_back(cells[k].second);
        DsumResult sa = dsum(pa), sb = dsum(pb);
        ChainMap f = zero_map(d.value[a], d.value[b]);
        for (size_t ia = 0; ia < present[a].size(); ++ia) {
            auto it = std::find(present[b].begin(), present[b].end(), present[a][ia]);
            if (it == present[b].end()) throw std::logic_error("free_cells_diagram: shape not thin-compatible");
            size_t ib = it - present[b].begin();
            f = add_maps(f, compose_maps(sb.incl[ib], sa.proj[ia]));
        }
        d.action[m] = std::move(f);
    }
    ValidationReport rep = d.validate();
    if (!rep.ok()) throw std::logic_error("free_cells_diagram: " + rep.violations.front());
    return out;
}

std::vector<ChainMap> transformation_from_cells(const FreeCells& x, const Diagram& y,
                                                const std::vector<ChainMap>& base) {
    const FinCat& shape = x.diag.shape;
    std::vector<ChainMap> out;
    for (int o = 0; o < shape.object_count(); ++o) {
        std::vector<ChainComplex> parts;
        std::vector<int> present;
        for (size_t k = 0; k < x.cells.size(); ++k)
            if (!shape.hom(x.cells[k].first, o).empty()) {
                present.push_back((int)k);
                parts.push_back(x.cells[k].second);
            }
        DsumResult s = dsum(parts);
        ChainMap f = zero_map(x.diag.value[o], y.value[o]);
        for (size_t i = 0; i < present.size(); ++i) {
            int k = present[i];
            int arrow = shape.hom(x.cells[k].first, o).front();
            f = add_maps(f, compose_maps(y.action[arrow], compose_maps(base[k], s.proj[i])));
        }
        out.push_back(std::move(f));
    }
    return out;
}

Diagram cone_of_transformation(const Diagram& x, const Diagram& y, const std::vector<ChainMap>& phi) {
    Diagram out;
    out.shape = x.shape;
    for (int o = 0; o < x.shape.object_count(); ++o) {
        ChainMap f = phi[o];
        out.value.push_back(cone(f));
    }
    out.action.resize(x.shape.morphism_count());
    for (int m = 0; m < x.shape.morphism_count(); ++m) {
        int a = x.shape.src(m), b = x.shape.dst(m);
        ChainMap f{out.value[a], out.value[b], {}};
        for (int n = out.value[a].lo; n <= out.value[a].hi(); ++n) {
            int rx = x.value[a].rank_at(n - 1);
            IntMat mm(out.value[b].rank_at(n), out.value[a].rank_at(n));
            IntMat am = x.action[m].at(n - 1);
            IntMat bm = y.action[m].at(n);
            int rx_b = x.value[b].rank_at(n - 1);
            for (int r2 = 0; r2 < am.rows(); ++r2)
                for (auto& [c2, v] : am.row(r2)) mm.add(r2, c2, v);
            for (int r2 = 0; r2 < bm.rows(); ++r2)
                for (auto& [c2, v] : bm.row(r2)) mm.add(rx_b + r2, rx + c2, v);
            if (!mm.is_zero()) f.comp[n] = std::move(mm);
        }
        out.action[m] = std::move(f);
    }
    ValidationReport rep = out.validate();
    if (!rep.ok()) throw std::logic_error("cone_of_transformation: " + rep.violations.front());
    return out;
}

Diagram random_poset_diagram(const FinCat& shape, Rng& rng, int max_cells) {
    int ncells = 1 + (int)rng.range(max_cells);
    std::vector<std::pair<int, ChainComplex>> cells;
    for (int k = 0; k < ncells; ++k)
        cells.push_back({(int)rng.range(shape.object_count()), random_complex(rng, 2, 0, 2)});
    FreeCells fx = free_cells_diagram(shape, cells);
    if (rng.range(2) == 0) return fx.diag;
    // cone off a transformation into a second free diagram
    std::vector<std::pair<int, ChainComplex>> cells2;
    for (int k = 0; k < 2; ++k)
        cells2.push_back({(int)rng.range(shape.object_count()), random_complex(rng, 2, 0, 2)});
    FreeCells fy = free_cells_diagram(shape, cells2);
    std::vector<ChainMap> base;
    for (auto& [at, c] : fx.cells) base.push_back(random_chain_map(rng, c, fy.diag.value[at], 1));
    std::vector<ChainMap> phi = transformation_from_cells(fx, fy.diag, base);
    return cone_of_transformation(fx.diag, fy.diag, phi);
}

Cube random_cube(const FinCat& j, Rng& rng) { return make_cube(j, random_poset_diagram(plus(j).cat, rng)); }

Cube random_cartesian_cube_v(const FinCat& j, Rng& rng) {
    return cartesian_replacement(j, random_poset_diagram(j, rng));
}

std::vector<ChainMap> replacement_functor_map(const FinCat& j, const Diagram& x, const Diagram& y,
                                              const std::vector<ChainMap>& alpha) {
    PlusResult p = plus(j);
    std::vector<ChainMap> out(p.cat.object_count());
    out[p.init_obj] = holim_map(x, y, alpha);
    for (int o = 0; o < j.object_count(); ++o) {
        CommaResult cm = comma(j, o, CommaVariant::Under);
        Diagram rx = restrict_diagram(x, cm.projection);
        Diagram ry = restrict_diagram(y, cm.projection);
        std::vector<ChainMap> ra;
        for (int oo = 0; oo < cm.cat.object_count(); ++oo) ra.push_back(alpha[cm.projection.obj_map[oo]]);
        out[p.obj_map[o]] = holim_map(rx, ry, ra);
    }
    return out;
}

ArrowOfCubes random_cartesian_arrow(const FinCat& j, Rng& rng) {
    // base free diagram B, a transformation A => B, and the natural inclusion
    // B -> cone(A => B); both replacements are Cartesian by construction
    Diagram b = random_poset_diagram(j, rng, 2);
    std::vector<std::pair<int, ChainComplex>> cells;
    for (int k = 0; k < 2; ++k)
        cells.push_back({(int)rng.range(j.object_count()), random_complex(rng, 2, 0, 1)});
    FreeCells a = free_cells_diagram(j, cells);
    std::vector<ChainMap> base;
    for (auto& [at, c] : a.cells) base.push_back(random_chain_map(rng, c, b.value[at], 1));
    std::vector<ChainMap> phi = transformation_from_cells(a, b, base);
    Diagram cn = cone_of_transformation(a.diag, b, phi);
    std::vector<ChainMap> incl;
    for (int o = 0; o < j.object_count(); ++o) {
        ChainMap f{b.value[o], cn.value[o], {}};
        int rx = 0;
        for (int n = b.value[o].lo; n <= b.value[o].hi(); ++n) {
            rx = a.diag.value[o].rank_at(n - 1);
            IntMat mm(cn.value[o].rank_at(n), b.value[o].rank_at(n));
            for (int c2 = 0; c2 < b.value[o].rank_at(n); ++c2) mm.set(rx + c2, c2, 1);
            if (!mm.is_zero()) f.comp[n] = std::move(mm);
        }
        incl.push_back(std::move(f));
    }
    ArrowOfCubes out;
    out.left = cartesian_replacement(j, b);
    out.right = cartesian_replacement(j, cn);
    out.alpha = replacement_functor_map(j, b, cn, incl);
    out.total = cube_from_arrow(j, out.left, out.right, out.alpha);
    return out;
}

CellCube random_cell_cube(int n, Rng& rng, bool force_cocartesian) {
    PowersetResult ps = powerset(n, PowersetVariant::Full);
    CellCube out;
    for (int o = 0; o < ps.cat.object_count(); ++o) {
        unsigned mask = ps.mask[o];
        int count = (int)rng.range(2) + (mask == 0 ? 1 : 0);
        for (int k = 0; k < count; ++k) {
            bool must_be_acyclic = force_cocartesian && __builtin_popcount(mask) >= 2;
            ChainComplex c;
            if (must_be_acyclic || ((int)rng.range(3) == 0))
                c = cone(identity_map(random_complex(rng, 2, 0, 1)));
            else
                c = random_complex(rng, 2, 0, 1);
            out.cells[mask].push_back(c);
        }
    }
    out.expected_strongly_cocartesian = true;
    for (auto& [mask, cs] : out.cells) {
        if (__builtin_popcount(mask) < 2) continue;
        for (auto& c : cs)
            if (!is_acyclic(c)) out.expected_strongly_cocartesian = false;
    }
    // X(S) = sum of cells at subsets of S
    Diagram d;
    d.shape = ps.cat;
    auto parts_of = [&](unsigned s) {
        std::vector<ChainComplex> parts;
        std::vector<std::pair<unsigned, int>> which;
        for (auto& [mask, cs] : out.cells) {
            if ((mask & s) != mask) continue;
            for (size_t k = 0; k < cs.size(); ++k) {
                parts.push_back(cs[k]);
                which.push_back({mask, (int)k});
            }
        }
        return std::make_pair(parts, which);
    };
    for (int o = 0; o < ps.cat.object_count(); ++o) d.value.push_back(dsum(parts_of(ps.mask[o]).first).sum);
    d.action.resize(ps.cat.morphism_count());
    for (int m = 0; m < ps.cat.morphism_count(); ++m) {
        auto [pa, wa] = parts_of(ps.mask[ps.cat.src(m)]);
        auto [pb, wb] = parts_of(ps.mask[ps.cat.dst(m)]);
        DsumResult sa = dsum(pa), sb = dsum(pb);
        ChainMap f = zero_map(d.value[ps.cat.src(m)], d.value[ps.cat.dst(m)]);
        for (size_t i = 0; i < wa.size(); ++i) {
            auto it = std::find(wb.begin(), wb.end(), wa[i]);
            f = add_maps(f, compose_maps(sb.incl[it - wb.begin()], sa.proj[i]));
        }
        d.action[m] = std::move(f);
    }
    out.cube = make_cocart_cube(n, d);
    return out;
}

// ---- the battery ----

namespace {

using Clock = std::chrono::steady_clock;

CaseResult finish(CaseResult r, Clock::time_point t0) {
    r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    return r;
}

#define PROP_BODY(...)                              \
    auto t0 = Clock::now();                         \
    CaseResult r;                                   \
    r.pass = true;                                  \
    auto fail = [&](const std::string& why) {       \
        r.pass = false;                             \
        if (!r.detail.empty()) r.detail += "; ";    \
        r.detail += why;                            \
    };                                              \
    (void)fail;                                     \
    __VA_ARGS__;                                    \
    return finish(std::move(r), t0);

Diagram constant_diagram_on(const FinCat& shape, const ChainComplex& c) {
    Diagram d;
    d.shape = shape;
    d.value.assign(shape.object_count(), c);
    for (int m = 0; m < shape.morphism_count(); ++m) d.action.push_back(identity_map(c));
    return d;
}

std::vector<PropertyCase> build_battery() {
    std::vector<PropertyCase> props;
    auto add = [&](std::string id, std::string suite, std::string name,
                   std::function<CaseResult(unsigned long long)> f) {
        props.push_back({std::move(id), std::move(suite), std::move(name), std::move(f)});
    };

    add("fincat.1", "fincat", "constructed categories validate", [](unsigned long long) -> CaseResult {
        PROP_BODY({
            std::vector<FinCat> cats = {terminal_category(),
                                        arrow_category(),
                                        pb_category(),
                                        po_category(),
                                        powerset(3, PowersetVariant::Punctured).cat,
                                        int_pb(arrow_category()).g.total,
                                        int_po(3).g.total,
                                        twisted_arrow(plus(discrete_category(2)).cat).cat,
                                        comma(powerset(2, PowersetVariant::Full).cat, 3, CommaVariant::Over).cat};
            for (auto& c : cats)
                if (!validate_category(c).ok()) fail("a constructed category fails validation");
        })
    });

    add("fincat.2", "fincat", "isomorphism search is symmetric with strict inverse", [](unsigned long long) -> CaseResult {
        PROP_BODY({
            FinCat a = jn(terminal_category(), 3).stage[2];
            FinCat b = powerset(3, PowersetVariant::Punctured).cat;
            auto fwd = find_isomorphism(a, b);
            auto bwd = find_isomorphism(b, a);
            if (!fwd || !bwd) fail("search failed");
            if (fwd) {
                CatFunctor inv;
                inv.source = b;
                inv.target = a;
                inv.obj_map.resize(b.object_count());
                inv.mor_map.resize(b.morphism_count());
                for (int o = 0; o < a.object_count(); ++o) inv.obj_map[fwd->obj_map[o]] = o;
                for (int m = 0; m < a.morphism_count(); ++m) inv.mor_map[fwd->mor_map[m]] = m;
                if (!functor_equal(compose_functors(inv, *fwd), identity_functor(a))) fail("inverse not strict");
            }
        })
    });

    add("fincat.3", "fincat", "set colimit at terminal, limit at initial", [](unsigned long long seed) -> CaseResult {
        PROP_BODY({
            Rng rng(seed + 1);
            FinCat shape = powerset(2, PowersetVariant::Punctured).cat;
            FinSetDiagram x;
            x.shape = shape;
            x.size = {1 + (int)rng.range(3), 1 + (int)rng.range(3), 1 + (int)rng.range(3)};
            x.action.resize(shape.morphism_count());
            for (int m = 0; m < shape.morphism_count(); ++m) {
                x.action[m].resize(x.size[shape.src(m)]);
                for (int e = 0; e < x.size[shape.src(m)]; ++e)
                    x.action[m][e] = shape.is_identity(m) ? e : e % x.size[shape.dst(m)];
            }
            if (!validate_set_diagram(x).ok()) fail("generator broke functoriality");
            if (set_colimit(x).size != x.size[2]) fail("colimit is not the terminal value");
            // dual: a fresh diagram over the opposite shape, whose old
            // terminal object is now initial
            FinCat oshape = opposite(shape);
            FinSetDiagram y;
            y.shape = oshape;
            y.size = {1 + (int)rng.range(3), 1 + (int)rng.range(3), 1 + (int)rng.range(3)};
            y.action.resize(oshape.morphism_count());
            for (int m = 0; m < oshape.morphism_count(); ++m) {
                y.action[m].resize(y.size[oshape.src(m)]);
                for (int e = 0; e < y.size[oshape.src(m)]; ++e)
                    y.action[m][e] = oshape.is_identity(m) ? e : (int)rng.range(y.size[oshape.dst(m)]);
            }
            if (!validate_set_diagram(y).ok()) fail("dual generator broke functoriality");
            if ((int)set_limit(y).size() != y.size[2]) fail("limit is not the initial value");
        })
    });

    add("fincat.4", "fincat", "opposite exchanges colimits and limits", [](unsigned long long seed) -> CaseResult {
        PROP_BODY({
            // for diagrams acting by bijections, inverting every action over
            // the opposite shape turns the colimit into a limit and back
            Rng rng(seed + 2);
            for (int t = 0; t < 5; ++t) {
                FinCat shape = t % 2 == 0 ? pb_category() : powerset(2, PowersetVariant::Punctured).cat;
                int n = 2 + (int)rng.range(3);
                FinSetDiagram x;
                x.shape = shape;
                x.size.assign(shape.object_count(), n);
                x.action.resize(shape.morphism_count());
                for (int m = 0; m < shape.morphism_count(); ++m) {
                    std::vector<int> perm(n);
                    std::iota(perm.begin(), perm.end(), 0);
                    if (!shape.is_identity(m))
                        for (int e = n - 1; e > 0; --e) std::swap(perm[e], perm[rng.range(e + 1)]);
                    x.action[m] = perm;
                }
                // compositions of independent permutations are generically
                // inconsistent; on these shapes there are no composable pairs
                if (!validate_set_diagram(x).ok()) {
                    fail("generator");
                    continue;
                }
                std::vector<int> opm;
                FinSetDiagram xo;
                xo.shape = opposite(shape, &opm);
                xo.size = x.size;
                xo.action.resize(x.action.size());
                for (int m = 0; m < shape.morphism_count(); ++m) {
                    std::vector<int> inv(n);
                    for (int e = 0; e < n; ++e) inv[x.action[m][e]] = e;
                    xo.action[opm[m]] = inv;
                }
                if (!validate_set_diagram(xo).ok()) {
                    fail("inverse diagram");
                    continue;
                }
                if (set_colimit(x).size != set_limit(xo).size()) fail("colimit and dual limit sizes differ");
                if (set_limit(x).size() != set_colimit(xo).size) fail("limit and dual colimit sizes differ");
            }
        })
    });

    add("groth.1", "groth", "fibers of the projection are the diagram fibers", [](unsigned long long) -> CaseResult {
        PROP_BODY({
            IntPbResult r = int_pb(pb_category());
            for (int b = 0; b < 3; ++b) {
                std::vector<int> objs;
                for (int o = 0; o < r.g.total.object_count(); ++o)
                    if (r.g.obj_pair[o].first == b) objs.push_back(o);
                FinCat expect = b == 2 ? terminal_category() : pb_category();
                if (!find_isomorphism(full_subcategory(r.g.total, objs).cat, expect)) fail("fiber mismatch");
            }
            IntPoResult sp = int_po(3);
            std::vector<int> legs;
            for (int o = 0; o < sp.g.total.object_count(); ++o)
                if (sp.g.obj_pair[o].first == 1) legs.push_back(o);
            if (!find_isomorphism(full_subcategory(sp.g.total, legs).cat, discrete_category(3)))
                fail("spider leg fiber mismatch");
        })
    });

    add("groth.2", "groth", "object counts follow the 2k+1 recursion", [](unsigned long long) -> CaseResult {
        PROP_BODY({
            for (auto& j : {terminal_category(), arrow_category(), powerset(2, PowersetVariant::Punctured).cat})
                if (int_pb(j).g.total.object_count() != 2 * j.object_count() + 1) fail("int_pb count");
            JnResult t = jn(terminal_category(), 5);
            for (int k = 0; k < 5; ++k)
                if (t.stage[k].object_count() != (1 << (k + 1)) - 1) fail("jn count");
        })
    });

    add("groth.3", "groth", "punctured cubes with transported tau maps", [](unsigned long long) -> CaseResult {
        PROP_BODY({
            JnResult t = jn(terminal_category(), 5);
            for (int k = 0; k + 1 < 5; ++k) {
                CatFunctor iso = cube_iso(t, k);
                CatFunctor next = cube_iso(t, k + 1);
                if (!functor_equal(compose_functors(next, t.tau0[k]), compose_functors(powerset_tau0(k + 1), iso)))
                    fail("tau0 transport");
                if (!functor_equal(compose_functors(next, t.tau1[k]), compose_functors(powerset_tau1(k + 1), iso)))
                    fail("tau1 transport");
                if (!find_isomorphism(t.stage[k], powerset(k + 1, PowersetVariant::Punctured).cat))
                    fail("iso search");
            }
        })
    });

    add("groth.4", "groth", "plus of int_pb is plus times the arrow", [](unsigned long long) -> CaseResult {
        PROP_BODY({
            for (auto& j : {terminal_category(), arrow_category(), powerset(2, PowersetVariant::Punctured).cat}) {
                FinCat lhs = plus(int_pb(j).g.total).cat;
                FinCat rhs = product(plus(j).cat, arrow_category());
                if (!find_isomorphism(lhs, rhs)) fail("formula (3) instance");
            }
        })
    });

    add("groth.5", "groth", "xi is an isomorphism up to six legs", [](unsigned long long) -> CaseResult {
        PROP_BODY({
            for (int s = 1; s <= 6; ++s) {
                XiResult r = xi(s);
                std::string why;
                if (!check_functor(r.iso, &why)) fail("xi functor: " + why);
                std::set<int> objs(r.iso.obj_map.begin(), r.iso.obj_map.end());
                if ((int)objs.size() != r.twisted.cat.object_count()) fail("xi not bijective on objects");
            }
        })
    });

    add("groth.6", "groth", "coend two ways on random bifunctors", [](unsigned long long seed) -> CaseResult {
        PROP_BODY({
            Rng rng(seed + 3);
            for (int t = 0; t < 20; ++t) {
                FinCat j = t % 2 == 0 ? discrete_category(1 + (int)rng.range(3)) : arrow_category();
                PlusResult jp = plus(j);
                std::vector<int> opm;
                FinCat op = opposite(jp.cat, &opm);
                ProductCat pr = product_with_projections(op, jp.cat);
                // coproducts of representables
                FinSetDiagram z;
                z.shape = pr.cat;
                z.size.assign(pr.cat.object_count(), 0);
                int cells = 1 + (int)rng.range(3);
                std::vector<int> at;
                for (int k = 0; k < cells; ++k) at.push_back((int)rng.range(pr.cat.object_count()));
                std::vector<std::vector<int>> offset(cells, std::vector<int>(pr.cat.object_count(), 0));
                for (int k = 0; k < cells; ++k)
                    for (int o = 0; o < pr.cat.object_count(); ++o) {
                        offset[k][o] = z.size[o];
                        z.size[o] += (int)pr.cat.hom(at[k], o).size();
                    }
                z.action.resize(pr.cat.morphism_count());
                for (int m = 0; m < pr.cat.morphism_count(); ++m) {
                    z.action[m].resize(z.size[pr.cat.src(m)]);
                    for (int k = 0; k < cells; ++k) {
                        auto hsrc = pr.cat.hom(at[k], pr.cat.src(m));
                        auto hdst = pr.cat.hom(at[k], pr.cat.dst(m));
                        for (size_t e = 0; e < hsrc.size(); ++e) {
                            int image = pr.cat.compose(m, hsrc[e]);
                            int idx = -1;
                            for (size_t q2 = 0; q2 < hdst.size(); ++q2)
                                if (hdst[q2] == image) idx = (int)q2;
                            z.action[m][offset[k][pr.cat.src(m)] + e] = offset[k][pr.cat.dst(m)] + idx;
                        }
                    }
                }
                if (!validate_set_diagram(z).ok()) {
                    fail("generator");
                    continue;
                }
                CoendResult c = coend_via_twisted(jp, z);
                if (!c.bijective || c.size_twisted != c.size_direct) fail("coend mismatch");
            }
        })
    });

    add("groth.7", "groth", "int_pb pushout presentation instances", [](unsigned long long) -> CaseResult {
        PROP_BODY({
            for (auto& j : {terminal_category(), arrow_category(), discrete_category(2)})
                if (!verify_int_pb_pushout(j)) fail("presentation check");
        })
    });

    add("reedy.1", "reedy", "constructed structures satisfy the axioms", [](unsigned long long) -> CaseResult {
        PROP_BODY({
            for (int n = 2; n <= 4; ++n) {
                if (!check_reedy(reedy_punctured_cube(n)).ok()) fail("punctured cube");
                if (!check_reedy(reedy_full_cube(n)).ok()) fail("full cube");
                if (!constants_criterion(reedy_punctured_cube(n), ConstantsSide::Cofibrant).holds)
                    fail("cofibrant constants");
                if (!constants_criterion(reedy_full_cube(n), ConstantsSide::Fibrant).holds) fail("fibrant constants");
            }
            for (int s = 1; s <= 4; ++s) {
                ReedyStructure sp = reedy_spider(s);
                if (!check_reedy(sp).ok()) fail("spider");
                if (!constants_criterion(sp, ConstantsSide::Fibrant).holds) fail("spider fibrant constants");
            }
            InheritedResult a = inherit_plus(reedy_punctured_cube(2));
            InheritedResult b = inherit_int_pb(reedy_punctured_cube(2));
            if (!a.ok || !b.ok) fail("inheritance");
        })
    });

    add("reedy.2", "reedy", "latching categories are copunctured cubes", [](unsigned long long) -> CaseResult {
        PROP_BODY({
            for (int n = 2; n <= 4; ++n) {
                ReedyStructure r = reedy_full_cube(n);
                PowersetResult p = powerset(n, PowersetVariant::Full);
                for (int o = 0; o < r.cat.object_count(); ++o) {
                    int k = __builtin_popcount(p.mask[o]);
                    LatchingResult l = latching_category(r, o);
                    if (k == 0) {
                        if (l.cat.object_count() != 0) fail("empty latching expected");
                        continue;
                    }
                    if (!find_isomorphism(l.cat, powerset(k, PowersetVariant::Copunctured).cat))
                        fail("latching shape at n=" + std::to_string(n));
                }
            }
        })
    });

    add("reedy.3", "reedy", "set-level latching cross-check", [](unsigned long long seed) -> CaseResult {
        PROP_BODY({
            Rng rng(seed + 5);
            ReedyStructure r = reedy_full_cube(3);
            PowersetResult p = powerset(3, PowersetVariant::Full);
            // representable-cell diagram in Set
            FinSetDiagram x;
            x.shape = r.cat;
            x.size.assign(r.cat.object_count(), 0);
            int cells = 1 + (int)rng.range(3);
            std::vector<int> at;
            for (int k = 0; k < cells; ++k) at.push_back((int)rng.range(r.cat.object_count()));
            std::vector<std::vector<int>> offset(cells, std::vector<int>(r.cat.object_count(), 0));
            for (int k = 0; k < cells; ++k)
                for (int o = 0; o < r.cat.object_count(); ++o) {
                    offset[k][o] = x.size[o];
                    x.size[o] += (int)r.cat.hom(at[k], o).size();
                }
            x.action.resize(r.cat.morphism_count());
            for (int m = 0; m < r.cat.morphism_count(); ++m) {
                x.action[m].resize(x.size[r.cat.src(m)]);
                for (int k = 0; k < cells; ++k) {
                    auto hsrc = r.cat.hom(at[k], r.cat.src(m));
                    auto hdst = r.cat.hom(at[k], r.cat.dst(m));
                    for (size_t e = 0; e < hsrc.size(); ++e) {
                        int image = r.cat.compose(m, hsrc[e]);
                        int idx = -1;
                        for (size_t q2 = 0; q2 < hdst.size(); ++q2)
                            if (hdst[q2] == image) idx = (int)q2;
                        x.action[m][offset[k][r.cat.src(m)] + e] = offset[k][r.cat.dst(m)] + idx;
                    }
                }
            }
            if (!validate_set_diagram(x).ok()) fail("generator");
            int top = p.object_of_mask.at(7);
            LatchingResult l = latching_category(r, top);
            FinSetDiagram restr;
            restr.shape = l.cat;
            for (int o = 0; o < l.cat.object_count(); ++o) restr.size.push_back(x.size[l.to_ambient.obj_map[o]]);
            for (int m = 0; m < l.cat.morphism_count(); ++m) restr.action.push_back(x.action[l.to_ambient.mor_map[m]]);
            std::vector<int> proper;
            for (int o = 0; o < r.cat.object_count(); ++o)
                if (p.mask[o] != 7u) proper.push_back(o);
            SubcatResult sub = full_subcategory(r.cat, proper);
            FinSetDiagram restr2;
            restr2.shape = sub.cat;
            for (int o = 0; o < sub.cat.object_count(); ++o) restr2.size.push_back(x.size[sub.object_map[o]]);
            for (int m = 0; m < sub.cat.morphism_count(); ++m) restr2.action.push_back(x.action[sub.mor_map[m]]);
            if (set_colimit(restr).size != set_colimit(restr2).size) fail("latching object mismatch");
        })
    });

    add("reedy.4", "reedy", "filtrations are monotone and match the examples", [](unsigned long long) -> CaseResult {
        PROP_BODY({
            for (int n = 2; n <= 4; ++n) {
                ReedyStructure r = reedy_full_cube(n);
                int prev = 0;
                for (int k = 0; k <= n; ++k) {
                    FiltrationResult f = filtration(r, k);
                    if (f.cat.object_count() < prev) fail("not monotone");
                    prev = f.cat.object_count();
                }
                if (prev != r.cat.object_count()) fail("union is not everything");
                if (!find_isomorphism(filtration(r, 1).cat, plus(discrete_category(n)).cat)) fail("F1 shape");
                if (!find_isomorphism(filtration(r, n - 1).cat, powerset(n, PowersetVariant::Copunctured).cat))
                    fail("F(n-1) shape");
            }
        })
    });

    add("simp.1", "simp", "euler characteristic equals alternating betti sum", [](unsigned long long) -> CaseResult {
        PROP_BODY({
            for (int n = 2; n <= 4; ++n) {
                FinSimpSet s = nerve(powerset(n, PowersetVariant::Punctured).cat).sset;
                HomologySummary h = homology(normalized_chains(s));
                long long chi = 0;
                for (auto& [deg, g] : h.groups) chi += (deg % 2 == 0 ? 1 : -1) * g.first;
                if (chi != s.euler_characteristic()) fail("chi mismatch at n=" + std::to_string(n));
            }
        })
    });

    add("simp.2", "simp", "opposite preserves the f-vector", [](unsigned long long) -> CaseResult {
        PROP_BODY({
            for (auto& c : {powerset(3, PowersetVariant::Punctured).cat, int_po(3).g.total, int_pb(arrow_category()).g.total})
                if (nerve(c).sset.fvector() != nerve(opposite(c)).sset.fvector()) fail("f-vector changed");
        })
    });

    add("simp.3", "simp", "nerve of a product is the product of nerves", [](unsigned long long) -> CaseResult {
        PROP_BODY({
            FinCat c = arrow_category();
            FinCat d = powerset(2, PowersetVariant::Punctured).cat;
            FinSimpSet lhs = nerve(product(c, d)).sset;
            FinSimpSet rhs = sset_product(nerve(c).sset, nerve(d).sset);
            if (lhs.fvector() != rhs.fvector()) fail("f-vector mismatch");
            if (homology(normalized_chains(lhs)) != homology(normalized_chains(rhs))) fail("homology mismatch");
        })
    });

    add("chain.1", "chain", "validation rejects corrupted data", [](unsigned long long) -> CaseResult {
        PROP_BODY({
            ChainComplex c = two_term(1, 2);
            c.d[1].set(0, 0, 3);
            if (!c.validate().ok()) { /* shapes fine, d^2 still zero */ }
            ChainComplex bad;
            bad.lo = 0;
            bad.ranks = {1, 1, 1};
            IntMat d1(1, 1), d2(1, 1);
            d1.set(0, 0, 1);
            d2.set(0, 0, 1);
            bad.d = {IntMat(0, 1), d1, d2};
            if (bad.validate().ok()) fail("d^2 violation accepted");
            ChainMap f{two_term(1, 2), two_term(1, 3), {}};
            IntMat m(1, 1);
            m.set(0, 0, 1);
            f.comp[0] = m;
            f.comp[1] = m;
            if (f.validate().ok()) fail("non-chain-map accepted");
        })
    });

    add("chain.2", "chain", "holim and hocolim preserve objectwise quasi-isomorphisms", [](unsigned long long seed) -> CaseResult {
        PROP_BODY({
            Rng rng(seed + 7);
            for (int t = 0; t < 4; ++t) {
                FinCat shape = t % 2 == 0 ? pb_category() : powerset(2, PowersetVariant::Punctured).cat;
                ChainComplex x = random_complex(rng, 2, 0, 2);
                ChainComplex acy = cone(identity_map(random_complex(rng, 2, 0, 1)));
                DsumResult ds = dsum({x, acy});
                Diagram dx = constant_diagram_on(shape, x);
                Diagram dy = constant_diagram_on(shape, ds.sum);
                std::vector<ChainMap> phi(shape.object_count(), ds.incl[0]);
                if (!is_quasi_iso(holim_map(dx, dy, phi))) fail("holim");
                if (!is_quasi_iso(hocolim_map(dx, dy, phi))) fail("hocolim");
            }
        })
    });

    add("chain.3", "chain", "discrete shapes give sums and products", [](unsigned long long seed) -> CaseResult {
        PROP_BODY({
            Rng rng(seed + 11);
            FinCat disc = discrete_category(3);
            Diagram d;
            d.shape = disc;
            for (int i = 0; i < 3; ++i) d.value.push_back(random_complex(rng, 2, 0, 2));
            for (int o = 0; o < 3; ++o) d.action.push_back(identity_map(d.value[o]));
            // compare torsion through its invariant-factor normal form:
            // concatenated cyclic orders are rewritten into a divisor chain
            auto normalize = [](HomologySummary h) {
                for (auto& kv : h.groups) {
                    auto& t = kv.second.second;
                    bool changed = true;
                    while (changed) {
                        changed = false;
                        for (size_t i = 0; i < t.size(); ++i)
                            for (size_t j = i + 1; j < t.size(); ++j) {
                                Int g = gcd(t[i], t[j]);
                                if (t[j] % t[i] != 0) {
                                    Int l = t[i] / g * t[j];
                                    t[i] = g;
                                    t[j] = l;
                                    changed = true;
                                }
                            }
                    }
                    std::sort(t.begin(), t.end());
                    while (!t.empty() && t.front() == 1) t.erase(t.begin());
                }
                return h;
            };
            HomologySummary expect;
            for (int i = 0; i < 3; ++i)
                for (auto& [deg, g] : homology(d.value[i]).groups) {
                    expect.groups[deg].first += g.first;
                    for (auto& v : g.second) expect.groups[deg].second.push_back(v);
                }
            if (normalize(homology(hocolim(d).total)) != normalize(expect)) fail("sum");
            if (normalize(homology(holim(d).total)) != normalize(expect)) fail("product");
        })
    });

    add("chain.4", "chain", "splitting a split fibration shape computes holim fiberwise", [](unsigned long long seed) -> CaseResult {
        PROP_BODY({
            Rng rng(seed + 13);
            for (auto& j : {terminal_category(), arrow_category()}) {
                IntPbResult ip = int_pb(j);
                for (int t = 0; t < 3; ++t) {
                    Diagram x = random_poset_diagram(ip.g.total, rng, 2);
                    // fiberwise holims
                    Diagram f0 = restrict_diagram(x, ip.g.fiber_inclusion[0]);
                    Diagram f1 = restrict_diagram(x, ip.g.fiber_inclusion[1]);
                    std::vector<ChainMap> cross;
                    const FinCat base = pb_category();
                    for (int o = 0; o < j.object_count(); ++o) {
                        int a01 = -1;
                        for (int m = 0; m < base.morphism_count(); ++m)
                            if (!base.is_identity(m) && base.src(m) == 0) a01 = m;
                        int inner = ip.g.morphism_of(ip.g.object_of(0, o), ip.g.object_of(1, o), a01, j.identity(o));
                        cross.push_back(x.action[inner]);
                    }
                    ChainMap to1 = holim_map(f0, f1, cross);
                    int body = ip.g.object_of(2, 0);
                    std::vector<ChainMap> cone_comps;
                    int a21 = -1;
                    for (int m = 0; m < base.morphism_count(); ++m)
                        if (!base.is_identity(m) && base.src(m) == 2) a21 = m;
                    int id_pt = terminal_category().identity(0);
                    for (int o = 0; o < j.object_count(); ++o) {
                        int inner = ip.g.morphism_of(body, ip.g.object_of(1, o), a21, id_pt);
                        cone_comps.push_back(x.action[inner]);
                    }
                    ChainMap from_body = map_into_holim(x.value[body], f1, cone_comps);
                    Diagram pbd;
                    pbd.shape = pb_category();
                    pbd.value = {to1.src, to1.dst, x.value[body]};
                    pbd.action.resize(pbd.shape.morphism_count());
                    for (int o = 0; o < 3; ++o) pbd.action[pbd.shape.identity(o)] = identity_map(pbd.value[o]);
                    for (int m = 0; m < pbd.shape.morphism_count(); ++m) {
                        if (pbd.shape.is_identity(m)) continue;
                        pbd.action[m] = pbd.shape.src(m) == 0 ? to1 : from_body;
                    }
                    HomologySummary lhs = homology(holim(x).total);
                    HomologySummary rhs = homology(holim(pbd).total);
                    if (lhs != rhs) fail("fiberwise holim differs");
                }
            }
        })
    });

    add("chain.5", "chain", "euler additivity and chf versus the shifted cone", [](unsigned long long seed) -> CaseResult {
        PROP_BODY({
            Rng rng(seed + 17);
            for (int t = 0; t < 5; ++t) {
                ChainComplex a = random_complex(rng, 2, 0, 2);
                ChainComplex b = random_complex(rng, 2, 0, 2);
                ChainMap f = random_chain_map(rng, a, b);
                ChainComplex cn = cone(f);
                long long chi_a = 0, chi_b = 0, chi_c = 0;
                for (int deg = a.lo; deg <= a.hi(); ++deg) chi_a += (deg % 2 == 0 ? 1 : -1) * a.rank_at(deg);
                for (int deg = b.lo; deg <= b.hi(); ++deg) chi_b += (deg % 2 == 0 ? 1 : -1) * b.rank_at(deg);
                for (int deg = cn.lo; deg <= cn.hi(); ++deg) chi_c += (deg % 2 == 0 ? 1 : -1) * cn.rank_at(deg);
                if (chi_c != chi_b - chi_a) fail("euler additivity");
                if (homology(chf(f)) != homology(shift(cn, -1))) fail("chf vs cone");
            }
        })
    });

    add("calculus.1", "calculus", "star suite", [](unsigned long long seed) -> CaseResult {
        PROP_BODY({
            Rng rng(seed + 19);
            for (int t = 0; t < 5; ++t) {
                ChainComplex x = random_complex(rng, 3, 0, 3);
                if (!is_quasi_iso(star(empty_category(), x).from_x)) fail("empty star");
                if (!is_acyclic(star(terminal_category(), x).value)) fail("cone not acyclic");
                HomologySummary up = homology(star(discrete_category(2), x).value);
                HomologySummary expect;
                for (auto& [deg, g] : homology(x).groups) expect.groups[deg + 1] = g;
                if (up != expect) fail("suspension");
            }
        })
    });

    add("calculus.2", "calculus", "star_h compares to star", [](unsigned long long seed) -> CaseResult {
        PROP_BODY({
            Rng rng(seed + 23);
            for (unsigned mask : {1u, 3u, 7u})
                for (int t = 0; t < 3; ++t) {
                    ChainComplex x = random_complex(rng, 2, 0, 2);
                    if (!is_quasi_iso(star_h(mask, x).compare)) fail("comparison");
                }
        })
    });

    add("calculus.3", "calculus", "aux tower comparison for additive builtins", [](unsigned long long seed) -> CaseResult {
        PROP_BODY({
            Rng rng(seed + 29);
            ChainComplex c0 = random_complex(rng, 2, 0, 1);
            std::vector<FunctorSpec> fs = {functor_identity(), functor_constant(free_complex(0, 1)), functor_double(),
                                           functor_tensor_with(c0)};
            for (auto& f : fs)
                for (int n = 0; n <= 1; ++n) {
                    ChainComplex x = random_complex(rng, 2, 0, 1);
                    AuxStage a = aux_tower(f, x, n);
                    if (!a.compare_qiso) fail("comparison at level " + std::to_string(n) + " for " + f.name);
                }
        })
    });

    add("calculus.4", "calculus", "tower sanity for identity and constants", [](unsigned long long seed) -> CaseResult {
        PROP_BODY({
            Rng rng(seed + 31);
            ChainComplex x = random_complex(rng, 2, 0, 2);
            TowerStage s0 = p_n(functor_identity(), x, 0);
            if (!s0.stabilized || !is_acyclic(s0.value)) fail("P0 of the identity");
            TowerStage s1 = p_n(functor_identity(), x, 1);
            if (!s1.stabilized || s1.iterates != 1) fail("P1 stabilization");
            if (homology(s1.value) != homology(x)) fail("P1 value");
            TowerMapResult q = tower_map(functor_identity(), x, 1);
            if (!is_quasi_iso(q.map) || !q.compatible_with_units) fail("q map");
        })
    });

    add("calculus.5", "calculus", "quadratic tower behavior at the point", [](unsigned long long) -> CaseResult {
        PROP_BODY({
            ChainComplex x = free_complex(0, 1);
            TowerStage s = p_n(functor_square(), x, 1, 2);
            if (s.stabilized) fail("quadratic should not stabilize at level 1");
            TowerMapResult q1 = tower_map(functor_square(), x, 1, 2);
            if (is_quasi_iso(q1.map)) fail("q into level 1 should not be an equivalence");
            TowerStage s2 = p_n(functor_square(), x, 2, 2);
            if (!s2.stabilized || s2.iterates != 1) fail("level 2 should stabilize immediately");
            if (homology(s2.value) != homology(x)) fail("level 2 value");
        })
    });

    add("calculus.6", "calculus", "T_n of objectwise equivalences", [](unsigned long long seed) -> CaseResult {
        PROP_BODY({
            Rng rng(seed + 37);
            ChainComplex c = random_complex(rng, 2, 0, 1);
            ChainComplex acy = cone(identity_map(random_complex(rng, 2, 0, 1)));
            DsumResult ds = dsum({c, acy});
            FunctorSpec f = functor_constant(c);
            FunctorSpec g = functor_constant(ds.sum);
            ChainComplex x = free_complex(0, 1);
            for (int n = 0; n <= 1; ++n) {
                TnResult tf = t_n(f, x, n);
                TnResult tg = t_n(g, x, n);
                PowersetResult ps = powerset(n + 1, PowersetVariant::Punctured);
                std::vector<ChainMap> comps(ps.cat.object_count(), ds.incl[0]);
                if (!is_quasi_iso(holim_map(tf.diagram, tg.diagram, comps))) fail("T_n alpha");
            }
        })
    });

    add("calculus.7", "calculus", "T_n at zero is the cotensor by the punctured cube nerve", [](unsigned long long) -> CaseResult {
        PROP_BODY({
            ChainComplex c0 = two_term(1, 2);
            for (auto& f : {functor_identity(), functor_constant(c0), functor_double()}) {
                for (int n = 0; n <= 1; ++n) {
                    TnResult r = t_n(f, zero_complex(), n);
                    ChainComplex cot =
                        cotensor_sset(f.on_obj(zero_complex()), nerve(powerset(n + 1, PowersetVariant::Punctured).cat).sset);
                    if (homology(r.value) != homology(cot)) fail("constant holim vs cotensor for " + f.name);
                }
            }
        })
    });

    add("calculus.8", "calculus", "Cartesian-ness is invariant under objectwise equivalence", [](unsigned long long seed) -> CaseResult {
        PROP_BODY({
            Rng rng(seed + 41);
            FinCat j = powerset(2, PowersetVariant::Punctured).cat;
            for (int t = 0; t < 3; ++t) {
                Cube x = t % 2 == 0 ? random_cartesian_cube_v(j, rng) : random_cube(j, rng);
                ChainComplex acy = cone(identity_map(random_complex(rng, 2, 0, 1)));
                Diagram fat;
                fat.shape = x.diag.shape;
                for (auto& v : x.diag.value) fat.value.push_back(dsum({v, acy}).sum);
                fat.action.resize(x.diag.shape.morphism_count());
                for (int m = 0; m < x.diag.shape.morphism_count(); ++m) {
                    DsumResult sa = dsum({x.diag.value[x.diag.shape.src(m)], acy});
                    DsumResult sb = dsum({x.diag.value[x.diag.shape.dst(m)], acy});
                    ChainMap f = compose_maps(sb.incl[0], compose_maps(x.diag.action[m], sa.proj[0]));
                    f = add_maps(f, compose_maps(sb.incl[1], compose_maps(identity_map(acy), sa.proj[1])));
                    fat.action[m] = std::move(f);
                }
                Cube y = make_cube(j, fat);
                if (is_homotopy_cartesian(x) != is_homotopy_cartesian(y)) fail("invariance under objectwise equivalence");
            }
        })
    });

    add("calculus.9", "calculus", "both faces Cartesian makes the total Cartesian", [](unsigned long long seed) -> CaseResult {
        PROP_BODY({
            Rng rng(seed + 43);
            for (int t = 0; t < 4; ++t) {
                FinCat j = t % 2 == 0 ? terminal_category() : discrete_category(2);
                ArrowOfCubes a = random_cartesian_arrow(j, rng);
                if (!is_homotopy_cartesian(a.left) || !is_homotopy_cartesian(a.right)) fail("faces not Cartesian");
                if (!is_homotopy_cartesian(a.total)) fail("faces Cartesian but total is not");
            }
        })
    });

    add("calculus.10", "calculus", "total and right Cartesian force the left face", [](unsigned long long seed) -> CaseResult {
        PROP_BODY({
            Rng rng(seed + 47);
            int nonvacuous = 0;
            for (int t = 0; t < 6; ++t) {
                FinCat j = t % 2 == 0 ? terminal_category() : discrete_category(2);
                Cube total = t % 3 == 2 ? make_cube(int_pb(j).g.total, random_poset_diagram(plus(int_pb(j).g.total).cat, rng))
                                        : random_cartesian_arrow(j, rng).total;
                DelResult dd = del(total, j);
                bool ht = is_homotopy_cartesian(total);
                bool hr = is_homotopy_cartesian(dd.right);
                bool hl = is_homotopy_cartesian(dd.left);
                if (ht && hr) {
                    ++nonvacuous;
                    if (!hl) fail("total and right Cartesian but left is not");
                }
            }
            if (nonvacuous == 0) fail("all samples vacuous");
        })
    });

    add("calculus.11", "calculus", "the boundary detects Cartesian cubes both ways", [](unsigned long long seed) -> CaseResult {
        PROP_BODY({
            Rng rng(seed + 53);
            for (int t = 0; t < 6; ++t) {
                FinCat j = t % 2 == 0 ? terminal_category() : discrete_category(2);
                Cube total = t % 2 == 1 ? make_cube(int_pb(j).g.total, random_poset_diagram(plus(int_pb(j).g.total).cat, rng))
                                        : random_cartesian_arrow(j, rng).total;
                DelResult dd = del(total, j);
                if (is_homotopy_cartesian(total) != is_homotopy_cartesian(dd.boundary)) fail("boundary verdict differs from the cube verdict");
            }
        })
    });

    add("calculus.12", "calculus", "sequential colimits of Cartesian cubes are Cartesian", [](unsigned long long seed) -> CaseResult {
        PROP_BODY({
            Rng rng(seed + 59);
            FinCat j = discrete_category(2);
            // a chain of Cartesian cubes via replacements of a growing diagram
            Diagram d0 = random_poset_diagram(j, rng, 2);
            std::vector<Cube> cubes;
            std::vector<std::vector<ChainMap>> maps;
            cubes.push_back(cartesian_replacement(j, d0));
            Diagram cur = d0;
            for (int step = 0; step < 2; ++step) {
                std::vector<std::pair<int, ChainComplex>> cells;
                cells.push_back({(int)rng.range(j.object_count()), random_complex(rng, 2, 0, 1)});
                FreeCells extra = free_cells_diagram(j, cells);
                Diagram next;
                next.shape = j;
                std::vector<ChainMap> incl;
                for (int o = 0; o < j.object_count(); ++o) {
                    DsumResult s = dsum({cur.value[o], extra.diag.value[o]});
                    next.value.push_back(s.sum);
                    incl.push_back(s.incl[0]);
                }
                next.action.resize(j.morphism_count());
                for (int m = 0; m < j.morphism_count(); ++m) {
                    DsumResult sa = dsum({cur.value[j.src(m)], extra.diag.value[j.src(m)]});
                    DsumResult sb = dsum({cur.value[j.dst(m)], extra.diag.value[j.dst(m)]});
                    ChainMap f = compose_maps(sb.incl[0], compose_maps(cur.action[m], sa.proj[0]));
                    f = add_maps(f, compose_maps(sb.incl[1], compose_maps(extra.diag.action[m], sa.proj[1])));
                    next.action[m] = std::move(f);
                }
                maps.push_back(replacement_functor_map(j, cur, next, incl));
                cubes.push_back(cartesian_replacement(j, next));
                cur = next;
            }
            // objectwise telescope of the cube chain
            PlusResult p = plus(j);
            Diagram tel;
            tel.shape = p.cat;
            FinCat lin = linear_category((int)cubes.size() - 1);
            for (int o = 0; o < p.cat.object_count(); ++o) {
                Diagram chain;
                chain.shape = lin;
                for (auto& c : cubes) chain.value.push_back(c.diag.value[o]);
                chain.action.resize(lin.morphism_count());
                for (int m = 0; m < lin.morphism_count(); ++m) {
                    int a = std::stoi(lin.object_label(lin.src(m)));
                    int b = std::stoi(lin.object_label(lin.dst(m)));
                    ChainMap acc = identity_map(chain.value[a]);
                    for (int k = a; k < b; ++k) acc = compose_maps(maps[k][o], acc);
                    chain.action[m] = std::move(acc);
                }
                tel.value.push_back(hocolim(chain).total);
            }
            tel.action.resize(p.cat.morphism_count());
            for (int m = 0; m < p.cat.morphism_count(); ++m) {
                // telescope functoriality: map the chains objectwise
                Diagram ca, cb;
                ca.shape = lin;
                cb.shape = lin;
                std::vector<ChainMap> comps;
                for (size_t k = 0; k < cubes.size(); ++k) {
                    ca.value.push_back(cubes[k].diag.value[p.cat.src(m)]);
                    cb.value.push_back(cubes[k].diag.value[p.cat.dst(m)]);
                    comps.push_back(cubes[k].diag.action[m]);
                }
                ca.action.resize(lin.morphism_count());
                cb.action.resize(lin.morphism_count());
                for (int mm = 0; mm < lin.morphism_count(); ++mm) {
                    int a = std::stoi(lin.object_label(lin.src(mm)));
                    int b = std::stoi(lin.object_label(lin.dst(mm)));
                    ChainMap acc1 = identity_map(ca.value[a]);
                    ChainMap acc2 = identity_map(cb.value[a]);
                    for (int k = a; k < b; ++k) {
                        acc1 = compose_maps(maps[k][p.cat.src(m)], acc1);
                        acc2 = compose_maps(maps[k][p.cat.dst(m)], acc2);
                    }
                    ca.action[mm] = std::move(acc1);
                    cb.action[mm] = std::move(acc2);
                }
                tel.action[m] = hocolim_map(ca, cb, comps);
            }
            Cube tel_cube = make_cube(j, tel);
            if (!is_homotopy_cartesian(tel_cube)) fail("telescope of Cartesian cubes is not Cartesian");
        })
    });

    add("calculus.13", "calculus", "replacement instances are Cartesian with equivalent vertices", [](unsigned long long seed) -> CaseResult {
        PROP_BODY({
            Rng rng(seed + 61);
            for (int n = 2; n <= 3; ++n) {
                FinCat j = powerset(n, PowersetVariant::Punctured).cat;
                Diagram x = random_poset_diagram(j, rng, 2);
                Cube z = cartesian_replacement(j, x);
                if (!is_homotopy_cartesian(z)) fail("replacement not Cartesian");
                for (auto& zeta : replacement_comparison(j, x, z))
                    if (!is_quasi_iso(zeta)) fail("vertex comparison");
            }
        })
    });

    add("calculus.14", "calculus", "classification matches the cell structure", [](unsigned long long seed) -> CaseResult {
        PROP_BODY({
            Rng rng(seed + 67);
            for (int t = 0; t < 4; ++t) {
                CellCube cc = random_cell_cube(2, rng, t % 2 == 0);
                CubeClass cls = cube_classify(cc.cube);
                if (!cls.cofibration_cube) fail("cell cube not a cofibration cube");
                if (cls.strongly_ho_cocartesian != cc.expected_strongly_cocartesian) fail("classification mismatch");
            }
            // constant cubes are strongly co-Cartesian
            ChainComplex c = two_term(1, 2);
            CubeClass cls = cube_classify(make_cocart_cube(2, constant_diagram_on(powerset(2, PowersetVariant::Full).cat, c)));
            if (!cls.strongly_ho_cocartesian) fail("constant cube");
        })
    });

    add("calculus.15", "calculus", "star commutes across disjoint discrete sets", [](unsigned long long seed) -> CaseResult {
        PROP_BODY({
            Rng rng(seed + 71);
            ChainComplex x = random_complex(rng, 2, 0, 2);
            for (int a = 1; a <= 3; ++a)
                for (int b = 1; b <= 2; ++b) {
                    ChainComplex lhs = star(discrete_category(a), star(discrete_category(b), x).value).value;
                    ChainComplex rhs = star(discrete_category(b), star(discrete_category(a), x).value).value;
                    if (homology(lhs) != homology(rhs)) fail("star commutation");
                }
        })
    });

    add("calculus.16", "calculus", "rezk comparison objects", [](unsigned long long seed) -> CaseResult {
        PROP_BODY({
            Rng rng(seed + 73);
            for (int n = 1; n <= 2; ++n) {
                PowersetResult ps = powerset(n + 1, PowersetVariant::Full);
                Diagram x = random_poset_diagram(ps.cat, rng, 2);
                unsigned full = (1u << (n + 1)) - 1;
                unsigned u = 1u + (unsigned)rng.range(full);
                unsigned t = (unsigned)rng.range(full + 1) & ~u;
                RezkResult r = rezk_objects(x, ps, u, t);
                if (!is_quasi_iso(r.xu_to_x2)) fail("xu -> x2 not an equivalence");
                if (!r.x2_to_starh.validate().ok()) fail("x2 -> starh not a chain map");
            }
        })
    });

    return props;
}

}  // namespace

const std::vector<PropertyCase>& property_battery() {
    static std::vector<PropertyCase> props = build_battery();
    return props;
}

std::vector<CaseResult> run_suite(const std::string& suite, unsigned long long seed) {
    std::vector<CaseResult> out;
    for (auto& p : property_battery()) {
        if (suite != "all" && p.suite != suite) continue;
        CaseResult r;
        try {
            r = p.run(seed);
        } catch (std::exception& e) {
            r.pass = false;
            r.detail = std::string("exception: ") + e.what();
        }
        r.id = p.id;
        r.name = p.name;
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace fc
