#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fc/calculus.hpp"

using namespace fc;

namespace {
HomologySummary shifted(const HomologySummary& h, int k) {
    HomologySummary out;
    for (auto& [deg, g] : h.groups) out.groups[deg + k] = g;
    return out;
}
}  // namespace

TEST_CASE("r_diagram places X at the cone point") {
    ChainComplex x = free_complex(0, 2);
    Diagram d = r_diagram(terminal_category(), x);
    CHECK(d.shape.object_count() == 2);
    CHECK(d.validate().ok());
    Diagram e = r_diagram(empty_category(), x);
    CHECK(e.shape.object_count() == 1);
    Diagram f = r_diagram(discrete_category(2), x);
    CHECK(f.shape.object_count() == 3);
}

TEST_CASE("star of the empty set, the point, and the two-point set") {
    Rng rng(101);
    for (int t = 0; t < 5; ++t) {
        ChainComplex x = random_complex(rng, 3, 0, 3);
        StarResult empty = star(empty_category(), x);
        CHECK(is_quasi_iso(empty.from_x));
        StarResult pt = star(terminal_category(), x);
        CHECK(is_acyclic(pt.value));
        StarResult two = star(discrete_category(2), x);
        CHECK(homology(two.value) == shifted(homology(x), 1));
    }
}

TEST_CASE("star is functorial in X") {
    Rng rng(103);
    ChainComplex a = random_complex(rng, 2, 0, 2);
    ChainComplex b = random_complex(rng, 2, 0, 2);
    ChainMap f = random_chain_map(rng, a, b);
    ChainMap sf = star_map_x(discrete_category(2), f);
    CHECK(sf.validate().ok());
}

TEST_CASE("star_h compares to star by a quasi-isomorphism") {
    Rng rng(107);
    for (unsigned mask : {1u, 3u, 7u}) {
        for (int t = 0; t < 3; ++t) {
            ChainComplex x = random_complex(rng, 2, 0, 2);
            StarHResult sh = star_h(mask, x);
            CHECK(is_quasi_iso(sh.compare));
        }
    }
    // S = {1}: acyclic like the cone
    ChainComplex x = free_complex(0, 1);
    CHECK(is_acyclic(star_h(1u, x).value));
}

TEST_CASE("T_0 of the identity is acyclic, T_1 is the identity up to quasi-iso") {
    Rng rng(109);
    for (int t = 0; t < 3; ++t) {
        ChainComplex x = random_complex(rng, 2, 0, 2);
        TnResult t0 = t_n(functor_identity(), x, 0);
        CHECK(is_acyclic(t0.value));
        TnResult t1 = t_n(functor_identity(), x, 1);
        CHECK(is_quasi_iso(t1.unit));
    }
}

TEST_CASE("T_n of a constant functor is the constant") {
    ChainComplex c0 = two_term(1, 3);  // has torsion, a sharper probe
    FunctorSpec f = functor_constant(c0);
    ChainComplex x = free_complex(0, 1);
    for (int n = 0; n <= 2; ++n) {
        TnResult r = t_n(f, x, n);
        CHECK(homology(r.value) == homology(c0));
        // holim of a constant diagram is the cotensor by the nerve
        ChainComplex cot = cotensor_sset(c0, nerve(powerset(n + 1, PowersetVariant::Punctured).cat).sset);
        CHECK(homology(r.value) == homology(cot));
    }
}

TEST_CASE("P_n of the identity stabilizes") {
    ChainComplex x = free_complex(0, 1);
    TowerStage s1 = p_n(functor_identity(), x, 1);
    CHECK(s1.stabilized);
    CHECK(s1.iterates == 1);
    CHECK(homology(s1.value) == homology(x));
    TowerStage s0 = p_n(functor_identity(), x, 0);
    CHECK(s0.stabilized);
    CHECK(is_acyclic(s0.value));
}

TEST_CASE("P_1 of the quadratic functor does not stabilize") {
    ChainComplex x = free_complex(0, 1);
    TowerStage s = p_n(functor_square(), x, 1, 2);
    CHECK(!s.stabilized);
    CHECK(s.iterates == 2);
    // the iterates suspend: homology moves up one degree each time
    CHECK(homology(s.iterate_value[0]) == homology(free_complex(0, 1)));
    CHECK(homology(s.iterate_value[1]) == homology(free_complex(1, 1)));
    CHECK(homology(s.iterate_value[2]) == homology(free_complex(2, 1)));
    // the truncated telescope carries the last iterate's homology
    CHECK(homology(s.value) == homology(free_complex(2, 1)));
}

TEST_CASE("tower maps of the identity functor are quasi-isomorphisms") {
    ChainComplex x = free_complex(0, 1);
    TowerMapResult q1 = tower_map(functor_identity(), x, 1);
    CHECK(is_quasi_iso(q1.map));
    CHECK(q1.compatible_with_units);
    TowerMapResult q0 = tower_map(functor_identity(), x, 0);
    CHECK(!is_quasi_iso(q0.map));  // P_0 is acyclic, P_1 is X
    CHECK(q0.compatible_with_units);
}

TEST_CASE("tower maps of a constant functor are quasi-isomorphisms") {
    ChainComplex c0 = free_complex(0, 1);
    ChainComplex x = two_term(1, 2);
    for (int n = 0; n <= 1; ++n) {
        TowerMapResult q = tower_map(functor_constant(c0), x, n);
        CHECK(is_quasi_iso(q.map));
        CHECK(q.compatible_with_units);
    }
}

TEST_CASE("quadratic functor: the map into the unstable level is not a quasi-iso") {
    ChainComplex x = free_complex(0, 1);
    TowerMapResult q1 = tower_map(functor_square(), x, 1, 2);
    CHECK(q1.src_stage.stabilized);
    CHECK(!q1.dst_stage.stabilized);
    CHECK(!is_quasi_iso(q1.map));
}

TEST_CASE("aux tower comparison is a quasi-isomorphism for builtins") {
    ChainComplex x = two_term(1, 2);
    for (int n = 0; n <= 1; ++n) {
        AuxStage a = aux_tower(functor_identity(), x, n);
        CHECK(a.compare_qiso);
        AuxStage c = aux_tower(functor_constant(free_complex(0, 1)), x, n);
        CHECK(c.compare_qiso);
    }
    AuxStage d = aux_tower(functor_double(), x, 1);
    CHECK(d.compare_qiso);
    AuxStage e = aux_tower(functor_tensor_with(two_term(0, 2)), x, 1);
    CHECK(e.compare_qiso);
}

TEST_CASE("aux tower of the quadratic functor at level 1 compares correctly") {
    ChainComplex x = free_complex(0, 1);
    AuxStage a = aux_tower(functor_square(), x, 1, 2);
    CHECK(a.compare_qiso);
}

namespace {
Diagram constant_powerset_diagram(const PowersetResult& ps, const ChainComplex& c) {
    Diagram d;
    d.shape = ps.cat;
    d.value.assign(ps.cat.object_count(), c);
    for (int m = 0; m < ps.cat.morphism_count(); ++m) d.action.push_back(identity_map(c));
    return d;
}
}  // namespace

TEST_CASE("rezk objects") {
    Rng rng(113);
    PowersetResult ps = powerset(3, PowersetVariant::Full);
    ChainComplex c = random_complex(rng, 2, 0, 2);
    Diagram x = constant_powerset_diagram(ps, c);
    // constant diagram: X^2(U,T) has the homology of X(T)
    RezkResult r = rezk_objects(x, ps, 3u, 4u);
    CHECK(homology(r.x2) == homology(c));
    CHECK(is_quasi_iso(r.xu_to_x2));
    CHECK(r.x2_to_starh.validate().ok());
    // |U| = 1: X_U(T) is quasi-iso to X(T u {s})
    RezkResult r1 = rezk_objects(x, ps, 1u, 2u);
    CHECK(homology(r1.xu) == homology(c));

    // when the diagram vanishes away from T, the comparison into the
    // homotopy variant collapses the feet and becomes a quasi-iso
    Diagram y;
    y.shape = ps.cat;
    y.value.assign(ps.cat.object_count(), zero_complex());
    y.value[ps.object_of_mask.at(0)] = c;
    y.action.resize(ps.cat.morphism_count());
    for (int m = 0; m < ps.cat.morphism_count(); ++m)
        y.action[m] = ChainMap{y.value[ps.cat.src(m)], y.value[ps.cat.dst(m)], {}};
    for (int o = 0; o < ps.cat.object_count(); ++o) y.action[ps.cat.identity(o)] = identity_map(y.value[o]);
    REQUIRE(y.validate().ok());
    RezkResult r2 = rezk_objects(y, ps, 3u, 0u);
    CHECK(is_quasi_iso(r2.x2_to_starh));
}

TEST_CASE("rezk comparison maps on a nonconstant diagram") {
    // the subset-chains diagram: X(S) = normalized chains of the simplex on S
    PowersetResult ps = powerset(2, PowersetVariant::Full);
    Diagram x;
    x.shape = ps.cat;
    for (int o = 0; o < ps.cat.object_count(); ++o)
        x.value.push_back(free_complex(0, 1 + __builtin_popcount(ps.mask[o])));
    x.action.resize(ps.cat.morphism_count());
    for (int m = 0; m < ps.cat.morphism_count(); ++m) {
        ChainMap f{x.value[ps.cat.src(m)], x.value[ps.cat.dst(m)], {}};
        IntMat mm(f.dst.rank_at(0), f.src.rank_at(0));
        for (int i = 0; i < f.src.rank_at(0); ++i) mm.set(i, i, 1);
        f.comp[0] = mm;
        x.action[m] = f;
    }
    REQUIRE(x.validate().ok());
    RezkResult r = rezk_objects(x, ps, 3u, 0u);
    CHECK(is_quasi_iso(r.xu_to_x2));
    CHECK(r.x2_to_starh.validate().ok());
}

TEST_CASE("cartesian replacement is homotopy Cartesian and objectwise equivalent") {
    Rng rng(127);
    for (int trial = 0; trial < 3; ++trial) {
        FinCat j = trial % 2 == 0 ? powerset(2, PowersetVariant::Punctured).cat : pb_category();
        Diagram x;
        x.shape = j;
        for (int o = 0; o < j.object_count(); ++o) x.value.push_back(random_complex(rng, 2, 0, 2));
        // free-cell style maps: declare everything via a terminal-valued sink
        // simpler: constant diagram twisted by an automorphism-free choice
        ChainComplex c = random_complex(rng, 2, 0, 2);
        x.value.assign(j.object_count(), c);
        x.action.assign(j.morphism_count(), identity_map(c));
        REQUIRE(x.validate().ok());
        Cube rep = cartesian_replacement(j, x);
        CHECK(is_homotopy_cartesian(rep));
        for (auto& zeta : replacement_comparison(j, x, rep)) CHECK(is_quasi_iso(zeta));
    }
}

TEST_CASE("a square concentrated at the top is not homotopy Cartesian") {
    FinCat j = powerset(2, PowersetVariant::Punctured).cat;
    PlusResult p = plus(j);
    Diagram d;
    d.shape = p.cat;
    d.value.assign(p.cat.object_count(), zero_complex());
    PowersetResult ps = powerset(2, PowersetVariant::Punctured);
    d.value[p.obj_map[ps.object_of_mask.at(3)]] = free_complex(0, 1);
    d.action.resize(p.cat.morphism_count());
    for (int m = 0; m < p.cat.morphism_count(); ++m)
        d.action[m] = ChainMap{d.value[p.cat.src(m)], d.value[p.cat.dst(m)], {}};
    for (int o = 0; o < p.cat.object_count(); ++o)
        d.action[p.cat.identity(o)] = identity_map(d.value[o]);
    Cube x = make_cube(j, d);
    CHECK(!is_homotopy_cartesian(x));
    // but a constant cube is
    Diagram cd;
    cd.shape = p.cat;
    cd.value.assign(p.cat.object_count(), free_complex(0, 1));
    cd.action.assign(p.cat.morphism_count(), identity_map(free_complex(0, 1)));
    CHECK(is_homotopy_cartesian(make_cube(j, cd)));
}

TEST_CASE("del of a constant cube is objectwise acyclic") {
    FinCat j = terminal_category();
    IntPbResult ip = int_pb(j);
    PlusResult big = plus(ip.g.total);
    ChainComplex c = free_complex(0, 1);
    Diagram d;
    d.shape = big.cat;
    d.value.assign(big.cat.object_count(), c);
    d.action.assign(big.cat.morphism_count(), identity_map(c));
    Cube x = make_cube(ip.g.total, d);
    DelResult res = del(x, j);
    for (auto& v : res.boundary.diag.value) CHECK(is_acyclic(v));
}

namespace {
// a mildly interesting Cartesian cube: the replacement of a random-ish diagram
Cube random_cartesian_cube(const FinCat& j, Rng& rng) {
    ChainComplex c = random_complex(rng, 2, 0, 2);
    Diagram x;
    x.shape = j;
    x.value.assign(j.object_count(), c);
    x.action.assign(j.morphism_count(), identity_map(c));
    return cartesian_replacement(j, x);
}
}  // namespace

TEST_CASE("boundary detects Cartesian cubes both ways over the point") {
    Rng rng(131);
    FinCat j = terminal_category();
    for (int t = 0; t < 4; ++t) {
        Cube left = random_cartesian_cube(j, rng);
        Cube right = random_cartesian_cube(j, rng);
        // a map left -> right: zero components are always natural
        std::vector<ChainMap> alpha;
        for (int o = 0; o < left.shape.cat.object_count(); ++o)
            alpha.push_back(zero_map(left.diag.value[o], right.diag.value[o]));
        Cube total = cube_from_arrow(j, left, right, alpha);
        CHECK(is_homotopy_cartesian(total));  // both faces Cartesian forces the total
        DelResult dd = del(total, j);
        CHECK(is_homotopy_cartesian(dd.boundary) == is_homotopy_cartesian(total));
    }
}

TEST_CASE("fiber commutation for exact builtins, rejection for the quadratic functor") {
    Rng rng(137);
    FinCat j = terminal_category();
    Cube left = random_cartesian_cube(j, rng);
    Cube right = random_cartesian_cube(j, rng);
    std::vector<ChainMap> alpha;
    for (int o = 0; o < left.shape.cat.object_count(); ++o)
        alpha.push_back(zero_map(left.diag.value[o], right.diag.value[o]));
    Cube total = cube_from_arrow(j, left, right, alpha);

    FiberCommReport rid = fiber_commutation(functor_identity(), total, j, 1);
    CHECK(rid.all_ok());
    FiberCommReport rsh = fiber_commutation(functor_shift(1), total, j, 2);
    CHECK(rsh.all_ok());
    FiberCommReport rdb = fiber_commutation(functor_double(), total, j, 4);
    CHECK(rdb.all_ok());
    FiberCommReport rtc = fiber_commutation(functor_tensor_with(two_term(0, 2)), total, j, 5);
    CHECK(rtc.all_ok());
    CHECK_THROWS_AS(fiber_commutation(functor_square(), total, j, 3), GuardError);
}

TEST_CASE("latching classification") {
    // cell cube: X(S) = free module on a set of cells indexed by subsets of S
    // with a cell at every PROPER subset of the top; the top vertex is then
    // the strict pushout, which is homotopy co-Cartesian
    PowersetResult ps = powerset(2, PowersetVariant::Full);
    auto build = [&](bool top_cell) {
        Diagram d;
        d.shape = ps.cat;
        auto cells_of = [&](unsigned s) {
            std::vector<unsigned> cells;
            for (unsigned t = 0; t < 4; ++t)
                if ((t & s) == t && (top_cell || t != 3u)) cells.push_back(t);
            return cells;
        };
        for (int o = 0; o < ps.cat.object_count(); ++o)
            d.value.push_back(free_complex(0, (int)cells_of(ps.mask[o]).size()));
        d.action.resize(ps.cat.morphism_count());
        for (int m = 0; m < ps.cat.morphism_count(); ++m) {
            auto asubs = cells_of(ps.mask[ps.cat.src(m)]);
            auto bsubs = cells_of(ps.mask[ps.cat.dst(m)]);
            ChainMap f{d.value[ps.cat.src(m)], d.value[ps.cat.dst(m)], {}};
            IntMat mm(f.dst.rank_at(0), f.src.rank_at(0));
            for (size_t i = 0; i < asubs.size(); ++i) {
                auto it = std::find(bsubs.begin(), bsubs.end(), asubs[i]);
                mm.set((int)(it - bsubs.begin()), (int)i, 1);
            }
            f.comp[0] = mm;
            d.action[m] = f;
        }
        return make_cocart_cube(2, d);
    };
    CubeClass cls = cube_classify(build(false));
    CHECK(cls.cofibration_cube);
    CHECK(cls.ho_cocartesian);
    CHECK(cls.strongly_ho_cocartesian);
    // with a fresh cell at the top the cube is still a cofibration cube but
    // no longer co-Cartesian
    CubeClass with_top = cube_classify(build(true));
    CHECK(with_top.cofibration_cube);
    CHECK(!with_top.ho_cocartesian);

    // constant cube: strongly co-Cartesian
    ChainComplex c = two_term(1, 2);
    Diagram cd;
    cd.shape = ps.cat;
    cd.value.assign(ps.cat.object_count(), c);
    cd.action.assign(ps.cat.morphism_count(), identity_map(c));
    CubeClass ccls = cube_classify(make_cocart_cube(2, cd));
    CHECK(ccls.strongly_ho_cocartesian);

    // zero except the top vertex: not ho-co-Cartesian
    Diagram zd;
    zd.shape = ps.cat;
    zd.value.assign(ps.cat.object_count(), zero_complex());
    zd.value[ps.object_of_mask.at(3)] = free_complex(0, 1);
    zd.action.resize(ps.cat.morphism_count());
    for (int m = 0; m < ps.cat.morphism_count(); ++m)
        zd.action[m] = ChainMap{zd.value[ps.cat.src(m)], zd.value[ps.cat.dst(m)], {}};
    for (int o = 0; o < ps.cat.object_count(); ++o) zd.action[ps.cat.identity(o)] = identity_map(zd.value[o]);
    CubeClass zcls = cube_classify(make_cocart_cube(2, zd));
    CHECK(!zcls.ho_cocartesian);
}

TEST_CASE("general index families reproduce the point tower") {
    ChainComplex x = free_complex(0, 1);
    TnResult a = t_n(functor_identity(), x, 1);
    TnResult b = t_n_family(functor_identity(), x, 1, family_point());
    CHECK(homology(a.value) == homology(b.value));
    CHECK(is_quasi_iso(b.unit) == is_quasi_iso(a.unit));
}

TEST_CASE("star commutes with itself across discrete sets up to homology") {
    Rng rng(139);
    ChainComplex x = random_complex(rng, 2, 0, 2);
    for (int a = 1; a <= 3; ++a)
        for (int b = 1; b <= 2; ++b) {
            ChainComplex lhs = star(discrete_category(a), star(discrete_category(b), x).value).value;
            ChainComplex rhs = star(discrete_category(b), star(discrete_category(a), x).value).value;
            CHECK(homology(lhs) == homology(rhs));
        }
}

TEST_CASE("objectwise equivalences pass through T_n") {
    // alpha: const(C) => const(C + acyclic), an objectwise quasi-iso
    ChainComplex c = free_complex(0, 1);
    ChainComplex acy = cone(identity_map(free_complex(0, 1)));
    DsumResult ds = dsum({c, acy});
    FunctorSpec f = functor_constant(c);
    FunctorSpec g = functor_constant(ds.sum);
    ChainComplex x = free_complex(0, 1);
    for (int n = 0; n <= 1; ++n) {
        TnResult tf = t_n(f, x, n);
        TnResult tg = t_n(g, x, n);
        PowersetResult ps = powerset(n + 1, PowersetVariant::Punctured);
        std::vector<ChainMap> comps(ps.cat.object_count(), ds.incl[0]);
        ChainMap tn_alpha = holim_map(tf.diagram, tg.diagram, comps);
        CHECK(is_quasi_iso(tn_alpha));
    }
}

TEST_CASE("functor flags verification") {
    FlagReport id = verify_functor_flags(functor_identity(), 17);
    CHECK(id.preserves_zero_ok);
    CHECK(id.exact_on_fiber_squares_ok);
    CHECK(id.functorial_ok);
    FlagReport sq = verify_functor_flags(functor_square(), 17);
    CHECK(sq.preserves_zero_ok);
    CHECK(!sq.exact_on_fiber_squares_ok);
    FlagReport sh = verify_functor_flags(functor_shift(2), 17);
    CHECK(sh.exact_on_fiber_squares_ok);
}

#include "fc/json_io.hpp"

TEST_CASE("cube json round trips") {
    Rng rng(913);
    FinCat j = powerset(2, PowersetVariant::Punctured).cat;
    Cube x = make_cube(j, [&] {
        ChainComplex c = random_complex(rng, 2, 0, 2);
        Diagram d;
        d.shape = plus(j).cat;
        d.value.assign(d.shape.object_count(), c);
        d.action.assign(d.shape.morphism_count(), identity_map(c));
        return d;
    }());
    Cube back = cartesian_cube_from_json(cartesian_cube_to_json(x));
    CHECK(is_homotopy_cartesian(back) == is_homotopy_cartesian(x));

    {
        PowersetResult ps = powerset(2, PowersetVariant::Full);
        ChainComplex c = two_term(1, 2);
        Diagram d;
        d.shape = ps.cat;
        d.value.assign(ps.cat.object_count(), c);
        d.action.assign(ps.cat.morphism_count(), identity_map(c));
        CocartCube cc = make_cocart_cube(2, d);
        CocartCube ccback = cocart_cube_from_json(cocart_cube_to_json(cc));
        CubeClass a = cube_classify(cc), b = cube_classify(ccback);
        CHECK(a.strongly_ho_cocartesian == b.strongly_ho_cocartesian);
    }
}

TEST_CASE("guards and shape mismatches") {
    ChainComplex x = free_complex(0, 1);
    CHECK_THROWS_AS(star_h(0u, x), GuardError);
    CHECK_THROWS_AS(jn(terminal_category(), 14), GuardError);
    // del rejects cubes whose shape is not (int_pb J)+
    FinCat j = terminal_category();
    Diagram d;
    d.shape = plus(j).cat;
    d.value.assign(d.shape.object_count(), x);
    d.action.assign(d.shape.morphism_count(), identity_map(x));
    Cube c = make_cube(j, d);
    CHECK_THROWS_AS(del(c, j), std::invalid_argument);
    PowersetResult ps = powerset(2, PowersetVariant::Full);
    Diagram d5;
    d5.shape = ps.cat;
    d5.value.assign(ps.cat.object_count(), x);
    d5.action.assign(ps.cat.morphism_count(), identity_map(x));
    CHECK_THROWS_AS(make_cocart_cube(5, std::move(d5)), GuardError);
}
