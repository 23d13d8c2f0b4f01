#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fc/reedy.hpp"

#include <set>

using namespace fc;

TEST_CASE("punctured and full cube structures satisfy the axioms") {
    for (int n = 2; n <= 4; ++n) {
        CHECK(check_reedy(reedy_punctured_cube(n)).ok());
        CHECK(check_reedy(reedy_full_cube(n)).ok());
    }
}

TEST_CASE("a mismarked inclusion breaks degree monotonicity") {
    ReedyStructure r = reedy_full_cube(2);
    int bad = -1;
    for (int m = 0; m < r.cat.morphism_count(); ++m)
        if (!r.cat.is_identity(m)) bad = m;
    r.direct[bad] = 0;
    r.inverse[bad] = 1;
    auto rep = check_reedy(r);
    REQUIRE(!rep.ok());
    bool cites_monotonicity = false;
    for (auto& v : rep.violations)
        if (v.find("lower") != std::string::npos || v.find("raise") != std::string::npos) cites_monotonicity = true;
    CHECK(cites_monotonicity);
}

TEST_CASE("constants criteria") {
    for (int n = 2; n <= 4; ++n) {
        CHECK(constants_criterion(reedy_punctured_cube(n), ConstantsSide::Cofibrant).holds);
        CHECK(constants_criterion(reedy_full_cube(n), ConstantsSide::Fibrant).holds);
    }
    for (int s = 1; s <= 4; ++s) {
        ReedyStructure sp = reedy_spider(s);
        CHECK(check_reedy(sp).ok());
        CHECK(constants_criterion(sp, ConstantsSide::Fibrant).holds);
    }
}

TEST_CASE("inherited structure on J+") {
    InheritedResult a = inherit_plus(reedy_punctured_cube(2));
    REQUIRE(a.ok);
    CHECK(check_reedy(a.structure).ok());
    CHECK(constants_criterion(a.structure, ConstantsSide::Cofibrant).holds);

    ReedyStructure pt;
    pt.cat = terminal_category();
    pt.degree = {0};
    pt.direct = {1};
    pt.inverse = {1};
    InheritedResult b = inherit_plus(pt);
    REQUIRE(b.ok);
    CHECK(b.structure.cat.object_count() == 2);
}

TEST_CASE("inherited structure on int_pb") {
    ReedyStructure pt;
    pt.cat = terminal_category();
    pt.degree = {0};
    pt.direct = {1};
    pt.inverse = {1};
    InheritedResult r = inherit_int_pb(pt);
    REQUIRE(r.ok);
    CHECK(check_reedy(r.structure).ok());
    CHECK(constants_criterion(r.structure, ConstantsSide::Cofibrant).holds);
    std::multiset<int> degs(r.structure.degree.begin(), r.structure.degree.end());
    CHECK(degs == std::multiset<int>{0, 1, 1});

    InheritedResult r2 = inherit_int_pb(reedy_punctured_cube(2));
    REQUIRE(r2.ok);
    CHECK(constants_criterion(r2.structure, ConstantsSide::Cofibrant).holds);
}

TEST_CASE("filtrations of the full cube") {
    for (int n = 2; n <= 4; ++n) {
        ReedyStructure r = reedy_full_cube(n);
        FiltrationResult f0 = filtration(r, 0);
        CHECK(f0.cat.object_count() == 1);
        FiltrationResult f1 = filtration(r, 1);
        CHECK(find_isomorphism(f1.cat, plus(discrete_category(n)).cat).has_value());
        FiltrationResult fn1 = filtration(r, n - 1);
        CHECK(find_isomorphism(fn1.cat, powerset(n, PowersetVariant::Copunctured).cat).has_value());
        FiltrationResult fn = filtration(r, n);
        CHECK(fn.cat == r.cat);
    }
}

TEST_CASE("filtration is monotone and exhausts the category") {
    ReedyStructure r = reedy_full_cube(3);
    int prev = 0;
    for (int k = 0; k <= 3; ++k) {
        FiltrationResult f = filtration(r, k);
        CHECK(f.cat.object_count() >= prev);
        prev = f.cat.object_count();
        std::string why;
        CHECK(check_functor(f.inclusion, &why));
    }
    CHECK(prev == r.cat.object_count());
}

TEST_CASE("latching categories of the full cube are copunctured cubes") {
    for (int n = 2; n <= 4; ++n) {
        ReedyStructure r = reedy_full_cube(n);
        PowersetResult p = powerset(n, PowersetVariant::Full);
        for (int o = 0; o < r.cat.object_count(); ++o) {
            LatchingResult l = latching_category(r, o);
            int k = __builtin_popcount(p.mask[o]);
            if (k == 0) {
                CHECK(l.cat.object_count() == 0);
                continue;
            }
            CHECK(l.cat.object_count() == (1 << k) - 1);
            CHECK(find_isomorphism(l.cat, powerset(k, PowersetVariant::Copunctured).cat).has_value());
        }
    }
}

TEST_CASE("set-level latching object agrees with the direct computation") {
    ReedyStructure r = reedy_full_cube(3);
    PowersetResult p = powerset(3, PowersetVariant::Full);
    FinSetDiagram x;
    x.shape = r.cat;
    x.size.resize(r.cat.object_count());
    for (int o = 0; o < r.cat.object_count(); ++o) x.size[o] = 1 << __builtin_popcount(p.mask[o]);
    auto subsets_of = [&](unsigned s) {
        std::vector<unsigned> out;
        for (unsigned t = 0;; t = (t - s) & s) {
            out.push_back(t);
            if (t == s) break;
        }
        std::sort(out.begin(), out.end());
        return out;
    };
    x.action.resize(r.cat.morphism_count());
    for (int m = 0; m < r.cat.morphism_count(); ++m) {
        auto src_subs = subsets_of(p.mask[r.cat.src(m)]);
        auto dst_subs = subsets_of(p.mask[r.cat.dst(m)]);
        x.action[m].resize(src_subs.size());
        for (size_t e = 0; e < src_subs.size(); ++e) {
            auto it = std::find(dst_subs.begin(), dst_subs.end(), src_subs[e]);
            x.action[m][e] = (int)(it - dst_subs.begin());
        }
    }
    REQUIRE(validate_set_diagram(x).ok());

    int top = p.object_of_mask.at(7);
    LatchingResult l = latching_category(r, top);
    FinSetDiagram restr;
    restr.shape = l.cat;
    for (int o = 0; o < l.cat.object_count(); ++o) restr.size.push_back(x.size[l.to_ambient.obj_map[o]]);
    for (int m = 0; m < l.cat.morphism_count(); ++m) restr.action.push_back(x.action[l.to_ambient.mor_map[m]]);
    REQUIRE(validate_set_diagram(restr).ok());
    SetColimit via_latching = set_colimit(restr);

    std::vector<int> proper;
    for (int o = 0; o < r.cat.object_count(); ++o)
        if (p.mask[o] != 7u) proper.push_back(o);
    SubcatResult sub = full_subcategory(r.cat, proper);
    FinSetDiagram restr2;
    restr2.shape = sub.cat;
    for (int o = 0; o < sub.cat.object_count(); ++o) restr2.size.push_back(x.size[sub.object_map[o]]);
    for (int m = 0; m < sub.cat.morphism_count(); ++m) restr2.action.push_back(x.action[sub.mor_map[m]]);
    REQUIRE(validate_set_diagram(restr2).ok());
    SetColimit direct = set_colimit(restr2);

    CHECK(via_latching.size == direct.size);
    CHECK(direct.size == 7);
}

TEST_CASE("degree-0 objects have empty latching categories") {
    ReedyStructure r = reedy_punctured_cube(3);
    for (int o = 0; o < r.cat.object_count(); ++o)
        CHECK(latching_category(r, o).cat.object_count() == 0);
}
