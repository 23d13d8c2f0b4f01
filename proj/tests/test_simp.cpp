#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fc/simp.hpp"
#include "fc/groth.hpp"

using namespace fc;

TEST_CASE("nerve f-vectors") {
    NerveResult p2 = nerve(powerset(2, PowersetVariant::Punctured).cat);
    CHECK(p2.sset.fvector() == std::vector<int>{3, 2});
    NerveResult p3 = nerve(powerset(3, PowersetVariant::Punctured).cat);
    CHECK(p3.sset.fvector() == std::vector<int>{7, 12, 6});
    CHECK(p3.sset.euler_characteristic() == 1);
    NerveResult arr = nerve(arrow_category());
    CHECK(arr.sset.fvector() == std::vector<int>{2, 1});
}

TEST_CASE("nerve rejects loops") {
    FinCat monoid;
    int o = monoid.add_object("x");
    int e = monoid.add_morphism(o, o, "e");
    monoid.set_compose(e, e, e);
    monoid.finish();
    CHECK_THROWS_AS(nerve(monoid), GuardError);
}

TEST_CASE("standard simplices from linear categories") {
    FinSimpSet d3 = standard_simplex(3);
    CHECK(d3.fvector() == std::vector<int>{4, 6, 4, 1});
    CHECK(d3.validate().ok());
}

TEST_CASE("product f-vectors") {
    FinSimpSet d1 = standard_simplex(1);
    FinSimpSet sq = sset_product(d1, d1);
    CHECK(sq.fvector() == std::vector<int>{4, 5, 2});
    FinSimpSet pt = point_sset();
    FinSimpSet same = sset_product(d1, pt);
    CHECK(same.fvector() == d1.fvector());
    FinSimpSet empty;
    CHECK(sset_product(empty, d1).fvector().empty());
}

TEST_CASE("normalized chains of contractible nerves") {
    for (int n = 2; n <= 4; ++n) {
        ChainComplex c = normalized_chains(nerve(powerset(n, PowersetVariant::Punctured).cat).sset);
        HomologySummary h = homology(c);
        REQUIRE(h.groups.count(0));
        CHECK(h.groups.at(0).first == 1);
        CHECK(h.groups.at(0).second.empty());
        long long total = 0;
        for (auto& kv : h.groups) total += kv.second.first;
        CHECK(total == 1);
    }
}

TEST_CASE("circle homology from the boundary of a 2-simplex") {
    FinSimpSet circle;
    circle.add_simplex(0, "0", {});
    circle.add_simplex(0, "1", {});
    circle.add_simplex(0, "2", {});
    // edges [01], [02], [12]; d0 drops the first vertex
    circle.add_simplex(1, "01", {SimplexRef{0, 1, {}}, SimplexRef{0, 0, {}}});
    circle.add_simplex(1, "02", {SimplexRef{0, 2, {}}, SimplexRef{0, 0, {}}});
    circle.add_simplex(1, "12", {SimplexRef{0, 2, {}}, SimplexRef{0, 1, {}}});
    REQUIRE(circle.validate().ok());
    HomologySummary h = homology(normalized_chains(circle));
    REQUIRE(h.groups.count(0));
    REQUIRE(h.groups.count(1));
    CHECK(h.groups.at(0).first == 1);
    CHECK(h.groups.at(1).first == 1);
}

TEST_CASE("point chains") {
    ChainComplex c = normalized_chains(point_sset());
    CHECK(c.ranks == std::vector<int>{1});
    CHECK(c.lo == 0);
}

TEST_CASE("euler characteristic equals alternating betti sum") {
    for (int n = 2; n <= 3; ++n) {
        FinSimpSet s = nerve(powerset(n, PowersetVariant::Punctured).cat).sset;
        HomologySummary h = homology(normalized_chains(s));
        long long chi = 0;
        for (auto& [deg, g] : h.groups) chi += (deg % 2 == 0 ? 1 : -1) * g.first;
        CHECK(chi == s.euler_characteristic());
    }
}

TEST_CASE("nerve of the opposite has the same f-vector") {
    FinCat c = powerset(3, PowersetVariant::Punctured).cat;
    CHECK(nerve(c).sset.fvector() == nerve(opposite(c)).sset.fvector());
    FinCat sp = int_po(3).g.total;
    CHECK(nerve(sp).sset.fvector() == nerve(opposite(sp)).sset.fvector());
}

TEST_CASE("nerve of a product matches the product of nerves simplex by simplex") {
    FinCat c = arrow_category();
    FinCat d = powerset(2, PowersetVariant::Punctured).cat;
    ProductCat pr = product_with_projections(c, d);
    NerveResult npr = nerve(pr.cat);
    FinSimpSet prod = sset_product(nerve(c).sset, nerve(d).sset);
    REQUIRE(npr.sset.fvector() == prod.fvector());
    // explicit bijection in each dimension: split a chain of pairs into its
    // two component terms and normalize
    NerveResult nc = nerve(c), nd = nerve(d);
    for (int k = 0; k <= npr.sset.dim(); ++k) {
        std::set<std::string> seen;
        for (int i = 0; i < npr.sset.count(k); ++i) {
            const Chain& chain = npr.chains.by_dim[k][i];
            // component chains with identity arrows marked
            Chain ca, cb;
            std::vector<int> ua, ub;
            for (int o : chain.objects) {
                ca.objects.push_back(pr.obj_pair[o].first);
                cb.objects.push_back(pr.obj_pair[o].second);
            }
            for (size_t t = 0; t < chain.mors.size(); ++t) {
                auto [f, g] = pr.mor_pair[chain.mors[t]];
                if (c.is_identity(f))
                    ua.push_back((int)t);
                else
                    ca.mors.push_back(f);
                if (d.is_identity(g))
                    ub.push_back((int)t);
                else
                    cb.mors.push_back(g);
            }
            // drop repeated vertices to get the nondegenerate component chains
            Chain ca2, cb2;
            ca2.objects.push_back(ca.objects[0]);
            for (size_t t = 0; t < ca.objects.size() - 1; ++t)
                if (std::find(ua.begin(), ua.end(), (int)t) == ua.end()) ca2.objects.push_back(ca.objects[t + 1]);
            ca2.mors = ca.mors;
            cb2.objects.push_back(cb.objects[0]);
            for (size_t t = 0; t < cb.objects.size() - 1; ++t)
                if (std::find(ub.begin(), ub.end(), (int)t) == ub.end()) cb2.objects.push_back(cb.objects[t + 1]);
            cb2.mors = cb.mors;
            int ia = nc.chains.find((int)ca2.mors.size(), ca2);
            int ib = nd.chains.find((int)cb2.mors.size(), cb2);
            REQUIRE(ia >= 0);
            REQUIRE(ib >= 0);
            bool disjoint = true;
            for (int e : ua)
                if (std::find(ub.begin(), ub.end(), e) != ub.end()) disjoint = false;
            CHECK(disjoint);
            std::ostringstream key;
            key << ia << "/";
            for (int e : ua) key << e << ",";
            key << "|" << ib << "/";
            for (int e : ub) key << e << ",";
            bool inserted = seen.insert(key.str()).second;
            CHECK(inserted);
        }
        CHECK((int)seen.size() == prod.count(k));
    }
}
