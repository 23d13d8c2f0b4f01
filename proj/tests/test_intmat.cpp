#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fc/intmat.hpp"

using namespace fc;

TEST_CASE("smith of a diagonal-ish matrix") {
    IntMat a(2, 2);
    a.set(0, 0, 2);
    a.set(1, 1, 6);
    auto s = smith(a);
    REQUIRE(s.rank == 2);
    CHECK(s.divisors == std::vector<Int>{2, 6});
}

TEST_CASE("smith computes invariant factors with divisibility") {
    // classic: [[2,0],[0,3]] has factors 1, 6
    IntMat a(2, 2);
    a.set(0, 0, 2);
    a.set(1, 1, 3);
    auto s = smith(a);
    REQUIRE(s.rank == 2);
    CHECK(s.divisors == std::vector<Int>{1, 6});
}

TEST_CASE("smith transforms satisfy L*A*R = D") {
    IntMat a(3, 4);
    int vals[3][4] = {{2, 4, 4, 0}, {-6, 6, 12, 6}, {10, 4, 16, -2}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 4; ++j) a.set(i, j, vals[i][j]);
    auto s = smith(a, true);
    IntMat d = s.left * a * s.right;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 4; ++j) {
            Int expect = (i == j && i < (int)s.divisors.size()) ? s.divisors[i] : Int(0);
            CHECK(d.at(i, j) == expect);
        }
    for (size_t i = 0; i + 1 < s.divisors.size(); ++i) CHECK(s.divisors[i + 1] % s.divisors[i] == 0);
}

TEST_CASE("kernel basis spans the kernel") {
    IntMat a(1, 3);
    a.set(0, 0, 1);
    a.set(0, 1, 2);
    a.set(0, 2, 3);
    IntMat k = kernel_basis(a);
    CHECK(k.cols() == 2);
    CHECK((a * k).is_zero());
}

TEST_CASE("integer solve respects divisibility") {
    IntMat a(2, 2);
    a.set(0, 0, 2);
    a.set(1, 1, 1);
    IntMat b(2, 1);
    b.set(0, 0, 3);
    b.set(1, 0, 5);
    CHECK(!solve_integer(a, b).has_value());
    b.set(0, 0, 4);
    auto x = solve_integer(a, b);
    REQUIRE(x.has_value());
    CHECK(a * *x == b);
}
