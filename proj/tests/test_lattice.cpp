#include <doctest.h>

#include <random>

#include "futaki/lattice.hpp"
#include "test_util.hpp"

using namespace futaki;
using testutil::cf;
using testutil::vz;

namespace {

MatZ rows(std::initializer_list<std::initializer_list<long>> rs) {
    MatZ m(static_cast<Eigen::Index>(rs.size()), static_cast<Eigen::Index>(rs.begin()->size()));
    Eigen::Index i = 0;
    for (const auto& r : rs) {
        Eigen::Index j = 0;
        for (long v : r) m(i, j++) = Int(v);
        ++i;
    }
    return m;
}

}  // namespace

TEST_CASE("determinant") {
    CHECK(det(MatZ::Identity(3, 3)) == 1);
    CHECK(det(rows({{1, 0, 0}, {0, 1, 0}, {0, 1, 1}})) == 1);
    CHECK(det(rows({{1, 0, 0}, {0, 1, 0}, {0, 0, 2}})) == 2);
    CHECK(det(rows({{0, 1}, {1, 0}})) == -1);
    CHECK(det(rows({{1, 2}, {2, 4}})) == 0);

    std::mt19937 rng(5);
    std::uniform_int_distribution<long> d(-6, 6);
    std::uniform_int_distribution<int> pick(0, 3);
    std::uniform_int_distribution<long> mult(-3, 3);
    for (int t = 0; t < 50; ++t) {
        MatZ a(4, 4);
        for (Eigen::Index i = 0; i < 4; ++i)
            for (Eigen::Index j = 0; j < 4; ++j) a(i, j) = Int(d(rng));
        Int base = det(a);
        int i = pick(rng), j = pick(rng);
        if (i != j) {
            MatZ b = a;
            b.row(i) += Int(mult(rng)) * b.row(j);
            CHECK(det(b) == base);
            MatZ c = a;
            c.row(i).swap(c.row(j));
            CHECK(det(c) == -base);
        }
    }
}

TEST_CASE("dual basis") {
    SUBCASE("standard basis") {
        auto us = dual_basis(MatZ::Identity(3, 3));
        CHECK(exact_eq(us[0], cf({1, 0, 0})));
        CHECK(exact_eq(us[1], cf({0, 1, 0})));
        CHECK(exact_eq(us[2], cf({0, 0, 1})));
    }
    SUBCASE("cone of the 10-cone fan, sigma_1") {
        auto us = dual_basis(rows({{1, 0, 0}, {0, 1, 0}, {0, 1, 1}}));
        CHECK(exact_eq(us[0], cf({1, 0, 0})));
        CHECK(exact_eq(us[1], cf({0, 1, -1})));
        CHECK(exact_eq(us[2], cf({0, 0, 1})));
    }
    SUBCASE("cone of the 10-cone fan, sigma_4") {
        auto us = dual_basis(rows({{-1, -1, -1}, {0, 1, 0}, {0, -1, -1}}));
        CHECK(exact_eq(us[0], cf({-1, 0, 0})));
        CHECK(exact_eq(us[1], cf({0, 1, -1})));
        CHECK(exact_eq(us[2], cf({1, 0, -1})));
    }
    SUBCASE("pairing is the identity on random unimodular cones") {
        std::mt19937 rng(13);
        for (int t = 0; t < 25; ++t) {
            MatZ g = testutil::random_unimodular(3, rng);
            auto us = dual_basis(g);
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) {
                    Rat dot = 0;
                    for (int c = 0; c < 3; ++c) dot += us[static_cast<size_t>(i)](c) * Rat(g(j, c));
                    CHECK(dot == (i == j ? 1 : 0));
                }
        }
    }
    SUBCASE("singular cone rejected") {
        CHECK_THROWS_AS((void)dual_basis(rows({{1, 2, 0}, {2, 4, 0}, {0, 0, 1}})), SingularCone);
    }
}

TEST_CASE("anticanonical support solve") {
    CHECK(exact_eq(solve_support(rows({{1, 0, 0}, {0, 1, 0}, {0, 1, 1}}), Rat(-1)),
                   cf({-1, -1, 0})));
    CHECK(exact_eq(solve_support(rows({{-1, -1, -1}, {0, 1, 0}, {0, -1, -1}}), Rat(-1)),
                   cf({0, -1, 2})));
    CHECK(exact_zero(solve_support(MatZ::Identity(3, 3), Rat(0))));

    // pairing with every ray gives the prescribed value
    std::mt19937 rng(17);
    for (int t = 0; t < 25; ++t) {
        MatZ g = testutil::random_unimodular(3, rng);
        CharForm m = solve_support(g, Rat(-1));
        for (int j = 0; j < 3; ++j) {
            Rat dot = 0;
            for (int c = 0; c < 3; ++c) dot += m(c) * Rat(g(j, c));
            CHECK(dot == -1);
        }
    }
}

TEST_CASE("rational gaussian solver") {
    MatQ a(3, 2);
    a << Rat(1), Rat(0), Rat(0), Rat(1), Rat(1), Rat(1);
    VecQ b(3);
    b << Rat(2), Rat(3), Rat(5);
    auto r = gauss_solve(a, b);
    REQUIRE(r.status == SolveStatus::Unique);
    CHECK(exact_eq(r.solution, cf({2, 3})));

    b(2) = Rat(6);
    CHECK(gauss_solve(a, b).status == SolveStatus::Inconsistent);

    MatQ c(1, 2);
    c << Rat(1), Rat(1);
    VecQ d(1);
    d << Rat(1);
    CHECK(gauss_solve(c, d).status == SolveStatus::Underdetermined);
}
