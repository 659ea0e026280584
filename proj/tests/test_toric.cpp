#include <doctest.h>

#include <algorithm>
#include <random>

#include "futaki/toric.hpp"
#include "test_util.hpp"

using namespace futaki;
using testutil::cf;

namespace {

FactoredRational beta_of(std::initializer_list<std::initializer_list<long>> forms, long sign) {
    std::vector<CharForm> fs;
    for (const auto& f : forms) fs.push_back(testutil::cf(f));
    return FactoredRational::reciprocal_of_forms(fs) * Rat(sign);
}

}  // namespace

TEST_CASE("fan validation") {
    SUBCASE("P3 is smooth, complete, Gorenstein") {
        ValidationReport rep = validate_fan(testutil::load_fan("p3.json"));
        CHECK(rep.ok());
        CHECK(rep.all_smooth());
        CHECK(rep.complete);
        CHECK(rep.gorenstein);
    }
    SUBCASE("the 10-cone resolution is smooth and complete") {
        ValidationReport rep = validate_fan(testutil::load_fan("ex21.json"));
        CHECK(rep.ok());
        CHECK(rep.coneSmooth.size() == 10);
    }
    SUBCASE("|det| = 2 cone is flagged") {
        ValidationReport rep = validate_fan(testutil::load_fan("bad_nonsmooth.json"));
        CHECK(!rep.ok());
        CHECK(!rep.all_smooth());
        bool found = false;
        for (const auto& d : rep.coneDet)
            if (d == 2 || d == -2) found = true;
        CHECK(found);
        CHECK(!rep.warnings.empty());
    }
    SUBCASE("incomplete fan is caught") {
        Fan f = testutil::load_fan("p3.json");
        f.cones.pop_back();
        ValidationReport rep = validate_fan(f);
        CHECK(!rep.complete);
    }
}

TEST_CASE("per-cone localization data of the 10-cone fan") {
    Fan f = testutil::load_fan("ex21.json");

    ConeData c1 = cone_data(f, 0);
    CHECK(exact_eq(c1.m, cf({-1, -1, 0})));
    CHECK(c1.beta == beta_of({{1, 0, 0}, {0, 1, -1}, {0, 0, 1}}, -1));

    ConeData c5 = cone_data(f, 4);
    CHECK(c5.beta == beta_of({{1, 0, 0}, {0, 1, -1}, {0, 0, 1}}, +1));

    ConeData c8 = cone_data(f, 7);
    CHECK(exact_eq(c8.m, cf({2, -1, 0})));
    CHECK(c8.beta == beta_of({{1, 0, 0}, {0, 0, 1}, {1, -1, 1}}, -1));
}

TEST_CASE("non-smooth cone rejected by cone_data") {
    Fan f = testutil::load_fan("bad_nonsmooth.json");
    CHECK_THROWS_AS((void)cone_data(f, 1), NonSmoothCone);
}

TEST_CASE("toric Futaki invariants") {
    CHECK(exact_eq(toric_futaki(testutil::load_fan("ex21.json")), cf({-4, -4, 4})));
    CHECK(exact_eq(toric_futaki(testutil::load_fan("ex22.json")), cf({4, 4, 4})));
    CHECK(exact_zero(toric_futaki(testutil::load_fan("p3.json"))));
}

TEST_CASE("anticanonical degrees") {
    CHECK(toric_degree(testutil::load_fan("p3.json")) == 64);
    // golden values, recorded from the exact computation
    CHECK(toric_degree(testutil::load_fan("ex21.json")) == 38);
    CHECK(toric_degree(testutil::load_fan("ex22.json")) == 38);
}

TEST_CASE("localization vanishing below top degree") {
    for (const char* name : {"p3.json", "ex21.json", "ex22.json"}) {
        Fan f = testutil::load_fan(name);
        for (int p = 0; p < f.n; ++p) {
            CAPTURE(name);
            CAPTURE(p);
            CHECK(toric_residue_sum(f, p).to_poly().is_zero());
        }
        CHECK(toric_residue_sum(f, f.n).to_poly().total_degree() == 0);
        // the p = n+1 sum is linear; for P3 it is the zero form
        CHECK(toric_residue_sum(f, f.n + 1).to_poly().total_degree() <= 1);
    }
}

TEST_CASE("relabeling invariance") {
    Fan f = testutil::load_fan("ex21.json");
    CharForm base = toric_futaki(f);

    Fan g = f;
    std::mt19937 rng(41);
    // permute rays
    std::vector<int> perm(f.rays.size());
    for (size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
    std::shuffle(perm.begin(), perm.end(), rng);
    g.rays.assign(f.rays.size(), VecZ());
    for (size_t i = 0; i < f.rays.size(); ++i)
        g.rays[static_cast<size_t>(perm[i])] = f.rays[i];
    for (auto& cone : g.cones)
        for (auto& idx : cone) idx = perm[static_cast<size_t>(idx)];
    // permute cones
    std::shuffle(g.cones.begin(), g.cones.end(), rng);

    CHECK(exact_eq(toric_futaki(g), base));
    CHECK(toric_degree(g) == toric_degree(f));
}

TEST_CASE("GL(n,Z) equivariance") {
    Fan f = testutil::load_fan("ex21.json");
    CharForm base = toric_futaki(f);
    std::mt19937 rng(43);
    for (int t = 0; t < 3; ++t) {
        MatZ g = testutil::random_unimodular(3, rng);
        Fan tf = testutil::transform_fan(f, g);
        REQUIRE(validate_fan(tf).ok());
        CHECK(exact_eq(toric_futaki(tf), testutil::inverse_transpose_action(g, base)));
    }
}
