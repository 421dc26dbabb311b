#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "fieldred/singer.hpp"

using namespace fieldred::singer;
using fieldred::gf::Code;
using fieldred::gf::Field;
using fieldred::gf::FieldError;
using fieldred::linalg::Mat;
using fieldred::linalg::Vec;
using fieldred::projgeo::Subspace;
using fieldred::spread::Spread;
using fieldred::spread::Verdict;
using fieldred::vfr::VfrMap;

TEST_CASE("build_singer orders") {
    CHECK(build_singer(2, 4).order == 15);
    CHECK(build_singer(3, 2).order == 4);
    CHECK(build_singer(2, 6).order == 63);
    CHECK(build_singer(2, 4).g.aut == 0);
}

TEST_CASE("subspace orbits") {
    SingerCycle c = build_singer_via(2, 4, 2);
    const Field& f2 = Field::get(2, 1);

    Subspace seed = standard_seed(c, 2);
    OrbitReport rep = subspace_orbit(c, seed);
    CHECK(rep.orbit.size() == 5);
    CHECK(rep.is_spread);
    CHECK(rep.stabiliser_exponent == 5);

    // orbit length * stabiliser order = group order
    CHECK(rep.orbit.size() * ((4 - 1) / (2 - 1)) == c.order);

    // a line not of subfield-coset type has a full-length non-spread orbit
    bool found_bad = false;
    fieldred::projgeo::enumerate_subspaces(f2, 4, 2, [&](const Subspace& s) {
        if (found_bad) return;
        OrbitReport r = subspace_orbit(c, s);
        if (!r.is_spread) {
            CHECK(r.orbit.size() == 15);
            found_bad = true;
        }
    });
    CHECK(found_bad);

    // q=2, n=6, d=3: 9 planes forming a spread of PG(5,2)
    SingerCycle c6 = build_singer_via(2, 6, 3);
    OrbitReport rep6 = subspace_orbit(c6, standard_seed(c6, 3));
    CHECK(rep6.orbit.size() == 9);
    CHECK(rep6.is_spread);
    CHECK(rep6.stabiliser_exponent == 9);
}

TEST_CASE("the unique spread orbit equals the Desarguesian spread of the outer map") {
    const Field& f2 = Field::get(2, 1);

    auto check_equal = [&](int n, int d) {
        SingerCycle c = build_singer_via(2, n, d);
        OrbitReport rep = subspace_orbit(c, standard_seed(c, d));
        REQUIRE(rep.is_spread);
        auto sorted = rep.orbit;
        std::sort(sorted.begin(), sorted.end());
        Spread dsp = fieldred::spread::build_desarguesian(
            VfrMap(Field::get(2, d), f2, n / d));
        CHECK(sorted == dsp.elements);
    };
    check_equal(4, 2);
    check_equal(6, 2);
    check_equal(6, 3);
}

TEST_CASE("spread_orbits full scans") {
    SingerCycle c4 = build_singer(2, 4);
    auto r42 = spread_orbits(c4, 2);
    CHECK(r42.size() == 1);
    Spread s42 = fieldred::spread::make_spread(
        *r42[0].seed.f, 2, 2, r42[0].orbit);
    CHECK(fieldred::spread::is_desarguesian(s42) == Verdict::yes);
    CHECK(spread_orbits(c4, 3).empty());  // 3 does not divide 4

    SingerCycle c6 = build_singer(2, 6);
    CHECK(spread_orbits(c6, 2).size() == 1);
    CHECK(spread_orbits(c6, 3).size() == 1);
}

TEST_CASE("orbit is a spread iff the preimage is a subfield coset (n=4)") {
    SingerCycle c = build_singer(2, 4);
    const Field& f2 = Field::get(2, 1);
    const Field& f16 = Field::get(2, 4);
    int checked = 0;
    fieldred::projgeo::enumerate_subspaces(f2, 4, 2, [&](const Subspace& s) {
        std::set<Code> pre{0};
        for (const auto& p : fieldred::projgeo::points_of(s)) {
            // all scalar multiples of each point representative
            pre.insert(fieldred::vfr::vfr_inverse(c.tower, p.rep).e[0]);
        }
        // the preimage of an F_2-subspace: points are exactly its nonzero vectors
        bool coset = is_subfield_coset(f16, f2, pre);
        bool spread_orbit = subspace_orbit(c, s).is_spread;
        CHECK(coset == spread_orbit);
        ++checked;
    });
    CHECK(checked == 35);
}

TEST_CASE("is_subfield_coset examples") {
    const Field& f16 = Field::get(2, 4);
    const Field& f2 = Field::get(2, 1);
    const Field& f4 = Field::get(2, 2);

    // the subfield F_4 itself
    std::set<Code> sub;
    for (Code a = 0; a < 16; ++a)
        if (f16.in_subfield(a, 2)) sub.insert(a);
    CHECK(sub.size() == 4);
    CHECK(is_subfield_coset(f16, f2, sub));

    // alpha * F_4 for a generator alpha
    Code alpha = f16.generator();
    std::set<Code> coset;
    for (Code a : sub) coset.insert(f16.mul(alpha, a));
    CHECK(is_subfield_coset(f16, f2, coset));

    // an F_2-subspace of size 4 not closed under multiplication
    std::set<Code> bad{0, 1, alpha, f16.add(alpha, 1)};
    CHECK_FALSE(is_subfield_coset(f16, f2, bad));

    CHECK_FALSE(is_subfield_coset(f16, f2, {0, 1, alpha}));  // size not a power of q
    CHECK_THROWS_AS(is_subfield_coset(f16, f2, {1, alpha}), FieldError);  // 0 missing
    (void)f4;
}

TEST_CASE("factor group check") {
    CHECK(factor_group_check(build_singer_via(2, 4, 2), 2));
    CHECK(factor_group_check(build_singer_via(2, 6, 3), 3));
    CHECK(factor_group_check(build_singer_via(2, 6, 2), 2));
    CHECK(factor_group_check(build_singer(2, 4), 2));  // tower choice is immaterial
    CHECK_THROWS_AS(factor_group_check(build_singer(2, 4), 3), FieldError);
}

TEST_CASE("singer_normalize") {
    const Field& f2 = Field::get(2, 1);
    SingerCycle c = build_singer(2, 4);

    auto res = singer_normalize(f2, 4, c.g.m);
    CHECK(res.found);
    CHECK(res.exponent == 1);
    CHECK(res.omega_prime == c.omega);

    // sigma^2 is still a Singer cycle (gcd(2,15)=1)
    Mat sq = fieldred::linalg::mul(c.g.m, c.g.m);
    auto res2 = singer_normalize(f2, 4, sq);
    CHECK(res2.found);
    // conjugating the found witness back must reproduce sq projectively
    Mat back = fieldred::linalg::mul(
        fieldred::linalg::mul(res2.conjugator, [&] {
            Mat acc = Mat::identity(f2, 4);
            for (std::uint64_t i = 0; i < res2.exponent; ++i)
                acc = fieldred::linalg::mul(acc, c.g.m);
            return acc;
        }()),
        fieldred::linalg::inverse(res2.conjugator));
    CHECK(fieldred::linalg::proj_eq(
        fieldred::linalg::ProjSemilinear{fieldred::linalg::SemilinearMap{back, 0}, 1},
        fieldred::linalg::ProjSemilinear{fieldred::linalg::SemilinearMap{sq, 0}, 1}));

    // an element of order 5 is not a Singer cycle
    Mat cube = fieldred::linalg::mul(sq, c.g.m);  // sigma^3, order 5
    CHECK_FALSE(singer_normalize(f2, 4, cube).found);

    // beyond desk scale
    CHECK_THROWS_AS(singer_normalize(Field::get(2, 2), 4, Mat::identity(Field::get(2, 2), 4)),
                    FieldError);
}
