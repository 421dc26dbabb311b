#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "fieldred/spread.hpp"

using namespace fieldred::spread;
using fieldred::gf::Field;
using fieldred::gf::FieldError;
using fieldred::linalg::Mat;
using fieldred::linalg::SemilinearMap;
using fieldred::linalg::Vec;
using fieldred::projgeo::Subspace;
using fieldred::vfr::VfrMap;

namespace {
SemilinearMap random_gl(const Field& f, int n, std::mt19937& rng) {
    std::uniform_int_distribution<fieldred::gf::Code> dist(0, static_cast<fieldred::gf::Code>(f.size() - 1));
    for (;;) {
        Mat m(f, n, n);
        for (auto& c : m.a) c = dist(rng);
        if (fieldred::linalg::invertible(m)) return fieldred::linalg::semilinear(std::move(m), 0);
    }
}
}  // namespace

TEST_CASE("build_desarguesian") {
    const Field& f2 = Field::get(2, 1);
    const Field& f3 = Field::get(3, 1);

    Spread d222 = build_desarguesian(VfrMap(Field::get(2, 2), f2, 2));
    CHECK(d222.elements.size() == 5);
    CHECK(is_spread(f2, 4, d222.elements));

    Spread d322 = build_desarguesian(VfrMap(Field::get(3, 2), f3, 2));
    CHECK(d322.elements.size() == 10);
    CHECK(is_spread(f3, 4, d322.elements));

    Spread d232 = build_desarguesian(VfrMap(Field::get(2, 3), f2, 2));
    CHECK(d232.elements.size() == 9);
    CHECK(d232.elements[0].dim() == 3);
    CHECK(is_spread(f2, 6, d232.elements));
}

TEST_CASE("is_spread rejects broken candidates") {
    const Field& f2 = Field::get(2, 1);
    Spread d = build_desarguesian(VfrMap(Field::get(2, 2), f2, 2));
    CHECK_FALSE(is_spread(f2, 4, {}));

    // replace one line by a line meeting another element
    auto broken = d.elements;
    auto pts = fieldred::projgeo::points_of(broken[0]);
    auto pts2 = fieldred::projgeo::points_of(broken[1]);
    broken[0] = fieldred::projgeo::subspace_from_rows(f2, 4, {pts[0].rep, pts2[0].rep});
    CHECK_FALSE(is_spread(f2, 4, broken));
}

TEST_CASE("normality") {
    const Field& f2 = Field::get(2, 1);
    CHECK(is_normal(build_desarguesian(VfrMap(Field::get(2, 2), f2, 2))));
    CHECK(is_normal(build_desarguesian(VfrMap(Field::get(2, 2), f2, 3))));
    // Hall spread is still normal at r=2: spans of two lines are the whole space
    CHECK(is_normal(regulus_switched_pg33()));
}

TEST_CASE("regulus-switched spread is a genuine non-Desarguesian spread") {
    Spread hall = regulus_switched_pg33();
    const Field& f3 = Field::get(3, 1);
    CHECK(hall.elements.size() == 10);
    CHECK(is_spread(f3, 4, hall.elements));
    Spread d = build_desarguesian(VfrMap(Field::get(3, 2), f3, 2));
    int shared = 0;
    for (const auto& e : hall.elements)
        if (std::binary_search(d.elements.begin(), d.elements.end(), e)) ++shared;
    CHECK(shared == 6);  // 10 minus the switched regulus
}

TEST_CASE("is_desarguesian and equivalence search") {
    const Field& f2 = Field::get(2, 1);
    const Field& f3 = Field::get(3, 1);
    Spread d = build_desarguesian(VfrMap(Field::get(2, 2), f2, 2));
    CHECK(is_desarguesian(d) == Verdict::yes);

    // image under a random PGL element
    std::mt19937 rng(41);
    Spread moved = act(fieldred::projgeo::collineation(random_gl(f2, 4, rng)), d);
    CHECK(is_desarguesian(moved) == Verdict::yes);

    auto self_res = spread_equivalence_map(d, d);
    CHECK(self_res.verdict == Verdict::yes);
    CHECK(act(*self_res.map, d) == d);

    auto res = spread_equivalence_map(d, moved);
    CHECK(res.verdict == Verdict::yes);
    CHECK(act(*res.map, d) == moved);

    // the Hall spread of PG(3,3) is provably not Desarguesian
    Spread hall = regulus_switched_pg33();
    CHECK(is_desarguesian(hall) == Verdict::no);
    Spread d3 = build_desarguesian(VfrMap(Field::get(3, 2), f3, 2));
    auto neg = spread_equivalence_map(d3, hall);
    CHECK(neg.verdict == Verdict::no);
    CHECK_FALSE(neg.map.has_value());

    // a starved budget must yield an honest unknown, not a guess
    CHECK(is_desarguesian(hall, 10) == Verdict::unknown);
    CHECK(spread_equivalence_map(d3, hall, 10).verdict == Verdict::unknown);
}

TEST_CASE("elementwise stabiliser") {
    const Field& f2 = Field::get(2, 1);
    VfrMap f(Field::get(2, 2), f2, 2);
    auto rep = elementwise_stabiliser(f);
    CHECK(rep.group_order == 3);
    CHECK(rep.closed_form_order == 3);

    auto rep2 = elementwise_stabiliser(VfrMap(Field::get(2, 3), f2, 2));
    CHECK(rep2.group_order == 7);
    CHECK(rep2.closed_form_order == 7);

    // sharply transitive on the points of one element
    Spread d = build_desarguesian(f);
    const Field& f4 = Field::get(2, 2);
    auto pts = fieldred::projgeo::points_of(d.elements[0]);
    std::set<std::vector<fieldred::gf::Code>> classes_of_orbit;
    std::set<std::vector<fieldred::gf::Code>> images;
    for (fieldred::gf::Code beta = 1; beta < 4; ++beta) {
        auto c = fieldred::projgeo::collineation(
            fieldred::vfr::blowup(f, fieldred::linalg::scalar_map(f4, beta, 2)));
        auto img = fieldred::projgeo::act(c, pts[0]);
        images.insert(img.rep.e);
        (void)classes_of_orbit;
    }
    CHECK(images.size() == pts.size());  // orbit of one point = all points, each once
}

TEST_CASE("setwise stabiliser: closed forms and the ambient-group oracle") {
    const Field& f2 = Field::get(2, 1);
    VfrMap f(Field::get(2, 2), f2, 2);

    auto pgl = setwise_stabiliser(f, GroupKind::pgl);
    CHECK(pgl.closed_form_order == 360);
    CHECK(pgl.group_order == 360);
    auto pgammal = setwise_stabiliser(f, GroupKind::pgammal);
    CHECK(pgammal.group_order == pgammal.closed_form_order);
    CHECK(pgammal.group_order == 360);  // h=1: PGL and PGammaL agree

    auto big = setwise_stabiliser(VfrMap(Field::get(2, 3), f2, 2), GroupKind::pgammal);
    CHECK(big.closed_form_order == 10584);
    CHECK(big.group_order == 10584);

    // ambient oracle: full enumeration of GL(4,2) = PGL(4,2)
    Spread d = build_desarguesian(f);
    std::set<std::string> blowup_classes;
    fieldred::linalg::enumerate_gl(Field::get(2, 2), 2, [&](const Mat& m) {
        for (long e = 0; e < 2; ++e)
            blowup_classes.insert(fieldred::linalg::format(
                fieldred::linalg::proj_canonical(fieldred::vfr::blowup(f, SemilinearMap{m, e}), 1)));
    });

    std::uint64_t ambient = 0, stab = 0;
    std::set<std::string> orbit;
    std::set<std::string> stab_classes;
    fieldred::linalg::enumerate_gl(f2, 4, [&](const Mat& m) {
        ++ambient;
        SemilinearMap g{m, 0};
        Spread img = act(fieldred::projgeo::collineation(g), d);
        if (img == d) {
            ++stab;
            stab_classes.insert(fieldred::linalg::format(fieldred::linalg::proj_canonical(g, 1)));
        }
        orbit.insert(format(img));
    });
    CHECK(ambient == 20160);
    CHECK(stab == 360);
    CHECK(orbit.size() == 56);        // orbit-stabiliser: 20160/360
    CHECK(stab_classes == blowup_classes);  // stabiliser = blown-up GammaL(2,4)
}

TEST_CASE("every blown-up semilinear map stabilises the spread") {
    const Field& f2 = Field::get(2, 1);
    VfrMap f(Field::get(2, 2), f2, 2);
    Spread d = build_desarguesian(f);
    fieldred::linalg::enumerate_gl(Field::get(2, 2), 2, [&](const Mat& m) {
        for (long e = 0; e < 2; ++e) {
            auto c = fieldred::projgeo::collineation(fieldred::vfr::blowup(f, SemilinearMap{m, e}));
            CHECK(act(c, d) == d);
        }
    });

    VfrMap f8(Field::get(2, 3), f2, 2);
    Spread d8 = build_desarguesian(f8);
    std::mt19937 rng(43);
    std::uniform_int_distribution<fieldred::gf::Code> dist(0, 7);
    std::uniform_int_distribution<long> adist(0, 2);
    int done = 0;
    while (done < 1000) {
        Mat m(Field::get(2, 3), 2, 2);
        for (auto& c : m.a) c = dist(rng);
        if (!fieldred::linalg::invertible(m)) continue;
        auto c = fieldred::projgeo::collineation(
            fieldred::vfr::blowup(f8, SemilinearMap{m, adist(rng)}));
        CHECK(act(c, d8) == d8);
        ++done;
    }
}

TEST_CASE("degamma strips field automorphisms") {
    const Field& f2 = Field::get(2, 1);
    const Field& f4 = Field::get(2, 2);
    const Field& f16 = Field::get(2, 4);

    // q=4, t=2, r=2: phi with aut-exp 1 over F_4
    VfrMap f(f16, f4, 2);
    Spread d = build_desarguesian(f);
    std::mt19937 rng(47);
    Mat a = random_gl(f16, 2, rng).m;
    SemilinearMap phi = fieldred::vfr::blowup(f, SemilinearMap{a, 1});
    CHECK(phi.aut == 1);
    SemilinearMap lin = degamma(f, phi, d);
    CHECK(lin.aut == 0);
    CHECK(act(fieldred::projgeo::collineation(lin), d) == d);

    // already linear: returned unchanged
    SemilinearMap phi0 = fieldred::vfr::blowup(f, SemilinearMap{a, 0});
    CHECK(degamma(f, phi0, d) == phi0);

    // q=2 (h=1): every blown-up map is linear already
    VfrMap fb(f4, f2, 2);
    Spread db = build_desarguesian(fb);
    SemilinearMap frob = fieldred::vfr::blowup(fb, SemilinearMap{Mat::identity(f4, 2), 1});
    CHECK(frob.aut == 0);
    CHECK(degamma(fb, frob, db) == frob);

    // a map that moves the spread is rejected
    for (;;) {
        SemilinearMap bad = random_gl(f4, 4, rng);
        if (act(fieldred::projgeo::collineation(bad), d) == d) continue;
        CHECK_THROWS_AS(degamma(f, bad, d), FieldError);
        break;
    }
}

TEST_CASE("spread file round trip") {
    const Field& f2 = Field::get(2, 1);
    Spread d = build_desarguesian(VfrMap(Field::get(2, 2), f2, 2));
    Spread back = parse_spread(format(d));
    CHECK(back == d);
    CHECK(back.t == 2);
    CHECK(back.r == 2);

    Spread d9 = build_desarguesian(VfrMap(Field::get(3, 4), Field::get(3, 2), 1));
    CHECK(parse_spread(format(d9)) == d9);
}
