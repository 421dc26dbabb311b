#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fieldred/embed.hpp"

using namespace fieldred::embed;
using fieldred::gf::Field;
using fieldred::gf::FieldError;

TEST_CASE("scalar determinant scan") {
    CHECK(psl_equals_sl_check(2, 2, 2));         // gcd(3,2) = 1
    CHECK_FALSE(psl_equals_sl_check(3, 1, 2));   // -1 has determinant 1
    CHECK_FALSE(psl_equals_sl_check(2, 4, 3));   // gcd(15,3) = 3
    CHECK(psl_equals_sl_check(2, 3, 2));         // gcd(7,2) = 1
    CHECK(psl_equals_sl_check(3, 1, 3));         // gcd(2,3) = 1
}

TEST_CASE("SL(2,4) embeds in PGL(4,2)") {
    EmbeddingReport rep = check_embedding(2, 2, 2);
    CHECK(rep.gcd_value == 1);
    CHECK(rep.applicable);
    CHECK(rep.domain_order == 60);
    CHECK(rep.image_order == 60);
    CHECK(rep.injective);
    CHECK(rep.homomorphic);
    CHECK(rep.image_stabilises_spread);
    // SL(2,4) = PSL(2,4) = PGL(2,4) here, so the image realizes PGL(2,4)
    CHECK(rep.image_order == (16 - 1) * (16 - 4) / (4 - 1));
}

TEST_CASE("SL(2,8) embeds in PGL(6,2)") {
    EmbeddingReport rep = check_embedding(2, 3, 2);
    CHECK(rep.gcd_value == 1);
    CHECK(rep.applicable);
    CHECK(rep.domain_order == 504);
    CHECK(rep.image_order == 504);
    CHECK(rep.injective);
    CHECK(rep.homomorphic);
    CHECK(rep.image_stabilises_spread);
    CHECK(rep.image_order == (64 - 1) * (64 - 8) / (8 - 1));
}

TEST_CASE("q=3, t=2, r=2 is not applicable: -I is in the kernel") {
    EmbeddingReport rep = check_embedding(3, 2, 2);
    CHECK(rep.gcd_value == 2);
    CHECK_FALSE(rep.applicable);
    const Field& f9 = Field::get(3, 2);
    CHECK(rep.kernel_scalar != 0);
    CHECK(rep.kernel_scalar != 1);
    CHECK(f9.mul(rep.kernel_scalar, rep.kernel_scalar) == 1);  // lambda^2 = det = 1
    CHECK(rep.domain_order == 720);
    // the kernel scalar collapses pairs of SL elements onto one class
    CHECK(rep.image_order == 360);
    CHECK_FALSE(rep.injective);
    // it is still a homomorphism onto its image, and lands in the stabiliser
    CHECK(rep.homomorphic);
    CHECK(rep.image_stabilises_spread);
}

TEST_CASE("sampled mode agrees with exhaustive on a small case") {
    EmbeddingReport ex = check_embedding(2, 2, 2, CheckMode::exhaustive);
    EmbeddingReport sm = check_embedding(2, 2, 2, CheckMode::sampled, 100, 5);
    CHECK(sm.applicable == ex.applicable);
    CHECK(sm.homomorphic);
    CHECK(sm.image_stabilises_spread);
    CHECK(sm.domain_order == ex.domain_order);
}

TEST_CASE("exhaustive mode refuses oversized groups") {
    CHECK_THROWS_AS(check_embedding(3, 3, 3), FieldError);  // |SL(3,27)| is huge
}
