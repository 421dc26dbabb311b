#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "fieldred/gf.hpp"

using namespace fieldred::gf;

namespace {

// Independent oracle: schoolbook polynomial multiply + long division by the
// modulus, working on coefficient vectors. Used to cross-check Field::mul.
Code oracle_mul(const Field& f, Code a, Code b) {
    int k = f.k();
    long p = f.p();
    std::vector<long> prod(static_cast<size_t>(2 * k - 1), 0);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            prod[static_cast<size_t>(i + j)] =
                (prod[static_cast<size_t>(i + j)] + f.coeff(a, i) * f.coeff(b, j)) % p;
    const auto& m = f.modulus();
    for (int d = 2 * k - 2; d >= k; --d) {
        long c = prod[static_cast<size_t>(d)];
        if (c == 0) continue;
        for (int i = 0; i <= k; ++i) {
            long& t = prod[static_cast<size_t>(d - k + i)];
            t = ((t - c * m[static_cast<size_t>(i)]) % p + p) % p;
        }
    }
    std::vector<long> lo(prod.begin(), prod.begin() + k);
    return f.from_coeffs(lo);
}

Code oracle_inv(const Field& f, Code a) {
    for (Code b = 1; b < f.size(); ++b)
        if (f.mul(a, b) == 1) return b;
    throw std::runtime_error("no inverse found");
}

}  // namespace

TEST_CASE("context construction and default moduli") {
    const Field& f2 = Field::get(2, 1);
    CHECK(f2.modulus() == std::vector<long>{0, 1});  // x

    const Field& f4 = Field::get(2, 2);
    CHECK(f4.modulus() == std::vector<long>{1, 1, 1});  // x^2+x+1
    CHECK(&Field::get(2, 2, {1, 1, 1}) == &f4);

    const Field& f8 = Field::get(2, 3);
    CHECK(f8.modulus() == std::vector<long>{1, 1, 0, 1});  // x^3+x+1

    const Field& f16 = Field::get(2, 4);
    CHECK(f16.modulus() == std::vector<long>{1, 1, 0, 0, 1});  // x^4+x+1

    CHECK_THROWS_AS(Field::get(2, 2, {1, 0, 1}), FieldError);  // x^2+1 = (x+1)^2
    CHECK_THROWS_AS(Field::get(4, 1), FieldError);             // p not prime
    CHECK_THROWS_AS(Field::get(2, 2, {1, 1}), FieldError);     // wrong degree
}

TEST_CASE("multiplication") {
    const Field& f4 = Field::get(2, 2);
    Code a4 = 2;                       // alpha
    CHECK(f4.mul(a4, a4) == 3);        // alpha^2 = alpha+1
    CHECK(f4.mul(1, a4) == a4);

    const Field& f8 = Field::get(2, 3);
    Code a2 = f8.mul(2, 2);            // alpha^2, code 4
    CHECK(a2 == 4);
    CHECK(f8.mul(a2, a2) == oracle_mul(f8, a2, a2));
    CHECK(f8.mul(a2, a2) == 6);        // alpha^4 = alpha^2+alpha

    // Full cross-check against the long-division oracle.
    for (Code a = 0; a < f8.size(); ++a)
        for (Code b = 0; b < f8.size(); ++b)
            CHECK(f8.mul(a, b) == oracle_mul(f8, a, b));
}

TEST_CASE("inversion") {
    const Field& f4 = Field::get(2, 2);
    CHECK(f4.inv(1) == 1);
    CHECK(f4.inv(2) == 3);  // alpha^-1 = alpha+1

    const Field& f8 = Field::get(2, 3);
    CHECK(f8.inv(2) == oracle_inv(f8, 2));
    CHECK(f8.inv(2) == 5);  // alpha^-1 = alpha^2+1
    CHECK_THROWS_AS(f8.inv(0), FieldError);
    for (Code a = 1; a < f8.size(); ++a) CHECK(f8.mul(a, f8.inv(a)) == 1);
}

TEST_CASE("frobenius") {
    const Field& f4 = Field::get(2, 2);
    CHECK(f4.frobenius(2, 0) == 2);
    CHECK(f4.frobenius(2, 1) == 3);  // alpha^2 = alpha+1

    const Field& f8 = Field::get(2, 3);
    CHECK(f8.frobenius(3, 1) == oracle_mul(f8, 3, 3));
    CHECK(f8.frobenius(3, 1) == 5);  // (alpha+1)^2 = alpha^2+1

    const Field& f16 = Field::get(2, 4);
    for (Code a = 0; a < f16.size(); ++a) {
        CHECK(f16.frobenius(a, 4) == a);  // k-fold is identity
        for (Code b = 0; b < f16.size(); ++b) {
            CHECK(f16.frobenius(f16.mul(a, b), 1) ==
                  f16.mul(f16.frobenius(a, 1), f16.frobenius(b, 1)));
            CHECK(f16.frobenius(f16.add(a, b), 1) ==
                  f16.add(f16.frobenius(a, 1), f16.frobenius(b, 1)));
        }
    }
}

TEST_CASE("generators") {
    CHECK(Field::get(2, 1).generator() == 1);
    const Field& f4 = Field::get(2, 2);
    CHECK(f4.generator() == 2);
    CHECK(f4.order(2) == 3);
    const Field& f16 = Field::get(2, 4);
    CHECK(f16.generator() == 2);
    CHECK(f16.order(2) == 15);
    // determinism
    CHECK(f16.generator() == f16.generator());
    const Field& f9 = Field::get(3, 2);
    CHECK(f9.order(f9.generator()) == 8);
}

TEST_CASE("subfield membership") {
    const Field& f4 = Field::get(2, 2);
    CHECK(f4.in_subfield(0, 1));
    CHECK_FALSE(f4.in_subfield(2, 1));

    const Field& f16 = Field::get(2, 4);
    Code a5 = f16.pow(2, 5);
    CHECK(f16.order(a5) == 3);
    CHECK(f16.in_subfield(a5, 2));
    CHECK_THROWS_AS(f16.in_subfield(2, 3), FieldError);

    // subfield of size p^d has exactly p^d elements, all small fields
    for (auto [p, k] : {std::pair<long, int>{2, 4}, {2, 6}, {2, 8}, {3, 4}, {5, 2}, {7, 2}}) {
        const Field& f = Field::get(p, k);
        for (int d = 1; d <= k; ++d) {
            if (k % d != 0) continue;
            std::uint64_t want = 1, cnt = 0;
            for (int i = 0; i < d; ++i) want *= static_cast<std::uint64_t>(p);
            for (Code a = 0; a < f.size(); ++a)
                if (f.in_subfield(a, d)) ++cnt;
            CHECK(cnt == want);
        }
    }
}

TEST_CASE("random algebraic identities") {
    std::mt19937 rng(20260823);
    for (const Field* fp : {&Field::get(2, 3), &Field::get(3, 2), &Field::get(2, 5)}) {
        const Field& f = *fp;
        std::uniform_int_distribution<Code> dist(0, static_cast<Code>(f.size() - 1));
        for (int it = 0; it < 1000; ++it) {
            Code a = dist(rng), b = dist(rng), c = dist(rng);
            CHECK(f.mul(f.add(a, b), c) == f.add(f.mul(a, c), f.mul(b, c)));
            if (a != 0) CHECK(f.mul(a, f.inv(a)) == 1);
        }
    }
}

TEST_CASE("text formats") {
    const Field& f8 = Field::get(2, 3);
    CHECK(f8.format(5) == "1,0,1");
    CHECK(f8.parse("1,0,1") == 5);
    CHECK(f8.descriptor() == "2^3:1,1,0,1");
    for (Code a = 0; a < f8.size(); ++a) CHECK(f8.parse(f8.format(a)) == a);
    const Field& f9 = Field::get(3, 2);
    CHECK(f9.parse(f9.format(7)) == 7);
}

TEST_CASE("subfield embeddings") {
    const Field& f4 = Field::get(2, 2);
    const Field& f16 = Field::get(2, 4);
    SubfieldEmbedding emb(f4, f16);
    CHECK(emb.apply(0) == 0);
    CHECK(emb.apply(1) == 1);
    // homomorphism, exhaustively
    for (Code a = 0; a < f4.size(); ++a) {
        CHECK(f16.in_subfield(emb.apply(a), 2));
        CHECK(emb.preimage(emb.apply(a)) == a);
        for (Code b = 0; b < f4.size(); ++b) {
            CHECK(emb.apply(f4.mul(a, b)) == f16.mul(emb.apply(a), emb.apply(b)));
            CHECK(emb.apply(f4.add(a, b)) == f16.add(emb.apply(a), emb.apply(b)));
        }
    }
    CHECK_THROWS_AS(emb.preimage(2), FieldError);  // alpha of F_16 is not in F_4
}
