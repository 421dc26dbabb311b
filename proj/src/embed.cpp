#include "fieldred/embed.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace fieldred::embed {

using gf::FieldError;
using linalg::Mat;
using linalg::SemilinearMap;

namespace {

std::uint64_t ipow(std::uint64_t b, int e) {
    std::uint64_t r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

std::pair<long, int> factor_prime_power(std::uint64_t q) {
    long p = 2;
    while (q % static_cast<std::uint64_t>(p) != 0) ++p;
    int h = 0;
    while (q > 1) {
        if (q % static_cast<std::uint64_t>(p) != 0) throw FieldError("q is not a prime power");
        q /= static_cast<std::uint64_t>(p);
        ++h;
    }
    return {p, h};
}

}  // namespace

bool psl_equals_sl_check(std::uint64_t q, int t, int r) {
    auto [p, h] = factor_prime_power(q);
    const Field& big = Field::get(p, h * t);
    for (Code lam = 2; lam < big.size(); ++lam)
        if (big.pow(lam, static_cast<std::uint64_t>(r)) == 1) return false;  // det(lam I) = 1
    return true;
}

EmbeddingReport check_embedding(std::uint64_t q, int t, int r, CheckMode mode,
                                long samples, std::uint64_t seed) {
    auto [p, h] = factor_prime_power(q);
    const Field& big = Field::get(p, h * t);
    const Field& small = Field::get(p, h);
    VfrMap f(big, small, r);
    spread::Spread d = spread::build_desarguesian(f);

    EmbeddingReport rep;
    rep.gcd_value = std::gcd(big.size() - 1, static_cast<std::uint64_t>(r));
    rep.applicable = rep.gcd_value == 1;
    std::uint64_t gl = 1;
    for (int i = 0; i < r; ++i) gl *= ipow(big.size(), r) - ipow(big.size(), i);
    rep.domain_order = gl / (big.size() - 1);  // |SL| = |GL| / |F*|

    if (!rep.applicable) {
        // exhibit a concrete nonidentity kernel element: a scalar of det 1
        for (Code lam = 2; lam < big.size(); ++lam)
            if (big.pow(lam, static_cast<std::uint64_t>(r)) == 1) {
                rep.kernel_scalar = lam;
                break;
            }
    }

    auto iota_class = [&](const Mat& m) {
        return linalg::format(
            linalg::proj_canonical(vfr::blowup(f, SemilinearMap{m, 0}), small.k()));
    };

    std::vector<Mat> domain;
    if (mode == CheckMode::exhaustive) {
        if (rep.domain_order > 1'000'000) throw FieldError("unsupported size");
        linalg::enumerate_gl(big, r, [&](const Mat& m) {
            if (linalg::det(m) == 1) domain.push_back(m);
        });
    } else {
        std::mt19937 rng(static_cast<std::uint32_t>(seed));
        std::uniform_int_distribution<Code> dist(0, static_cast<Code>(big.size() - 1));
        while (static_cast<long>(domain.size()) < samples) {
            Mat m(big, r, r);
            for (auto& c : m.a) c = dist(rng);
            if (linalg::det(m) == 1) domain.push_back(std::move(m));
        }
    }

    std::set<std::string> classes;
    rep.image_stabilises_spread = true;
    std::vector<SemilinearMap> blown;
    blown.reserve(domain.size());
    for (const Mat& m : domain) {
        SemilinearMap phi = vfr::blowup(f, SemilinearMap{m, 0});
        classes.insert(linalg::format(linalg::proj_canonical(phi, small.k())));
        if (!(spread::act(projgeo::collineation(phi), d) == d))
            rep.image_stabilises_spread = false;
        blown.push_back(std::move(phi));
    }
    rep.image_order = classes.size();
    rep.injective = rep.image_order == domain.size();

    // homomorphism on pairs: iota(ab) = iota(a) iota(b) as projective classes
    rep.homomorphic = true;
    if (mode == CheckMode::exhaustive) {
        for (size_t i = 0; i < domain.size() && rep.homomorphic; ++i)
            for (size_t j = 0; j < domain.size(); ++j) {
                SemilinearMap composed = linalg::compose(blown[i], blown[j]);
                if (linalg::format(linalg::proj_canonical(composed, small.k())) !=
                    iota_class(linalg::mul(domain[i], domain[j]))) {
                    rep.homomorphic = false;
                    break;
                }
            }
    } else {
        std::mt19937 rng(static_cast<std::uint32_t>(seed ^ 0x9e3779b9u));
        std::uniform_int_distribution<size_t> pick(0, domain.size() - 1);
        for (long s = 0; s < samples && rep.homomorphic; ++s) {
            size_t i = pick(rng), j = pick(rng);
            SemilinearMap composed = linalg::compose(blown[i], blown[j]);
            if (linalg::format(linalg::proj_canonical(composed, small.k())) !=
                iota_class(linalg::mul(domain[i], domain[j])))
                rep.homomorphic = false;
        }
    }
    return rep;
}

}  // namespace fieldred::embed
