#include "fieldred/singer.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace fieldred::singer {

using gf::FieldError;
using linalg::Vec;

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

SingerCycle finish_cycle(Code omega, VfrMap tower) {
    const Field& big = tower.big();
    const Field& small = tower.small();
    SemilinearMap g = vfr::blowup(tower, linalg::scalar_map(big, omega, 1));
    std::uint64_t order = (big.size() - 1) / (small.size() - 1);
    SingerCycle c{omega, std::move(tower), std::move(g), order};

    // sharp transitivity: the orbit of one point must have full length
    if (order <= 100000) {
        auto coll = projgeo::collineation(c.g);
        projgeo::ProjPoint start =
            projgeo::make_point(Vec(small, [&] {
                std::vector<Code> e(static_cast<size_t>(c.tower.n()), 0);
                e[0] = 1;
                return e;
            }()));
        projgeo::ProjPoint cur = start;
        std::uint64_t len = 0;
        do {
            cur = projgeo::act(coll, cur);
            ++len;
        } while (!(cur == start));
        if (len != order) throw FieldError("internal: cycle is not sharply transitive");
    }
    return c;
}

}  // namespace

SingerCycle build_singer(std::uint64_t q, int n) {
    if (n < 2) throw FieldError("need n >= 2");
    auto [p, h] = factor_prime_power(q);
    const Field& big = Field::get(p, h * n);
    const Field& small = Field::get(p, h);
    return finish_cycle(big.generator(), VfrMap(big, small, 1));
}

SingerCycle build_singer_via(std::uint64_t q, int n, int d) {
    if (n < 2 || d < 1 || n % d != 0) throw FieldError("need d | n, n >= 2");
    auto [p, h] = factor_prime_power(q);
    const Field& big = Field::get(p, h * n);
    const Field& mid = Field::get(p, h * d);
    const Field& small = Field::get(p, h);
    VfrMap f0(big, mid, 1);
    VfrMap f(mid, small, n / d);
    return finish_cycle(big.generator(), vfr::compose_vfr(f, f0));
}

Subspace standard_seed(const SingerCycle& c, int d) {
    const Field& big = c.tower.big();
    const Field& small = c.tower.small();
    int n = big.k() / small.k();
    if (d < 1 || n % d != 0) throw FieldError("need d | n");
    const Field& mid = Field::get(small.p(), small.k() * d);
    gf::SubfieldEmbedding emb(mid, big);
    Code gm = mid.generator();
    std::vector<Vec> rows;
    Code pw = 1;
    for (int j = 0; j < d; ++j) {
        rows.push_back(vfr::vfr_apply(c.tower, Vec(big, {emb.apply(pw)})));
        pw = mid.mul(pw, gm);
    }
    return projgeo::subspace_from_rows(small, c.tower.n(), rows);
}

OrbitReport subspace_orbit(const SingerCycle& c, const Subspace& seed) {
    if (seed.dim() == 0) throw FieldError("empty seed");
    auto coll = projgeo::collineation(c.g);
    OrbitReport rep;
    rep.seed = seed;
    Subspace cur = seed;
    do {
        rep.orbit.push_back(cur);
        cur = projgeo::act(coll, cur);
    } while (!(cur == seed));

    const Field& small = c.tower.small();
    std::uint64_t q = small.size();
    int n = c.tower.n(), d = seed.dim();
    auto sorted = rep.orbit;
    std::sort(sorted.begin(), sorted.end());
    rep.is_spread = spread::is_spread(small, n, sorted);
    if (rep.is_spread) {
        std::uint64_t m = (ipow(q, n) - 1) / (ipow(q, d) - 1);
        if (rep.orbit.size() != m) throw FieldError("internal: spread orbit length mismatch");
        rep.stabiliser_exponent = m;
        // G_S = <g^m>: g^m must fix the seed
        Subspace s = seed;
        for (std::uint64_t i = 0; i < m; ++i) s = projgeo::act(coll, s);
        if (!(s == seed)) throw FieldError("internal: stabiliser exponent fails to fix seed");
    }
    return rep;
}

std::vector<OrbitReport> spread_orbits(const SingerCycle& c, int d) {
    const Field& small = c.tower.small();
    std::vector<OrbitReport> out;
    std::set<Subspace> seen;
    projgeo::enumerate_subspaces(small, c.tower.n(), d, [&](const Subspace& s) {
        if (seen.count(s)) return;
        OrbitReport rep = subspace_orbit(c, s);
        for (const auto& e : rep.orbit) seen.insert(e);
        if (rep.is_spread) out.push_back(std::move(rep));
    });
    return out;
}

bool is_subfield_coset(const Field& big, const Field& small, const std::set<Code>& s) {
    if (!s.count(0)) throw FieldError("coset test requires 0 in the set");
    // (iii) size must be q^d with d | n
    std::uint64_t q = small.size();
    int n = big.k() / small.k();
    std::uint64_t size = s.size();
    int d = 0;
    std::uint64_t acc = 1;
    while (acc < size) {
        acc *= q;
        ++d;
    }
    if (acc != size || d == 0 || n % d != 0) return false;
    // normalize by the least nonzero element
    Code alpha = 0;
    for (Code c : s)
        if (c != 0) { alpha = c; break; }
    Code ainv = big.inv(alpha);
    std::set<Code> t;
    for (Code c : s) t.insert(big.mul(ainv, c));
    // (i) additive closure, (ii) multiplicative closure => subfield
    if (!t.count(1)) return false;
    for (Code a : t)
        for (Code b : t) {
            if (!t.count(big.add(a, b))) return false;
            if (!t.count(big.mul(a, b))) return false;
        }
    return true;
}

bool factor_group_check(const SingerCycle& c, int d) {
    const Field& small = c.tower.small();
    int n = c.tower.n();
    if (d < 1 || n % d != 0) throw FieldError("need d | n");
    std::uint64_t q = small.size();
    OrbitReport rep = subspace_orbit(c, standard_seed(c, d));
    if (!rep.is_spread) return false;
    std::uint64_t m = (ipow(q, n) - 1) / (ipow(q, d) - 1);
    if (rep.orbit.size() != m) return false;
    // g^m is the kernel: it must fix every spread element (the induced action
    // is then a faithful transitive cyclic group of order m, i.e. Singer on
    // PG(n/d-1, q^d))
    auto coll = projgeo::collineation(c.g);
    for (const auto& e : rep.orbit) {
        Subspace s = e;
        for (std::uint64_t i = 0; i < m; ++i) s = projgeo::act(coll, s);
        if (!(s == e)) return false;
    }
    return true;
}

NormalizeResult singer_normalize(const Field& f, int n, const Mat& g) {
    if (n > 4 || f.size() > 3) throw FieldError("unsupported size");
    if (g.rows != n || g.f != &f) throw FieldError("ambient mismatch");
    std::uint64_t q = f.size();
    std::uint64_t npts = (ipow(q, n) - 1) / (q - 1);

    int scalar_deg = f.k();
    auto canon = [&](const Mat& m) {
        return linalg::format(linalg::proj_canonical(SemilinearMap{m, 0}, scalar_deg));
    };
    std::string id_c = canon(Mat::identity(f, n));

    // projective order precheck
    {
        Mat acc = g;
        std::uint64_t ord = 1;
        while (canon(acc) != id_c) {
            acc = linalg::mul(acc, g);
            if (++ord > npts) break;
        }
        if (ord != npts) return NormalizeResult{};
    }

    SingerCycle std_cycle = build_singer(q, n);
    const Mat& sigma = std_cycle.g.m;

    // generator powers sigma^j, gcd(j, npts) = 1
    std::map<std::string, std::uint64_t> powers;
    {
        Mat acc = sigma;
        for (std::uint64_t j = 1; j < npts; ++j) {
            if (std::gcd(j, npts) == 1) powers.emplace(canon(acc), j);
            acc = linalg::mul(acc, sigma);
        }
    }

    NormalizeResult res;
    linalg::enumerate_gl(f, n, [&](const Mat& xi) {
        if (res.found) return;
        Mat conj = linalg::mul(linalg::mul(linalg::inverse(xi), g), xi);
        auto it = powers.find(canon(conj));
        if (it == powers.end()) return;
        res.found = true;
        res.conjugator = xi;
        res.exponent = it->second;
        res.omega_prime = std_cycle.tower.big().pow(std_cycle.omega, it->second);
    });
    return res;
}

}  // namespace fieldred::singer
