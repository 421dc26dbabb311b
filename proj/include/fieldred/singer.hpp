#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "fieldred/spread.hpp"

namespace fieldred::singer {

using gf::Code;
using gf::Field;
using linalg::Mat;
using linalg::SemilinearMap;
using projgeo::Subspace;
using spread::Spread;
using vfr::VfrMap;

/// Singer cycle of PG(n-1,q): the blow-up of multiplication by a generator
/// omega of F_{q^n} through a fixed tower reduction.
struct SingerCycle {
    Code omega = 0;     // generator of F_{q^n}
    VfrMap tower;       // F_{q^n} -> F_q^n (possibly a composed tower)
    SemilinearMap g;    // the blown-up m_omega (linear over F_q)
    std::uint64_t order = 0;  // projective order (q^n-1)/(q-1)
};

struct OrbitReport {
    Subspace seed;
    std::vector<Subspace> orbit;
    bool is_spread = false;
    std::uint64_t stabiliser_exponent = 0;  // m with G_S = <g^m>; 0 if not a spread
};

/// Direct tower F_{q^n} -> F_q^n with the canonical polynomial basis.
SingerCycle build_singer(std::uint64_t q, int n);

/// Tower routed through the intermediate field F_{q^d} (d | n); the cycle of
/// this tower makes the unique spread orbit literally equal to the
/// Desarguesian spread of the outer reduction map.
SingerCycle build_singer_via(std::uint64_t q, int n, int d);

/// The standard (d-1)-spread seed: the reduction of the subfield F_{q^d}.
Subspace standard_seed(const SingerCycle& c, int d);

OrbitReport subspace_orbit(const SingerCycle& c, const Subspace& seed);

/// All orbits of (d-1)-subspaces that are spreads (full scan).
std::vector<OrbitReport> spread_orbits(const SingerCycle& c, int d);

/// Is s = alpha * F_{q^d} for some alpha != 0 and d | n? small is F_q.
bool is_subfield_coset(const Field& big, const Field& small, const std::set<Code>& s);

/// Induced action on the unique (d-1)-spread is a Singer action of
/// PG(n/d-1, q^d): transitive, kernel <g^{(q^n-1)/(q^d-1)}>.
bool factor_group_check(const SingerCycle& c, int d);

struct NormalizeResult {
    bool found = false;
    Mat conjugator;            // xi with g = xi sigma'^e xi^-1
    std::uint64_t exponent = 0;
    Code omega_prime = 0;      // omega^exponent
};

/// Exhaustive conjugacy search at desk scale (n <= 4, q <= 3 ambient);
/// throws FieldError("unsupported size") beyond that.
NormalizeResult singer_normalize(const Field& f, int n, const Mat& g);

}  // namespace fieldred::singer
