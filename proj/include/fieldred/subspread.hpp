#pragma once

#include <cstdint>

#include "fieldred/spread.hpp"

namespace fieldred::subspread {

using gf::Code;
using gf::Field;
using linalg::Mat;
using projgeo::Subspace;
using spread::Spread;
using vfr::VfrMap;

/// A (t'-1)-spread refining a Desarguesian (t-1)-spread of the same ambient
/// space: every outer element is a disjoint union of inner elements.
struct SubspreadPair {
    Spread outer;   // (t-1)-spread, parameters q, t, r
    Spread inner;   // (t'-1)-spread, parameters q, t', rt/t'
    int tprime = 0;
    VfrMap f1;      // F_{q^t}^r -> F_{q^{t'}}^{rt/t'}
    VfrMap f2;      // F_{q^{t'}}^{rt/t'} -> F_q^{rt}
};

/// The standard refinement: outer from the tower f2 o f1, inner from f2 alone.
/// Verifies the refinement property exhaustively.
SubspreadPair build_standard_subspread(const VfrMap& f1, const VfrMap& f2);

/// Every inner element lies inside some outer element, and each outer element
/// contains exactly (q^t-1)/(q^{t'}-1) of them.
bool is_subspread(const Spread& outer, const Spread& inner);

/// Given a (t-1)-space T over F_q that is a union of inner-spread elements,
/// returns the F_{q^{t'}}-subspace U with T = <f2(U)>_q (vector dimension
/// t/t' over F_{q^{t'}}); throws if T is not partitioned by inner elements.
Subspace lift_partitioned_subspace(const VfrMap& f1, const VfrMap& f2, const Subspace& T);

/// Uniqueness consequence: blown-up stabiliser elements of the outer spread
/// map inner elements onto inner elements. samples <= 0 enumerates the whole
/// group GammaL(r,q^t); otherwise that many seeded random elements are tried.
bool uniqueness_consequence_check(const SubspreadPair& pair, long samples,
                                  std::uint64_t seed = 1);

std::string format(const SubspreadPair& pair);

}  // namespace fieldred::subspread
