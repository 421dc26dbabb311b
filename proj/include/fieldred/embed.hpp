#pragma once

#include <cstdint>

#include "fieldred/spread.hpp"

namespace fieldred::embed {

using gf::Code;
using gf::Field;
using vfr::VfrMap;

enum class CheckMode { exhaustive, sampled };

/// Result of verifying that SL(r,q^t), blown up through a reduction map and
/// projectivized over F_q, embeds into PGL(rt,q) when gcd(q^t-1, r) = 1.
struct EmbeddingReport {
    std::uint64_t gcd_value = 0;   // gcd(q^t-1, r)
    bool applicable = false;       // gcd_value == 1
    std::uint64_t domain_order = 0;  // |SL(r,q^t)|
    std::uint64_t image_order = 0;   // distinct projective classes in the image
    bool injective = false;
    bool homomorphic = false;
    bool image_stabilises_spread = false;
    Code kernel_scalar = 0;        // a nonidentity scalar of determinant 1, if any
};

/// Enumerates (or samples) SL(r,q^t), blows each element up and projects to
/// PGL(rt,q); verifies injectivity, the homomorphism property on pairs, and
/// that the image stabilises the Desarguesian spread. Exhaustive mode throws
/// "unsupported size" when |SL(r,q^t)| > 10^6.
EmbeddingReport check_embedding(std::uint64_t q, int t, int r,
                                CheckMode mode = CheckMode::exhaustive,
                                long samples = 200, std::uint64_t seed = 1);

/// True iff the only scalar matrix of PGL(r,q^t) with determinant 1 is the
/// identity, i.e. iff gcd(q^t-1, r) = 1; decided by scanning all scalars.
bool psl_equals_sl_check(std::uint64_t q, int t, int r);

}  // namespace fieldred::embed
