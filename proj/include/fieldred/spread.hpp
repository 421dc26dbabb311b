#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fieldred/vfr.hpp"

namespace fieldred::spread {

using gf::Code;
using gf::Field;
using linalg::Mat;
using linalg::ProjSemilinear;
using linalg::SemilinearMap;
using projgeo::Collineation;
using projgeo::Subspace;
using vfr::VfrMap;

/// (t-1)-spread of PG(rt-1,q): sorted, pairwise disjoint, covering.
struct Spread {
    const Field* f = nullptr;  // F_q
    int t = 0, r = 0;
    std::vector<Subspace> elements;  // sorted

    int n() const { return t * r; }
    bool operator==(const Spread& o) const { return f == o.f && elements == o.elements; }
};

struct StabiliserReport {
    std::uint64_t group_order = 0;
    std::uint64_t closed_form_order = 0;
    std::uint64_t elementwise_order = 0;
    std::vector<SemilinearMap> generators;  // canonical projective representatives
};

enum class GroupKind { pgammal, pgl };

enum class Verdict { yes, no, unknown };

struct EquivalenceResult {
    Verdict verdict = Verdict::unknown;
    std::optional<Collineation> map;  // present iff verdict == yes
    std::uint64_t nodes = 0;
};

Spread build_desarguesian(const VfrMap& f);

/// Assemble and validate a spread from raw elements; throws if not a spread.
Spread make_spread(const Field& f, int t, int r, std::vector<Subspace> elements);

bool is_spread(const Field& f, int n, const std::vector<Subspace>& elements);
bool is_normal(const Spread& s);

/// PGL-equivalence with the standard Desarguesian spread of the same
/// parameters, by exhaustive backtracking with a node budget.
Verdict is_desarguesian(const Spread& s, std::uint64_t node_budget = 10'000'000);

/// Searches PGammaL(rt,q) for g with g(s1) = s2.
EquivalenceResult spread_equivalence_map(const Spread& s1, const Spread& s2,
                                         std::uint64_t node_budget = 10'000'000);

StabiliserReport elementwise_stabiliser(const VfrMap& f);
StabiliserReport setwise_stabiliser(const VfrMap& f, GroupKind group);

/// Strips the field automorphism from a spread-mapping collineation:
/// given phi with phi(s) = D (the standard spread of f), returns a linear
/// phi' (trivial automorphism) with phi'(s) = D.
SemilinearMap degamma(const VfrMap& f, const SemilinearMap& phi, const Spread& s);

Spread act(const Collineation& g, const Spread& s);

/// Non-Desarguesian fixture: Hall spread of PG(3,3), obtained from the
/// Desarguesian line spread by replacing one regulus with its opposite.
Spread regulus_switched_pg33();

/// Spread file: header "q t r", one subspace per line.
std::string format(const Spread& s);
Spread parse_spread(const std::string& text);

}  // namespace fieldred::spread
