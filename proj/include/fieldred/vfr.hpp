#pragma once

#include <string>
#include <vector>

#include "fieldred/projgeo.hpp"

namespace fieldred::vfr {

using gf::Code;
using gf::Field;
using gf::SubfieldEmbedding;
using linalg::Mat;
using linalg::SemilinearMap;
using linalg::Vec;
using projgeo::ProjPoint;
using projgeo::Subspace;

/// Vector field reduction map F: F_{q^t}^r -> F_q^{rt}, determined by an
/// F_q-basis of F_{q^t}. Coordinates of entry i occupy output slots
/// [i*t, (i+1)*t).
class VfrMap {
public:
    /// basis: t elements of the big field, F_q-linearly independent. If empty,
    /// the polynomial basis {1, g, ..., g^(t-1)} of the canonical generator g.
    VfrMap(const Field& big, const Field& small, int r, std::vector<Code> basis = {});

    /// Same, but with an explicit inclusion F_q -> F_{q^t} (needed by
    /// compose_vfr, where the inclusion is the chained tower embedding).
    VfrMap(const Field& big, const Field& small, int r, std::vector<Code> basis,
           SubfieldEmbedding emb);

    const Field& big() const { return *big_; }
    const Field& small() const { return *small_; }
    int r() const { return r_; }
    int t() const { return t_; }
    int n() const { return r_ * t_; }
    const std::vector<Code>& basis() const { return basis_; }
    const SubfieldEmbedding& embedding() const { return emb_; }

    /// F_q-coordinates of one big-field element w.r.t. the basis.
    std::vector<Code> coords(Code w) const;
    /// Inverse of coords: sum coeff_j * basis_j.
    Code combine(const std::vector<Code>& coeffs) const;

    std::string descriptor() const;

private:
    const Field* big_;
    const Field* small_;
    int r_, t_;
    std::vector<Code> basis_;
    SubfieldEmbedding emb_;
    std::vector<Code> coord_table_;  // big code -> t small codes, flattened
};

Vec vfr_apply(const VfrMap& f, const Vec& v);
Vec vfr_inverse(const VfrMap& f, const Vec& w);

/// Invertible F_q-matrix xi with xi(F(v)) = F'(v) for all v.
Mat vfr_transition(const VfrMap& f, const VfrMap& g);

struct PartitionBlock {
    ProjPoint direction;  // over the big field
    Subspace block;       // t-dimensional F_q-subspace
};

/// The Desarguesian vector space partition {F(<v>)}; block count
/// (q^{rt}-1)/(q^t-1).
std::vector<PartitionBlock> desarguesian_partition(const VfrMap& f);

/// Blowup F(xi): the F_q-semilinear map phi with phi(F(v)) = F(xi v).
SemilinearMap blowup(const VfrMap& f, const SemilinearMap& xi);

/// Composite of two stacked reductions: f2 after f1.
VfrMap compose_vfr(const VfrMap& f2, const VfrMap& f1);

/// Projective field reduction of a point of PG(r-1,q^t): the
/// (t-1)-dimensional projective subspace {<F(alpha v)>_q}.
Subspace field_reduce_point(const VfrMap& f, const ProjPoint& p);

VfrMap parse_vfr(const std::string& descriptor);

}  // namespace fieldred::vfr
