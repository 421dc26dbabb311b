#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "fieldred/linalg.hpp"

namespace fieldred::projgeo {

using gf::Code;
using gf::Field;
using linalg::Mat;
using linalg::ProjSemilinear;
using linalg::SemilinearMap;
using linalg::Vec;

/// Point of PG(n-1,q): nonzero vector with first nonzero coordinate 1.
struct ProjPoint {
    Vec rep;

    bool operator==(const ProjPoint& o) const { return rep == o.rep; }
    bool operator<(const ProjPoint& o) const { return rep < o.rep; }
};

ProjPoint make_point(const Vec& v);

/// Subspace of F_q^n in canonical form: basis rows in RREF.
/// basis.rows == 0 encodes the empty projective subspace.
struct Subspace {
    const Field* f = nullptr;
    int ambient = 0;
    Mat basis;  // RREF, rows = vector dimension

    int dim() const { return basis.rows; }  // vector-space dimension
    bool operator==(const Subspace& o) const {
        return f == o.f && ambient == o.ambient && basis.a == o.basis.a && basis.rows == o.basis.rows;
    }
    bool operator<(const Subspace& o) const {
        if (basis.rows != o.basis.rows) return basis.rows < o.basis.rows;
        return basis.a < o.basis.a;
    }
};

Subspace empty_subspace(const Field& f, int n);
Subspace whole_space(const Field& f, int n);
/// Row space of the given (not necessarily independent) spanning rows.
Subspace subspace_from_rows(const Field& f, int n, const std::vector<Vec>& rows);
Subspace subspace_of_point(const ProjPoint& p);

Subspace span(const Subspace& a, const Subspace& b);
Subspace meet(const Subspace& a, const Subspace& b);
bool contains(const Subspace& a, const Vec& v);
bool contains(const Subspace& a, const Subspace& b);

std::vector<ProjPoint> points_of(const Subspace& s);

/// Collineation of PG(n-1,q): projective semilinear map.
struct Collineation {
    ProjSemilinear g;
};

Collineation collineation(const SemilinearMap& m);
Subspace act(const Collineation& g, const Subspace& s);
ProjPoint act(const Collineation& g, const ProjPoint& p);

/// Gaussian binomial [n choose d]_q.
std::uint64_t gaussian_binomial(int n, int d, std::uint64_t q);

/// Streams every d-dimensional (vector dimension) subspace of F_q^n exactly
/// once, deterministically: pivot patterns in lexicographic column order,
/// free entries in ascending odometer order.
void enumerate_subspaces(const Field& f, int n, int d,
                         const std::function<void(const Subspace&)>& fn);

std::string format(const Subspace& s);
Subspace parse_subspace(const Field& f, int n, const std::string& text);

}  // namespace fieldred::projgeo
