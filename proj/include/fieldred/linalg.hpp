#pragma once

#include <functional>
#include <string>
#include <vector>

#include "fieldred/gf.hpp"

namespace fieldred::linalg {

using gf::Code;
using gf::Field;

/// Vector over a single field context.
struct Vec {
    const Field* f = nullptr;
    std::vector<Code> e;

    Vec() = default;
    Vec(const Field& field, std::vector<Code> entries) : f(&field), e(std::move(entries)) {}
    static Vec zero(const Field& field, int n) {
        return Vec(field, std::vector<Code>(static_cast<size_t>(n), 0));
    }

    int dim() const { return static_cast<int>(e.size()); }
    bool is_zero() const;
    bool operator==(const Vec& o) const { return f == o.f && e == o.e; }
    bool operator<(const Vec& o) const { return e < o.e; }
};

Vec add(const Vec& a, const Vec& b);
Vec scale(Code c, const Vec& v);
Vec frobenius(const Vec& v, long i);

/// Dense row-major matrix over a field context.
struct Mat {
    const Field* f = nullptr;
    int rows = 0, cols = 0;
    std::vector<Code> a;

    Mat() = default;
    Mat(const Field& field, int r, int c)
        : f(&field), rows(r), cols(c), a(static_cast<size_t>(r) * c, 0) {}

    Code& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
    Code at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }

    static Mat identity(const Field& field, int n);
    bool operator==(const Mat& o) const {
        return f == o.f && rows == o.rows && cols == o.cols && a == o.a;
    }
    bool operator<(const Mat& o) const { return a < o.a; }
};

Mat mul(const Mat& x, const Mat& y);
Vec mul(const Mat& x, const Vec& v);
Mat frobenius(const Mat& x, long i);
Mat scale(Code c, const Mat& x);

/// Reduced row echelon form (in place copy); returns pivot columns.
std::vector<int> rref(Mat& m);
int rank(Mat m);
Code det(Mat m);
bool invertible(const Mat& m);
/// Gauss-Jordan inverse; throws on singular input.
Mat inverse(const Mat& m);
/// Basis of the right nullspace, as rows.
Mat nullspace(const Mat& m);

std::string format(const Mat& m);  // rows ';'-separated, entries ','-separated per Fe format
Mat parse_mat(const Field& f, const std::string& s);

/// Invertible semilinear map x |-> A * psi(x), psi: c |-> c^(p^aut),
/// relative to the standard basis.
struct SemilinearMap {
    Mat m;
    long aut = 0;  // in [0, k)

    const Field& field() const { return *m.f; }
    int dim() const { return m.rows; }

    bool operator==(const SemilinearMap& o) const { return aut == o.aut && m == o.m; }
    bool operator<(const SemilinearMap& o) const {
        if (aut != o.aut) return aut < o.aut;
        return m < o.m;
    }
};

SemilinearMap identity_map(const Field& f, int n);
SemilinearMap scalar_map(const Field& f, Code beta, int r);
SemilinearMap semilinear(Mat m, long aut);

Vec apply(const SemilinearMap& s, const Vec& v);
SemilinearMap compose(const SemilinearMap& a, const SemilinearMap& b);
SemilinearMap inverse(const SemilinearMap& s);

std::string format(const SemilinearMap& s);  // "matrix|e"

/// A semilinear map considered up to scalars from the subfield of size
/// p^scalar_degree of its context. scalar_degree == k quotients by the
/// full multiplicative group.
struct ProjSemilinear {
    SemilinearMap rep;
    int scalar_degree = 0;
};

/// Canonical representative of the projective class: rep scaled so that its
/// first nonzero entry is the least code in its scalar-orbit.
SemilinearMap proj_canonical(const SemilinearMap& s, int scalar_degree);
bool proj_eq(const ProjSemilinear& a, const ProjSemilinear& b);

/// Deterministic enumeration of GL(n, f): yields invertible matrices in
/// lexicographic entry order. Uses direct filtering when |f|^(n^2) <= 2^24,
/// rank-by-rank row extension otherwise (same output order).
void enumerate_gl(const Field& f, int n, const std::function<void(const Mat&)>& fn);

/// All vectors of f^n in lexicographic code order.
void enumerate_vectors(const Field& f, int n, const std::function<void(const Vec&)>& fn);

}  // namespace fieldred::linalg
