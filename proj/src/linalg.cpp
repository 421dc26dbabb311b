#include "fieldred/linalg.hpp"

#include <algorithm>
#include <sstream>

namespace fieldred::linalg {

using gf::FieldError;

bool Vec::is_zero() const {
    return std::all_of(e.begin(), e.end(), [](Code c) { return c == 0; });
}

Vec add(const Vec& a, const Vec& b) {
    if (a.f != b.f || a.dim() != b.dim()) throw FieldError("vector context mismatch");
    Vec r = Vec::zero(*a.f, a.dim());
    for (int i = 0; i < a.dim(); ++i) r.e[i] = a.f->add(a.e[i], b.e[i]);
    return r;
}

Vec scale(Code c, const Vec& v) {
    Vec r = Vec::zero(*v.f, v.dim());
    for (int i = 0; i < v.dim(); ++i) r.e[i] = v.f->mul(c, v.e[i]);
    return r;
}

Vec frobenius(const Vec& v, long i) {
    Vec r = Vec::zero(*v.f, v.dim());
    for (int j = 0; j < v.dim(); ++j) r.e[j] = v.f->frobenius(v.e[j], i);
    return r;
}

Mat Mat::identity(const Field& field, int n) {
    Mat m(field, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

Mat mul(const Mat& x, const Mat& y) {
    if (x.f != y.f || x.cols != y.rows) throw FieldError("matrix shape/context mismatch");
    Mat r(*x.f, x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            Code xik = x.at(i, k);
            if (xik == 0) continue;
            for (int j = 0; j < y.cols; ++j)
                r.at(i, j) = x.f->add(r.at(i, j), x.f->mul(xik, y.at(k, j)));
        }
    return r;
}

Vec mul(const Mat& x, const Vec& v) {
    if (x.f != v.f || x.cols != v.dim()) throw FieldError("matrix/vector mismatch");
    Vec r = Vec::zero(*x.f, x.rows);
    for (int i = 0; i < x.rows; ++i) {
        Code s = 0;
        for (int j = 0; j < x.cols; ++j) s = x.f->add(s, x.f->mul(x.at(i, j), v.e[j]));
        r.e[i] = s;
    }
    return r;
}

Mat frobenius(const Mat& x, long i) {
    Mat r = x;
    for (Code& c : r.a) c = x.f->frobenius(c, i);
    return r;
}

Mat scale(Code c, const Mat& x) {
    Mat r = x;
    for (Code& v : r.a) v = x.f->mul(c, v);
    return r;
}

std::vector<int> rref(Mat& m) {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < m.cols && row < m.rows; ++col) {
        int piv = -1;
        for (int i = row; i < m.rows; ++i)
            if (m.at(i, col) != 0) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != row)
            for (int j = 0; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(row, j));
        Code inv = m.f->inv(m.at(row, col));
        for (int j = col; j < m.cols; ++j) m.at(row, j) = m.f->mul(inv, m.at(row, j));
        for (int i = 0; i < m.rows; ++i) {
            if (i == row) continue;
            Code c = m.at(i, col);
            if (c == 0) continue;
            for (int j = col; j < m.cols; ++j)
                m.at(i, j) = m.f->sub(m.at(i, j), m.f->mul(c, m.at(row, j)));
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

int rank(Mat m) { return static_cast<int>(rref(m).size()); }

Code det(Mat m) {
    if (m.rows != m.cols) throw FieldError("det of non-square matrix");
    Code d = 1;
    int n = m.rows;
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int i = col; i < n; ++i)
            if (m.at(i, col) != 0) { piv = i; break; }
        if (piv < 0) return 0;
        if (piv != col) {
            for (int j = 0; j < n; ++j) std::swap(m.at(piv, j), m.at(col, j));
            d = m.f->neg(d);
        }
        d = m.f->mul(d, m.at(col, col));
        Code inv = m.f->inv(m.at(col, col));
        for (int i = col + 1; i < n; ++i) {
            Code c = m.f->mul(inv, m.at(i, col));
            if (c == 0) continue;
            for (int j = col; j < n; ++j)
                m.at(i, j) = m.f->sub(m.at(i, j), m.f->mul(c, m.at(col, j)));
        }
    }
    return d;
}

bool invertible(const Mat& m) {
    return m.rows == m.cols && det(m) != 0;
}

Mat inverse(const Mat& m) {
    if (m.rows != m.cols) throw FieldError("inverse of non-square matrix");
    int n = m.rows;
    Mat aug(*m.f, n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, n + i) = 1;
    }
    auto piv = rref(aug);
    if (static_cast<int>(piv.size()) != n || piv[n - 1] != n - 1)
        throw FieldError("matrix is singular");
    Mat r(*m.f, n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r.at(i, j) = aug.at(i, n + j);
    return r;
}

Mat nullspace(const Mat& m) {
    Mat r = m;
    auto piv = rref(r);
    std::vector<bool> is_piv(static_cast<size_t>(m.cols), false);
    for (int c : piv) is_piv[static_cast<size_t>(c)] = true;
    int nfree = m.cols - static_cast<int>(piv.size());
    Mat ns(*m.f, nfree, m.cols);
    int row = 0;
    for (int c = 0; c < m.cols; ++c) {
        if (is_piv[static_cast<size_t>(c)]) continue;
        ns.at(row, c) = 1;
        for (int i = 0; i < static_cast<int>(piv.size()); ++i)
            ns.at(row, piv[static_cast<size_t>(i)]) = m.f->neg(r.at(i, c));
        ++row;
    }
    return ns;
}

std::string format(const Mat& m) {
    std::ostringstream os;
    for (int i = 0; i < m.rows; ++i) {
        if (i) os << ';';
        for (int j = 0; j < m.cols; ++j) {
            if (j) os << ',';
            os << m.f->format(m.at(i, j));
        }
    }
    return os.str();
}

Mat parse_mat(const Field& f, const std::string& s) {
    // Entries are Fe coefficient lists, themselves comma-separated; a row of
    // w entries is therefore w*k comma-separated residues, regrouped by k.
    int k = f.k();
    std::vector<std::vector<Code>> rows;
    std::istringstream is(s);
    std::string rowtok;
    size_t width = 0;
    while (std::getline(is, rowtok, ';')) {
        std::vector<long> residues;
        std::istringstream rs(rowtok);
        std::string tok;
        while (std::getline(rs, tok, ',')) residues.push_back(std::stol(tok));
        if (residues.empty() || residues.size() % static_cast<size_t>(k) != 0)
            throw FieldError("matrix row length not a multiple of the field degree");
        std::vector<Code> row;
        for (size_t off = 0; off < residues.size(); off += static_cast<size_t>(k)) {
            std::vector<long> coeffs(residues.begin() + static_cast<long>(off),
                                     residues.begin() + static_cast<long>(off) + k);
            row.push_back(f.from_coeffs(coeffs));
        }
        if (rows.empty()) width = row.size();
        else if (row.size() != width) throw FieldError("ragged matrix literal");
        rows.push_back(std::move(row));
    }
    if (rows.empty() || width == 0) throw FieldError("empty matrix literal");
    Mat m(f, static_cast<int>(rows.size()), static_cast<int>(width));
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) m.at(i, j) = rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
    return m;
}

SemilinearMap identity_map(const Field& f, int n) {
    return SemilinearMap{Mat::identity(f, n), 0};
}

SemilinearMap scalar_map(const Field& f, Code beta, int r) {
    if (beta == 0) throw FieldError("scalar_map needs a nonzero scalar");
    return SemilinearMap{scale(beta, Mat::identity(f, r)), 0};
}

SemilinearMap semilinear(Mat m, long aut) {
    if (m.rows != m.cols) throw FieldError("semilinear map needs a square matrix");
    if (!invertible(m)) throw FieldError("semilinear map needs an invertible matrix");
    long k = m.f->k();
    return SemilinearMap{std::move(m), ((aut % k) + k) % k};
}

Vec apply(const SemilinearMap& s, const Vec& v) {
    return mul(s.m, frobenius(v, s.aut));
}

SemilinearMap compose(const SemilinearMap& a, const SemilinearMap& b) {
    if (a.m.f != b.m.f || a.dim() != b.dim()) throw FieldError("semilinear context mismatch");
    // (A, e_a)(B, e_b): v -> A psi_a(B psi_b(v)) = A psi_a(B) psi_{a+b}(v)
    long k = a.field().k();
    return SemilinearMap{mul(a.m, frobenius(b.m, a.aut)), (a.aut + b.aut) % k};
}

SemilinearMap inverse(const SemilinearMap& s) {
    long k = s.field().k();
    long e = (k - s.aut) % k;
    return SemilinearMap{frobenius(inverse(s.m), e), e};
}

std::string format(const SemilinearMap& s) {
    return format(s.m) + "|" + std::to_string(s.aut);
}

SemilinearMap proj_canonical(const SemilinearMap& s, int scalar_degree) {
    const Field& f = s.field();
    if (scalar_degree <= 0 || f.k() % scalar_degree != 0)
        throw FieldError("scalar degree must divide the field degree");
    Code lead = 0;
    for (Code c : s.m.a)
        if (c != 0) { lead = c; break; }
    if (lead == 0) throw FieldError("zero matrix has no projective class");
    // Pick lambda in the scalar subfield making the leading entry least.
    Code best_lambda = 1, best = lead;
    std::uint64_t sub = 1;
    for (int i = 0; i < scalar_degree; ++i) sub *= static_cast<std::uint64_t>(f.p());
    for (Code lam = 1; lam < f.size(); ++lam) {
        if (!f.in_subfield(lam, scalar_degree)) continue;
        Code v = f.mul(lam, lead);
        if (v < best) { best = v; best_lambda = lam; }
    }
    (void)sub;
    SemilinearMap r = s;
    r.m = scale(best_lambda, r.m);
    return r;
}

bool proj_eq(const ProjSemilinear& a, const ProjSemilinear& b) {
    if (a.scalar_degree != b.scalar_degree) throw FieldError("scalar group marker mismatch");
    if (a.rep.m.f != b.rep.m.f) throw FieldError("semilinear context mismatch");
    if (a.rep.aut != b.rep.aut) return false;
    const Field& f = a.rep.field();
    Mat q = mul(a.rep.m, inverse(b.rep.m));
    Code lam = q.at(0, 0);
    if (lam == 0 || !f.in_subfield(lam, a.scalar_degree)) return false;
    for (int i = 0; i < q.rows; ++i)
        for (int j = 0; j < q.cols; ++j)
            if (q.at(i, j) != (i == j ? lam : 0)) return false;
    return true;
}

void enumerate_vectors(const Field& f, int n, const std::function<void(const Vec&)>& fn) {
    Vec v = Vec::zero(f, n);
    std::uint64_t total = 1;
    for (int i = 0; i < n; ++i) total *= f.size();
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        std::uint64_t t = idx;
        // first coordinate most significant, so output is lexicographic
        for (int i = n - 1; i >= 0; --i) {
            v.e[static_cast<size_t>(i)] = static_cast<Code>(t % f.size());
            t /= f.size();
        }
        fn(v);
    }
}

void enumerate_gl(const Field& f, int n, const std::function<void(const Mat&)>& fn) {
    // Row-extension search: keep rows independent at each depth. Rows are
    // tried in lexicographic vector order, so complete matrices appear in
    // lexicographic entry order.
    std::uint64_t nvec = 1;
    for (int i = 0; i < n; ++i) nvec *= f.size();
    std::vector<Vec> all;
    all.reserve(nvec);
    enumerate_vectors(f, n, [&](const Vec& v) { all.push_back(v); });

    Mat m(f, n, n);
    std::function<void(int)> go = [&](int depth) {
        if (depth == n) {
            fn(m);
            return;
        }
        for (const Vec& v : all) {
            if (v.is_zero()) continue;
            for (int j = 0; j < n; ++j) m.at(depth, j) = v.e[static_cast<size_t>(j)];
            Mat top(f, depth + 1, n);
            std::copy(m.a.begin(), m.a.begin() + static_cast<long>(depth + 1) * n, top.a.begin());
            if (rank(std::move(top)) != depth + 1) continue;
            go(depth + 1);
        }
        for (int j = 0; j < n; ++j) m.at(depth, j) = 0;
    };
    go(0);
}

}  // namespace fieldred::linalg
