#include "fieldred/projgeo.hpp"

#include <algorithm>

namespace fieldred::projgeo {

using gf::FieldError;

ProjPoint make_point(const Vec& v) {
    if (v.is_zero()) throw FieldError("zero vector has no projective point");
    Code lead = 0;
    for (Code c : v.e)
        if (c != 0) { lead = c; break; }
    return ProjPoint{linalg::scale(v.f->inv(lead), v)};
}

Subspace empty_subspace(const Field& f, int n) {
    return Subspace{&f, n, Mat(f, 0, n)};
}

Subspace whole_space(const Field& f, int n) {
    return Subspace{&f, n, Mat::identity(f, n)};
}

Subspace subspace_from_rows(const Field& f, int n, const std::vector<Vec>& rows) {
    Mat m(f, static_cast<int>(rows.size()), n);
    for (int i = 0; i < m.rows; ++i) {
        if (rows[static_cast<size_t>(i)].dim() != n || rows[static_cast<size_t>(i)].f != &f)
            throw FieldError("row dimension/context mismatch");
        for (int j = 0; j < n; ++j) m.at(i, j) = rows[static_cast<size_t>(i)].e[static_cast<size_t>(j)];
    }
    auto piv = linalg::rref(m);
    Mat basis(f, static_cast<int>(piv.size()), n);
    std::copy(m.a.begin(), m.a.begin() + static_cast<long>(piv.size()) * n, basis.a.begin());
    return Subspace{&f, n, std::move(basis)};
}

Subspace subspace_of_point(const ProjPoint& p) {
    return subspace_from_rows(*p.rep.f, p.rep.dim(), {p.rep});
}

Subspace span(const Subspace& a, const Subspace& b) {
    if (a.f != b.f || a.ambient != b.ambient) throw FieldError("ambient mismatch");
    std::vector<Vec> rows;
    for (int i = 0; i < a.dim(); ++i)
        rows.emplace_back(*a.f, std::vector<Code>(a.basis.a.begin() + static_cast<long>(i) * a.ambient,
                                                  a.basis.a.begin() + static_cast<long>(i + 1) * a.ambient));
    for (int i = 0; i < b.dim(); ++i)
        rows.emplace_back(*b.f, std::vector<Code>(b.basis.a.begin() + static_cast<long>(i) * b.ambient,
                                                  b.basis.a.begin() + static_cast<long>(i + 1) * b.ambient));
    return subspace_from_rows(*a.f, a.ambient, rows);
}

Subspace meet(const Subspace& a, const Subspace& b) {
    if (a.f != b.f || a.ambient != b.ambient) throw FieldError("ambient mismatch");
    int da = a.dim(), db = b.dim(), n = a.ambient;
    if (da == 0 || db == 0) return empty_subspace(*a.f, n);
    // x in both row spaces: x = u A = w B. Solve (u, w) from the left
    // nullspace relation u A - w B = 0, i.e. nullspace of the transpose.
    Mat stacked(*a.f, n, da + db);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < da; ++i) stacked.at(j, i) = a.basis.at(i, j);
        for (int i = 0; i < db; ++i) stacked.at(j, da + i) = a.f->neg(b.basis.at(i, j));
    }
    Mat coeffs = linalg::nullspace(stacked);  // rows (u | w)
    std::vector<Vec> rows;
    for (int r = 0; r < coeffs.rows; ++r) {
        Vec x = Vec::zero(*a.f, n);
        for (int i = 0; i < da; ++i)
            for (int j = 0; j < n; ++j)
                x.e[static_cast<size_t>(j)] =
                    a.f->add(x.e[static_cast<size_t>(j)],
                             a.f->mul(coeffs.at(r, i), a.basis.at(i, j)));
        rows.push_back(std::move(x));
    }
    return subspace_from_rows(*a.f, n, rows);
}

bool contains(const Subspace& a, const Vec& v) {
    if (v.is_zero()) return true;
    std::vector<Vec> rows;
    for (int i = 0; i < a.dim(); ++i)
        rows.emplace_back(*a.f, std::vector<Code>(a.basis.a.begin() + static_cast<long>(i) * a.ambient,
                                                  a.basis.a.begin() + static_cast<long>(i + 1) * a.ambient));
    rows.push_back(v);
    return subspace_from_rows(*a.f, a.ambient, rows).dim() == a.dim();
}

bool contains(const Subspace& a, const Subspace& b) {
    return span(a, b).dim() == a.dim();
}

std::vector<ProjPoint> points_of(const Subspace& s) {
    std::vector<ProjPoint> pts;
    int d = s.dim();
    if (d == 0) return pts;
    // coefficient vectors with first nonzero coordinate 1: one per point
    std::vector<Code> c(static_cast<size_t>(d), 0);
    std::function<void(int, bool)> go = [&](int i, bool started) {
        if (i == d) {
            if (!started) return;
            Vec x = Vec::zero(*s.f, s.ambient);
            for (int k = 0; k < d; ++k)
                for (int j = 0; j < s.ambient; ++j)
                    x.e[static_cast<size_t>(j)] = s.f->add(
                        x.e[static_cast<size_t>(j)],
                        s.f->mul(c[static_cast<size_t>(k)], s.basis.at(k, j)));
            pts.push_back(make_point(x));
            return;
        }
        if (!started) {
            c[static_cast<size_t>(i)] = 0;
            go(i + 1, false);
            c[static_cast<size_t>(i)] = 1;
            go(i + 1, true);
            c[static_cast<size_t>(i)] = 0;
        } else {
            for (Code v = 0; v < s.f->size(); ++v) {
                c[static_cast<size_t>(i)] = v;
                go(i + 1, true);
            }
            c[static_cast<size_t>(i)] = 0;
        }
    };
    go(0, false);
    std::sort(pts.begin(), pts.end());
    return pts;
}

Collineation collineation(const SemilinearMap& m) {
    return Collineation{ProjSemilinear{m, m.field().k()}};
}

Subspace act(const Collineation& g, const Subspace& s) {
    const SemilinearMap& m = g.g.rep;
    if (m.m.f != s.f || m.dim() != s.ambient) throw FieldError("collineation/ambient mismatch");
    std::vector<Vec> rows;
    for (int i = 0; i < s.dim(); ++i) {
        Vec row(*s.f, std::vector<Code>(s.basis.a.begin() + static_cast<long>(i) * s.ambient,
                                        s.basis.a.begin() + static_cast<long>(i + 1) * s.ambient));
        rows.push_back(linalg::apply(m, row));
    }
    return subspace_from_rows(*s.f, s.ambient, rows);
}

ProjPoint act(const Collineation& g, const ProjPoint& p) {
    return make_point(linalg::apply(g.g.rep, p.rep));
}

std::uint64_t gaussian_binomial(int n, int d, std::uint64_t q) {
    if (d < 0 || d > n) return 0;
    auto qpow = [&](int e) {
        std::uint64_t r = 1;
        for (int i = 0; i < e; ++i) r *= q;
        return r;
    };
    std::uint64_t g = 1;
    for (int i = 0; i < d; ++i) {
        unsigned __int128 num = static_cast<unsigned __int128>(g) * (qpow(n - i) - 1);
        g = static_cast<std::uint64_t>(num / (qpow(i + 1) - 1));
    }
    return g;
}

void enumerate_subspaces(const Field& f, int n, int d,
                         const std::function<void(const Subspace&)>& fn) {
    if (d < 0 || d > n) throw FieldError("dimension out of range");
    if (d == 0) {
        fn(empty_subspace(f, n));
        return;
    }
    // pivot patterns: increasing column indices p[0] < ... < p[d-1]
    std::vector<int> piv(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) piv[static_cast<size_t>(i)] = i;

    auto emit_pattern = [&]() {
        // free positions: (i, c) with c > piv[i], c not a pivot column
        std::vector<bool> is_piv(static_cast<size_t>(n), false);
        for (int c : piv) is_piv[static_cast<size_t>(c)] = true;
        std::vector<std::pair<int, int>> free_pos;
        for (int i = 0; i < d; ++i)
            for (int c = piv[static_cast<size_t>(i)] + 1; c < n; ++c)
                if (!is_piv[static_cast<size_t>(c)]) free_pos.emplace_back(i, c);

        Subspace s{&f, n, Mat(f, d, n)};
        for (int i = 0; i < d; ++i) s.basis.at(i, piv[static_cast<size_t>(i)]) = 1;

        std::vector<Code> vals(free_pos.size(), 0);
        for (;;) {
            for (size_t idx = 0; idx < free_pos.size(); ++idx)
                s.basis.at(free_pos[idx].first, free_pos[idx].second) = vals[idx];
            fn(s);
            size_t carry = free_pos.size();
            while (carry > 0) {
                if (++vals[carry - 1] < f.size()) break;
                vals[carry - 1] = 0;
                --carry;
            }
            if (carry == 0) break;
        }
    };

    for (;;) {
        emit_pattern();
        // next combination
        int i = d - 1;
        while (i >= 0 && piv[static_cast<size_t>(i)] == n - d + i) --i;
        if (i < 0) break;
        ++piv[static_cast<size_t>(i)];
        for (int j = i + 1; j < d; ++j)
            piv[static_cast<size_t>(j)] = piv[static_cast<size_t>(j - 1)] + 1;
    }
}

std::string format(const Subspace& s) {
    if (s.dim() == 0) return "-";
    return linalg::format(s.basis);
}

Subspace parse_subspace(const Field& f, int n, const std::string& text) {
    if (text == "-") return empty_subspace(f, n);
    Mat m = linalg::parse_mat(f, text);
    if (m.cols != n) throw FieldError("ambient mismatch in subspace literal");
    std::vector<Vec> rows;
    for (int i = 0; i < m.rows; ++i)
        rows.emplace_back(f, std::vector<Code>(m.a.begin() + static_cast<long>(i) * n,
                                               m.a.begin() + static_cast<long>(i + 1) * n));
    return subspace_from_rows(f, n, rows);
}

}  // namespace fieldred::projgeo
