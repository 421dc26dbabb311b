#include "fieldred/subspread.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

namespace fieldred::subspread {

using gf::FieldError;
using linalg::SemilinearMap;
using linalg::Vec;

namespace {

std::uint64_t ipow(std::uint64_t b, int e) {
    std::uint64_t r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

Vec mat_row(const Mat& m, int i) {
    std::vector<Code> e(static_cast<size_t>(m.cols));
    for (int j = 0; j < m.cols; ++j) e[static_cast<size_t>(j)] = m.at(i, j);
    return Vec(*m.f, std::move(e));
}

/// All nonzero vectors of the row space of s.
std::vector<Vec> row_space_vectors(const Subspace& s) {
    const Field& f = *s.f;
    int d = s.dim();
    std::vector<Vec> out;
    std::vector<Code> c(static_cast<size_t>(d), 0);
    for (;;) {
        int i = 0;
        while (i < d && c[static_cast<size_t>(i)] == f.size() - 1) c[static_cast<size_t>(i++)] = 0;
        if (i == d) break;
        ++c[static_cast<size_t>(i)];
        Vec v = Vec::zero(f, s.ambient);
        for (int j = 0; j < d; ++j)
            v = linalg::add(v, linalg::scale(c[static_cast<size_t>(j)], mat_row(s.basis, j)));
        out.push_back(std::move(v));
    }
    return out;
}

}  // namespace

bool is_subspread(const Spread& outer, const Spread& inner) {
    if (outer.f != inner.f || outer.n() != inner.n()) return false;
    std::uint64_t q = outer.f->size();
    std::uint64_t per = (ipow(q, outer.t) - 1) / (ipow(q, inner.t) - 1);
    std::vector<std::uint64_t> counts(outer.elements.size(), 0);
    for (const auto& e : inner.elements) {
        bool placed = false;
        for (size_t i = 0; i < outer.elements.size(); ++i)
            if (projgeo::contains(outer.elements[i], e)) {
                ++counts[i];
                placed = true;
                break;
            }
        if (!placed) return false;
    }
    return std::all_of(counts.begin(), counts.end(),
                       [&](std::uint64_t c) { return c == per; });
}

SubspreadPair build_standard_subspread(const VfrMap& f1, const VfrMap& f2) {
    if (&f1.small() != &f2.big() || f1.n() != f2.r())
        throw FieldError("reduction maps do not stack into a tower");
    int t = f1.t() * f2.t(), tprime = f2.t();
    if (tprime < 1 || t % tprime != 0) throw FieldError("t' does not divide t");

    VfrMap f = vfr::compose_vfr(f2, f1);
    SubspreadPair pair{spread::build_desarguesian(f), spread::build_desarguesian(f2),
                       tprime, f1, f2};
    if (!is_subspread(pair.outer, pair.inner))
        throw FieldError("internal: standard refinement failed verification");
    return pair;
}

Subspace lift_partitioned_subspace(const VfrMap& f1, const VfrMap& f2, const Subspace& T) {
    const Field& mid = f2.big();
    if (T.f != &f2.small() || T.ambient != f2.n())
        throw FieldError("subspace does not live in the reduced ambient space");

    // pull every vector of T back through f2
    std::vector<Vec> pre;
    std::set<std::vector<Code>> seen;
    for (const auto& v : row_space_vectors(T)) {
        Vec w = vfr_inverse(f2, v);
        seen.insert(w.e);
        pre.push_back(std::move(w));
    }
    // partitioned by inner elements <=> closed under F_{q^{t'}}-scalars
    for (const auto& w : pre)
        for (Code lambda = 2; lambda < mid.size(); ++lambda) {
            Vec s = linalg::scale(lambda, w);
            if (!seen.count(s.e))
                throw FieldError("subspace is not partitioned by inner spread elements");
        }

    Subspace U = projgeo::subspace_from_rows(mid, f2.r(), pre);
    // the preimage must be exactly the vectors of U
    if (ipow(mid.size(), U.dim()) - 1 != seen.size())
        throw FieldError("subspace is not partitioned by inner spread elements");
    if (U.dim() * f2.t() != T.dim())
        throw FieldError("internal: lifted dimension mismatch");
    // round trip: expanding U through f2 must give T back
    std::vector<Vec> expanded;
    for (int i = 0; i < U.dim(); ++i)
        for (Code b : f2.basis())
            expanded.push_back(vfr_apply(f2, linalg::scale(b, mat_row(U.basis, i))));
    if (!(projgeo::subspace_from_rows(*T.f, T.ambient, expanded) == T))
        throw FieldError("internal: lift round trip failed");
    return U;
}

bool uniqueness_consequence_check(const SubspreadPair& pair, long samples,
                                  std::uint64_t seed) {
    const Field& big = pair.f1.big();
    VfrMap f = vfr::compose_vfr(pair.f2, pair.f1);
    int r = pair.f1.r();
    long k = big.k();

    auto preserves_inner = [&](const SemilinearMap& xi) {
        auto c = projgeo::collineation(vfr::blowup(f, xi));
        for (const auto& e : pair.inner.elements) {
            Subspace img = projgeo::act(c, e);
            if (!std::binary_search(pair.inner.elements.begin(), pair.inner.elements.end(), img))
                return false;
        }
        return true;
    };

    bool ok = true;
    if (samples <= 0) {
        linalg::enumerate_gl(big, r, [&](const Mat& m) {
            if (!ok) return;
            for (long e = 0; e < k && ok; ++e)
                if (!preserves_inner(SemilinearMap{m, e})) ok = false;
        });
    } else {
        std::mt19937 rng(static_cast<std::uint32_t>(seed));
        std::uniform_int_distribution<Code> dist(0, static_cast<Code>(big.size() - 1));
        std::uniform_int_distribution<long> adist(0, k - 1);
        for (long done = 0; done < samples && ok;) {
            Mat m(big, r, r);
            for (auto& c : m.a) c = dist(rng);
            if (!linalg::invertible(m)) continue;
            if (!preserves_inner(SemilinearMap{std::move(m), adist(rng)})) ok = false;
            ++done;
        }
    }
    return ok;
}

std::string format(const SubspreadPair& pair) {
    std::ostringstream os;
    os << "subspread t'=" << pair.tprime << "\nouter:\n"
       << spread::format(pair.outer) << "inner:\n" << spread::format(pair.inner);
    return os.str();
}

}  // namespace fieldred::subspread
