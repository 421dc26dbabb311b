#include "fieldred/spread.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace fieldred::spread {

using gf::FieldError;
using linalg::Vec;

namespace {

Mat transpose(const Mat& m) {
    Mat r(*m.f, m.cols, m.rows);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) r.at(j, i) = m.at(i, j);
    return r;
}

std::vector<Vec> rows_of(const Subspace& s) {
    std::vector<Vec> rows;
    for (int i = 0; i < s.dim(); ++i)
        rows.emplace_back(*s.f, std::vector<Code>(s.basis.a.begin() + static_cast<long>(i) * s.ambient,
                                                  s.basis.a.begin() + static_cast<long>(i + 1) * s.ambient));
    return rows;
}

std::uint64_t ipow(std::uint64_t b, int e) {
    std::uint64_t r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

}  // namespace

Spread build_desarguesian(const VfrMap& f) {
    std::vector<Subspace> elems;
    for (auto& b : vfr::desarguesian_partition(f)) elems.push_back(std::move(b.block));
    return make_spread(f.small(), f.t(), f.r(), std::move(elems));
}

Spread make_spread(const Field& f, int t, int r, std::vector<Subspace> elements) {
    std::sort(elements.begin(), elements.end());
    if (!is_spread(f, t * r, elements)) throw FieldError("element list is not a spread");
    return Spread{&f, t, r, std::move(elements)};
}

bool is_spread(const Field& f, int n, const std::vector<Subspace>& elements) {
    if (elements.empty()) return n == 0;
    int t = elements.front().dim();
    if (t == 0 || n % t != 0) return false;
    std::uint64_t q = f.size();
    std::uint64_t want = (ipow(q, n) - 1) / (ipow(q, t) - 1);
    if (elements.size() != want) return false;
    for (const auto& e : elements)
        if (e.f != &f || e.ambient != n || e.dim() != t) return false;
    for (size_t i = 0; i < elements.size(); ++i)
        for (size_t j = i + 1; j < elements.size(); ++j)
            if (projgeo::meet(elements[i], elements[j]).dim() != 0) return false;
    // count x equidimension x disjointness forces coverage
    return true;
}

bool is_normal(const Spread& s) {
    for (size_t i = 0; i < s.elements.size(); ++i)
        for (size_t j = i + 1; j < s.elements.size(); ++j) {
            Subspace sp = projgeo::span(s.elements[i], s.elements[j]);
            if (sp.dim() == s.n()) continue;  // whole space, trivially covered
            for (const auto& e : s.elements) {
                int m = projgeo::meet(e, sp).dim();
                if (m != 0 && m != e.dim()) return false;
            }
        }
    return true;
}

Spread act(const Collineation& g, const Spread& s) {
    std::vector<Subspace> elems;
    elems.reserve(s.elements.size());
    for (const auto& e : s.elements) elems.push_back(projgeo::act(g, e));
    std::sort(elems.begin(), elems.end());
    return Spread{s.f, s.t, s.r, std::move(elems)};
}

// ---------------------------------------------------------------------------
// Equivalence backtracking: find a linear map sending src onto dst by
// choosing images block-by-block for a spanning chain of src elements.

namespace {

struct Backtracker {
    const Field* f;
    int n, t, r;
    const std::vector<Subspace>* dst;  // sorted
    std::uint64_t budget;
    std::uint64_t nodes = 0;
    bool budget_hit = false;

    Mat B, Binv;                        // source chain basis rows, inverse
    std::vector<Mat> coeff;             // per src element: rows in B-coordinates
    std::vector<std::vector<int>> due;  // per prefix depth: src elements to check
    std::vector<std::vector<Code>> tuples;  // ordered bases of F_q^t, flattened t*t
    Mat Y;                              // image rows, filled block by block
    std::vector<char> used;
    bool found = false;
    Mat result;

    bool dst_member(const Subspace& s) const {
        return std::binary_search(dst->begin(), dst->end(), s);
    }

    bool consistent(int depth) {
        int filled = depth * t;
        for (int e : due[static_cast<size_t>(depth)]) {
            std::vector<Vec> img;
            for (int a = 0; a < t; ++a) {
                Vec y = Vec::zero(*f, n);
                for (int j = 0; j < filled; ++j) {
                    Code c = coeff[static_cast<size_t>(e)].at(a, j);
                    if (c == 0) continue;
                    for (int k = 0; k < n; ++k)
                        y.e[static_cast<size_t>(k)] =
                            f->add(y.e[static_cast<size_t>(k)], f->mul(c, Y.at(j, k)));
                }
                img.push_back(std::move(y));
            }
            if (!dst_member(projgeo::subspace_from_rows(*f, n, img))) return false;
        }
        return true;
    }

    void search(int depth) {
        if (found || budget_hit) return;
        if (depth == r) {
            result = transpose(linalg::mul(Binv, Y));
            found = true;
            return;
        }
        for (size_t di = 0; di < dst->size(); ++di) {
            if (used[di]) continue;
            const Subspace& d = (*dst)[di];
            // image blocks must extend the target span freely
            {
                Mat stack(*f, depth * t + t, n);
                std::copy(Y.a.begin(), Y.a.begin() + static_cast<long>(depth * t) * n,
                          stack.a.begin());
                std::copy(d.basis.a.begin(), d.basis.a.end(),
                          stack.a.begin() + static_cast<long>(depth * t) * n);
                if (linalg::rank(stack) != depth * t + t) continue;
            }
            used[di] = 1;
            for (const auto& tup : tuples) {
                if (++nodes > budget) {
                    budget_hit = true;
                    break;
                }
                // Y rows for this block: tuple coefficients times d's basis rows
                for (int a = 0; a < t; ++a)
                    for (int k = 0; k < n; ++k) {
                        Code acc = 0;
                        for (int b = 0; b < t; ++b)
                            acc = f->add(acc, f->mul(tup[static_cast<size_t>(a * t + b)],
                                                     d.basis.at(b, k)));
                        Y.at(depth * t + a, k) = acc;
                    }
                if (consistent(depth + 1)) search(depth + 1);
                if (found || budget_hit) break;
            }
            used[di] = 0;
            if (found || budget_hit) return;
        }
    }
};

// all ordered bases of F_q^t, as flat coefficient lists (t*t entries)
std::vector<std::vector<Code>> basis_tuples(const Field& f, int t) {
    std::vector<std::vector<Code>> vecs;
    linalg::enumerate_vectors(f, t, [&](const Vec& v) {
        if (!v.is_zero()) vecs.push_back(v.e);
    });
    std::vector<std::vector<Code>> out;
    std::vector<std::vector<Code>> cur;
    std::function<void()> go = [&]() {
        if (static_cast<int>(cur.size()) == t) {
            std::vector<Code> flat;
            for (const auto& row : cur)
                for (Code c : row) flat.push_back(c);
            out.push_back(std::move(flat));
            return;
        }
        for (const auto& v : vecs) {
            Mat m(f, static_cast<int>(cur.size()) + 1, t);
            for (size_t i = 0; i < cur.size(); ++i)
                for (int j = 0; j < t; ++j) m.at(static_cast<int>(i), j) = cur[i][static_cast<size_t>(j)];
            for (int j = 0; j < t; ++j) m.at(static_cast<int>(cur.size()), j) = v[static_cast<size_t>(j)];
            if (linalg::rank(std::move(m)) != static_cast<int>(cur.size()) + 1) continue;
            cur.push_back(v);
            go();
            cur.pop_back();
        }
    };
    go();
    return out;
}

// Linear search: does some A in GL(n,q) map src onto dst?
bool linear_equivalence(const Field& f, int t, int r,
                        const std::vector<Subspace>& src, const std::vector<Subspace>& dst,
                        std::uint64_t budget, std::uint64_t& nodes_used, bool& budget_hit,
                        Mat* out) {
    int n = t * r;
    Backtracker bt;
    bt.f = &f;
    bt.n = n;
    bt.t = t;
    bt.r = r;
    bt.dst = &dst;
    bt.budget = budget;
    bt.tuples = basis_tuples(f, t);

    // greedy spanning chain of src elements, each meeting the prefix trivially
    std::vector<int> chain;
    Subspace acc = projgeo::empty_subspace(f, n);
    while (acc.dim() < n) {
        int pick = -1;
        for (size_t i = 0; i < src.size(); ++i) {
            if (std::find(chain.begin(), chain.end(), static_cast<int>(i)) != chain.end()) continue;
            if (projgeo::meet(src[i], acc).dim() == 0) { pick = static_cast<int>(i); break; }
        }
        if (pick < 0) throw FieldError("no free spanning chain in source spread");
        chain.push_back(pick);
        acc = projgeo::span(acc, src[static_cast<size_t>(pick)]);
    }
    if (static_cast<int>(chain.size()) != r) throw FieldError("unexpected chain length");

    bt.B = Mat(f, n, n);
    for (int i = 0; i < r; ++i)
        std::copy(src[static_cast<size_t>(chain[static_cast<size_t>(i)])].basis.a.begin(),
                  src[static_cast<size_t>(chain[static_cast<size_t>(i)])].basis.a.end(),
                  bt.B.a.begin() + static_cast<long>(i * t) * n);
    bt.Binv = linalg::inverse(bt.B);

    // each element's rows in chain-basis coordinates: C = R * B^-1
    for (const auto& e : src)
        bt.coeff.push_back(linalg::mul(e.basis, bt.Binv));

    // first prefix depth at which each non-chain element is fully inside the span
    bt.due.assign(static_cast<size_t>(r + 1), {});
    for (size_t e = 0; e < src.size(); ++e) {
        if (std::find(chain.begin(), chain.end(), static_cast<int>(e)) != chain.end()) continue;
        int depth = r;
        for (int i = 1; i <= r; ++i) {
            bool inside = true;
            for (int a = 0; a < t && inside; ++a)
                for (int j = i * t; j < n; ++j)
                    if (bt.coeff[e].at(a, j) != 0) { inside = false; break; }
            if (inside) { depth = i; break; }
        }
        bt.due[static_cast<size_t>(depth)].push_back(static_cast<int>(e));
    }

    bt.Y = Mat(f, n, n);
    bt.used.assign(dst.size(), 0);
    bt.search(0);
    nodes_used += bt.nodes;
    budget_hit = budget_hit || bt.budget_hit;
    if (bt.found && out) *out = bt.result;
    return bt.found;
}

Subspace frobenius_subspace(const Subspace& s, long e) {
    Subspace r = s;
    for (Code& c : r.basis.a) c = s.f->frobenius(c, e);
    return r;
}

}  // namespace

EquivalenceResult spread_equivalence_map(const Spread& s1, const Spread& s2,
                                         std::uint64_t node_budget) {
    if (s1.f != s2.f || s1.t != s2.t || s1.r != s2.r)
        throw FieldError("spread parameter mismatch");
    const Field& f = *s1.f;
    EquivalenceResult res;
    bool budget_hit = false;
    for (long e = 0; e < f.k(); ++e) {
        // search a linear map A with A(psi^e(s1)) = s2; then g = (A, e)
        std::vector<Subspace> twisted;
        for (const auto& el : s1.elements) twisted.push_back(frobenius_subspace(el, e));
        std::sort(twisted.begin(), twisted.end());
        Mat a;
        if (linear_equivalence(f, s1.t, s1.r, twisted, s2.elements,
                               node_budget - std::min(node_budget, res.nodes), res.nodes,
                               budget_hit, &a)) {
            SemilinearMap g = linalg::semilinear(std::move(a), e);
            Collineation coll = projgeo::collineation(g);
            if (!(act(coll, s1) == s2)) throw FieldError("internal: bad equivalence witness");
            res.verdict = Verdict::yes;
            res.map = coll;
            return res;
        }
        if (budget_hit) {
            res.verdict = Verdict::unknown;
            return res;
        }
    }
    res.verdict = Verdict::no;
    return res;
}

Verdict is_desarguesian(const Spread& s, std::uint64_t node_budget) {
    const Field& f = *s.f;
    const Field& big = Field::get(f.p(), f.k() * s.t);
    Spread d = build_desarguesian(VfrMap(big, f, s.r));
    // PGL-equivalence with the standard spread; linear search is complete
    // because any semilinear witness can be stripped of its automorphism
    // (see degamma)
    std::uint64_t nodes = 0;
    bool budget_hit = false;
    if (linear_equivalence(f, s.t, s.r, s.elements, d.elements, node_budget, nodes,
                           budget_hit, nullptr))
        return Verdict::yes;
    return budget_hit ? Verdict::unknown : Verdict::no;
}

StabiliserReport elementwise_stabiliser(const VfrMap& f) {
    Spread d = build_desarguesian(f);
    const Field& big = f.big();
    const Field& small = f.small();
    StabiliserReport rep;
    std::set<std::string> classes;
    for (Code beta = 1; beta < big.size(); ++beta) {
        SemilinearMap phi = vfr::blowup(f, linalg::scalar_map(big, beta, f.r()));
        Collineation c = projgeo::collineation(phi);
        for (const auto& e : d.elements)
            if (!(projgeo::act(c, e) == e))
                throw FieldError("internal: m_beta blowup does not fix the spread elementwise");
        classes.insert(linalg::format(linalg::proj_canonical(phi, small.k())));
    }
    rep.group_order = classes.size();
    rep.closed_form_order = (big.size() - 1) / (small.size() - 1);
    rep.elementwise_order = rep.group_order;
    rep.generators.push_back(linalg::proj_canonical(
        vfr::blowup(f, linalg::scalar_map(big, big.generator(), f.r())), small.k()));
    return rep;
}

StabiliserReport setwise_stabiliser(const VfrMap& f, GroupKind group) {
    const Field& big = f.big();
    const Field& small = f.small();
    long h = small.k();
    long kbig = big.k();
    std::vector<long> exps;
    for (long e = 0; e < kbig; ++e)
        if (group == GroupKind::pgammal || e % h == 0) exps.push_back(e);

    std::set<std::string> classes;
    linalg::enumerate_gl(big, f.r(), [&](const Mat& m) {
        for (long e : exps) {
            SemilinearMap phi = vfr::blowup(f, SemilinearMap{m, e});
            classes.insert(linalg::format(linalg::proj_canonical(phi, h)));
        }
    });

    // |GL(r,q^t)| = prod_i (q^{tr} - q^{ti})
    std::uint64_t gl_order = 1;
    std::uint64_t qt = big.size();
    for (int i = 0; i < f.r(); ++i) gl_order *= ipow(qt, f.r()) - ipow(qt, i);

    StabiliserReport rep;
    rep.group_order = classes.size();
    rep.closed_form_order =
        gl_order / (small.size() - 1) * static_cast<std::uint64_t>(exps.size());

    // generators: enough to generate GL(r,q^t) (diagonal, cycle, transvection)
    // plus the allowed field automorphism
    Code w = big.generator();
    Mat diag = Mat::identity(big, f.r());
    diag.at(0, 0) = w;
    rep.generators.push_back(linalg::proj_canonical(vfr::blowup(f, SemilinearMap{diag, 0}), h));
    if (f.r() >= 2) {
        Mat cyc(big, f.r(), f.r());
        for (int i = 0; i < f.r(); ++i) cyc.at(i, (i + 1) % f.r()) = 1;
        rep.generators.push_back(linalg::proj_canonical(vfr::blowup(f, SemilinearMap{cyc, 0}), h));
        Mat tv = Mat::identity(big, f.r());
        tv.at(0, 1) = 1;
        rep.generators.push_back(linalg::proj_canonical(vfr::blowup(f, SemilinearMap{tv, 0}), h));
    }
    long frob = group == GroupKind::pgammal ? 1 : h;
    if (frob < kbig) {
        rep.generators.push_back(linalg::proj_canonical(
            vfr::blowup(f, SemilinearMap{Mat::identity(big, f.r()), frob}), h));
    }
    return rep;
}

SemilinearMap degamma(const VfrMap& f, const SemilinearMap& phi, const Spread& s) {
    Spread d = build_desarguesian(f);
    if (!(act(projgeo::collineation(phi), s) == d))
        throw FieldError("map does not send the spread onto the standard spread");
    if (phi.aut == 0) return phi;
    // lift psi (x -> x^{p^e} on F_q) to F_{q^t} and undo it through the blowup
    long kbig = f.big().k();
    long e = phi.aut;  // in [0, h)
    SemilinearMap corr = vfr::blowup(
        f, SemilinearMap{Mat::identity(f.big(), f.r()), (kbig - e) % kbig});
    SemilinearMap out = linalg::compose(corr, phi);
    if (out.aut != 0) throw FieldError("internal: degamma failed to linearize");
    if (!(act(projgeo::collineation(out), s) == d))
        throw FieldError("internal: degamma broke the spread property");
    return out;
}

Spread regulus_switched_pg33() {
    const Field& f9 = Field::get(3, 2);
    const Field& f3 = Field::get(3, 1);
    VfrMap f(f9, f3, 2);
    Spread d = build_desarguesian(f);

    std::vector<Subspace> all_lines;
    projgeo::enumerate_subspaces(f3, 4, 2, [&](const Subspace& s) { all_lines.push_back(s); });

    auto meets_all = [&](const Subspace& cand, const std::vector<Subspace>& lines) {
        for (const auto& l : lines)
            if (projgeo::meet(cand, l).dim() == 0) return false;
        return true;
    };

    std::vector<Subspace> three{d.elements[0], d.elements[1], d.elements[2]};
    std::vector<Subspace> opposite;  // transversals of the three
    for (const auto& cand : all_lines)
        if (meets_all(cand, three)) opposite.push_back(cand);
    if (opposite.size() != 4) throw FieldError("internal: opposite regulus size");

    std::vector<Subspace> regulus;  // transversals of the opposite = regulus in d
    for (const auto& cand : all_lines)
        if (meets_all(cand, opposite)) regulus.push_back(cand);
    if (regulus.size() != 4) throw FieldError("internal: regulus size");

    std::vector<Subspace> switched;
    for (const auto& e : d.elements)
        if (std::find(regulus.begin(), regulus.end(), e) == regulus.end())
            switched.push_back(e);
    if (switched.size() + 4 != d.elements.size())
        throw FieldError("internal: regulus not inside the Desarguesian spread");
    for (const auto& l : opposite) switched.push_back(l);
    return make_spread(f3, 2, 2, std::move(switched));
}

std::string format(const Spread& s) {
    std::ostringstream os;
    os << s.f->size() << " " << s.t << " " << s.r << "\n";
    for (const auto& e : s.elements) os << projgeo::format(e) << "\n";
    return os.str();
}

Spread parse_spread(const std::string& text) {
    std::istringstream is(text);
    std::uint64_t q;
    int t, r;
    if (!(is >> q >> t >> r)) throw FieldError("malformed spread header");
    long p = 2;
    while (q % static_cast<std::uint64_t>(p) != 0) ++p;
    int h = 0;
    std::uint64_t qq = q;
    while (qq > 1) {
        if (qq % static_cast<std::uint64_t>(p) != 0) throw FieldError("q is not a prime power");
        qq /= static_cast<std::uint64_t>(p);
        ++h;
    }
    const Field& f = Field::get(p, h);
    std::string line;
    std::getline(is, line);  // rest of header line
    std::vector<Subspace> elems;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        elems.push_back(projgeo::parse_subspace(f, t * r, line));
    }
    return make_spread(f, t, r, std::move(elems));
}

}  // namespace fieldred::spread
