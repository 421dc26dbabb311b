#include "fieldred/vfr.hpp"

#include <sstream>

namespace fieldred::vfr {

using gf::FieldError;

VfrMap::VfrMap(const Field& big, const Field& small, int r, std::vector<Code> basis)
    : VfrMap(big, small, r, std::move(basis), SubfieldEmbedding(small, big)) {}

VfrMap::VfrMap(const Field& big, const Field& small, int r, std::vector<Code> basis,
               SubfieldEmbedding emb)
    : big_(&big), small_(&small), r_(r), emb_(std::move(emb)) {
    if (&emb_.small() != &small || &emb_.big() != &big)
        throw FieldError("embedding does not match the tower");
    if (big.p() != small.p()) throw FieldError("field tower must share characteristic");
    if (big.k() % small.k() != 0) throw FieldError("small degree must divide big degree");
    if (r < 1) throw FieldError("dimension must be positive");
    t_ = big.k() / small.k();
    if (basis.empty()) {
        Code g = big.generator();
        Code pw = 1;
        for (int i = 0; i < t_; ++i) {
            basis.push_back(pw);
            pw = big.mul(pw, g);
        }
    }
    if (static_cast<int>(basis.size()) != t_) throw FieldError("basis must have t elements");
    basis_ = std::move(basis);

    // Decomposition table: evaluate every coefficient tuple; any collision
    // means the claimed basis is F_q-dependent.
    std::uint64_t q = small.size();
    std::uint64_t total = 1;
    for (int i = 0; i < t_; ++i) total *= q;
    if (total != big.size()) throw FieldError("internal tower size mismatch");
    coord_table_.assign(big.size() * static_cast<std::uint64_t>(t_), 0);
    std::vector<bool> hit(big.size(), false);
    std::vector<Code> digits(static_cast<size_t>(t_), 0);
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        std::uint64_t x = idx;
        Code w = 0;
        for (int j = 0; j < t_; ++j) {
            digits[static_cast<size_t>(j)] = static_cast<Code>(x % q);
            x /= q;
            w = big.add(w, big.mul(emb_.apply(digits[static_cast<size_t>(j)]),
                                   basis_[static_cast<size_t>(j)]));
        }
        if (hit[w]) throw FieldError("basis elements are F_q-linearly dependent");
        hit[w] = true;
        for (int j = 0; j < t_; ++j)
            coord_table_[static_cast<std::uint64_t>(w) * t_ + static_cast<std::uint64_t>(j)] =
                digits[static_cast<size_t>(j)];
    }
}

std::vector<Code> VfrMap::coords(Code w) const {
    std::vector<Code> c(static_cast<size_t>(t_));
    for (int j = 0; j < t_; ++j)
        c[static_cast<size_t>(j)] =
            coord_table_[static_cast<std::uint64_t>(w) * t_ + static_cast<std::uint64_t>(j)];
    return c;
}

Code VfrMap::combine(const std::vector<Code>& coeffs) const {
    if (static_cast<int>(coeffs.size()) != t_) throw FieldError("wrong coefficient count");
    Code w = 0;
    for (int j = 0; j < t_; ++j)
        w = big_->add(w, big_->mul(emb_.apply(coeffs[static_cast<size_t>(j)]),
                                   basis_[static_cast<size_t>(j)]));
    return w;
}

std::string VfrMap::descriptor() const {
    std::ostringstream os;
    os << big_->p() << "^" << big_->k() << "/" << small_->p() << "^" << small_->k() << ":" << r_
       << ":";
    for (int j = 0; j < t_; ++j) {
        if (j) os << ";";
        os << big_->format(basis_[static_cast<size_t>(j)]);
    }
    return os.str();
}

Vec vfr_apply(const VfrMap& f, const Vec& v) {
    if (v.f != &f.big() || v.dim() != f.r()) throw FieldError("vfr input mismatch");
    Vec w = Vec::zero(f.small(), f.n());
    for (int i = 0; i < f.r(); ++i) {
        auto c = f.coords(v.e[static_cast<size_t>(i)]);
        for (int j = 0; j < f.t(); ++j)
            w.e[static_cast<size_t>(i * f.t() + j)] = c[static_cast<size_t>(j)];
    }
    return w;
}

Vec vfr_inverse(const VfrMap& f, const Vec& w) {
    if (w.f != &f.small() || w.dim() != f.n()) throw FieldError("vfr inverse input mismatch");
    Vec v = Vec::zero(f.big(), f.r());
    for (int i = 0; i < f.r(); ++i) {
        std::vector<Code> c(w.e.begin() + static_cast<long>(i) * f.t(),
                            w.e.begin() + static_cast<long>(i + 1) * f.t());
        v.e[static_cast<size_t>(i)] = f.combine(c);
    }
    return v;
}

Mat vfr_transition(const VfrMap& f, const VfrMap& g) {
    if (&f.big() != &g.big() || &f.small() != &g.small() || f.r() != g.r())
        throw FieldError("transition requires matching (q, t, r)");
    int n = f.n();
    Mat xi(f.small(), n, n);
    for (int j = 0; j < n; ++j) {
        Vec u = Vec::zero(f.small(), n);
        u.e[static_cast<size_t>(j)] = 1;
        Vec col = vfr_apply(g, vfr_inverse(f, u));
        for (int i = 0; i < n; ++i) xi.at(i, j) = col.e[static_cast<size_t>(i)];
    }
    return xi;
}

std::vector<PartitionBlock> desarguesian_partition(const VfrMap& f) {
    std::vector<PartitionBlock> blocks;
    auto dirs = projgeo::points_of(projgeo::whole_space(f.big(), f.r()));
    for (const ProjPoint& d : dirs) {
        std::vector<Vec> rows;
        for (int j = 0; j < f.t(); ++j)
            rows.push_back(vfr_apply(f, linalg::scale(f.basis()[static_cast<size_t>(j)], d.rep)));
        blocks.push_back(
            PartitionBlock{d, projgeo::subspace_from_rows(f.small(), f.n(), rows)});
    }
    return blocks;
}

SemilinearMap blowup(const VfrMap& f, const SemilinearMap& xi) {
    if (xi.m.f != &f.big() || xi.dim() != f.r()) throw FieldError("blowup input mismatch");
    int n = f.n();
    long h = f.small().k();
    Mat a(f.small(), n, n);
    for (int j = 0; j < n; ++j) {
        Vec u = Vec::zero(f.small(), n);
        u.e[static_cast<size_t>(j)] = 1;
        Vec col = vfr_apply(f, linalg::apply(xi, vfr_inverse(f, u)));
        for (int i = 0; i < n; ++i) a.at(i, j) = col.e[static_cast<size_t>(i)];
    }
    // On F_q the big-field automorphism x -> x^(p^e) restricts to x -> x^(p^(e mod h)).
    return linalg::semilinear(std::move(a), xi.aut % h);
}

VfrMap compose_vfr(const VfrMap& f2, const VfrMap& f1) {
    if (&f1.small() != &f2.big()) throw FieldError("composition chain mismatch");
    if (f2.r() != f1.r() * f1.t()) throw FieldError("composition dimension mismatch");
    const gf::SubfieldEmbedding& iota = f1.embedding();  // mid -> big
    std::vector<Code> basis;
    // sequential output order: coordinates of entry i of F1 come first, so the
    // composite basis is i-major over f1's basis, j-minor over f2's
    for (int i = 0; i < f1.t(); ++i)
        for (int j = 0; j < f2.t(); ++j)
            basis.push_back(f1.big().mul(iota.apply(f2.basis()[static_cast<size_t>(j)]),
                                         f1.basis()[static_cast<size_t>(i)]));
    // the composite inclusion F_q -> F_{q^t} must chain through the tower
    return VfrMap(f1.big(), f2.small(), f1.r(), std::move(basis),
                  gf::SubfieldEmbedding::compose(f1.embedding(), f2.embedding()));
}

Subspace field_reduce_point(const VfrMap& f, const ProjPoint& p) {
    if (p.rep.f != &f.big() || p.rep.dim() != f.r()) throw FieldError("point context mismatch");
    std::vector<Vec> rows;
    for (int j = 0; j < f.t(); ++j)
        rows.push_back(vfr_apply(f, linalg::scale(f.basis()[static_cast<size_t>(j)], p.rep)));
    return projgeo::subspace_from_rows(f.small(), f.n(), rows);
}

VfrMap parse_vfr(const std::string& descriptor) {
    // "p^kb/p^ks:r:b1;b2;...;bt" with each bi in Fe text format
    auto colon1 = descriptor.find(':');
    auto colon2 = descriptor.find(':', colon1 == std::string::npos ? 0 : colon1 + 1);
    if (colon1 == std::string::npos || colon2 == std::string::npos)
        throw FieldError("malformed vfr descriptor");
    std::string tower = descriptor.substr(0, colon1);
    int r = std::stoi(descriptor.substr(colon1 + 1, colon2 - colon1 - 1));
    std::string basis_part = descriptor.substr(colon2 + 1);

    auto slash = tower.find('/');
    if (slash == std::string::npos) throw FieldError("malformed vfr tower");
    auto parse_pk = [](const std::string& s) {
        auto caret = s.find('^');
        if (caret == std::string::npos) throw FieldError("malformed field size");
        return std::pair<long, int>{std::stol(s.substr(0, caret)),
                                    std::stoi(s.substr(caret + 1))};
    };
    auto [pb, kb] = parse_pk(tower.substr(0, slash));
    auto [ps, ks] = parse_pk(tower.substr(slash + 1));
    if (pb != ps) throw FieldError("tower characteristics differ");
    const Field& big = Field::get(pb, kb);
    const Field& small = Field::get(ps, ks);

    std::vector<Code> basis;
    if (!basis_part.empty()) {
        std::istringstream is(basis_part);
        std::string tok;
        while (std::getline(is, tok, ';')) basis.push_back(big.parse(tok));
    }
    return VfrMap(big, small, r, std::move(basis));
}

}  // namespace fieldred::vfr
