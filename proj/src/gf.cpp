#include "fieldred/gf.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

namespace fieldred::gf {

namespace {

// Polynomials over F_p as coefficient vectors, constant term first,
// no trailing zeros.
using Poly = std::vector<long>;

Poly trim(Poly f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
    return f;
}

Poly poly_mod(Poly a, const Poly& m, long p) {
    a = trim(std::move(a));
    const int dm = static_cast<int>(m.size()) - 1;
    while (static_cast<int>(a.size()) - 1 >= dm) {
        const int shift = static_cast<int>(a.size()) - 1 - dm;
        // m is monic
        const long c = a.back();
        for (int i = 0; i <= dm; ++i) {
            a[shift + i] = ((a[shift + i] - c * m[i]) % p + p) % p;
        }
        a = trim(std::move(a));
    }
    return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, long p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    return poly_mod(std::move(r), m, p);
}

Poly poly_powmod(Poly a, std::uint64_t e, const Poly& m, long p) {
    Poly r{1};
    a = poly_mod(std::move(a), m, p);
    while (e) {
        if (e & 1) r = poly_mulmod(r, a, m, p);
        a = poly_mulmod(a, a, m, p);
        e >>= 1;
    }
    return r;
}

// Remainder of a by monic divisor d (not reduced mod a modulus).
bool divides(const Poly& d, Poly a, long p) {
    a = poly_mod(std::move(a), d, p);
    return a.empty();
}

bool poly_irreducible(const Poly& f, long p) {
    const int k = static_cast<int>(f.size()) - 1;
    if (k <= 0) return false;
    if (k == 1) return true;
    if (f[0] == 0) return false;  // divisible by x
    // trial division against all monic polynomials of degree <= k/2
    for (int d = 1; 2 * d <= k; ++d) {
        std::uint64_t count = 1;
        for (int i = 0; i < d; ++i) count *= static_cast<std::uint64_t>(p);
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            Poly g(d + 1, 0);
            std::uint64_t t = idx;
            for (int i = 0; i < d; ++i) {
                g[i] = static_cast<long>(t % p);
                t /= p;
            }
            g[d] = 1;
            if (divides(g, f, p)) return false;
        }
    }
    return true;
}

Poly default_modulus(long p, int k) {
    if (k == 1) return Poly{0, 1};  // x
    std::uint64_t count = 1;
    for (int i = 0; i < k; ++i) count *= static_cast<std::uint64_t>(p);
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        Poly f(k + 1, 0);
        std::uint64_t t = idx;
        for (int i = 0; i < k; ++i) {
            f[i] = static_cast<long>(t % p);
            t /= p;
        }
        f[k] = 1;
        if (poly_irreducible(f, p)) return f;
    }
    throw FieldError("no irreducible polynomial found");  // unreachable
}

struct Key {
    long p;
    int k;
    std::vector<long> mod;
    bool operator<(const Key& o) const {
        if (p != o.p) return p < o.p;
        if (k != o.k) return k < o.k;
        return mod < o.mod;
    }
};

std::map<Key, std::unique_ptr<Field>>& registry() {
    static std::map<Key, std::unique_ptr<Field>> reg;
    return reg;
}

std::mutex& registry_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

struct FieldMaker {
    static std::unique_ptr<Field> make(long p, int k, std::vector<long> modulus) {
        return std::unique_ptr<Field>(new Field(p, k, std::move(modulus)));
    }
};

namespace {

const Field& intern(long p, int k, std::vector<long> modulus) {
    std::lock_guard<std::mutex> lock(registry_mutex());
    Key key{p, k, modulus};
    auto& reg = registry();
    auto it = reg.find(key);
    if (it == reg.end())
        it = reg.emplace(std::move(key), FieldMaker::make(p, k, std::move(modulus))).first;
    return *it->second;
}

}  // namespace

bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> fs;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            fs.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) fs.push_back(n);
    return fs;
}

const Field& Field::get(long p, int k) {
    if (!is_prime(p)) throw FieldError("characteristic is not prime");
    if (k < 1) throw FieldError("extension degree must be positive");
    return intern(p, k, default_modulus(p, k));
}

const Field& Field::get(long p, int k, const std::vector<long>& modulus) {
    if (!is_prime(p)) throw FieldError("characteristic is not prime");
    if (k < 1) throw FieldError("extension degree must be positive");
    if (static_cast<int>(modulus.size()) != k + 1)
        throw FieldError("modulus has wrong degree");
    std::vector<long> m(modulus);
    for (auto& c : m) c = ((c % p) + p) % p;
    if (m[k] != 1) throw FieldError("modulus must be monic");
    if (!poly_irreducible(m, p)) throw FieldError("modulus is reducible");
    return intern(p, k, std::move(m));
}

Field::Field(long p, int k, std::vector<long> modulus)
    : p_(p), k_(k), modulus_(std::move(modulus)) {
    pow_p_.resize(k + 1);
    pow_p_[0] = 1;
    for (int i = 1; i <= k; ++i) pow_p_[i] = pow_p_[i - 1] * static_cast<std::uint64_t>(p);
    size_ = pow_p_[k];
    if (size_ > (1u << 20)) throw FieldError("field too large (p^k > 2^20)");
}

long Field::coeff(Code a, int i) const {
    return static_cast<long>((a / pow_p_[i]) % static_cast<std::uint64_t>(p_));
}

Code Field::from_coeffs(const std::vector<long>& coeffs) const {
    if (static_cast<int>(coeffs.size()) > k_)
        throw FieldError("too many coefficients");
    std::uint64_t c = 0;
    for (int i = 0; i < static_cast<int>(coeffs.size()); ++i) {
        long r = ((coeffs[i] % p_) + p_) % p_;
        c += static_cast<std::uint64_t>(r) * pow_p_[i];
    }
    return static_cast<Code>(c);
}

Code Field::from_residue(long r) const {
    r = ((r % p_) + p_) % p_;
    return static_cast<Code>(r);
}

Code Field::add(Code a, Code b) const {
    std::uint64_t c = 0;
    for (int i = 0; i < k_; ++i) {
        long s = (coeff(a, i) + coeff(b, i)) % p_;
        c += static_cast<std::uint64_t>(s) * pow_p_[i];
    }
    return static_cast<Code>(c);
}

Code Field::neg(Code a) const {
    std::uint64_t c = 0;
    for (int i = 0; i < k_; ++i) {
        long s = (p_ - coeff(a, i)) % p_;
        c += static_cast<std::uint64_t>(s) * pow_p_[i];
    }
    return static_cast<Code>(c);
}

Code Field::sub(Code a, Code b) const { return add(a, neg(b)); }

Code Field::mul_poly(Code a, Code b) const {
    Poly pa(k_), pb(k_);
    for (int i = 0; i < k_; ++i) {
        pa[i] = coeff(a, i);
        pb[i] = coeff(b, i);
    }
    Poly r = poly_mulmod(trim(pa), trim(pb), modulus_, p_);
    r.resize(k_, 0);
    return from_coeffs(r);
}

void Field::build_log_tables() const {
    if (tables_built_) return;
    const std::uint64_t n = size_ - 1;
    auto factors = prime_factors(n);
    // least generator in code order
    Code g = 0;
    for (Code c = 1; c < size_; ++c) {
        bool ok = true;
        for (auto f : factors) {
            Poly base(k_);
            for (int i = 0; i < k_; ++i) base[i] = coeff(c, i);
            Poly r = poly_powmod(trim(base), n / f, modulus_, p_);
            r.resize(k_, 0);
            if (from_coeffs(r) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) {
            g = c;
            break;
        }
    }
    generator_ = g;
    if (size_ <= (1u << 16)) {
        exp_.assign(n, 0);
        log_.assign(size_, -1);
        Code cur = 1;
        for (std::uint64_t i = 0; i < n; ++i) {
            exp_[i] = cur;
            log_[cur] = static_cast<std::int64_t>(i);
            cur = mul_poly(cur, g);
        }
    }
    tables_built_ = true;
}

Code Field::mul(Code a, Code b) const {
    if (a == 0 || b == 0) return 0;
    if (!tables_built_) build_log_tables();
    if (!exp_.empty()) {
        const std::uint64_t n = size_ - 1;
        return exp_[(static_cast<std::uint64_t>(log_[a]) + static_cast<std::uint64_t>(log_[b])) % n];
    }
    return mul_poly(a, b);
}

Code Field::inv(Code a) const {
    if (a == 0) throw FieldError("inverse of zero");
    if (!tables_built_) build_log_tables();
    if (!exp_.empty()) {
        const std::uint64_t n = size_ - 1;
        return exp_[(n - static_cast<std::uint64_t>(log_[a])) % n];
    }
    return pow(a, size_ - 2);
}

Code Field::pow(Code a, std::uint64_t e) const {
    if (a == 0) return e == 0 ? 1 : 0;
    if (!tables_built_) build_log_tables();
    if (!exp_.empty()) {
        const std::uint64_t n = size_ - 1;
        return exp_[(static_cast<std::uint64_t>(log_[a]) % n) * (e % n) % n];
    }
    Code r = 1, base = a;
    while (e) {
        if (e & 1) r = mul_poly(r, base);
        base = mul_poly(base, base);
        e >>= 1;
    }
    return r;
}

Code Field::frobenius(Code a, long i) const {
    i = ((i % k_) + k_) % k_;
    Code r = a;
    for (long j = 0; j < i; ++j) r = pow(r, static_cast<std::uint64_t>(p_));
    return r;
}

Code Field::generator() const {
    if (!tables_built_) build_log_tables();
    return generator_;
}

std::uint64_t Field::order(Code a) const {
    if (a == 0) throw FieldError("order of zero");
    std::uint64_t ord = size_ - 1;
    for (auto f : prime_factors(size_ - 1)) {
        while (ord % f == 0 && pow(a, ord / f) == 1) ord /= f;
    }
    return ord;
}

bool Field::in_subfield(Code a, int d) const {
    if (d < 1 || k_ % d != 0) throw FieldError("subfield degree must divide k");
    return frobenius(a, d) == a;
}

std::string Field::format(Code a) const {
    std::ostringstream os;
    for (int i = 0; i < k_; ++i) {
        if (i) os << ',';
        os << coeff(a, i);
    }
    return os.str();
}

Code Field::parse(const std::string& s) const {
    std::vector<long> coeffs;
    std::istringstream is(s);
    std::string tok;
    while (std::getline(is, tok, ',')) coeffs.push_back(std::stol(tok));
    if (static_cast<int>(coeffs.size()) != k_)
        throw FieldError("element text has wrong coefficient count");
    return from_coeffs(coeffs);
}

std::string Field::descriptor() const {
    std::ostringstream os;
    os << p_ << '^' << k_ << ':';
    for (size_t i = 0; i < modulus_.size(); ++i) {
        if (i) os << ',';
        os << modulus_[i];
    }
    return os.str();
}

SubfieldEmbedding::SubfieldEmbedding(const Field& small, const Field& big)
    : small_(&small), big_(&big) {
    if (small.p() != big.p() || big.k() % small.k() != 0)
        throw FieldError("no subfield embedding: degree mismatch");
    // least root in the big field of the small field's modulus
    const auto& m = small.modulus();
    Code root = 0;
    bool found = false;
    for (Code c = 0; c < big.size(); ++c) {
        Code acc = 0, powc = 1;
        for (size_t i = 0; i < m.size(); ++i) {
            acc = big.add(acc, big.mul(big.from_residue(m[i]), powc));
            powc = big.mul(powc, c);
        }
        if (acc == 0) {
            root = c;
            found = true;
            break;
        }
    }
    if (!found) throw FieldError("modulus has no root in the big field");
    table_.assign(small.size(), 0);
    for (Code a = 0; a < small.size(); ++a) {
        Code acc = 0, powr = 1;
        for (int i = 0; i < small.k(); ++i) {
            acc = big.add(acc, big.mul(big.from_residue(small.coeff(a, i)), powr));
            powr = big.mul(powr, root);
        }
        table_[a] = acc;
    }
}

Code SubfieldEmbedding::preimage(Code b) const {
    for (Code a = 0; a < small_->size(); ++a)
        if (table_[a] == b) return a;
    throw FieldError("element not in embedded subfield");
}

SubfieldEmbedding SubfieldEmbedding::compose(const SubfieldEmbedding& outer,
                                             const SubfieldEmbedding& inner) {
    if (&inner.big() != &outer.small()) throw FieldError("embedding chain mismatch");
    std::vector<Code> table(inner.small().size());
    for (Code a = 0; a < inner.small().size(); ++a) table[a] = outer.apply(inner.apply(a));
    return SubfieldEmbedding(inner.small(), outer.big(), std::move(table));
}

}  // namespace fieldred::gf
