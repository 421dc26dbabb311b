#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fieldred::gf {

/// Packed element code: sum of c_i * p^i for coefficients c_0..c_{k-1}
/// (constant term first). Codes are only meaningful relative to a Field.
using Code = std::uint32_t;

class FieldError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An explicit model of F_{p^k}: prime p, degree k, monic irreducible modulus.
/// Instances are immutable and interned; compare contexts by pointer.
class Field {
public:
    /// Field with the default modulus: the lexicographically least monic
    /// irreducible of degree k (coefficient vector read as a base-p integer,
    /// constant term least significant).
    static const Field& get(long p, int k);

    /// Field with an explicit modulus, length k+1, constant term first,
    /// leading coefficient 1. Throws FieldError if reducible or malformed.
    static const Field& get(long p, int k, const std::vector<long>& modulus);

    long p() const { return p_; }
    int k() const { return k_; }
    std::uint64_t size() const { return size_; }
    const std::vector<long>& modulus() const { return modulus_; }

    Code zero() const { return 0; }
    Code one() const { return 1; }

    Code add(Code a, Code b) const;
    Code sub(Code a, Code b) const;
    Code neg(Code a) const;
    Code mul(Code a, Code b) const;
    Code inv(Code a) const;
    Code pow(Code a, std::uint64_t e) const;

    /// a^(p^i); i is reduced mod k.
    Code frobenius(Code a, long i) const;

    /// Least element (in code order) of multiplicative order p^k - 1.
    Code generator() const;

    /// Multiplicative order of a nonzero element.
    std::uint64_t order(Code a) const;

    /// True iff a lies in the subfield of size p^d. Requires d | k.
    bool in_subfield(Code a, int d) const;

    /// Embed a residue of the prime field F_p.
    Code from_residue(long r) const;

    long coeff(Code a, int i) const;
    Code from_coeffs(const std::vector<long>& coeffs) const;

    /// "c0,c1,...,c(k-1)" base-10 residues.
    std::string format(Code a) const;
    Code parse(const std::string& s) const;

    /// "p^k:m0,m1,...,mk"
    std::string descriptor() const;

    Field(const Field&) = delete;
    Field& operator=(const Field&) = delete;

private:
    friend struct FieldMaker;
    Field(long p, int k, std::vector<long> modulus);

    Code mul_poly(Code a, Code b) const;
    void build_log_tables() const;

    long p_;
    int k_;
    std::uint64_t size_;
    std::vector<long> modulus_;
    std::vector<std::uint64_t> pow_p_;  // p^0..p^k

    // discrete-log acceleration, built lazily for size <= 2^16;
    // behaviour-invisible (mul/inv/pow agree with polynomial arithmetic)
    mutable std::vector<Code> exp_;
    mutable std::vector<std::int64_t> log_;
    mutable Code generator_ = 0;
    mutable bool tables_built_ = false;
};

/// A field isomorphism from F_{p^h} onto the subfield of size p^h inside a
/// larger F_{p^k}, h | k. Deterministic: the defining element of the small
/// field is sent to the least root of its minimal polynomial in the big field.
class SubfieldEmbedding {
public:
    SubfieldEmbedding(const Field& small, const Field& big);

    const Field& small() const { return *small_; }
    const Field& big() const { return *big_; }

    Code apply(Code a) const { return table_[a]; }

    /// Inverse image; throws if b is not in the embedded subfield.
    Code preimage(Code b) const;

    /// Chained embedding outer . inner (inner's big field = outer's small field).
    static SubfieldEmbedding compose(const SubfieldEmbedding& outer,
                                     const SubfieldEmbedding& inner);

private:
    SubfieldEmbedding(const Field& small, const Field& big, std::vector<Code> table)
        : small_(&small), big_(&big), table_(std::move(table)) {}

    const Field* small_;
    const Field* big_;
    std::vector<Code> table_;
};

/// Prime factors of n, distinct, ascending.
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

bool is_prime(long n);

}  // namespace fieldred::gf
