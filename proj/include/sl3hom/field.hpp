#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace sl3hom {

// Element of the coefficient field: Q for p == 0, F_p for prime p < 2^31.
// An optional second component adjoins rho with rho^2 + rho + 1 = 0, used
// only by root/idempotent machinery when the base field lacks cube roots
// of unity. Elements of mismatched characteristic must never meet; this is
// asserted in debug builds and exercised by the unit tests.
class FieldElem {
public:
    FieldElem() = default;
    FieldElem(uint32_t p, long value) { *this = from_int(p, value); }

    static FieldElem from_int(uint32_t p, long value);
    static FieldElem from_mpq(const mpq_class& value);          // char 0
    static FieldElem from_fraction(uint32_t p, long num, long den);
    static FieldElem rho(uint32_t p);                           // the adjoined root

    uint32_t characteristic() const { return p_; }
    bool has_rho() const;
    bool is_zero() const;
    bool is_one() const;

    FieldElem operator-() const;
    FieldElem operator+(const FieldElem& o) const;
    FieldElem operator-(const FieldElem& o) const;
    FieldElem operator*(const FieldElem& o) const;
    FieldElem& operator+=(const FieldElem& o) { return *this = *this + o; }
    FieldElem& operator-=(const FieldElem& o) { return *this = *this - o; }
    FieldElem& operator*=(const FieldElem& o) { return *this = *this * o; }

    // Throws std::domain_error on zero.
    FieldElem inverse() const;
    FieldElem operator/(const FieldElem& o) const { return *this * o.inverse(); }

    FieldElem pow(long e) const;

    bool operator==(const FieldElem& o) const;
    bool operator!=(const FieldElem& o) const { return !(*this == o); }

    // Exact roots inside the base field (no extension); nullopt if absent.
    std::optional<FieldElem> sqrt_in_field() const;
    std::optional<FieldElem> cbrt_in_field() const;

    std::string to_string() const;
    // Stable canonical form, used for hashing and cache keys.
    std::string canonical() const { return to_string(); }

    // Base-field value as a rational (throws if a rho component is present).
    mpq_class rational() const;
    int64_t fp_value() const { return a_; }

private:
    uint32_t p_ = 0;
    int64_t a_ = 0, b_ = 0;   // char p: a + b*rho
    mpq_class qa_{0}, qb_{0}; // char 0: qa + qb*rho

    void check_compat(const FieldElem& o) const;
    static int64_t norm_mod(long long v, uint32_t p);
};

// Roots of monic cubics/quadratics over the base field; exact.
// Returns all roots found in the field, with multiplicity.
std::optional<FieldElem> find_root_cubic(const FieldElem& a2, const FieldElem& a1,
                                         const FieldElem& a0);

} // namespace sl3hom
