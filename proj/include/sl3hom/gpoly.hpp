#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sl3hom/field.hpp"

namespace sl3hom {

// Polynomial in h over the coefficient field, |h|_q = 2. The zero polynomial
// has an empty coefficient vector; otherwise the leading coefficient is
// nonzero.
class GradedPoly {
public:
    GradedPoly() = default;
    explicit GradedPoly(FieldElem c) { if (!c.is_zero()) coeffs_.push_back(std::move(c)); }

    static GradedPoly zero(uint32_t p) { (void)p; return GradedPoly(); }
    static GradedPoly one(uint32_t p) { return GradedPoly(FieldElem::from_int(p, 1)); }
    static GradedPoly h_power(uint32_t p, int k, FieldElem c = FieldElem());

    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return (int)coeffs_.size() - 1; } // -1 for zero
    const FieldElem& coeff(int k) const;
    FieldElem lead() const { return coeffs_.empty() ? FieldElem() : coeffs_.back(); }

    // Monomial c*h^k queries
    bool is_monomial() const;
    int monomial_exp() const;        // valid when is_monomial()
    FieldElem monomial_coeff() const;

    GradedPoly operator-() const;
    GradedPoly operator+(const GradedPoly& o) const;
    GradedPoly operator-(const GradedPoly& o) const;
    GradedPoly operator*(const GradedPoly& o) const;
    GradedPoly operator*(const FieldElem& c) const;
    GradedPoly& operator+=(const GradedPoly& o) { return *this = *this + o; }
    GradedPoly& operator-=(const GradedPoly& o) { return *this = *this - o; }
    GradedPoly& operator*=(const GradedPoly& o) { return *this = *this * o; }

    bool operator==(const GradedPoly& o) const { return coeffs_ == o.coeffs_; }
    bool operator!=(const GradedPoly& o) const { return !(*this == o); }

    FieldElem eval_h1() const;       // substitute h = 1
    FieldElem eval_h0() const { return coeffs_.empty() ? FieldElem() : coeffs_[0]; }

    std::string to_string() const;

private:
    std::vector<FieldElem> coeffs_;
    void trim();
};

} // namespace sl3hom
