#include "sl3hom/gpoly.hpp"

namespace sl3hom {

GradedPoly GradedPoly::h_power(uint32_t p, int k, FieldElem c) {
    GradedPoly r;
    if (c.characteristic() != p && c.is_zero()) c = FieldElem::from_int(p, 1);
    if (c.is_zero()) return r;
    r.coeffs_.assign(k + 1, FieldElem::from_int(p, 0));
    r.coeffs_[k] = std::move(c);
    return r;
}

const FieldElem& GradedPoly::coeff(int k) const {
    static const FieldElem z{};
    if (k < 0 || k >= (int)coeffs_.size()) return z;
    return coeffs_[k];
}

void GradedPoly::trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

bool GradedPoly::is_monomial() const {
    int nz = 0;
    for (const auto& c : coeffs_) nz += !c.is_zero();
    return nz == 1;
}

int GradedPoly::monomial_exp() const {
    for (int k = 0; k < (int)coeffs_.size(); ++k)
        if (!coeffs_[k].is_zero()) return k;
    return -1;
}

FieldElem GradedPoly::monomial_coeff() const {
    for (const auto& c : coeffs_)
        if (!c.is_zero()) return c;
    return FieldElem();
}

GradedPoly GradedPoly::operator-() const {
    GradedPoly r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

GradedPoly GradedPoly::operator+(const GradedPoly& o) const {
    GradedPoly r;
    size_t n = std::max(coeffs_.size(), o.coeffs_.size());
    r.coeffs_.resize(n);
    for (size_t i = 0; i < n; ++i) {
        if (i < coeffs_.size() && i < o.coeffs_.size()) r.coeffs_[i] = coeffs_[i] + o.coeffs_[i];
        else if (i < coeffs_.size()) r.coeffs_[i] = coeffs_[i];
        else r.coeffs_[i] = o.coeffs_[i];
    }
    r.trim();
    return r;
}

GradedPoly GradedPoly::operator-(const GradedPoly& o) const { return *this + (-o); }

GradedPoly GradedPoly::operator*(const GradedPoly& o) const {
    GradedPoly r;
    if (is_zero() || o.is_zero()) return r;
    uint32_t p = coeffs_[0].characteristic();
    r.coeffs_.assign(coeffs_.size() + o.coeffs_.size() - 1, FieldElem::from_int(p, 0));
    for (size_t i = 0; i < coeffs_.size(); ++i)
        for (size_t j = 0; j < o.coeffs_.size(); ++j)
            r.coeffs_[i + j] += coeffs_[i] * o.coeffs_[j];
    r.trim();
    return r;
}

GradedPoly GradedPoly::operator*(const FieldElem& c) const {
    GradedPoly r = *this;
    for (auto& x : r.coeffs_) x *= c;
    r.trim();
    return r;
}

FieldElem GradedPoly::eval_h1() const {
    FieldElem s;
    if (coeffs_.empty()) return s;
    s = FieldElem::from_int(coeffs_[0].characteristic(), 0);
    for (const auto& c : coeffs_) s += c;
    return s;
}

std::string GradedPoly::to_string() const {
    if (coeffs_.empty()) return "0";
    std::string s;
    for (int k = 0; k < (int)coeffs_.size(); ++k) {
        if (coeffs_[k].is_zero()) continue;
        if (!s.empty()) s += "+";
        s += "(" + coeffs_[k].to_string() + ")";
        if (k == 1) s += "h";
        else if (k > 1) s += "h^" + std::to_string(k);
    }
    return s;
}

} // namespace sl3hom
