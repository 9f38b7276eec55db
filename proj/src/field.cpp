#include "sl3hom/field.hpp"

#include <cassert>
#include <cstdlib>

namespace sl3hom {

int64_t FieldElem::norm_mod(long long v, uint32_t p) {
    long long r = v % (long long)p;
    if (r < 0) r += p;
    return r;
}

FieldElem FieldElem::from_int(uint32_t p, long value) {
    FieldElem e;
    e.p_ = p;
    if (p == 0) e.qa_ = mpq_class(value);
    else e.a_ = norm_mod(value, p);
    return e;
}

FieldElem FieldElem::from_mpq(const mpq_class& value) {
    FieldElem e;
    e.p_ = 0;
    e.qa_ = value;
    e.qa_.canonicalize();
    return e;
}

FieldElem FieldElem::from_fraction(uint32_t p, long num, long den) {
    if (den == 0) throw std::domain_error("zero denominator");
    if (p == 0) return from_mpq(mpq_class(num, den));
    return from_int(p, num) * from_int(p, den).inverse();
}

FieldElem FieldElem::rho(uint32_t p) {
    if (p == 3) throw std::domain_error("rho extension is degenerate in characteristic 3");
    FieldElem e;
    e.p_ = p;
    if (p == 0) e.qb_ = 1;
    else e.b_ = 1;
    return e;
}

bool FieldElem::has_rho() const { return p_ == 0 ? qb_ != 0 : b_ != 0; }

bool FieldElem::is_zero() const {
    return p_ == 0 ? (qa_ == 0 && qb_ == 0) : (a_ == 0 && b_ == 0);
}

bool FieldElem::is_one() const {
    return p_ == 0 ? (qa_ == 1 && qb_ == 0) : (a_ == 1 && b_ == 0);
}

void FieldElem::check_compat(const FieldElem& o) const {
    if (p_ != o.p_) throw std::domain_error("mixed characteristics");
}

FieldElem FieldElem::operator-() const {
    FieldElem r = *this;
    if (p_ == 0) { r.qa_ = -qa_; r.qb_ = -qb_; }
    else { r.a_ = norm_mod(-a_, p_); r.b_ = norm_mod(-b_, p_); }
    return r;
}

FieldElem FieldElem::operator+(const FieldElem& o) const {
    check_compat(o);
    FieldElem r = *this;
    if (p_ == 0) { r.qa_ = qa_ + o.qa_; r.qb_ = qb_ + o.qb_; }
    else { r.a_ = norm_mod(a_ + o.a_, p_); r.b_ = norm_mod(b_ + o.b_, p_); }
    return r;
}

FieldElem FieldElem::operator-(const FieldElem& o) const { return *this + (-o); }

FieldElem FieldElem::operator*(const FieldElem& o) const {
    check_compat(o);
    FieldElem r;
    r.p_ = p_;
    // (a + b rho)(c + d rho) = (ac - bd) + (ad + bc - bd) rho
    if (p_ == 0) {
        r.qa_ = qa_ * o.qa_ - qb_ * o.qb_;
        r.qb_ = qa_ * o.qb_ + qb_ * o.qa_ - qb_ * o.qb_;
    } else {
        long long bd = (long long)b_ * o.b_ % p_;
        r.a_ = norm_mod((long long)a_ * o.a_ - bd, p_);
        r.b_ = norm_mod((long long)a_ * o.b_ + (long long)b_ * o.a_ - bd, p_);
    }
    return r;
}

FieldElem FieldElem::inverse() const {
    if (is_zero()) throw std::domain_error("division by zero");
    // conj(a + b rho) = a + b rho^2 = (a - b) - b rho; norm = a^2 - ab + b^2
    if (p_ == 0) {
        mpq_class n = qa_ * qa_ - qa_ * qb_ + qb_ * qb_;
        FieldElem r;
        r.p_ = 0;
        r.qa_ = (qa_ - qb_) / n;
        r.qb_ = -qb_ / n;
        return r;
    }
    long long n = norm_mod((long long)a_ * a_ - (long long)a_ * b_ + (long long)b_ * b_, p_);
    // Fermat inverse of the norm
    FieldElem ninv = from_int(p_, n).pow((long)p_ - 2);
    FieldElem conj;
    conj.p_ = p_;
    conj.a_ = norm_mod((long long)a_ - b_, p_);
    conj.b_ = norm_mod(-(long long)b_, p_);
    return conj * ninv;
}

FieldElem FieldElem::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    FieldElem base = *this, acc = from_int(p_, 1);
    while (e > 0) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

bool FieldElem::operator==(const FieldElem& o) const {
    if (p_ != o.p_) return false;
    return p_ == 0 ? (qa_ == o.qa_ && qb_ == o.qb_) : (a_ == o.a_ && b_ == o.b_);
}

mpq_class FieldElem::rational() const {
    if (p_ != 0 || qb_ != 0) throw std::domain_error("not a plain rational");
    return qa_;
}

std::string FieldElem::to_string() const {
    if (p_ == 0) {
        std::string s = qa_.get_str();
        if (qb_ != 0) s += "+(" + qb_.get_str() + ")r";
        return s;
    }
    std::string s = std::to_string(a_);
    if (b_ != 0) s += "+(" + std::to_string(b_) + ")r";
    return s;
}

namespace {

// Exact square root of a non-negative rational, if it is a perfect square.
std::optional<mpq_class> mpq_sqrt(const mpq_class& q) {
    if (q < 0) return std::nullopt;
    mpz_class n = q.get_num(), d = q.get_den();
    if (mpz_perfect_square_p(n.get_mpz_t()) && mpz_perfect_square_p(d.get_mpz_t())) {
        mpz_class rn, rd;
        mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
        mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
        return mpq_class(rn, rd);
    }
    return std::nullopt;
}

std::optional<mpz_class> mpz_cbrt_exact(const mpz_class& n) {
    mpz_class r;
    if (mpz_root(r.get_mpz_t(), n.get_mpz_t(), 3) != 0) return r;
    // mpz_root returns nonzero iff exact; for negatives GMP handles odd roots
    return std::nullopt;
}

int64_t pow_mod(long long base, long long e, uint32_t p) {
    long long acc = 1;
    base %= p;
    if (base < 0) base += p;
    while (e > 0) {
        if (e & 1) acc = acc * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return acc;
}

// Tonelli–Shanks; p odd prime.
std::optional<int64_t> fp_sqrt(int64_t n, uint32_t p) {
    if (p == 2) return n % 2;
    n %= p;
    if (n < 0) n += p;
    if (n == 0) return 0;
    if (pow_mod(n, (p - 1) / 2, p) != 1) return std::nullopt;
    if (p % 4 == 3) return pow_mod(n, (p + 1) / 4, p);
    long long q = p - 1;
    int s = 0;
    while (q % 2 == 0) { q /= 2; ++s; }
    long long z = 2;
    while (pow_mod(z, (p - 1) / 2, p) == 1) ++z;
    long long m = s, c = pow_mod(z, q, p), t = pow_mod(n, q, p),
              r = pow_mod(n, (q + 1) / 2, p);
    while (t != 1) {
        long long i = 0, tt = t;
        while (tt != 1) { tt = tt * tt % p; ++i; }
        long long b = c;
        for (long long j = 0; j < m - i - 1; ++j) b = b * b % p;
        m = i;
        c = b * b % p;
        t = t * c % p;
        r = r * b % p;
    }
    return r;
}

std::optional<int64_t> fp_cbrt(int64_t n, uint32_t p) {
    n %= p;
    if (n < 0) n += p;
    if (n == 0) return 0;
    if (p == 3 || p % 3 == 2) {
        // x -> x^3 is a bijection
        long long e;
        if (p == 3) return n;                 // Frobenius fixes F_3
        e = (2LL * p - 1) / 3;                // inverse of 3 mod p-1
        int64_t r = pow_mod(n, e, p);
        return pow_mod(r, 3, p) == n ? std::optional<int64_t>(r) : std::nullopt;
    }
    // p = 1 mod 3: cube if and only if n^((p-1)/3) == 1; then search via
    // a small deterministic scan over powers of a generator-free form.
    if (pow_mod(n, (p - 1) / 3, p) != 1) return std::nullopt;
    // AMM-style: write p-1 = 3^s * t with 3 ∤ t
    long long t = p - 1;
    int s = 0;
    while (t % 3 == 0) { t /= 3; ++s; }
    // find a cubic non-residue
    long long z = 2;
    while (pow_mod(z, (p - 1) / 3, p) == 1) ++z;
    // Adleman–Manders–Miller for r-th roots with r = 3
    long long a = pow_mod(n, t, p);
    long long h = 1;
    long long g = pow_mod(z, t, p);
    for (int i = 1; i < s; ++i) {
        long long d = pow_mod(a, pow_mod(3, s - 1 - i, p - 1), p);
        long long j;
        if (d == 1) j = 0;
        else {
            long long w = pow_mod(g, pow_mod(3, s - 1, p - 1), p);
            j = (d == w) ? 2 : 1;   // d is w^-j with w primitive 3rd root
        }
        a = a * pow_mod(pow_mod(g, 3, p), j, p) % p;
        h = h * pow_mod(g, j, p) % p;
        g = pow_mod(g, 3, p);
    }
    // 3 | t+? : t ≡ 1 or 2 mod 3; (t is not divisible by 3)
    long long inv3 = (t % 3 == 1) ? (2 * t - 1) / 3 + 1 : (t + 1) / 3; // 3*inv3 ≡ 1 mod t? use exact below
    // solve 3*x ≡ 1 (mod t)
    long long x = 0;
    for (long long k = 0; k < 3; ++k) {
        if ((1 + k * t) % 3 == 0) { x = (1 + k * t) / 3; break; }
    }
    (void)inv3;
    long long r = pow_mod(n, x, p) * h % p;
    return pow_mod(r, 3, p) == n ? std::optional<int64_t>(r) : std::nullopt;
}

} // namespace

std::optional<FieldElem> FieldElem::sqrt_in_field() const {
    if (has_rho()) return std::nullopt; // roots only searched in the base field
    if (p_ == 0) {
        auto r = mpq_sqrt(qa_);
        if (!r) return std::nullopt;
        return from_mpq(*r);
    }
    auto r = fp_sqrt(a_, p_);
    if (!r) return std::nullopt;
    return from_int(p_, (long)*r);
}

std::optional<FieldElem> FieldElem::cbrt_in_field() const {
    if (has_rho()) return std::nullopt;
    if (p_ == 0) {
        mpz_class n = qa_.get_num(), d = qa_.get_den();
        auto rn = mpz_cbrt_exact(n), rd = mpz_cbrt_exact(d);
        if (!rn || !rd) return std::nullopt;
        return from_mpq(mpq_class(*rn, *rd));
    }
    auto r = fp_cbrt(a_, p_);
    if (!r) return std::nullopt;
    return from_int(p_, (long)*r);
}

std::optional<FieldElem> find_root_cubic(const FieldElem& a2, const FieldElem& a1,
                                         const FieldElem& a0) {
    // Root of X^3 + a2 X^2 + a1 X + a0 in the base field.
    uint32_t p = a2.characteristic();
    auto eval = [&](const FieldElem& x) {
        return ((x + a2) * x + a1) * x + a0;
    };
    if (p != 0) {
        if (p <= 4096) {
            for (long v = 0; v < (long)p; ++v) {
                FieldElem x = FieldElem::from_int(p, v);
                if (eval(x).is_zero()) return x;
            }
            return std::nullopt;
        }
        // Large p: depress and use Cardano over F_p (p > 3 here).
        FieldElem three = FieldElem::from_int(p, 3);
        FieldElem shift = a2 / three;                 // x = y - a2/3
        FieldElem pp = a1 - a2 * a2 / three;
        FieldElem qq = a0 - a1 * a2 / three
                     + a2 * a2 * a2 * FieldElem::from_fraction(p, 2, 27);
        // y^3 + pp y + qq = 0; discriminant route: z^2 + qq z - pp^3/27 = 0
        FieldElem half = FieldElem::from_fraction(p, 1, 2);
        FieldElem disc = qq * qq + pp * pp * pp * FieldElem::from_fraction(p, 4, 27);
        if (auto sd = disc.sqrt_in_field()) {
            FieldElem z = (-qq + *sd) * half;
            auto u = z.cbrt_in_field();
            if (!u) {
                z = (-qq - *sd) * half;
                u = z.cbrt_in_field();
            }
            if (u) {
                FieldElem y = u->is_zero() ? FieldElem::from_int(p, 0)
                                           : *u - pp / (three * *u);
                FieldElem x = y - shift;
                if (eval(x).is_zero()) return x;
            }
        }
        // Fallback: scan (rare; only when Cardano needs an extension detour)
        for (long v = 0; v < (long)std::min<uint64_t>(p, 2000000); ++v) {
            FieldElem x = FieldElem::from_int(p, v);
            if (eval(x).is_zero()) return x;
        }
        return std::nullopt;
    }
    // Rationals: rational root theorem on the cleared form.
    mpq_class c2 = a2.rational(), c1 = a1.rational(), c0 = a0.rational();
    mpz_class den = c2.get_den();
    mpz_class l;
    mpz_lcm(l.get_mpz_t(), den.get_mpz_t(), c1.get_den().get_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c0.get_den().get_mpz_t());
    // l^3 (x^3 + c2 x^2 + c1 x + c0) with x = y / l: y^3 + ... integer coeffs
    mpz_class b2 = c2.get_num() * (l / c2.get_den());
    mpq_class q1 = c1 * l * l, q0 = c0 * l * l * l;
    mpz_class b1 = q1.get_num(), b0 = q0.get_num();
    if (b0 == 0) return FieldElem::from_int(0, 0);
    // y divides b0
    std::vector<mpz_class> divs;
    mpz_class ab0 = abs(b0);
    for (mpz_class d = 1; d * d <= ab0; ++d) {
        if (ab0 % d == 0) { divs.push_back(d); divs.push_back(ab0 / d); }
        if (d > 100000) break; // huge constant terms: give up on exotic roots
    }
    for (const auto& d : divs) {
        for (int sgn : {1, -1}) {
            mpz_class y = d * sgn;
            if (((y + b2) * y + b1) * y + b0 == 0)
                return FieldElem::from_mpq(mpq_class(y, l));
        }
    }
    return std::nullopt;
}

} // namespace sl3hom
