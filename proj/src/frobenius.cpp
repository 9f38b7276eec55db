#include "sl3hom/frobenius.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace sl3hom {

namespace {

GradedPoly hp(const FrobeniusSpec& s, int k, FieldElem c) {
    // h^k c in the graded case, plain c when collapsed
    if (!s.graded) k = 0;
    if (c.is_zero()) return GradedPoly();
    return GradedPoly::h_power(s.p, k, c);
}

} // namespace

FrobeniusSpec make_spec(uint32_t p, FieldElem a, FieldElem b, FieldElem c, bool graded) {
    FrobeniusSpec s;
    s.p = p;
    s.a = a;
    s.b = b;
    s.c = c;
    s.graded = graded;
    FieldElem one = FieldElem::from_int(p, 1), zero = FieldElem::from_int(p, 0);

    auto unit = [&](int k) { return hp(s, k, one); };
    (void)unit;

    // multiplication table: X^3 = a h X^2 + b h^2 X + c h^3
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) s.mult[i][j][k] = GradedPoly();
    auto set_basis = [&](int i, int j, int k) { s.mult[i][j][k] = hp(s, 0, one); };
    set_basis(0, 0, 0);
    set_basis(0, 1, 1); set_basis(1, 0, 1);
    set_basis(0, 2, 2); set_basis(2, 0, 2);
    set_basis(1, 1, 2);
    // X * X^2 = X^3
    s.mult[1][2][2] = hp(s, 1, a);
    s.mult[1][2][1] = hp(s, 2, b);
    s.mult[1][2][0] = hp(s, 3, c);
    s.mult[2][1] = s.mult[1][2];
    // X^2 * X^2 = X * X^3 = (a^2 + b) h^2 X^2 + (a b + c) h^3 X + a c h^4
    s.mult[2][2][2] = hp(s, 2, a * a + b);
    s.mult[2][2][1] = hp(s, 3, a * b + c);
    s.mult[2][2][0] = hp(s, 4, a * c);

    s.eps[0] = GradedPoly();
    s.eps[1] = GradedPoly();
    s.eps[2] = hp(s, 0, -one);

    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) s.delta[i][j][k] = GradedPoly();
    // Delta(1) = -1(x)X^2 - X(x)X - X^2(x)1 + a h (1(x)X + X(x)1) + b h^2 (1(x)1)
    s.delta[0][0][2] = hp(s, 0, -one);
    s.delta[0][1][1] = hp(s, 0, -one);
    s.delta[0][2][0] = hp(s, 0, -one);
    s.delta[0][0][1] = hp(s, 1, a);
    s.delta[0][1][0] = hp(s, 1, a);
    s.delta[0][0][0] = hp(s, 2, b);
    // Delta(X) = -X(x)X^2 - X^2(x)X + a h X(x)X - c h^3 (1(x)1)
    s.delta[1][1][2] = hp(s, 0, -one);
    s.delta[1][2][1] = hp(s, 0, -one);
    s.delta[1][1][1] = hp(s, 1, a);
    s.delta[1][0][0] = hp(s, 3, -c);
    // Delta(X^2) = -X^2(x)X^2 - b h^2 X(x)X - c h^3 (1(x)X + X(x)1)
    s.delta[2][2][2] = hp(s, 0, -one);
    s.delta[2][1][1] = hp(s, 2, -b);
    s.delta[2][0][1] = hp(s, 3, -c);
    s.delta[2][1][0] = hp(s, 3, -c);

    (void)zero;
    return s;
}

FrobeniusSpec make_spec_int(uint32_t p, long a, long b, long c, bool graded) {
    return make_spec(p, FieldElem::from_int(p, a), FieldElem::from_int(p, b),
                     FieldElem::from_int(p, c), graded);
}

FrobeniusSpec shift_iso(const FrobeniusSpec& s, const FieldElem& alpha) {
    FieldElem three = FieldElem::from_int(s.p, 3), two = FieldElem::from_int(s.p, 2);
    FieldElem a2 = s.a - three * alpha;
    FieldElem b2 = s.b + two * s.a * alpha - three * alpha * alpha;
    FieldElem c2 = s.c + s.b * alpha + s.a * alpha * alpha - alpha * alpha * alpha;
    FrobeniusSpec r = make_spec(s.p, a2, b2, c2, s.graded);
    r.transcript = s.transcript;
    r.transcript.push_back({FrobeniusSpec::Move::Shift, alpha});
    return r;
}

FrobeniusSpec twist_iso(const FrobeniusSpec& s, const FieldElem& beta) {
    if (beta.is_zero()) throw std::domain_error("twist by zero");
    FieldElem bi = beta.inverse();
    FrobeniusSpec r = make_spec(s.p, s.a * bi, s.b * bi * bi, s.c * bi * bi * bi, s.graded);
    r.transcript = s.transcript;
    r.transcript.push_back({FrobeniusSpec::Move::Twist, beta});
    return r;
}

DualResult dual_spec(const FrobeniusSpec& s) {
    FieldElem two = FieldElem::from_int(s.p, 2);
    // f*(X) = X^3 + 2a X^2 - (b - a^2) X - (c + a b): in -a', -b', -c' form
    FieldElem a2 = -(two * s.a);
    FieldElem b2 = s.b - s.a * s.a;
    FieldElem c2 = s.c + s.a * s.b;
    DualResult d{make_spec(s.p, a2, b2, c2, s.graded), s.a};
    return d;
}

NormalizeResult normalize_poly(const FrobeniusSpec& s) {
    NormalizeResult out{s, {}, true};
    auto apply_shift = [&](FieldElem alpha) {
        out.spec = shift_iso(out.spec, alpha);
        out.moves.push_back({FrobeniusSpec::Move::Shift, alpha});
    };
    auto apply_twist = [&](FieldElem beta) {
        out.spec = twist_iso(out.spec, beta);
        out.moves.push_back({FrobeniusSpec::Move::Twist, beta});
    };
    uint32_t p = s.p;
    FieldElem one = FieldElem::from_int(p, 1);
    if (p != 3) {
        // depress the cubic
        if (!out.spec.a.is_zero())
            apply_shift(out.spec.a / FieldElem::from_int(p, 3));
        if (!out.spec.b.is_zero()) {
            // want b' = 1: beta^2 = b
            if (auto beta = out.spec.b.sqrt_in_field()) apply_twist(*beta);
            else out.complete = false;
        } else if (!out.spec.c.is_zero()) {
            // want c' = 1: beta^3 = c
            if (auto beta = out.spec.c.cbrt_in_field()) apply_twist(*beta);
            else out.complete = false;
        }
    } else {
        if (!out.spec.a.is_zero()) {
            apply_twist(out.spec.a);           // a -> 1
            // kill b: b' = b + 2 a alpha = b - alpha with a = 1
            if (!out.spec.b.is_zero()) apply_shift(out.spec.b);
            // normalize nothing further: X^3 - h X^2 - w h^3 is the target
        } else {
            // a = 0: kill c via alpha^3 - b alpha = c (Frobenius-linear in alpha)
            if (!out.spec.c.is_zero()) {
                bool done = false;
                for (long v = 0; v < 3; ++v) {
                    FieldElem al = FieldElem::from_int(3, v);
                    FieldElem val = al * al * al - out.spec.b * al - out.spec.c;
                    if (val.is_zero()) {
                        apply_shift(-al); // shift by -al sends c -> c + b al - al^3... sign below
                        done = true;
                        break;
                    }
                }
                if (!done) {
                    // try the opposite sign convention of the shift
                    for (long v = 0; v < 3 && !done; ++v) {
                        FieldElem al = FieldElem::from_int(3, v);
                        FrobeniusSpec t = shift_iso(out.spec, al);
                        if (t.c.is_zero()) {
                            apply_shift(al);
                            done = true;
                        }
                    }
                }
                if (!done) out.complete = false;
            }
            if (out.spec.c.is_zero() && !out.spec.b.is_zero() && !(out.spec.b == one)) {
                if (auto beta = out.spec.b.sqrt_in_field()) apply_twist(*beta);
                else out.complete = false;
            }
        }
    }
    out.spec.transcript = s.transcript;
    for (const auto& m : out.moves) out.spec.transcript.push_back(m);
    return out;
}

std::optional<RootData> root_data(const FrobeniusSpec& s, bool allow_rho) {
    // factor X^3 - a X^2 - b X - c over the base field (h scaled out)
    FieldElem a2 = -s.a, a1 = -s.b, a0 = -s.c;
    auto r1 = find_root_cubic(a2, a1, a0);
    std::array<FieldElem, 3> roots;
    bool found = false;
    if (r1) {
        // divide: X^3 + a2 X^2 + a1 X + a0 = (X - r1)(X^2 + u X + v)
        FieldElem u = a2 + *r1;
        FieldElem v = a1 + u * *r1;
        // X^2 + u X + v = 0
        if (s.p == 2) {
            // char 2: try both field elements as roots directly (no formula)
            std::vector<FieldElem> rs;
            for (long t = 0; t < 2; ++t) {
                FieldElem x = FieldElem::from_int(2, t);
                if ((x * x + u * x + v).is_zero()) rs.push_back(x);
            }
            if (rs.size() >= 1) {
                FieldElem rA = rs[0];
                FieldElem rB = -(u + rA); // sum of roots = -u
                roots = {*r1, rA, rB};
                found = true;
            }
        } else {
            FieldElem disc = u * u - FieldElem::from_int(s.p, 4) * v;
            auto sd = disc.sqrt_in_field();
            if (sd) {
                FieldElem half = FieldElem::from_fraction(s.p, 1, 2);
                roots = {*r1, (-u + *sd) * half, (-u - *sd) * half};
                found = true;
            }
        }
    }
    if (!found && allow_rho && s.p != 3) {
        // Adjoin rho for f with one rational root whose quadratic cofactor is
        // X^2 + r1 X + r1^2-like (cube-root-of-unity situations).
        if (r1) {
            FieldElem u = a2 + *r1;
            FieldElem v = a1 + u * *r1;
            FieldElem rho = FieldElem::rho(s.p);
            // roots of X^2 + uX + v when disc = -3 k^2: x = rho-combinations.
            // Solve over F(rho) by direct search of the two candidates
            // x = w and x = conj(w) with w = -(u/2) + (rho + 1/2) * t.
            // Simpler: try x in {rho*r, rho^2*r} for r = cube-root candidates.
            for (const FieldElem& cand : {rho * *r1 - (rho + FieldElem::from_int(s.p, 1)) * FieldElem::from_int(s.p, 0),
                                          rho * *r1}) {
                (void)cand;
            }
            // For the systems we support (X^3 - c h^3 types), roots are
            // r1, rho r1, rho^2 r1.
            FieldElem w1 = rho * *r1;
            FieldElem w2 = rho * rho * *r1;
            auto ok = [&](const FieldElem& x) {
                return (((x + a2) * x + a1) * x + a0).is_zero();
            };
            if (ok(w1) && ok(w2)) {
                roots = {*r1, w1, w2};
                found = true;
            }
        }
    }
    if (!found) return std::nullopt;
    // pairwise differences must be invertible (nonzero in a field)
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if ((roots[i] - roots[j]).is_zero()) return std::nullopt;
    RootData rd;
    rd.roots = roots;
    for (int i = 0; i < 3; ++i) {
        int j = (i + 1) % 3, k = (i + 2) % 3;
        FieldElem d = ((roots[i] - roots[j]) * (roots[i] - roots[k])).inverse();
        // (X - r_j h)(X - r_k h) * d = d X^2 - d(r_j + r_k) h X + d r_j r_k h^2
        rd.idem[i] = {d * roots[j] * roots[k], -(d * (roots[j] + roots[k])), d};
    }
    return rd;
}

void check_frobenius_axioms(const FrobeniusSpec& s) {
    auto fail = [](const std::string& m) { throw std::logic_error("frobenius axiom: " + m); };
    // (eps (x) id) Delta = id
    for (int i = 0; i < 3; ++i) {
        for (int k = 0; k < 3; ++k) {
            GradedPoly acc;
            for (int j = 0; j < 3; ++j) acc += s.delta[i][j][k] * s.eps[j];
            GradedPoly want = (i == k) ? GradedPoly::one(s.p) : GradedPoly();
            if (acc != want) fail("(eps x id) Delta != id");
        }
    }
    // co-commutativity
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                if (s.delta[i][j][k] != s.delta[i][k][j]) fail("co-commutativity");
    // co-associativity: (Delta x id) Delta = (id x Delta) Delta on basis
    for (int i = 0; i < 3; ++i) {
        // coefficient of X^u (x) X^v (x) X^w
        for (int u = 0; u < 3; ++u)
            for (int v = 0; v < 3; ++v)
                for (int w = 0; w < 3; ++w) {
                    GradedPoly lhs, rhs;
                    for (int j = 0; j < 3; ++j) {
                        lhs += s.delta[i][j][w] * s.delta[j][u][v];
                        rhs += s.delta[i][u][j] * s.delta[j][v][w];
                    }
                    if (lhs != rhs) fail("co-associativity");
                }
    }
    // bimodule identity Delta(x y) = x Delta(y) for basis x, y
    for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y) {
            for (int u = 0; u < 3; ++u)
                for (int v = 0; v < 3; ++v) {
                    GradedPoly lhs, rhs;
                    for (int m = 0; m < 3; ++m) lhs += s.mult[x][y][m] * s.delta[m][u][v];
                    for (int j = 0; j < 3; ++j) rhs += s.delta[y][j][v] * s.mult[x][j][u];
                    if (lhs != rhs) fail("bimodule identity");
                }
        }
}

std::string FrobeniusSpec::canonical() const {
    std::ostringstream os;
    os << "p=" << p << ";a=" << a.to_string() << ";b=" << b.to_string()
       << ";c=" << c.to_string() << ";g=" << graded;
    return os.str();
}

std::string poly_to_string(const FrobeniusSpec& s) {
    std::string r = "X^3";
    auto app = [&](const FieldElem& v, const std::string& mono) {
        if (v.is_zero()) return;
        FieldElem mv = -v;
        std::string c = mv.to_string();
        if (!c.empty() && c[0] == '-') r += c;
        else r += "+" + c;
        r += "*" + mono;
    };
    app(s.a, "h*X^2");
    app(s.b, "h^2*X");
    app(s.c, "h^3");
    return r;
}

namespace {

struct PolyTok {
    mpq_class coeff;
    int xdeg = 0, hdeg = -1; // hdeg -1 = unspecified
};

} // namespace

FrobeniusSpec parse_poly(const std::string& text, uint32_t p, bool graded) {
    std::vector<PolyTok> terms;
    size_t i = 0;
    auto err = [&](const std::string& tok) {
        throw std::invalid_argument("bad polynomial near '" + tok + "'");
    };
    auto skip = [&] { while (i < text.size() && std::isspace((unsigned char)text[i])) ++i; };
    skip();
    bool first = true;
    while (i < text.size()) {
        int sign = 1;
        skip();
        if (text[i] == '+') { ++i; }
        else if (text[i] == '-') { sign = -1; ++i; }
        else if (!first) err(std::string(1, text[i]));
        first = false;
        skip();
        PolyTok t;
        t.coeff = sign;
        bool any = false;
        bool expect_factor = true;
        while (i < text.size() && expect_factor) {
            skip();
            if (i >= text.size()) break;
            char ch = text[i];
            if (std::isdigit((unsigned char)ch)) {
                size_t j = i;
                while (j < text.size() && std::isdigit((unsigned char)text[j])) ++j;
                mpz_class num(text.substr(i, j - i));
                i = j;
                skip();
                if (i < text.size() && text[i] == '/') {
                    ++i;
                    skip();
                    size_t k = i;
                    while (k < text.size() && std::isdigit((unsigned char)text[k])) ++k;
                    if (k == i) err("/");
                    mpz_class den(text.substr(i, k - i));
                    if (den == 0) err("/0");
                    i = k;
                    t.coeff *= mpq_class(num, den);
                } else {
                    t.coeff *= mpq_class(num);
                }
                any = true;
            } else if (ch == 'X' || ch == 'x') {
                ++i;
                int d = 1;
                skip();
                if (i < text.size() && text[i] == '^') {
                    ++i;
                    skip();
                    size_t j = i;
                    while (j < text.size() && std::isdigit((unsigned char)text[j])) ++j;
                    if (j == i) err("^");
                    d = std::stoi(text.substr(i, j - i));
                    i = j;
                }
                t.xdeg += d;
                any = true;
            } else if (ch == 'h') {
                ++i;
                int d = 1;
                skip();
                if (i < text.size() && text[i] == '^') {
                    ++i;
                    skip();
                    size_t j = i;
                    while (j < text.size() && std::isdigit((unsigned char)text[j])) ++j;
                    if (j == i) err("^");
                    d = std::stoi(text.substr(i, j - i));
                    i = j;
                }
                if (t.hdeg < 0) t.hdeg = 0;
                t.hdeg += d;
                any = true;
            } else {
                break;
            }
            skip();
            if (i < text.size() && text[i] == '*') { ++i; continue; }
            // juxtaposition also allowed
            if (i < text.size() && (text[i] == 'X' || text[i] == 'x' || text[i] == 'h' ||
                                    std::isdigit((unsigned char)text[i])))
                continue;
            expect_factor = false;
        }
        if (!any) err(i < text.size() ? std::string(1, text[i]) : "<end>");
        terms.push_back(t);
        skip();
    }
    mpq_class lead = 0, ca = 0, cb = 0, cc = 0;
    for (auto& t : terms) {
        if (t.xdeg == 3) {
            if (t.hdeg > 0) throw std::invalid_argument("bad polynomial near 'X^3*h'");
            lead += t.coeff;
        } else if (t.xdeg == 2) {
            if (t.hdeg >= 0 && t.hdeg != 1) throw std::invalid_argument("X^2 term must carry h");
            ca += t.coeff;
        } else if (t.xdeg == 1) {
            if (t.hdeg >= 0 && t.hdeg != 2) throw std::invalid_argument("X term must carry h^2");
            cb += t.coeff;
        } else if (t.xdeg == 0) {
            if (t.hdeg >= 0 && t.hdeg != 3) throw std::invalid_argument("constant term must carry h^3");
            cc += t.coeff;
        } else {
            throw std::invalid_argument("degree exceeds 3");
        }
    }
    if (lead != 1) throw std::invalid_argument("polynomial must be monic of degree 3 in X");
    auto conv = [&](const mpq_class& q) {
        if (p == 0) return FieldElem::from_mpq(q);
        mpz_class num = q.get_num(), den = q.get_den();
        FieldElem n = FieldElem::from_int(p, (long)mpz_fdiv_ui(num.get_mpz_t(), p));
        FieldElem d = FieldElem::from_int(p, (long)mpz_fdiv_ui(den.get_mpz_t(), p));
        if (d.is_zero()) throw std::invalid_argument("denominator vanishes mod p");
        return n / d;
    };
    // f(X) = X^3 - a h X^2 - b h^2 X - c h^3
    return make_spec(p, -conv(ca), -conv(cb), -conv(cc), graded);
}

} // namespace sl3hom
