#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "sl3hom/gpoly.hpp"

namespace sl3hom {

// Rank-3 Frobenius system over F[h] (graded) or F (collapsed, h = 1) for
// f(X) = X^3 - a h X^2 - b h^2 X - c h^3, basis 1, X, X^2.
struct FrobeniusSpec {
    uint32_t p = 0;
    FieldElem a, b, c;
    bool graded = true;

    // mult[i][j][k]: coefficient of X^k in X^i * X^j
    std::array<std::array<std::array<GradedPoly, 3>, 3>, 3> mult;
    // eps[i]: counit on X^i
    std::array<GradedPoly, 3> eps;
    // delta[i][j][k]: coefficient of X^j (x) X^k in Delta(X^i)
    std::array<std::array<std::array<GradedPoly, 3>, 3>, 3> delta;

    struct Move {
        enum Kind { Shift, Twist } kind;
        FieldElem value;
    };
    std::vector<Move> transcript; // recorded iso moves leading to this spec

    std::string canonical() const;
    bool operator==(const FrobeniusSpec& o) const {
        return p == o.p && a == o.a && b == o.b && c == o.c && graded == o.graded;
    }
};

struct RootData {
    std::array<FieldElem, 3> roots;
    // idem[i] = (e0, e1, e2): I_{r_i}(X) = e2 h^-2 X^2 + e1 h^-1 X + e0
    std::array<std::array<FieldElem, 3>, 3> idem;
};

FrobeniusSpec make_spec(uint32_t p, FieldElem a, FieldElem b, FieldElem c,
                        bool graded = true);
FrobeniusSpec make_spec_int(uint32_t p, long a, long b, long c, bool graded = true);

// Lemma-level isomorphisms; both record their move on the returned transcript.
FrobeniusSpec shift_iso(const FrobeniusSpec& s, const FieldElem& alpha);
FrobeniusSpec twist_iso(const FrobeniusSpec& s, const FieldElem& beta);

// Dual system X^3 + 2a X^2 - (b - a^2) X - (c + a b), with witness alpha = a
// such that shift_iso(spec, a) equals the dual.
struct DualResult {
    FrobeniusSpec dual;
    FieldElem witness_alpha;
};
DualResult dual_spec(const FrobeniusSpec& s);

struct NormalizeResult {
    FrobeniusSpec spec;
    std::vector<FrobeniusSpec::Move> moves;
    bool complete = true; // false when a needed square/cube root is missing
};
NormalizeResult normalize_poly(const FrobeniusSpec& s);

std::optional<RootData> root_data(const FrobeniusSpec& s, bool allow_rho = false);

// Exhaustive checks of the Frobenius axioms on the basis; throws on failure.
void check_frobenius_axioms(const FrobeniusSpec& s);

// Parse "X^3 - h^2*X - 1*h^3" style strings into a spec over characteristic p.
// Missing h-powers are inferred from homogeneity (e.g. "X^3-X" == "X^3-h^2*X").
// Throws std::invalid_argument naming the offending token.
FrobeniusSpec parse_poly(const std::string& text, uint32_t p, bool graded = true);

std::string poly_to_string(const FrobeniusSpec& s);

} // namespace sl3hom
