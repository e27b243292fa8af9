#pragma once

// 2x2 matrices over O_d with determinant one, taken up to sign (PSL2), and
// cusps a/c of the boundary of hyperbolic space.

#include "bianchi/ring.hpp"

#include <iosfwd>

namespace bianchi {

// [[a, b], [c, d]].
struct GroupElement {
    QuadInt a, b, c, d;

    static GroupElement identity(const RingParams& p);
    // T_s = [[1, s], [0, 1]].
    static GroupElement translation(const QuadInt& s);

    const RingParams& params() const { return a.params; }

    QuadInt det() const;
    // Inverse in SL2 (adjugate).
    GroupElement inverse() const;
    // Representative whose first nonzero entry of (c, a) has canonical sign.
    GroupElement normalized() const;
    // +-I.
    bool is_identity() const;
    bool fixes_infinity() const { return c.is_zero(); }

    // Entry-wise equality up to a global sign.
    bool equals_up_to_sign(const GroupElement& o) const;
    bool operator==(const GroupElement& o) const {
        return a == o.a && b == o.b && c == o.c && d == o.d;
    }
};

GroupElement operator*(const GroupElement& x, const GroupElement& y);
GroupElement operator-(const GroupElement& x);
GroupElement power(const GroupElement& x, long e);

std::ostream& operator<<(std::ostream& os, const GroupElement& g);

// a/c with c != 0 and gcd(a, c) = 1.
struct Cusp {
    QuadInt a;
    QuadInt c;

    bool operator==(const Cusp& o) const { return a == o.a && c == o.c; }
};

// Canonical form: c with canonical sign and a/c in D. Throws ArithmeticError
// if c = 0 or gcd(a, c) != 1.
Cusp reduce_cusp(const QuadInt& a, const QuadInt& c);

}  // namespace bianchi
