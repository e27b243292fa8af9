#include "bianchi/sl2.hpp"

#include <ostream>

namespace bianchi {

GroupElement GroupElement::identity(const RingParams& p) {
    return {QuadInt::one(p), QuadInt::zero(p), QuadInt::zero(p), QuadInt::one(p)};
}

GroupElement GroupElement::translation(const QuadInt& s) {
    const auto& p = s.params;
    return {QuadInt::one(p), s, QuadInt::zero(p), QuadInt::one(p)};
}

QuadInt GroupElement::det() const { return a * d - b * c; }

GroupElement GroupElement::inverse() const { return {d, -b, -c, a}; }

GroupElement GroupElement::normalized() const {
    const QuadInt& lead = c.is_zero() ? a : c;
    return has_canonical_sign(lead) ? *this : -*this;
}

bool GroupElement::is_identity() const {
    if (!b.is_zero() || !c.is_zero() || !(a == d)) return false;
    return a.y == 0 && (a.x == 1 || a.x == -1);
}

bool GroupElement::equals_up_to_sign(const GroupElement& o) const {
    return *this == o || *this == -o;
}

GroupElement operator*(const GroupElement& x, const GroupElement& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c,
            x.c * y.b + x.d * y.d};
}

GroupElement operator-(const GroupElement& x) { return {-x.a, -x.b, -x.c, -x.d}; }

GroupElement power(const GroupElement& x, long e) {
    GroupElement base = e < 0 ? x.inverse() : x;
    unsigned long k = e < 0 ? static_cast<unsigned long>(-(e + 1)) + 1 : static_cast<unsigned long>(e);
    GroupElement acc = GroupElement::identity(x.params());
    while (k) {
        if (k & 1) acc = acc * base;
        k >>= 1;
        if (k) base = base * base;
    }
    return acc;
}

std::ostream& operator<<(std::ostream& os, const GroupElement& g) {
    return os << "[[" << g.a << ", " << g.b << "], [" << g.c << ", " << g.d << "]]";
}

Cusp reduce_cusp(const QuadInt& a, const QuadInt& c) {
    if (c.is_zero()) throw ArithmeticError("cusp with zero denominator");
    QuadInt cc = canonical_sign(c);
    QuadInt aa = cc == c ? a : -a;
    QuadInt r = floor_div(aa, cc).remainder;
    if (!inverse_mod(r, cc)) throw ArithmeticError("cusp numerator and denominator are not coprime");
    return {std::move(r), std::move(cc)};
}

}  // namespace bianchi
