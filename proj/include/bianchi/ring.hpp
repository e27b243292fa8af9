#pragma once

// Exact arithmetic in the ring of integers O_d = Z[w] of an imaginary
// quadratic field with class number one, and in its fraction field Q(w).

#include <gmpxx.h>

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bianchi {

using Integer = mpz_class;
using Rational = mpq_class;

class UnsupportedRing : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ArithmeticError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// w + conj(w) = t and w * conj(w) = n, so w^2 = t*w - n.
struct RingParams {
    long d = 0;
    long t = 0;
    long n = 0;

    bool operator==(const RingParams&) const = default;
};

// The seven d handled by the pipeline: -2, -7, -11, -19, -43, -67, -163.
// d = -1 and d = -3 are rejected because O_d has units other than +-1.
RingParams ring_params(long d);

// Like ring_params, but also accepts d = -1 and d = -3. Only used to
// evaluate matrices of externally supplied presentations.
RingParams evaluation_ring_params(long d);

const std::vector<long>& supported_discriminants();

// x + y*w.
struct QuadInt {
    Integer x;
    Integer y;
    RingParams params;

    QuadInt() = default;
    QuadInt(Integer x_, Integer y_, const RingParams& p)
        : x(std::move(x_)), y(std::move(y_)), params(p) {}

    static QuadInt zero(const RingParams& p) { return {0, 0, p}; }
    static QuadInt one(const RingParams& p) { return {1, 0, p}; }
    static QuadInt omega(const RingParams& p) { return {0, 1, p}; }

    bool is_zero() const { return x == 0 && y == 0; }

    bool operator==(const QuadInt& o) const {
        return x == o.x && y == o.y && params == o.params;
    }

    QuadInt operator-() const { return {-x, -y, params}; }
    QuadInt& operator+=(const QuadInt& o);
    QuadInt& operator-=(const QuadInt& o);
    QuadInt& operator*=(const QuadInt& o);
};

QuadInt operator+(QuadInt a, const QuadInt& b);
QuadInt operator-(QuadInt a, const QuadInt& b);
QuadInt operator*(const QuadInt& a, const QuadInt& b);
QuadInt mul(const QuadInt& a, const QuadInt& b);

QuadInt conj(const QuadInt& a);
Integer norm(const QuadInt& a);

// Lexicographic on (x, y); used only for container keys and sorting.
bool operator<(const QuadInt& a, const QuadInt& b);

std::ostream& operator<<(std::ostream& os, const QuadInt& a);
std::string to_string(const QuadInt& a);

// Sign normalization for elements identified up to a unit: y > 0, or
// y == 0 and x > 0.
bool has_canonical_sign(const QuadInt& a);
QuadInt canonical_sign(const QuadInt& a);

struct DivResult {
    QuadInt quotient;
    QuadInt remainder;
};

// a = q*c + r with r/c = u + v*w, 0 <= u, v < 1.
DivResult floor_div(const QuadInt& a, const QuadInt& c);

bool divides(const QuadInt& c, const QuadInt& a);
std::optional<QuadInt> exact_div(const QuadInt& a, const QuadInt& c);

// The residues {a : a/c in D}, sorted by the coordinates of a/c. Results
// are memoized per denominator; the cache is shared and thread-safe.
const std::vector<QuadInt>& residue_reps(const QuadInt& c);

// The representative d0 in residue_reps(c) with a*d0 = 1 (mod c), or empty
// when a and c are not coprime.
std::optional<QuadInt> inverse_mod(const QuadInt& a, const QuadInt& c);

// Nonzero c with norm(c) <= bound, one per sign class (canonical sign),
// sorted by (norm, x, y).
std::vector<QuadInt> enumerate_norm_le(const RingParams& p, const Integer& bound);

// u + v*w with rational coordinates; the field Q(w).
struct QuadRat {
    Rational u;
    Rational v;
    RingParams params;

    QuadRat() = default;
    QuadRat(Rational u_, Rational v_, const RingParams& p)
        : u(std::move(u_)), v(std::move(v_)), params(p) {
        u.canonicalize();
        v.canonicalize();
    }
    explicit QuadRat(const QuadInt& a) : u(a.x), v(a.y), params(a.params) {}

    bool is_zero() const { return sgn(u) == 0 && sgn(v) == 0; }
    bool operator==(const QuadRat& o) const {
        return u == o.u && v == o.v && params == o.params;
    }
};

QuadRat operator+(const QuadRat& a, const QuadRat& b);
QuadRat operator-(const QuadRat& a, const QuadRat& b);
QuadRat operator*(const QuadRat& a, const QuadRat& b);
QuadRat operator*(const Rational& k, const QuadRat& a);
QuadRat operator/(const QuadRat& a, const QuadRat& b);
QuadRat conj(const QuadRat& a);
Rational norm(const QuadRat& a);

// a/c as an element of Q(w).
QuadRat fraction(const QuadInt& a, const QuadInt& c);

// |u + v*w|^2 = u^2 + t*u*v + n*v^2.
Rational norm_of_coords(const RingParams& p, const Rational& u, const Rational& v);

std::ostream& operator<<(std::ostream& os, const QuadRat& a);

// Parses "p/q", "p", or a decimal such as "0.3218".
Rational parse_rational(const std::string& text);

// floor(sqrt(v)) for v >= 0.
Integer isqrt(const Integer& v);

}  // namespace bianchi
