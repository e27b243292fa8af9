#include "bianchi/ring.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <tuple>

namespace bianchi {

namespace {

void require_same(const RingParams& a, const RingParams& b) {
    if (!(a == b))
        throw ArithmeticError("operands belong to different rings (d = " +
                              std::to_string(a.d) + " vs " + std::to_string(b.d) + ")");
}

RingParams params_for(long d) {
    RingParams p;
    p.d = d;
    long m = ((d % 4) + 4) % 4;
    if (m == 1) {
        p.t = 1;
        p.n = (1 - d) / 4;
    } else {
        p.t = 0;
        p.n = -d;
    }
    return p;
}

}  // namespace

const std::vector<long>& supported_discriminants() {
    static const std::vector<long> ds{-2, -7, -11, -19, -43, -67, -163};
    return ds;
}

RingParams ring_params(long d) {
    if (d == -1 || d == -3)
        throw UnsupportedRing("d = " + std::to_string(d) +
                              " is not supported: O_d has non-trivial units");
    const auto& ds = supported_discriminants();
    if (std::find(ds.begin(), ds.end(), d) == ds.end())
        throw UnsupportedRing("d = " + std::to_string(d) +
                              " is not supported: O_d must be a principal ideal domain "
                              "with units +-1 (d in -2, -7, -11, -19, -43, -67, -163)");
    return params_for(d);
}

RingParams evaluation_ring_params(long d) {
    if (d == -1 || d == -3) return params_for(d);
    return ring_params(d);
}

QuadInt& QuadInt::operator+=(const QuadInt& o) {
    require_same(params, o.params);
    x += o.x;
    y += o.y;
    return *this;
}

QuadInt& QuadInt::operator-=(const QuadInt& o) {
    require_same(params, o.params);
    x -= o.x;
    y -= o.y;
    return *this;
}

QuadInt& QuadInt::operator*=(const QuadInt& o) {
    *this = mul(*this, o);
    return *this;
}

QuadInt operator+(QuadInt a, const QuadInt& b) { return a += b; }
QuadInt operator-(QuadInt a, const QuadInt& b) { return a -= b; }
QuadInt operator*(const QuadInt& a, const QuadInt& b) { return mul(a, b); }

QuadInt mul(const QuadInt& a, const QuadInt& b) {
    require_same(a.params, b.params);
    Integer yy = a.y * b.y;
    Integer x = a.x * b.x - a.params.n * yy;
    Integer y = a.x * b.y + a.y * b.x + a.params.t * yy;
    return {std::move(x), std::move(y), a.params};
}

QuadInt conj(const QuadInt& a) { return {a.x + a.params.t * a.y, -a.y, a.params}; }

Integer norm(const QuadInt& a) {
    return a.x * a.x + a.params.t * a.x * a.y + a.params.n * a.y * a.y;
}

bool operator<(const QuadInt& a, const QuadInt& b) {
    if (a.x != b.x) return a.x < b.x;
    return a.y < b.y;
}

std::ostream& operator<<(std::ostream& os, const QuadInt& a) {
    if (a.y == 0) return os << a.x;
    if (a.x != 0) os << a.x << (a.y > 0 ? " + " : " - ");
    else if (a.y < 0) os << "-";
    Integer ay = abs(a.y);
    if (ay != 1) os << ay;
    return os << "w";
}

std::string to_string(const QuadInt& a) {
    std::ostringstream ss;
    ss << a;
    return ss.str();
}

bool has_canonical_sign(const QuadInt& a) { return a.y > 0 || (a.y == 0 && a.x > 0); }

QuadInt canonical_sign(const QuadInt& a) { return has_canonical_sign(a) || a.is_zero() ? a : -a; }

DivResult floor_div(const QuadInt& a, const QuadInt& c) {
    require_same(a.params, c.params);
    if (c.is_zero()) throw ArithmeticError("floor_div: division by zero");
    const auto& p = a.params;
    Integer nc = norm(c);
    Integer xn = a.x * c.x + p.t * a.x * c.y + p.n * a.y * c.y;
    Integer yn = c.x * a.y - a.x * c.y;
    Integer qx, qy;
    mpz_fdiv_q(qx.get_mpz_t(), xn.get_mpz_t(), nc.get_mpz_t());
    mpz_fdiv_q(qy.get_mpz_t(), yn.get_mpz_t(), nc.get_mpz_t());
    QuadInt q{qx, qy, p};
    QuadInt r = a - q * c;
    return {std::move(q), std::move(r)};
}

bool divides(const QuadInt& c, const QuadInt& a) { return exact_div(a, c).has_value(); }

std::optional<QuadInt> exact_div(const QuadInt& a, const QuadInt& c) {
    require_same(a.params, c.params);
    if (c.is_zero()) throw ArithmeticError("exact_div: division by zero");
    Integer nc = norm(c);
    QuadInt num = a * conj(c);
    if (!mpz_divisible_p(num.x.get_mpz_t(), nc.get_mpz_t()) ||
        !mpz_divisible_p(num.y.get_mpz_t(), nc.get_mpz_t()))
        return std::nullopt;
    return QuadInt{num.x / nc, num.y / nc, a.params};
}

namespace {

std::vector<QuadInt> compute_residue_reps(const QuadInt& c) {
    // a/c = (X + Y*w)/N(c) with 0 <= X, Y < N(c); a = (X + Y*w)*c/N(c) must be integral.
    const auto& p = c.params;
    Integer nc = norm(c);
    std::vector<QuadInt> reps;
    for (Integer X = 0; X < nc; ++X) {
        for (Integer Y = 0; Y < nc; ++Y) {
            QuadInt cand = QuadInt{X, Y, p} * c;
            if (mpz_divisible_p(cand.x.get_mpz_t(), nc.get_mpz_t()) &&
                mpz_divisible_p(cand.y.get_mpz_t(), nc.get_mpz_t()))
                reps.push_back({cand.x / nc, cand.y / nc, p});
        }
    }
    return reps;
}

}  // namespace

const std::vector<QuadInt>& residue_reps(const QuadInt& c) {
    if (c.is_zero()) throw ArithmeticError("residue_reps: modulus is zero");
    using Key = std::tuple<long, Integer, Integer>;
    static std::mutex mutex;
    static std::map<Key, std::vector<QuadInt>> cache;
    Key key{c.params.d, c.x, c.y};
    {
        std::lock_guard lock(mutex);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    auto reps = compute_residue_reps(c);
    std::lock_guard lock(mutex);
    return cache.emplace(std::move(key), std::move(reps)).first->second;
}

std::optional<QuadInt> inverse_mod(const QuadInt& a, const QuadInt& c) {
    require_same(a.params, c.params);
    QuadInt one = QuadInt::one(a.params);
    for (const auto& r : residue_reps(c))
        if (divides(c, a * r - one)) return r;
    return std::nullopt;
}

std::vector<QuadInt> enumerate_norm_le(const RingParams& p, const Integer& bound) {
    std::vector<QuadInt> out;
    if (bound <= 0) return out;
    // 4*N = (2x + t*y)^2 + (4n - t^2)*y^2.
    const long disc = 4 * p.n - p.t * p.t;
    Integer ymax = isqrt(4 * bound / disc);
    for (Integer y = 0; y <= ymax; ++y) {
        Integer rest = 4 * bound - disc * y * y;
        if (rest < 0) continue;
        Integer s = isqrt(rest);
        // |2x + t*y| <= s
        Integer lo = -s - p.t * y;
        Integer hi = s - p.t * y;
        Integer xlo, xhi;
        mpz_cdiv_q_ui(xlo.get_mpz_t(), lo.get_mpz_t(), 2);
        mpz_fdiv_q_ui(xhi.get_mpz_t(), hi.get_mpz_t(), 2);
        for (Integer x = xlo; x <= xhi; ++x) {
            QuadInt q{x, y, p};
            if (q.is_zero() || !has_canonical_sign(q)) continue;
            if (norm(q) <= bound) out.push_back(std::move(q));
        }
    }
    std::sort(out.begin(), out.end(), [](const QuadInt& a, const QuadInt& b) {
        Integer na = norm(a), nb = norm(b);
        if (na != nb) return na < nb;
        return a < b;
    });
    return out;
}

QuadRat operator+(const QuadRat& a, const QuadRat& b) {
    require_same(a.params, b.params);
    return {a.u + b.u, a.v + b.v, a.params};
}

QuadRat operator-(const QuadRat& a, const QuadRat& b) {
    require_same(a.params, b.params);
    return {a.u - b.u, a.v - b.v, a.params};
}

QuadRat operator*(const QuadRat& a, const QuadRat& b) {
    require_same(a.params, b.params);
    Rational vv = a.v * b.v;
    return {a.u * b.u - a.params.n * vv, a.u * b.v + a.v * b.u + a.params.t * vv, a.params};
}

QuadRat operator*(const Rational& k, const QuadRat& a) { return {k * a.u, k * a.v, a.params}; }

QuadRat operator/(const QuadRat& a, const QuadRat& b) {
    Rational nb = norm(b);
    if (sgn(nb) == 0) throw ArithmeticError("QuadRat division by zero");
    return Rational(1 / nb) * (a * conj(b));
}

QuadRat conj(const QuadRat& a) { return {a.u + a.params.t * a.v, -a.v, a.params}; }

Rational norm(const QuadRat& a) { return norm_of_coords(a.params, a.u, a.v); }

Rational norm_of_coords(const RingParams& p, const Rational& u, const Rational& v) {
    return u * u + p.t * u * v + p.n * v * v;
}

QuadRat fraction(const QuadInt& a, const QuadInt& c) {
    if (c.is_zero()) throw ArithmeticError("fraction: zero denominator");
    QuadInt num = a * conj(c);
    Integer nc = norm(c);
    return {Rational(num.x, nc), Rational(num.y, nc), a.params};
}

std::ostream& operator<<(std::ostream& os, const QuadRat& a) {
    return os << "(" << a.u << ", " << a.v << ")";
}

Rational parse_rational(const std::string& text) {
    auto fail = [&] { return std::invalid_argument("not a rational number: '" + text + "'"); };
    if (text.empty()) throw fail();
    auto dot = text.find('.');
    Rational r;
    if (dot != std::string::npos) {
        std::string whole = text.substr(0, dot);
        std::string frac = text.substr(dot + 1);
        bool negative = !whole.empty() && whole[0] == '-';
        if (negative) whole.erase(0, 1);
        if (whole.empty()) whole = "0";
        if (frac.empty() || frac.find_first_not_of("0123456789") != std::string::npos ||
            whole.find_first_not_of("0123456789") != std::string::npos)
            throw fail();
        Integer num(whole + frac, 10);
        Integer den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
        r = Rational(num, den);
        if (negative) r = -r;
    } else {
        if (text.find_first_not_of("-0123456789/") != std::string::npos) throw fail();
        if (r.set_str(text, 10) != 0) throw fail();
        if (sgn(r.get_den()) == 0) throw fail();
    }
    r.canonicalize();
    return r;
}

Integer isqrt(const Integer& v) {
    if (v < 0) throw ArithmeticError("isqrt of negative value");
    Integer r;
    mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
    return r;
}

}  // namespace bianchi
