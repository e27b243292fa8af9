#include "bianchi/geometry.hpp"

#include <utility>

namespace bianchi {

Horoball horoball_image(const GroupElement& sigma, const Rational& h) {
    if (sgn(h) <= 0) throw ArithmeticError("horoball height must be positive");
    if (sigma.c.is_zero())
        throw ArithmeticError("horoball_image: sigma fixes infinity (c = 0)");
    Horoball ball;
    ball.basepoint = fraction(sigma.a, sigma.c);
    ball.size = 1 / (h * Rational(norm(sigma.c)));
    ball.size.canonicalize();
    return ball;
}

std::optional<Circle> circ(const Cusp& cusp, const Rational& h) {
    if (sgn(h) <= 0) throw ArithmeticError("horoball height must be positive");
    Rational r2 = Rational(1, norm(cusp.c)) - h * h;
    if (sgn(r2) <= 0) return std::nullopt;
    return Circle{fraction(cusp.a, cusp.c), r2};
}

SphereContact spheres_intersect(const Rational& r, const Rational& s, const Rational& dist_sq) {
    Rational bound = 4 * r * s;
    int c = cmp(dist_sq, bound);
    return {c <= 0, c == 0};
}

int sign_of_surd(const Rational& p, const Rational& q, const Rational& k) {
    if (sgn(k) < 0) throw ArithmeticError("sign_of_surd: negative radicand");
    int sp = sgn(p);
    int sq = sgn(k) == 0 ? 0 : sgn(q);
    if (sp >= 0 && sq >= 0) return (sp > 0 || sq > 0) ? 1 : 0;
    if (sp <= 0 && sq <= 0) return (sp < 0 || sq < 0) ? -1 : 0;
    // Opposite signs: compare p^2 with q^2 k.
    int c = cmp(Rational(p * p), Rational(q * q * k));
    return sp > 0 ? c : -c;
}

bool apex_reaches(Rational r, Rational s, const Rational& dist_sq, const Rational& h) {
    if (r < s) std::swap(r, s);
    if (dist_sq > 4 * r * s) return false;
    if (dist_sq <= 4 * s * (r - s)) return 2 * s >= h;
    // apex = ((s + r) + sqrt(4sr - d^2)) / K with K = 2(1 + (s - r)^2 / d^2) > 0.
    Rational diff = s - r;
    Rational K = 2 * (1 + diff * diff / dist_sq);
    Rational radicand = 4 * s * r - dist_sq;
    return sign_of_surd(Rational(s + r - h * K), Rational(1), radicand) >= 0;
}

bool triple_meets(const Rational& r, const Rational& s, const Rational& dist_sq, const Rational& h) {
    return spheres_intersect(r, s, dist_sq).intersect && apex_reaches(r, s, dist_sq, h);
}

Point3 mobius_apply(const GroupElement& sigma, const Point3& p) {
    const auto& params = sigma.params();
    QuadRat a(sigma.a), b(sigma.b), c(sigma.c), d(sigma.d);
    QuadRat czd = c * p.z + d;
    Rational lam2 = p.lambda * p.lambda;
    Rational denom = norm(czd) + norm(c) * lam2;
    QuadRat num = (a * p.z + b) * conj(czd) + lam2 * (a * conj(c));
    Rational inv = 1 / denom;
    Point3 out{inv * num, p.lambda * inv};
    out.z.params = params;
    return out;
}

Rational hyperbolic_distance_arg(const Point3& p, const Point3& q) {
    Rational dl = p.lambda - q.lambda;
    Rational num = norm(p.z - q.z) + dl * dl;
    Rational out = 1 + num / (2 * p.lambda * q.lambda);
    return out;
}

}  // namespace bianchi
