#pragma once

// Exact horoball geometry in the upper half-space model of H^3. Every
// predicate here is decided in Q (with explicit handling of square roots);
// balls are closed.

#include "bianchi/ring.hpp"
#include "bianchi/sl2.hpp"

#include <optional>

namespace bianchi {

// A horoball based at infinity has size = height; one based at a point of
// C has size = Euclidean diameter.
struct Horoball {
    bool at_infinity = false;
    QuadRat basepoint;
    Rational size;
};

// The disc sigma(V) ∩ ∂V on the horosphere at height h.
struct Circle {
    QuadRat center;
    Rational radius_sq;
};

struct Point3 {
    QuadRat z;
    Rational lambda;
};

// Image of V = {lambda > h} under sigma: based at a/c with diameter
// 1/(h*N(c)). Throws ArithmeticError when c = 0.
Horoball horoball_image(const GroupElement& sigma, const Rational& h);

// Circ(a/c) at height h: center a/c, radius^2 = 1/N(c) - h^2. Empty when
// the radius would be zero or imaginary.
std::optional<Circle> circ(const Cusp& cusp, const Rational& h);

struct SphereContact {
    bool intersect = false;
    bool tangent = false;
};

// Two closed balls of radii r and s resting on the same plane, basepoints at
// squared distance dist_sq: they meet iff dist_sq <= 4rs.
SphereContact spheres_intersect(const Rational& r, const Rational& s, const Rational& dist_sq);

// Sign of p + q*sqrt(k), k >= 0.
int sign_of_surd(const Rational& p, const Rational& q, const Rational& k);

// Does the highest point of the intersection of the two closed balls reach
// height h? False when the balls are disjoint.
bool apex_reaches(Rational r, Rational s, const Rational& dist_sq, const Rational& h);

// Closed balls A(V), B(V) (radii r, s, basepoints dist_sq apart) and the
// closed half-space V at height h have a common point.
bool triple_meets(const Rational& r, const Rational& s, const Rational& dist_sq, const Rational& h);

// Action of sigma on H^3 (det sigma = 1):
//   z' = ((a z + b) conj(c z + d) + a conj(c) lambda^2) / (|c z + d|^2 + |c|^2 lambda^2)
//   lambda' = lambda / (|c z + d|^2 + |c|^2 lambda^2)
Point3 mobius_apply(const GroupElement& sigma, const Point3& p);

// 1 + (|z1 - z2|^2 + (l1 - l2)^2) / (2 l1 l2); the distance is its arccosh.
Rational hyperbolic_distance_arg(const Point3& p, const Point3& q);

}  // namespace bianchi
