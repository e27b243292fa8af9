#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bianchi/geometry.hpp"
#include "oracles.hpp"

#include <random>

using namespace bianchi;
using oracle::Real;

namespace {

QuadInt Q(const RingParams& p, long x, long y) { return {x, y, p}; }
QuadRat QR(const RingParams& p, Rational u, Rational v) { return {std::move(u), std::move(v), p}; }

Rational frac_part(const Rational& q) {
    Integer f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return q - Rational(f);
}

// Random element of SL2(O_d) as a product of generators of Gamma_inf and B.
GroupElement random_element(const RingParams& p, std::mt19937& rng, int steps) {
    std::uniform_int_distribution<long> coord(-3, 3);
    GroupElement B{Q(p, 0, 0), Q(p, -1, 0), Q(p, 1, 0), Q(p, 0, 0)};
    GroupElement g = GroupElement::identity(p);
    for (int k = 0; k < steps; ++k)
        g = g * GroupElement::translation(Q(p, coord(rng), coord(rng))) * B;
    return g;
}

Rational random_rational(std::mt19937& rng, long num_max, long den_max) {
    std::uniform_int_distribution<long> num(1, num_max), den(1, den_max);
    Rational r(num(rng), den(rng));
    r.canonicalize();
    return r;
}

// The action as typeset in the source: numerator (d - conj(c) conj(z))(a z - b)
// - lambda^2 conj(c) a over |c z - d|^2 + lambda^2 |c|^2.
Point3 printed_action(const GroupElement& g, const Point3& pt) {
    QuadRat a(g.a), b(g.b), c(g.c), d(g.d);
    QuadRat l2 = QR(pt.z.params, pt.lambda * pt.lambda, 0);
    QuadRat num = (d - conj(c) * conj(pt.z)) * (a * pt.z - b) - l2 * conj(c) * a;
    Rational den = norm(c * pt.z - d) + pt.lambda * pt.lambda * norm(c);
    Rational inv = 1 / den;
    return {inv * num, pt.lambda / den};
}

}  // namespace

TEST_CASE("group elements") {
    auto p = ring_params(-11);
    auto T = GroupElement::translation(Q(p, 2, -1));
    CHECK(T.det() == QuadInt::one(p));
    CHECK((T * T.inverse()).is_identity());
    CHECK((-GroupElement::identity(p)).is_identity());
    CHECK(power(T, 3) == GroupElement::translation(Q(p, 6, -3)));
    CHECK(power(T, -2) == GroupElement::translation(Q(p, -4, 2)));
    CHECK(T.fixes_infinity());
    GroupElement B{Q(p, 0, 0), Q(p, 1, 0), Q(p, -1, 0), Q(p, 0, 0)};
    CHECK((B * B).is_identity());
    CHECK_FALSE(B.is_identity());
    CHECK(B.equals_up_to_sign(-B));
    auto n = (-B).normalized();
    CHECK(n.equals_up_to_sign(B));
    CHECK(has_canonical_sign(n.c));
}

TEST_CASE("cusp reduction") {
    auto p = ring_params(-7);
    auto c = reduce_cusp(Q(p, 5, 3), Q(p, 0, -1));
    CHECK(has_canonical_sign(c.c));
    CHECK(c.c == Q(p, 0, 1));
    auto R = oracle::ring_from_d(-7);
    auto [u, v] = oracle::quotient(R, {c.a.x.get_si(), c.a.y.get_si()}, {0, 1});
    CHECK((u >= 0 && u < 1 && v >= 0 && v < 1));
    CHECK(reduce_cusp(Q(p, 3, 0), Q(p, 1, 0)).a.is_zero());
    CHECK_THROWS_AS(reduce_cusp(Q(p, 2, 0), Q(p, 4, 0)), ArithmeticError);
    CHECK_THROWS_AS(reduce_cusp(Q(p, 1, 0), Q(p, 0, 0)), ArithmeticError);
}

TEST_CASE("horoball_image diameters") {
    auto p = ring_params(-2);
    GroupElement B{Q(p, 0, 0), Q(p, -1, 0), Q(p, 1, 0), Q(p, 0, 0)};
    auto hb = horoball_image(B, Rational(1, 2));
    CHECK_FALSE(hb.at_infinity);
    CHECK(hb.size == 2);
    CHECK(hb.basepoint.is_zero());
    // c = 2
    GroupElement g{Q(p, 1, 0), Q(p, 0, 0), Q(p, 2, 0), Q(p, 1, 0)};
    CHECK(horoball_image(g, Rational(1, 2)).size == Rational(1, 2));
    CHECK(horoball_image(g, Rational(1, 2)).basepoint == QR(p, Rational(1, 2), 0));
    CHECK_THROWS_AS(horoball_image(GroupElement::translation(Q(p, 1, 0)), Rational(1, 2)), ArithmeticError);
    // N(c) > 1/h^2: diameter below h, so sigma(V) misses V and circ() is empty
    GroupElement big{Q(p, 1, 0), Q(p, 0, 0), Q(p, 3, 0), Q(p, 1, 0)};
    CHECK(horoball_image(big, Rational(1, 2)).size < Rational(1, 2));
    CHECK_FALSE(circ(reduce_cusp(Q(p, 1, 0), Q(p, 3, 0)), Rational(1, 2)).has_value());
}

TEST_CASE("circ examples") {
    auto p = ring_params(-2);
    auto c1 = circ(reduce_cusp(Q(p, 0, 0), Q(p, 1, 0)), Rational(1, 2));
    REQUIRE(c1);
    CHECK(c1->radius_sq == Rational(3, 4));
    CHECK_FALSE(circ(reduce_cusp(Q(p, 1, 0), Q(p, 2, 0)), Rational(1, 2)).has_value());

    auto cusp = reduce_cusp(Q(p, 1, 0), Q(p, 0, 1));
    auto c2 = circ(cusp, Rational(1, 2));
    REQUIRE(c2);
    CHECK(c2->radius_sq == Rational(1, 4));
    // 1/w = conj(w)/2 = -w/2, which reduces to w/2 in D
    auto [u, v] = oracle::quotient(oracle::ring_from_d(-2), {1, 0}, {0, 1});
    CHECK(c2->center == QR(p, frac_part(u), frac_part(v)));
    CHECK(c2->center == QR(p, 0, Rational(1, 2)));
}

TEST_CASE("circ is nonempty exactly when N(c) < 1/h^2") {
    for (long d : supported_discriminants()) {
        auto p = ring_params(d);
        for (const auto& h : {Rational(1, 2), Rational(1, 3), Rational(2, 7), Rational(98, 1000)}) {
            for (const auto& c : enumerate_norm_le(p, 120)) {
                auto cc = circ(reduce_cusp(QuadInt::one(p), c), h);
                bool expect = Rational(norm(c)) * h * h < 1;
                CHECK(cc.has_value() == expect);
                if (cc) {
                    // a boundary point of the circle on the real direction
                    CHECK(cc->radius_sq == 1 / Rational(norm(c)) - h * h);
                }
            }
        }
    }
}

TEST_CASE("spheres_intersect") {
    auto t = spheres_intersect(1, 1, 4);
    CHECK(t.intersect);
    CHECK(t.tangent);
    auto i = spheres_intersect(1, 1, 3);
    CHECK(i.intersect);
    CHECK_FALSE(i.tangent);
    CHECK_FALSE(spheres_intersect(1, Rational(1, 4), 2).intersect);

    std::mt19937 rng(3);
    for (int k = 0; k < 1000; ++k) {
        Rational r = random_rational(rng, 30, 9), s = random_rational(rng, 30, 9);
        Rational d = random_rational(rng, 300, 9);
        auto a = spheres_intersect(r, s, d), b = spheres_intersect(s, r, d);
        CHECK(a.intersect == b.intersect);
        CHECK(a.tangent == b.tangent);
        if (!a.intersect) CHECK_FALSE(spheres_intersect(r, s, d + 1).intersect);
    }
}

TEST_CASE("sign_of_surd agrees with 50-digit arithmetic") {
    std::mt19937 rng(5);
    std::uniform_int_distribution<long> num(-50, 50), den(1, 12), kk(0, 40);
    for (int k = 0; k < 5000; ++k) {
        Rational p(num(rng), den(rng)), q(num(rng), den(rng)), K(kk(rng), den(rng));
        p.canonicalize();
        q.canonicalize();
        K.canonicalize();
        Real v = oracle::to_real(p) + oracle::to_real(q) * boost::multiprecision::sqrt(oracle::to_real(K));
        int s = sign_of_surd(p, q, K);
        if (abs(v) < Real("1e-30"))
            CHECK(s == 0);
        else
            CHECK(s == (v > 0 ? 1 : -1));
    }
    CHECK(sign_of_surd(-2, 1, 4) == 0);
    CHECK(sign_of_surd(3, -1, 9) == 0);
    CHECK(sign_of_surd(0, 0, 7) == 0);
}

TEST_CASE("apex examples") {
    // nested case: apex = 2s = 1
    CHECK(apex_reaches(Rational(3, 2), Rational(1, 2), 1, 1));
    CHECK(apex_reaches(Rational(3, 2), Rational(1, 2), 1, Rational(1, 2)));
    CHECK_FALSE(apex_reaches(Rational(3, 2), Rational(1, 2), 1, Rational(1001, 1000)));
    // argument order does not matter
    CHECK(apex_reaches(Rational(1, 2), Rational(3, 2), 1, 1));
    // crossing case: apex = (2 + sqrt 2)/2
    CHECK(apex_reaches(1, 1, 2, 1));
    CHECK_FALSE(apex_reaches(1, 1, 2, 2));
    CHECK(apex_reaches(1, 1, 2, Rational(1707, 1000)));
    CHECK_FALSE(apex_reaches(1, 1, 2, Rational(1708, 1000)));
    // disjoint
    CHECK_FALSE(apex_reaches(1, 1, Rational(401, 100), Rational(1, 1000000)));
    // coincident basepoints
    CHECK(apex_reaches(2, 1, 0, 2));
    CHECK_FALSE(apex_reaches(2, 1, 0, Rational(21, 10)));
}

TEST_CASE("apex agrees with a circle-intersection oracle on 10^4 random inputs") {
    std::mt19937 rng(2024);
    std::uniform_int_distribution<long> num(1, 80), den(1, 24);
    int compared = 0;
    for (int k = 0; k < 10000; ++k) {
        Rational r(num(rng), den(rng)), s(num(rng), den(rng));
        r.canonicalize();
        s.canonicalize();
        // distance up to 1.2 times the contact distance
        Rational limit = 4 * r * s * Rational(6, 5);
        Rational d(num(rng) * num(rng), 6400);
        d = d * limit;
        d.canonicalize();
        Rational h(num(rng), den(rng) * 4);
        h.canonicalize();
        auto ap = oracle::apex(oracle::to_real(r), oracle::to_real(s), oracle::to_real(d));
        bool mine = apex_reaches(r, s, d, h);
        if (!ap) {
            CHECK_FALSE(mine);
            CHECK_FALSE(triple_meets(r, s, d, h));
            ++compared;
            continue;
        }
        Real gap = *ap - oracle::to_real(h);
        if (abs(gap) < Real("1e-20")) continue;
        CHECK(mine == (gap > 0));
        CHECK(triple_meets(r, s, d, h) == mine);
        ++compared;
    }
    CHECK(compared > 9900);
}

TEST_CASE("apex_reaches is monotone in h") {
    std::mt19937 rng(9);
    for (int k = 0; k < 2000; ++k) {
        Rational r = random_rational(rng, 40, 10), s = random_rational(rng, 40, 10);
        Rational d = 4 * r * s * random_rational(rng, 10, 10);
        Rational h1 = random_rational(rng, 40, 20), h2 = h1 + random_rational(rng, 10, 20);
        if (apex_reaches(r, s, d, h2)) CHECK(apex_reaches(r, s, d, h1));
    }
}

TEST_CASE("mobius_apply examples") {
    auto p = ring_params(-19);
    Point3 pt{QR(p, Rational(1, 3), Rational(-2, 5)), Rational(3, 7)};
    auto id = mobius_apply(GroupElement::identity(p), pt);
    CHECK(id.z == pt.z);
    CHECK(id.lambda == pt.lambda);

    auto s = Q(p, 2, -3);
    auto tr = mobius_apply(GroupElement::translation(s), pt);
    CHECK(tr.z == pt.z + QuadRat(s));
    CHECK(tr.lambda == pt.lambda);

    GroupElement B{Q(p, 0, 0), Q(p, 1, 0), Q(p, -1, 0), Q(p, 0, 0)};
    auto fixed = mobius_apply(B, {QR(p, 0, 0), 1});
    CHECK(fixed.z.is_zero());
    CHECK(fixed.lambda == 1);
}

TEST_CASE("the typeset action formula translates the wrong way") {
    auto p = ring_params(-7);
    Point3 pt{QR(p, Rational(1, 4), Rational(1, 3)), Rational(2)};
    auto s = Q(p, 1, 1);
    auto printed = printed_action(GroupElement::translation(s), pt);
    CHECK(printed.z == pt.z - QuadRat(s));
    CHECK_FALSE(printed.z == pt.z + QuadRat(s));
    CHECK(mobius_apply(GroupElement::translation(s), pt).z == pt.z + QuadRat(s));
}

TEST_CASE("boundary of V maps onto the predicted horosphere") {
    std::mt19937 rng(17);
    for (long d : {-2L, -7L, -43L}) {
        auto p = ring_params(d);
        Rational h(2, 5);
        for (int k = 0; k < 40; ++k) {
            auto g = random_element(p, rng, 1 + k % 3);
            if (g.fixes_infinity()) continue;
            auto hb = horoball_image(g, h);
            Rational rad = hb.size / 2;
            for (int j = 0; j < 5; ++j) {
                Point3 pt{QR(p, random_rational(rng, 20, 7) - 1, random_rational(rng, 20, 7) - 1), h};
                auto img = mobius_apply(g, pt);
                // |z' - base|^2 + (lambda' - rad)^2 = rad^2
                Rational lhs = norm(img.z - hb.basepoint) + (img.lambda - rad) * (img.lambda - rad);
                CHECK(lhs == rad * rad);
            }
        }
    }
}

TEST_CASE("hyperbolic distance argument") {
    auto p = ring_params(-11);
    Point3 a{QR(p, 0, 0), 1}, b{QR(p, 0, 0), 2};
    CHECK(hyperbolic_distance_arg(a, a) == 1);
    CHECK(hyperbolic_distance_arg(a, b) == Rational(5, 4));

    GroupElement B{Q(p, 0, 0), Q(p, 1, 0), Q(p, -1, 0), Q(p, 0, 0)};
    std::vector<GroupElement> gens{GroupElement::translation(Q(p, 1, 0)), GroupElement::translation(Q(p, 0, 1)), B};
    std::mt19937 rng(23);
    for (int k = 0; k < 200; ++k) {
        Point3 x{QR(p, random_rational(rng, 9, 5), random_rational(rng, 9, 5)), random_rational(rng, 9, 5)};
        Point3 y{QR(p, random_rational(rng, 9, 5), random_rational(rng, 9, 5)), random_rational(rng, 9, 5)};
        Rational before = hyperbolic_distance_arg(x, y);
        CHECK(before >= 1);
        for (const auto& g : gens) CHECK(hyperbolic_distance_arg(mobius_apply(g, x), mobius_apply(g, y)) == before);
        auto g = random_element(p, rng, 3);
        CHECK(hyperbolic_distance_arg(mobius_apply(g, x), mobius_apply(g, y)) == before);
    }
}
