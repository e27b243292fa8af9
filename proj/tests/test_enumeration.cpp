#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bianchi/enumeration.hpp"
#include "oracles.hpp"

#include <map>
#include <random>
#include <set>
#include <tuple>

using namespace bianchi;

namespace {

oracle::Z oz(const QuadInt& a) { return {a.x.get_si(), a.y.get_si()}; }

oracle::Mat omat(const GroupElement& g) { return {oz(g.a), oz(g.b), oz(g.c), oz(g.d)}; }

const std::map<long, Rational> heights{{-2, Rational(1, 2)},      {-7, Rational(1, 2)},
                                       {-11, Rational(422, 1000)}, {-19, Rational(3218, 10000)},
                                       {-43, Rational(207, 1000)}, {-67, Rational(169, 1000)},
                                       {-163, Rational(982, 10000)}};

}  // namespace

TEST_CASE("mat_of_cusp") {
    auto p = ring_params(-7);
    auto g = mat_of_cusp({QuadInt::zero(p), QuadInt::one(p)});
    CHECK(g.a == QuadInt::zero(p));
    CHECK(g.b == QuadInt(-1, 0, p));
    CHECK(g.c == QuadInt::one(p));
    CHECK(g.d == QuadInt::zero(p));

    for (long d : supported_discriminants()) {
        auto q = ring_params(d);
        auto R = oracle::ring_from_d(d);
        for (const auto& c : enumerate_norm_le(q, 50))
            for (const auto& a : residue_reps(c)) {
                if (!inverse_mod(a, c)) continue;
                auto m = omat(mat_of_cusp({a, c}));
                auto det = oracle::sub(oracle::mul(R, m.a, m.d), oracle::mul(R, m.b, m.c));
                CHECK(det == oracle::Z{1, 0});
                CHECK(oracle::quotient(R, m.a, m.c) == oracle::quotient(R, oz(a), oz(c)));
            }
    }
}

TEST_CASE("generator counts and depths") {
    const std::map<long, std::size_t> counts{{-2, 8}, {-7, 8}, {-11, 16}, {-19, 32}, {-43, 144}};
    for (auto [d, want] : counts) {
        GenSet g(ring_params(d), heights.at(d));
        CHECK(g.size() == want);
        // every denominator is below the horizon and every cusp is reduced
        for (const auto& cusp : g.cusps()) {
            CHECK(norm(cusp.c) <= g.horizon());
            CHECK(reduce_cusp(cusp.a, cusp.c) == cusp);
        }
    }
    CHECK(GenSet(ring_params(-19), heights.at(-19)).size() + 2 == 34);
    CHECK(GenSet(ring_params(-2), Rational(1, 2)).depth() == 4);
    CHECK(GenSet(ring_params(-43), heights.at(-43)).depth() == 23);
    GenSet empty(ring_params(-11), Rational(3, 2));
    CHECK(empty.size() == 0);
    CHECK(empty.depth() == 0);
    CHECK_THROWS_AS(GenSet(ring_params(-11), Rational(0)), std::invalid_argument);
}

TEST_CASE("generator set is the naive cusp scan") {
    for (long d : {-2L, -11L, -19L}) {
        auto p = ring_params(d);
        auto R = oracle::ring_from_d(d);
        GenSet g(p, heights.at(d));
        long bound = g.horizon().get_si();
        // distinct points of D of the form a/c with N(c) <= bound and gcd 1
        std::set<std::pair<mpq_class, mpq_class>> want;
        for (auto c : oracle::naive_norm_scan(R, bound))
            for (long long x = -14; x <= 14; ++x)
                for (long long y = -14; y <= 14; ++y) {
                    auto [u, v] = oracle::quotient(R, {x, y}, c);
                    if (u < 0 || u >= 1 || v < 0 || v >= 1) continue;
                    // reduced iff no smaller denominator c2 makes (a/c) c2 integral
                    bool reducible = false;
                    for (auto c2 : oracle::naive_norm_scan(R, oracle::norm(R, c) - 1))
                        if (oracle::divides(R, c, oracle::mul(R, {x, y}, c2))) {
                            reducible = true;
                            break;
                        }
                    if (!reducible) want.insert({u, v});
                }
        std::set<std::pair<mpq_class, mpq_class>> got;
        for (const auto& cusp : g.cusps()) got.insert(oracle::quotient(R, oz(cusp.a), oz(cusp.c)));
        CHECK(got.size() == g.size());
        CHECK(got == want);
    }
}

TEST_CASE("tang bound") {
    auto p = ring_params(-2);
    // (2 + sqrt 3)^2 = 13.928...
    Rational tb = tang_bound_sq(QuadInt::one(p), Rational(1, 2));
    CHECK(tb.get_d() >= 13.9282);
    CHECK(tb.get_d() <= 13.9283);
    for (long d : supported_discriminants()) {
        auto q = ring_params(d);
        auto w = oracle::omega(d);
        for (const auto& c : enumerate_norm_le(q, 30)) {
            Rational prev = 0;
            for (auto h : {Rational(1, 2), Rational(1, 3), Rational(1, 5), Rational(1, 10)}) {
                Rational b = tang_bound_sq(c, h);
                long double exact = 1 / (std::sqrt(norm(c).get_d()) * h.get_d()) + std::abs(1.0L + w);
                CHECK(b.get_d() >= static_cast<double>(exact * exact) * (1 - 1e-12));
                CHECK(b > prev);
                prev = b;
            }
        }
    }
    CHECK_THROWS_AS(tang_bound_sq(QuadInt::zero(p), Rational(1, 2)), ArithmeticError);
}

TEST_CASE("decompose round trip") {
    std::mt19937 rng(5);
    for (long d : {-2L, -19L, -67L}) {
        auto p = ring_params(d);
        GenSet g(p, heights.at(d));
        std::uniform_int_distribution<long> coef(-6, 6);
        std::uniform_int_distribution<std::size_t> pick(0, g.size() - 1);
        for (int trial = 0; trial < 300; ++trial) {
            QuadInt x{coef(rng), coef(rng), p}, y{coef(rng), coef(rng), p};
            GroupElement sigma = GroupElement::translation(x) * g[pick(rng)] * GroupElement::translation(y);
            if (trial % 2) sigma = -sigma;
            auto dec = decompose(sigma, g);
            GroupElement back = GroupElement::translation(dec.r) * g[dec.index] * GroupElement::translation(dec.t);
            CHECK(back.equals_up_to_sign(sigma));
        }
        CHECK_THROWS_AS(decompose(GroupElement::translation(QuadInt::one(p)), g), ArithmeticError);
    }
    // a cusp beyond the horizon
    auto p = ring_params(-2);
    GenSet g(p, Rational(1, 2));
    auto far = mat_of_cusp({QuadInt::one(p), QuadInt(5, 0, p)});
    CHECK_THROWS_AS(decompose(far, g), ArithmeticError);
}

TEST_CASE("relations are sound") {
    for (long d : {-2L, -7L, -11L, -19L, -43L}) {
        auto p = ring_params(d);
        auto R = oracle::ring_from_d(d);
        GenSet g(p, heights.at(d));
        auto rels = find_relations(g);
        std::size_t inversions = 0;
        for (const auto& rel : rels) {
            auto T = [&](const QuadInt& s) { return oracle::Mat{{1, 0}, oz(s), {0, 0}, {1, 0}}; };
            auto inv = [&](const oracle::Mat& m) {
                return oracle::Mat{m.d, {-m.b.x, -m.b.y}, {-m.c.x, -m.c.y}, m.a};
            };
            oracle::Mat A = omat(g[rel.A]), C = omat(g[rel.C]);
            oracle::Mat tail = oracle::mul(R, oracle::mul(R, T(rel.r), C), T(rel.t));
            oracle::Mat prod;
            if (rel.kind == RelationKind::Inversion) {
                ++inversions;
                prod = oracle::mul(R, A, tail);
            } else {
                oracle::Mat B = omat(g[rel.B]);
                prod = oracle::mul(R, oracle::mul(R, oracle::mul(R, inv(B), T(-rel.s)), A), tail);
                CHECK(Rational(norm(rel.s)) <= tang_bound_sq(g.cusps()[rel.A].c, g.height()));
            }
            CHECK(oracle::is_pm_identity(prod));
        }
        CHECK(inversions == g.size());
    }
}

TEST_CASE("triple search is complete up to twice the Tang radius") {
    using oracle::Real;
    for (long d : {-2L, -7L}) {
        auto p = ring_params(d);
        auto R = oracle::ring_from_d(d);
        for (auto h : {Rational(1, 2), Rational(2, 5)}) {
            GenSet g(p, h);
            std::set<std::tuple<std::size_t, std::size_t, long, long>> found;
            for (const auto& rel : find_relations(g))
                if (rel.kind == RelationKind::Triple) found.insert({rel.A, rel.B, rel.s.x.get_si(), rel.s.y.get_si()});

            Real hr = oracle::to_real(h);
            std::size_t expected = 0;
            for (std::size_t ia = 0; ia < g.size(); ++ia) {
                auto ca = g.cusps()[ia];
                auto [ua, va] = oracle::quotient(R, oz(ca.a), oz(ca.c));
                long long NA = oracle::norm(R, oz(ca.c));
                Real rA = 1 / (2 * hr * NA);
                long long bound = 4 * static_cast<long long>(tang_bound_sq(ca.c, h).get_d()) + 4;
                auto shifts = oracle::naive_norm_scan(R, bound);
                std::vector<oracle::Z> all{{0, 0}};
                for (auto s : shifts) {
                    all.push_back(s);
                    all.push_back({-s.x, -s.y});
                }
                for (std::size_t ib = 0; ib < g.size(); ++ib) {
                    auto cb = g.cusps()[ib];
                    auto [ub, vb] = oracle::quotient(R, oz(cb.a), oz(cb.c));
                    long long NB = oracle::norm(R, oz(cb.c));
                    Real rB = 1 / (2 * hr * NB);
                    for (auto s : all) {
                        if (ib == ia && s == oracle::Z{0, 0}) continue;
                        mpq_class du = ub + mpq_class(static_cast<long>(s.x)) - ua;
                        mpq_class dv = vb + mpq_class(static_cast<long>(s.y)) - va;
                        mpq_class dist = du * du + static_cast<long>(R.t) * du * dv + static_cast<long>(R.n) * dv * dv;
                        auto top = oracle::apex(rA, rB, oracle::to_real(dist));
                        bool meets = top && *top >= hr - Real("1e-40");
                        bool listed = found.count({ia, ib, s.x, s.y}) > 0;
                        CHECK(meets == listed);
                        expected += meets;
                    }
                }
            }
            CHECK(expected == found.size());
        }
    }
}

TEST_CASE("enumeration is deterministic") {
    auto p = ring_params(-43);
    GenSet g1(p, heights.at(-43)), g2(p, heights.at(-43));
    REQUIRE(g1.size() == g2.size());
    for (std::size_t k = 0; k < g1.size(); ++k) CHECK(g1[k] == g2[k]);
    auto r1 = find_relations(g1, 1), r3 = find_relations(g2, 3);
    REQUIRE(r1.size() == r3.size());
    for (std::size_t k = 0; k < r1.size(); ++k) {
        CHECK(r1[k].kind == r3[k].kind);
        CHECK(r1[k].A == r3[k].A);
        CHECK(r1[k].B == r3[k].B);
        CHECK(r1[k].s == r3[k].s);
        CHECK(r1[k].r == r3[k].r);
        CHECK(r1[k].C == r3[k].C);
        CHECK(r1[k].t == r3[k].t);
    }
}

TEST_CASE("find_generators") {
    auto [g, cover] = find_generators(ring_params(-11), heights.at(-11));
    CHECK(g.size() == 16);
    CHECK(cover.covered);
    auto [g2, cover2] = find_generators(ring_params(-11), Rational(1, 2));
    CHECK_FALSE(cover2.covered);
}
