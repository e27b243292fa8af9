#include "bianchi/enumeration.hpp"

#include <algorithm>
#include <sstream>
#include <thread>

namespace bianchi {

GroupElement mat_of_cusp(const Cusp& cusp) {
    Cusp red = reduce_cusp(cusp.a, cusp.c);
    auto d0 = inverse_mod(red.a, red.c);
    if (!d0) throw ArithmeticError("mat_of_cusp: numerator and denominator are not coprime");
    auto b0 = exact_div(red.a * *d0 - QuadInt::one(red.a.params), red.c);
    if (!b0) throw InternalError("mat_of_cusp: a*d0 - 1 is not divisible by c");
    GroupElement g{red.a, *b0, red.c, *d0};
    if (!(g.det() == QuadInt::one(red.a.params))) throw InternalError("mat_of_cusp: det != 1");
    return g;
}

GenSet::GenSet(const RingParams& p, const Rational& h) : params_(p), h_(h) {
    h_.canonicalize();
    if (sgn(h) <= 0) throw std::invalid_argument("height must be positive");
    t1_ = GroupElement::translation(QuadInt::one(p));
    tw_ = GroupElement::translation(QuadInt::omega(p));
    // N(c) <= 1/h^2  <=>  N(c) <= floor(hd^2 / hn^2).
    for (const auto& c : enumerate_norm_le(p, horizon())) {
        for (const auto& a : residue_reps(c)) {
            if (!inverse_mod(a, c)) continue;
            Cusp cusp{a, c};
            index_.emplace(std::make_pair(c, a), gens_.size());
            gens_.push_back(mat_of_cusp(cusp));
            cusps_.push_back(std::move(cusp));
        }
    }
}

std::optional<std::size_t> GenSet::find(const Cusp& reduced) const {
    auto it = index_.find(std::make_pair(reduced.c, reduced.a));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

Integer GenSet::horizon() const {
    Integer hn = h_.get_num(), hd = h_.get_den();
    return Integer((hd * hd) / (hn * hn));
}

Integer GenSet::depth() const {
    Integer best = 0;
    for (const auto& cusp : cusps_) best = std::max(best, Integer(norm(cusp.c)));
    return best;
}

std::vector<Circle> GenSet::circles() const {
    std::vector<Circle> out;
    for (const auto& cusp : cusps_)
        if (auto c = circ(cusp, h_)) out.push_back(std::move(*c));
    return out;
}

std::pair<GenSet, CoverResult> find_generators(const RingParams& p, const Rational& h,
                                               const CoverOptions& opts) {
    GenSet gens(p, h);
    CoverResult cover = certify_cover(p, gens.circles(), opts.grid, opts.max_grid, opts.workers);
    return {std::move(gens), std::move(cover)};
}

namespace {

// Upper bound for sqrt(q), q >= 0, with absolute slack below 2^-20.
Rational sqrt_upper(const Rational& q) {
    const Integer K = Integer(1) << 20;
    Integer scaled = q.get_num() * q.get_den() * K * K;
    Rational out(isqrt(scaled) + 1, q.get_den() * K);
    out.canonicalize();
    return out;
}

}  // namespace

Rational tang_bound_sq(const QuadInt& c, const Rational& h) {
    if (c.is_zero()) throw ArithmeticError("tang_bound_sq: c = 0");
    if (sgn(h) <= 0) throw ArithmeticError("tang_bound_sq: height must be positive");
    const auto& p = c.params;
    Rational inv = 1 / (Rational(norm(c)) * h * h);  // 1/(|c| h)^2
    Rational one_plus_w = 1 + p.t + p.n;              // |1 + w|^2
    Rational out = inv + 2 * sqrt_upper(inv * one_plus_w) + one_plus_w;
    out.canonicalize();
    return out;
}

Decomposition decompose(const GroupElement& sigma, const GenSet& gens) {
    if (sigma.c.is_zero()) throw ArithmeticError("decompose: sigma fixes infinity");
    GroupElement s = sigma.normalized();
    DivResult qr = floor_div(s.a, s.c);
    auto idx = gens.find(Cusp{qr.remainder, s.c});
    if (!idx) {
        std::ostringstream msg;
        msg << "decompose: cusp " << qr.remainder << " / " << s.c
            << " is not in Gens(h) (N(c) = " << norm(s.c) << ")";
        throw ArithmeticError(msg.str());
    }
    const GroupElement& g = gens[*idx];
    GroupElement m = g.inverse() * GroupElement::translation(-qr.quotient) * s;
    const auto& p = sigma.params();
    if (!(m.a == QuadInt::one(p) && m.d == QuadInt::one(p) && m.c.is_zero()))
        throw InternalError("decompose: residual matrix is not a translation");
    return {qr.quotient, *idx, m.b};
}

GroupElement relation_product(const RawRelation& rel, const GenSet& gens) {
    const auto& A = gens[rel.A];
    const auto& C = gens[rel.C];
    GroupElement tail = GroupElement::translation(rel.r) * C * GroupElement::translation(rel.t);
    if (rel.kind == RelationKind::Inversion) return A * tail;
    const auto& B = gens[rel.B];
    return B.inverse() * GroupElement::translation(-rel.s) * A * tail;
}

namespace {

struct Prepared {
    QuadInt alpha;  // a * conj(c), so the cusp is alpha / N
    Integer N;
};

// Triple relations for one A, in (B, y, x) order of the shift s = x + y w.
void triples_for(const GenSet& gens, std::size_t ia, const std::vector<Prepared>& prep,
                 std::vector<RawRelation>& out) {
    const auto& p = gens.params();
    const Rational& h = gens.height();
    const Integer hn = h.get_num(), hd = h.get_den();
    const long disc = 4 * p.n - p.t * p.t;
    const GroupElement& A = gens[ia];
    const GroupElement Ainv = A.inverse();
    const Prepared& PA = prep[ia];
    const Rational tang = tang_bound_sq(gens.cusps()[ia].c, h);
    const Rational rA = 1 / (2 * h * Rational(PA.N));

    Integer M, DX, DY, F, Ymax, dy, G, S, lo, hi, ylo, yhi, xlo, xhi, tmp;
    for (std::size_t ib = 0; ib < gens.size(); ++ib) {
        const Prepared& PB = prep[ib];
        // With delta = alpha_A N_B - alpha_B N_A - s N_A N_B, the balls A(V) and
        // (T_s B)(V) meet iff N(delta) <= M/h^2, M = N_A N_B, i.e.
        // (2 dx + t dy)^2 + disc dy^2 <= F = floor(4 M hd^2 / hn^2).
        M = PA.N * PB.N;
        DX = PA.alpha.x * PB.N - PB.alpha.x * PA.N;
        DY = PA.alpha.y * PB.N - PB.alpha.y * PA.N;
        F = 4 * M * hd * hd;
        tmp = hn * hn;
        mpz_fdiv_q(F.get_mpz_t(), F.get_mpz_t(), tmp.get_mpz_t());
        tmp = F / disc;
        Ymax = isqrt(tmp);
        // |DY - y M| <= Ymax
        lo = DY - Ymax;
        hi = DY + Ymax;
        mpz_cdiv_q(ylo.get_mpz_t(), lo.get_mpz_t(), M.get_mpz_t());
        mpz_fdiv_q(yhi.get_mpz_t(), hi.get_mpz_t(), M.get_mpz_t());
        for (Integer y = ylo; y <= yhi; ++y) {
            dy = DY - y * M;
            G = F - disc * dy * dy;
            if (G < 0) continue;
            S = isqrt(G);
            // 2 DX - 2 x M + t dy in [-S, S]
            lo = 2 * DX + p.t * dy - S;
            hi = 2 * DX + p.t * dy + S;
            tmp = 2 * M;
            mpz_cdiv_q(xlo.get_mpz_t(), lo.get_mpz_t(), tmp.get_mpz_t());
            mpz_fdiv_q(xhi.get_mpz_t(), hi.get_mpz_t(), tmp.get_mpz_t());
            for (Integer x = xlo; x <= xhi; ++x) {
                QuadInt s{x, y, p};
                if (ib == ia && s.is_zero()) continue;
                Integer dx = DX - x * M;
                Integer ndelta = dx * dx + p.t * dx * dy + p.n * dy * dy;
                Rational dist_sq(ndelta, M * M);
                dist_sq.canonicalize();
                Rational rB = 1 / (2 * h * Rational(PB.N));
                if (!apex_reaches(rA, rB, dist_sq, h)) continue;
                if (Rational(norm(s)) > tang)
                    throw InternalError("triple intersection outside the Tang bound");
                GroupElement Cp = Ainv * GroupElement::translation(s) * gens[ib];
                if (Cp.c.is_zero())
                    throw InternalError("A^-1 T_s B fixes infinity for a non-trivial triple");
                Decomposition dec = decompose(Cp, gens);
                RawRelation rel;
                rel.kind = RelationKind::Triple;
                rel.A = ia;
                rel.B = ib;
                rel.s = s;
                rel.r = dec.r;
                rel.C = dec.index;
                rel.t = dec.t;
                if (!relation_product(rel, gens).is_identity())
                    throw InternalError("triple relation failed matrix verification");
                out.push_back(std::move(rel));
            }
        }
    }
}

std::vector<RawRelation> relations_for(const GenSet& gens, std::size_t ia,
                                       const std::vector<Prepared>& prep) {
    std::vector<RawRelation> out;
    Decomposition dec = decompose(gens[ia].inverse(), gens);
    RawRelation inv;
    inv.kind = RelationKind::Inversion;
    inv.A = ia;
    inv.B = ia;
    inv.s = QuadInt::zero(gens.params());
    inv.r = dec.r;
    inv.C = dec.index;
    inv.t = dec.t;
    if (!relation_product(inv, gens).is_identity())
        throw InternalError("inversion relation failed matrix verification");
    out.push_back(std::move(inv));
    triples_for(gens, ia, prep, out);
    return out;
}

}  // namespace

std::vector<RawRelation> find_relations(const GenSet& gens, unsigned workers) {
    std::vector<Prepared> prep;
    prep.reserve(gens.size());
    for (const auto& cusp : gens.cusps()) prep.push_back({cusp.a * conj(cusp.c), norm(cusp.c)});

    std::vector<std::vector<RawRelation>> per_a(gens.size());
    unsigned nw = std::max(1u, workers);
    if (nw == 1) {
        for (std::size_t ia = 0; ia < gens.size(); ++ia) per_a[ia] = relations_for(gens, ia, prep);
    } else {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(nw);
        for (unsigned w = 0; w < nw; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t ia = w; ia < gens.size(); ia += nw)
                        per_a[ia] = relations_for(gens, ia, prep);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
        for (auto& t : pool) t.join();
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
    }

    std::vector<RawRelation> out;
    for (auto& v : per_a)
        for (auto& rel : v) out.push_back(std::move(rel));
    return out;
}

}  // namespace bianchi
