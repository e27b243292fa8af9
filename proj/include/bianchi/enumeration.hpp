#pragma once

// Generators and relations of PSL2(O_d) from the orbit of the horoball
// V = {lambda > h} based at infinity.

#include "bianchi/coverage.hpp"
#include "bianchi/geometry.hpp"
#include "bianchi/ring.hpp"
#include "bianchi/sl2.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace bianchi {

// Raised when an invariant that the enumeration relies on is violated; this
// always indicates a bug, never bad input.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Deterministic Mat(a/c) = [[a, b0], [c, d0]]: the cusp is reduced first,
// d0 is the canonical inverse of a mod c and b0 = (a*d0 - 1)/c.
GroupElement mat_of_cusp(const Cusp& cusp);

// Gens(h): one matrix per reduced cusp a/c with N(c) <= 1/h^2, ordered by
// (N(c), c) and then by the position of a/c in D. T_1 and T_w are kept
// separately.
class GenSet {
public:
    GenSet() = default;
    GenSet(const RingParams& p, const Rational& h);

    const RingParams& params() const { return params_; }
    const Rational& height() const { return h_; }
    std::size_t size() const { return gens_.size(); }
    const GroupElement& operator[](std::size_t k) const { return gens_[k]; }
    const std::vector<GroupElement>& elements() const { return gens_; }
    const std::vector<Cusp>& cusps() const { return cusps_; }
    const GroupElement& t1() const { return t1_; }
    const GroupElement& tw() const { return tw_; }

    std::optional<std::size_t> find(const Cusp& reduced) const;
    // max N(c); 0 for an empty set.
    Integer depth() const;
    // floor(1/h^2), the largest norm searched for denominators.
    Integer horizon() const;
    // Circ(a/c) of every generator with positive radius.
    std::vector<Circle> circles() const;

private:
    RingParams params_;
    Rational h_;
    std::vector<GroupElement> gens_;
    std::vector<Cusp> cusps_;
    std::map<std::pair<QuadInt, QuadInt>, std::size_t> index_;  // (c, a) -> k
    GroupElement t1_, tw_;
};

struct CoverOptions {
    long grid = 100;
    long max_grid = 1600;
    unsigned workers = 1;
};

// Builds Gens(h) and certifies that its circles cover D. An uncovered result
// is a valid outcome: the caller should lower h.
std::pair<GenSet, CoverResult> find_generators(const RingParams& p, const Rational& h,
                                               const CoverOptions& opts = {});

// A rational upper bound for (1/(|c| h) + |1 + w|)^2; every shift s with
// X(V) ∩ (T_s Y)(V) nonempty for X = Mat(./c) has N(s) <= this bound.
Rational tang_bound_sq(const QuadInt& c, const Rational& h);

// sigma = T_r * gens[index] * T_t.
struct Decomposition {
    QuadInt r;
    std::size_t index = 0;
    QuadInt t;
};

// Throws ArithmeticError when sigma fixes infinity or its cusp is not in gens
// (N(c) too large).
Decomposition decompose(const GroupElement& sigma, const GenSet& gens);

enum class RelationKind { Inversion, Triple };

// Inversion: A T_r C T_t = 1, i.e. A^-1 = T_r C T_t.
// Triple:    B^-1 T_-s A T_r C T_t = 1, from A^-1 T_s B = T_r C T_t, found at
//            the triple intersection A(V) ∩ (T_s B)(V) ∩ V.
struct RawRelation {
    RelationKind kind = RelationKind::Inversion;
    std::size_t A = 0;
    std::size_t B = 0;
    QuadInt s;
    QuadInt r;
    std::size_t C = 0;
    QuadInt t;
};

// Product of the relation's letters; +-I for every valid relation.
GroupElement relation_product(const RawRelation& rel, const GenSet& gens);

// Every inversion relation, and every triple relation with N(s) within the
// Tang bound. Each relation is matrix-verified before it is returned. The
// commutation relation of T_1 and T_w is implicit and added at word level.
std::vector<RawRelation> find_relations(const GenSet& gens, unsigned workers = 1);

}  // namespace bianchi
