#pragma once

#include "bianchi/presentation.hpp"

namespace bianchi {

struct TietzeOptions {
    // Passes without any elimination before giving up.
    int budget = 3;
    // A generator g is eliminated through a relator g^+-1 W only if |W| is at
    // most this long.
    long max_substitution = 12;
    // Relators longer than this are never produced by a substitution.
    long max_relator = 400;
};

// Best-effort simplification by Tietze moves: free and cyclic reduction,
// removal of trivial relators and of relators equal up to rotation and
// inversion, and elimination of generators that occur exactly once in some
// relator. The result presents an isomorphic group; matrices of the surviving
// generators are kept, so relators still evaluate to +-I.
Presentation tietze_cleanup(const Presentation& p, const TietzeOptions& opts = {});

// Canonical representative of the relator under rotation and inversion.
Word canonical_relator(const Word& w);

}  // namespace bianchi
