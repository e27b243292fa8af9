#pragma once

// Smith normal form over Z and abelianization of finite presentations.

#include "bianchi/ring.hpp"

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace bianchi {

struct Presentation;

using IntMatrix = std::vector<std::vector<Integer>>;

struct SmithForm {
    IntMatrix diagonal;  // same shape as the input
    IntMatrix left;      // unimodular, rows x rows
    IntMatrix right;     // unimodular, cols x cols
    std::vector<Integer> invariants;  // nonzero diagonal entries, each dividing the next
};

// left * m * right = diagonal. Dense; intended for small matrices.
SmithForm smith_normal_form(const IntMatrix& m, std::size_t cols);

// Nonzero invariant factors of a dense matrix, without transforms.
std::vector<Integer> invariant_factors(IntMatrix m, std::size_t cols);

using SparseRow = std::vector<std::pair<std::size_t, Integer>>;  // sorted by column

// Nonzero invariant factors of a sparse matrix. Unit pivots are eliminated
// first (fewest column entries, then shortest row); what remains is reduced
// densely.
std::vector<Integer> sparse_invariant_factors(std::vector<SparseRow> rows, std::size_t cols);

struct AbelianInvariants {
    std::vector<Integer> torsion;  // each > 1, each dividing the next
    long free_rank = 0;

    bool operator==(const AbelianInvariants&) const = default;
};

AbelianInvariants abelian_invariants(std::vector<SparseRow> rows, std::size_t cols);
AbelianInvariants abelianize(const Presentation& p);

// "C6 x Cinf", "Cinf^7", "1" for the trivial group.
std::string to_string(const AbelianInvariants& ab);

}  // namespace bianchi
