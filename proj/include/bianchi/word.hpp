#pragma once

// Words over a finite generator alphabet, stored as syllables g^e.

#include "bianchi/ring.hpp"

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace bianchi {

struct Letter {
    std::size_t gen = 0;
    long exp = 1;

    bool operator==(const Letter&) const = default;
    auto operator<=>(const Letter&) const = default;
};

// Freely reduced when adjacent letters have distinct generators and no
// exponent is zero.
using Word = std::vector<Letter>;

// Appends g^e, merging with the last syllable.
void append(Word& w, std::size_t gen, long exp);
void append(Word& w, const Word& tail);

Word free_reduce(const Word& w);
Word inverse(const Word& w);
// Conjugate to a word whose first and last syllables have distinct generators.
Word cyclic_reduce(const Word& w);
Word power(const Word& w, long k);

// Sum of |exponent|.
long word_length(const Word& w);

// Exponent sum of each generator.
std::vector<long> exponent_sums(const Word& w, std::size_t ngens);

// T_s = T_1^x T_w^y for s = x + y w (T_1 and T_w commute).
Word word_from_shift(const QuadInt& s, std::size_t t1, std::size_t tw);

// Parses words such as "(A U B A U^-1 B)^2" or "B^2*(A*B)^3". Generators are
// identifiers separated by whitespace or '*'; exponents may be written e, -e
// or {e}. Throws std::invalid_argument on syntax errors or unknown names.
Word parse_word(const std::string& text, const std::map<std::string, std::size_t>& names);

// "A U^-1 B"; "1" for the empty word.
std::string format_word(const Word& w, const std::vector<std::string>& names);
// "A*U^-1*B" for computer-algebra systems.
std::string format_word_cas(const Word& w, const std::vector<std::string>& names);

}  // namespace bianchi
