#pragma once

// Finite presentations whose generators carry (optional) matrices in
// PSL2(O_d), plus their text formats.

#include "bianchi/enumeration.hpp"
#include "bianchi/sl2.hpp"
#include "bianchi/word.hpp"

#include <filesystem>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <optional>
#include <string>
#include <vector>

namespace bianchi {

struct Generator {
    std::string name;
    std::optional<GroupElement> matrix;
};

struct Presentation {
    RingParams params;
    std::optional<Rational> height;
    std::vector<Generator> generators;
    std::vector<Word> relators;
    // Only used by hand-transcribed presentations: a relator that is suspected
    // to be mistyped in its source may carry the corrected word here, aligned
    // with `relators` (or empty).
    std::vector<std::optional<Word>> corrections;

    std::vector<std::string> names() const;
    std::map<std::string, std::size_t> name_index() const;
    long total_length() const;
};

class UnassignedGenerator : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Exact product of the word's matrices. Throws UnassignedGenerator if a
// letter has no matrix.
GroupElement evaluate_word(const Word& w, const std::vector<Generator>& generators);

// Presentation with generators T1, Tw, g1, ..., gm (gk = gens[k-1]) and one
// freely reduced relator per raw relation (shifts expanded through
// word_from_shift), preceded by the commutator T1 Tw T1^-1 Tw^-1. Identical
// words are kept once.
Presentation relator_words(const std::vector<RawRelation>& raw, const GenSet& gens);

constexpr std::size_t kT1 = 0;
constexpr std::size_t kTw = 1;

// Native text format, version 1:
//
//   bianchi-presentation 1
//   d <d>
//   height <p/q>                      (optional)
//   generators <count>
//   <name> <ax> <ay> <bx> <by> <cx> <cy> <dx> <dy>   or   <name> -
//   relators <count>
//   <word> [ @typo <corrected word> ]
//   end
//
// Matrix entries are the (x, y) coordinates of x + y*w. '#' starts a comment.
void write_native(std::ostream& os, const Presentation& p);
Presentation read_native(std::istream& is);
Presentation read_native_file(const std::filesystem::path& path);
void write_native_file(const std::filesystem::path& path, const Presentation& p);

// Magma-style finitely presented group constructor.
void write_cas(std::ostream& os, const Presentation& p);

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace bianchi
