#pragma once

// End-to-end run for one d: generators, coverage certificate, relations,
// presentation, abelianization.

#include "bianchi/coverage.hpp"
#include "bianchi/enumeration.hpp"
#include "bianchi/presentation.hpp"
#include "bianchi/smith.hpp"
#include "bianchi/tietze.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bianchi {

class CoverFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    long d = -2;
    std::optional<Rational> height;  // packaged default when empty
    bool auto_height = false;
    long grid = 100;
    long max_grid = 1600;
    unsigned workers = 1;
    bool cleanup = false;
    TietzeOptions cleanup_options;
};

struct PhaseTiming {
    std::string phase;
    double seconds = 0;
};

struct RunReport {
    long d = 0;
    Rational height;
    std::size_t generators = 0;       // |Gens(h)|
    std::size_t raw_generators = 0;   // |Gens(h)| + 2 (T1, Tw)
    std::size_t raw_relations = 0;    // distinct relator words, commutator included
    std::size_t inversion_relations = 0;
    std::size_t triple_relations = 0;
    Integer depth;    // max N(c) over Gens(h)
    Integer horizon;  // floor(1/h^2)
    long grid_used = 0;
    std::vector<Rational> heights_tried;
    AbelianInvariants abelianization;
    std::optional<std::size_t> cleaned_generators;
    std::optional<std::size_t> cleaned_relators;
    std::optional<AbelianInvariants> cleaned_abelianization;
    std::vector<PhaseTiming> timings;
};

struct RunResult {
    RunReport report;
    GenSet gens;
    CoverResult cover;
    std::vector<RawRelation> raw;
    Presentation presentation;
    std::optional<Presentation> cleaned;
};

// Exact heights just below the published four-decimal ones.
Rational default_height(long d);

// Schedule used by the auto-height search: 1/2, then times 9/10 down to 1/50.
std::vector<Rational> auto_height_schedule();

// Throws UnsupportedRing for unsupported d and CoverFailure when no tried
// height certifies.
RunResult run_pipeline(const RunConfig& cfg);

std::string report_json(const RunReport& r);
std::string report_text(const RunReport& r);

}  // namespace bianchi
