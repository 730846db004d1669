#pragma once

#include "pdspec/bands.hpp"
#include "pdspec/coding.hpp"
#include "pdspec/report.hpp"

#include <stdexcept>
#include <vector>

namespace pdspec {

struct TypedBand {
    Band band;
    Letter type;
    Word word;  // admissible word indexing the band in its covering

    const BandCode& code() const { return band.code; }
};

// Bands of level n together with the bands of level n+1 that stick out of
// their level-n parent, in increasing weak order of their words.
struct OptimalCovering {
    int level = 0;
    std::vector<TypedBand> entries;
};

class EvolutionViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Whether a band of level n+1 stays outside its level-n parent, decided on
// its code: neither endpoint is a zero of an earlier level.
bool joins_covering(const BandCode& code);

// Coverings of levels 0..n_max. Needs tables up to level n_max+1. Types
// follow the endpoint counts and, for bands of the next level, the position
// against their parent and grandparent; words extend the word of the unique
// containing entry of the previous covering. Throws PrecisionExhausted when
// an order needed for a type is not certified.
std::vector<OptimalCovering> build_coverings(const BandTables& tables, int n_max);

// Entries of the next covering whose word extends the word of the entry,
// checked against the out-edges of its type. Throws EvolutionViolation.
std::vector<TypedBand> children(const TypedBand& entry, const OptimalCovering& next);

// Evolution law, edge labels, sibling orders, unique parentage and the other
// covering facts for coverings[0..size-2] against their successors.
Report verify_evolution(const std::vector<OptimalCovering>& coverings, const BandTables& tables);

// Adjacent entries that overlap although their words are ordered.
std::size_t count_overlaps(const OptimalCovering& covering);

}  // namespace pdspec
