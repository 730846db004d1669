#pragma once

#include "pdspec/bands.hpp"
#include "pdspec/coding.hpp"
#include "pdspec/covering.hpp"

#include <string>
#include <vector>

namespace pdspec {

// Enclosure of I_{w} for the first depth+1 letters of the point, that is the
// band coded by Pi_* of that prefix. Nested in depth.
Enclosure pi_numeric(const SymbolicPoint& point, int depth, BandAtlas& atlas);

// Words of the covering whose interval contains the energy. Empty means the
// energy lies outside the spectrum.
std::vector<Word> code_of_energy(const Real& energy, const OptimalCovering& covering);

enum class GapKind { I_o, I_e, II };
std::string_view gap_kind_name(GapKind kind);

struct GapRecord {
    GapKind kind;
    SymbolicPoint left_code;   // coding of the lower edge
    SymbolicPoint right_code;  // coding of the upper edge
    Rational label;            // IDS on the gap
    Enclosure lower;           // lower edge at the scanned depth
    Enclosure upper;           // upper edge at the scanned depth
};

struct GapScan {
    std::vector<GapRecord> gaps;
    // Neighbours whose codings form a gap pair but whose bands are not
    // certified apart at the current precision.
    std::vector<std::string> unresolved;
    // Certified gaps whose bounding codings are not a gap pair.
    std::vector<std::string> violations;
};

// Gaps between neighbouring entries of a covering, in increasing order. Edge
// codings are the largest extension of the lower word and the smallest
// extension of the upper word; labels are their IDS.
GapScan enumerate_gaps(const OptimalCovering& covering);

// Whether the label belongs to the set allowed for its kind.
bool label_allowed(GapKind kind, const Rational& label);

}  // namespace pdspec
