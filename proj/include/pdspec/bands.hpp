#pragma once

#include "pdspec/code.hpp"
#include "pdspec/real.hpp"
#include "pdspec/report.hpp"
#include "pdspec/traces.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pdspec {

// Raised when a sign change required by the band structure cannot be
// certified at the working precision.
class PrecisionExhausted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Band {
    BandCode code;
    Enclosure a;  // left endpoint
    Enclosure b;  // right endpoint
    Enclosure z;  // zero of h_n inside the band

    Real length() const { return b.mid() - a.mid(); }
    // Working width the band was last solved or refined at.
    mpfr_prec_t bits() const { return z.lo.bits(); }
};

struct ZeroPoint {
    Enclosure value;
    BandCode owner;
};

struct LevelTable {
    int level = 0;
    std::vector<Band> bands;           // indexed by rank
    std::vector<BandCode> cumulative;  // owners of the zeros of levels 0..level, sorted by value

    const Band& band(const BandCode& code) const { return bands.at(code.rank()); }
};

// Upper bound on enclosure widths at a level.
Real target_width(int level, mpfr_prec_t bits);

// Largest significand width a single band may escalate to.
constexpr mpfr_prec_t kMaxBandBits = mpfr_prec_t{1} << 20;

// The same model at a larger significand width; lambda keeps its binary value.
ModelParams widened(const ModelParams& params, mpfr_prec_t bits);

// Solves the band of the given code inside the slot bounded by the given
// zeros of lower levels (null bounds mean the unbounded outer slots). The
// working width starts at the larger of the configured width and the width of
// the bounds, and doubles until the endpoints and the zero are certified with
// enclosures much narrower than the band. The bounds are re-isolated at each
// width, since a band endpoint may coincide with one of them.
Band solve_band(const BandCode& code, const ZeroPoint* lower, const ZeroPoint* upper, const ModelParams& params);

// Re-isolates every point of a band inside its current enclosures at a larger
// width.
Band refine_band(const Band& band, mpfr_prec_t bits, const ModelParams& params);

// All levels 0..top of one model. Enclosures of older levels are refined to
// the width of their descendants whenever a level is added, so comparisons
// across levels never mix a coarse ancestor with a fine descendant.
class BandTables {
public:
    explicit BandTables(ModelParams params);

    const ModelParams& params() const { return params_; }
    int top() const { return static_cast<int>(levels_.size()) - 1; }
    void extend(int level, unsigned threads = 1);

    const LevelTable& level(int n) const { return levels_.at(static_cast<std::size_t>(n)); }
    const Band& band(const BandCode& code) const { return level(code.level()).band(code); }
    const Enclosure& zero(const BandCode& code) const { return band(code).z; }
    ZeroPoint zero_point(const BandCode& code) const { return ZeroPoint{zero(code), code}; }

    // Tables restored from stored levels, used when loading a cache.
    static BandTables from_levels(ModelParams params, std::vector<LevelTable> levels);
    const std::vector<LevelTable>& levels() const { return levels_; }

private:
    void add_level(unsigned threads);
    void propagate_widths(unsigned threads);

    ModelParams params_;
    std::vector<LevelTable> levels_;
};

// Bands of computed tables, plus bands of deeper levels solved on demand. A
// deep band only needs the zeros of its prefix neighbours, so following one
// code to a large depth costs a few bands per level instead of whole levels.
class BandAtlas {
public:
    explicit BandAtlas(const BandTables& tables) : tables_(tables) {}

    const ModelParams& params() const { return tables_.params(); }
    const BandTables& tables() const { return tables_; }
    const Band& band(const BandCode& code);
    std::size_t solved_count() const { return extra_.size(); }

private:
    const BandTables& tables_;
    std::map<BandCode, Band> extra_;
};

// Relations between bands with enclosure semantics. Containment reads
// overlapping endpoint enclosures as equal points; the orders need certified
// separation. weakly_precedes is a_x < a_y and b_x < b_y; strictly_precedes is
// b_x < a_y.
bool contained_in(const Band& inner, const Band& outer);
bool interior_contained_in(const Band& inner, const Band& outer);
bool weakly_precedes(const Band& x, const Band& y);
bool strictly_precedes(const Band& x, const Band& y);

// Two enclosures of points that are either equal or far apart compared with
// the enclosure widths: overlapping enclosures are read as the same point.
inline bool same_point(const Enclosure& x, const Enclosure& y) { return x.overlaps(y); }

// Structural checks of level n against the two levels below it.
Report verify_level(const BandTables& tables, int n);

// Numeric order of zeros against the combinatorial order of their codes.
bool zero_order_check(const std::vector<std::pair<BandCode, BandCode>>& pairs, const BandTables& tables);

// Sign of prod_{j<n} h_j at interior sample points of the band.
bool sign_product_check(const Band& band, int samples, const ModelParams& params);

}  // namespace pdspec
