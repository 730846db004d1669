#include "pdspec/spectral_coding.hpp"

namespace pdspec {

namespace {

std::optional<GapKind> classify_pair(const SymbolicPoint& left, const SymbolicPoint& right) {
    const TailClass lc = tail_class(left);
    const TailClass rc = tail_class(right);
    if (lc == TailClass::Etl && gap_partner(left) == right) return GapKind::II;
    if (lc == TailClass::El_o && gap_partner(left) == right) return GapKind::I_o;
    if (rc == TailClass::Er_e && gap_partner(right) == left) return GapKind::I_e;
    return std::nullopt;
}

Real max_real(const Real& x, const Real& y) { return x < y ? y : x; }
Real min_real(const Real& x, const Real& y) { return y < x ? y : x; }

}  // namespace

Enclosure pi_numeric(const SymbolicPoint& point, int depth, BandAtlas& atlas) {
    if (depth < 0) throw std::invalid_argument("negative depth");
    const Band& band = atlas.band(pi_star(point.prefix(static_cast<std::size_t>(depth) + 1)));
    return Enclosure(band.a.lo, band.b.hi);
}

std::vector<Word> code_of_energy(const Real& energy, const OptimalCovering& covering) {
    std::vector<Word> words;
    for (const TypedBand& e : covering.entries) {
        if (!(energy < e.band.a.lo) && !(e.band.b.hi < energy)) words.push_back(e.word);
    }
    return words;
}

std::string_view gap_kind_name(GapKind kind) {
    switch (kind) {
        case GapKind::I_o: return "I_o";
        case GapKind::I_e: return "I_e";
        case GapKind::II: return "II";
    }
    return "?";
}

bool label_allowed(GapKind kind, const Rational& label) {
    if (label <= 0 || label >= 1) return false;
    if (kind == GapKind::II) return is_third_dyadic(label) && !in_F_labels(label);
    return is_dyadic(label);
}

GapScan enumerate_gaps(const OptimalCovering& covering) {
    GapScan scan;
    const auto& entries = covering.entries;
    if (entries.empty()) return scan;
    // Highest right end among the entries up to i, lowest left end from i on.
    std::vector<Enclosure> top_below(entries.size());
    std::vector<Enclosure> bottom_above(entries.size());
    top_below[0] = entries[0].band.b;
    for (std::size_t i = 1; i < entries.size(); ++i) {
        const Enclosure& b = entries[i].band.b;
        top_below[i] = Enclosure(max_real(top_below[i - 1].lo, b.lo), max_real(top_below[i - 1].hi, b.hi));
    }
    bottom_above.back() = entries.back().band.a;
    for (std::size_t i = entries.size() - 1; i-- > 0;) {
        const Enclosure& a = entries[i].band.a;
        bottom_above[i] = Enclosure(min_real(bottom_above[i + 1].lo, a.lo), min_real(bottom_above[i + 1].hi, a.hi));
    }
    for (std::size_t i = 0; i + 1 < entries.size(); ++i) {
        const Enclosure& lower = top_below[i];
        const Enclosure& upper = bottom_above[i + 1];
        if (upper.hi < lower.lo) continue;  // certified overlap
        const bool apart = lower.certainly_below(upper);
        const auto left = max_extension(entries[i].word);
        const auto right = min_extension(entries[i + 1].word);
        const auto kind = classify_pair(left, right);
        const std::string where = format_word(entries[i].word) + " | " + format_word(entries[i + 1].word);
        if (!apart) {
            if (kind) scan.unresolved.push_back(where);
            continue;
        }
        if (!kind) {
            scan.violations.push_back("certified gap without a gap pair: " + where);
            continue;
        }
        const Rational label = ids(left);
        if (ids(right) != label) scan.violations.push_back("edge labels differ: " + where);
        scan.gaps.push_back(GapRecord{*kind, left, right, label, lower, upper});
    }
    return scan;
}

}  // namespace pdspec
