#pragma once

#include "pdspec/bands.hpp"
#include "pdspec/coding.hpp"
#include "pdspec/covering.hpp"
#include "pdspec/report.hpp"

#include <cstdint>
#include <vector>

namespace pdspec {

// Words of the separating sub-covering: level 0 is the seed 0_e 1_o, level
// n >= 1 extends 0_e 1_o 2_e by n letters along 1_e->2_o, 1_o->2_e,
// 2_e->{1_o,2_o}, 2_o->{1_e,2_e}. In increasing word order.
std::vector<Word> sns_words(int level);
std::uint64_t sns_count(int level);    // counted on the sub-graph without listing
std::uint64_t fibonacci(int n);        // F_0 = 1, F_1 = 2

struct SnsLevel {
    int level = 0;
    std::vector<TypedBand> entries;
    Real min_length;
    Real total_length;
};

// Bands of the sub-covering for levels 0..n_max, attached through the word
// to band coding.
std::vector<SnsLevel> build_sns(int n_max, BandAtlas& atlas);

// Disjointness, nesting, the trace bound |h_k| <= 2 on sampled points, the
// derivative recursion bound and the balance of descendant counts.
Report verify_sns(const std::vector<SnsLevel>& levels, const ModelParams& params, int samples);

// min |I| * 4^n for each level.
std::vector<double> min_length_scaling(const std::vector<SnsLevel>& levels);

struct DimensionEstimate {
    double estimate;  // log F_n / (n log 4)
    double limit;     // log alpha / log 4
};
DimensionEstimate dimension_lower_estimate(int n);

// Least-squares slope of log N(eps) against log(1/eps) over five dyadic
// scales down to the median entry length, counting grid cells met by the
// entries of a covering. Exploratory.
double box_count_estimate(const OptimalCovering& covering);

}  // namespace pdspec
