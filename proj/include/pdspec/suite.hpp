#pragma once

#include "pdspec/bands.hpp"
#include "pdspec/report.hpp"

namespace pdspec {

// Exact comparison of the closed-form IDS of every zero of level at most
// max_code_level with the fraction of zeros of h_m below it, m = level +
// offset. The tables must reach max_code_level + offset.
Report verify_ids_count(const BandTables& tables, int max_code_level, int offset);

// Every check of one coupling up to the level, grouped by topic: the trace
// identity, band structure, zero order and signs, covering evolution, IDS of
// zeros, gap labels and the separating sub-covering. The tables must reach
// level + 1.
Report verify_model(const BandTables& tables, int level);

// Checks independent of the coupling: Pi order and collapse on short lassos,
// and the trace map contraction on D.
Report verify_model_free(mpfr_prec_t bits);

}  // namespace pdspec
