#include "pdspec/suite.hpp"

#include "pdspec/coding.hpp"
#include "pdspec/covering.hpp"
#include "pdspec/dimension.hpp"
#include "pdspec/dynamics.hpp"
#include "pdspec/spectral_coding.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

namespace pdspec {

namespace {

// Eventually periodic points whose unrolled lasso has fewer than max_length letters.
std::vector<SymbolicPoint> lasso_points(int max_length) {
    std::vector<SymbolicPoint> points;
    std::set<std::string> seen;
    for (int n = 0; n < max_length; ++n) {
        for (const Word& w : admissible_words(n)) {
            for (std::size_t j = 0; j < w.size(); ++j) {
                if (!has_edge(w.back(), w[j])) continue;
                SymbolicPoint p(Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(j)),
                                Word(w.begin() + static_cast<std::ptrdiff_t>(j), w.end()));
                if (seen.insert(p.str()).second) points.push_back(std::move(p));
            }
        }
    }
    return points;
}

Report verify_fundamental(const BandTables& tables, int level) {
    Report r;
    const ModelParams& params = tables.params();
    const Real tolerance = pow2(-(params.precision_bits / 2), params.precision_bits);
    for (int n = 0; n <= level; ++n) {
        for (const Band& band : tables.level(n).bands) {
            for (const Enclosure* point : {&band.a, &band.z, &band.b}) {
                const ModelParams wide = widened(params, band.bits());
                const Residual res = fundamental_residual(point->mid(), n, wide);
                r.check_lazy("residual", abs(res.value) <= max(res.scale, wide.real(1L)) * tolerance,
                             [&] { return band.code.display(); });
            }
        }
    }
    return r;
}

Report verify_zero_structure(const BandTables& tables, int level) {
    Report r;
    // Neighbouring zeros of the cumulative set against the code order.
    const auto& cumulative = tables.level(level).cumulative;
    std::vector<std::pair<BandCode, BandCode>> pairs;
    for (std::size_t k = 0; k + 1 < cumulative.size(); ++k) pairs.emplace_back(cumulative[k], cumulative[k + 1]);
    for (std::size_t k = 0; k + 1 < cumulative.size(); ++k) {
        r.check_lazy("code order of neighbouring zeros", compare_zero_order(cumulative[k], cumulative[k + 1]) < 0,
                     [&] { return cumulative[k].display(); });
    }
    r.check("numeric order matches code order", zero_order_check(pairs, tables));
    for (int n = 1; n <= level; ++n) {
        for (const Band& band : tables.level(n).bands) {
            r.check_lazy("sign of the trace product", sign_product_check(band, 3, tables.params()),
                         [&] { return band.code.display(); });
        }
    }
    return r;
}

Report verify_gap_labels(const std::vector<OptimalCovering>& coverings) {
    Report r;
    std::set<Rational> previous;
    for (const OptimalCovering& covering : coverings) {
        const GapScan scan = enumerate_gaps(covering);
        const std::string depth = "depth " + std::to_string(covering.level);
        r.check_lazy("edges form gap pairs", scan.violations.empty(), [&] { return depth + ": " + scan.violations.front(); });
        std::set<Rational> current;
        for (const GapRecord& g : scan.gaps) {
            const std::string tag = depth + " " + std::string(gap_kind_name(g.kind)) + " " + format_rational(g.label);
            r.check(g.kind == GapKind::II ? "kind II label set" : "kind I label dyadic", label_allowed(g.kind, g.label), tag);
            r.check("gap certified open", g.lower.certainly_below(g.upper), tag);
            current.insert(g.label);
        }
        for (const Rational& label : previous) {
            r.check("labels persist", current.contains(label), depth + " " + format_rational(label));
        }
        previous = std::move(current);
    }
    return r;
}

Report verify_ids_closed_form(int level) {
    Report r;
    for (int n = 0; n <= level; ++n) {
        for (const BandCode& code : all_codes(n)) {
            const SymbolicPoint z = zero_coding(code);
            const TailClass expected = n % 2 == 1 ? TailClass::El_o : TailClass::Er_e;
            r.check("zero coding tail", tail_class(z) == expected, code.display());
            r.check("IDS of zero equals epsilon of Pi", ids(z) == ids_of_zero(code), code.display());
        }
    }
    return r;
}

Report verify_pi(int max_length) {
    Report r;
    const auto points = lasso_points(max_length);
    std::map<std::string, std::vector<const SymbolicPoint*>> by_code;
    for (const auto& p : points) by_code[Pi(p).str()].push_back(&p);
    for (const auto& [code, group] : by_code) {
        r.check("at most two points per code", group.size() <= 2, code);
        if (group.size() != 2) continue;
        const bool first_lower = compare_weak(*group[0], *group[1]) == Order::less;
        const SymbolicPoint& x = first_lower ? *group[0] : *group[1];
        const SymbolicPoint& y = first_lower ? *group[1] : *group[0];
        r.check("collapse only across kind II gaps", tail_class(x) == TailClass::Etl && gap_partner(x) == y, code);
    }
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::size_t> pick(0, points.size() - 1);
    for (int i = 0; i < 20000; ++i) {
        const auto& x = points[pick(rng)];
        const auto& y = points[pick(rng)];
        if (compare_weak(x, y) != Order::less) continue;
        r.check_lazy("order preserved", compare(Pi(x), Pi(y)) != std::strong_ordering::greater,
                     [&] { return x.str() + " < " + y.str(); });
    }
    return r;
}

}  // namespace

Report verify_ids_count(const BandTables& tables, int max_code_level, int offset) {
    Report r;
    for (int n = 0; n <= max_code_level; ++n) {
        const int m = n + offset;
        const auto& zeros = tables.level(m).bands;
        for (const BandCode& code : all_codes(n)) {
            const Enclosure& z = tables.zero(code);
            long below = 0;
            bool separated = true;
            for (const Band& band : zeros) {
                if (band.z.hi < z.lo) {
                    ++below;
                } else if (!(z.hi < band.z.lo)) {
                    separated = false;
                }
            }
            const Rational counted(below, 1L << m);
            r.check_lazy("counting oracle", separated && counted == ids_of_zero(code), [&] {
                return code.display() + ": " + format_rational(counted) + " vs " + format_rational(ids_of_zero(code));
            });
        }
    }
    return r;
}

Report verify_model(const BandTables& tables, int level) {
    if (tables.top() < level + 1) throw std::invalid_argument("tables must reach level + 1");
    Report r;
    r.merge(verify_fundamental(tables, level), "fundamental identity: ");
    for (int n = 0; n <= level; ++n) r.merge(verify_level(tables, n), "bands: ");
    r.merge(verify_zero_structure(tables, level), "zero order: ");
    const auto coverings = build_coverings(tables, level);
    r.merge(verify_evolution(coverings, tables), "type evolution: ");
    r.merge(verify_ids_closed_form(level), "IDS of zeros: ");
    if (level >= 6) r.merge(verify_ids_count(tables, level - 6, 6), "IDS of zeros: ");
    r.merge(verify_gap_labels(coverings), "gap labels: ");
    BandAtlas atlas(tables);
    const auto sns = build_sns(std::clamp(level - 2, 0, 10), atlas);
    r.merge(verify_sns(sns, tables.params(), 3), "separating sub-covering: ");
    return r;
}

Report verify_model_free(mpfr_prec_t bits) {
    Report r;
    r.merge(verify_pi(9), "Pi: ");
    r.merge(verify_contraction(8, 20, bits).report, "contraction of g: ");
    return r;
}

}  // namespace pdspec
