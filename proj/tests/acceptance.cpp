// One line per acceptance criterion; exits nonzero if any criterion fails.
#include "pdspec/io.hpp"
#include "pdspec/suite.hpp"

#include <chrono>
#include <cmath>
#include <iostream>
#include <random>
#include <sstream>

using namespace pdspec;

namespace {

using Clock = std::chrono::steady_clock;

const std::vector<std::string> kCouplings{"0.2", "0.5", "1", "2", "4"};
constexpr int kStructuralLevel = 12;

class Criterion {
public:
    Criterion(int number, std::string title) : number_(number), title_(std::move(title)), start_(Clock::now()) {}

    // Records one item; the criterion passes only if every item does.
    void item(bool ok, const std::string& what) {
        ok_ = ok_ && ok;
        if (!ok) failures_.push_back(what);
        details_.push_back(what);
    }
    double seconds() const { return std::chrono::duration<double>(Clock::now() - start_).count(); }

    bool finish() {
        std::cout << "[" << number_ << "] " << (ok_ ? "PASS" : "FAIL") << " " << title_ << " (" << std::fixed;
        std::cout.precision(2);
        std::cout << seconds() << " s)\n";
        std::cout.unsetf(std::ios::fixed);
        std::cout.precision(6);
        for (const auto& d : details_) std::cout << "      " << d << "\n";
        for (const auto& f : failures_) std::cout << "      failed: " << f << "\n";
        std::cout.flush();
        return ok_;
    }

private:
    int number_;
    std::string title_;
    Clock::time_point start_;
    bool ok_ = true;
    std::vector<std::string> details_;
    std::vector<std::string> failures_;
};

std::string fmt(double v) {
    std::ostringstream out;
    out.precision(6);
    out << v;
    return out.str();
}

std::string report_line(const std::string& name, const Report& r) {
    std::string line = name + ": " + std::to_string(r.checked() - r.failed()) + "/" + std::to_string(r.checked()) + " checks";
    if (!r.ok()) line += ", first failure " + r.first_failure();
    return line;
}

double distance(const Real& x, double target) { return std::abs(x.to_double() - target); }

double gap(const PlanePoint& p, const PlanePoint& q) {
    return std::max(std::abs((p.x - q.x).to_double()), std::abs((p.y - q.y).to_double()));
}

bool closed_forms() {
    Criterion c(1, "closed-form level 0 and 1 data at lambda 2");
    BandTables tables(ModelParams::make("2", 128));
    tables.extend(1);
    const double r8 = std::sqrt(8.0), r6 = std::sqrt(6.0);
    const auto& e = tables.band(BandCode());
    const auto& b0 = tables.band(BandCode("0"));
    const auto& b1 = tables.band(BandCode("1"));
    const double err = std::max({distance(e.a.mid(), 0), distance(e.b.mid(), 4), distance(e.z.mid(), 2),
                                 distance(b0.a.mid(), -r8), distance(b0.b.mid(), -2), distance(b0.z.mid(), -r6),
                                 distance(b1.a.mid(), 2), distance(b1.b.mid(), r8), distance(b1.z.mid(), r6)});
    c.item(err <= 1e-12, "largest absolute error " + fmt(err) + " (bound 1e-12)");
    c.item(c.seconds() < 1.0, "runtime below 1 s");
    return c.finish();
}

bool oracle_equivalence() {
    Criterion c(2, "transfer matrix oracle and fundamental identity");
    const mpfr_prec_t bits = 128;
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> coupling(0.05, 5.0);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_int_distribution<int> level(1, 12);
    int trace_bad = 0, residual_bad = 0;
    double worst_trace = 0, worst_residual = 0;
    for (int i = 0; i < 1000; ++i) {
        std::ostringstream text;
        text.precision(6);
        text << coupling(rng);
        const auto params = ModelParams::make(text.str(), bits);
        const Real energy = params.real(unit(rng) * (params.lambda.to_double() + 3.0));
        const int n = level(rng);
        const Real tolerance = pow2(-bits / 2, bits);
        const Real via_matrix = transfer_trace(energy, n, params);
        const Real via_recurrence = eval_traces(energy, n, params).values[static_cast<std::size_t>(n)];
        const Real scale = max(max(abs(via_matrix), abs(via_recurrence)), params.real(1L));
        const Real trace_err = abs(via_matrix - via_recurrence) / scale;
        worst_trace = std::max(worst_trace, trace_err.to_double());
        if (trace_err > tolerance) ++trace_bad;
        const Residual res = fundamental_residual(energy, n, params);
        const Real residual_err = abs(res.value) / max(res.scale, params.real(1L));
        worst_residual = std::max(worst_residual, residual_err.to_double());
        if (residual_err > tolerance) ++residual_bad;
    }
    c.item(trace_bad == 0, "traces: worst relative difference " + fmt(worst_trace) + " over 1000 samples (bound 2^-64)");
    c.item(residual_bad == 0, "identity: worst relative residual " + fmt(worst_residual) + " (bound 2^-64)");
    c.item(c.seconds() < 30.0, "runtime below 30 s");
    return c.finish();
}

struct ModelRun {
    std::string lambda;
    BandTables tables;
    std::vector<OptimalCovering> coverings;
};

bool structural(const std::vector<ModelRun>& runs, const std::vector<double>& build_seconds) {
    Criterion c(3, "structural suites to level 12 for five couplings");
    for (std::size_t i = 0; i < runs.size(); ++i) {
        const auto start = Clock::now();
        const Report r = verify_model(runs[i].tables, kStructuralLevel);
        const double secs = build_seconds[i] + std::chrono::duration<double>(Clock::now() - start).count();
        c.item(r.ok(), report_line("lambda " + runs[i].lambda, r) + ", " + fmt(secs) + " s");
        c.item(secs < 300.0, "lambda " + runs[i].lambda + " within minutes");
    }
    return c.finish();
}

bool ids_exactness() {
    Criterion c(4, "IDS of zeros: closed form against coding and zero count");
    Report closed;
    for (int n = 0; n <= 10; ++n) {
        for (const BandCode& code : all_codes(n)) {
            const SymbolicPoint z = zero_coding(code);
            const TailClass expected = n % 2 == 1 ? TailClass::El_o : TailClass::Er_e;
            closed.check("tail class", tail_class(z) == expected, code.display());
            closed.check("epsilon of Pi", ids(z) == ids_of_zero(code), code.display());
        }
    }
    c.item(closed.ok(), report_line("codes up to length 10", closed));
    const int max_code = 10, offset = 6;
    BandTables tables(ModelParams::make("2", default_bits(max_code + offset)));
    tables.extend(max_code + offset);
    const Report counted = verify_ids_count(tables, max_code, offset);
    c.item(counted.ok(), report_line("zero count at m = |code| + 6, lambda 2", counted));
    return c.finish();
}

bool gap_labels(const std::vector<ModelRun>& runs) {
    Criterion c(5, "gap labels to depth 12");
    for (const ModelRun& run : runs) {
        std::size_t kind_one = 0, kind_two = 0, unresolved = 0;
        Report r;
        for (const OptimalCovering& covering : run.coverings) {
            const GapScan scan = enumerate_gaps(covering);
            unresolved += scan.unresolved.size();
            r.check_lazy("edge pairs", scan.violations.empty(), [&] { return scan.violations.front(); });
            for (const GapRecord& g : scan.gaps) {
                const std::string tag = std::string(gap_kind_name(g.kind)) + " " + format_rational(g.label);
                if (g.kind == GapKind::II) {
                    ++kind_two;
                    r.check("kind II in D/3 minus D, outside F labels",
                            g.label > 0 && g.label < 1 && is_third_dyadic(g.label) && !in_F_labels(g.label), tag);
                } else {
                    ++kind_one;
                    r.check("kind I dyadic", g.label > 0 && g.label < 1 && is_dyadic(g.label), tag);
                }
            }
        }
        c.item(r.ok() && kind_one > 0 && kind_two > 0,
               report_line("lambda " + run.lambda, r) + " (" + std::to_string(kind_one) + " kind I, " +
                   std::to_string(kind_two) + " kind II, " + std::to_string(unresolved) + " unresolved)");
    }
    return c.finish();
}

bool dimension() {
    Criterion c(6, "separating sub-covering and dimension bound");
    bool counts_ok = true;
    for (int n = 0; n <= 20; ++n) counts_ok = counts_ok && sns_count(n) == fibonacci(n);
    const std::vector<std::uint64_t> listed{2, 3, 5, 8, 13, 21, 34, 55, 89, 144};
    for (int n = 1; n <= 10; ++n) {
        counts_ok = counts_ok && sns_words(n).size() == listed[static_cast<std::size_t>(n - 1)];
    }
    c.item(counts_ok && fibonacci(20) == 17711, "counts F_n for n <= 20, F_20 = " + std::to_string(sns_count(20)));

    BandTables tables(ModelParams::make("2", default_bits(6)));
    tables.extend(6);
    BandAtlas atlas(tables);
    const auto levels = build_sns(10, atlas);
    const Report r = verify_sns(levels, tables.params(), 3);
    c.item(r.ok(), report_line("sub-covering at lambda 2 to n = 10", r));
    const auto scaling = min_length_scaling(levels);
    const double lowest = *std::min_element(scaling.begin(), scaling.end());
    const double early = *std::min_element(scaling.begin(), scaling.begin() + 5);
    const double late = *std::min_element(scaling.begin() + 5, scaling.end());
    std::string values;
    for (double s : scaling) values += fmt(s) + " ";
    c.item(lowest > 0 && late >= 0.5 * early, "min |I| 4^n: " + values);
    const auto estimate = dimension_lower_estimate(20);
    c.item(std::abs(estimate.estimate - 0.3528) <= 1e-4, "log F_20 / (20 log 4) = " + fmt(estimate.estimate));
    c.item(std::abs(estimate.limit - 0.34712) <= 1e-5, "limit log alpha / log 4 = " + fmt(estimate.limit));
    return c.finish();
}

bool dynamics() {
    Criterion c(7, "trace map on D");
    const mpfr_prec_t bits = 128;
    double worst_fixed = 0;
    for (const PlanePoint& p : fixed_points(bits)) worst_fixed = std::max(worst_fixed, gap(f_map(p), p));
    c.item(worst_fixed < 1e-25, "fixed point residual " + fmt(worst_fixed));
    const auto v = region_vertices(bits);
    const Real zero(0L, bits), two(2L, bits);
    const double corners = std::max(gap(f_map(v.B), {-two, two}), gap(f_map(v.C), {zero, -two}));
    c.item(corners < 1e-25, "f(B) = (-2,2), f(C) = (0,-2), error " + fmt(corners));

    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> coord(-2.5, 0.0);
    double worst_inverse = 0;
    for (int tried = 0; tried < 1000;) {
        const PlanePoint p{Real(coord(rng), bits), Real(coord(rng), bits)};
        if (!in_U(p)) continue;
        ++tried;
        const double scale = 1.0 + std::hypot(p.x.to_double(), p.y.to_double());
        worst_inverse = std::max(worst_inverse, gap(g_map(f_map(p)), p) / scale);
    }
    c.item(worst_inverse <= std::ldexp(1.0, -64), "g(f(p)) = p on 1000 points of U, worst " + fmt(worst_inverse));

    const ContractionResult contraction = verify_contraction(8, 30, bits);
    c.item(contraction.report.ok(), report_line("invariance, nesting and monotonicity", contraction.report));
    const double diameter = contraction.diameters[8];
    c.item(diameter < 0.05, "box diameter of g^8(D) " + fmt(diameter) + " (bound 0.05)");

    std::uniform_real_distribution<double> in_box(-std::sqrt(2.0), 0.0);
    const Real tol = pow2(-100, bits);
    int sampled = 0, escaped = 0, slowest = 0;
    while (sampled < 1000) {
        const PlanePoint p{Real(in_box(rng), bits), Real(in_box(rng), bits)};
        if (d_membership(p, tol) != Membership::inside) continue;
        if (std::hypot((p.x - v.F.x).to_double(), (p.y - v.F.y).to_double()) < 1e-3) continue;
        ++sampled;
        if (const auto steps = escape_check(p, 100000)) {
            ++escaped;
            slowest = std::max(slowest, *steps);
        }
    }
    c.item(escaped == sampled, std::to_string(escaped) + "/" + std::to_string(sampled) +
                                   " points of D escape, slowest after " + std::to_string(slowest) + " steps");
    return c.finish();
}

bool infinity_energy() {
    Criterion c(8, "infinity-type and sub-covering energies at depth 24");
    BandTables tables(ModelParams::make("2", default_bits(8)));
    tables.extend(8);
    BandAtlas atlas(tables);
    const SymbolicPoint point = SymbolicPoint::parse("0_e 1_o 2_e (3_or 0_e)");
    const Enclosure energy = pi_numeric(point, 24, atlas);
    const OrbitRecord orbit = classify_orbit(energy, 40, tables.params(), &tables);
    const InfinityProfile profile = infinity_profile(orbit, 0, 10);
    c.item(profile.last_bounded_index >= 0 && profile.last_bounded_distance < 0.05,
           "E = " + energy.mid().decimal(16) + ", | |h_" + std::to_string(profile.last_bounded_index) + "| - sqrt2 | = " +
               fmt(profile.last_bounded_distance));
    c.item(profile.last_growing_magnitude > 1e3 && profile.growing_monotone,
           "|h_" + std::to_string(profile.last_growing_index) + "| = " + fmt(profile.last_growing_magnitude) +
               ", monotone over the last 10 odd indices: " + (profile.growing_monotone ? "yes" : "no"));

    // Deepest point of a nested chain of the sub-covering: 0_e 1_o 2_e (2_o 2_e)^11.
    Word word = parse_word("0_e 1_o 2_e");
    while (word.size() < 25) word.push_back(word.back() == Letter::t2e ? Letter::t2o : Letter::t2e);
    const Band& band = atlas.band(pi_star(word));
    const ModelParams wide = widened(tables.params(), band.bits());
    const auto traces = eval_traces(band.z.mid(), 24, wide);
    double largest = 0;
    for (int k = 1; k <= 24; ++k) largest = std::max(largest, std::abs(traces.values[static_cast<std::size_t>(k)].to_double()));
    c.item(band.code.level() == 24 && largest <= 2.0,
           "sub-covering energy of level " + std::to_string(band.code.level()) + ": max |h_k|, k <= 24, is " + fmt(largest));
    return c.finish();
}

bool determinism() {
    Criterion c(9, "byte-identical exports across runs and thread counts");
    const ModelParams params = ModelParams::make("2", default_bits(9));
    auto exports = [&](unsigned threads) {
        BandTables tables(params);
        tables.extend(9, threads);
        const auto coverings = build_coverings(tables, 8);
        BandAtlas atlas(tables);
        const auto orbit = classify_orbit(pi_numeric(SymbolicPoint::parse("0_e 1_o 2_e (3_or 0_e)"), 16, atlas), 30,
                                          params, &tables);
        std::vector<std::string> out;
        for (Format f : {Format::json, Format::csv}) {
            out.push_back(export_bands(tables, 9, f));
            out.push_back(export_covering(coverings.back(), params, f));
            out.push_back(export_gaps(enumerate_gaps(coverings.back()), params, 8, f));
            out.push_back(export_orbit(orbit, params, f));
            out.push_back(export_sns(build_sns(6, atlas), params, f));
        }
        return out;
    };
    const auto first = exports(1);
    const auto again = exports(1);
    const auto threaded = exports(4);
    c.item(first == again, "repeated single-thread runs agree on " + std::to_string(first.size()) + " exports");
    c.item(first == threaded, "single-thread and four-thread runs agree");
    return c.finish();
}

}  // namespace

int main() {
    std::vector<ModelRun> runs;
    std::vector<double> build_seconds;
    for (const std::string& lambda : kCouplings) {
        const auto start = Clock::now();
        BandTables tables(ModelParams::make(lambda, default_bits(kStructuralLevel + 1)));
        tables.extend(kStructuralLevel + 1);
        auto coverings = build_coverings(tables, kStructuralLevel);
        build_seconds.push_back(std::chrono::duration<double>(Clock::now() - start).count());
        runs.push_back({lambda, std::move(tables), std::move(coverings)});
    }

    std::vector<bool> results;
    results.push_back(closed_forms());
    results.push_back(oracle_equivalence());
    results.push_back(structural(runs, build_seconds));
    results.push_back(ids_exactness());
    results.push_back(gap_labels(runs));
    results.push_back(dimension());
    results.push_back(dynamics());
    results.push_back(infinity_energy());
    results.push_back(determinism());
    const auto passed = std::count(results.begin(), results.end(), true);
    std::cout << passed << "/" << results.size() << " criteria passed\n";
    return passed == static_cast<long>(results.size()) ? 0 : 1;
}
