#include "pdspec/io.hpp"
#include "pdspec/suite.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>

using namespace pdspec;

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitPrecision = 2;
constexpr int kExitBadInput = 3;
constexpr int kMaxLevel = 24;

struct RunConfig {
    std::string lambda = "2";
    int level = 6;
    int bits = 0;
    std::string cache;
    std::string format = "json";
    std::string out;
    unsigned threads = 1;
};

struct OrbitOptions {
    std::string energy;
    std::string word;
    int depth = 24;
    int horizon = 40;
};

void add_common(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--lambda", cfg.lambda, "coupling constant as an exact decimal")->capture_default_str();
    cmd->add_option("--level", cfg.level, "largest level")->check(CLI::Range(0, kMaxLevel))->capture_default_str();
    cmd->add_option("--bits", cfg.bits, "significand width (default grows with the level)")->check(CLI::Range(53, 1 << 20));
    cmd->add_option("--cache", cfg.cache, "band cache directory (default from PDSPEC_CACHE)");
    cmd->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
    cmd->add_option("--out", cfg.out, "output file (default stdout)");
    cmd->add_option("--threads", cfg.threads, "worker threads")->check(CLI::Range(1u, 256u))->capture_default_str();
}

mpfr_prec_t bits_for(const RunConfig& cfg, int level) {
    return cfg.bits > 0 ? cfg.bits : default_bits(level);
}

ModelParams params_for(const RunConfig& cfg, int level) { return ModelParams::make(cfg.lambda, bits_for(cfg, level)); }

std::optional<std::filesystem::path> cache_dir(const RunConfig& cfg) {
    if (!cfg.cache.empty()) return cfg.cache;
    const auto dir = cache_dir_from_env({});
    if (dir.empty()) return std::nullopt;
    return dir;
}

BandTables tables_for(const RunConfig& cfg, const ModelParams& params, int level) {
    return load_or_build(params, level, cache_dir(cfg), cfg.threads,
                         [](const std::string& message) { std::cerr << "warning: " << message << "\n"; });
}

// Artifacts appear under their final name only when complete.
void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.out.empty()) {
        std::cout << text;
        return;
    }
    const std::filesystem::path path(cfg.out);
    const std::filesystem::path partial(path.string() + ".partial");
    {
        std::ofstream out(partial, std::ios::binary);
        out << text;
        if (!out) throw std::runtime_error("cannot write " + partial.string());
    }
    std::filesystem::rename(partial, path);
}

int cmd_bands(const RunConfig& cfg) {
    const auto tables = tables_for(cfg, params_for(cfg, cfg.level), cfg.level);
    emit(cfg, export_bands(tables, cfg.level, parse_format(cfg.format)));
    return 0;
}

int cmd_covering(const RunConfig& cfg) {
    const auto tables = tables_for(cfg, params_for(cfg, cfg.level + 1), cfg.level + 1);
    const auto coverings = build_coverings(tables, cfg.level);
    emit(cfg, export_covering(coverings.back(), tables.params(), parse_format(cfg.format)));
    return 0;
}

int cmd_gaps(const RunConfig& cfg) {
    const auto tables = tables_for(cfg, params_for(cfg, cfg.level + 1), cfg.level + 1);
    const auto coverings = build_coverings(tables, cfg.level);
    const GapScan scan = enumerate_gaps(coverings.back());
    emit(cfg, export_gaps(scan, tables.params(), cfg.level, parse_format(cfg.format)));
    for (const std::string& v : scan.violations) std::cerr << "violation: " << v << "\n";
    return scan.violations.empty() ? 0 : kExitFailure;
}

int cmd_ids(const RunConfig& cfg, const std::optional<std::string>& zero, const std::optional<std::string>& point) {
    const Rational value = zero ? ids_of_zero(BandCode(*zero)) : ids(SymbolicPoint::parse(*point));
    emit(cfg, format_rational(value) + "\n");
    return 0;
}

int cmd_orbit(const RunConfig& cfg, const OrbitOptions& opt) {
    const ModelParams params = params_for(cfg, cfg.level);
    const auto tables = tables_for(cfg, params, cfg.level);
    Enclosure energy = Enclosure::point(Real::parse(opt.energy.empty() ? "0" : opt.energy, params.precision_bits));
    if (!opt.word.empty()) {
        BandAtlas atlas(tables);
        energy = pi_numeric(SymbolicPoint::parse(opt.word), opt.depth, atlas);
    }
    const OrbitRecord orbit = classify_orbit(energy, opt.horizon, params, &tables);
    emit(cfg, export_orbit(orbit, params, parse_format(cfg.format)));
    return 0;
}

int cmd_dimension(const RunConfig& cfg) {
    const int top = std::min(cfg.level, 2);
    const auto tables = tables_for(cfg, params_for(cfg, top), top);
    BandAtlas atlas(tables);
    const auto levels = build_sns(cfg.level, atlas);
    emit(cfg, export_sns(levels, tables.params(), parse_format(cfg.format)));
    return 0;
}

int cmd_dynamics(const RunConfig& cfg, int steps, int grid) {
    const mpfr_prec_t bits = cfg.bits > 0 ? cfg.bits : 128;
    const ContractionResult result = verify_contraction(steps, grid, bits);
    emit(cfg, export_dynamics(result, bits, parse_format(cfg.format)));
    if (!result.report.ok()) std::cerr << result.report.summary();
    return result.report.ok() ? 0 : kExitFailure;
}

int cmd_verify(const RunConfig& cfg, bool lambda_given) {
    const std::vector<std::string> couplings =
        lambda_given ? std::vector<std::string>{cfg.lambda} : std::vector<std::string>{"0.2", "0.5", "1", "2", "4"};
    std::vector<ReportSection> sections;
    bool ok = true;
    for (const std::string& lambda : couplings) {
        RunConfig one = cfg;
        one.lambda = lambda;
        const auto tables = tables_for(one, params_for(one, cfg.level + 1), cfg.level + 1);
        sections.push_back({"lambda " + lambda, verify_model(tables, cfg.level)});
        std::cerr << (sections.back().report.ok() ? "pass" : "FAIL") << " lambda " << lambda << "\n";
        ok = ok && sections.back().report.ok();
    }
    sections.push_back({"coupling free", verify_model_free(cfg.bits > 0 ? cfg.bits : 128)});
    std::cerr << (sections.back().report.ok() ? "pass" : "FAIL") << " coupling free\n";
    ok = ok && sections.back().report.ok();
    emit(cfg, export_report(sections, parse_format(cfg.format)));
    return ok ? 0 : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral data of the period-doubling Hamiltonian"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto* bands = app.add_subcommand("bands", "band enclosures of one level");
    auto* covering = app.add_subcommand("covering", "typed optimal covering of one level");
    auto* gaps = app.add_subcommand("gaps", "gaps and their labels at one depth");
    auto* ids_cmd = app.add_subcommand("ids", "integrated density of states of a coding");
    auto* orbit = app.add_subcommand("orbit", "trace orbit of an energy");
    auto* dimension = app.add_subcommand("dimension", "separating sub-covering and dimension estimate");
    auto* dynamics = app.add_subcommand("dynamics", "trace map checks on the region D");
    auto* verify = app.add_subcommand("verify", "every check across couplings");
    for (auto* cmd : {bands, covering, gaps, ids_cmd, orbit, dimension, dynamics, verify}) add_common(cmd, cfg);

    std::optional<std::string> zero, point;
    auto* zero_opt = ids_cmd->add_option("--zero", zero, "binary code of a zero, e.g. 01");
    auto* point_opt = ids_cmd->add_option("--point", point, "eventually periodic word, e.g. \"0_e 1_o (2_e 2_o)\"");
    zero_opt->excludes(point_opt);
    ids_cmd->require_option(1);

    OrbitOptions orbit_opt;
    auto* energy_opt = orbit->add_option("--energy", orbit_opt.energy, "energy as a decimal or hex literal");
    auto* word_opt = orbit->add_option("--word", orbit_opt.word, "eventually periodic word whose energy is followed");
    energy_opt->excludes(word_opt);
    orbit->add_option("--depth", orbit_opt.depth, "coding depth for --word")->check(CLI::Range(0, 40))->capture_default_str();
    orbit->add_option("--horizon", orbit_opt.horizon, "largest trace index")->check(CLI::Range(1, 1000))->capture_default_str();

    int steps = 12;
    int grid = 30;
    dynamics->add_option("--steps", steps, "iterations of g")->check(CLI::Range(1, 64))->capture_default_str();
    dynamics->add_option("--grid", grid, "grid points per side of D")->check(CLI::Range(2, 1000))->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitBadInput;
    }
    if (*orbit && energy_opt->count() == 0 && word_opt->count() == 0) {
        std::cerr << "orbit needs --energy or --word\n";
        return kExitBadInput;
    }

    try {
        if (*bands) return cmd_bands(cfg);
        if (*covering) return cmd_covering(cfg);
        if (*gaps) return cmd_gaps(cfg);
        if (*ids_cmd) return cmd_ids(cfg, zero, point);
        if (*orbit) return cmd_orbit(cfg, orbit_opt);
        if (*dimension) return cmd_dimension(cfg);
        if (*dynamics) return cmd_dynamics(cfg, steps, grid);
        if (*verify) return cmd_verify(cfg, verify->get_option("--lambda")->count() > 0);
    } catch (const PrecisionExhausted& e) {
        std::cerr << "precision exhausted: " << e.what() << "\n";
        return kExitPrecision;
    } catch (const std::invalid_argument& e) {
        std::cerr << "bad input: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitBadInput;
}
