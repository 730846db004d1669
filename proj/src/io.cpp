#include "pdspec/io.hpp"

#include "json.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace pdspec {

namespace {

using Json = nlohmann::ordered_json;

Json enclosure_json(const Enclosure& e) {
    return Json{{"bits", e.lo.bits()}, {"lo", e.lo.hex()}, {"hi", e.hi.hex()}};
}

Enclosure enclosure_from(const Json& j) {
    const auto bits = j.at("bits").get<mpfr_prec_t>();
    return Enclosure(Real::parse(j.at("lo").get<std::string>(), bits), Real::parse(j.at("hi").get<std::string>(), bits));
}

Json real_json(const Real& x) { return Json{{"dec", x.decimal(20)}, {"hex", x.hex()}}; }

Json header(const ModelParams& params, const std::string& kind) {
    return Json{{"schema", kSchema}, {"kind", kind}, {"lambda", params.lambda_text}, {"bits", params.precision_bits}};
}

std::string dump(const Json& j) { return j.dump(1) + "\n"; }

// Decimal and hexadecimal columns of an enclosure midpoint plus its bounds.
void csv_enclosure(std::ostringstream& out, const Enclosure& e) {
    out << e.lo.decimal(20) << ',' << e.hi.decimal(20) << ',' << e.lo.hex() << ',' << e.hi.hex();
}

Json band_json(const Band& band) {
    return Json{{"code", band.code.str()},
                {"a", enclosure_json(band.a)},
                {"b", enclosure_json(band.b)},
                {"z", enclosure_json(band.z)}};
}

}  // namespace

Format parse_format(std::string_view text) {
    if (text == "json") return Format::json;
    if (text == "csv") return Format::csv;
    throw std::invalid_argument("unknown format '" + std::string(text) + "'");
}

std::filesystem::path cache_path(const std::filesystem::path& dir, const ModelParams& params) {
    return dir / ("bands-lambda" + params.lambda_text + "-bits" + std::to_string(params.precision_bits) + "-v" +
                  std::to_string(kCacheFormatVersion) + ".json");
}

std::filesystem::path cache_dir_from_env(const std::filesystem::path& fallback) {
    if (const char* env = std::getenv("PDSPEC_CACHE"); env != nullptr && *env != '\0') return env;
    return fallback;
}

std::optional<BandTables> cache_load(const std::filesystem::path& dir, const ModelParams& params, int level,
                                     const std::function<void(const std::string&)>& warn) {
    const auto path = cache_path(dir, params);
    if (!std::filesystem::exists(path)) return std::nullopt;
    try {
        std::ifstream in(path);
        const Json j = Json::parse(in);
        if (j.at("format_version").get<int>() != kCacheFormatVersion || j.at("lambda").get<std::string>() != params.lambda_text ||
            j.at("bits").get<mpfr_prec_t>() != params.precision_bits) {
            warn("cache key mismatch in " + path.string() + ", recomputing");
            return std::nullopt;
        }
        if (j.at("top").get<int>() < level) return std::nullopt;
        std::vector<LevelTable> levels;
        for (const Json& lj : j.at("levels")) {
            LevelTable t;
            t.level = lj.at("level").get<int>();
            if (t.level > level) break;
            for (const Json& bj : lj.at("bands")) {
                const BandCode code(bj.at("code").get<std::string>());
                t.bands.push_back(Band{code, enclosure_from(bj.at("a")), enclosure_from(bj.at("b")), enclosure_from(bj.at("z"))});
            }
            for (const Json& cj : lj.at("cumulative")) t.cumulative.emplace_back(cj.get<std::string>());
            if (t.bands.size() != (std::size_t{1} << t.level)) throw std::runtime_error("wrong band count");
            levels.push_back(std::move(t));
        }
        return BandTables::from_levels(params, std::move(levels));
    } catch (const std::exception& e) {
        warn("unreadable cache " + path.string() + " (" + e.what() + "), recomputing");
        return std::nullopt;
    }
}

void cache_store(const std::filesystem::path& dir, const BandTables& tables) {
    const ModelParams& params = tables.params();
    Json j{{"format_version", kCacheFormatVersion},
           {"lambda", params.lambda_text},
           {"bits", params.precision_bits},
           {"top", tables.top()}};
    Json levels = Json::array();
    for (const LevelTable& t : tables.levels()) {
        Json bands = Json::array();
        for (const Band& band : t.bands) bands.push_back(band_json(band));
        Json cumulative = Json::array();
        for (const BandCode& c : t.cumulative) cumulative.push_back(c.str());
        levels.push_back(Json{{"level", t.level}, {"bands", std::move(bands)}, {"cumulative", std::move(cumulative)}});
    }
    j["levels"] = std::move(levels);
    std::filesystem::create_directories(dir);
    const auto path = cache_path(dir, params);
    const auto partial = std::filesystem::path(path.string() + ".partial");
    {
        std::ofstream out(partial);
        out << j.dump();
    }
    std::filesystem::rename(partial, path);
}

BandTables load_or_build(const ModelParams& params, int level, const std::optional<std::filesystem::path>& dir,
                         unsigned threads, const std::function<void(const std::string&)>& warn) {
    if (dir) {
        if (auto cached = cache_load(*dir, params, level, warn)) return std::move(*cached);
    }
    BandTables tables(params);
    tables.extend(level, threads);
    if (dir) cache_store(*dir, tables);
    return tables;
}

std::string export_bands(const BandTables& tables, int level, Format format) {
    const LevelTable& t = tables.level(level);
    if (format == Format::csv) {
        std::ostringstream out;
        out << "code,a_lo,a_hi,a_lo_hex,a_hi_hex,b_lo,b_hi,b_lo_hex,b_hi_hex,z_lo,z_hi,z_lo_hex,z_hi_hex\n";
        for (const Band& band : t.bands) {
            out << band.code.display() << ',';
            csv_enclosure(out, band.a);
            out << ',';
            csv_enclosure(out, band.b);
            out << ',';
            csv_enclosure(out, band.z);
            out << '\n';
        }
        return out.str();
    }
    Json j = header(tables.params(), "bands");
    j["level"] = level;
    Json rows = Json::array();
    for (const Band& band : t.bands) {
        rows.push_back(Json{{"code", band.code.display()},
                            {"a", real_json(band.a.mid())},
                            {"b", real_json(band.b.mid())},
                            {"z", real_json(band.z.mid())},
                            {"enclosures", band_json(band)}});
    }
    j["bands"] = std::move(rows);
    return dump(j);
}

std::string export_covering(const OptimalCovering& covering, const ModelParams& params, Format format) {
    if (format == Format::csv) {
        std::ostringstream out;
        out << "word,type,code,a_lo,a_hi,a_lo_hex,a_hi_hex,b_lo,b_hi,b_lo_hex,b_hi_hex\n";
        for (const TypedBand& e : covering.entries) {
            out << format_word(e.word) << ',' << letter_name(e.type) << ',' << e.code().display() << ',';
            csv_enclosure(out, e.band.a);
            out << ',';
            csv_enclosure(out, e.band.b);
            out << '\n';
        }
        return out.str();
    }
    Json j = header(params, "covering");
    j["level"] = covering.level;
    Json rows = Json::array();
    for (const TypedBand& e : covering.entries) {
        rows.push_back(Json{{"word", format_word(e.word)},
                            {"type", letter_name(e.type)},
                            {"code", e.code().display()},
                            {"a", real_json(e.band.a.mid())},
                            {"b", real_json(e.band.b.mid())}});
    }
    j["entries"] = std::move(rows);
    return dump(j);
}

std::string export_gaps(const GapScan& scan, const ModelParams& params, int depth, Format format) {
    if (format == Format::csv) {
        std::ostringstream out;
        out << "kind,left_word,right_word,label,lower_lo,lower_hi,lower_lo_hex,lower_hi_hex,upper_lo,upper_hi,upper_lo_hex,"
               "upper_hi_hex\n";
        for (const GapRecord& g : scan.gaps) {
            out << gap_kind_name(g.kind) << ',' << g.left_code.str() << ',' << g.right_code.str() << ','
                << format_rational(g.label) << ',';
            csv_enclosure(out, g.lower);
            out << ',';
            csv_enclosure(out, g.upper);
            out << '\n';
        }
        return out.str();
    }
    Json j = header(params, "gaps");
    j["depth"] = depth;
    Json rows = Json::array();
    for (const GapRecord& g : scan.gaps) {
        rows.push_back(Json{{"kind", gap_kind_name(g.kind)},
                            {"left", g.left_code.str()},
                            {"right", g.right_code.str()},
                            {"label", format_rational(g.label)},
                            {"lower", real_json(g.lower.mid())},
                            {"upper", real_json(g.upper.mid())}});
    }
    j["gaps"] = std::move(rows);
    j["unresolved"] = scan.unresolved;
    j["violations"] = scan.violations;
    return dump(j);
}

std::string export_orbit(const OrbitRecord& orbit, const ModelParams& params, Format format) {
    if (format == Format::csv) {
        std::ostringstream out;
        out << "n,h,h_hex\n";
        for (std::size_t n = 0; n < orbit.values.size(); ++n) {
            out << n << ',' << orbit.values[n].decimal(20) << ',' << orbit.values[n].hex() << '\n';
        }
        return out.str();
    }
    Json j = header(params, "orbit");
    j["energy"] = real_json(orbit.energy.mid());
    j["status"] = orbit_status_name(orbit.status);
    j["resolved"] = orbit.resolved;
    if (orbit.zero_index) j["zero_index"] = *orbit.zero_index;
    if (orbit.certificate) j["certificate"] = Json{{"start", orbit.certificate->start_index}, {"slack", real_json(orbit.certificate->slack)}};
    Json trapped = Json::array();
    for (const TrappedRun& run : orbit.trapped) trapped.push_back(Json::array({run.first, run.last}));
    j["trapped"] = std::move(trapped);
    Json values = Json::array();
    for (const Real& h : orbit.values) values.push_back(real_json(h));
    j["values"] = std::move(values);
    return dump(j);
}

std::string export_sns(const std::vector<SnsLevel>& levels, const ModelParams& params, Format format) {
    const auto scaling = min_length_scaling(levels);
    if (format == Format::csv) {
        std::ostringstream out;
        out << "n,count,min_length,min_length_times_4n,estimate\n";
        for (std::size_t i = 0; i < levels.size(); ++i) {
            const int n = levels[i].level;
            out << n << ',' << levels[i].entries.size() << ',' << levels[i].min_length.decimal(12) << ',' << scaling[i] << ',';
            if (n >= 1) out << dimension_lower_estimate(n).estimate;
            out << '\n';
        }
        return out.str();
    }
    Json j = header(params, "sns");
    Json rows = Json::array();
    for (std::size_t i = 0; i < levels.size(); ++i) {
        const int n = levels[i].level;
        Json row{{"n", n},
                 {"count", levels[i].entries.size()},
                 {"min_length", real_json(levels[i].min_length)},
                 {"min_length_times_4n", scaling[i]}};
        if (n >= 1) row["estimate"] = dimension_lower_estimate(n).estimate;
        rows.push_back(std::move(row));
    }
    j["levels"] = std::move(rows);
    j["limit"] = dimension_lower_estimate(1).limit;
    return dump(j);
}

std::string export_dynamics(const ContractionResult& result, mpfr_prec_t bits, Format format) {
    const auto points = fixed_points(bits);
    if (format == Format::csv) {
        std::ostringstream out;
        out << "n,diameter\n";
        for (std::size_t n = 0; n < result.diameters.size(); ++n) out << n << ',' << result.diameters[n] << '\n';
        return out.str();
    }
    Json j{{"schema", kSchema}, {"kind", "dynamics"}, {"bits", bits}};
    Json fixed = Json::array();
    for (const PlanePoint& p : points) {
        const PlanePoint image = f_map(p);
        const Real residual = max(abs(image.x - p.x), abs(image.y - p.y));
        fixed.push_back(Json{{"x", real_json(p.x)}, {"y", real_json(p.y)}, {"residual", residual.to_double()}});
    }
    j["fixed_points"] = std::move(fixed);
    j["diameters"] = result.diameters;
    j["ok"] = result.report.ok();
    Json checks = Json::array();
    for (const Report::Entry& e : result.report.entries()) {
        checks.push_back(Json{{"name", e.name}, {"checked", e.checked}, {"failed", e.failed}});
    }
    j["checks"] = std::move(checks);
    return dump(j);
}

std::string export_report(const std::vector<ReportSection>& sections, Format format) {
    if (format == Format::csv) {
        std::ostringstream out;
        out << "section,check,checked,failed\n";
        for (const ReportSection& s : sections) {
            for (const Report::Entry& e : s.report.entries()) {
                out << s.name << ",\"" << e.name << "\"," << e.checked << ',' << e.failed << '\n';
            }
        }
        return out.str();
    }
    Json j{{"schema", kSchema}, {"kind", "verify"}};
    bool all_ok = true;
    Json rows = Json::array();
    for (const ReportSection& s : sections) {
        Json checks = Json::array();
        for (const Report::Entry& e : s.report.entries()) {
            checks.push_back(Json{{"name", e.name}, {"checked", e.checked}, {"failed", e.failed}, {"messages", e.messages}});
        }
        rows.push_back(Json{{"section", s.name}, {"ok", s.report.ok()}, {"checks", std::move(checks)}});
        all_ok = all_ok && s.report.ok();
    }
    j["ok"] = all_ok;
    j["sections"] = std::move(rows);
    return dump(j);
}

}  // namespace pdspec
