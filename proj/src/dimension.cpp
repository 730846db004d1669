#include "pdspec/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace pdspec {

namespace {

bool in_sub_alphabet(Letter x) {
    return x == Letter::t1e || x == Letter::t1o || x == Letter::t2e || x == Letter::t2o;
}

std::vector<Letter> sub_successors(Letter from) {
    std::vector<Letter> out;
    for (const Edge& e : successors(from)) {
        if (in_sub_alphabet(e.to)) out.push_back(e.to);
    }
    return out;
}

const Word& seed_word() {
    static const Word seed{Letter::t0e, Letter::t1o};
    return seed;
}

// Word length of a level: the seed, or the seed with 2_e and n more letters.
std::size_t word_length(int level) { return level == 0 ? 2 : static_cast<std::size_t>(level) + 3; }

std::string key(const Word& word, std::size_t length) {
    return format_word(std::span<const Letter>(word.data(), length));
}

}  // namespace

std::vector<Word> sns_words(int level) {
    if (level < 0) throw std::invalid_argument("negative level");
    if (level == 0) return {seed_word()};
    std::vector<Word> words{{Letter::t0e, Letter::t1o, Letter::t2e}};
    for (int step = 0; step < level; ++step) {
        std::vector<Word> next;
        for (const Word& w : words) {
            for (Letter x : sub_successors(w.back())) {
                next.push_back(w);
                next.back().push_back(x);
            }
        }
        words = std::move(next);
    }
    return words;
}

std::uint64_t sns_count(int level) {
    if (level < 0) throw std::invalid_argument("negative level");
    if (level == 0) return 1;
    std::map<Letter, std::uint64_t> ends{{Letter::t2e, 1}};
    for (int step = 0; step < level; ++step) {
        std::map<Letter, std::uint64_t> next;
        for (const auto& [x, count] : ends) {
            for (Letter y : sub_successors(x)) next[y] += count;
        }
        ends = std::move(next);
    }
    std::uint64_t total = 0;
    for (const auto& [x, count] : ends) total += count;
    return total;
}

std::uint64_t fibonacci(int n) {
    std::uint64_t prev = 1, cur = 2;
    if (n == 0) return prev;
    for (int k = 1; k < n; ++k) {
        const std::uint64_t next = cur + prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

std::vector<SnsLevel> build_sns(int n_max, BandAtlas& atlas) {
    std::vector<SnsLevel> levels;
    for (int n = 0; n <= n_max; ++n) {
        SnsLevel level;
        level.level = n;
        for (Word& w : sns_words(n)) {
            const Band& band = atlas.band(pi_star(w));
            const Letter type = w.back();
            level.entries.push_back(TypedBand{band, type, std::move(w)});
        }
        const mpfr_prec_t bits = level.entries.front().band.bits();
        level.min_length = Real::infinity(1, bits);
        level.total_length = Real(0L, bits);
        for (const TypedBand& e : level.entries) {
            const Real length = e.band.length();
            level.min_length = min(level.min_length, length);
            level.total_length += length;
        }
        levels.push_back(std::move(level));
    }
    return levels;
}

Report verify_sns(const std::vector<SnsLevel>& levels, const ModelParams& params, int samples) {
    Report r;
    for (const SnsLevel& level : levels) {
        const int n = level.level;
        r.check_lazy("counts are Fibonacci", level.entries.size() == fibonacci(n), [&] {
            return "level " + std::to_string(n) + ": " + std::to_string(level.entries.size());
        });
        for (std::size_t i = 0; i + 1 < level.entries.size(); ++i) {
            r.check_lazy("entries disjoint", strictly_precedes(level.entries[i].band, level.entries[i + 1].band),
                         [&] { return format_word(level.entries[i].word); });
        }
        for (const TypedBand& e : level.entries) {
            const int top = e.code().level();
            const ModelParams wide = widened(params, e.band.bits());
            const Real span = e.band.b.mid() - e.band.a.mid();
            bool traces_ok = true;
            bool derivatives_ok = true;
            for (int s = 0; s < samples; ++s) {
                const Real x = e.band.a.mid() + span * (2L * s + 1L) / (2L * samples);
                const auto tv = eval_derivatives(x, top, wide);
                for (int k = 1; k <= top; ++k) {
                    if (abs(tv.values[static_cast<std::size_t>(k)]) > 2.0) traces_ok = false;
                }
                // |h'_{k+1}| <= 2|h'_k| + 8|h'_{k-1}| wherever |h_{k-1}|, |h_k| <= 2.
                for (int k = 2; k < top; ++k) {
                    const auto& d = tv.derivs;
                    const Real bound = 2L * abs(d[static_cast<std::size_t>(k)]) + 8L * abs(d[static_cast<std::size_t>(k - 1)]);
                    if (abs(d[static_cast<std::size_t>(k + 1)]) > bound * Real(1.0 + 1e-12, wide.precision_bits)) {
                        derivatives_ok = false;
                    }
                }
            }
            r.check_lazy("traces bounded by 2", traces_ok, [&] { return format_word(e.word); });
            r.check_lazy("derivative recursion bound", derivatives_ok, [&] { return format_word(e.word); });
        }
    }
    // Nesting along word prefixes.
    for (std::size_t i = 1; i < levels.size(); ++i) {
        std::map<std::string, const Band*> parents;
        const std::size_t parent_length = word_length(levels[i - 1].level);
        for (const TypedBand& e : levels[i - 1].entries) parents.emplace(key(e.word, parent_length), &e.band);
        for (const TypedBand& e : levels[i].entries) {
            const auto it = parents.find(key(e.word, std::min(parent_length, e.word.size())));
            const bool nested = it != parents.end() && contained_in(e.band, *it->second);
            r.check_lazy("entries nested", nested, [&] { return format_word(e.word); });
        }
    }
    // Descendant counts of two entries of a level differ by at most F_k / F_{k-1}.
    for (std::size_t i = 0; i < levels.size(); ++i) {
        const std::size_t length = word_length(levels[i].level);
        for (std::size_t j = i + 1; j < levels.size(); ++j) {
            std::map<std::string, std::uint64_t> descendants;
            for (const TypedBand& e : levels[j].entries) ++descendants[key(e.word, length)];
            std::uint64_t lo = UINT64_MAX, hi = 0;
            for (const auto& [prefix, count] : descendants) {
                lo = std::min(lo, count);
                hi = std::max(hi, count);
            }
            const int k = levels[j].level - levels[i].level;
            const bool ok = descendants.size() == levels[i].entries.size() && hi * fibonacci(k - 1) <= lo * fibonacci(k) &&
                            hi <= 2 * lo;
            r.check_lazy("balanced descendants", ok, [&] {
                return "levels " + std::to_string(levels[i].level) + "->" + std::to_string(levels[j].level);
            });
        }
    }
    return r;
}

std::vector<double> min_length_scaling(const std::vector<SnsLevel>& levels) {
    std::vector<double> out;
    for (const SnsLevel& level : levels) out.push_back(std::ldexp(level.min_length.to_double(), 2 * level.level));
    return out;
}

DimensionEstimate dimension_lower_estimate(int n) {
    if (n < 1) throw std::invalid_argument("dimension estimate needs n >= 1");
    const double alpha = (1.0 + std::sqrt(5.0)) / 2.0;
    return {std::log(static_cast<double>(fibonacci(n))) / (n * std::log(4.0)), std::log(alpha) / std::log(4.0)};
}

double box_count_estimate(const OptimalCovering& covering) {
    std::vector<double> lengths;
    for (const TypedBand& e : covering.entries) lengths.push_back(e.band.length().to_double());
    std::nth_element(lengths.begin(), lengths.begin() + static_cast<std::ptrdiff_t>(lengths.size() / 2), lengths.end());
    // Finest scale still coarser than a typical entry.
    const int finest = static_cast<int>(std::floor(-std::log2(lengths[lengths.size() / 2])));
    std::vector<double> xs, ys;
    for (int j = finest - 4; j <= finest; ++j) {
        const double eps = std::ldexp(1.0, -j);
        std::set<long long> cells;
        for (const TypedBand& e : covering.entries) {
            const auto first = static_cast<long long>(std::floor(e.band.a.lo.to_double() / eps));
            const auto last = static_cast<long long>(std::floor(e.band.b.hi.to_double() / eps));
            for (long long c = first; c <= last; ++c) cells.insert(c);
        }
        xs.push_back(j * std::log(2.0));
        ys.push_back(std::log(static_cast<double>(cells.size())));
    }
    const double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace pdspec
