#include "pdspec/covering.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace pdspec {

namespace {

bool is_odd_letter(Letter x) {
    switch (x) {
        case Letter::t0o:
        case Letter::t1o:
        case Letter::t2o:
        case Letter::t3ol:
        case Letter::t3or: return true;
        default: return false;
    }
}

bool is_three(Letter x) {
    return x == Letter::t3el || x == Letter::t3er || x == Letter::t3ol || x == Letter::t3or;
}

Letter count_letter(int endpoints_in_R, bool odd) {
    static constexpr Letter odd_letters[] = {Letter::t0o, Letter::t1o, Letter::t2o};
    static constexpr Letter even_letters[] = {Letter::t0e, Letter::t1e, Letter::t2e};
    return odd ? odd_letters[endpoints_in_R] : even_letters[endpoints_in_R];
}

Letter three_letter(bool left, bool odd) {
    if (odd) return left ? Letter::t3ol : Letter::t3or;
    return left ? Letter::t3el : Letter::t3er;
}

int endpoints_in_R(const BandCode& code) {
    if (code.empty()) return 0;
    return static_cast<int>(endpoint_in_R(code, Side::left)) + static_cast<int>(endpoint_in_R(code, Side::right));
}

// Type of a band of level n+1 that sticks out of its level-n parent.
Letter next_level_type(const BandCode& code, int n, const BandTables& tables) {
    const Band& band = tables.band(code);
    const BandCode parent_code = code.prefix(n);
    const Band& parent = tables.band(parent_code);
    const bool odd = n % 2 == 1;
    const bool parent_inside = n == 0 || endpoints_in_R(parent_code) > 0;
    auto unresolved = [&] {
        return PrecisionExhausted("order needed for the type of sigma=" + code.display() + " is not certified");
    };
    if (parent_inside) {
        if (weakly_precedes(band, parent)) return three_letter(true, odd);
        if (weakly_precedes(parent, band)) return three_letter(false, odd);
        throw unresolved();
    }
    const Band& grandparent = tables.band(code.prefix(n - 1));
    if (weakly_precedes(parent, grandparent)) return three_letter(true, odd);
    if (weakly_precedes(grandparent, parent)) return three_letter(false, odd);
    throw unresolved();
}

void sort_by_word(std::vector<TypedBand>& entries) {
    std::sort(entries.begin(), entries.end(),
              [](const TypedBand& x, const TypedBand& y) { return compare_weak(x.word, y.word) == Order::less; });
}

std::string parent_key(const Word& word) {
    return format_word(std::span<const Letter>(word.data(), word.size() - 1));
}

// Indices of entries sorted by left endpoint; entries of a covering are not
// nested, so right endpoints come out sorted too.
std::vector<std::size_t> by_left_end(const OptimalCovering& covering) {
    std::vector<std::size_t> order(covering.entries.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return covering.entries[i].band.a.lo < covering.entries[j].band.a.lo;
    });
    return order;
}

std::size_t containing_count(const Band& inner, const OptimalCovering& covering, const std::vector<std::size_t>& order) {
    auto first_after = std::upper_bound(order.begin(), order.end(), inner.a.hi, [&](const Real& x, std::size_t i) {
        return x < covering.entries[i].band.a.lo;
    });
    std::size_t count = 0;
    // Candidates start at or before the inner band; stop once they end too early.
    for (auto it = first_after; it != order.begin();) {
        --it;
        const Band& outer = covering.entries[*it].band;
        if (outer.b.hi < inner.b.lo) break;
        if (contained_in(inner, outer)) ++count;
    }
    return count;
}

std::string word_detail(const TypedBand& e) {
    return "word " + format_word(e.word) + " sigma=" + e.code().display();
}

}  // namespace

bool joins_covering(const BandCode& code) {
    return !code.empty() && !endpoint_in_R(code, Side::left) && !endpoint_in_R(code, Side::right);
}

std::vector<OptimalCovering> build_coverings(const BandTables& tables, int n_max) {
    if (tables.top() < n_max + 1) throw std::invalid_argument("coverings need band tables one level deeper");
    std::vector<OptimalCovering> coverings;
    for (int n = 0; n <= n_max; ++n) {
        OptimalCovering covering;
        covering.level = n;
        const bool odd = n % 2 == 1;
        for (const Band& band : tables.level(n).bands) {
            covering.entries.push_back(TypedBand{band, count_letter(endpoints_in_R(band.code), odd), {}});
        }
        for (const Band& band : tables.level(n + 1).bands) {
            if (joins_covering(band.code)) {
                covering.entries.push_back(TypedBand{band, next_level_type(band.code, n, tables), {}});
            }
        }
        if (n == 0) {
            for (TypedBand& e : covering.entries) e.word = {e.type};
        } else {
            const OptimalCovering& prev = coverings.back();
            std::map<BandCode, std::size_t> by_code;
            for (std::size_t i = 0; i < prev.entries.size(); ++i) by_code.emplace(prev.entries[i].code(), i);
            for (TypedBand& e : covering.entries) {
                // The parent is the containing previous entry named by a prefix of the code.
                for (int k = e.code().level(); k >= std::max(0, n - 1) && e.word.empty(); --k) {
                    auto it = by_code.find(e.code().prefix(k));
                    if (it == by_code.end() || !contained_in(e.band, prev.entries[it->second].band)) continue;
                    e.word = prev.entries[it->second].word;
                    e.word.push_back(e.type);
                }
                if (e.word.empty()) throw EvolutionViolation("no parent for sigma=" + e.code().display());
            }
        }
        sort_by_word(covering.entries);
        coverings.push_back(std::move(covering));
    }
    return coverings;
}

std::vector<TypedBand> children(const TypedBand& entry, const OptimalCovering& next) {
    std::vector<TypedBand> found;
    for (const TypedBand& e : next.entries) {
        if (e.word.size() == entry.word.size() + 1 && std::equal(entry.word.begin(), entry.word.end(), e.word.begin())) {
            found.push_back(e);
        }
    }
    const auto edges = successors(entry.type);
    if (found.size() != edges.size()) {
        throw EvolutionViolation("evolution violation: " + word_detail(entry) + " has " +
                                 std::to_string(found.size()) + " children");
    }
    for (std::size_t i = 0; i < found.size(); ++i) {
        if (found[i].type != edges[i].to || found[i].code() != entry.code() + edges[i].label) {
            throw EvolutionViolation("evolution violation: child " + word_detail(found[i]) + " of " +
                                     word_detail(entry));
        }
    }
    return found;
}

Report verify_evolution(const std::vector<OptimalCovering>& coverings, const BandTables& tables) {
    Report report;
    for (std::size_t level = 0; level < coverings.size(); ++level) {
        const OptimalCovering& cov = coverings[level];
        const int n = cov.level;
        for (const TypedBand& e : cov.entries) {
            report.check_lazy("word indexes band", pi_star(e.word) == e.code(), [&] { return word_detail(e); });
            report.check_lazy("type is last letter", e.word.back() == e.type, [&] { return word_detail(e); });
            report.check_lazy("type parity", is_odd_letter(e.type) == (n % 2 == 1), [&] { return word_detail(e); });
            if (e.type == Letter::t0e || e.type == Letter::t0o) {
                // h_n runs from -2 up to 2 on 0_e bands and the other way on 0_o bands.
                const bool increasing = e.type == Letter::t0e;
                const bool code_ok = e.code().empty() ? increasing : (e.code().last() == '1') == increasing;
                const ModelParams wide = widened(tables.params(), e.band.bits());
                const auto values = eval_traces(e.band.a.mid(), std::max(n, 1), wide).values;
                const bool numeric_ok = (values[static_cast<std::size_t>(n)].sign() < 0) == increasing;
                report.check_lazy("type-0 monotone", code_ok && numeric_ok, [&] { return word_detail(e); });
            }
        }
        if (level + 1 >= coverings.size()) continue;
        const OptimalCovering& next = coverings[level + 1];

        std::map<std::string, std::vector<const TypedBand*>> family;
        for (const TypedBand& c : next.entries) family[parent_key(c.word)].push_back(&c);
        std::size_t expected = 0;
        for (const TypedBand& e : cov.entries) {
            const auto edges = successors(e.type);
            expected += edges.size();
            const auto& kids = family[format_word(e.word)];
            bool law = kids.size() == edges.size();
            bool labels = law;
            for (std::size_t i = 0; law && i < kids.size(); ++i) {
                law = kids[i]->type == edges[i].to;
                labels = labels && kids[i]->code() == e.code() + edges[i].label;
            }
            report.check_lazy("evolution law", law, [&] { return word_detail(e); });
            report.check_lazy("edge labels", labels, [&] { return word_detail(e); });
            if (!law) continue;
            for (std::size_t i = 0; i < kids.size(); ++i) {
                for (std::size_t j = i + 1; j < kids.size(); ++j) {
                    const Band& x = kids[i]->band;
                    const Band& y = kids[j]->band;
                    const bool strong = strong_less(kids[i]->type, kids[j]->type);
                    const bool ok = weakly_precedes(x, y) && (!strong || strictly_precedes(x, y));
                    report.check_lazy("sibling order", ok, [&] {
                        return word_detail(*kids[i]) + " vs " + word_detail(*kids[j]);
                    });
                }
            }
            if (e.type == Letter::t1o || e.type == Letter::t1e) {
                // The sibling of type 2 splits the parent at its zero.
                const bool left = e.type == Letter::t1o;
                const Band& half = kids[left ? 0 : 1]->band;
                const bool ok = left ? same_point(half.a, e.band.a) && same_point(half.b, e.band.z)
                                     : same_point(half.a, e.band.z) && same_point(half.b, e.band.b);
                report.check_lazy("type-1 split at zero", ok, [&] { return word_detail(e); });
            }
            if (is_three(e.type)) {
                const Band& same = kids.front()->band;
                report.check_lazy("type-3 persists", same_point(same.a, e.band.a) && same_point(same.b, e.band.b),
                                  [&] { return word_detail(e); });
            }
        }
        report.check_lazy("child counts", next.entries.size() == expected, [&] {
            return "level " + std::to_string(n + 1) + ": " + std::to_string(next.entries.size()) + " entries, " +
                   std::to_string(expected) + " expected";
        });

        const auto order = by_left_end(cov);
        for (const TypedBand& c : next.entries) {
            const std::size_t count = containing_count(c.band, cov, order);
            report.check_lazy("unique parentage", count == 1,
                              [&] { return word_detail(c) + " has " + std::to_string(count) + " parents"; });
        }
    }

    // Membership decided on codes against numeric containment in the parent,
    // and the parent-in-grandparent rule used for types.
    for (const OptimalCovering& cov : coverings) {
        const int n = cov.level;
        if (n + 1 > tables.top()) continue;
        for (const Band& band : tables.level(n + 1).bands) {
            const Band& parent = tables.band(band.code.prefix(n));
            report.check_lazy("covering membership", joins_covering(band.code) == !contained_in(band, parent),
                              [&] { return "sigma=" + band.code.display(); });
        }
        if (n == 0) continue;
        for (const Band& band : tables.level(n).bands) {
            const Band& parent = tables.band(band.code.prefix(n - 1));
            report.check_lazy("inside parent iff endpoint in R", (endpoints_in_R(band.code) > 0) == contained_in(band, parent),
                              [&] { return "sigma=" + band.code.display(); });
        }
    }
    return report;
}

std::size_t count_overlaps(const OptimalCovering& covering) {
    std::size_t count = 0;
    for (std::size_t i = 0; i + 1 < covering.entries.size(); ++i) {
        if (!strictly_precedes(covering.entries[i].band, covering.entries[i + 1].band)) ++count;
    }
    return count;
}

}  // namespace pdspec
