#include "pdspec/coding.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace pdspec {

namespace {

using L = Letter;

constexpr std::array<std::string_view, kLetterCount> kNames{"0_e", "0_o",  "1_e",  "1_o",  "2_e",
                                                             "2_o", "3_el", "3_er", "3_ol", "3_or"};

int index_of(Letter letter) { return static_cast<int>(letter); }

// Out-edges in increasing sibling order.
const std::array<std::vector<Edge>, kLetterCount>& graph() {
    static const std::array<std::vector<Edge>, kLetterCount> edges = [] {
        std::array<std::vector<Edge>, kLetterCount> g;
        g[index_of(L::t0e)] = {{L::t3ol, "01"}, {L::t1o, "1"}, {L::t3or, "11"}};
        g[index_of(L::t0o)] = {{L::t3el, "00"}, {L::t1e, "0"}, {L::t3er, "10"}};
        g[index_of(L::t1e)] = {{L::t3ol, "01"}, {L::t2o, "1"}};
        g[index_of(L::t1o)] = {{L::t2e, "0"}, {L::t3er, "10"}};
        g[index_of(L::t2e)] = {{L::t1o, "0"}, {L::t3or, "01"}, {L::t2o, "1"}};
        g[index_of(L::t2o)] = {{L::t2e, "0"}, {L::t3el, "10"}, {L::t1e, "1"}};
        g[index_of(L::t3el)] = {{L::t0o, ""}};
        g[index_of(L::t3er)] = {{L::t0o, ""}};
        g[index_of(L::t3ol)] = {{L::t0e, ""}};
        g[index_of(L::t3or)] = {{L::t0e, ""}};
        return g;
    }();
    return edges;
}

// Position of a letter in the odd chain 3_ol, 1_o, 3_or, 2_o and the even
// chain 2_e, 3_el, 1_e, 3_er; -1 when absent.
int odd_rank(Letter x) {
    switch (x) {
        case L::t3ol: return 0;
        case L::t1o: return 1;
        case L::t3or: return 2;
        case L::t2o: return 3;
        default: return -1;
    }
}

int even_rank(Letter x) {
    switch (x) {
        case L::t2e: return 0;
        case L::t3el: return 1;
        case L::t1e: return 2;
        case L::t3er: return 3;
        default: return -1;
    }
}

bool in_pairs(Letter x, Letter y, std::initializer_list<std::pair<Letter, Letter>> pairs) {
    return std::any_of(pairs.begin(), pairs.end(), [&](const auto& p) { return p.first == x && p.second == y; });
}

template <typename Less>
Order order_of(Letter x, Letter y, Less less) {
    if (x == y) return Order::equal;
    if (less(x, y)) return Order::less;
    if (less(y, x)) return Order::greater;
    return Order::incomparable;
}

std::vector<std::string> split_tokens(std::string_view text) {
    std::vector<std::string> tokens;
    std::string current;
    for (char c : text) {
        if (c == ' ' || c == ',' || c == '\t') {
            if (!current.empty()) tokens.push_back(std::move(current));
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

// Smallest d dividing the length with the sequence d-periodic.
template <typename Seq>
Seq primitive_root(const Seq& period) {
    const std::size_t n = period.size();
    for (std::size_t d = 1; d <= n; ++d) {
        if (n % d != 0) continue;
        bool periodic = true;
        for (std::size_t i = d; i < n && periodic; ++i) periodic = period[i] == period[i - d];
        if (periodic) return Seq(period.begin(), period.begin() + static_cast<std::ptrdiff_t>(d));
    }
    return period;
}

// Shortest period, then shortest preperiod by rotating the period backwards.
template <typename Seq>
void canonicalize(Seq& preperiod, Seq& period) {
    period = primitive_root(period);
    while (!preperiod.empty() && preperiod.back() == period.back()) {
        std::rotate(period.begin(), period.end() - 1, period.end());
        preperiod.pop_back();
    }
}

// Length after which two eventually periodic words agree forever if they
// agree up to it.
std::size_t comparison_bound(std::size_t pre_x, std::size_t per_x, std::size_t pre_y, std::size_t per_y) {
    return std::max(pre_x, pre_y) + std::lcm(per_x, per_y);
}

Word concat(Word head, std::initializer_list<Letter> tail) {
    head.insert(head.end(), tail.begin(), tail.end());
    return head;
}

Letter expect_letter(const SymbolicPoint& point, std::ptrdiff_t i, std::initializer_list<Letter> allowed) {
    if (i < 0) throw std::logic_error("gap edge without predecessor: " + point.str());
    const Letter x = point.at(static_cast<std::size_t>(i));
    if (std::find(allowed.begin(), allowed.end(), x) == allowed.end()) {
        throw std::logic_error("unexpected letter before the periodic tail of " + point.str());
    }
    return x;
}

Letter extreme_successor(Letter from, bool largest) {
    const auto next = successors(from);
    Letter best = next.front().to;
    for (const Edge& e : next) {
        if (largest ? weak_less(best, e.to) : weak_less(e.to, best)) best = e.to;
    }
    return best;
}

SymbolicPoint extreme_extension(std::span<const Letter> word, bool largest) {
    if (word.empty() || !admissible(word)) throw std::invalid_argument("extension of an inadmissible word");
    Word seq(word.begin(), word.end());
    std::map<Letter, std::size_t> seen{{seq.back(), seq.size() - 1}};
    for (;;) {
        const Letter next = extreme_successor(seq.back(), largest);
        auto it = seen.find(next);
        if (it != seen.end()) {
            Word preperiod(seq.begin(), seq.begin() + static_cast<std::ptrdiff_t>(it->second));
            Word period(seq.begin() + static_cast<std::ptrdiff_t>(it->second), seq.end());
            return SymbolicPoint(std::move(preperiod), std::move(period));
        }
        seen.emplace(next, seq.size());
        seq.push_back(next);
    }
}

Rational pow2_rational(std::size_t k) {
    boost::multiprecision::cpp_int one = 1;
    return Rational(one << static_cast<unsigned>(k));
}

boost::multiprecision::cpp_int bits_value(const std::string& bits) {
    boost::multiprecision::cpp_int v = 0;
    for (char c : bits) v = v * 2 + (c == '1' ? 1 : 0);
    return v;
}

}  // namespace

std::string_view letter_name(Letter letter) { return kNames.at(static_cast<std::size_t>(index_of(letter))); }

Letter parse_letter(std::string_view text) {
    for (Letter x : kAllLetters) {
        if (letter_name(x) == text) return x;
    }
    throw std::invalid_argument("unknown type letter '" + std::string(text) + "'");
}

std::span<const Edge> successors(Letter from) { return graph()[static_cast<std::size_t>(index_of(from))]; }

bool has_edge(Letter from, Letter to) {
    const auto next = successors(from);
    return std::any_of(next.begin(), next.end(), [&](const Edge& e) { return e.to == to; });
}

std::string_view edge_label(Letter from, Letter to) {
    for (const Edge& e : successors(from)) {
        if (e.to == to) return e.label;
    }
    throw std::invalid_argument("no edge " + std::string(letter_name(from)) + " -> " + std::string(letter_name(to)));
}

bool is_start_letter(Letter letter) { return letter == L::t3el || letter == L::t0e; }

bool weak_less(Letter x, Letter y) {
    if (odd_rank(x) >= 0 && odd_rank(y) >= 0) return odd_rank(x) < odd_rank(y);
    if (even_rank(x) >= 0 && even_rank(y) >= 0) return even_rank(x) < even_rank(y);
    return y == L::t0e && (x == L::t3el || x == L::t2e);
}

bool strong_less(Letter x, Letter y) {
    return in_pairs(x, y,
                    {{L::t3ol, L::t1o},
                     {L::t1o, L::t2o},
                     {L::t3ol, L::t3or},
                     {L::t3or, L::t2o},
                     {L::t3ol, L::t2o},
                     {L::t2e, L::t3el},
                     {L::t3el, L::t3er},
                     {L::t2e, L::t1e},
                     {L::t1e, L::t3er},
                     {L::t2e, L::t3er}});
}

std::string format_word(std::span<const Letter> word) {
    std::string out;
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (i > 0) out.push_back(' ');
        out += letter_name(word[i]);
    }
    return out;
}

Word parse_word(std::string_view text) {
    Word word;
    for (const auto& token : split_tokens(text)) word.push_back(parse_letter(token));
    return word;
}

bool admissible(std::span<const Letter> word) {
    if (word.empty() || !is_start_letter(word.front())) return false;
    for (std::size_t i = 0; i + 1 < word.size(); ++i) {
        if (!has_edge(word[i], word[i + 1])) return false;
    }
    return true;
}

Order compare_weak(std::span<const Letter> x, std::span<const Letter> y) {
    const std::size_t n = std::min(x.size(), y.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (x[i] != y[i]) return order_of(x[i], y[i], weak_less);
    }
    return x.size() == y.size() ? Order::equal : Order::incomparable;
}

Order compare_strong(std::span<const Letter> x, std::span<const Letter> y) {
    const std::size_t n = std::min(x.size(), y.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (x[i] != y[i]) return order_of(x[i], y[i], strong_less);
    }
    return x.size() == y.size() ? Order::equal : Order::incomparable;
}

BandCode pi_star(std::span<const Letter> word) {
    if (!admissible(word)) throw std::invalid_argument("inadmissible word: " + format_word(word));
    std::string bits = word.front() == L::t3el ? "0" : "";
    for (std::size_t i = 0; i + 1 < word.size(); ++i) bits += edge_label(word[i], word[i + 1]);
    return BandCode(bits);
}

SymbolicPoint::SymbolicPoint(Word preperiod, Word period) :
    preperiod_(std::move(preperiod)), period_(std::move(period)) {
    if (period_.empty()) throw std::invalid_argument("symbolic point with an empty period");
    canonicalize(preperiod_, period_);
    Word unrolled = preperiod_;
    unrolled.insert(unrolled.end(), period_.begin(), period_.end());
    unrolled.push_back(period_.front());
    if (!admissible(unrolled)) throw std::invalid_argument("inadmissible symbolic point: " + str());
}

SymbolicPoint SymbolicPoint::parse(std::string_view text) {
    const auto open = text.find('(');
    const auto close = text.rfind(')');
    if (open == std::string_view::npos || close == std::string_view::npos || close < open) {
        throw std::invalid_argument("symbolic point needs a parenthesised period: " + std::string(text));
    }
    return SymbolicPoint(parse_word(text.substr(0, open)), parse_word(text.substr(open + 1, close - open - 1)));
}

Letter SymbolicPoint::at(std::size_t i) const {
    if (i < preperiod_.size()) return preperiod_[i];
    return period_[(i - preperiod_.size()) % period_.size()];
}

Word SymbolicPoint::prefix(std::size_t length) const {
    Word out;
    out.reserve(length);
    for (std::size_t i = 0; i < length; ++i) out.push_back(at(i));
    return out;
}

std::string SymbolicPoint::str() const {
    std::string out = format_word(preperiod_);
    if (!out.empty()) out.push_back(' ');
    return out + "(" + format_word(period_) + ")";
}

Order compare_weak(const SymbolicPoint& x, const SymbolicPoint& y) {
    const std::size_t bound =
        comparison_bound(x.preperiod().size(), x.period().size(), y.preperiod().size(), y.period().size());
    for (std::size_t i = 0; i < bound; ++i) {
        if (x.at(i) != y.at(i)) return order_of(x.at(i), y.at(i), weak_less);
    }
    return Order::equal;
}

Order compare_strong(const SymbolicPoint& x, const SymbolicPoint& y) {
    const std::size_t bound =
        comparison_bound(x.preperiod().size(), x.period().size(), y.preperiod().size(), y.period().size());
    for (std::size_t i = 0; i < bound; ++i) {
        if (x.at(i) != y.at(i)) return order_of(x.at(i), y.at(i), strong_less);
    }
    return Order::equal;
}

SymbolicPoint omega_min() { return SymbolicPoint({L::t3el}, {L::t0o, L::t3el}); }
SymbolicPoint omega_max() { return SymbolicPoint({}, {L::t0e, L::t3or}); }

BinaryCode::BinaryCode(std::string preperiod, std::string period) :
    preperiod_(std::move(preperiod)), period_(std::move(period)) {
    auto binary = [](const std::string& s) { return s.find_first_not_of("01") == std::string::npos; };
    if (period_.empty() || !binary(preperiod_) || !binary(period_)) {
        throw std::invalid_argument("malformed binary code '" + preperiod_ + "(" + period_ + ")'");
    }
    canonicalize(preperiod_, period_);
}

BinaryCode BinaryCode::parse(std::string_view text) {
    const auto open = text.find('(');
    const auto close = text.rfind(')');
    if (open == std::string_view::npos || close == std::string_view::npos || close < open) {
        throw std::invalid_argument("binary code needs a parenthesised period: " + std::string(text));
    }
    return BinaryCode(std::string(text.substr(0, open)), std::string(text.substr(open + 1, close - open - 1)));
}

BinaryCode BinaryCode::expansion(const Rational& value) {
    if (value < 0 || value >= 1) throw std::invalid_argument("binary expansion needs a value in [0,1)");
    using boost::multiprecision::cpp_int;
    const cpp_int den = boost::multiprecision::denominator(value);
    cpp_int rem = boost::multiprecision::numerator(value);
    std::map<cpp_int, std::size_t> seen;
    std::string digits;
    while (!seen.contains(rem)) {
        seen.emplace(rem, digits.size());
        rem *= 2;
        if (rem >= den) {
            digits.push_back('1');
            rem -= den;
        } else {
            digits.push_back('0');
        }
    }
    const std::size_t start = seen.at(rem);
    return BinaryCode(digits.substr(0, start), digits.substr(start));
}

char BinaryCode::at(std::size_t i) const {
    if (i < preperiod_.size()) return preperiod_[i];
    return period_[(i - preperiod_.size()) % period_.size()];
}

std::string BinaryCode::str() const { return preperiod_ + "(" + period_ + ")"; }

std::strong_ordering compare(const BinaryCode& x, const BinaryCode& y) {
    const std::size_t bound =
        comparison_bound(x.preperiod().size(), x.period().size(), y.preperiod().size(), y.period().size());
    for (std::size_t i = 0; i < bound; ++i) {
        if (x.at(i) != y.at(i)) return x.at(i) <=> y.at(i);
    }
    return std::strong_ordering::equal;
}

Rational epsilon(const BinaryCode& code) {
    const Rational head(bits_value(code.preperiod()));
    const Rational cycle(bits_value(code.period()));
    const Rational tail = cycle / (pow2_rational(code.period().size()) - 1);
    return (head + tail) / pow2_rational(code.preperiod().size());
}

BinaryCode Pi(const SymbolicPoint& point) {
    const Word& pre = point.preperiod();
    const Word& per = point.period();
    std::string head = point.at(0) == L::t3el ? "0" : "";
    for (std::size_t i = 0; i < pre.size(); ++i) head += edge_label(point.at(i), point.at(i + 1));
    std::string cycle;
    for (std::size_t j = 0; j < per.size(); ++j) cycle += edge_label(per[j], per[(j + 1) % per.size()]);
    return BinaryCode(std::move(head), std::move(cycle));
}

std::vector<SymbolicPoint> Pi_inverse(const BinaryCode& code) {
    const std::size_t pre = code.preperiod().size();
    const std::size_t per = code.period().size();
    const std::size_t positions = pre + per;
    auto normalize = [&](std::size_t pos) { return pos < positions ? pos : pre + (pos - pre) % per; };
    auto state_of = [&](Letter x, std::size_t pos) { return static_cast<std::size_t>(index_of(x)) * positions + pos; };
    const std::size_t state_count = kLetterCount * positions;

    // Transitions of the product of the graph with the code positions.
    std::vector<std::vector<std::size_t>> next(state_count);
    for (Letter x : kAllLetters) {
        for (std::size_t pos = 0; pos < positions; ++pos) {
            for (const Edge& e : successors(x)) {
                bool matches = true;
                for (std::size_t j = 0; j < e.label.size() && matches; ++j) matches = code.at(pos + j) == e.label[j];
                if (matches) next[state_of(x, pos)].push_back(state_of(e.to, normalize(pos + e.label.size())));
            }
        }
    }
    // Keep the states that start an infinite path.
    std::vector<bool> live(state_count, true);
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t s = 0; s < state_count; ++s) {
            if (!live[s]) continue;
            const bool any = std::any_of(next[s].begin(), next[s].end(), [&](std::size_t t) { return live[t]; });
            if (!any) {
                live[s] = false;
                changed = true;
            }
        }
    }
    std::vector<std::size_t> starts;
    if (code.at(0) == '0') starts.push_back(state_of(L::t3el, normalize(1)));
    starts.push_back(state_of(L::t0e, 0));

    constexpr std::size_t kMaxPreimages = 8;
    std::vector<SymbolicPoint> found;
    std::vector<std::size_t> path;
    auto letter_at = [&](std::size_t s) { return kAllLetters[s / positions]; };
    auto explore = [&](auto&& self, std::size_t s) -> void {
        auto loop = std::find(path.begin(), path.end(), s);
        if (loop != path.end()) {
            Word preperiod;
            Word period;
            for (auto it = path.begin(); it != path.end(); ++it) {
                (it < loop ? preperiod : period).push_back(letter_at(*it));
            }
            SymbolicPoint point(std::move(preperiod), std::move(period));
            if (std::find(found.begin(), found.end(), point) == found.end()) found.push_back(std::move(point));
            if (found.size() > kMaxPreimages) throw std::logic_error("too many preimages of " + code.str());
            return;
        }
        path.push_back(s);
        for (std::size_t t : next[s]) {
            if (live[t]) self(self, t);
        }
        path.pop_back();
    };
    for (std::size_t s : starts) {
        if (live[s]) explore(explore, s);
    }
    std::sort(found.begin(), found.end(),
              [](const SymbolicPoint& a, const SymbolicPoint& b) { return compare_weak(a, b) == Order::less; });
    return found;
}

Rational ids(const SymbolicPoint& point) { return epsilon(Pi(point)); }

Rational ids_of_zero(const BandCode& code) {
    Rational sum = 0;
    for (int i = 0; i < code.level(); ++i) {
        if (code[i] == '1') sum += 1 / pow2_rational(static_cast<std::size_t>(i + 1));
    }
    return sum + 1 / pow2_rational(static_cast<std::size_t>(code.level() + 1));
}

std::string format_rational(const Rational& value) {
    std::ostringstream out;
    out << boost::multiprecision::numerator(value);
    if (boost::multiprecision::denominator(value) != 1) out << "/" << boost::multiprecision::denominator(value);
    return out.str();
}

Rational parse_rational(std::string_view text) {
    try {
        const auto slash = text.find('/');
        using boost::multiprecision::cpp_int;
        if (slash == std::string_view::npos) return Rational(cpp_int(std::string(text)));
        const cpp_int num(std::string(text.substr(0, slash)));
        const cpp_int den(std::string(text.substr(slash + 1)));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rational(num, den);
    } catch (const std::runtime_error&) {
        throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    }
}

std::string_view tail_class_name(TailClass c) {
    switch (c) {
        case TailClass::El_o: return "El_o";
        case TailClass::Er_o: return "Er_o";
        case TailClass::El_e: return "El_e";
        case TailClass::Er_e: return "Er_e";
        case TailClass::Etl: return "Etl";
        case TailClass::Etr: return "Etr";
        case TailClass::F: return "F";
        case TailClass::other: return "other";
    }
    return "other";
}

TailClass tail_class(const SymbolicPoint& point) {
    const Word& per = point.period();
    if (per.size() != 2) return TailClass::other;
    auto is = [&](Letter x, Letter y) { return (per[0] == x && per[1] == y) || (per[0] == y && per[1] == x); };
    if (is(L::t2o, L::t1e)) return TailClass::El_o;
    if (is(L::t0o, L::t3el)) return TailClass::Er_o;
    if (is(L::t0e, L::t3or)) return TailClass::El_e;
    if (is(L::t2e, L::t1o)) return TailClass::Er_e;
    if (is(L::t0o, L::t3er)) return TailClass::Etl;
    if (is(L::t0e, L::t3ol)) return TailClass::Etr;
    if (is(L::t2e, L::t2o)) return TailClass::F;
    return TailClass::other;
}

SymbolicPoint gap_partner(const SymbolicPoint& point) {
    const auto k = static_cast<std::ptrdiff_t>(point.preperiod().size());
    const Letter first = point.period().front();
    auto head = [&](std::ptrdiff_t n) { return point.prefix(static_cast<std::size_t>(n)); };
    switch (tail_class(point)) {
        case TailClass::El_o: {
            if (first == L::t2o) {
                expect_letter(point, k - 1, {L::t2e});
                const Letter before = expect_letter(point, k - 2, {L::t1o, L::t2o});
                return SymbolicPoint(concat(head(k - 1), {before == L::t1o ? L::t3er : L::t3el}), {L::t0o, L::t3el});
            }
            expect_letter(point, k - 1, {L::t0o});
            return SymbolicPoint(concat(head(k), {L::t3er}), {L::t0o, L::t3el});
        }
        case TailClass::Er_e: {
            if (first == L::t2e) {
                expect_letter(point, k - 1, {L::t2o});
                const Letter before = expect_letter(point, k - 2, {L::t1e, L::t2e});
                return SymbolicPoint(concat(head(k - 1), {before == L::t1e ? L::t3ol : L::t3or}), {L::t0e, L::t3or});
            }
            expect_letter(point, k - 1, {L::t0e});
            return SymbolicPoint(concat(head(k), {L::t3ol}), {L::t0e, L::t3or});
        }
        case TailClass::Etl: {
            if (first == L::t3er) {
                expect_letter(point, k - 1, {L::t1o});
                return SymbolicPoint(concat(head(k - 1), {L::t3or}), {L::t0e, L::t3ol});
            }
            expect_letter(point, k - 1, {L::t3el});
            if (k - 1 == 0) return SymbolicPoint({}, {L::t0e, L::t3ol});
            return SymbolicPoint(concat(head(k - 1), {L::t1e, L::t3ol}), {L::t0e, L::t3ol});
        }
        default: throw NotGapEdge("not a left gap edge: " + point.str());
    }
}

SymbolicPoint gap_partner_inverse(const SymbolicPoint& point) {
    const auto k = static_cast<std::ptrdiff_t>(point.preperiod().size());
    const Letter first = point.period().front();
    auto head = [&](std::ptrdiff_t n) { return point.prefix(static_cast<std::size_t>(n)); };
    switch (tail_class(point)) {
        case TailClass::Er_o: {
            if (k == 0 || point == omega_min()) throw NotGapEdge("the minimum is not a gap edge");
            if (first == L::t3el) {
                expect_letter(point, k - 1, {L::t2o});
                return SymbolicPoint(concat(head(k), {L::t2e}), {L::t2o, L::t1e});
            }
            expect_letter(point, k - 1, {L::t3er});
            const Letter before = expect_letter(point, k - 2, {L::t1o, L::t0o});
            return SymbolicPoint(concat(head(k - 1), {before == L::t1o ? L::t2e : L::t1e}), {L::t2o, L::t1e});
        }
        case TailClass::El_e: {
            if (k == 0) throw NotGapEdge("the maximum is not a gap edge");
            if (first == L::t3or) {
                expect_letter(point, k - 1, {L::t2e});
                return SymbolicPoint(concat(head(k), {L::t2o}), {L::t2e, L::t1o});
            }
            expect_letter(point, k - 1, {L::t3ol});
            const Letter before = expect_letter(point, k - 2, {L::t1e, L::t0e});
            return SymbolicPoint(concat(head(k - 1), {before == L::t1e ? L::t2o : L::t1o}), {L::t2e, L::t1o});
        }
        case TailClass::Etr: {
            if (k == 0) return SymbolicPoint({L::t3el}, {L::t0o, L::t3er});
            if (first == L::t0e) {
                expect_letter(point, k - 1, {L::t3or});
                return SymbolicPoint(concat(head(k - 1), {L::t1o, L::t3er}), {L::t0o, L::t3er});
            }
            expect_letter(point, k - 1, {L::t1e});
            return SymbolicPoint(concat(head(k - 1), {L::t3el}), {L::t0o, L::t3er});
        }
        default: throw NotGapEdge("not a right gap edge: " + point.str());
    }
}

SymbolicPoint zero_coding(const BandCode& code) {
    const bool odd = code.level() % 2 == 1;
    const BinaryCode target(code.str() + (odd ? "0" : "1"), odd ? "1" : "0");
    const TailClass wanted = odd ? TailClass::El_o : TailClass::Er_e;
    for (const auto& point : Pi_inverse(target)) {
        if (tail_class(point) == wanted) return point;
    }
    throw std::logic_error("no zero coding for sigma=" + code.display());
}

SymbolicPoint max_extension(std::span<const Letter> word) { return extreme_extension(word, true); }
SymbolicPoint min_extension(std::span<const Letter> word) { return extreme_extension(word, false); }

std::vector<Word> admissible_words(int level) {
    std::vector<Word> words{{L::t3el}, {L::t0e}};
    for (int n = 1; n <= level; ++n) {
        std::vector<Word> next;
        for (const Word& w : words) {
            for (const Edge& e : successors(w.back())) next.push_back(concat(w, {e.to}));
        }
        words = std::move(next);
    }
    return words;
}

bool is_dyadic(const Rational& value) {
    auto den = boost::multiprecision::denominator(value);
    while (den % 2 == 0) den /= 2;
    return den == 1;
}

bool is_third_dyadic(const Rational& value) {
    if (value <= 0 || value >= 1) return false;
    auto den = boost::multiprecision::denominator(value);
    while (den % 2 == 0) den /= 2;
    return den == 3;
}

bool in_F_labels(const Rational& value) {
    if (!is_third_dyadic(value)) return false;
    const auto points = Pi_inverse(BinaryCode::expansion(value));
    return std::any_of(points.begin(), points.end(),
                       [](const SymbolicPoint& p) { return tail_class(p) == TailClass::F; });
}

}  // namespace pdspec
