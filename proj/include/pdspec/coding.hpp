#pragma once

#include "pdspec/code.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pdspec {

using Rational = boost::multiprecision::cpp_rational;

// Band types. The digit counts endpoints met by earlier zeros (3 marks a band
// of the next level); the suffix records parity and, for 3, the side.
enum class Letter : std::uint8_t { t0e, t0o, t1e, t1o, t2e, t2o, t3el, t3er, t3ol, t3or };
constexpr int kLetterCount = 10;
constexpr std::array<Letter, kLetterCount> kAllLetters{Letter::t0e,  Letter::t0o,  Letter::t1e,  Letter::t1o,
                                                       Letter::t2e,  Letter::t2o,  Letter::t3el, Letter::t3er,
                                                       Letter::t3ol, Letter::t3or};

std::string_view letter_name(Letter letter);
// Accepts "0_e", "3_ol" and the like; throws std::invalid_argument.
Letter parse_letter(std::string_view text);

struct Edge {
    Letter to;
    std::string_view label;  // binary suffix appended to the band code
};

// Out-edges of a type in increasing sibling order.
std::span<const Edge> successors(Letter from);
bool has_edge(Letter from, Letter to);
// Throws std::invalid_argument when there is no such edge.
std::string_view edge_label(Letter from, Letter to);
bool is_start_letter(Letter letter);

// Strict parts of the two orders on letters.
bool weak_less(Letter x, Letter y);
bool strong_less(Letter x, Letter y);

using Word = std::vector<Letter>;

std::string format_word(std::span<const Letter> word);
// Space or comma separated letters; throws std::invalid_argument.
Word parse_word(std::string_view text);
bool admissible(std::span<const Letter> word);

enum class Order { less, equal, greater, incomparable };

// Orders on finite words of equal length.
Order compare_weak(std::span<const Letter> x, std::span<const Letter> y);
Order compare_strong(std::span<const Letter> x, std::span<const Letter> y);

// Binary code of the band indexed by an admissible word. Throws
// std::invalid_argument on inadmissible words.
BandCode pi_star(std::span<const Letter> word);

// Eventually periodic admissible infinite word, kept in canonical form:
// primitive period and shortest preperiod.
class SymbolicPoint {
public:
    // Throws std::invalid_argument unless the infinite word is admissible and
    // the period is nonempty.
    SymbolicPoint(Word preperiod, Word period);
    static SymbolicPoint parse(std::string_view text);  // "w (p)" with the period in parentheses

    const Word& preperiod() const { return preperiod_; }
    const Word& period() const { return period_; }
    Letter at(std::size_t i) const;
    Word prefix(std::size_t length) const;
    std::string str() const;

    friend bool operator==(const SymbolicPoint&, const SymbolicPoint&) = default;

private:
    Word preperiod_;
    Word period_;
};

Order compare_weak(const SymbolicPoint& x, const SymbolicPoint& y);
Order compare_strong(const SymbolicPoint& x, const SymbolicPoint& y);

SymbolicPoint omega_min();  // 3_el (0_o 3_el)^inf
SymbolicPoint omega_max();  // (0_e 3_or)^inf

// Eventually periodic binary word in canonical form.
class BinaryCode {
public:
    // Throws std::invalid_argument on non-binary input or an empty period.
    BinaryCode(std::string preperiod, std::string period);
    static BinaryCode parse(std::string_view text);  // "0110(01)"
    // Binary expansion of a rational in [0,1); dyadic values end in 0^inf.
    static BinaryCode expansion(const Rational& value);

    const std::string& preperiod() const { return preperiod_; }
    const std::string& period() const { return period_; }
    char at(std::size_t i) const;
    std::string str() const;

    friend bool operator==(const BinaryCode&, const BinaryCode&) = default;

private:
    std::string preperiod_;
    std::string period_;
};

// Lexicographic comparison of the infinite words.
std::strong_ordering compare(const BinaryCode& x, const BinaryCode& y);

Rational epsilon(const BinaryCode& code);
BinaryCode Pi(const SymbolicPoint& point);
// Every point with the given code (one, or two for collapsed gap edges).
std::vector<SymbolicPoint> Pi_inverse(const BinaryCode& code);

Rational ids(const SymbolicPoint& point);
Rational ids_of_zero(const BandCode& code);
std::string format_rational(const Rational& value);  // "p/q" in lowest terms
Rational parse_rational(std::string_view text);      // "p/q" or "p"

// Classes of eventually 2-periodic points, named by their periodic tails.
enum class TailClass { El_o, Er_o, El_e, Er_e, Etl, Etr, F, other };
std::string_view tail_class_name(TailClass c);
TailClass tail_class(const SymbolicPoint& point);

class NotGapEdge : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Partner of a gap edge across its gap, and the inverse maps.
SymbolicPoint gap_partner(const SymbolicPoint& point);
SymbolicPoint gap_partner_inverse(const SymbolicPoint& point);

// Coding of the zero of h_n named by the code: a tail-(2_o1_e) point for odd
// n and a tail-(2_e1_o) point for even n.
SymbolicPoint zero_coding(const BandCode& code);

// Largest and smallest infinite extensions of a finite admissible word.
SymbolicPoint max_extension(std::span<const Letter> word);
SymbolicPoint min_extension(std::span<const Letter> word);

// All admissible words of the given level, in increasing weak order.
std::vector<Word> admissible_words(int level);

bool is_dyadic(const Rational& value);
// Dyadic divided by 3 but not dyadic.
bool is_third_dyadic(const Rational& value);
// Whether the value is the IDS of some point with tail (2_e 2_o).
bool in_F_labels(const Rational& value);

}  // namespace pdspec
