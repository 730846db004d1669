#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace pdspec {

// Finite word over {0,1} naming a band or zero; the empty word is level 0.
class BandCode {
public:
    BandCode() = default;
    // Throws std::invalid_argument on characters other than '0' and '1'.
    explicit BandCode(std::string_view bits);
    static BandCode from_rank(int level, std::uint64_t rank);

    const std::string& str() const { return bits_; }
    int level() const { return static_cast<int>(bits_.size()); }
    bool empty() const { return bits_.empty(); }
    char operator[](int i) const { return bits_[static_cast<std::size_t>(i)]; }
    char last() const { return bits_.back(); }

    // Left-to-right rank of the band among the 2^n bands of its level.
    std::uint64_t rank() const;
    BandCode prefix(int k) const { return BandCode(bits_.substr(0, static_cast<std::size_t>(k)), 0); }
    BandCode operator+(std::string_view suffix) const { return BandCode(bits_ + std::string(suffix)); }
    bool is_prefix_of(const BandCode& other) const { return other.bits_.compare(0, bits_.size(), bits_) == 0; }
    bool all(char c) const { return bits_.find_first_not_of(c) == std::string::npos; }
    // Neighbours of equal length; callers ensure they exist.
    BandCode successor() const;
    BandCode predecessor() const;

    friend bool operator==(const BandCode&, const BandCode&) = default;
    // Plain lexicographic order on strings, used only for containers.
    friend std::strong_ordering operator<=>(const BandCode& a, const BandCode& b) { return a.bits_ <=> b.bits_; }

    // Rendering of the empty code as a visible token.
    std::string display() const { return bits_.empty() ? std::string("()") : bits_; }

private:
    BandCode(std::string bits, int) : bits_(std::move(bits)) {}
    std::string bits_;
};

// Order of the zeros: pad the shorter code with the empty symbol and compare
// lexicographically with 0 < empty < 1. Returns <0, 0, >0.
int compare_zero_order(const BandCode& a, const BandCode& b);

// Longest proper prefixes bracketing the zero of the code among all zeros of
// strictly lower levels: the lower neighbour is the longest prefix followed by
// a 1, the upper neighbour the longest prefix followed by a 0.
struct PrefixNeighbours {
    bool has_lower = false;
    BandCode lower;
    bool has_upper = false;
    BandCode upper;
};
PrefixNeighbours prefix_neighbours(const BandCode& code);

enum class Side { left, right };

// Whether the given endpoint of B_code belongs to the cumulative zero set of
// the previous level, decided on the code alone.
bool endpoint_in_R(const BandCode& code, Side side);

// Every code of the given level in rank order.
std::vector<BandCode> all_codes(int level);

}  // namespace pdspec
