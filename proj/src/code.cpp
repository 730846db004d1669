#include "pdspec/code.hpp"

#include <stdexcept>

namespace pdspec {

BandCode::BandCode(std::string_view bits) : bits_(bits) {
    if (bits_.find_first_not_of("01") != std::string::npos) {
        throw std::invalid_argument("band code must consist of 0 and 1: '" + bits_ + "'");
    }
}

BandCode BandCode::from_rank(int level, std::uint64_t rank) {
    std::string bits(static_cast<std::size_t>(level), '0');
    for (int i = level - 1; i >= 0; --i) {
        bits[static_cast<std::size_t>(i)] = (rank & 1U) ? '1' : '0';
        rank >>= 1U;
    }
    return BandCode(std::move(bits), 0);
}

std::uint64_t BandCode::rank() const {
    std::uint64_t r = 0;
    for (char c : bits_) r = (r << 1U) | (c == '1' ? 1U : 0U);
    return r;
}

BandCode BandCode::successor() const { return from_rank(level(), rank() + 1); }
BandCode BandCode::predecessor() const { return from_rank(level(), rank() - 1); }

int compare_zero_order(const BandCode& a, const BandCode& b) {
    auto symbol = [](const BandCode& c, int i) {
        if (i >= c.level()) return 1;  // empty symbol sits between 0 and 1
        return c[i] == '0' ? 0 : 2;
    };
    const int n = std::max(a.level(), b.level());
    for (int i = 0; i < n; ++i) {
        const int x = symbol(a, i);
        const int y = symbol(b, i);
        if (x != y) return x < y ? -1 : 1;
    }
    return 0;
}

PrefixNeighbours prefix_neighbours(const BandCode& code) {
    PrefixNeighbours out;
    for (int k = code.level() - 1; k >= 0; --k) {
        if (code[k] == '1' && !out.has_lower) {
            out.has_lower = true;
            out.lower = code.prefix(k);
        }
        if (code[k] == '0' && !out.has_upper) {
            out.has_upper = true;
            out.upper = code.prefix(k);
        }
        if (out.has_lower && out.has_upper) break;
    }
    return out;
}

bool endpoint_in_R(const BandCode& code, Side side) {
    const std::string& s = code.str();
    const char strip = side == Side::left ? '0' : '1';
    const auto pos = s.find_last_not_of(strip);
    if (pos == std::string::npos) return false;
    const std::size_t prefix_length = pos;
    return side == Side::left ? prefix_length % 2 == 0 : prefix_length % 2 == 1;
}

std::vector<BandCode> all_codes(int level) {
    std::vector<BandCode> out;
    const std::uint64_t count = std::uint64_t{1} << static_cast<unsigned>(level);
    out.reserve(count);
    for (std::uint64_t r = 0; r < count; ++r) out.push_back(BandCode::from_rank(level, r));
    return out;
}

}  // namespace pdspec
