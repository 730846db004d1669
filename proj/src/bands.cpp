#include "pdspec/bands.hpp"

#include "pdspec/parallel.hpp"

#include <map>
#include <memory>

namespace pdspec {

Real target_width(int level, mpfr_prec_t bits) { return pow2(-(2L * level + 20), bits); }

namespace {

// Isolates the root of f = h_n - target between lo and hi, where f has sign
// sign_lo just right of lo and the opposite sign just left of hi. Newton steps
// are taken when they stay inside the bracket and make progress; the result
// is certified by evaluating the sign of f at both ends of the enclosure.
Enclosure isolate(TraceKernel& kernel, int n, long target, int sign_lo, Real lo, Real hi, Real x,
                  const Real& max_width) {
    const mpfr_prec_t p = kernel.bits();
    const Real one(1L, p);
    Real f(p);
    Real df(p);
    auto eval = [&](const Real& at) {
        kernel.eval(at, n, f, &df);
        f -= target;
        return f.sign();
    };
    auto tiny = [&](const Real& at) { return ldexp(max(abs(at), one), -(static_cast<long>(p) - 20)); };
    // Newton steps this short leave the iterate within reach of certification.
    auto near = [&](const Real& at) { return ldexp(max(abs(at), one), -(static_cast<long>(p) - 32)); };
    auto certify = [&](const Real& c, int doublings = 48) -> std::optional<Enclosure> {
        Real delta = ldexp(max(abs(c), one), -(static_cast<long>(p) - 24));
        for (int i = 0; i < doublings && delta * 2L <= max_width; ++i, delta *= 2L) {
            Real l = c - delta;
            Real h = c + delta;
            if (eval(l) == sign_lo && eval(h) == -sign_lo) return Enclosure{std::move(l), std::move(h)};
        }
        return std::nullopt;
    };

    // A root sitting on a bracket end (a band endpoint shared with an earlier
    // zero) shows up as a missing or vanishing sign there.
    constexpr int kEndDoublings = 6;
    if (eval(lo) != sign_lo) {
        if (auto e = certify(lo, kEndDoublings)) return *e;
    }
    if (eval(hi) != -sign_lo) {
        if (auto e = certify(hi, kEndDoublings)) return *e;
    }

    // Newton steps are kept while they stay in the bracket and at least halve
    // the previous step; otherwise the bracket is bisected.
    Real previous_step = hi - lo;
    const int max_iterations = 8 * static_cast<int>(p) + 200;
    for (int iter = 0; iter < max_iterations; ++iter) {
        const int s = eval(x);
        if (s == 0) {
            if (auto e = certify(x)) return *e;
            throw PrecisionExhausted("bracket failure: vanishing value without certified sign change");
        }
        if (s == sign_lo) {
            lo = x;
        } else {
            hi = x;
        }
        if (hi - lo <= tiny(x)) {
            Enclosure mid_point{lo, hi};
            if (auto e = certify(mid_point.mid())) return *e;
            throw PrecisionExhausted("bracket failure: sign change not certified at level " + std::to_string(n));
        }
        Real next(p);
        bool newton = !df.is_zero() && df.is_finite() && f.is_finite();
        if (newton) {
            next = x - f / df;
            // A root at the bracket end shows up as a short step out of the bracket.
            if (abs(next - x) <= near(x)) {
                if (auto e = certify(next)) return *e;
            }
            // Overshooting a bracket end may mean the root sits on that end.
            if (!(lo < next)) {
                if (auto e = certify(lo, kEndDoublings)) return *e;
            } else if (!(next < hi)) {
                if (auto e = certify(hi, kEndDoublings)) return *e;
            }
            newton = lo < next && next < hi && abs(next - x) * 2L <= previous_step;
        }
        if (newton) {
            previous_step = abs(next - x);
        } else {
            next = Enclosure{lo, hi}.mid();
            previous_step = hi - lo;
        }
        x = std::move(next);
    }
    throw PrecisionExhausted("bracket failure: isolation did not converge at level " + std::to_string(n));
}

// A point beyond every band of level n on the given side, where h_n > 2.
Real outer_bound(TraceKernel& kernel, int n, const ModelParams& params, int direction) {
    const mpfr_prec_t p = params.precision_bits;
    Real x = (params.lambda + 3L) * static_cast<long>(direction);
    Real value(p);
    for (int i = 0; i < 64; ++i) {
        kernel.eval(x, n, value, nullptr);
        if (value > 2.0) return x;
        x *= 2L;
    }
    throw PrecisionExhausted("bracket failure: no outer bound for level " + std::to_string(n));
}

struct Slot {
    Real lo;
    Real hi;
};

int decreasing_sign(const BandCode& code) { return code.last() == '0' ? +1 : -1; }

// Re-isolates the root of h_n - target inside a certified enclosure.
Enclosure refine_root(const Enclosure& e, int n, long target, int sign_lo, TraceKernel& kernel) {
    const mpfr_prec_t bits = kernel.bits();
    if (e.lo.bits() >= bits && e.hi.bits() >= bits) return e;
    const Real lo(e.lo, bits);
    const Real hi(e.hi, bits);
    if (lo == hi) return Enclosure{lo, hi};
    return isolate(kernel, n, target, sign_lo, lo, hi, Enclosure{lo, hi}.mid(), target_width(n, bits));
}

Enclosure refine_zero(const ZeroPoint& zero, const ModelParams& wide, TraceKernel& kernel) {
    if (zero.owner.level() == 0) return Enclosure::point(wide.lambda);
    return refine_root(zero.value, zero.owner.level(), 0, decreasing_sign(zero.owner), kernel);
}

// Slot bounds at the working width of kernel: refined earlier zeros, or outer
// points beyond every band.
Slot make_slot(int n, const ZeroPoint* lower, const ZeroPoint* upper, TraceKernel& kernel, const ModelParams& wide) {
    return Slot{lower ? refine_zero(*lower, wide, kernel).mid() : outer_bound(kernel, n, wide, -1),
                upper ? refine_zero(*upper, wide, kernel).mid() : outer_bound(kernel, n, wide, +1)};
}

mpfr_prec_t start_bits(const ModelParams& params, const ZeroPoint* lower, const ZeroPoint* upper) {
    mpfr_prec_t bits = params.precision_bits;
    if (lower) bits = std::max(bits, lower->value.lo.bits());
    if (upper) bits = std::max(bits, upper->value.lo.bits());
    return bits;
}

// Enclosures narrower than the band by this factor make coincidence and
// separation of endpoints unambiguous.
constexpr long kSeparationBits = 24;

bool well_separated(const Enclosure& x, const Enclosure& y) {
    if (!x.certainly_below(y)) return false;
    const Real gap = y.lo - x.hi;
    return ldexp(max(x.width(), y.width()), kSeparationBits) < gap;
}

// Runs attempt(kernel, params) at widths start, 2 start, ... until it returns
// a value, treating precision failures as a request for more bits.
template <typename Attempt>
auto escalate(const ModelParams& params, mpfr_prec_t start, Attempt&& attempt) {
    for (mpfr_prec_t bits = start;; bits *= 2) {
        const ModelParams wide = widened(params, bits);
        TraceKernel kernel(wide.lambda, bits);
        try {
            if (auto result = attempt(kernel, wide)) return *result;
        } catch (const PrecisionExhausted&) {
            if (bits * 2 > kMaxBandBits) throw;
        }
        if (bits * 2 > kMaxBandBits) throw PrecisionExhausted("bracket failure: width limit reached");
    }
}

Band level0_band(const ModelParams& params, mpfr_prec_t bits) {
    // Two guard bits more than lambda keep lambda +- 2 exact.
    const Real lambda(params.lambda, bits);
    const Real wide(params.lambda, params.lambda.bits() + 4);
    return Band{BandCode(), Enclosure::point(wide - 2L), Enclosure::point(wide + 2L), Enclosure::point(lambda)};
}

}  // namespace

ModelParams widened(const ModelParams& params, mpfr_prec_t bits) {
    if (bits == params.precision_bits) return params;
    return ModelParams{params.lambda_text, Real(params.lambda, bits), bits};
}

Band solve_band(const BandCode& code, const ZeroPoint* lower, const ZeroPoint* upper, const ModelParams& params) {
    const int n = code.level();
    if (n == 0) return level0_band(params, params.precision_bits);
    return escalate(params, start_bits(params, lower, upper),
                    [&](TraceKernel& kernel, const ModelParams& wide) -> std::optional<Band> {
                        const Slot slot = make_slot(n, lower, upper, kernel, wide);
                        const Real width = target_width(n, wide.precision_bits);
                        const int s = decreasing_sign(code);
                        // Newton converges quickly from a slot bound that is also a band endpoint.
                        Real start = Enclosure{slot.lo, slot.hi}.mid();
                        if (lower && endpoint_in_R(code, Side::left)) {
                            start = slot.lo;
                        } else if (upper && endpoint_in_R(code, Side::right)) {
                            start = slot.hi;
                        }
                        Enclosure z = isolate(kernel, n, 0, s, slot.lo, slot.hi, start, width);
                        // Decreasing bands run from +2 down to -2, increasing ones the other way.
                        const long left_target = s > 0 ? 2 : -2;
                        Enclosure a = isolate(kernel, n, left_target, s, slot.lo, z.lo, z.lo, width);
                        Enclosure b = isolate(kernel, n, -left_target, s, z.hi, slot.hi, z.hi, width);
                        if (!well_separated(a, z) || !well_separated(z, b)) return std::nullopt;
                        return Band{code, std::move(a), std::move(b), std::move(z)};
                    });
}

Band refine_band(const Band& band, mpfr_prec_t bits, const ModelParams& params) {
    const int n = band.code.level();
    if (n == 0) return level0_band(params, bits);
    const ModelParams wide = widened(params, bits);
    TraceKernel kernel(wide.lambda, bits);
    const int s = decreasing_sign(band.code);
    const long left_target = s > 0 ? 2 : -2;
    return Band{band.code, refine_root(band.a, n, left_target, s, kernel),
                refine_root(band.b, n, -left_target, s, kernel), refine_root(band.z, n, 0, s, kernel)};
}

BandTables::BandTables(ModelParams params) : params_(std::move(params)) {
    LevelTable t;
    t.level = 0;
    t.bands.push_back(solve_band(BandCode(), nullptr, nullptr, params_));
    t.cumulative.push_back(BandCode());
    levels_.push_back(std::move(t));
}

BandTables BandTables::from_levels(ModelParams params, std::vector<LevelTable> levels) {
    BandTables tables(std::move(params));
    if (!levels.empty()) tables.levels_ = std::move(levels);
    return tables;
}

void BandTables::extend(int level, unsigned threads) {
    while (top() < level) {
        add_level(threads);
        propagate_widths(threads);
    }
}

void BandTables::add_level(unsigned threads) {
    const LevelTable& prev = levels_.back();
    const int n = prev.level + 1;
    const std::size_t count = std::size_t{1} << static_cast<unsigned>(n);
    LevelTable t;
    t.level = n;
    t.bands.resize(count);
    parallel_for(count, threads, [&](std::size_t begin, std::size_t end, unsigned) {
        for (std::size_t r = begin; r < end; ++r) {
            std::optional<ZeroPoint> lower;
            std::optional<ZeroPoint> upper;
            if (r >= 1) lower = zero_point(prev.cumulative[r - 1]);
            if (r + 1 < count) upper = zero_point(prev.cumulative[r]);
            t.bands[r] = solve_band(BandCode::from_rank(n, r), lower ? &*lower : nullptr, upper ? &*upper : nullptr,
                                    params_);
        }
    });
    t.cumulative.reserve(2 * count - 1);
    for (std::size_t r = 0; r < count; ++r) {
        t.cumulative.push_back(t.bands[r].code);
        if (r + 1 < count) t.cumulative.push_back(prev.cumulative[r]);
    }
    levels_.push_back(std::move(t));
}

void BandTables::propagate_widths(unsigned threads) {
    for (int m = top() - 1; m >= 0; --m) {
        LevelTable& table = levels_[static_cast<std::size_t>(m)];
        const LevelTable& below = levels_[static_cast<std::size_t>(m) + 1];
        parallel_for(table.bands.size(), threads, [&](std::size_t begin, std::size_t end, unsigned) {
            for (std::size_t r = begin; r < end; ++r) {
                Band& band = table.bands[r];
                const mpfr_prec_t need =
                    std::max({band.bits(), below.bands[2 * r].bits(), below.bands[2 * r + 1].bits()});
                if (need > band.bits()) band = refine_band(band, need, params_);
            }
        });
    }
}

const Band& BandAtlas::band(const BandCode& code) {
    if (code.level() <= tables_.top()) return tables_.band(code);
    if (auto it = extra_.find(code); it != extra_.end()) return it->second;
    const PrefixNeighbours nb = prefix_neighbours(code);
    std::optional<ZeroPoint> lower;
    std::optional<ZeroPoint> upper;
    if (nb.has_lower) lower = ZeroPoint{band(nb.lower).z, nb.lower};
    if (nb.has_upper) upper = ZeroPoint{band(nb.upper).z, nb.upper};
    Band solved = solve_band(code, lower ? &*lower : nullptr, upper ? &*upper : nullptr, tables_.params());
    return extra_.emplace(code, std::move(solved)).first->second;
}

namespace {

// Interval relations with enclosure semantics. "At most" means not certainly
// greater; strict relations require certified separation.
bool at_most(const Enclosure& x, const Enclosure& y) { return !(y.hi < x.lo); }
bool below(const Enclosure& x, const Enclosure& y) { return x.certainly_below(y); }

}  // namespace

bool contained_in(const Band& inner, const Band& outer) {
    return at_most(outer.a, inner.a) && at_most(inner.b, outer.b);
}
bool interior_contained_in(const Band& inner, const Band& outer) {
    return below(outer.a, inner.a) && below(inner.b, outer.b);
}
bool weakly_precedes(const Band& x, const Band& y) { return below(x.a, y.a) && below(x.b, y.b); }
bool strictly_precedes(const Band& x, const Band& y) { return below(x.b, y.a); }

namespace {

class Levels {
public:
    explicit Levels(const BandTables& tables) : tables_(tables) {}
    const Band& operator()(const BandCode& code) const { return tables_.band(code); }
    const Band& operator()(const std::string& bits) const { return tables_.band(BandCode(bits)); }

private:
    const BandTables& tables_;
};

std::string name_of(const BandCode& c) { return "sigma=" + c.display(); }

void check_tech1(Report& r, const Levels& band, const BandCode& s) {
    const int m = s.level();
    const Band& B = band(s);
    const Band& B0 = band(s + "0");
    const Band& B1 = band(s + "1");
    const bool a_in = m >= 1 && endpoint_in_R(s, Side::left);
    const bool b_in = m >= 1 && endpoint_in_R(s, Side::right);
    const std::string tag = name_of(s);
    if (m % 2 == 1) {
        r.check("tech-1 odd: right end of child 0 is the zero", same_point(B0.b, B.z), tag);
        r.check("tech-1 odd: child 0 inside parent", contained_in(B0, B), tag);
        r.check("tech-1 odd: left end of child 1 not a previous zero", !endpoint_in_R(s + "1", Side::left), tag);
        if (a_in) {
            r.check("tech-1 odd: child 0 shares left end", same_point(B0.a, B.a), tag);
        } else {
            r.check("tech-1 odd: child 0 left end inside", below(B.a, B0.a), tag);
        }
        if (b_in) {
            r.check("tech-1 odd: child 1 inside right half", below(B.z, B1.a) && at_most(B1.b, B.b), tag);
        } else {
            r.check("tech-1 odd: right half precedes child 1", below(B.z, B1.a) && below(B.b, B1.b), tag);
        }
    } else {
        r.check("tech-1 even: left end of child 1 is the zero", same_point(B1.a, B.z), tag);
        r.check("tech-1 even: child 1 inside parent", contained_in(B1, B), tag);
        r.check("tech-1 even: right end of child 0 not a previous zero", !endpoint_in_R(s + "0", Side::right), tag);
        if (b_in) {
            r.check("tech-1 even: child 1 shares right end", same_point(B1.b, B.b), tag);
        } else {
            r.check("tech-1 even: child 1 right end inside", below(B1.b, B.b), tag);
        }
        if (a_in) {
            r.check("tech-1 even: child 0 inside left half", at_most(B.a, B0.a) && below(B0.b, B.z), tag);
        } else {
            r.check("tech-1 even: child 0 precedes left half", below(B0.a, B.a) && below(B0.b, B.z), tag);
        }
    }
    r.check("tech-1: children disjoint", strictly_precedes(B0, B1), tag);
    if (m >= 1 && !s.all('0')) {
        r.check("tech-1: predecessor before child 0", strictly_precedes(band(s.predecessor()), B0), tag);
    }
    if (m >= 1 && !s.all('1')) {
        r.check("tech-1: child 1 before successor", strictly_precedes(B1, band(s.successor())), tag);
    }
}

void check_tech2(Report& r, const Levels& band, const BandCode& s) {
    const int m = s.level();
    const Band& B = band(s);
    const Band& B0 = band(s + "0");
    const Band& B1 = band(s + "1");
    const Band& B00 = band(s + "00");
    const Band& B01 = band(s + "01");
    const Band& B10 = band(s + "10");
    const Band& B11 = band(s + "11");
    const bool a_in = m >= 1 && endpoint_in_R(s, Side::left);
    const bool b_in = m >= 1 && endpoint_in_R(s, Side::right);
    const std::string tag = name_of(s);
    if (m % 2 == 1) {
        r.check("tech-2 odd: ends of 10 not previous zeros",
                !endpoint_in_R(s + "10", Side::left) && !endpoint_in_R(s + "10", Side::right), tag);
        r.check("tech-2 odd: 00 inside parent", contained_in(B00, B), tag);
        r.check("tech-2 odd: 10 inside parent interior", interior_contained_in(B10, B), tag);
        r.check("tech-2 odd: 01 inside 0", contained_in(B01, B0), tag);
        r.check("tech-2 odd: 0 < 10", strictly_precedes(B0, B10), tag);
        r.check("tech-2 odd: 10 precedes 1", weakly_precedes(B10, B1), tag);
        if (a_in) {
            r.check("tech-2 odd: 00 inside 0", contained_in(B00, B0), tag);
        } else {
            r.check("tech-2 odd: 00 precedes 0", weakly_precedes(B00, B0), tag);
            r.check("tech-2 odd: ends of 00 not previous zeros",
                    !endpoint_in_R(s + "00", Side::left) && !endpoint_in_R(s + "00", Side::right), tag);
            r.check("tech-2 odd: 00 inside parent interior", interior_contained_in(B00, B), tag);
        }
        if (b_in) {
            r.check("tech-2 odd: 11 inside 1 inside parent", contained_in(B11, B1) && contained_in(B1, B), tag);
        } else {
            r.check("tech-2 odd: parent precedes 11", weakly_precedes(B, B11), tag);
        }
    } else {
        r.check("tech-2 even: ends of 01 not previous zeros",
                !endpoint_in_R(s + "01", Side::left) && !endpoint_in_R(s + "01", Side::right), tag);
        r.check("tech-2 even: 11 inside parent", contained_in(B11, B), tag);
        r.check("tech-2 even: 01 inside parent interior", interior_contained_in(B01, B), tag);
        r.check("tech-2 even: 10 inside 1", contained_in(B10, B1), tag);
        r.check("tech-2 even: 0 precedes 01", weakly_precedes(B0, B01), tag);
        r.check("tech-2 even: 01 < 1", strictly_precedes(B01, B1), tag);
        if (b_in) {
            r.check("tech-2 even: 11 inside 1", contained_in(B11, B1), tag);
        } else {
            r.check("tech-2 even: 1 precedes 11", weakly_precedes(B1, B11), tag);
            r.check("tech-2 even: ends of 11 not previous zeros",
                    !endpoint_in_R(s + "11", Side::left) && !endpoint_in_R(s + "11", Side::right), tag);
            r.check("tech-2 even: 11 inside parent interior", interior_contained_in(B11, B), tag);
        }
        if (a_in) {
            r.check("tech-2 even: 00 inside 0 inside parent", contained_in(B00, B0) && contained_in(B0, B), tag);
        } else {
            r.check("tech-2 even: 00 precedes parent", weakly_precedes(B00, B), tag);
        }
    }
}

// Trace kernels at the widths met while checking one level.
class KernelPool {
public:
    explicit KernelPool(const ModelParams& params) : params_(params) {}
    TraceKernel& at(mpfr_prec_t bits) {
        auto& slot = kernels_[bits];
        if (!slot) slot = std::make_unique<TraceKernel>(Real(params_.lambda, bits), bits);
        return *slot;
    }

private:
    const ModelParams& params_;
    std::map<mpfr_prec_t, std::unique_ptr<TraceKernel>> kernels_;
};

bool value_near(const Real& value, const Real& derivative, const Enclosure& at, long expected, mpfr_prec_t p) {
    const Real slack = abs(derivative) * at.width() * 2L + pow2(-(static_cast<long>(p) / 2), p);
    return abs(value - expected) <= slack;
}

}  // namespace

Report verify_level(const BandTables& tables, int n) {
    Report r;
    const ModelParams& params = tables.params();
    const LevelTable& table = tables.level(n);
    const mpfr_prec_t p = params.precision_bits;
    const std::size_t count = std::size_t{1} << static_cast<unsigned>(n);
    r.check("band count", table.bands.size() == count && table.cumulative.size() == 2 * count - 1,
            "level " + std::to_string(n));
    if (table.bands.size() != count) return r;
    const Real max_width = target_width(n, p);
    KernelPool kernels(params);
    Real value(p);
    Real deriv(p);

    for (std::size_t i = 0; i < count; ++i) {
        const Band& B = table.bands[i];
        const std::string tag = name_of(B.code);
        r.check("endpoint order a < z < b", below(B.a, B.z) && below(B.z, B.b), tag);
        r.check("enclosure width", B.a.width() <= max_width && B.b.width() <= max_width && B.z.width() <= max_width,
                tag);
        if (i + 1 < count) r.check("bands disjoint", strictly_precedes(B, table.bands[i + 1]), tag);
        if (n == 0) continue;
        const bool decreasing = B.code.last() == '0';
        TraceKernel& kernel = kernels.at(B.bits());
        kernel.eval(B.a.mid(), n, value, &deriv);
        r.check("endpoint values", value_near(value, deriv, B.a, decreasing ? 2 : -2, B.bits()), tag + " left");
        kernel.eval(B.b.mid(), n, value, &deriv);
        r.check("endpoint values", value_near(value, deriv, B.b, decreasing ? -2 : 2, B.bits()), tag + " right");
        kernel.eval(B.z.mid(), n, value, &deriv);
        r.check("monotone direction", decreasing ? deriv.sign() < 0 : deriv.sign() > 0, tag);
    }

    // Interlacing of the new zeros with the previous cumulative zero set.
    for (std::size_t k = 0; k < table.cumulative.size(); ++k) {
        const BandCode& owner = table.cumulative[k];
        r.check("interlacing", (owner.level() == n) == (k % 2 == 0), "position " + std::to_string(k));
        if (k + 1 < table.cumulative.size()) {
            r.check("interlacing", below(tables.zero(owner), tables.zero(table.cumulative[k + 1])),
                    "position " + std::to_string(k));
        }
    }
    if (n == 0) return r;
    const LevelTable& prev = tables.level(n - 1);

    // Slot boundaries are the prefix neighbours of each code.
    for (std::size_t i = 0; i < count; ++i) {
        const BandCode& code = table.bands[i].code;
        const PrefixNeighbours nb = prefix_neighbours(code);
        const bool lower_ok = nb.has_lower == (i >= 1) && (!nb.has_lower || prev.cumulative[i - 1] == nb.lower);
        const bool upper_ok = nb.has_upper == (i + 1 < count) && (!nb.has_upper || prev.cumulative[i] == nb.upper);
        r.check("slot neighbours are prefixes", lower_ok && upper_ok, name_of(code));
        const Band& B = table.bands[i];
        const bool a_num = i >= 1 && same_point(B.a, tables.zero(prev.cumulative[i - 1]));
        const bool b_num = i + 1 < count && same_point(B.b, tables.zero(prev.cumulative[i]));
        r.check("endpoint membership combinatorial vs numeric", a_num == endpoint_in_R(code, Side::left),
                name_of(code) + " left");
        r.check("endpoint membership combinatorial vs numeric", b_num == endpoint_in_R(code, Side::right),
                name_of(code) + " right");
        const bool contained = contained_in(B, tables.band(code.prefix(n - 1)));
        r.check("containment in parent iff endpoint in R", contained == (a_num || b_num), name_of(code));
        if (n >= 2) {
            const bool in_grand = contained_in(B, tables.band(code.prefix(n - 2)));
            r.check("contained in parent or grandparent", contained || in_grand, name_of(code));
        }
    }

    // Values and derivative signs of h_n on the previous zeros.
    for (const BandCode& owner : prev.cumulative) {
        const int m = owner.level();
        const Enclosure& z = tables.zero(owner);
        const mpfr_prec_t bits = z.lo.bits();
        kernels.at(bits).eval(z.mid(), n, value, &deriv);
        const long expected = (m == n - 1) ? -2 : 2;
        r.check("trace values at earlier zeros", value_near(value, deriv, z, expected, bits), name_of(owner));
        const int expected_sign = (m == n - 1) ? (m % 2 == 0 ? 1 : -1) : (m % 2 == 0 ? -1 : 1);
        r.check("derivative signs at earlier zeros", deriv.sign() == expected_sign, name_of(owner));
    }

    const Levels band(tables);
    for (const Band& parent : prev.bands) check_tech1(r, band, parent.code);
    if (n >= 2) {
        for (const Band& grand : tables.level(n - 2).bands) check_tech2(r, band, grand.code);
    }

    // Endpoint identities linking zeros of every lower level to this level.
    for (const BandCode& s : prev.cumulative) {
        const int t = n - 1 - s.level();
        const Band& left = band(s + "0" + std::string(static_cast<std::size_t>(t), '1'));
        const Band& right = band(s + "1" + std::string(static_cast<std::size_t>(t), '0'));
        r.check("endsymbol: gap between 01^t and 10^t", below(left.b, right.a), name_of(s));
        const Enclosure& end = (s.level() % 2 == 1) ? left.b : right.a;
        r.check("endsymbol: zero is a band endpoint", same_point(end, tables.zero(s)), name_of(s));
    }
    for (const Band& parent : prev.bands) {
        const BandCode& s = parent.code;
        const bool a_prev = s.level() >= 1 && endpoint_in_R(s, Side::left);
        const bool b_prev = s.level() >= 1 && endpoint_in_R(s, Side::right);
        if (a_prev) r.check("endsymbol: left end persists", same_point(band(s + "0").a, parent.a), name_of(s));
        if (b_prev) r.check("endsymbol: right end persists", same_point(band(s + "1").b, parent.b), name_of(s));
        r.check("endsymbol: membership inherited",
                a_prev == endpoint_in_R(s + "0", Side::left) && b_prev == endpoint_in_R(s + "1", Side::right),
                name_of(s));
    }
    for (std::size_t i = 0; i + 1 < count; ++i) {
        const BandCode& s = table.bands[i].code;
        const int hits = (endpoint_in_R(s, Side::right) ? 1 : 0) + (endpoint_in_R(s.successor(), Side::left) ? 1 : 0);
        r.check("endsymbol: exactly one gap edge in R", hits == 1, name_of(s));
    }

    Real longest(0L, p);
    for (const Band& B : table.bands) longest = max(longest, B.length());
    Real longest_prev(0L, p);
    for (const Band& B : prev.bands) longest_prev = max(longest_prev, B.length());
    r.check("max band length non-increasing", longest <= longest_prev,
            "level " + std::to_string(n) + ": " + longest.decimal(8) + " > " + longest_prev.decimal(8));
    return r;
}

bool zero_order_check(const std::vector<std::pair<BandCode, BandCode>>& pairs, const BandTables& tables) {
    for (const auto& [s, t] : pairs) {
        const int symbolic = compare_zero_order(s, t);
        const Enclosure& zs = tables.zero(s);
        const Enclosure& zt = tables.zero(t);
        int numeric = 0;
        if (zs.certainly_below(zt)) {
            numeric = -1;
        } else if (zt.certainly_below(zs)) {
            numeric = 1;
        } else if (!(s == t)) {
            return false;  // distinct zeros must be separated
        }
        if ((numeric < 0) != (symbolic < 0) || (numeric > 0) != (symbolic > 0)) return false;
    }
    return true;
}

bool sign_product_check(const Band& band, int samples, const ModelParams& params) {
    const int n = band.code.level();
    if (n < 1) return true;
    const Real left = band.a.hi;
    const Real span = band.b.lo - band.a.hi;
    for (int k = 1; k <= samples; ++k) {
        const Real e = left + span * static_cast<long>(k) / static_cast<long>(samples + 1);
        const TraceVector t = eval_traces(e, n, widened(params, band.bits()));
        int sign = 1;
        for (int j = 0; j < n; ++j) sign *= t.values[j].sign();
        const int expected = band.code.last() == '0' ? -1 : 1;
        if (sign != expected) return false;
    }
    return true;
}

}  // namespace pdspec
