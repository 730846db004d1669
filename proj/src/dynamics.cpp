#include "pdspec/dynamics.hpp"

#include <cmath>
#include <random>

namespace pdspec {

namespace {

Real sqrt2(mpfr_prec_t bits) { return sqrt(Real(2L, bits)); }

Real default_tol(mpfr_prec_t bits) { return pow2(-static_cast<long>(bits / 2), bits); }

bool leq(const PlanePoint& p, const PlanePoint& q, const Real& tol) {
    return p.x <= q.x + tol && p.y <= q.y + tol;
}

double distance(const PlanePoint& p, const PlanePoint& q) {
    return std::hypot((p.x - q.x).to_double(), (p.y - q.y).to_double());
}

std::string show(const PlanePoint& p) { return "(" + p.x.decimal(12) + ", " + p.y.decimal(12) + ")"; }

// Points of D on a square grid together with samples of its three edges.
std::vector<PlanePoint> d_samples(int grid, mpfr_prec_t bits) {
    const auto v = region_vertices(bits);
    const Real tol = default_tol(bits);
    std::vector<PlanePoint> points;
    const Real side = sqrt2(bits);
    for (int i = 0; i <= grid; ++i) {
        for (int j = 0; j <= grid; ++j) {
            PlanePoint p{v.A.x + side * i / grid, v.A.y + side * j / grid};
            if (d_membership(p, tol) != Membership::outside) points.push_back(p);
        }
    }
    for (int i = 0; i <= grid; ++i) {
        points.push_back(PlanePoint{v.A.x, v.A.y + (v.B.y - v.A.y) * i / grid});  // Gamma
        const Real x = v.A.x + (v.C.x - v.A.x) * i / grid;
        points.push_back(PlanePoint{x, v.A.y});         // Upsilon
        points.push_back(PlanePoint{x, x * x - 2L});    // Lambda
    }
    return points;
}

}  // namespace

PlanePoint f_map(const PlanePoint& p) {
    Real x1 = p.y * (p.x * p.x - 2L) - 2L;
    Real y1 = x1 * (p.y * p.y - 2L) - 2L;
    return {std::move(x1), std::move(y1)};
}

PlanePoint g_map(const PlanePoint& p) {
    if (!in_f_of_U(p)) throw DomainError("g is defined on f(U) only, got " + show(p));
    Real y0 = -sqrt(2L + (2L + p.y) / p.x);
    Real x0 = -sqrt(2L - (2L + p.x) / (-y0));
    return {std::move(x0), std::move(y0)};
}

Real jacobian_det(const PlanePoint& p) {
    return 4L * p.x * p.y * p.y * (p.y * (p.x * p.x - 2L) - 2L);
}

bool in_U(const PlanePoint& p) {
    return p.x.sign() < 0 && p.y.sign() < 0 && (p.y * (p.x * p.x - 2L) - 2L).sign() < 0;
}

bool in_f_of_U(const PlanePoint& p) {
    if (!(p.x.sign() < 0) || !(p.y < -2L * p.x - 2L)) return false;
    if (p.x >= -2.0) return p.y < p.x * p.x * p.x / 4L + p.x * p.x - p.x - 2L;
    return true;
}

Membership d_membership(const PlanePoint& p, const Real& tol) {
    const Real s = sqrt2(p.x.bits());
    // Signed slack of each inequality; negative means violated.
    const Real slacks[] = {p.x + s, -p.x, p.y + s, -p.y, p.x * p.x - 2L - p.y};
    bool near_edge = false;
    for (const Real& slack : slacks) {
        if (slack < -tol) return Membership::outside;
        if (slack <= tol) near_edge = true;
    }
    return near_edge ? Membership::boundary : Membership::inside;
}

RegionVertices region_vertices(mpfr_prec_t bits) {
    const Real s = sqrt2(bits);
    return RegionVertices{
        PlanePoint{-s, -s},
        PlanePoint{-s, Real(0L, bits)},
        PlanePoint{-sqrt(2L - s), -s},
        PlanePoint{Real(-1L, bits), Real(-1L, bits)},
    };
}

std::array<PlanePoint, 4> fixed_points(mpfr_prec_t bits) {
    const Real alpha = (1L + sqrt(Real(5L, bits))) / 2L;
    const Real inv = Real(1L, bits) / alpha;
    return {PlanePoint{Real(-1L, bits), Real(-1L, bits)}, PlanePoint{Real(2L, bits), Real(2L, bits)},
            PlanePoint{-alpha, alpha - 1L}, PlanePoint{inv, -(1L + inv)}};
}

ContractionResult verify_contraction(int steps, int grid, mpfr_prec_t bits) {
    ContractionResult out;
    Report& r = out.report;
    const Real tol = default_tol(bits);
    const auto v = region_vertices(bits);

    for (const PlanePoint& p : d_samples(grid, bits)) {
        const bool defined = in_f_of_U(p);
        r.check_lazy("D inside f(U)", defined, [&] { return show(p); });
        if (!defined) continue;
        const PlanePoint q = g_map(p);
        r.check_lazy("g(D) inside D", d_membership(q, tol) != Membership::outside, [&] { return show(p); });
        r.check_lazy("g(D) inside U", in_U(q), [&] { return show(p); });
        r.check_lazy("f inverts g", distance(f_map(q), p) <= tol.to_double() * 16, [&] { return show(p); });
    }

    const PlanePoint gf = g_map(v.F);
    r.check("g fixes F", distance(gf, v.F) <= tol.to_double());
    const Real s = sqrt2(bits);
    const PlanePoint a1_expected{-sqrt(2L - (2L - s) / sqrt(3L - s)), -sqrt(3L - s)};
    r.check("A_1 closed form", distance(g_map(v.A), a1_expected) <= tol.to_double());

    PlanePoint a = v.A, b = v.B, c = v.C;
    auto box_diameter = [](const PlanePoint& a, const PlanePoint& b, const PlanePoint& c) {
        return std::hypot((c.x - a.x).to_double(), (b.y - a.y).to_double());
    };
    out.diameters.push_back(box_diameter(a, b, c));
    for (int n = 1; n <= steps; ++n) {
        PlanePoint an = g_map(a), bn = g_map(b), cn = g_map(c);
        r.check_lazy("A_n increasing", leq(a, an, tol), [&] { return "n=" + std::to_string(n); });
        for (const PlanePoint* p : {&bn, &cn}) {
            r.check_lazy("B_n, C_n on Lambda", abs(p->y - (p->x * p->x - 2L)) <= tol,
                         [&] { return "n=" + std::to_string(n) + " " + show(*p); });
        }
        // Box [x_A, x_C] x [y_A, y_B] nested in the previous one.
        const bool nested = a.x <= an.x + tol && cn.x <= c.x + tol && a.y <= an.y + tol && bn.y <= b.y + tol;
        r.check_lazy("boxes nested", nested, [&] { return "n=" + std::to_string(n); });
        const double diameter = box_diameter(an, bn, cn);
        r.check_lazy("boxes shrink", diameter < out.diameters.back(), [&] { return "n=" + std::to_string(n); });
        out.diameters.push_back(diameter);
        a = std::move(an);
        b = std::move(bn);
        c = std::move(cn);
    }
    r.check("vertex orbits approach F", distance(a, v.F) <= out.diameters.front() &&
                                            distance(b, v.F) <= out.diameters.back() &&
                                            distance(c, v.F) <= out.diameters.back());

    // Order preservation and positive partial derivatives at sampled points.
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    int ordered_pairs = 0;
    while (ordered_pairs < 500) {
        const PlanePoint p{v.A.x + s * unit(rng), v.A.y + s * unit(rng)};
        if (d_membership(p, tol) == Membership::outside) continue;
        const PlanePoint q{p.x + Real(0.2 * unit(rng), bits), p.y + Real(0.2 * unit(rng), bits)};
        if (d_membership(q, tol) == Membership::outside) continue;
        ++ordered_pairs;
        r.check_lazy("g preserves order", leq(g_map(p), g_map(q), tol), [&] { return show(p) + " " + show(q); });
    }
    const Real step = pow2(-20, bits);
    for (const PlanePoint& p : d_samples(grid, bits)) {
        if (d_membership(p, step * 4L) != Membership::inside) continue;
        const PlanePoint dx_plus = g_map({p.x + step, p.y}), dx_minus = g_map({p.x - step, p.y});
        const PlanePoint dy_plus = g_map({p.x, p.y + step}), dy_minus = g_map({p.x, p.y - step});
        const bool positive = (dx_plus.x - dx_minus.x).sign() > 0 && (dx_plus.y - dx_minus.y).sign() > 0 &&
                              (dy_plus.x - dy_minus.x).sign() > 0 && (dy_plus.y - dy_minus.y).sign() > 0;
        r.check_lazy("partial derivatives of g positive", positive, [&] { return show(p); });
    }
    return out;
}

std::optional<int> escape_check(const PlanePoint& p, int horizon) {
    const Real tol = default_tol(p.x.bits());
    PlanePoint q = p;
    for (int m = 1; m <= horizon; ++m) {
        q = f_map(q);
        if (d_membership(q, tol) == Membership::outside) return m;
    }
    return std::nullopt;
}

std::string_view orbit_status_name(OrbitStatus status) {
    switch (status) {
        case OrbitStatus::zero_tail: return "zero-tail";
        case OrbitStatus::unbounded: return "certified-unbounded";
        case OrbitStatus::bounded_so_far: return "bounded-so-far";
    }
    return "?";
}

OrbitRecord classify_orbit(const Enclosure& energy, int horizon, const ModelParams& params, const BandTables* tables) {
    if (horizon < 1) throw std::invalid_argument("orbit horizon must be positive");
    const ModelParams wide = widened(params, std::max(params.precision_bits, energy.lo.bits()));
    const mpfr_prec_t bits = wide.precision_bits;
    const OrbitTrace low = trace_orbit(energy.lo, horizon, wide);
    const OrbitTrace high = trace_orbit(energy.hi, horizon, wide);
    const OrbitTrace mid = trace_orbit(energy.mid(), horizon, wide);

    OrbitRecord out;
    out.energy = energy;
    const std::size_t available = std::min({low.values.size(), high.values.size(), mid.values.size()});
    const Real agreement(1e-3, bits);
    int resolved = -1;
    for (std::size_t k = 0; k < available; ++k) {
        const Real scale = max(Real(1L, bits), abs(mid.values[k]));
        if (abs(low.values[k] - high.values[k]) > agreement * scale) break;
        resolved = static_cast<int>(k);
    }
    if (resolved < 1) throw PrecisionExhausted("energy enclosure too wide to resolve the orbit");
    out.resolved = resolved;

    for (int m = 0; m <= resolved && !out.zero_index; ++m) {
        const std::size_t k = static_cast<std::size_t>(m);
        if (low.values[k].sign() * high.values[k].sign() > 0) continue;
        bool matched = tables == nullptr;
        if (tables && m <= tables->top()) {
            for (const Band& band : tables->level(m).bands) {
                if (band.z.overlaps(energy)) {
                    matched = true;
                    break;
                }
            }
        }
        if (matched) out.zero_index = m;
    }

    if (out.zero_index) {
        const int m = *out.zero_index;
        out.values.assign(mid.values.begin(), mid.values.begin() + m);
        out.values.emplace_back(0L, bits);
        for (int k = m + 1; k <= horizon; ++k) out.values.emplace_back(k == m + 1 ? -2L : 2L, bits);
        out.resolved = horizon;
        out.status = OrbitStatus::zero_tail;
    } else {
        out.values.assign(mid.values.begin(), mid.values.begin() + resolved + 1);
        for (std::size_t k = 0; k + 1 < out.values.size(); ++k) {
            const Real x = abs(out.values[k]);
            const Real y = abs(out.values[k + 1]);
            if (x > 2.0 && y > 2.0) {
                out.certificate = DivergenceCertificate{static_cast<int>(k), min(x, y) - 2L};
                out.status = OrbitStatus::unbounded;
                break;
            }
        }
    }

    out.max_abs = Real(0L, bits);
    for (const Real& h : out.values) out.max_abs = max(out.max_abs, abs(h));
    const Real tol = default_tol(bits);
    for (std::size_t k = 0; k + 1 < out.values.size(); k += 2) {
        if (d_membership({out.values[k], out.values[k + 1]}, tol) == Membership::outside) continue;
        const int n = static_cast<int>(k);
        if (!out.trapped.empty() && out.trapped.back().last == n - 2) {
            out.trapped.back().last = n;
        } else {
            out.trapped.push_back({n, n});
        }
    }
    return out;
}

InfinityProfile infinity_profile(const OrbitRecord& orbit, int bounded_parity, int window) {
    InfinityProfile out;
    const int last = static_cast<int>(orbit.values.size()) - 1;
    const double root2 = std::sqrt(2.0);
    for (int k = last; k >= 0; --k) {
        if (k % 2 == bounded_parity && out.last_bounded_index < 0) {
            out.last_bounded_index = k;
            out.last_bounded_distance = std::abs(std::abs(orbit.values[static_cast<std::size_t>(k)].to_double()) - root2);
        }
        if (k % 2 != bounded_parity && out.last_growing_index < 0) {
            out.last_growing_index = k;
            out.last_growing_magnitude = std::abs(orbit.values[static_cast<std::size_t>(k)].to_double());
        }
    }
    if (out.last_growing_index < 0) return out;
    out.growing_monotone = true;
    int counted = 0;
    for (int k = out.last_growing_index; k - 2 >= 0 && counted < window; k -= 2, ++counted) {
        const Real later = abs(orbit.values[static_cast<std::size_t>(k)]);
        const Real earlier = abs(orbit.values[static_cast<std::size_t>(k - 2)]);
        if (!(earlier < later)) out.growing_monotone = false;
    }
    if (counted < window) out.growing_monotone = false;
    return out;
}

}  // namespace pdspec
