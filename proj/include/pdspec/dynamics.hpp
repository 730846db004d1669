#pragma once

#include "pdspec/bands.hpp"
#include "pdspec/real.hpp"
#include "pdspec/report.hpp"
#include "pdspec/traces.hpp"

#include <array>
#include <optional>
#include <stdexcept>
#include <vector>

namespace pdspec {

// A pair (h_n, h_{n+1}) of consecutive traces.
struct PlanePoint {
    Real x;
    Real y;
};

class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// f(x, y) = (y(x^2-2)-2, [y(x^2-2)-2](y^2-2)-2), so (h_{n+2}, h_{n+3}) = f(h_n, h_{n+1}).
PlanePoint f_map(const PlanePoint& p);
// Inverse of f on f(U). Throws DomainError outside f(U).
PlanePoint g_map(const PlanePoint& p);
Real jacobian_det(const PlanePoint& p);

// U: x, y < 0 and y(x^2-2)-2 < 0.
bool in_U(const PlanePoint& p);
// x < 0, y < -2x-2 and, for -2 <= x < 0, y < x^3/4 + x^2 - x - 2.
bool in_f_of_U(const PlanePoint& p);

enum class Membership { inside, boundary, outside };
// D: -sqrt2 <= x, y <= 0 and y <= x^2-2, with points within tol of an
// edge reported as boundary.
Membership d_membership(const PlanePoint& p, const Real& tol);

struct RegionVertices {
    PlanePoint A;  // (-sqrt2, -sqrt2)
    PlanePoint B;  // (-sqrt2, 0)
    PlanePoint C;  // (-sqrt(2-sqrt2), -sqrt2)
    PlanePoint F;  // (-1, -1)
};
RegionVertices region_vertices(mpfr_prec_t bits);

// (-1,-1), (2,2), (-alpha, alpha-1) and (1/alpha, -(1+1/alpha)) with alpha the golden mean.
std::array<PlanePoint, 4> fixed_points(mpfr_prec_t bits);

struct ContractionResult {
    Report report;
    std::vector<double> diameters;  // of the bounding boxes of g^n(D), n = 0..steps
};

// Invariance g(D) inside D and U on a grid and the boundary, monotone vertex
// orbits, nested shrinking bounding boxes, order preservation and positive
// partial derivatives of g.
ContractionResult verify_contraction(int steps, int grid, mpfr_prec_t bits);

// First m >= 1 with f^m(p) outside D, or none within the horizon. Boundary
// points count as inside.
std::optional<int> escape_check(const PlanePoint& p, int horizon);

enum class OrbitStatus { zero_tail, unbounded, bounded_so_far };
std::string_view orbit_status_name(OrbitStatus status);

struct TrappedRun {
    int first;  // even index n with (h_n, h_{n+1}) in D
    int last;
};

struct OrbitRecord {
    Enclosure energy;
    std::vector<Real> values;  // h_0 .. h_resolved at the midpoint of the energy
    int resolved = 0;          // last index where the traces at both ends of the energy agree
    OrbitStatus status = OrbitStatus::bounded_so_far;
    std::optional<int> zero_index;                   // m with h_m(E) = 0
    std::optional<DivergenceCertificate> certificate;
    Real max_abs;
    std::vector<TrappedRun> trapped;
};

// Orbit of an energy given by an enclosure, up to the horizon or the last
// index resolved by the enclosure. A zero tail needs a sign change of h_m
// across the enclosure and, when tables are given, a computed zero of level m
// overlapping it; the values after m are then the exact tail -2, 2, 2, ...
// Throws PrecisionExhausted when not even h_1 is resolved.
OrbitRecord classify_orbit(const Enclosure& energy, int horizon, const ModelParams& params,
                           const BandTables* tables = nullptr);

// Limit behaviour of an orbit of infinity type: the traces of one parity
// approach sqrt2 in magnitude while the others blow up.
struct InfinityProfile {
    int last_bounded_index = -1;
    double last_bounded_distance = 0;  // ||h_k| - sqrt2| at that index
    int last_growing_index = -1;
    double last_growing_magnitude = 0;
    bool growing_monotone = false;  // over the last `window` indices of the growing parity
};
InfinityProfile infinity_profile(const OrbitRecord& orbit, int bounded_parity, int window);

}  // namespace pdspec
