#pragma once

#include <cstdint>
#include <vector>

#include "henon/map.hpp"

namespace henon {

enum class OrbitType { saddle, attracting, repelling, neutral_mixed };
const char* orbit_type_name(OrbitType t);

struct PeriodicOrbitRecord {
    int period = 1;               // n of the solve; the cycle length divides it
    std::vector<Point2> points;   // distinct cycle points (length = exact cycle size)
    cplx lambda1, lambda2;        // eigenvalues of Df^n, |lambda1| <= |lambda2|
    cplx trace;                   // tr(Df^n)
    OrbitType type = OrbitType::saddle;
    int multiplicity = 1;         // local multiplicity of each point in Fix(f^n)
    double residual = 0.0;        // ||f^n(z) - z||_inf at points[0]
    bool unit_eigenvalue = false; // an eigenvalue sits at 1 within margin; the
                                  // formal-period bookkeeping is flagged, not resolved
};

struct PeriodicSolveOptions {
    long long budget = 4096;        // refuse n with d^n beyond this
    std::uint64_t seed = 0x5eedULL; // start grid shuffle
    int starts_per_root = 8;        // start count = starts_per_root * d^n
    double newton_tol = 1e-11;      // residual target, relative to the system scale
    unsigned threads = 0;           // 0 = default
};

struct PeriodicPointsResult {
    std::vector<PeriodicOrbitRecord> orbits;
    bool complete = false;
    long long expected = 0;  // d^n
    long long found = 0;     // sum over orbits of (#points * multiplicity)
    long long deficit() const { return expected - found; }
};

/// All solutions of f^n(z) = z via the cyclic recurrence
/// x_{j+1} = a_{s(j)} x_{j-1} + p_{s(j)}(x_j) (indices mod n*k), solved by
/// multi-start damped Newton on a seeded tensor grid over the polydisk of
/// radius 2 R_f + 1.  Counts are validated against d^n: the result is marked
/// incomplete (never silently short) when the total with multiplicity falls
/// short.
PeriodicPointsResult periodic_points(const HenonComposition& f, int n,
                                     const PeriodicSolveOptions& opts = {});

/// Fixed points of a single Henon map by the one-variable reduction
/// p(x) - (1-a) x = 0 (or p(x) = 0 when a = 1).
std::vector<PeriodicOrbitRecord> fixed_points_henon(const HenonComposition& f);

/// Period-2 orbits of a single Henon map via q = p/(1-a) and the fixed
/// points of q o q (pairs of roots of p when a = 1).  Fixed points of f are
/// excluded.
std::vector<PeriodicOrbitRecord> period2_points_henon(const HenonComposition& f);

/// Smallest divisor m of rec.period with ||f^m(z) - z|| below tolerance.
int exact_period(const HenonComposition& f, const PeriodicOrbitRecord& rec);

/// Newton-polish a single cycle of f at period n from a starting guess for
/// the full x-orbit (length n*k).  Returns true on convergence; used by the
/// continuation corrector and the perturbation oracles.
bool polish_cycle(const HenonComposition& f, int n, std::vector<cplx>& xs, double tol,
                  double* residual = nullptr);

/// Assemble a record (eigenvalues, trace, type, residual) from a converged
/// x-orbit of the cyclic system.
PeriodicOrbitRecord make_record(const HenonComposition& f, int n, const std::vector<cplx>& xs,
                                int multiplicity = 1);

}  // namespace henon
