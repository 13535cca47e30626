#pragma once

#include <vector>

#include "henon/util.hpp"

namespace henon {

// Dense polynomials are coefficient vectors, low degree first.  The leading
// coefficient is the last entry and must be nonzero for root solving.
using PolyCoeffs = std::vector<cplx>;

cplx poly_eval(const PolyCoeffs& c, cplx z);
PolyCoeffs poly_derivative(const PolyCoeffs& c);
PolyCoeffs poly_add(const PolyCoeffs& a, const PolyCoeffs& b);
PolyCoeffs poly_scale(const PolyCoeffs& a, cplx s);
PolyCoeffs poly_mul(const PolyCoeffs& a, const PolyCoeffs& b);
/// q(r(x)) by Horner over polynomial arithmetic.
PolyCoeffs poly_compose(const PolyCoeffs& q, const PolyCoeffs& r);
/// Euclidean division a = q*b + r; returns q, stores the remainder.
PolyCoeffs poly_divide(const PolyCoeffs& a, const PolyCoeffs& b, PolyCoeffs* remainder = nullptr);
void poly_trim(PolyCoeffs& c, double tol = 0.0);

/// All roots by Aberth-Ehrlich simultaneous iteration with Newton polish.
/// Multiple roots come back as a tight cluster of simple approximations.
std::vector<cplx> poly_roots(const PolyCoeffs& coeffs, int max_iter = 400);

struct RootCluster {
    cplx value;        // cluster centroid after polish
    int multiplicity;  // cardinality, validated by a winding count
    double spread;     // max distance of members to the centroid
};

/// Groups near-coincident roots into multiple roots.  `base_radius` is the
/// caller's merge radius; clusters of size m are additionally merged at the
/// eps^(1/m) scale that double precision imposes on an m-fold root.  Each
/// nontrivial cluster is validated with an argument-principle count; failure
/// raises ConvergenceError naming the residual.
std::vector<RootCluster> cluster_roots(const PolyCoeffs& coeffs, const std::vector<cplx>& roots,
                                       double base_radius);

/// Number of zeros of the polynomial inside |z - center| < radius, by the
/// winding number of the boundary image.  Samples are doubled until the
/// integral stabilizes near an integer.
int winding_count(const PolyCoeffs& coeffs, cplx center, double radius);

}  // namespace henon
