#pragma once

#include <vector>

#include "henon/roots.hpp"
#include "henon/util.hpp"

namespace henon {

/// Monic centered polynomial p(z) = z^d + a_{d-2} z^{d-2} + ... + a_1 z + a_0.
/// The z^{d-1} coefficient is identically zero and the leading one is 1.
class MonicCenteredPoly {
  public:
    MonicCenteredPoly(int degree, std::vector<cplx> low_coeffs);
    static MonicCenteredPoly monomial(int degree) {
        return MonicCenteredPoly(degree, std::vector<cplx>(degree - 1, cplx(0.0, 0.0)));
    }

    int degree() const { return d_; }
    /// a_0 ... a_{d-2}
    const std::vector<cplx>& low_coeffs() const { return a_; }

    cplx operator()(cplx z) const;
    cplx deriv(cplx z) const;

    /// p(x) in log-polar form, overflow-free for any magnitude.
    LogCplx eval_log(const LogCplx& x) const;

    PolyCoeffs full_coeffs() const;   // includes the leading 1
    PolyCoeffs deriv_coeffs() const;  // p'

  private:
    int d_;
    std::vector<cplx> a_;
};

/// Critical points with multiplicity (clusters of p' roots).
std::vector<RootCluster> critical_clusters(const MonicCenteredPoly& p);
/// The same, flattened with multiplicity (size d-1).
std::vector<cplx> critical_points(const MonicCenteredPoly& p);

/// Dynamical Green function G_p(z) = lim d^{-n} log^+ |p^n(z)|, absolute
/// error <= tol.  Escaping orbits are refined with the exact tail corrections
/// log|1 + theta_k| / d^{k+1}; orbits staying below the certified escape
/// radius for ceil(log(1/tol)/log d) + 200 steps are declared bounded.
double green(const MonicCenteredPoly& p, cplx z, double tol);

struct EscapeRate {
    double M;  // max of G over critical points
    double R;  // e^M
};
EscapeRate max_escape_rate(const MonicCenteredPoly& p, double tol);

/// Radius beyond which |p(z)| >= |z|^d / 2 is certified from the
/// coefficients alone (never below 10).
double certified_escape_radius(const MonicCenteredPoly& p);

/// Bottcher coordinate on {G_p > M(p)} via the convergent product
/// z * prod (1 + theta_k)^(1/d^{k+1}), principal roots, truncated once the
/// tail bound drops below 1e-14.  Throws DomainError when G_p(z) <= M(p) and
/// ConvergenceError if some |theta_k| >= 1 (branch tracking impossible).
cplx bottcher(const MonicCenteredPoly& p, cplx z);

/// Lyapunov exponent of the equilibrium measure:
/// chi(mu_p) = log d + sum over critical points of G_p(c).
double mp_lyapunov(const MonicCenteredPoly& p, double tol);

}  // namespace henon
