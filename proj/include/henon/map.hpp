#pragma once

#include <array>
#include <optional>
#include <vector>

#include "henon/poly.hpp"
#include "henon/util.hpp"

namespace henon {

/// 2x2 complex matrix, row major.
struct Mat2 {
    std::array<cplx, 4> m{};  // [a b; c d]
    cplx trace() const { return m[0] + m[3]; }
    cplx det() const { return m[0] * m[3] - m[1] * m[2]; }
};
Mat2 mat_mul(const Mat2& a, const Mat2& b);
/// Eigenvalues ordered |first| <= |second|, via the stable quadratic formula.
std::pair<cplx, cplx> eigenvalues(cplx trace, cplx det);

/// One Henon factor h(x,y) = (a y + p(x), x), a != 0.
struct HenonFactor {
    cplx a;
    MonicCenteredPoly p;

    HenonFactor(cplx a_, MonicCenteredPoly p_);
    Point2 apply(const Point2& z) const { return {a * z.y + p(z.x), z.x}; }
    Point2 apply_inverse(const Point2& z) const { return {z.y, (z.x - p(z.y)) / a}; }
    LogPoint2 apply_log(const LogPoint2& z) const;
    Mat2 differential(const Point2& z) const { return {{p.deriv(z.x), a, cplx(1, 0), cplx(0, 0)}}; }
    /// Differential of the inverse map at z.
    Mat2 inverse_differential(const Point2& z) const {
        return {{cplx(0, 0), cplx(1, 0), cplx(1, 0) / a, -p.deriv(z.y) / a}};
    }
};

/// Composition of Henon factors.  Factors are stored in application order:
/// factors()[0] acts first.  (In functional notation the map is
/// h_k o ... o h_1 with h_1 = factors()[0].)
class HenonComposition {
  public:
    explicit HenonComposition(std::vector<HenonFactor> factors);

    int k() const { return static_cast<int>(f_.size()); }
    const std::vector<HenonFactor>& factors() const { return f_; }
    int degree() const { return d_; }
    std::vector<int> multidegree() const;
    /// jac(f) = (-1)^k prod a_i, constant on C^2.
    cplx jacobian() const { return jac_; }

    Point2 eval(const Point2& z) const;
    Point2 eval_inverse(const Point2& z) const;
    Point2 eval_iter(const Point2& z, int n) const;
    LogPoint2 eval_log(const LogPoint2& z) const;
    Mat2 differential(const Point2& z) const;
    /// Differential of f^{-1} at z.
    Mat2 inverse_differential(const Point2& z) const;

    /// M(f) = max over factors of M(p_i); R = e^M.  Computed once at
    /// construction with tolerance 1e-12.
    double escape_rate_M() const { return m_; }
    double escape_radius() const { return r_; }

    /// Cyclic rotation: factor at index `shift` becomes the first applied.
    /// The result is conjugate to the original composition.
    HenonComposition rotated(int shift) const;

  private:
    std::vector<HenonFactor> f_;
    int d_;
    cplx jac_;
    double m_, r_;
};

/// The diagonal conjugation by alpha in U_{d-1} (alpha^{d-1} = 1): produces a
/// monic centered composition conjugate to f.
HenonComposition unity_action(const HenonComposition& f, cplx alpha);

/// Conjugacy-invariant escape rate: max of M(alpha . f) over U_{d-1}.
double mbar(const HenonComposition& f, double tol);

struct InverseNormalForm {
    HenonComposition g;  // monic centered, conjugate to f^{-1}
    // Conjugacy L(x,y) = (cy * y, cx * x) with f^{-1} o L = L o g.
    cplx cx, cy;
    double residual;  // max conjugacy defect over 100 sample points
};
InverseNormalForm inverse_normal_form(const HenonComposition& f);

/// Forward Green function G^+ with escape detection through the region
/// {|y| <= |x|, |x| >= 12 d R_f}; satisfies G^+ o f = d G^+.
double green_plus(const HenonComposition& f, const Point2& z, double tol);
/// Backward Green function, computed as G^+ of the inverse normal form.
double green_minus(const HenonComposition& f, const Point2& z, double tol);

/// Bottcher function on the certified domain {|y| <= |x|, |x| >= 12 d R_f},
/// requiring |a_i| <= R_f^{d_i - 1}.  log|phi| = G^+ and
/// |phi/x - 1| <= 2 R_f / |x| there.
cplx bottcher_plus(const HenonComposition& f, const Point2& z);
/// Same product, gated by runtime contraction checks (|theta_k| <= 1/6 and
/// geometric growth) instead of the a-priori radius; used by constructions
/// that certify their own domains.
cplx bottcher_plus_checked(const HenonComposition& f, const Point2& z);

}  // namespace henon
