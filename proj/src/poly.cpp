#include "henon/poly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace henon {

namespace {
// Direct evaluation stays exact and overflow-free up to this magnitude for
// the degrees in scope (d <= 16 keeps |z|^d < 1e308 comfortably).
constexpr double kDirectEvalCap = 1e10;
}  // namespace

MonicCenteredPoly::MonicCenteredPoly(int degree, std::vector<cplx> low_coeffs)
    : d_(degree), a_(std::move(low_coeffs)) {
    if (d_ < 2) throw DomainError("polynomial degree must be >= 2");
    if (a_.size() != static_cast<std::size_t>(d_ - 1))
        throw DomainError("expected d-1 low coefficients (a_0..a_{d-2})");
}

cplx MonicCenteredPoly::operator()(cplx z) const {
    // Horner with the implicit zero z^{d-1} coefficient.
    cplx p(1.0, 0.0);
    p = p * z;  // accounts for the zero coefficient at degree d-1
    for (std::size_t i = a_.size(); i-- > 0;) p = p * z + a_[i];
    return p;
}

cplx MonicCenteredPoly::deriv(cplx z) const {
    cplx p = cplx(double(d_), 0.0) * z;
    for (std::size_t i = a_.size(); i-- > 1;) p = p * z + a_[i] * double(i);
    return p;
}

LogCplx MonicCenteredPoly::eval_log(const LogCplx& x) const {
    if (x.zero()) return LogCplx::from(a_.empty() ? cplx(0, 0) : a_[0]);
    if (x.log_mod < std::log(kDirectEvalCap)) return LogCplx::from((*this)(x.value()));
    // |x| large: p(x) = x^d (1 + sum a_j x^{j-d}), the series is tiny.
    cplx inv_unit = std::conj(x.unit);  // 1/unit on the circle
    cplx series(1.0, 0.0);
    for (int j = 0; j <= d_ - 2; ++j) {
        double lm = -double(d_ - j) * x.log_mod;
        if (lm < -700.0) continue;
        cplx xpow = std::pow(inv_unit, double(d_ - j)) * std::exp(lm);
        series += a_[j] * xpow;
    }
    LogCplx xd = log_pow_int(x, d_);
    return log_mul(xd, LogCplx::from(series));
}

PolyCoeffs MonicCenteredPoly::full_coeffs() const {
    PolyCoeffs c(d_ + 1, cplx(0.0, 0.0));
    for (int j = 0; j <= d_ - 2; ++j) c[j] = a_[j];
    c[d_] = cplx(1.0, 0.0);
    return c;
}

PolyCoeffs MonicCenteredPoly::deriv_coeffs() const { return poly_derivative(full_coeffs()); }

std::vector<RootCluster> critical_clusters(const MonicCenteredPoly& p) {
    PolyCoeffs dp = p.deriv_coeffs();
    std::vector<cplx> roots = poly_roots(dp);
    // Provisional R_p from the raw roots settles the merge radius; the
    // multiplicity structure does not change max G over the roots.
    double m_raw = 0.0;
    for (cplx r : roots) m_raw = std::max(m_raw, green(p, r, 1e-10));
    double r_p = std::exp(m_raw);
    double merge = 1e-7 * (1.0 + 2.0 * r_p);
    return cluster_roots(dp, roots, merge);
}

std::vector<cplx> critical_points(const MonicCenteredPoly& p) {
    std::vector<cplx> out;
    for (const auto& c : critical_clusters(p))
        for (int i = 0; i < c.multiplicity; ++i) out.push_back(c.value);
    return out;
}

double certified_escape_radius(const MonicCenteredPoly& p) {
    const int d = p.degree();
    // Design radius: max(2^{d/(d-1)} (1+|a_j|)^{1/(d-j)}, 10), strengthened so
    // that sum |a_j| |z|^{j-d} <= 1/2 holds beyond it.
    double r = 10.0;
    double design = 0.0;
    for (int j = 0; j <= d - 2; ++j) {
        double t = std::pow(1.0 + std::abs(p.low_coeffs()[j]), 1.0 / double(d - j));
        design = std::max(design, t);
    }
    r = std::max(r, std::pow(2.0, double(d) / double(d - 1)) * design);
    double s = 2.0;
    for (int j = 0; j <= d - 2; ++j)
        s += 2.0 * std::pow(std::abs(p.low_coeffs()[j]), 1.0 / double(d - j));
    return std::max(r, s);
}

double green(const MonicCenteredPoly& p, cplx z, double tol) {
    if (tol <= 0.0) throw DomainError("green: tol must be positive");
    const int d = p.degree();
    const double r_esc = certified_escape_radius(p);
    const int n_max = static_cast<int>(std::ceil(std::log(1.0 / tol) / std::log(double(d)))) + 200;

    cplx w = z;
    for (int n = 0; n <= n_max; ++n) {
        double mag = std::abs(w);
        if (!std::isfinite(mag)) mag = 1e300;
        if (mag > r_esc) {
            // G = d^{-n} (log|w| + sum_k d^{-k-1} log|1+theta_k|).
            LogCplx lw = LogCplx::from(w);
            double g = lw.log_mod;
            double weight = 1.0 / double(d);
            for (int k = 0; k < 400; ++k) {
                LogCplx nw = p.eval_log(lw);
                // 1 + theta = p(w)/w^d, finite because |theta| <= 1/2 out here.
                LogCplx wd = log_pow_int(lw, d);
                double corr_log = nw.log_mod - wd.log_mod;
                double corr_mag = std::abs(nw.unit / wd.unit);
                double corr = corr_log + std::log(corr_mag);
                g += corr * weight;
                weight /= double(d);
                lw = nw;
                if (weight * 0.7 < tol * 0.25 || lw.log_mod > 690.0) break;
            }
            return g / std::pow(double(d), double(n));
        }
        w = p(w);
    }
    return 0.0;
}

EscapeRate max_escape_rate(const MonicCenteredPoly& p, double tol) {
    if (tol <= 0.0) throw DomainError("max_escape_rate: tol must be positive");
    double m = 0.0;
    for (const auto& c : critical_clusters(p)) m = std::max(m, green(p, c.value, tol));
    return {m, std::exp(m)};
}

cplx bottcher(const MonicCenteredPoly& p, cplx z) {
    const int d = p.degree();
    const EscapeRate er = max_escape_rate(p, 1e-12);
    const double gz = green(p, z, 1e-13);
    if (!(gz > er.M + 1e-12)) {
        std::ostringstream msg;
        msg << "bottcher: point outside {G_p > M(p)} (G=" << gz << ", M=" << er.M << ")";
        throw DomainError(msg.str());
    }

    LogCplx w = LogCplx::from(z);
    cplx s(0.0, 0.0);  // accumulated log of the product
    double weight = 1.0 / double(d);
    for (int k = 0; k < 2000; ++k) {
        LogCplx nw = p.eval_log(w);
        LogCplx wd = log_pow_int(w, d);
        double ratio_log = nw.log_mod - wd.log_mod;
        if (ratio_log > 690.0) {
            throw ConvergenceError("bottcher: |theta_k| >= 1, branch tracking failed");
        }
        cplx one_plus_theta = (nw.unit / wd.unit) * std::exp(ratio_log);
        double theta_abs = std::abs(one_plus_theta - cplx(1.0, 0.0));
        if (theta_abs >= 1.0) {
            std::ostringstream msg;
            msg << "bottcher: |theta_" << k << "| = " << theta_abs
                << " >= 1, branch tracking failed";
            throw ConvergenceError(msg.str());
        }
        s += std::log(one_plus_theta) * weight;
        // Tail bound: once the orbit is far out, |theta| <= 3 R_p e^{-L} and
        // the orbit grows at least geometrically, so the remaining sum is
        // dominated by the next term.
        double tail = 3.0 * std::max(er.R, 1.0) * std::exp(-nw.log_mod) * weight / double(d);
        double term = std::abs(std::log(one_plus_theta)) * weight;
        w = nw;
        weight /= double(d);
        if ((tail < 1e-14 && term < 1e-14) || w.log_mod > 690.0) break;
        if (k == 1999) throw ConvergenceError("bottcher: product did not converge");
    }
    return z * std::exp(s);
}

double mp_lyapunov(const MonicCenteredPoly& p, double tol) {
    if (tol <= 0.0) throw DomainError("mp_lyapunov: tol must be positive");
    double sum = 0.0;
    for (const auto& c : critical_clusters(p))
        sum += double(c.multiplicity) * green(p, c.value, tol);
    return std::log(double(p.degree())) + sum;
}

}  // namespace henon
