#include "henon/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace henon {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

cplx eval_with_deriv(const PolyCoeffs& c, cplx z, cplx* dp) {
    cplx p(0.0, 0.0), d(0.0, 0.0);
    for (std::size_t i = c.size(); i-- > 0;) {
        d = d * z + p;
        p = p * z + c[i];
    }
    *dp = d;
    return p;
}

double coeff_scale(const PolyCoeffs& c, double at) {
    double s = 0.0, zp = 1.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        s = std::max(s, std::abs(c[i]) * zp);
        zp *= at;
    }
    return s;
}

}  // namespace

cplx poly_eval(const PolyCoeffs& c, cplx z) {
    cplx p(0.0, 0.0);
    for (std::size_t i = c.size(); i-- > 0;) p = p * z + c[i];
    return p;
}

PolyCoeffs poly_derivative(const PolyCoeffs& c) {
    if (c.size() <= 1) return {cplx(0.0, 0.0)};
    PolyCoeffs d(c.size() - 1);
    for (std::size_t i = 1; i < c.size(); ++i) d[i - 1] = c[i] * double(i);
    return d;
}

PolyCoeffs poly_add(const PolyCoeffs& a, const PolyCoeffs& b) {
    PolyCoeffs r(std::max(a.size(), b.size()), cplx(0.0, 0.0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return r;
}

PolyCoeffs poly_scale(const PolyCoeffs& a, cplx s) {
    PolyCoeffs r = a;
    for (auto& v : r) v *= s;
    return r;
}

PolyCoeffs poly_mul(const PolyCoeffs& a, const PolyCoeffs& b) {
    if (a.empty() || b.empty()) return {};
    PolyCoeffs r(a.size() + b.size() - 1, cplx(0.0, 0.0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

PolyCoeffs poly_compose(const PolyCoeffs& q, const PolyCoeffs& r) {
    PolyCoeffs acc{cplx(0.0, 0.0)};
    for (std::size_t i = q.size(); i-- > 0;) {
        acc = poly_mul(acc, r);
        if (acc.empty()) acc = {cplx(0.0, 0.0)};
        acc[0] += q[i];
    }
    return acc;
}

PolyCoeffs poly_divide(const PolyCoeffs& a, const PolyCoeffs& b, PolyCoeffs* remainder) {
    PolyCoeffs rem = a;
    if (b.empty() || b.back() == cplx(0.0, 0.0)) throw DomainError("poly_divide: zero divisor");
    if (a.size() < b.size()) {
        if (remainder) *remainder = rem;
        return {cplx(0.0, 0.0)};
    }
    PolyCoeffs q(a.size() - b.size() + 1, cplx(0.0, 0.0));
    for (std::size_t i = q.size(); i-- > 0;) {
        cplx f = rem[i + b.size() - 1] / b.back();
        q[i] = f;
        for (std::size_t j = 0; j < b.size(); ++j) rem[i + j] -= f * b[j];
    }
    rem.resize(b.size() - 1);
    if (rem.empty()) rem = {cplx(0.0, 0.0)};
    if (remainder) *remainder = rem;
    return q;
}

void poly_trim(PolyCoeffs& c, double tol) {
    while (c.size() > 1 && std::abs(c.back()) <= tol) c.pop_back();
}

std::vector<cplx> poly_roots(const PolyCoeffs& coeffs_in, int max_iter) {
    PolyCoeffs c = coeffs_in;
    poly_trim(c);
    if (c.size() <= 1) return {};
    const std::size_t n = c.size() - 1;
    // Normalize to monic.
    cplx lead = c.back();
    if (std::abs(lead) == 0.0) throw DomainError("poly_roots: zero leading coefficient");
    for (auto& v : c) v /= lead;

    if (n == 1) return {-c[0]};
    if (n == 2) {
        // Stable quadratic formula.
        cplx b = c[1], a0 = c[0];
        cplx disc = std::sqrt(b * b - 4.0 * a0);
        cplx q = (std::real(std::conj(b) * disc) >= 0.0) ? -(b + disc) * 0.5 : -(b - disc) * 0.5;
        if (std::abs(q) == 0.0) return {cplx(0.0, 0.0), cplx(0.0, 0.0)};
        return {q, a0 / q};
    }

    // Cauchy bound for the root radius.
    double bound = 0.0;
    for (std::size_t i = 0; i < n; ++i) bound = std::max(bound, std::abs(c[i]));
    double radius = 1.0 + bound;

    const PolyCoeffs dcoef = poly_derivative(c);
    std::vector<cplx> z(n);
    for (std::size_t i = 0; i < n; ++i) {
        double ang = 2.0 * std::numbers::pi * double(i) / double(n) + 0.41;
        z[i] = radius * std::polar(1.0, ang) * (0.3 + 0.7 * double(i + 1) / double(n));
    }

    const double scale = std::max(1.0, coeff_scale(c, radius));
    std::vector<bool> done(n, false);
    for (int iter = 0; iter < max_iter; ++iter) {
        double max_step = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (done[i]) continue;
            cplx dp;
            cplx p = eval_with_deriv(c, z[i], &dp);
            if (std::abs(p) <= 64.0 * kEps * scale) {
                done[i] = true;
                continue;
            }
            cplx w = (std::abs(dp) > 0.0) ? p / dp : cplx(1e-3, 1e-3);
            cplx s(0.0, 0.0);
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) continue;
                cplx diff = z[i] - z[j];
                if (std::abs(diff) < 1e-300) diff = cplx(1e-300, 0.0);
                s += 1.0 / diff;
            }
            cplx denom = 1.0 - w * s;
            cplx step = (std::abs(denom) > 1e-12) ? w / denom : w;
            z[i] -= step;
            max_step = std::max(max_step, std::abs(step) / (1.0 + std::abs(z[i])));
        }
        if (max_step < 1e-15) break;
    }

    // Newton polish (no effect on multiple-root clusters beyond stabilizing).
    for (std::size_t i = 0; i < n; ++i) {
        for (int it = 0; it < 6; ++it) {
            cplx dp;
            cplx p = eval_with_deriv(c, z[i], &dp);
            if (std::abs(dp) == 0.0) break;
            cplx step = p / dp;
            if (!(std::abs(step) < 1.0 + std::abs(z[i]))) break;
            z[i] -= step;
            if (std::abs(step) < 1e-16 * (1.0 + std::abs(z[i]))) break;
        }
    }
    return z;
}

int winding_count(const PolyCoeffs& coeffs, cplx center, double radius) {
    int samples = 256;
    double prev = std::numeric_limits<double>::quiet_NaN();
    for (; samples <= 1 << 16; samples *= 2) {
        double total = 0.0;
        cplx z0 = center + radius;
        double arg_prev = std::arg(poly_eval(coeffs, z0));
        for (int s = 1; s <= samples; ++s) {
            double ang = 2.0 * std::numbers::pi * double(s) / double(samples);
            cplx z = center + radius * std::polar(1.0, ang);
            cplx v = poly_eval(coeffs, z);
            if (std::abs(v) == 0.0) return -1;  // root on the contour
            double a = std::arg(v);
            double d = a - arg_prev;
            while (d > std::numbers::pi) d -= 2.0 * std::numbers::pi;
            while (d < -std::numbers::pi) d += 2.0 * std::numbers::pi;
            total += d;
            arg_prev = a;
        }
        double w = total / (2.0 * std::numbers::pi);
        if (std::abs(w - std::round(w)) < 0.05 && (samples > 256 && std::abs(w - prev) < 0.05))
            return static_cast<int>(std::lround(w));
        prev = w;
    }
    return -1;
}

std::vector<RootCluster> cluster_roots(const PolyCoeffs& coeffs, const std::vector<cplx>& roots,
                                       double base_radius) {
    struct Cl {
        cplx sum;
        std::vector<cplx> members;
        cplx centroid() const { return sum / double(members.size()); }
    };
    std::vector<Cl> cl;
    for (cplx r : roots) cl.push_back({r, {r}});
    // Sort by real part for determinism.
    std::sort(cl.begin(), cl.end(), [](const Cl& a, const Cl& b) {
        cplx ca = a.centroid(), cb = b.centroid();
        if (std::real(ca) != std::real(cb)) return std::real(ca) < std::real(cb);
        return std::imag(ca) < std::imag(cb);
    });

    bool merged = true;
    while (merged) {
        merged = false;
        for (std::size_t i = 0; i < cl.size() && !merged; ++i) {
            for (std::size_t j = i + 1; j < cl.size() && !merged; ++j) {
                cplx ci = cl[i].centroid(), cj = cl[j].centroid();
                int m = static_cast<int>(cl[i].members.size() + cl[j].members.size());
                double sep = std::abs(ci - cj);
                double scale = 1.0 + std::max(std::abs(ci), std::abs(cj));
                // An m-fold root is only resolvable to ~eps^(1/m) in doubles.
                double adaptive = 60.0 * scale * std::pow(kEps, 1.0 / double(m));
                if (sep < std::max(base_radius, adaptive)) {
                    cl[i].sum += cl[j].sum;
                    cl[i].members.insert(cl[i].members.end(), cl[j].members.begin(),
                                         cl[j].members.end());
                    cl.erase(cl.begin() + j);
                    merged = true;
                }
            }
        }
    }

    std::vector<RootCluster> out;
    for (auto& c : cl) {
        RootCluster rc;
        rc.multiplicity = static_cast<int>(c.members.size());
        rc.value = c.centroid();
        if (rc.multiplicity > 1) {
            // An m-fold root of p is a simple root of p^(m-1).
            PolyCoeffs dk = coeffs;
            for (int t = 0; t + 1 < rc.multiplicity; ++t) dk = poly_derivative(dk);
            for (int it = 0; it < 30; ++it) {
                cplx dp;
                cplx p = eval_with_deriv(dk, rc.value, &dp);
                if (std::abs(dp) == 0.0) break;
                cplx step = p / dp;
                rc.value -= step;
                if (std::abs(step) < 1e-15 * (1.0 + std::abs(rc.value))) break;
            }
        }
        rc.spread = 0.0;
        for (cplx m : c.members) rc.spread = std::max(rc.spread, std::abs(m - rc.value));
        out.push_back(rc);
    }

    // Validate multiplicities with a winding count on a separating circle.
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (out[i].multiplicity == 1) continue;
        double nearest = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < out.size(); ++j)
            if (j != i) nearest = std::min(nearest, std::abs(out[i].value - out[j].value));
        double r = std::max(4.0 * out[i].spread, 1e-5 * (1.0 + std::abs(out[i].value)));
        if (std::isfinite(nearest)) r = std::min(r, 0.45 * nearest);
        if (r <= 2.0 * out[i].spread) continue;  // too entangled to separate; keep cardinality
        int w = winding_count(coeffs, out[i].value, r);
        if (w >= 0 && w != out[i].multiplicity) {
            std::ostringstream msg;
            msg << "root multiplicity validation failed near (" << std::real(out[i].value) << ","
                << std::imag(out[i].value) << "): cluster size " << out[i].multiplicity
                << " vs winding " << w << ", spread " << out[i].spread;
            throw ConvergenceError(msg.str());
        }
    }
    return out;
}

}  // namespace henon
