#include "henon/map.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace henon {

Mat2 mat_mul(const Mat2& a, const Mat2& b) {
    return {{a.m[0] * b.m[0] + a.m[1] * b.m[2], a.m[0] * b.m[1] + a.m[1] * b.m[3],
             a.m[2] * b.m[0] + a.m[3] * b.m[2], a.m[2] * b.m[1] + a.m[3] * b.m[3]}};
}

std::pair<cplx, cplx> eigenvalues(cplx trace, cplx det) {
    cplx disc = std::sqrt(trace * trace - 4.0 * det);
    // Pick the branch maximizing |trace +- disc| to avoid cancellation.
    cplx big = (std::abs(trace + disc) >= std::abs(trace - disc)) ? (trace + disc) * 0.5
                                                                  : (trace - disc) * 0.5;
    if (std::abs(big) == 0.0) return {cplx(0, 0), cplx(0, 0)};
    cplx small = det / big;
    if (std::abs(small) > std::abs(big)) std::swap(small, big);
    return {small, big};
}

HenonFactor::HenonFactor(cplx a_, MonicCenteredPoly p_) : a(a_), p(std::move(p_)) {
    if (std::abs(a) == 0.0) throw DomainError("Henon factor requires a != 0");
}

LogPoint2 HenonFactor::apply_log(const LogPoint2& z) const {
    LogCplx px = p.eval_log(z.x);
    LogCplx ay = log_mul(LogCplx::from(a), z.y);
    return {log_add(px, ay), z.x};
}

HenonComposition::HenonComposition(std::vector<HenonFactor> factors) : f_(std::move(factors)) {
    if (f_.empty()) throw DomainError("composition requires at least one factor");
    d_ = 1;
    jac_ = cplx(1.0, 0.0);
    for (const auto& h : f_) {
        d_ *= h.p.degree();
        jac_ *= -h.a;
    }
    if (d_ < 2) throw DomainError("total degree must be >= 2");
    m_ = 0.0;
    for (const auto& h : f_) m_ = std::max(m_, max_escape_rate(h.p, 1e-12).M);
    r_ = std::exp(m_);
}

std::vector<int> HenonComposition::multidegree() const {
    std::vector<int> md;
    for (const auto& h : f_) md.push_back(h.p.degree());
    return md;
}

Point2 HenonComposition::eval(const Point2& z) const {
    Point2 w = z;
    for (const auto& h : f_) w = h.apply(w);
    return w;
}

Point2 HenonComposition::eval_inverse(const Point2& z) const {
    Point2 w = z;
    for (auto it = f_.rbegin(); it != f_.rend(); ++it) w = it->apply_inverse(w);
    return w;
}

Point2 HenonComposition::eval_iter(const Point2& z, int n) const {
    Point2 w = z;
    for (int i = 0; i < n; ++i) w = eval(w);
    return w;
}

LogPoint2 HenonComposition::eval_log(const LogPoint2& z) const {
    LogPoint2 w = z;
    for (const auto& h : f_) w = h.apply_log(w);
    return w;
}

Mat2 HenonComposition::differential(const Point2& z) const {
    Mat2 acc{{cplx(1, 0), cplx(0, 0), cplx(0, 0), cplx(1, 0)}};
    Point2 w = z;
    for (const auto& h : f_) {
        acc = mat_mul(h.differential(w), acc);
        w = h.apply(w);
    }
    return acc;
}

Mat2 HenonComposition::inverse_differential(const Point2& z) const {
    Mat2 acc{{cplx(1, 0), cplx(0, 0), cplx(0, 0), cplx(1, 0)}};
    Point2 w = z;
    for (auto it = f_.rbegin(); it != f_.rend(); ++it) {
        acc = mat_mul(it->inverse_differential(w), acc);
        w = it->apply_inverse(w);
    }
    return acc;
}

HenonComposition HenonComposition::rotated(int shift) const {
    int kk = k();
    shift = ((shift % kk) + kk) % kk;
    std::vector<HenonFactor> nf;
    for (int i = 0; i < kk; ++i) nf.push_back(f_[(shift + i) % kk]);
    return HenonComposition(std::move(nf));
}

HenonComposition unity_action(const HenonComposition& f, cplx alpha) {
    const int d = f.degree();
    if (std::abs(std::pow(alpha, d - 1) - cplx(1.0, 0.0)) > 1e-12)
        throw DomainError("unity_action: alpha^(d-1) != 1");
    const int kk = f.k();
    std::vector<cplx> al(kk);
    al[0] = alpha;
    for (int i = 0; i + 1 < kk; ++i) al[i + 1] = std::pow(al[i], f.factors()[i].p.degree());
    std::vector<HenonFactor> nf;
    for (int i = 0; i < kk; ++i) {
        cplx a_next = al[(i + 1) % kk];
        cplx a_prev = al[(i - 1 + kk) % kk];
        const HenonFactor& h = f.factors()[i];
        cplx na = (a_prev / a_next) * h.a;
        std::vector<cplx> nb = h.p.low_coeffs();
        for (std::size_t m = 0; m < nb.size(); ++m)
            nb[m] *= std::pow(al[i], double(m)) / a_next;
        nf.emplace_back(na, MonicCenteredPoly(h.p.degree(), std::move(nb)));
    }
    return HenonComposition(std::move(nf));
}

double mbar(const HenonComposition& f, double tol) {
    (void)tol;
    const int d = f.degree();
    double best = f.escape_rate_M();
    for (int t = 1; t < d - 1; ++t) {
        cplx alpha = std::polar(1.0, 2.0 * std::numbers::pi * double(t) / double(d - 1));
        best = std::max(best, unity_action(f, alpha).escape_rate_M());
    }
    return best;
}

InverseNormalForm inverse_normal_form(const HenonComposition& f) {
    const int kk = f.k();
    const int d = f.degree();
    // tau-conjugated inverse factors, in application order:
    // H_j(x,y) = (A_j y + Q_j(x), x) with A_j = 1/a_{k-1-j},
    // Q_j = -p_{k-1-j}/a_{k-1-j} (leading coefficient L_j = -1/a_{k-1-j}).
    //
    // Diagonal maps l_j(x,y) = (g_j x, g_{j-1} y) make every factor monic:
    // g_j = L_j g_{j-1}^{e_j} with e_j the degree of Q_j, solved around the
    // cycle by a principal (d-1)-th root.
    std::vector<cplx> l_lead(kk), log_lead(kk);
    std::vector<int> e(kk);
    for (int j = 0; j < kk; ++j) {
        const HenonFactor& h = f.factors()[kk - 1 - j];
        l_lead[j] = -1.0 / h.a;
        log_lead[j] = std::log(l_lead[j]);
        e[j] = h.p.degree();
    }
    // gamma_{k-1} = gamma, gamma_j = L_j gamma_{j-1}^{e_j}; going around:
    // gamma = K gamma^d with log K = sum_j (prod_{i>j} e_i) log L_j.
    cplx logK(0.0, 0.0);
    {
        double tail = 1.0;
        for (int j = kk - 1; j >= 0; --j) {
            logK += tail * log_lead[j];
            tail *= e[j];
        }
    }
    cplx gamma = std::exp(-logK / double(d - 1));
    std::vector<cplx> g(kk);
    cplx prev = gamma;  // gamma_{-1} = gamma_{k-1}
    for (int j = 0; j < kk; ++j) {
        g[j] = l_lead[j] * std::pow(prev, e[j]);
        prev = g[j];
    }

    std::vector<HenonFactor> nf;
    for (int j = 0; j < kk; ++j) {
        const HenonFactor& h = f.factors()[kk - 1 - j];
        cplx g_prev = g[(j - 1 + kk) % kk];
        cplx g_prev2 = g[(j - 2 + kk) % kk];
        cplx na = g_prev2 / (g[j] * h.a);
        // Q'_j(x) = g_j^{-1} Q_j(g_{j-1} x); monic by construction.
        std::vector<cplx> nb(h.p.degree() - 1);
        for (int m = 0; m <= h.p.degree() - 2; ++m)
            nb[m] = -(h.p.low_coeffs()[m] / h.a) * std::pow(g_prev, double(m)) / g[j];
        nf.emplace_back(na, MonicCenteredPoly(h.p.degree(), std::move(nb)));
    }
    InverseNormalForm out{HenonComposition(std::move(nf)), g[kk - 1], g[(kk - 2 + kk) % kk], 0.0};

    // Conjugacy check: f^{-1}(L(z)) = L(g(z)) with L(x,y) = (cy*y, cx*x).
    std::mt19937_64 rng(0x9d2c5681u);
    std::uniform_real_distribution<double> U(-1.5, 1.5);
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
        Point2 z{cplx(U(rng), U(rng)), cplx(U(rng), U(rng))};
        Point2 Lz{out.cy * z.y, out.cx * z.x};
        Point2 lhs = f.eval_inverse(Lz);
        Point2 gz = out.g.eval(z);
        Point2 rhs{out.cy * gz.y, out.cx * gz.x};
        worst = std::max(worst, dist(lhs, rhs) / (1.0 + sup_norm(lhs)));
    }
    out.residual = worst;
    return out;
}

namespace {

// Composite 1 + theta for one full application of f in log-polar form,
// together with the image point.
struct ThetaStep {
    LogPoint2 next;
    cplx one_plus_theta;
    double theta_log_excess;  // log|x_1| - d log|x|
};

ThetaStep theta_step(const HenonComposition& f, const LogPoint2& z) {
    LogPoint2 nz = f.eval_log(z);
    double ratio_log = nz.x.log_mod - double(f.degree()) * z.x.log_mod;
    cplx unit_ratio = nz.x.unit * std::conj(log_pow_int(z.x, f.degree()).unit);
    cplx opt = (ratio_log > 690.0) ? cplx(1e300, 0.0) : unit_ratio * std::exp(ratio_log);
    return {nz, opt, ratio_log};
}

cplx bottcher_product(const HenonComposition& f, const Point2& z, double theta_cap) {
    const int d = f.degree();
    const double R = f.escape_radius();
    LogPoint2 w = LogPoint2::from(z);
    cplx s(0.0, 0.0);
    double weight = 1.0 / double(d);
    double prev_lx = w.x.log_mod;
    for (int k = 0; k < 500; ++k) {
        ThetaStep st = theta_step(f, w);
        double theta_abs = std::abs(st.one_plus_theta - cplx(1.0, 0.0));
        if (theta_abs > theta_cap) {
            std::ostringstream msg;
            msg << "bottcher_plus: |theta_" << k << "| = " << theta_abs
                << " exceeds the contraction bound " << theta_cap;
            throw DomainError(msg.str());
        }
        s += std::log(st.one_plus_theta) * weight;
        w = st.next;
        if (k > 0 && w.x.log_mod < prev_lx + std::log(2.0))
            throw DomainError("bottcher_plus: orbit stopped growing, uncertified domain");
        prev_lx = w.x.log_mod;
        weight /= double(d);
        double tail = 3.0 * R * std::exp(-w.x.log_mod) * weight;
        if (tail < 1e-14 || w.x.log_mod > 690.0) break;
        if (k == 499) throw ConvergenceError("bottcher_plus: product did not converge");
    }
    return z.x * std::exp(s);
}

}  // namespace

double green_plus(const HenonComposition& f, const Point2& z, double tol) {
    if (tol <= 0.0) throw DomainError("green_plus: tol must be positive");
    const int d = f.degree();
    const double R = f.escape_radius();
    const double B = 12.0 * d * R;
    const int n_max = static_cast<int>(std::ceil(std::log(1.0 / tol) / std::log(double(d)))) + 200;

    Point2 w = z;
    for (int n = 0; n <= n_max; ++n) {
        double ax = std::abs(w.x), ay = std::abs(w.y);
        if (!std::isfinite(ax) || !std::isfinite(ay)) {
            // Blown past double range before entering the escape sector; the
            // point is certainly escaping, restart the estimate in log form.
            LogPoint2 lw = LogPoint2::from(w);
            double dn = std::pow(double(d), double(n));
            return std::max(0.0, lw.x.log_mod) / dn;
        }
        if (ax >= ay && ax >= B) {
            LogPoint2 lw = LogPoint2::from(w);
            int m = n;
            double dm = std::pow(double(d), double(m));
            while (2.0 * R * std::exp(-lw.x.log_mod) / dm >= 0.5 * tol && m < n + 600 &&
                   lw.x.log_mod <= 690.0) {
                lw = f.eval_log(lw);
                ++m;
                dm *= double(d);
            }
            return lw.x.log_mod / dm;
        }
        // Bounded region: direct evaluation is safe (coordinates stay
        // moderate until the sector above is entered).
        w = f.eval(w);
        if (sup_norm(w) > 1e120) {
            // Rare transition through a huge |y|: switch to log form.
            LogPoint2 lw = LogPoint2::from(w);
            int m = n + 1;
            double dm = std::pow(double(d), double(m));
            for (int extra = 0; extra < 600; ++extra) {
                if (!lw.x.zero() && lw.x.log_mod >= lw.y.log_mod &&
                    lw.x.log_mod >= std::log(B)) {
                    while (2.0 * R * std::exp(-lw.x.log_mod) / dm >= 0.5 * tol &&
                           lw.x.log_mod <= 690.0) {
                        lw = f.eval_log(lw);
                        dm *= double(d);
                    }
                    return lw.x.log_mod / dm;
                }
                lw = f.eval_log(lw);
                dm *= double(d);
            }
            return lw.x.log_mod / dm;
        }
    }
    return 0.0;
}

double green_minus(const HenonComposition& f, const Point2& z, double tol) {
    InverseNormalForm inf = inverse_normal_form(f);
    // G^-_f(z) = G^+_g(L^{-1} z) with L(x,y) = (cy*y, cx*x).
    Point2 w{z.y / inf.cx, z.x / inf.cy};
    return green_plus(inf.g, w, tol);
}

cplx bottcher_plus(const HenonComposition& f, const Point2& z) {
    const int d = f.degree();
    const double R = f.escape_radius();
    for (const auto& h : f.factors()) {
        if (std::abs(h.a) > std::pow(R, h.p.degree() - 1) * (1.0 + 1e-12)) {
            std::ostringstream msg;
            msg << "bottcher_plus: uncertified domain, |a| = " << std::abs(h.a)
                << " exceeds R_f^(d_i - 1) = " << std::pow(R, h.p.degree() - 1);
            throw DomainError(msg.str());
        }
    }
    double ax = std::abs(z.x), ay = std::abs(z.y);
    if (!(ay <= ax * (1.0 + 1e-12)) || !(ax >= 12.0 * d * R * (1.0 - 1e-12))) {
        std::ostringstream msg;
        msg << "bottcher_plus: point outside {|y| <= |x|, |x| >= 12 d R_f} "
            << "(|x| = " << ax << ", |y| = " << ay << ", 12 d R = " << 12.0 * d * R << ")";
        throw DomainError(msg.str());
    }
    return bottcher_product(f, z, 1.0 / 6.0 + 1e-9);
}

cplx bottcher_plus_checked(const HenonComposition& f, const Point2& z) {
    return bottcher_product(f, z, 1.0 / 6.0 + 1e-9);
}

}  // namespace henon
