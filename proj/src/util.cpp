#include "henon/util.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <thread>

namespace henon {

LogCplx LogCplx::from(cplx z) {
    double m = std::abs(z);
    if (m == 0.0 || !std::isfinite(m)) {
        if (m == 0.0) return {cplx(0.0, 0.0), 0.0};
        // Non-finite input: keep the direction if possible, clamp the scale.
        return {cplx(1.0, 0.0), 700.0};
    }
    return {z / m, std::log(m)};
}

cplx LogCplx::value() const {
    if (zero()) return {0.0, 0.0};
    return unit * std::exp(log_mod);
}

LogCplx log_add(const LogCplx& a, const LogCplx& b) {
    if (a.zero()) return b;
    if (b.zero()) return a;
    const LogCplx& big = (a.log_mod >= b.log_mod) ? a : b;
    const LogCplx& sml = (a.log_mod >= b.log_mod) ? b : a;
    double delta = sml.log_mod - big.log_mod;  // <= 0
    cplx s = big.unit + sml.unit * std::exp(delta);
    double m = std::abs(s);
    if (m == 0.0) return {cplx(0.0, 0.0), 0.0};
    return {s / m, big.log_mod + std::log(m)};
}

LogCplx log_mul(const LogCplx& a, const LogCplx& b) {
    if (a.zero() || b.zero()) return {cplx(0.0, 0.0), 0.0};
    cplx u = a.unit * b.unit;
    double m = std::abs(u);  // ~1, renormalize drift
    return {u / m, a.log_mod + b.log_mod + std::log(m)};
}

LogCplx log_pow_int(const LogCplx& a, int n) {
    if (a.zero()) return a;
    cplx acc(1.0, 0.0);
    cplx b = a.unit;
    int e = n;
    while (e > 0) {
        if (e & 1) {
            acc *= b;
            acc /= std::abs(acc);  // keep on the unit circle
        }
        b *= b;
        b /= std::abs(b);
        e >>= 1;
    }
    return {acc, a.log_mod * n};
}

unsigned default_threads() {
    if (const char* env = std::getenv("HENON_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return static_cast<unsigned>(v);
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? hc : 1;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body, unsigned threads) {
    if (threads == 0) threads = default_threads();
    if (n == 0) return;
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    std::size_t chunk = (n + threads - 1) / threads;
    std::exception_ptr first_error;
    std::mutex err_mutex;
    for (unsigned t = 0; t < threads; ++t) {
        std::size_t lo = t * chunk;
        std::size_t hi = std::min(n, lo + chunk);
        pool.emplace_back([&, lo, hi]() {
            try {
                for (std::size_t i = lo; i < hi; ++i) body(i);
            } catch (...) {
                std::lock_guard<std::mutex> g(err_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

std::uint64_t split_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace henon
