#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace henon {

using cplx = std::complex<double>;

/// A point of C^2.
struct Point2 {
    cplx x{0.0, 0.0};
    cplx y{0.0, 0.0};
};

inline Point2 operator-(const Point2& a, const Point2& b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator+(const Point2& a, const Point2& b) { return {a.x + b.x, a.y + b.y}; }

// Sup norm on C^2; all bidisk geometry below uses the max norm.
inline double sup_norm(const Point2& p) { return std::max(std::abs(p.x), std::abs(p.y)); }
inline double dist(const Point2& a, const Point2& b) { return sup_norm(a - b); }

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A precondition on the input was violated (point outside a certified
/// domain, invalid group element, wrong arity, ...).
class DomainError : public Error {
  public:
    using Error::Error;
};

/// An iterative solver failed; the message carries the residual.
class ConvergenceError : public Error {
  public:
    using Error::Error;
};

/// Complex number in log-polar form: value = unit * exp(log_mod), |unit| = 1.
/// Exact zero is represented by unit = 0 (log_mod is then irrelevant).
struct LogCplx {
    cplx unit{0.0, 0.0};
    double log_mod = 0.0;

    static LogCplx from(cplx z);
    cplx value() const;
    bool zero() const { return unit == cplx(0.0, 0.0); }
};

/// Sum of two log-polar numbers, rescaled by the dominant exponent.
LogCplx log_add(const LogCplx& a, const LogCplx& b);
LogCplx log_mul(const LogCplx& a, const LogCplx& b);
LogCplx log_pow_int(const LogCplx& a, int n);

/// Point of C^2 with log-polar coordinates, for escaping orbits.
struct LogPoint2 {
    LogCplx x, y;
    static LogPoint2 from(const Point2& p) { return {LogCplx::from(p.x), LogCplx::from(p.y)}; }
};

unsigned default_threads();

/// Static block partition of [0, n); the body receives each index exactly
/// once.  Results must be written to per-index slots so the outcome does not
/// depend on the number of workers.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body,
                  unsigned threads = 0);

/// Deterministic 64-bit splitmix step, used to derive stream seeds.
std::uint64_t split_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace henon
