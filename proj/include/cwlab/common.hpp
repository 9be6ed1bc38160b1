#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cwlab {

using cplx = std::complex<double>;
inline constexpr double pi = 3.14159265358979323846264338327950288;

// ---------------------------------------------------------------------------
// Error taxonomy. Every failure mode named by an operation contract gets its
// own type so callers (and tests) can discriminate.
// ---------------------------------------------------------------------------

struct error : std::runtime_error {
    explicit error(const std::string& m) : std::runtime_error(m) {}
};

struct invalid_multiplier_error : error { using error::error; };
struct resolution_error : error { using error::error; };
struct insufficient_data_error : error { using error::error; };
struct non_closing_curve_error : error { using error::error; };
struct curve_degeneracy_error : error { using error::error; };
struct solver_divergence_error : error { using error::error; };
struct antiderivative_error : error { using error::error; };
struct blowup_error : error { using error::error; };
struct flow_degeneracy_error : error { using error::error; };
struct phase_assembly_error : error { using error::error; };
struct band_too_low_error : error { using error::error; };
struct config_error : error { using error::error; };

// ---------------------------------------------------------------------------
// Small numeric helpers shared across modules.
// ---------------------------------------------------------------------------

inline double sgn(double x) { return x > 0 ? 1.0 : (x < 0 ? -1.0 : 0.0); }

inline double japanese_bracket(double xi) { return std::sqrt(1.0 + xi * xi); }

// Least-squares fit y ~ a + b x; returns {a, b}.
inline std::pair<double, double> linear_fit(const std::vector<double>& x,
                                            const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw insufficient_data_error("linear_fit needs >= 2 points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = double(x.size());
    for (size_t i = 0; i < x.size(); ++i) {
        sx += x[i]; sy += y[i]; sxx += x[i] * x[i]; sxy += x[i] * y[i];
    }
    const double denom = n * sxx - sx * sx;
    const double b = (n * sxy - sx * sy) / denom;
    const double a = (sy - b * sx) / n;
    return {a, b};
}

// C-infinity step: 0 for x<=0, 1 for x>=1, built from exp(-1/x).
inline double smooth_step(double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double a = std::exp(-1.0 / x);
    const double b = std::exp(-1.0 / (1.0 - x));
    return a / (a + b);
}

// FNV-1a over raw bytes; used for reproducibility fingerprints.
inline std::uint64_t fnv1a(const void* data, size_t n, std::uint64_t h = 1469598103934665603ull) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 1099511628211ull;
    }
    return h;
}

inline std::uint64_t fnv1a(const std::vector<double>& v, std::uint64_t h = 1469598103934665603ull) {
    return v.empty() ? h : fnv1a(v.data(), v.size() * sizeof(double), h);
}

// Natural cubic spline on a uniform-or-not knot sequence.  Small n only.
class CubicSpline {
  public:
    CubicSpline() = default;
    CubicSpline(std::vector<double> x, std::vector<double> y)
        : x_(std::move(x)), y_(std::move(y)) {
        const size_t n = x_.size();
        if (n != y_.size() || n < 2) throw insufficient_data_error("spline needs >= 2 knots");
        m_.assign(n, 0.0);
        if (n == 2) return;
        // tridiagonal solve for second derivatives, natural ends
        std::vector<double> a(n, 0), b(n, 0), c(n, 0), d(n, 0);
        b[0] = 1; b[n - 1] = 1;
        for (size_t i = 1; i + 1 < n; ++i) {
            const double h0 = x_[i] - x_[i - 1], h1 = x_[i + 1] - x_[i];
            a[i] = h0 / 6.0;
            b[i] = (h0 + h1) / 3.0;
            c[i] = h1 / 6.0;
            d[i] = (y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0;
        }
        for (size_t i = 1; i < n; ++i) {
            const double w = a[i] / b[i - 1];
            b[i] -= w * c[i - 1];
            d[i] -= w * d[i - 1];
        }
        m_[n - 1] = d[n - 1] / b[n - 1];
        for (size_t i = n - 1; i-- > 0;) m_[i] = (d[i] - c[i] * m_[i + 1]) / b[i];
    }

    double operator()(double t) const { return eval(t, 0); }
    double deriv(double t) const { return eval(t, 1); }
    double lo() const { return x_.front(); }
    double hi() const { return x_.back(); }

  private:
    double eval(double t, int order) const {
        const size_t n = x_.size();
        size_t i = 0;
        if (t <= x_.front()) i = 0;
        else if (t >= x_.back()) i = n - 2;
        else {
            size_t lo = 0, hi = n - 1;
            while (hi - lo > 1) {
                const size_t mid = (lo + hi) / 2;
                (x_[mid] <= t ? lo : hi) = mid;
            }
            i = lo;
        }
        const double h = x_[i + 1] - x_[i];
        const double A = (x_[i + 1] - t) / h, B = (t - x_[i]) / h;
        if (order == 0)
            return A * y_[i] + B * y_[i + 1] +
                   ((A * A * A - A) * m_[i] + (B * B * B - B) * m_[i + 1]) * h * h / 6.0;
        return (y_[i + 1] - y_[i]) / h +
               ((1 - 3 * A * A) * m_[i] + (3 * B * B - 1) * m_[i + 1]) * h / 6.0;
    }

    std::vector<double> x_, y_, m_;
};

}  // namespace cwlab
