#pragma once

#include "cwlab/multiplier.hpp"

namespace cwlab {

// H^s norm via the discrete Parseval relation:
//   ||f||_{H^s}^2 = L * sum_xi <xi>^{2s} |c(xi)|^2
inline double sobolev_norm(const RealField& f, double s) {
    const auto& g = f.grid();
    const auto& c = f.spectrum();
    double acc = std::norm(c[0]) * std::pow(japanese_bracket(0.0), 2 * s);
    for (int k = 1; k < g.half_size() - 1; ++k)
        acc += 2.0 * std::norm(c[k]) * std::pow(japanese_bracket(g.xi(k)), 2 * s);
    acc += std::norm(c.back()) * std::pow(japanese_bracket(g.xi(g.size() / 2)), 2 * s);
    return std::sqrt(acc * g.length());
}

// homogeneous variant |D|^s with the zero mode dropped
inline double sobolev_norm_homogeneous(const RealField& f, double s) {
    const auto& g = f.grid();
    const auto& c = f.spectrum();
    double acc = 0.0;
    for (int k = 1; k < g.half_size() - 1; ++k)
        acc += 2.0 * std::norm(c[k]) * std::pow(std::fabs(g.xi(k)), 2 * s);
    acc += std::norm(c.back()) * std::pow(g.xi(g.size() / 2), 2 * s);
    return std::sqrt(acc * g.length());
}

// L^q norm by the trapezoid rule on grid nodes (exact trapezoid = rectangle
// sum for periodic integrands); q = infinity means the grid max.
inline double lq_norm(const RealField& f, double q) {
    if (std::isinf(q)) return f.linf();
    if (q < 1.0) throw config_error("Lebesgue exponent must be >= 1");
    double acc = 0.0;
    for (double v : f.values()) acc += std::pow(std::fabs(v), q);
    return std::pow(acc * f.grid().spacing(), 1.0 / q);
}

// Mixed space-time norm specification.  `time_outside` selects
// L^p_t L^q_alpha (true) versus L^q_alpha L^p_t (false).
struct MixedNormSpec {
    double p = 2.0;
    double q = 2.0;
    double s = 0.0;           // spatial derivative order, |D|^s with D-1 zero mode
    double t0 = 0.0, t1 = 1.0;
    bool time_outside = true;
    bool bessel_weight = false;  // use <D>^s instead of |D|^s

    void validate() const {
        if (!(p >= 1.0) || !(q >= 1.0)) throw config_error("exponents must be >= 1");
        if (!(t1 > t0)) throw config_error("empty time window");
    }
};

// Mixed norm of uniformly spaced snapshots covering [t0, t1].  The time
// integral is a trapezoid over snapshot times; p or q = infinity use maxima.
inline double mixed_norm(const std::vector<RealField>& snapshots, const MixedNormSpec& spec) {
    spec.validate();
    if (snapshots.size() < 2) throw insufficient_data_error("mixed norm needs >= 2 snapshots");
    const size_t nt = snapshots.size();
    const double dt = (spec.t1 - spec.t0) / double(nt - 1);

    auto weighted = [&](const RealField& f) {
        if (spec.s == 0.0) return f;
        return spec.bessel_weight ? op::bessel(spec.s)(f) : op::abs_deriv(spec.s)(f);
    };

    if (spec.time_outside) {
        std::vector<double> space(nt);
        for (size_t i = 0; i < nt; ++i) space[i] = lq_norm(weighted(snapshots[i]), spec.q);
        if (std::isinf(spec.p)) {
            double m = 0;
            for (double v : space) m = std::max(m, v);
            return m;
        }
        double acc = 0;
        for (size_t i = 0; i < nt; ++i) {
            const double w = (i == 0 || i == nt - 1) ? 0.5 : 1.0;
            acc += w * std::pow(space[i], spec.p);
        }
        return std::pow(acc * dt, 1.0 / spec.p);
    }

    // space outside: per-node time norm first, then the spatial L^q
    const auto& g = snapshots.front().grid();
    std::vector<RealField> wf;
    wf.reserve(nt);
    for (const auto& f : snapshots) wf.push_back(weighted(f));
    RealField timenorm(g);
    auto& tv = timenorm.mutable_values();
    for (int m = 0; m < g.size(); ++m) {
        if (std::isinf(spec.p)) {
            double mx = 0;
            for (size_t i = 0; i < nt; ++i) mx = std::max(mx, std::fabs(wf[i][m]));
            tv[m] = mx;
        } else {
            double acc = 0;
            for (size_t i = 0; i < nt; ++i) {
                const double w = (i == 0 || i == nt - 1) ? 0.5 : 1.0;
                acc += w * std::pow(std::fabs(wf[i][m]), spec.p);
            }
            tv[m] = std::pow(acc * dt, 1.0 / spec.p);
        }
    }
    return lq_norm(timenorm, spec.q);
}

}  // namespace cwlab
