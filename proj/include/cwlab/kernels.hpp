#pragma once

#include "cwlab/multiplier.hpp"

namespace cwlab {

// Periodized singular kernels.  A curve with horizontal period P has all its
// periodic images summed in closed form:
//   sum_n 1/(w+nP)   = (pi/P) cot(pi w / P)
//   sum_n 1/(w+nP)^2 = (pi/P)^2 / sin^2(pi w / P)
//   sum_n 1/(w+nP)^3 = (pi/P)^3 cos(pi w / P) / sin^3(pi w / P)
namespace kernel {

inline cplx k1(cplx w, double P) {
    const cplx a = pi * w / P;
    return (pi / P) * std::cos(a) / std::sin(a);
}

inline cplx k2(cplx w, double P) {
    const cplx s = std::sin(pi * w / P);
    return (pi / P) * (pi / P) / (s * s);
}

inline cplx k3(cplx w, double P) {
    const cplx a = pi * w / P;
    const cplx s = std::sin(a);
    return std::pow(pi / P, 3) * std::cos(a) / (s * s * s);
}

}  // namespace kernel

// Principal-value quadrature by the alternate-point trapezoid rule: the sum
// runs over nodes of opposite parity with weight 2h, which is spectrally
// accurate for integrands of the form smooth + smooth * cot.
// `integrand(m, mp)` evaluates the full integrand at target m, source mp.
template <class F>
std::vector<cplx> pv_alternate_sum(const PeriodicGrid& g, F&& integrand) {
    const int n = g.size();
    const double two_h = 2.0 * g.spacing();
    std::vector<cplx> out(n);
    for (int m = 0; m < n; ++m) {
        cplx acc = 0.0;
        for (int mp = (m + 1) % 2; mp < n; mp += 2) acc += integrand(m, mp);
        out[m] = two_h * acc;
    }
    return out;
}

// Plain trapezoid for integrands with a removable diagonal singularity;
// `diagonal(m)` supplies the analytic limit at mp == m.
template <class F, class D>
std::vector<cplx> trapezoid_sum(const PeriodicGrid& g, F&& integrand, D&& diagonal) {
    const int n = g.size();
    const double h = g.spacing();
    std::vector<cplx> out(n);
    for (int m = 0; m < n; ++m) {
        cplx acc = diagonal(m);
        for (int mp = 0; mp < n; ++mp)
            if (mp != m) acc += integrand(m, mp);
        out[m] = h * acc;
    }
    return out;
}

// Kernel calculus bound to one parametrized curve: z values, unit tangent
// z_a, curvature data z_aa, horizontal period P.  All operators return the
// conjugate-velocity convention used by the Birkhoff-Rott integral.
class CurveKernels {
  public:
    CurveKernels(const PeriodicGrid& grid, std::vector<cplx> z, std::vector<cplx> z_a,
                 std::vector<cplx> z_aa, double period_x)
        : g_(grid), z_(std::move(z)), za_(std::move(z_a)), zaa_(std::move(z_aa)), P_(period_x) {}

    const PeriodicGrid& grid() const { return g_; }
    double period_x() const { return P_; }

    // (1/2 pi i) PV int f(a') K1(z - z') da' -- the full singular integral,
    // evaluated directly; serves as the independent route against the
    // Hilbert-plus-smoothing split.
    ComplexField br_full(const ComplexField& f) const {
        auto vals = pv_alternate_sum(g_, [&](int m, int mp) {
            return f[mp] * kernel::k1(z_[m] - z_[mp], P_);
        });
        return scale(vals);
    }

    // K[z]f: the smoothing remainder of the Birkhoff-Rott kernel after the
    // flat kernel is subtracted.  Regular integrand; the diagonal limit is
    // -z_aa / (2 z_a^2).
    ComplexField smoothing_k(const ComplexField& f) const {
        const double L = g_.length();
        auto vals = trapezoid_sum(
            g_,
            [&](int m, int mp) {
                const cplx curve = kernel::k1(z_[m] - z_[mp], P_);
                const cplx flat =
                    kernel::k1(cplx(g_.node(m) - g_.node(mp), 0.0), L) / za_[mp];
                return f[mp] * (curve - flat);
            },
            [&](int m) { return f[m] * (-zaa_[m] / (2.0 * za_[m] * za_[m])); });
        return scale(vals);
    }

    // D[z,w]f = (1/2 pi i) PV int f(a') (w(a) - w(a')) K2(z - z') da'
    ComplexField dkernel(const std::vector<cplx>& w, const ComplexField& f) const {
        auto vals = pv_alternate_sum(g_, [&](int m, int mp) {
            return f[mp] * (w[m] - w[mp]) * kernel::k2(z_[m] - z_[mp], P_);
        });
        return scale(vals);
    }

    // T[z,w1,w2]f = (1/2 pi i) PV int f (w1-w1')(w2-w2') K3(z - z') da'
    ComplexField tkernel(const std::vector<cplx>& w1, const std::vector<cplx>& w2,
                         const ComplexField& f) const {
        auto vals = pv_alternate_sum(g_, [&](int m, int mp) {
            return f[mp] * (w1[m] - w1[mp]) * (w2[m] - w2[mp]) *
                   kernel::k3(z_[m] - z_[mp], P_);
        });
        return scale(vals);
    }

    // minimum separation over pairs at least `sep` nodes apart; guards the
    // kernels against near self-intersection
    void check_separation(double min_factor = 0.01, int sep = 8) const {
        const int n = g_.size();
        const double floor_dist = min_factor * g_.spacing();
        for (int m = 0; m < n; ++m)
            for (int mp = m + sep; mp < n && mp < m + n - sep + 1; ++mp) {
                // horizontal wrap: compare against the nearest periodic image
                cplx d = z_[m] - z_[mp];
                double re = std::remainder(d.real(), P_);
                const double dist = std::hypot(re, d.imag());
                if (dist < floor_dist)
                    throw curve_degeneracy_error("near self-intersection of the interface");
            }
    }

  private:
    ComplexField scale(std::vector<cplx>& vals) const {
        const cplx pref = 1.0 / cplx(0.0, 2.0 * pi);
        for (auto& v : vals) v *= pref;
        return ComplexField(g_, std::move(vals));
    }

    PeriodicGrid g_;
    std::vector<cplx> z_, za_, zaa_;
    double P_;
};

// Commutator [H, h]f via its kernel: (1/pi) PV int f(a') (h(a') - h(a)) K1(a - a') da'.
// The integrand is regular; the diagonal limit is -f(a) h'(a) / pi ... folded
// into the trapezoid below (the 1/pi prefactor applied at the end).
inline RealField commutator_kernel(const RealField& h, const RealField& f) {
    const auto& g = f.grid();
    const double L = g.length();
    const RealField ha = deriv(h);
    auto vals = trapezoid_sum(
        g,
        [&](int m, int mp) {
            return cplx(f[mp] * (h[mp] - h[m]), 0.0) *
                   kernel::k1(cplx(g.node(m) - g.node(mp), 0.0), L);
        },
        [&](int m) { return cplx(-f[m] * ha[m], 0.0); });
    RealField out(g);
    auto& ov = out.mutable_values();
    for (int m = 0; m < g.size(); ++m) ov[m] = vals[m].real() / pi;
    return out;
}

// multiplier-difference form, the production route
inline RealField commutator_h(const RealField& h, const RealField& f) {
    return hilbert(h * f) - h * hilbert(f);
}

inline ComplexField commutator_h(const ComplexField& h, const ComplexField& f) {
    return hilbert(h * f) - h * hilbert(f);
}

}  // namespace cwlab
