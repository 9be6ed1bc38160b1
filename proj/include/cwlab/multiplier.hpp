#pragma once

#include <utility>

#include "cwlab/field.hpp"

namespace cwlab {

// Fourier multiplier m(D): application multiplies the spectrum pointwise by
// symbol(xi).  Real fields require symbol(-xi) = conj(symbol(xi)); the Nyquist
// coefficient is zeroed when the symbol there is not real.
//
// Zero-mode convention: sgn(0) = 0, so the Hilbert transform annihilates
// constants, and negative-power symbols set the zero-mode weight to 0.
class FourierMultiplier {
  public:
    FourierMultiplier(std::string name, std::function<cplx(double)> symbol)
        : name_(std::move(name)), symbol_(std::move(symbol)) {}

    const std::string& name() const { return name_; }
    cplx symbol(double xi) const { return symbol_(xi); }

    void validate(const PeriodicGrid& g) const {
        for (int k = 0; k < g.size(); ++k) {
            const cplx s = symbol_(g.xi_signed(k));
            if (!std::isfinite(s.real()) || !std::isfinite(s.imag()))
                throw invalid_multiplier_error(name_ + ": non-finite symbol at xi=" +
                                               std::to_string(g.xi_signed(k)));
        }
    }

    RealField operator()(const RealField& f) const {
        const auto& g = f.grid();
        validate(g);
        std::vector<cplx> c = f.spectrum();
        for (int k = 0; k < g.half_size(); ++k) c[k] *= symbol_(g.xi(k));
        // Nyquist mode has no conjugate partner; keep the output real.
        if (std::fabs(c.back().imag()) > 0) c.back() = cplx(c.back().real(), 0.0);
        if (std::fabs(symbol_(g.xi(g.size() / 2)).imag()) > 0) c.back() = 0.0;
        return RealField::from_spectrum(g, c);
    }

    ComplexField operator()(const ComplexField& f) const {
        const auto& g = f.grid();
        validate(g);
        std::vector<cplx> c = f.spectrum();
        for (int k = 0; k < g.size(); ++k) c[k] *= symbol_(g.xi_signed(k));
        return ComplexField::from_spectrum(g, c);
    }

    // composition: symbol of the product
    friend FourierMultiplier operator*(const FourierMultiplier& a, const FourierMultiplier& b) {
        auto sa = a.symbol_, sb = b.symbol_;
        return FourierMultiplier(a.name_ + "*" + b.name_,
                                 [sa, sb](double xi) { return sa(xi) * sb(xi); });
    }

  private:
    std::string name_;
    std::function<cplx(double)> symbol_;
};

namespace op {

inline FourierMultiplier hilbert() {
    return FourierMultiplier("H", [](double xi) { return cplx(0.0, -sgn(xi)); });
}

// |D|^s with the zero mode weighted 0 (also for s < 0)
inline FourierMultiplier abs_deriv(double s) {
    return FourierMultiplier("|D|^" + std::to_string(s), [s](double xi) {
        if (xi == 0.0) return cplx(0.0, 0.0);
        return cplx(std::pow(std::fabs(xi), s), 0.0);
    });
}

// <D>^s = (1+xi^2)^{s/2}
inline FourierMultiplier bessel(double s) {
    return FourierMultiplier("<D>^" + std::to_string(s), [s](double xi) {
        return cplx(std::pow(1.0 + xi * xi, 0.5 * s), 0.0);
    });
}

inline FourierMultiplier deriv(int n = 1) {
    return FourierMultiplier("D^" + std::to_string(n), [n](double xi) {
        cplx p(1.0, 0.0);
        for (int i = 0; i < n; ++i) p *= cplx(0.0, xi);
        return p;
    });
}

// H d^3/da^3 with surface tension and gravity weights; symbol -(S/2)|xi|^3 - g|xi|
inline FourierMultiplier dispersive_symbol(double S_half, double g) {
    return FourierMultiplier("Hd3", [S_half, g](double xi) {
        const double a = std::fabs(xi);
        return cplx(-(S_half * a * a * a + g * a), 0.0);
    });
}

}  // namespace op

inline RealField hilbert(const RealField& f) { return op::hilbert()(f); }
inline ComplexField hilbert(const ComplexField& f) { return op::hilbert()(f); }

inline RealField deriv(const RealField& f, int n = 1) { return op::deriv(n)(f); }
inline ComplexField deriv(const ComplexField& f, int n = 1) { return op::deriv(n)(f); }

// Antiderivative on mean-zero input: division by i*xi, zero mode set to zero.
// Inputs with |mean| > tol * l2-size are rejected.
inline RealField antideriv(const RealField& f, double rel_tol = 1e-8) {
    const double scale = f.l2() / std::sqrt(f.grid().length());
    if (std::fabs(f.mean()) > rel_tol * std::max(scale, 1e-300))
        throw antiderivative_error("antiderivative input has nonzero mean");
    const auto& g = f.grid();
    std::vector<cplx> c = f.spectrum();
    c[0] = 0.0;
    for (int k = 1; k < g.half_size(); ++k) c[k] /= cplx(0.0, g.xi(k));
    return RealField::from_spectrum(g, c);
}

// Mean-dropping antiderivative: the torus stand-in for integration from
// -infinity; the secular mean mode is projected out before inverting d/da.
inline RealField antideriv_drop_mean(const RealField& f) {
    const auto& g = f.grid();
    std::vector<cplx> c = f.spectrum();
    c[0] = 0.0;
    for (int k = 1; k < g.half_size(); ++k) c[k] /= cplx(0.0, g.xi(k));
    return RealField::from_spectrum(g, c);
}

inline ComplexField antideriv_drop_mean(const ComplexField& f) {
    const auto& g = f.grid();
    std::vector<cplx> c = f.spectrum();
    c[0] = 0.0;
    for (int k = 1; k < g.size(); ++k) c[k] /= cplx(0.0, g.xi_signed(k));
    return ComplexField::from_spectrum(g, c);
}

// Drop the Nyquist coefficient.  The alternate-point quadrature rules leave
// the grid sawtooth mode undetermined, so solvers built on them deflate it.
inline RealField zero_nyquist(const RealField& f) {
    const auto& g = f.grid();
    std::vector<cplx> c = f.spectrum();
    c.back() = 0.0;
    return RealField::from_spectrum(g, c);
}

// 2/3-rule spectral truncation applied after nonlinear products
inline RealField dealias(const RealField& f) {
    const auto& g = f.grid();
    std::vector<cplx> c = f.spectrum();
    const int cut = g.size() / 3;
    for (int k = cut + 1; k < g.half_size(); ++k) c[k] = 0.0;
    return RealField::from_spectrum(g, c);
}

inline RealField dealiased_product(const RealField& a, const RealField& b) {
    return dealias(a * b);
}

}  // namespace cwlab
