#pragma once

#include "cwlab/kernels.hpp"

namespace cwlab {

// Interface curve in the arclength frame: the tangent angle determines the
// curve through z_a = e^{i theta}, so |z_a| = 1 holds by construction.
//
// Closure on the torus: a constant is added to theta so the curve has no
// vertical drift over one period; the horizontal period is then
// P = integral of cos(theta) over [0, L), which equals L only for curves that
// close exactly.  Curves whose mean horizontal speed degenerates are rejected.
class Interface {
  public:
    explicit Interface(const RealField& theta_in) : theta_(theta_in.grid()) {
        const auto& g = theta_in.grid();
        const int n = g.size();

        double ssin = 0, scos = 0;
        for (int m = 0; m < n; ++m) {
            ssin += std::sin(theta_in[m]);
            scos += std::cos(theta_in[m]);
        }
        closure_shift_ = -std::atan2(ssin, scos);

        auto& tv = theta_.mutable_values();
        for (int m = 0; m < n; ++m) tv[m] = theta_in[m] + closure_shift_;

        std::vector<cplx> za(n);
        for (int m = 0; m < n; ++m)
            za[m] = cplx(std::cos(theta_[m]), std::sin(theta_[m]));
        z_alpha_ = ComplexField(g, std::move(za));

        const cplx zbar = mean(z_alpha_);
        period_x_ = zbar.real() * g.length();
        if (period_x_ < 0.25 * g.length())
            throw non_closing_curve_error("mean horizontal speed of the curve degenerates");

        // z = (P/L) a + mean-zero periodic part
        ComplexField periodic = antideriv_drop_mean(z_alpha_);
        z_.resize(n);
        for (int m = 0; m < n; ++m)
            z_[m] = (period_x_ / g.length()) * g.node(m) + periodic[m];

        z_alpha2_ = deriv(z_alpha_);
    }

    const PeriodicGrid& grid() const { return theta_.grid(); }
    const RealField& theta() const { return theta_; }
    double closure_shift() const { return closure_shift_; }
    double period_x() const { return period_x_; }

    const std::vector<cplx>& z() const { return z_; }
    const ComplexField& z_alpha() const { return z_alpha_; }
    const ComplexField& z_alpha_alpha() const { return z_alpha2_; }

    RealField theta_alpha() const { return deriv(theta_); }

    // recover the tangent angle from the curve tangent
    RealField recompute_theta() const {
        RealField out(grid());
        auto& v = out.mutable_values();
        for (int m = 0; m < grid().size(); ++m)
            v[m] = std::atan2(z_alpha_[m].imag(), z_alpha_[m].real());
        return out;
    }

    CurveKernels kernels() const {
        std::vector<cplx> za(z_alpha_.values());
        std::vector<cplx> zaa(z_alpha2_.values());
        return CurveKernels(grid(), z_, std::move(za), std::move(zaa), period_x_);
    }

  private:
    static cplx mean(const ComplexField& f) {
        cplx s = 0;
        for (int m = 0; m < f.size(); ++m) s += f[m];
        return s / double(f.size());
    }

    RealField theta_;
    ComplexField z_alpha_{PeriodicGrid(4, 1.0)};
    ComplexField z_alpha2_{PeriodicGrid(4, 1.0)};
    std::vector<cplx> z_;
    double period_x_ = 0.0;
    double closure_shift_ = 0.0;
};

}  // namespace cwlab
