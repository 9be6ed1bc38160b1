#pragma once

#include "cwlab/norms.hpp"

namespace cwlab {

// Smooth dyadic partition of unity built from the exp(-1/x) mollifier.
//
//   1 = (1 - psi0)(xi) + sum_{j >= j0} psi^j(xi),   psi^j(xi) = psi(2^{-j}|xi|)
//
// with psi == 1 on [2^{-1/4}, 2^{1/4}] and supp psi in [2^{-3/4}, 2^{3/4}].
// The telescoping construction makes the identity exact for all resolved
// wavenumbers up to 2^{jmax + 1/4}.
class DyadicPartition {
  public:
    DyadicPartition(const PeriodicGrid& grid, double cutoff_M)
        : grid_(grid), M_(cutoff_M) {
        if (!(M_ > 0)) throw config_error("dyadic cutoff must be positive");
        j0_ = int(std::ceil(std::log2(M_)));
        jmax_ = int(std::ceil(std::log2(grid.xi_max()))) + 1;
        if (j0_ > jmax_) throw resolution_error("dyadic cutoff beyond grid Nyquist");
    }

    int j0() const { return j0_; }
    int jmax() const { return jmax_; }
    double cutoff() const { return M_; }
    const PeriodicGrid& grid() const { return grid_; }

    // mother profile at scale 1
    static double psi(double xi) {
        const double a = std::fabs(xi);
        return chi(a / 2.0) - chi(a);
    }

    double psi_j(int j, double xi) const { return psi(std::ldexp(std::fabs(xi), -j)); }

    // low-frequency profile: 1 - psi0 = chi(2^{-j0} |xi|)
    double low_profile(double xi) const { return chi(std::ldexp(std::fabs(xi), -j0_)); }
    double psi0(double xi) const { return 1.0 - low_profile(xi); }

    double partition_sum(double xi) const {
        double s = low_profile(xi);
        for (int j = j0_; j <= jmax_; ++j) s += psi_j(j, xi);
        return s;
    }

    RealField project(const RealField& f, int j) const {
        check_band(j);
        return FourierMultiplier("psi^" + std::to_string(j),
                                 [this, j](double xi) { return cplx(psi_j(j, xi), 0.0); })(f);
    }

    RealField project_low(const RealField& f) const {
        return FourierMultiplier("low", [this](double xi) { return cplx(low_profile(xi), 0.0); })(f);
    }

    void check_band(int j) const {
        if (j < j0_) throw resolution_error("band index below the low-frequency cutoff");
        if (std::ldexp(1.0, j) * std::pow(2.0, -0.75) > grid_.xi_max())
            throw resolution_error("band beyond grid Nyquist");
    }

    // bands whose support meets the resolved spectrum
    std::vector<int> resolved_bands() const {
        std::vector<int> out;
        for (int j = j0_; j <= jmax_; ++j)
            if (std::ldexp(1.0, j) * std::pow(2.0, -0.75) <= grid_.xi_max()) out.push_back(j);
        return out;
    }

    // ||low||_q + (sum_j ||psi^j f||_q^2)^{1/2}, the square-function side of the
    // Littlewood-Paley comparison
    double square_function_norm(const RealField& f, double q) const {
        double lowpart = lq_norm(project_low(f), q);
        double acc = 0.0;
        for (int j : resolved_bands()) {
            const double nj = lq_norm(project(f, j), q);
            acc += nj * nj;
        }
        return lowpart + std::sqrt(acc);
    }

    std::uint64_t fingerprint() const {
        std::vector<double> samples;
        samples.reserve(grid_.half_size() * 2);
        for (int k = 0; k < grid_.half_size(); ++k) {
            samples.push_back(low_profile(grid_.xi(k)));
            samples.push_back(psi_j(std::min(j0_ + 2, jmax_), grid_.xi(k)));
        }
        std::uint64_t h = fnv1a(samples);
        h = fnv1a(&M_, sizeof M_, h);
        return fnv1a(&j0_, sizeof j0_, h);
    }

  private:
    // chi = 1 for |xi| <= 2^{-3/4}, chi = 0 for |xi| >= 2^{-1/4}, C^inf between
    static double chi(double a) {
        if (a <= 0.0) return 1.0;
        const double r = std::log2(a);
        return 1.0 - smooth_step((r + 0.75) * 2.0);
    }

    PeriodicGrid grid_;
    double M_;
    int j0_, jmax_;
};

// Sharp projection onto the closed dyadic block [2^{j-2}, 2^{j+2}]; used to
// prepare band-localized data and to measure spectral leakage.
inline RealField sharp_band_project(const RealField& f, int j) {
    const auto& g = f.grid();
    const double lo = std::ldexp(1.0, j - 2), hi = std::ldexp(1.0, j + 2);
    std::vector<cplx> c = f.spectrum();
    for (int k = 0; k < g.half_size(); ++k) {
        const double a = std::fabs(g.xi(k));
        if (a < lo || a > hi) c[k] = 0.0;
    }
    return RealField::from_spectrum(g, c);
}

inline double band_energy_fraction_outside(const RealField& f, double lo, double hi) {
    const auto& g = f.grid();
    const auto& c = f.spectrum();
    double inside = 0, total = 0;
    for (int k = 0; k < g.half_size(); ++k) {
        const double w = (k == 0 || k == g.size() / 2) ? 1.0 : 2.0;
        const double e = w * std::norm(c[k]);
        total += e;
        const double a = std::fabs(g.xi(k));
        if (a >= lo && a <= hi) inside += e;
    }
    return total == 0.0 ? 0.0 : (total - inside) / total;
}

}  // namespace cwlab
