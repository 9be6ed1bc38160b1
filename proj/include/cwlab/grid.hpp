#pragma once

#include "cwlab/common.hpp"

namespace cwlab {

// Uniform periodic grid on [0, L).  Node count must be a power of two so the
// dyadic machinery lines up with resolvable bands.
class PeriodicGrid {
  public:
    PeriodicGrid(int n_points, double length) : n_(n_points), length_(length) {
        if (n_ < 4 || (n_ & (n_ - 1)) != 0)
            throw config_error("grid size must be a power of two >= 4");
        if (!(length_ > 0.0)) throw config_error("grid length must be positive");
    }

    int size() const { return n_; }
    double length() const { return length_; }
    double spacing() const { return length_ / n_; }
    double node(int m) const { return m * length_ / n_; }

    // wavenumber of half-spectrum index k in [0, N/2]
    double xi(int k) const { return 2.0 * pi * k / length_; }
    int half_size() const { return n_ / 2 + 1; }
    double xi_fundamental() const { return 2.0 * pi / length_; }
    double xi_max() const { return pi * n_ / length_; }

    // signed wavenumber of full-spectrum index in FFTW order
    double xi_signed(int k) const {
        const int n = k <= n_ / 2 ? k : k - n_;
        return 2.0 * pi * n / length_;
    }

    std::vector<double> nodes() const {
        std::vector<double> a(n_);
        for (int m = 0; m < n_; ++m) a[m] = node(m);
        return a;
    }

    bool operator==(const PeriodicGrid& o) const {
        return n_ == o.n_ && length_ == o.length_;
    }
    bool operator!=(const PeriodicGrid& o) const { return !(*this == o); }

    std::uint64_t fingerprint() const {
        std::uint64_t h = fnv1a(&n_, sizeof n_);
        return fnv1a(&length_, sizeof length_, h);
    }

  private:
    int n_;
    double length_;
};

// periodic distance between two points of [0, L)
inline double periodic_distance(double a, double b, double L) {
    double d = std::fmod(std::fabs(a - b), L);
    return std::min(d, L - d);
}

}  // namespace cwlab
