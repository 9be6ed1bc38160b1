#pragma once

#include <algorithm>
#include <optional>

#include "cwlab/fft.hpp"
#include "cwlab/grid.hpp"

namespace cwlab {

// Real-valued grid function with a lazily computed, cached half-spectrum.
// Coefficient convention: f(alpha) = sum_n c_n e^{i xi_n alpha} with
// c_{-k} = conj(c_k); spectrum() returns c_k for k = 0..N/2.
class RealField {
  public:
    explicit RealField(const PeriodicGrid& grid, double fill = 0.0)
        : grid_(grid), values_(grid.size(), fill) {}

    RealField(const PeriodicGrid& grid, std::vector<double> values)
        : grid_(grid), values_(std::move(values)) {
        if (int(values_.size()) != grid_.size())
            throw config_error("value count does not match grid");
    }

    template <class F>
    static RealField sample(const PeriodicGrid& grid, F&& f) {
        RealField out(grid);
        for (int m = 0; m < grid.size(); ++m) out.values_[m] = f(grid.node(m));
        return out;
    }

    static RealField from_spectrum(const PeriodicGrid& grid, const std::vector<cplx>& coeffs) {
        if (int(coeffs.size()) != grid.half_size())
            throw config_error("coefficient count does not match grid");
        RealField out(grid);
        fft::inverse_real(coeffs, out.values_);
        out.spectrum_ = coeffs;
        return out;
    }

    const PeriodicGrid& grid() const { return grid_; }
    int size() const { return grid_.size(); }

    const std::vector<double>& values() const { return values_; }
    double operator[](int m) const { return values_[m]; }

    // mutation invalidates the cached spectrum
    std::vector<double>& mutable_values() {
        spectrum_.reset();
        return values_;
    }
    void set(int m, double v) {
        spectrum_.reset();
        values_[m] = v;
    }

    const std::vector<cplx>& spectrum() const {
        if (!spectrum_) {
            std::vector<cplx> c;
            fft::forward_real(values_, c);
            spectrum_ = std::move(c);
        }
        return *spectrum_;
    }

    double mean() const {
        double s = 0;
        for (double v : values_) s += v;
        return s / values_.size();
    }

    double l2() const {  // integral norm on [0, L)
        double s = 0;
        for (double v : values_) s += v * v;
        return std::sqrt(s * grid_.spacing());
    }

    double linf() const {
        double s = 0;
        for (double v : values_) s = std::max(s, std::fabs(v));
        return s;
    }

    bool finite() const {
        for (double v : values_)
            if (!std::isfinite(v)) return false;
        return true;
    }

    RealField& operator+=(const RealField& o) { return zip(o, [](double a, double b) { return a + b; }); }
    RealField& operator-=(const RealField& o) { return zip(o, [](double a, double b) { return a - b; }); }
    RealField& operator*=(double s) {
        spectrum_.reset();
        for (auto& v : values_) v *= s;
        return *this;
    }

    friend RealField operator+(RealField a, const RealField& b) { return a += b; }
    friend RealField operator-(RealField a, const RealField& b) { return a -= b; }
    friend RealField operator*(double s, RealField a) { return a *= s; }
    friend RealField operator*(RealField a, double s) { return a *= s; }

    friend RealField operator*(const RealField& a, const RealField& b) {
        a.check_same_grid(b);
        RealField out(a.grid_);
        for (int m = 0; m < a.size(); ++m) out.values_[m] = a.values_[m] * b.values_[m];
        return out;
    }

    void check_same_grid(const RealField& o) const {
        if (grid_ != o.grid_) throw config_error("fields live on different grids");
    }

  private:
    template <class Op>
    RealField& zip(const RealField& o, Op op) {
        check_same_grid(o);
        spectrum_.reset();
        for (int m = 0; m < int(values_.size()); ++m) values_[m] = op(values_[m], o.values_[m]);
        return *this;
    }

    PeriodicGrid grid_;
    std::vector<double> values_;
    mutable std::optional<std::vector<cplx>> spectrum_;
};

// Complex-valued companion used for curves, interface velocities and kernel
// outputs.  Same coefficient convention over the full signed spectrum.
class ComplexField {
  public:
    explicit ComplexField(const PeriodicGrid& grid, cplx fill = {})
        : grid_(grid), values_(grid.size(), fill) {}

    ComplexField(const PeriodicGrid& grid, std::vector<cplx> values)
        : grid_(grid), values_(std::move(values)) {
        if (int(values_.size()) != grid_.size())
            throw config_error("value count does not match grid");
    }

    ComplexField(const RealField& re_part, const RealField& im_part)
        : grid_(re_part.grid()), values_(re_part.size()) {
        re_part.check_same_grid(im_part);
        for (int m = 0; m < re_part.size(); ++m)
            values_[m] = cplx(re_part[m], im_part[m]);
    }

    explicit ComplexField(const RealField& re_part) : grid_(re_part.grid()), values_(re_part.size()) {
        for (int m = 0; m < re_part.size(); ++m) values_[m] = re_part[m];
    }

    template <class F>
    static ComplexField sample(const PeriodicGrid& grid, F&& f) {
        ComplexField out(grid);
        for (int m = 0; m < grid.size(); ++m) out.values_[m] = f(grid.node(m));
        return out;
    }

    const PeriodicGrid& grid() const { return grid_; }
    int size() const { return grid_.size(); }
    const std::vector<cplx>& values() const { return values_; }
    cplx operator[](int m) const { return values_[m]; }
    std::vector<cplx>& mutable_values() {
        spectrum_.reset();
        return values_;
    }

    const std::vector<cplx>& spectrum() const {
        if (!spectrum_) {
            std::vector<cplx> c;
            fft::forward_complex(values_, c);
            spectrum_ = std::move(c);
        }
        return *spectrum_;
    }

    static ComplexField from_spectrum(const PeriodicGrid& grid, const std::vector<cplx>& coeffs) {
        if (int(coeffs.size()) != grid.size())
            throw config_error("coefficient count does not match grid");
        ComplexField out(grid);
        fft::inverse_complex(coeffs, out.values_);
        out.spectrum_ = coeffs;
        return out;
    }

    RealField real_part() const {
        RealField out(grid_);
        auto& v = out.mutable_values();
        for (int m = 0; m < size(); ++m) v[m] = values_[m].real();
        return out;
    }
    RealField imag_part() const {
        RealField out(grid_);
        auto& v = out.mutable_values();
        for (int m = 0; m < size(); ++m) v[m] = values_[m].imag();
        return out;
    }

    double l2() const {
        double s = 0;
        for (auto v : values_) s += std::norm(v);
        return std::sqrt(s * grid_.spacing());
    }

    ComplexField& operator+=(const ComplexField& o) {
        spectrum_.reset();
        for (int m = 0; m < size(); ++m) values_[m] += o.values_[m];
        return *this;
    }
    ComplexField& operator-=(const ComplexField& o) {
        spectrum_.reset();
        for (int m = 0; m < size(); ++m) values_[m] -= o.values_[m];
        return *this;
    }
    ComplexField& operator*=(cplx s) {
        spectrum_.reset();
        for (auto& v : values_) v *= s;
        return *this;
    }
    friend ComplexField operator+(ComplexField a, const ComplexField& b) { return a += b; }
    friend ComplexField operator-(ComplexField a, const ComplexField& b) { return a -= b; }
    friend ComplexField operator*(cplx s, ComplexField a) { return a *= s; }

    friend ComplexField operator*(const ComplexField& a, const ComplexField& b) {
        ComplexField out(a.grid_);
        for (int m = 0; m < a.size(); ++m) out.values_[m] = a.values_[m] * b.values_[m];
        return out;
    }

  private:
    PeriodicGrid grid_;
    std::vector<cplx> values_;
    mutable std::optional<std::vector<cplx>> spectrum_;
};

}  // namespace cwlab
