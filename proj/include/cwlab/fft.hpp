#pragma once

#include <fftw3.h>

#include <map>
#include <mutex>

#include "cwlab/common.hpp"

namespace cwlab {
namespace fft {

// One cached plan set per transform size.  Plans are created with
// FFTW_UNALIGNED so they can be executed on any caller-provided buffer via the
// new-array interface; creation is serialized (FFTW planning is not
// thread-safe), execution is concurrent.
struct Plans {
    fftw_plan r2c = nullptr, c2r = nullptr, fwd = nullptr, bwd = nullptr;
};

inline Plans& plans_for(int n) {
    static std::map<int, Plans> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    Plans p;
    std::vector<double> re(n);
    std::vector<cplx> ca(n), cb(n);
    std::vector<cplx> half(n / 2 + 1);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    p.r2c = fftw_plan_dft_r2c_1d(n, re.data(), reinterpret_cast<fftw_complex*>(half.data()), flags);
    p.c2r = fftw_plan_dft_c2r_1d(n, reinterpret_cast<fftw_complex*>(half.data()), re.data(), flags);
    p.fwd = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(ca.data()),
                             reinterpret_cast<fftw_complex*>(cb.data()), FFTW_FORWARD, flags);
    p.bwd = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(ca.data()),
                             reinterpret_cast<fftw_complex*>(cb.data()), FFTW_BACKWARD, flags);
    return cache.emplace(n, p).first->second;
}

// values -> coefficients, normalized by 1/N (coefficient convention)
inline void forward_real(const std::vector<double>& values, std::vector<cplx>& coeffs) {
    const int n = int(values.size());
    coeffs.resize(n / 2 + 1);
    std::vector<double> tmp(values);  // r2c may not preserve input on all paths
    fftw_execute_dft_r2c(plans_for(n).r2c, tmp.data(),
                         reinterpret_cast<fftw_complex*>(coeffs.data()));
    const double inv = 1.0 / n;
    for (auto& c : coeffs) c *= inv;
}

// coefficients -> values (input copied; c2r destroys its input)
inline void inverse_real(const std::vector<cplx>& coeffs, std::vector<double>& values) {
    const int n = 2 * (int(coeffs.size()) - 1);
    std::vector<cplx> tmp(coeffs);
    values.resize(n);
    fftw_execute_dft_c2r(plans_for(n).c2r, reinterpret_cast<fftw_complex*>(tmp.data()),
                         values.data());
}

inline void forward_complex(const std::vector<cplx>& values, std::vector<cplx>& coeffs) {
    const int n = int(values.size());
    coeffs.resize(n);
    std::vector<cplx> tmp(values);
    fftw_execute_dft(plans_for(n).fwd, reinterpret_cast<fftw_complex*>(tmp.data()),
                     reinterpret_cast<fftw_complex*>(coeffs.data()));
    const double inv = 1.0 / n;
    for (auto& c : coeffs) c *= inv;
}

inline void inverse_complex(const std::vector<cplx>& coeffs, std::vector<cplx>& values) {
    const int n = int(coeffs.size());
    values.resize(n);
    std::vector<cplx> tmp(coeffs);
    fftw_execute_dft(plans_for(n).bwd, reinterpret_cast<fftw_complex*>(tmp.data()),
                     reinterpret_cast<fftw_complex*>(values.data()));
}

}  // namespace fft
}  // namespace cwlab
