#pragma once



#include <memory>
#include <json.hpp>

#include "cwlab/interface.hpp"

namespace cwlab {

inline ComplexField conj(const ComplexField& f) {
    ComplexField out(f.grid());
    auto& v = out.mutable_values();
    for (int m = 0; m < f.size(); ++m) v[m] = std::conj(f[m]);
    return out;
}

inline ComplexField operator/(const ComplexField& a, const ComplexField& b) {
    ComplexField out(a.grid());
    auto& v = out.mutable_values();
    for (int m = 0; m < a.size(); ++m) v[m] = a[m] / b[m];
    return out;
}

inline ComplexField to_complex(const RealField& f) { return ComplexField(f); }

inline RealField real_of(const ComplexField& f) { return f.real_part(); }

// Vortex-sheet state on the interface: tangent angle, sheet strength, and the
// modified tangential velocity u = gamma/2 - (Upar - W.t).  All first-order
// derived fields are computed eagerly at construction.
//
// Conventions carried throughout:
//   * brW etc. hold the conjugate representation Phi-bar(.) of vector fields;
//     tangential and normal parts are Re(z_a X) and Re(i z_a X).
//   * the torus mean c1 = mean(gamma theta_a)/2 enters the transport identity
//     theta_t = -u theta_a + H u_a + r1 + c1; on the line c1 = 0.
class SheetState {
  public:
    SheetState(Interface interface, RealField gamma, RealField theta_input)
        : itf_(std::move(interface)),
          theta_input_(std::move(theta_input)),
          gamma_(std::move(gamma)),
          // placeholders, filled by derive()
          brW_(itf_.grid()),
          u_(itf_.grid()),
          upar_(itf_.grid()),
          delta_(itf_.grid()),
          wn_(itf_.grid()),
          wt_(itf_.grid()),
          mbar_(itf_.grid()),
          mn_(itf_.grid()),
          mt_(itf_.grid()),
          r1_(itf_.grid()),
          wan_(itf_.grid()),
          wat_(itf_.grid()),
          theta_t_(itf_.grid()) {
        derive();
    }

    static SheetState from_theta_gamma(const RealField& theta, const RealField& gamma) {
        return SheetState(Interface(theta), gamma, theta);
    }

    // gamma from u by damped fixed-point iteration of
    //   gamma = 2u + 2 delta[gamma]
    static SheetState from_theta_u(const RealField& theta, const RealField& u,
                                   double damping = 0.5, int max_iter = 200,
                                   double tol = 1e-12) {
        Interface itf(theta);
        RealField gamma = 2.0 * u;
        double scale = std::max(u.l2(), 1e-12);
        for (int it = 0; it < max_iter; ++it) {
            SheetState trial(itf, gamma, theta);
            RealField next = 2.0 * u + 2.0 * trial.delta();
            RealField diff = next - gamma;
            gamma = (1.0 - damping) * gamma + damping * next;
            if (diff.l2() <= tol * scale) return SheetState(itf, gamma, theta);
        }
        throw solver_divergence_error("gamma-from-u fixed point did not converge");
    }

    const Interface& interface() const { return itf_; }
    const PeriodicGrid& grid() const { return itf_.grid(); }
    const RealField& theta() const { return itf_.theta(); }
    const RealField& theta_input() const { return theta_input_; }
    const RealField& gamma() const { return gamma_; }
    const RealField& u() const { return u_; }

    const ComplexField& br_velocity() const { return brW_; }  // Phi-bar(W)
    const RealField& w_normal() const { return wn_; }
    const RealField& w_tangent() const { return wt_; }
    const RealField& u_parallel() const { return upar_; }
    const RealField& delta() const { return delta_; }  // Upar - W.t
    const ComplexField& m_bar() const { return mbar_; }
    const RealField& m_normal() const { return mn_; }
    const RealField& m_tangent() const { return mt_; }
    const RealField& r1() const { return r1_; }
    double c1() const { return c1_; }
    const RealField& w_alpha_normal() const { return wan_; }
    const RealField& w_alpha_tangent() const { return wat_; }
    const RealField& theta_t() const { return theta_t_; }

    RealField theta_alpha() const { return deriv(itf_.theta()); }

    const CurveKernels& kernels() const { return *kernels_; }

    // tangential / normal projections of a conjugate-representation field
    RealField tangent_part(const ComplexField& xbar) const {
        return real_of(itf_.z_alpha() * xbar);
    }
    RealField normal_part(const ComplexField& xbar) const {
        return real_of(cplx(0, 1) * (itf_.z_alpha() * xbar));
    }

    // (1/2i) H(f / z_a) + K[z] f, the split Birkhoff-Rott operator
    ComplexField br_split(const ComplexField& f) const {
        return cplx(0.0, -0.5) * hilbert(f / itf_.z_alpha()) + kernels_->smoothing_k(f);
    }
    ComplexField br_split(const RealField& f) const { return br_split(to_complex(f)); }

    // J[z]f: tangential part of the Birkhoff-Rott operator
    RealField jz(const RealField& f) const { return tangent_part(br_split(f)); }

    // actual point velocity of the material flow
    std::vector<cplx> z_t() const {
        std::vector<cplx> v(grid().size());
        const auto& za = itf_.z_alpha();
        for (int m = 0; m < grid().size(); ++m)
            v[m] = std::conj(brW_[m]) + delta_[m] * za[m];
        return v;
    }

    // mu = mean(U_perp theta_a): the uniform arclength-density drift rate of
    // the renormalized parametrization; equals Pdot/P of the horizontal period
    double mu() const { return mu_; }

    // velocity of the reconstructed (unit-tangent-speed) curve: z_t + mu z.
    // This is the velocity against which kernel integrals are differentiated
    // in time, since states are always rebuilt with |z_a| = 1.
    std::vector<cplx> curve_velocity() const {
        std::vector<cplx> v = z_t();
        const auto& z = itf_.z();
        for (int m = 0; m < grid().size(); ++m) v[m] += mu_ * z[m];
        return v;
    }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["grid"] = {{"n", grid().size()}, {"length", grid().length()}};
        j["theta"] = theta_input_.values();
        j["gamma"] = gamma_.values();
        j["u"] = u_.values();
        return j;
    }

    static SheetState from_json(const nlohmann::json& j) {
        PeriodicGrid g(j.at("grid").at("n").get<int>(), j.at("grid").at("length").get<double>());
        RealField theta(g, j.at("theta").get<std::vector<double>>());
        RealField gamma(g, j.at("gamma").get<std::vector<double>>());
        return from_theta_gamma(theta, gamma);
    }

  private:
    void derive() {
        kernels_ = std::make_shared<CurveKernels>(itf_.kernels());
        kernels_->check_separation();

        const auto& za = itf_.z_alpha();
        brW_ = br_split(to_complex(gamma_));
        wn_ = normal_part(brW_);
        wt_ = tangent_part(brW_);

        RealField ta = theta_alpha();
        mu_ = (wn_ * ta).mean();
        upar_ = antideriv_drop_mean(wn_ * ta);
        delta_ = upar_ - wt_;
        u_ = 0.5 * gamma_ - delta_;

        // m per its defining split of W_alpha
        const auto& zaa = itf_.z_alpha_alpha();
        ComplexField gcf = to_complex(deriv(gamma_)) / za - (to_complex(gamma_) * zaa) / (za * za);
        ComplexField hcf = to_complex(deriv(gamma_)) - (to_complex(gamma_) * zaa) / za;
        ComplexField inv_za2 = conj(za) * conj(za);  // 1/z_a^2 on the unit tangent
        mbar_ = za * kernels_->smoothing_k(gcf) +
                cplx(0.0, -0.5) * (za * commutator_h(inv_za2, hcf));
        mn_ = normal_part(mbar_);
        mt_ = tangent_part(mbar_);

        r1_ = hilbert(mt_) * (-1.0) + mn_;
        c1_ = 0.5 * (gamma_ * ta).mean();

        wan_ = 0.5 * hilbert(deriv(gamma_)) + mn_;
        wat_ = (-0.5) * hilbert(gamma_ * ta) + mt_;

        theta_t_ = (-1.0) * (u_ * ta) + hilbert(deriv(u_)) + r1_;
        auto& tv = theta_t_.mutable_values();
        for (auto& v : tv) v += c1_;
    }

    Interface itf_;
    RealField theta_input_;
    RealField gamma_;
    std::shared_ptr<CurveKernels> kernels_;

    ComplexField brW_;
    RealField u_, upar_, delta_, wn_, wt_;
    ComplexField mbar_;
    RealField mn_, mt_, r1_;
    double c1_ = 0.0;
    double mu_ = 0.0;
    RealField wan_, wat_, theta_t_;
};

// Solves (1 + 2 J[z]) x = F.  Fixed-point first; a dense solve is the
// fallback for moderate grids.
//
// On the discrete torus the alternate-point quadrature makes (1 + 2J)
// singular on the grid sawtooth (an exact -1 eigenvalue of 2J carried by the
// Nyquist mode), so the solve is performed on its complement: the Nyquist
// coefficient of the solution is gauged to zero and the residual is measured
// after the same deflation.
class GammaTSolver {
  public:
    explicit GammaTSolver(const SheetState& s) : s_(s) {}

    RealField solve(const RealField& F, double rel_tol = 1e-9, int max_iter = 400) const {
        const RealField Fd = zero_nyquist(F);
        const double fscale = std::max(Fd.l2(), 1e-300);
        RealField x = Fd;
        double best = 1e300;
        for (int it = 0; it < max_iter; ++it) {
            RealField resid = zero_nyquist(x + 2.0 * s_.jz(x) - Fd);
            const double r = resid.l2() / fscale;
            if (r <= rel_tol) return x;
            if (r > 4.0 * best) break;  // diverging; go dense
            best = std::min(best, r);
            x -= resid;  // Richardson step, contraction set by the deflated ||2J||
        }
        if (s_.grid().size() <= 512) return solve_dense(F, rel_tol);
        throw solver_divergence_error("(1+2J) iteration stalled; grid too large for dense fallback");
    }

    double residual(const RealField& x, const RealField& F) const {
        return zero_nyquist(x + 2.0 * s_.jz(x) - F).l2() / std::max(F.l2(), 1e-300);
    }

  private:
    RealField solve_dense(const RealField& F, double rel_tol) const;
    const SheetState& s_;
};

// Everything the time-differentiated layer produces from (state, gamma_t).
struct SheetRates {
    RealField gamma_t;
    ComplexField brWt;   // Phi-bar(W_t)
    RealField wtn, wtt;  // W_t . n, W_t . t
    RealField delta_t;
    RealField gamma_tt;
    RealField dwtn;      // d/dt of W_t.n
    RealField dmn, dmt;  // d/dt of m.n, m.t
    RealField dr1;
    RealField dwan;      // d/dt of W_alpha.n
    double c1_dot = 0.0;
    RealField r2, r3;
    RealField dr2;       // d/dt of r2 (needs u_t)
    RealField theta_tt;

    explicit SheetRates(const PeriodicGrid& g)
        : gamma_t(g), brWt(g), wtn(g), wtt(g), delta_t(g), gamma_tt(g), dwtn(g), dmn(g),
          dmt(g), dr1(g), dwan(g), r2(g), r3(g), dr2(g), theta_tt(g) {}
};

// gamma_t equation right side:
//   (1+2J) gamma_t = S theta_aa + d/da(delta gamma) - gamma gamma_a / 2
//                    + 2 delta W_a.t - 2 R5
inline RealField gamma_t_rhs(const SheetState& s, double S) {
    const RealField& gamma = s.gamma();
    RealField F = S * deriv(s.theta(), 2) + deriv(s.delta() * gamma) -
                  0.5 * (gamma * deriv(gamma)) + 2.0 * (s.delta() * s.w_alpha_tangent());
    // R5 = -Re(z_a D[z, w] gamma) with w the reconstructed-curve velocity
    auto w = s.curve_velocity();
    RealField R5 = (-1.0) * s.tangent_part(s.kernels().dkernel(w, to_complex(gamma)));
    F -= 2.0 * R5;
    return F;
}

// theta_t is accepted for signature parity with the consistency checks; the
// equation itself is autonomous in (theta, gamma).
inline RealField gamma_t_solve(const SheetState& s, const RealField& /*theta_t*/, double S,
                               double rel_tol = 1e-9) {
    return GammaTSolver(s).solve(gamma_t_rhs(s, S), rel_tol);
}

inline RealField remainder_r1(const SheetState& s) { return s.r1(); }

// Full time-derivative bundle.  u_t enters r3, theta_tt and dr2 only.
inline SheetRates sheet_rates(const SheetState& s, const RealField& u_t, double S) {
    const auto& g = s.grid();
    const auto& K = s.kernels();
    const auto& za = s.interface().z_alpha();
    const auto& gamma = s.gamma();
    const RealField ta = s.theta_alpha();
    const RealField& tht = s.theta_t();
    const RealField tat = deriv(tht);

    SheetRates out(g);
    GammaTSolver solver(s);
    out.gamma_t = solver.solve(gamma_t_rhs(s, S));

    const ComplexField cgamma = to_complex(gamma);
    const ComplexField cgamma_t = to_complex(out.gamma_t);

    auto zt = s.z_t();
    out.brWt = s.br_split(out.gamma_t) - K.dkernel(zt, cgamma);
    out.wtn = s.normal_part(out.brWt);
    out.wtt = s.tangent_part(out.brWt);

    // delta_t from Upar_t - d/dt(W.t)
    RealField dUperp = out.wtn - tht * s.w_tangent();
    out.delta_t = antideriv_drop_mean(dUperp * ta + s.w_normal() * tat) -
                  (out.wtt + tht * s.w_normal());

    // z_tt as a point field
    ComplexField zat = deriv(ComplexField(g, zt));
    std::vector<cplx> ztt(g.size());
    for (int m = 0; m < g.size(); ++m)
        ztt[m] = std::conj(out.brWt[m]) + out.delta_t[m] * za[m] + s.delta()[m] * zat[m];

    // gamma_tt: differentiate the gamma_t equation in t
    RealField dWat = deriv(out.wtt) - ta * out.wtn + tht * s.w_alpha_normal();
    RealField dR5 =
        (-1.0) * (real_of(zat * K.dkernel(zt, cgamma)) +
                  s.tangent_part(K.dkernel(ztt, cgamma) + K.dkernel(zt, cgamma_t) -
                                 2.0 * K.tkernel(zt, zt, cgamma)));
    RealField Ft = S * deriv(tht, 2) + deriv(out.delta_t * gamma + s.delta() * out.gamma_t) -
                   0.5 * (out.gamma_t * deriv(gamma) + gamma * deriv(out.gamma_t)) +
                   2.0 * (out.delta_t * s.w_alpha_tangent()) + 2.0 * (s.delta() * dWat) -
                   2.0 * dR5;
    // dJ(f) = Re(z_at brsplit(f) - z_a D[z, z_t] f)
    RealField dJg = real_of(zat * s.br_split(out.gamma_t)) -
                    s.tangent_part(K.dkernel(zt, cgamma_t));
    out.gamma_tt = solver.solve(Ft - 2.0 * dJg);

    ComplexField brWtt = s.br_split(out.gamma_tt) - 2.0 * K.dkernel(zt, cgamma_t) -
                         K.dkernel(ztt, cgamma) + 2.0 * K.tkernel(zt, zt, cgamma);
    RealField wttn = s.normal_part(brWtt);
    out.dwtn = wttn - tht * out.wtt;

    // m_t
    const auto& zaa = s.interface().z_alpha_alpha();
    ComplexField zaat = deriv(ComplexField(g, zt), 2);
    ComplexField gcf = to_complex(deriv(gamma)) / za - (cgamma * zaa) / (za * za);
    ComplexField hcf = to_complex(deriv(gamma)) - (cgamma * zaa) / za;
    ComplexField gcf_t = to_complex(deriv(out.gamma_t)) / za -
                         (to_complex(deriv(gamma)) * zat) / (za * za) -
                         (cgamma_t * zaa) / (za * za) - (cgamma * zaat) / (za * za) +
                         2.0 * ((cgamma * zaa * zat) / (za * za * za));
    ComplexField hcf_t = to_complex(deriv(out.gamma_t)) - (cgamma_t * zaa) / za -
                         (cgamma * zaat) / za + (cgamma * zaa * zat) / (za * za);
    ComplexField inv_za2 = conj(za) * conj(za);
    ComplexField dinv_za2 = (-2.0) * (zat / (za * za * za));
    auto ktf = [&](const ComplexField& f) {
        return (-1.0) * K.dkernel(zt, f) +
               cplx(0.0, -0.5) * hilbert((f * zat) / (za * za));
    };
    ComplexField mbar_t = zat * K.smoothing_k(gcf) + za * (K.smoothing_k(gcf_t) + ktf(gcf)) +
                          cplx(0.0, -0.5) * (zat * commutator_h(inv_za2, hcf)) +
                          cplx(0.0, -0.5) * (za * (commutator_h(dinv_za2, hcf) +
                                                   commutator_h(inv_za2, hcf_t)));
    out.dmn = s.normal_part(mbar_t) - tht * s.m_tangent();
    out.dmt = s.tangent_part(mbar_t) + tht * s.m_normal();
    out.dr1 = (-1.0) * hilbert(out.dmt) + out.dmn;
    out.dwan = 0.5 * hilbert(deriv(out.gamma_t)) + out.dmn;
    out.c1_dot = 0.5 * ((out.gamma_t * ta).mean() + (gamma * tat).mean());

    out.r2 = out.wtn + s.u() * s.w_alpha_normal() + 0.5 * (gamma * tht) +
             0.5 * (gamma * s.u() * ta);
    out.r3 = out.r2 - hilbert(u_t);

    RealField A_t = hilbert(deriv(u_t)) + out.dr1;
    auto& av = A_t.mutable_values();
    for (auto& v : av) v += out.c1_dot;
    out.theta_tt = (-1.0) * (u_t * ta) - s.u() * tat + A_t;

    out.dr2 = out.dwtn + u_t * s.w_alpha_normal() + s.u() * out.dwan +
              0.5 * (out.gamma_t * tht + gamma * out.theta_tt) +
              0.5 * (out.gamma_t * s.u() * ta + gamma * u_t * ta + gamma * s.u() * tat);
    return out;
}

}  // namespace cwlab

// dense fallback kept out-of-line; pulls in Eigen
#include <Eigen/Dense>

namespace cwlab {

inline RealField GammaTSolver::solve_dense(const RealField& F, double rel_tol) const {
    const int n = s_.grid().size();
    Eigen::MatrixXd A(n, n);
    RealField e(s_.grid());
    for (int j = 0; j < n; ++j) {
        auto& ev = e.mutable_values();
        std::fill(ev.begin(), ev.end(), 0.0);
        ev[j] = 1.0;
        RealField col = s_.jz(e);
        for (int i = 0; i < n; ++i) A(i, j) = 2.0 * col[i] + (i == j ? 1.0 : 0.0);
    }
    Eigen::VectorXd b(n);
    for (int i = 0; i < n; ++i) b(i) = F[i];
    // minimal-norm least squares rides over the sawtooth kernel
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(A);
    Eigen::VectorXd x = cod.solve(b);
    RealField out(s_.grid());
    auto& ov = out.mutable_values();
    for (int i = 0; i < n; ++i) ov[i] = x(i);
    out = zero_nyquist(out);
    if (residual(out, F) > rel_tol * 100)
        throw solver_divergence_error("(1+2J) dense solve failed the residual check");
    return out;
}

}  // namespace cwlab
