#include <catch2/catch_amalgamated.hpp>

#include "cwlab/norms.hpp"
#include "cwlab/sheet.hpp"
#include "vortex_oracles.hpp"

using namespace cwlab;
using oracles::rel_err;
using oracles::rel_err_field;

namespace {

RealField test_theta(const PeriodicGrid& g, double eps) {
    return RealField::sample(g, [eps](double a) { return eps * std::sin(a) + 0.5 * eps * std::cos(2 * a); });
}

RealField test_gamma(const PeriodicGrid& g, double eps) {
    return RealField::sample(g, [eps](double a) { return eps * std::cos(a) - 0.3 * eps * std::sin(3 * a); });
}

double rel_linf(const RealField& a, const RealField& b) {
    double num = 0, den = 0;
    for (int m = 0; m < a.size(); ++m) {
        num = std::max(num, std::fabs(a[m] - b[m]));
        den = std::max(den, std::fabs(b[m]));
    }
    return num / std::max(den, 1e-300);
}

}  // namespace

TEST_CASE("curve reconstruction", "[vortex]") {
    PeriodicGrid g(256, 2 * pi);

    SECTION("flat angle gives the identity curve") {
        Interface itf(RealField(g, 0.0));
        for (int m = 0; m < g.size(); m += 17)
            REQUIRE(std::abs(itf.z()[m] - cplx(g.node(m), 0.0)) < 1e-13);
        REQUIRE(rel_err(itf.period_x(), g.length()) < 1e-14);
    }

    SECTION("small angle amplitude maps to curve height") {
        const double eps = 0.01;
        Interface itf(RealField::sample(g, [eps](double a) { return eps * std::sin(a); }));
        double maxim = 0;
        for (const auto& z : itf.z()) maxim = std::max(maxim, std::fabs(z.imag()));
        REQUIRE(maxim == Catch::Approx(eps).epsilon(0.05));
    }

    SECTION("tangent angle round trip") {
        Interface itf(test_theta(g, 0.3));
        REQUIRE(rel_linf(itf.recompute_theta(), itf.theta()) < 1e-10);
    }

    SECTION("degenerate horizontal speed is rejected") {
        // a wildly folded curve makes nearly zero horizontal progress
        auto theta = RealField::sample(g, [](double a) { return 2.5 * std::sin(a); });
        REQUIRE_THROWS_AS(Interface(theta), non_closing_curve_error);
    }

    SECTION("constant angle is rotated flat by the closure correction") {
        Interface itf(RealField(g, 0.5 * pi));
        REQUIRE(itf.theta().linf() < 1e-12);
    }
}

TEST_CASE("Birkhoff-Rott integral", "[vortex]") {
    PeriodicGrid g(256, 2 * pi);

    SECTION("flat interface with constant strength is at rest") {
        auto s = SheetState::from_theta_gamma(RealField(g, 0.0), RealField(g, 0.75));
        REQUIRE(s.w_normal().linf() < 1e-13);
        REQUIRE(s.w_tangent().linf() < 1e-13);
    }

    SECTION("flat interface vs direct PV quadrature") {
        auto gamma = RealField::sample(g, [](double a) { return std::cos(a); });
        auto s = SheetState::from_theta_gamma(RealField(g, 0.0), gamma);
        auto itf = s.interface();
        auto oracle = oracles::pv_birkhoff_rott(g, itf.z(), itf.period_x(),
                                                ComplexField(gamma).values());
        for (int m = 0; m < g.size(); ++m)
            REQUIRE(std::abs(s.br_velocity()[m] - oracle[m]) < 1e-8);
    }

    SECTION("perturbed curve vs direct PV quadrature") {
        PeriodicGrid gg(512, 2 * pi);
        std::mt19937_64 rng(17);
        auto theta = test_theta(gg, 0.1);
        auto gamma = oracles::random_band_limited(gg, 20, rng, 0.5);
        auto s = SheetState::from_theta_gamma(theta, gamma);
        auto oracle = oracles::pv_birkhoff_rott(gg, s.interface().z(), s.interface().period_x(),
                                                ComplexField(gamma).values());
        double num = 0, den = 0;
        for (int m = 0; m < gg.size(); ++m) {
            num += std::norm(s.br_velocity()[m] - oracle[m]);
            den += std::norm(oracle[m]);
        }
        REQUIRE(std::sqrt(num / den) < 1e-7);
    }

    SECTION("near self-intersection is refused") {
        std::vector<cplx> z(g.size()), za(g.size(), 1.0), zaa(g.size(), 0.0);
        for (int m = 0; m < g.size(); ++m) z[m] = g.node(m);
        z[200] = z[40] + cplx(0.0, 1e-6);  // collapse two well-separated points
        CurveKernels bad(g, z, za, zaa, g.length());
        REQUIRE_THROWS_AS(bad.check_separation(), curve_degeneracy_error);
    }
}

TEST_CASE("smoothing operator K[z]", "[vortex]") {
    PeriodicGrid g(256, 2 * pi);

    SECTION("flat curve annihilates everything") {
        auto s = SheetState::from_theta_gamma(RealField(g, 0.0), RealField(g, 0.0));
        auto f = ComplexField::sample(g, [](double a) { return cplx(std::sin(3 * a), std::cos(a)); });
        auto out = s.kernels().smoothing_k(f);
        for (int m = 0; m < g.size(); ++m) REQUIRE(std::abs(out[m]) < 1e-13);
    }

    SECTION("matches the PV-difference oracle on a smooth curve") {
        PeriodicGrid gg(512, 2 * pi);
        auto theta = test_theta(gg, 0.2);
        auto s = SheetState::from_theta_gamma(theta, RealField(gg, 0.0));
        // band-limited spike
        std::vector<cplx> c(gg.half_size(), 0.0);
        for (int k = 10; k <= 30; ++k) c[k] = cplx(0.02, -0.01);
        auto f = RealField::from_spectrum(gg, c);

        auto prod = s.kernels().smoothing_k(ComplexField(f));
        const auto& itf = s.interface();
        auto full = oracles::pv_birkhoff_rott(gg, itf.z(), itf.period_x(), ComplexField(f).values());
        ComplexField fza = ComplexField(f) / itf.z_alpha();
        auto flat = oracles::pv_flat(gg, fza.values());
        double worst = 0;
        for (int m = 0; m < gg.size(); ++m)
            worst = std::max(worst, std::abs(prod[m] - (full[m] - flat[m])));
        REQUIRE(worst < 1e-8);
    }

    SECTION("smoothing: output has a smaller high-band energy fraction than Hf") {
        PeriodicGrid gg(512, 2 * pi);
        auto s = SheetState::from_theta_gamma(test_theta(gg, 0.2), RealField(gg, 0.0));
        std::mt19937_64 rng(5);
        auto f = oracles::random_band_limited(gg, 120, rng);
        auto kf = s.kernels().smoothing_k(ComplexField(f)).real_part();
        auto hf = hilbert(f);
        const double cut = 60.0;
        auto hi_fraction = [&](const RealField& w) {
            const auto& c = w.spectrum();
            double hi = 0, tot = 0;
            for (int k = 1; k < gg.half_size(); ++k) {
                const double e = std::norm(c[k]);
                tot += e;
                if (gg.xi(k) > cut) hi += e;
            }
            return hi / std::max(tot, 1e-300);
        };
        REQUIRE(hi_fraction(kf) <= hi_fraction(hf));
    }

    SECTION("operator-norm probe over a random corpus") {
        std::mt19937_64 rng(23);
        auto s = SheetState::from_theta_gamma(test_theta(g, 0.2), RealField(g, 0.0));
        double worst = 0;
        for (int trial = 0; trial < 50; ++trial) {
            auto f = oracles::random_band_limited(g, 60, rng);
            auto kf = s.kernels().smoothing_k(ComplexField(f));
            const double h1 = sobolev_norm(kf.real_part(), 1.0) + sobolev_norm(kf.imag_part(), 1.0);
            worst = std::max(worst, h1 / f.l2());
        }
        REQUIRE(std::isfinite(worst));
        REQUIRE(worst < 10.0);  // small-amplitude curve: the gain constant is modest
    }

    SECTION("linearity to round-off") {
        auto s = SheetState::from_theta_gamma(test_theta(g, 0.2), RealField(g, 0.0));
        std::mt19937_64 rng(3);
        auto f1 = oracles::random_band_limited(g, 40, rng);
        auto f2 = oracles::random_band_limited(g, 40, rng);
        auto lhs = s.kernels().smoothing_k(ComplexField(f1 + f2));
        auto rhs = s.kernels().smoothing_k(ComplexField(f1)) + s.kernels().smoothing_k(ComplexField(f2));
        double worst = 0, scale = 0;
        for (int m = 0; m < g.size(); ++m) {
            worst = std::max(worst, std::abs(lhs[m] - rhs[m]));
            scale = std::max(scale, std::abs(lhs[m]));
        }
        REQUIRE(worst < 1e-12 * std::max(scale, 1.0));
    }
}

TEST_CASE("commutator [H, h]", "[vortex]") {
    PeriodicGrid g(256, 2 * pi);

    SECTION("constant h commutes") {
        auto f = RealField::sample(g, [](double a) { return std::sin(2 * a); });
        REQUIRE(commutator_h(RealField(g, 3.0), f).linf() < 1e-13);
    }

    SECTION("multiplier difference vs kernel quadrature") {
        auto h = RealField::sample(g, [](double a) { return std::cos(a); });
        // [H, cos] cos vanishes identically; compare absolutely there
        double worst = 0;
        auto d1 = commutator_h(h, h) - commutator_kernel(h, h);
        auto d2 = commutator_h(h, h) - oracles::commutator_direct(h, h);
        worst = std::max(d1.linf(), d2.linf());
        REQUIRE(worst < 1e-8);

        auto f = RealField::sample(g, [](double a) { return std::sin(3 * a); });
        REQUIRE(rel_linf(commutator_h(h, f), commutator_kernel(h, f)) < 1e-8);
        REQUIRE(rel_linf(commutator_h(h, f), oracles::commutator_direct(h, f)) < 1e-8);
    }

    SECTION("gains one order over H(hf) as the band frequency grows") {
        PeriodicGrid gg(2048, 2 * pi);
        // h in H^5: power-law spectrum over all resolved modes
        RealField h(gg);
        {
            std::vector<cplx> c(gg.half_size(), 0.0);
            for (int k = 1; k < gg.half_size() - 1; ++k) c[k] = 0.5 * std::pow(double(k), -5.0);
            h = RealField::from_spectrum(gg, c);
        }
        std::vector<double> lk, lc, lh;
        for (int k0 : {32, 64, 128, 256}) {
            std::vector<cplx> c(gg.half_size(), 0.0);
            c[k0] = 1.0;
            auto f = RealField::from_spectrum(gg, c);
            lk.push_back(std::log2(double(k0)));
            lc.push_back(std::log2(sobolev_norm(commutator_h(h, f), 1.0)));
            lh.push_back(std::log2(sobolev_norm(hilbert(h * f), 1.0)));
        }
        const double slope_comm = linear_fit(lk, lc).second;
        const double slope_hhf = linear_fit(lk, lh).second;
        REQUIRE(slope_comm <= slope_hhf - 1.0);
    }
}

TEST_CASE("the field m and W_alpha splitting", "[vortex]") {
    PeriodicGrid g(256, 2 * pi);

    SECTION("flat interface, constant strength") {
        auto s = SheetState::from_theta_gamma(RealField(g, 0.0), RealField(g, 1.0));
        REQUIRE(s.m_normal().linf() < 1e-13);
        REQUIRE(s.m_tangent().linf() < 1e-13);
    }

    SECTION("flat interface, cosine strength") {
        auto gamma = RealField::sample(g, [](double a) { return std::cos(a); });
        auto s = SheetState::from_theta_gamma(RealField(g, 0.0), gamma);
        REQUIRE(s.m_normal().linf() < 1e-12);
        REQUIRE(s.m_tangent().linf() < 1e-12);
    }

    SECTION("splitting identity: spectral dW/da vs (H gamma_a)/2 + m") {
        auto s = SheetState::from_theta_gamma(test_theta(g, 0.1), test_gamma(g, 0.5));
        ComplexField Wvec = conj(s.br_velocity());
        ComplexField Wa = deriv(Wvec);
        const auto& za = s.interface().z_alpha();
        RealField wan_spectral(g), wat_spectral(g);
        {
            auto& nvec = wan_spectral.mutable_values();
            auto& tvec = wat_spectral.mutable_values();
            for (int m = 0; m < g.size(); ++m) {
                const cplx p = std::conj(za[m]) * Wa[m];
                tvec[m] = p.real();
                nvec[m] = p.imag();
            }
        }
        REQUIRE(rel_linf(s.w_alpha_normal(), wan_spectral) < 1e-7);
        REQUIRE(rel_linf(s.w_alpha_tangent(), wat_spectral) < 1e-7);
    }

    SECTION("corpus bound ||m||_{H^s} <= C(theta) ||gamma||_{H^1}") {
        std::mt19937_64 rng(8);
        double prev_const = 0.0;
        for (double tier : {0.05, 0.1, 0.2}) {
            double worst = prev_const;
            for (int trial = 0; trial < 7; ++trial) {
                auto theta = test_theta(g, tier);
                auto gamma = oracles::random_band_limited(g, 30, rng, 0.5);
                auto s = SheetState::from_theta_gamma(theta, gamma);
                const double mn = sobolev_norm(s.m_normal(), 1.0) + sobolev_norm(s.m_tangent(), 1.0);
                worst = std::max(worst, mn / sobolev_norm(gamma, 1.0));
            }
            REQUIRE(std::isfinite(worst));
            REQUIRE(worst >= prev_const);  // cumulative corpus keeps constants monotone
            prev_const = worst;
        }
    }
}

TEST_CASE("transport identity for theta_t", "[vortex]") {
    // d/da(W.n) + Upar theta_a  ==  -u theta_a + H u_a + r1 + c1
    PeriodicGrid g(256, 2 * pi);
    auto s = SheetState::from_theta_gamma(test_theta(g, 0.08), test_gamma(g, 0.4));
    RealField raw = deriv(s.w_normal()) + s.u_parallel() * deriv(s.theta());
    REQUIRE(rel_linf(s.theta_t(), raw) < 1e-9);
}

TEST_CASE("remainder r1", "[vortex]") {
    PeriodicGrid g(256, 2 * pi);

    SECTION("flat interface, constant strength") {
        auto s = SheetState::from_theta_gamma(RealField(g, 0.0), RealField(g, 2.0));
        REQUIRE(remainder_r1(s).linf() < 1e-13);
    }

    SECTION("at least quadratic smallness in the amplitude") {
        auto norm_at = [&](double eps) {
            auto s = SheetState::from_theta_gamma(
                RealField::sample(g, [eps](double a) { return eps * std::sin(a); }),
                RealField::sample(g, [eps](double a) { return eps * std::cos(a); }));
            return remainder_r1(s).l2();
        };
        const double n1 = norm_at(0.01);
        REQUIRE(n1 < 1e-4);  // far below the O(eps) fields themselves
        REQUIRE(n1 > 1e-10);
        // measured slope is ~3 for this family: the -H(m.t) + m.n combination
        // cancels the quadratic term as well
        const double slope = std::log2(norm_at(0.02) / n1);
        REQUIRE(slope >= 1.8);
    }

    SECTION("corpus bound against (1 + ||u||)") {
        std::mt19937_64 rng(4);
        double worst = 0;
        for (int trial = 0; trial < 20; ++trial) {
            auto s = SheetState::from_theta_gamma(test_theta(g, 0.1),
                                                  oracles::random_band_limited(g, 30, rng, 0.3));
            worst = std::max(worst, sobolev_norm(remainder_r1(s), 1.0) /
                                        (1.0 + sobolev_norm(s.u(), 1.0)));
        }
        REQUIRE(std::isfinite(worst));
        REQUIRE(worst < 5.0);
    }
}

TEST_CASE("u and gamma are mutually recoverable", "[vortex]") {
    PeriodicGrid g(256, 2 * pi);
    auto theta = test_theta(g, 0.1);
    auto gamma = test_gamma(g, 0.5);
    auto s = SheetState::from_theta_gamma(theta, gamma);
    auto s2 = SheetState::from_theta_u(theta, s.u());
    REQUIRE((s2.gamma() - gamma).l2() < 1e-9 * std::max(gamma.l2(), 1e-12));
    REQUIRE((s2.u() - s.u()).l2() < 1e-9 * std::max(s.u().l2(), 1e-12));
}

TEST_CASE("gamma_t solve", "[vortex]") {
    PeriodicGrid g(256, 2 * pi);

    SECTION("flat rest state") {
        auto s = SheetState::from_theta_gamma(RealField(g, 0.0), RealField(g, 0.0));
        auto gt = gamma_t_solve(s, RealField(g, 0.0), 2.0);
        REQUIRE(gt.linf() < 1e-13);
    }

    SECTION("residual of the operator equation against the direct-kernel J") {
        auto gamma = RealField::sample(g, [](double a) { return 0.1 * std::cos(a); });
        auto s = SheetState::from_theta_gamma(test_theta(g, 0.05), gamma);
        auto F = gamma_t_rhs(s, 2.0);
        auto gt = gamma_t_solve(s, s.theta_t(), 2.0);
        // J via the direct full-kernel route
        auto full = oracles::pv_birkhoff_rott(g, s.interface().z(), s.interface().period_x(),
                                              ComplexField(gt).values());
        RealField jz_direct(g);
        auto& jv = jz_direct.mutable_values();
        const auto& za = s.interface().z_alpha();
        for (int m = 0; m < g.size(); ++m) jv[m] = (za[m] * full[m]).real();
        RealField resid = gt + 2.0 * jz_direct - F;
        REQUIRE(resid.l2() / std::max(F.l2(), 1e-300) < 1e-7);
    }

    SECTION("flat strength vs a dense-operator solve") {
        // theta = 0, gamma = eps cos a; the dense operator is built column by
        // column from the direct full-kernel J
        PeriodicGrid gs(128, 2 * pi);
        const double eps = 0.04;
        auto gamma = RealField::sample(gs, [eps](double a) { return eps * std::cos(a); });
        auto s = SheetState::from_theta_gamma(RealField(gs, 0.0), gamma);
        auto F = gamma_t_rhs(s, 2.0);
        auto gt = gamma_t_solve(s, s.theta_t(), 2.0);

        const int n = gs.size();
        Eigen::MatrixXd A(n, n);
        const auto& za = s.interface().z_alpha();
        for (int j = 0; j < n; ++j) {
            std::vector<cplx> e(n, 0.0);
            e[j] = 1.0;
            auto col = oracles::pv_birkhoff_rott(gs, s.interface().z(), s.interface().period_x(), e);
            for (int i = 0; i < n; ++i)
                A(i, j) = (i == j ? 1.0 : 0.0) + 2.0 * (za[i] * col[i]).real();
        }
        Eigen::VectorXd b(n);
        for (int i = 0; i < n; ++i) b(i) = F[i];
        Eigen::VectorXd x = A.partialPivLu().solve(b);
        double worst = 0;
        for (int i = 0; i < n; ++i) worst = std::max(worst, std::fabs(gt[i] - x(i)));
        REQUIRE(worst < 1e-8 * std::max(1.0, F.linf()));
    }
}

TEST_CASE("time-derivative layer against the reference flow", "[vortex][rates]") {
    // Centered differences along the (theta, gamma) evolution pin every d/dt
    // formula produced by sheet_rates: the mismatch must shrink like delta^2
    // under refinement (a wrong formula saturates at an O(1) offset).
    PeriodicGrid g(128, 2 * pi);
    const double S = 2.0;
    auto theta0 = test_theta(g, 0.05);
    auto gamma0 = test_gamma(g, 0.25);

    SheetState s0 = SheetState::from_theta_gamma(theta0, gamma0);
    oracles::SheetFlow flow{S};

    struct Snapshot {
        SheetState sp, sm;
        cwlab::SheetRates rp, rm;
        RealField u_t;
        double delta;
    };
    auto probe = [&](double delta) {
        auto [thp, gap] = flow.evolve(theta0, gamma0, delta, 8);
        auto [thm, gam] = flow.evolve(theta0, gamma0, -delta, 8);
        SheetState sp = SheetState::from_theta_gamma(thp, gap);
        SheetState sm = SheetState::from_theta_gamma(thm, gam);
        RealField u_t = (0.5 / delta) * (sp.u() - sm.u());
        RealField u_tp = (1.0 / delta) * (sp.u() - s0.u());
        RealField u_tm = (1.0 / delta) * (s0.u() - sm.u());
        auto rp = sheet_rates(sp, u_tp, S);
        auto rm = sheet_rates(sm, u_tm, S);
        return Snapshot{std::move(sp), std::move(sm), std::move(rp), std::move(rm),
                        std::move(u_t), delta};
    };
    auto coarse = probe(0.008);
    auto fine = probe(0.004);
    auto rates = sheet_rates(s0, fine.u_t, S);

    auto err_at = [&](const Snapshot& snap, const RealField& got, auto&& field) {
        RealField fd = (0.5 / snap.delta) * (field(snap.sp, snap.rp) - field(snap.sm, snap.rm));
        return (got - fd).l2() / std::max({fd.l2(), got.l2(), 1e-12});
    };
    auto check = [&](const RealField& got, auto&& field, const char* what) {
        INFO(what);
        const double ec = err_at(coarse, got, field);
        const double ef = err_at(fine, got, field);
        // quadratic shrink, or already at the integrator floor
        const bool converges = ef < 0.35 * ec || ef < 5e-6;
        CAPTURE(ec, ef);
        REQUIRE(converges);
        REQUIRE(ef < 5e-3);
    };
    using S_ = const SheetState&;
    using R_ = const cwlab::SheetRates&;

    check(rates.gamma_t, [](S_ s, R_) { return s.gamma(); }, "gamma_t");
    check(s0.theta_t(), [](S_ s, R_) { return s.theta(); }, "theta_t");
    check(rates.wtn, [](S_ s, R_) { return s.w_normal(); }, "W_t . n");
    check(rates.wtt, [](S_ s, R_) { return s.w_tangent(); }, "W_t . t");
    check(rates.delta_t, [](S_ s, R_) { return s.delta(); }, "delta_t");
    check(rates.dmn, [](S_ s, R_) { return s.m_normal(); }, "d/dt m.n");
    check(rates.dmt, [](S_ s, R_) { return s.m_tangent(); }, "d/dt m.t");
    check(rates.dr1, [](S_ s, R_) { return s.r1(); }, "d/dt r1");
    check(rates.dwan, [](S_ s, R_) { return s.w_alpha_normal(); }, "d/dt W_a.n");
    check(rates.theta_tt, [](S_ s, R_) { return s.theta_t(); }, "theta_tt");
    check(rates.gamma_tt, [](S_, R_ r) { return r.gamma_t; }, "gamma_tt");
    check(rates.dwtn, [](S_, R_ r) { return r.wtn; }, "d/dt W_t.n");
    check(rates.dr2, [](S_, R_ r) { return r.r2; }, "d/dt r2");

    const double c1dot_fd = (fine.sp.c1() - fine.sm.c1()) * 0.5 / fine.delta;
    REQUIRE(std::fabs(rates.c1_dot - c1dot_fd) < 1e-6 + 1e-3 * std::fabs(c1dot_fd));
}

TEST_CASE("remainders r2 and r3", "[vortex]") {
    PeriodicGrid g(128, 2 * pi);
    const double S = 2.0;

    SECTION("rest state") {
        auto s = SheetState::from_theta_gamma(RealField(g, 0.0), RealField(g, 0.0));
        auto rates = sheet_rates(s, RealField(g, 0.0), S);
        REQUIRE(rates.r2.linf() < 1e-13);
        REQUIRE(rates.r3.linf() < 1e-13);
    }

    SECTION("r2 is first order, r3 second order in the amplitude") {
        auto norms_at = [&](double eps) {
            auto theta = RealField::sample(g, [eps](double a) { return eps * std::sin(a); });
            auto gamma = RealField::sample(g, [eps](double a) { return eps * std::cos(a); });
            auto s = SheetState::from_theta_gamma(theta, gamma);
            // u_t from the u-equation with the mean-dropping antiderivative
            RealField A = hilbert(deriv(s.u())) + s.r1();
            auto& av = A.mutable_values();
            for (auto& v : av) v += s.c1();
            auto rates0 = sheet_rates(s, RealField(g, 0.0), S);  // r2 only
            RealField q = (-1.0) * (rates0.r2 * deriv(s.theta())) + A * A;
            RealField u_t = 0.5 * S * deriv(s.theta(), 2) - s.u() * deriv(s.u()) +
                            antideriv_drop_mean(q);
            auto rates = sheet_rates(s, u_t, S);
            return std::make_pair(rates.r2.l2(), rates.r3.l2());
        };
        auto [r2a, r3a] = norms_at(0.01);
        auto [r2b, r3b] = norms_at(0.02);
        REQUIRE(std::log2(r2b / r2a) == Catch::Approx(1.0).margin(0.3));
        REQUIRE(std::log2(r3b / r3a) == Catch::Approx(2.0).margin(0.4));
    }
}

TEST_CASE("sheet state JSON round trip is bit-exact", "[vortex]") {
    PeriodicGrid g(64, 2 * pi);
    auto s = SheetState::from_theta_gamma(test_theta(g, 0.1), test_gamma(g, 0.4));
    auto j = s.to_json();
    auto s2 = SheetState::from_json(j);
    auto j2 = s2.to_json();
    REQUIRE(j == j2);
    for (int m = 0; m < g.size(); ++m) {
        REQUIRE(s.gamma()[m] == s2.gamma()[m]);
        REQUIRE(s.u()[m] == s2.u()[m]);
    }
}

TEST_CASE("estimate audits over a pinned corpus", "[vortex]") {
    PeriodicGrid g(128, 2 * pi);
    const double S = 2.0;
    std::mt19937_64 rng(2024);
    double c_r1 = 0, c_r2 = 0, c_r3 = 0, c_gamma = 0;
    std::vector<double> tiers = {0.02, 0.05, 0.1};
    std::vector<double> c_r1_by_tier;
    for (double tier : tiers) {
        for (int trial = 0; trial < 7; ++trial) {
            auto theta = test_theta(g, tier);
            auto gamma = oracles::random_band_limited(g, 20, rng, tier);
            auto s = SheetState::from_theta_gamma(theta, gamma);
            RealField A = hilbert(deriv(s.u())) + s.r1();
            auto& av = A.mutable_values();
            for (auto& v : av) v += s.c1();
            auto pre = sheet_rates(s, RealField(g, 0.0), S);
            RealField q = (-1.0) * (pre.r2 * deriv(s.theta())) + A * A;
            RealField u_t = 0.5 * S * deriv(s.theta(), 2) - s.u() * deriv(s.u()) +
                            antideriv_drop_mean(q);
            auto rates = sheet_rates(s, u_t, S);

            const double uu = sobolev_norm(s.u(), 2.0);
            c_r1 = std::max(c_r1, sobolev_norm(s.r1(), 1.0) / (1.0 + uu));
            c_r2 = std::max(c_r2, sobolev_norm(rates.r2, 1.0) / ((1.0 + uu) * (1.0 + uu)));
            c_r3 = std::max(c_r3, sobolev_norm(rates.r3, 1.0) / ((1.0 + uu) * (1.0 + uu)));
            c_gamma = std::max(c_gamma, sobolev_norm(gamma, 1.0) /
                                            (sobolev_norm(s.u(), 1.0) + 1.0));
        }
        c_r1_by_tier.push_back(c_r1);
    }
    REQUIRE(std::isfinite(c_r1));
    REQUIRE(std::isfinite(c_r2));
    REQUIRE(std::isfinite(c_r3));
    REQUIRE(std::isfinite(c_gamma));
    REQUIRE(std::is_sorted(c_r1_by_tier.begin(), c_r1_by_tier.end()));
    WARN("audit constants: r1=" << c_r1 << " r2=" << c_r2 << " r3=" << c_r3
                                << " gamma=" << c_gamma);
}
