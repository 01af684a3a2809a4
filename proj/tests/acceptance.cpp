// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure.  Each check is self-contained and uses only the public headers.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "nd/connection.hpp"
#include "nd/duality.hpp"
#include "nd/heun.hpp"
#include "nd/oracle.hpp"
#include "nd/potential.hpp"
#include "nd/spectra.hpp"

#include "test_util.hpp"

using nd::HeunParams;
using nd::PotentialSpec;
using nd::PowerTerm;
using nd::RadialGrid;
using nd::RadialState;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
    std::printf("%s criterion %d: %s\n", pass ? "PASS" : "FAIL", criterion,
                detail.c_str());
    if (!pass) ++g_failures;
}

PotentialSpec poly(std::initializer_list<PowerTerm> terms) {
    PotentialSpec u;
    u.kind = nd::PotentialKind::Polynomial;
    u.terms = terms;
    return u;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.3g", x);
    return buf;
}

// Ground state of `u` at angular momentum l inside [e_lo, e_hi].
double ground(const PotentialSpec& u, double l, double e_lo, double e_hi) {
    nd::SpectrumRequest rq;
    rq.potential = u;
    rq.l = l;
    rq.e_lo = e_lo;
    rq.e_hi = e_hi;
    rq.scan_points = 128;
    const auto states = nd::bound_spectrum(rq);
    if (states.empty()) throw nd::none_found("ground: empty window");
    return states[0].E;
}

// ---- 1: harmonic spectrum through K2 zeros --------------------------------

void criterion_1() {
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    try {
        for (int l = 0; l <= 2; ++l) {
            nd::SpectrumRequest rq;
            rq.potential = poly({{1.0, 2.0}});
            rq.l = l;
            rq.e_lo = 1.0;
            rq.e_hi = 2.0 * l + 11.0 + 0.7;
            const auto states = nd::bound_spectrum(rq);
            if (states.size() < 3)
                throw nd::none_found("harmonic window missed states");
            for (int n_r = 0; n_r <= 2; ++n_r) {
                const double exact = nd::ho_energy(1.0, n_r, l, 3);
                worst = std::max(worst,
                                 std::abs(states[static_cast<std::size_t>(n_r)].E -
                                          exact) /
                                     exact);
            }
        }
        const double dt = seconds_since(t0);
        report(1, worst <= 1e-6 && dt <= 60.0,
               "harmonic levels l<=2, n_r<=2, max rel " + fmt(worst) + ", " +
                   fmt(dt) + " s");
    } catch (const std::exception& e) {
        report(1, false, std::string("exception: ") + e.what());
    }
}

// ---- 2: Coulomb from duality + m-dimensional adjudication -----------------

void criterion_2() {
    try {
        const PotentialSpec ho = poly({{1.0, 2.0}});
        nd::SpectrumSolver solver = [](int n_r, double lv,
                                       const std::vector<double>& c) {
            if (c[0] <= 0.0) return std::nan("");
            return nd::ho_energy(c[0], n_r, lv, 3);
        };
        RadialState st;
        const nd::DualResult d = nd::power_dual_quantum(ho, st);

        double worst_alg = 0.0;
        for (int n_r = 0; n_r <= 1; ++n_r)
            for (double ell : {0.0, 1.0}) {
                RadialState tgt;
                tgt.l = ell;
                tgt.n_r = n_r;
                const double ev = nd::dual_eigenvalue(solver, d.map, tgt, {-1.0});
                const double ex = nd::coulomb_energy(-1.0, n_r, ell, 3);
                worst_alg = std::max(worst_alg, std::abs(ev - ex) / std::abs(ex));
            }

        const PotentialSpec coul = poly({{-1.0, -1.0}});
        const RadialGrid grid{1e-4, 80.0, 16000};
        double worst_fd = 0.0;
        for (double ell : {0.0, 1.0}) {
            const auto fd = nd::fd_bound_spectrum(coul, ell, grid, 2);
            for (int n_r = 0; n_r <= 1; ++n_r) {
                const double ex = nd::coulomb_energy(-1.0, n_r, ell, 3);
                worst_fd = std::max(
                    worst_fd,
                    std::abs(fd[static_cast<std::size_t>(n_r)].E - ex) /
                        std::abs(ex));
            }
        }

        PotentialSpec planar = coul;
        planar.dimension = 2;
        const double efd =
            nd::fd_bound_spectrum(planar, 0.0, {0.01, 40.0, 16000}, 1)[0].E;
        const double sq = nd::coulomb_energy(-1.0, 0, 0.0, 2, true);
        const double unsq = nd::coulomb_energy(-1.0, 0, 0.0, 2, false);
        const bool m_sq = std::abs(efd - sq) / std::abs(sq) <= 1e-3;
        const bool m_un = std::abs(efd - unsq) / std::abs(unsq) <= 1e-3;
        const std::string reading =
            m_sq && !m_un ? "squared" : (!m_sq && m_un ? "unsquared" : "undecided");

        report(2,
               worst_alg <= 1e-12 && worst_fd <= 1e-4 && (m_sq != m_un),
               "dual eigenvalues rel " + fmt(worst_alg) + ", FD rel " +
                   fmt(worst_fd) + ", planar denominator " + reading);
    } catch (const std::exception& e) {
        report(2, false, std::string("exception: ") + e.what());
    }
}

// ---- 3: eigenvalue consistency across power-dual pairs --------------------

void criterion_3() {
    const auto t0 = std::chrono::steady_clock::now();
    try {
        double worst_k2 = 0.0, worst_fd = 0.0;

        // (xi/r^{3/2} <-> eta rho^6): map the source ground state and rescale
        // the image to unit coupling
        {
            const double e32 = ground(poly({{-1.0, -1.5}}), 0.0, -0.6, -1e-3);
            RadialState st;
            st.E = e32;
            const nd::DualResult d =
                nd::power_dual_quantum(poly({{-1.0, -1.5}}), st);
            const double eta = d.potential.terms[0].coeff;
            const double mapped = d.state.E / std::pow(eta, 0.25);
            const double e6 = ground(poly({{1.0, 6.0}}), d.state.l, 0.5, 12.0);
            worst_k2 = std::max(worst_k2, std::abs(e6 - mapped) / e6);
            const double efd =
                nd::fd_bound_spectrum(poly({{1.0, 6.0}}), d.state.l,
                                      {1e-4, 4.0, 3000}, 1)[0]
                    .E;
            worst_fd = std::max(worst_fd, std::abs(e6 - efd) / efd);
        }

        // (xi/sqrt(r) <-> eta rho^{2/3})
        {
            const double e12 = ground(poly({{-1.0, -0.5}}), 0.0, -0.9, -0.02);
            RadialState st;
            st.E = e12;
            const nd::DualResult d =
                nd::power_dual_quantum(poly({{-1.0, -0.5}}), st);
            const double eta = d.potential.terms[0].coeff;
            const double mapped = d.state.E / std::pow(eta, 0.75);
            const double e23 =
                ground(poly({{1.0, 2.0 / 3.0}}), d.state.l, 0.3, 5.0);
            worst_k2 = std::max(worst_k2, std::abs(e23 - mapped) / e23);
            const double efd =
                nd::fd_bound_spectrum(poly({{1.0, 2.0 / 3.0}}), d.state.l,
                                      {1e-4, 30.0, 12000}, 1)[0]
                    .E;
            worst_fd = std::max(worst_fd, std::abs(e23 - efd) / efd);
        }

        // two-term pair (xi r^2 + mu/r <-> eta rho^2 + lambda rho^6), pivot 1:
        // the dual carries the literal image coefficients, no rescaling
        {
            const PotentialSpec u = poly({{1.0, 2.0}, {-1.0, -1.0}});
            const double e2 = ground(u, 0.0, 0.5, 4.0);
            RadialState st;
            st.E = e2;
            const nd::DualResult d = nd::polynomial_dual(u, 1, st);
            const double image =
                ground(d.potential, d.state.l, 0.6 * d.state.E, 1.4 * d.state.E);
            worst_k2 =
                std::max(worst_k2, std::abs(image - d.state.E) / d.state.E);
            const double efd = nd::fd_bound_spectrum(d.potential, d.state.l,
                                                     {1e-4, 3.0, 3000}, 1)[0]
                                   .E;
            worst_fd = std::max(worst_fd, std::abs(image - efd) / efd);
        }

        // three-term dual set, ground states only
        {
            const PotentialSpec u = poly({{1.0, 2.0}, {-1.0, -1.0}, {0.5, 1.0}});
            const double e0 = ground(u, 0.0, 0.5, 4.5);
            for (int pivot = 0; pivot < 3; ++pivot) {
                RadialState st;
                st.E = e0;
                const nd::DualResult d = nd::polynomial_dual(u, pivot, st);
                const double lo =
                    d.state.E > 0 ? 0.6 * d.state.E : 1.4 * d.state.E;
                const double hi =
                    d.state.E > 0 ? 1.4 * d.state.E : 0.6 * d.state.E;
                const double image = ground(d.potential, d.state.l, lo, hi);
                worst_k2 = std::max(worst_k2,
                                    std::abs(image - d.state.E) /
                                        std::abs(d.state.E));
            }
        }

        const double dt = seconds_since(t0);
        report(3, worst_k2 <= 1e-6 && worst_fd <= 1e-3 && dt <= 600.0,
               "pair consistency max rel " + fmt(worst_k2) + ", FD max rel " +
                   fmt(worst_fd) + ", " + fmt(dt) + " s");
    } catch (const std::exception& e) {
        report(3, false, std::string("exception: ") + e.what());
    }
}

// ---- 4 and 5: Heun/Kummer collapse and the K2 closed form -----------------

void criterion_4_5() {
    double worst_n = 0.0, worst_k2 = 0.0;
    bool threw = false;
    std::string what;
    try {
        for (double a : {1.0, 2.0, 5.0})
            for (double g : {-2.0, 0.0, 4.0}) {
                const HeunParams hp{a, 0.0, g, 0.0};
                for (int i = 1; i <= 50; ++i) {
                    const nd::cplx z = 2.0 * i / 50.0;
                    const nd::cplx lhs = nd::heun_regular(hp, z);
                    const nd::cplx rhs = nd::heun_to_kummer(hp, z);
                    worst_n = std::max(
                        worst_n, std::abs(lhs - rhs) /
                                     std::max(std::abs(rhs), 1e-30));
                }
                const nd::cplx quad = nd::k2(hp);
                const nd::cplx closed = nd::k2_closed_beta0_delta0(a, g);
                worst_k2 = std::max(worst_k2,
                                    std::abs(quad - closed) /
                                        std::max(std::abs(closed), 1.0));
            }
    } catch (const std::exception& e) {
        threw = true;
        what = e.what();
    }
    report(4, !threw && worst_n <= 1e-10,
           threw ? "exception: " + what
                 : "Heun/Kummer collapse max rel " + fmt(worst_n));
    report(5, !threw && worst_k2 <= 1e-6,
           threw ? "exception: " + what
                 : "K2 quadrature vs closed form max rel " + fmt(worst_k2));
}

// ---- 6: residual invariance for every dual pair ---------------------------

void criterion_6() {
    try {
        using nd_test::dual_pair_residual;
        double worst = 0.0;
        auto acc = [&](double r) { worst = std::max(worst, r); };
        acc(dual_pair_residual(poly({{1.0, 2.0}}), 0, 0.0, 2.0, 0.9, 3.0));
        acc(dual_pair_residual(poly({{-1.0, -1.0}}), 0, 0.0, -0.3, 0.9, 2.0));
        acc(dual_pair_residual(poly({{-1.0, -0.5}}), 0, 0.0, -0.4, 0.9, 1.5));
        acc(dual_pair_residual(poly({{-1.0, -1.5}}), 0, 0.0, -0.4, 0.9, 1.3));
        const PotentialSpec ho_coul = poly({{1.0, 2.0}, {-1.0, -1.0}});
        acc(dual_pair_residual(ho_coul, 0, 0.0, 2.0, 0.9, 3.0));
        acc(dual_pair_residual(ho_coul, 1, 0.0, 2.0, 0.9, 1.7));
        const PotentialSpec ho_lin = poly({{1.0, 2.0}, {0.5, 1.0}});
        acc(dual_pair_residual(ho_lin, 0, 0.0, 3.0, 0.9, 3.0));
        acc(dual_pair_residual(ho_lin, 1, 0.0, 3.0, 0.9, 2.0));
        const PotentialSpec three = poly({{1.0, 2.0}, {-1.0, -1.0}, {0.5, 1.0}});
        acc(dual_pair_residual(three, 0, 0.0, 2.5, 0.9, 3.0));
        acc(dual_pair_residual(three, 1, 0.0, 2.5, 0.9, 1.7));
        acc(dual_pair_residual(three, 2, 0.0, 2.5, 0.9, 2.2));
        acc(nd_test::exp_log_residual(1.0, 1.0, 1.0, 1.0, -0.5));
        report(6, worst <= 1e-8, "dual-pair residuals max " + fmt(worst));
    } catch (const std::exception& e) {
        report(6, false, std::string("exception: ") + e.what());
    }
}

// ---- 7: classical orbit duality -------------------------------------------

void criterion_7() {
    try {
        const PotentialSpec ho = poly({{1.0, 2.0}});
        const auto orbit = nd::orbit_integrate(ho, 2.0, 0.8, 1.0, 1, 2000);
        const nd::ClassicalDualResult dual = nd::classical_dual(ho, 0, 2.0, 0.8);
        const double residual = nd::orbit_dual_check(orbit, ho, dual);

        const double rho_mid = 0.5 * (orbit.r_turn_lo * orbit.r_turn_lo +
                                      orbit.r_turn_hi * orbit.r_turn_hi);
        const auto image =
            nd::orbit_integrate(dual.potential, dual.E, dual.L, rho_mid, 1, 2000);
        const double ratio =
            image.points.back().second / orbit.points.back().second;
        // the r^2 pivot has literal power a+1 = 2, so (a+3)/2 = 2
        report(7, residual <= 1e-4 && std::abs(ratio - 2.0) <= 1e-4,
               "orbit residual " + fmt(residual) + ", apsidal ratio " +
                   fmt(ratio));
    } catch (const std::exception& e) {
        report(7, false, std::string("exception: ") + e.what());
    }
}

// ---- 8: bound-state existence window --------------------------------------

void criterion_8() {
    try {
        struct Case {
            double beta;
            RadialGrid grid;
        };
        const std::vector<Case> cases{
            {-0.5, {1e-3, 80.0, 16000}},
            {-1.0, {1e-4, 60.0, 12000}},
            {-1.5, {1e-4, 30.0, 12000}},
        };
        bool all_bound = true;
        for (const auto& cs : cases) {
            const auto ev =
                nd::fd_bound_spectrum(poly({{-1.0, cs.beta}}), 0.0, cs.grid, 1);
            all_bound = all_bound && ev[0].E < 0.0;
        }
        report(8, all_bound,
               "attractive r^beta binds for beta in {-0.5, -1, -1.5}");
    } catch (const std::exception& e) {
        report(8, false, std::string("exception: ") + e.what());
    }
}

// ---- 9: scattering cross-check + conjugation identity ---------------------

void criterion_9() {
    try {
        const PotentialSpec u = poly({{-0.5, -1.5}});
        const RadialGrid grid{1e-4, 60.0, 24000};
        double worst_phase = 0.0;
        for (double k : {0.5, 1.0, 2.0}) {
            const double d_k2 = nd::phase_shift(u, 0, k);
            const double d_fd = nd::fd_phase_shift(u, 0, k, grid);
            worst_phase = std::max(worst_phase, std::abs(d_k2 - d_fd));
        }

        double worst_conj = 0.0;
        for (int l : {0, 1})
            for (double mag : {0.3, 1.0}) {
                const nd::cplx lam =
                    mag * std::exp(nd::cplx(0.0, -std::numbers::pi / 4.0));
                const nd::cplx a(4.0 * l + 2.0, 0.0);
                const nd::cplx lhs =
                    std::conj(nd::k2_match({a, 0.0, 0.0, 8.0 * lam}));
                const nd::cplx rhs =
                    nd::k2_match({a, 0.0, 0.0, 8.0 * nd::cplx(0.0, 1.0) * lam});
                worst_conj = std::max(worst_conj,
                                      std::abs(lhs - rhs) /
                                          std::max(std::abs(rhs), 1e-30));
            }
        report(9, worst_phase <= 2e-2 && worst_conj <= 1e-8,
               "phase-shift max diff " + fmt(worst_phase) +
                   ", conjugation identity max rel " + fmt(worst_conj));
    } catch (const std::exception& e) {
        report(9, false, std::string("exception: ") + e.what());
    }
}

// ---- 10: randomized algebraic invariants ----------------------------------

void criterion_10() {
    try {
        std::mt19937 rng(20240824);
        std::uniform_real_distribution<double> half_p(0.05, 4.5);
        double worst = 0.0;
        bool all_connected = true;
        for (int i = 0; i < 1000; ++i) {
            // involution and (a+3)(A+3) = 4 on literal powers
            const double x = 2.0 * half_p(rng) - 2.0;
            const double X = nd::dual_exponent(x);
            worst = std::max(worst, std::abs(nd::dual_exponent(X) - x) /
                                        std::max(1.0, std::abs(x)));
            worst = std::max(worst, std::abs((x + 2.0) * (X + 2.0) - 4.0));

            // two-term image-exponent invariant and pairwise dual-set closure
            const double a1 = 2.0 * half_p(rng) - 2.0;
            const double b1 = 2.0 * half_p(rng) - 2.0;
            const PotentialSpec u = poly({{1.0, a1}, {-0.5, b1}});
            RadialState st;
            st.E = 1.0;
            const nd::DualResult d = nd::polynomial_dual(u, 0, st);
            const double lhs = std::sqrt(2.0 / (a1 + 2.0)) * (b1 + 2.0);
            const double A1 = d.potential.terms[0].power;
            const double B1 = d.potential.terms[1].power;
            const double rhs = std::sqrt(2.0 / (A1 + 2.0)) * (B1 + 2.0);
            worst = std::max(worst, std::abs(lhs - rhs));

            const auto set = nd::dual_set(u);
            for (const auto& P : set)
                for (const auto& Q : set) {
                    if (&P == &Q) continue;
                    bool connected = false;
                    for (int piv = 0; piv < static_cast<int>(P.terms.size());
                         ++piv)
                        if (nd::same_up_to_relabeling(
                                nd::polynomial_dual(P, piv, st).potential, Q))
                            connected = true;
                    all_connected = all_connected && connected;
                }
        }
        report(10, worst <= 1e-12 && all_connected,
               "1000 randomized cases, max invariant deviation " + fmt(worst));
    } catch (const std::exception& e) {
        report(10, false, std::string("exception: ") + e.what());
    }
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    if (g_failures == 0) {
        std::printf("all acceptance criteria passed\n");
        return 0;
    }
    std::printf("%d acceptance criteria failed\n", g_failures);
    return 1;
}
