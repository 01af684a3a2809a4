#include "nd/connection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "nd/gammafn.hpp"

namespace nd {

namespace {

// Sum coeff[n] z^{-n} with optimal truncation (stop at the smallest term).
cplx asym_sum_optimal(const std::vector<cplx>& coeff, cplx z) {
    // Zero coefficients (every other one vanishes when beta = delta = 0) must
    // not be mistaken for the optimal-truncation minimum, so only nonzero
    // terms participate in the growth test.
    kahan_sum acc;
    cplx zi = 1.0;
    double best = std::numeric_limits<double>::max();
    for (std::size_t n = 0; n < coeff.size(); ++n) {
        const cplx term = coeff[n] * zi;
        const double mag = std::abs(term);
        if (mag > 0.0) {
            if (mag > best) break;
            best = mag;
        }
        acc.add(term);
        zi /= z;
    }
    return acc.value();
}

// Truncation order at which |coeff[n] x^{-n}| is smallest among nonzero terms.
int optimal_order(const std::vector<cplx>& coeff, double x) {
    int best_n = 1;
    double best = std::numeric_limits<double>::max();
    double xi = 1.0;
    for (std::size_t n = 0; n < coeff.size(); ++n) {
        const double mag = std::abs(coeff[n]) * xi;
        if (mag > 0.0) {
            if (mag < best) {
                best = mag;
                best_n = static_cast<int>(n) + 1;
            } else if (static_cast<int>(n) > best_n + 3) {
                break;
            }
        }
        xi /= x;
    }
    return best_n;
}

struct MatchPoint {
    cplx N, B, H;
};

MatchPoint evaluate_branches(const HeunParams& p, double z) {
    constexpr int kMaxCoeff = 40;
    std::vector<cplx> a(kMaxCoeff), e(kMaxCoeff);
    heun_asym_coeffs_B(p, kMaxCoeff, a.data());
    heun_asym_coeffs_H(p, kMaxCoeff, e.data());
    const cplx s = 0.5 * (p.gamma - p.alpha - 2.0);
    const cplx t = -0.5 * (p.gamma + p.alpha + 2.0);
    SeriesControl ctl;
    MatchPoint m;
    m.N = heun_regular(p, z, ctl);
    m.B = std::pow(cplx(z), s) * asym_sum_optimal(a, z);
    m.H = std::pow(cplx(z), t) * std::exp(cplx(z * z) + p.beta * z) * asym_sum_optimal(e, z);
    return m;
}

double matching_radius(const HeunParams& p) {
    const double r = std::sqrt(2.0 * (std::abs(p.alpha) + std::abs(p.gamma) + 16.0));
    double rm = std::max(4.5, r);
    // With Re(beta) < 0 the regular series sums terms of size ~e^{z^2+|beta|z}
    // down to a value of size ~e^{z^2+Re(beta)z}, so its rounding noise
    // relative to H+ grows like e^{(|beta|-Re beta) z}.  Cap the matching
    // point where that noise reaches ~3e-7; below z ~ 4 the asymptotic
    // series itself becomes unusable.
    const double penalty = std::abs(p.beta) - p.beta.real();
    if (penalty > 1e-12) {
        const double r_cancel = std::log(3e-7 / 1e-16) / penalty;
        rm = std::clamp(r_cancel, 4.0, rm);
    }
    return rm;
}

}  // namespace

cplx k2_match(const HeunParams& p) {
    const double r = matching_radius(p);
    const MatchPoint m1 = evaluate_branches(p, r);
    const MatchPoint m2 = evaluate_branches(p, r + 0.5);
    const cplx det = m1.H * m2.B - m2.H * m1.B;
    return (m1.N * m2.B - m2.N * m1.B) / det;
}

cplx j_integral(cplx lambda, const HeunParams& p, const QuadratureControl& q) {
    if (lambda.real() <= 0.0)
        throw precondition_violated("j_integral: Re(lambda) must be positive");
    SeriesControl ctl;
    auto f = [&](double x, double dist) -> cplx {
        return std::pow(cplx(dist), lambda - 1.0) *
               std::exp(cplx(-x * x) - p.beta * x) * heun_regular(p, x, ctl);
    };
    // a growing tail means the moment integral does not exist as written
    const double probe_lo = 0.5 * q.tail_cutoff, probe_hi = 0.96 * q.tail_cutoff;
    if (std::abs(f(probe_hi, probe_hi)) > 10.0 * std::abs(f(probe_lo, probe_lo)) + 1e-280)
        throw integrand_diverged("j_integral: integrand grows toward the cutoff");
    return tanh_sinh([&](double x, double dist) { return f(x, dist); }, 0.0,
                     q.tail_cutoff, q);
}

cplx k2_closed_beta0_delta0(cplx alpha, cplx gamma) {
    const cplx den = 0.5 + 0.25 * (alpha - gamma);
    if (std::abs(den.imag()) < 1e-9) {
        const double m = std::round(den.real());
        if (m <= 0.0 && std::abs(den.real() - m) < 1e-9) return {0.0, 0.0};
    }
    return cgamma(1.0 + 0.5 * alpha) * rgamma(den);
}

cplx k2(const HeunParams& p, const QuadratureControl& q) {
    // Exact zero shortcut for the closed-form families: with beta = delta = 0
    // the value is Gamma(1+alpha/2)/Gamma(1/2 + (alpha-gamma)/4), which
    // vanishes iff (alpha-gamma)/2 is a negative odd integer.
    if (p.beta == cplx{} && p.delta == cplx{}) {
        const cplx half_diff = 0.5 * (p.alpha - p.gamma);
        if (std::abs(half_diff.imag()) < 1e-9) {
            const double m = std::round(half_diff.real());
            if (m <= -1.0 && std::abs(half_diff.real() - m) < 1e-9 &&
                std::abs(std::remainder(m, 2.0)) > 0.5)
                return {0.0, 0.0};
        }
    }

    const cplx lam = 1.0 + 0.5 * (p.alpha + p.gamma);
    if (lam.real() <= 0.0)
        throw precondition_violated("k2: moment order has non-positive real part");

    HeunParams inner;
    inner.alpha = 0.5 * (p.alpha + p.gamma);
    inner.beta = p.beta;
    inner.gamma = 0.5 * (3.0 * p.alpha - p.gamma);
    inner.delta = p.delta + 0.5 * p.beta * (p.gamma - p.alpha);

    const cplx t_in = -0.5 * (inner.alpha + inner.gamma + 2.0);  // = -(alpha+1)

    // growing-branch data of the inner regular solution
    constexpr int kMaxCoeff = 40;
    std::vector<cplx> e(kMaxCoeff);
    heun_asym_coeffs_H(inner, kMaxCoeff, e.data());
    const cplx k2_inner = k2_match(inner);

    double x0 = std::sqrt(2.0 * (std::abs(inner.alpha) + std::abs(inner.gamma) + 14.0));
    x0 = std::clamp(x0, 4.0, q.tail_cutoff - 1.5);
    const int n_e = std::min(optimal_order(e, x0), 30);

    SeriesControl ctl;
    // On [0, x0] the abscissa handed over by tanh_sinh is the accurate
    // distance to the singular endpoint at 0, so x^{lam-1} is well resolved.
    auto regular_part = [&](double x) -> cplx {
        return std::pow(cplx(x), lam - 1.0) *
               std::exp(cplx(-x * x) - p.beta * x) * heun_regular(inner, x, ctl);
    };
    // x^{lam-1} e^{-x^2-bx} * K2_in x^t e^{x^2+bx} sum e_n x^{-n}
    //   = K2_in x^{lam-1+t} sum e_n x^{-n}: a pure power tail.
    auto grow_part = [&](double x) -> cplx {
        cplx s = 0.0, xi = 1.0;
        for (int n = 0; n < n_e; ++n) {
            s += e[static_cast<std::size_t>(n)] * xi;
            xi /= x;
        }
        return k2_inner * std::pow(cplx(x), lam - 1.0 + t_in) * s;
    };

    const cplx head =
        tanh_sinh([&](double, double dist) { return regular_part(dist); }, 0.0, x0, q);
    QuadratureControl qm = q;
    // after subtracting the growing branch the remainder sits at the rounding
    // floor of the cancelled terms; accept it on an absolute scale
    qm.abs_tol = std::max(q.abs_tol,
                          1e-13 * std::abs(grow_part(x0)) * (q.tail_cutoff - x0));
    const cplx mid = tanh_sinh(
        [&](double x, double) { return regular_part(x) - grow_part(x); }, x0,
        q.tail_cutoff, qm);

    // Prefactor pieces; inv_ga carries the zeros that tame the continued tail.
    const cplx pref_outer = cgamma(1.0 + p.alpha) * rgamma(1.0 + 0.5 * (p.alpha + p.gamma));
    const cplx inv_ga = rgamma(0.5 * (p.alpha - p.gamma));

    // Continued power moments: int_{x0}^inf x^{mu_n - 1} dx -> -x0^{mu_n}/mu_n
    // with mu_n = (gamma-alpha)/2 - n.  Each simple pole in mu_n meets a zero
    // of inv_ga; the combined factor -inv_ga/mu_n equals
    // (-1)^n Gamma(1+n+mu_n) sin(pi mu_n)/(pi mu_n), finite for all mu_n.
    cplx tail = 0.0;
    const cplx mu0 = 0.5 * (p.gamma - p.alpha);
    for (int n = 0; n < n_e; ++n) {
        const cplx mu = mu0 - static_cast<double>(n);
        cplx combined;
        if (std::abs(mu) >= 0.05) {
            combined = -inv_ga / mu;
        } else {
            const double sgn = (n % 2 == 0) ? 1.0 : -1.0;
            const cplx pim = std::numbers::pi * mu;
            const cplx sinc = (std::abs(pim) < 1e-30) ? cplx(1.0) : std::sin(pim) / pim;
            combined = sgn * cgamma(1.0 + static_cast<double>(n) + mu) * sinc;
        }
        tail += k2_inner * e[static_cast<std::size_t>(n)] * std::pow(cplx(x0), mu) * combined;
    }

    return pref_outer * ((head + mid) * inv_ga + tail);
}

K1Result k1(const HeunParams& p, const QuadratureControl& q, cplx z_match) {
    const cplx K2 = k2(p, q);
    constexpr int kMaxCoeff = 40;
    std::vector<cplx> a(kMaxCoeff), e(kMaxCoeff);
    heun_asym_coeffs_B(p, kMaxCoeff, a.data());
    heun_asym_coeffs_H(p, kMaxCoeff, e.data());
    const cplx s = 0.5 * (p.gamma - p.alpha - 2.0);
    const cplx t = -0.5 * (p.gamma + p.alpha + 2.0);
    const cplx B = std::pow(z_match, s) * asym_sum_optimal(a, z_match);
    const cplx H = std::pow(z_match, t) *
                   std::exp(z_match * z_match + p.beta * z_match) *
                   asym_sum_optimal(e, z_match);
    SeriesControl ctl;
    const cplx N = heun_regular(p, z_match, ctl);
    const cplx residual = N - K2 * H;
    if (std::abs(residual) < 1e-12 * std::abs(K2 * H))
        throw ill_conditioned("k1: H+ branch dominates beyond recoverable precision");
    K1Result out;
    out.value = residual / B;
    out.conditioning =
        std::abs(K2 * H) / std::max(std::abs(out.value * B), 1e-300);
    return out;
}

}  // namespace nd
