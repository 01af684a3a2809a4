#include "nd/heun.hpp"

#include <cmath>
#include <vector>

namespace nd {

namespace {

bool is_nonpositive_offset_integer(const cplx& a) {
    // true when 1 + a hits a non-positive integer, i.e. a in {-1, -2, ...}
    if (std::abs(a.imag()) > 1e-13) return false;
    const double r = a.real();
    if (r > -0.5) return false;
    return std::abs(r - std::round(r)) < 1e-13;
}

cplx big_d(const HeunParams& p) {
    return 0.5 * (p.delta + p.beta * (1.0 + p.alpha));
}

}  // namespace

cplx pochhammer(cplx a, unsigned n) {
    cplx prod = 1.0;
    for (unsigned k = 0; k < n; ++k) prod *= a + static_cast<double>(k);
    return prod;
}

cplx heun_regular(const HeunParams& p, cplx z, const SeriesControl& ctl) {
    if (is_nonpositive_offset_integer(p.alpha))
        throw invalid_alpha("heun_regular: alpha is a negative integer");
    if (z == cplx{0.0, 0.0}) return 1.0;

    // Work with the summed terms T_n = A_n z^n / ((1+alpha)_n n!) directly:
    //   (n+2)(n+2+alpha) T_{n+2} = [beta (n+1) + D] z T_{n+1}
    //                              - (gamma - alpha - 2 - 2n) z^2 T_n.
    // (Recurring on the scaled coefficients and z^n separately overflows for
    // |z| ~ 12 even though the terms themselves stay representable.)
    const cplx D = big_d(p);
    const cplx z2 = z * z;
    cplx t_prev = 1.0;                       // T_0
    cplx t_curr = D / (1.0 + p.alpha) * z;   // T_1

    kahan_sum acc;
    acc.add(t_prev);
    acc.add(t_curr);

    int small_run = 0;
    for (std::size_t n = 0; n + 2 <= ctl.max_terms; ++n) {
        const double nn = static_cast<double>(n);
        const cplx term = ((p.beta * (nn + 1.0) + D) * z * t_curr -
                           (p.gamma - p.alpha - 2.0 - 2.0 * nn) * z2 * t_prev) /
                          ((nn + 2.0) * (nn + 2.0 + p.alpha));
        acc.add(term);
        t_prev = t_curr;
        t_curr = term;

        if (std::abs(term) <= ctl.rel_tol * std::abs(acc.value())) {
            if (++small_run >= ctl.consecutive_small) return acc.value();
        } else {
            small_run = 0;
        }
    }
    throw non_convergent("heun_regular: series did not converge within max_terms");
}

void heun_asym_coeffs_B(const HeunParams& p, int n, cplx* out) {
    const cplx D = big_d(p);
    const cplx s = 0.5 * (p.gamma - p.alpha - 2.0);
    for (int k = 0; k < n; ++k) {
        if (k == 0) {
            out[0] = 1.0;
            continue;
        }
        const double kk = static_cast<double>(k);
        cplx v = (p.beta * (s - kk + 1.0) + D) * out[k - 1];
        if (k >= 2) v -= (s - kk + 2.0) * (s - kk + 2.0 + p.alpha) * out[k - 2];
        out[k] = v / (2.0 * kk);
    }
}

void heun_asym_coeffs_H(const HeunParams& p, int n, cplx* out) {
    const cplx t = -0.5 * (p.gamma + p.alpha + 2.0);
    const cplx b1 = 0.5 * (p.beta * (1.0 + p.alpha) - p.delta);
    for (int k = 0; k < n; ++k) {
        if (k == 0) {
            out[0] = 1.0;
            continue;
        }
        const double kk = static_cast<double>(k);
        cplx v = (p.beta * (t - kk + 1.0) + b1) * out[k - 1];
        if (k >= 2) v += (t - kk + 2.0) * (t - kk + 2.0 + p.alpha) * out[k - 2];
        out[k] = v / (2.0 * kk);
    }
}

bool heun_asymptotic_valid(const HeunParams& p, cplx z, int n_terms) {
    return std::norm(z) >= 2.0 * (std::abs(p.alpha) + std::abs(p.gamma) +
                                  static_cast<double>(n_terms));
}

namespace {

// Shared tail summation for the two asymptotic branches: sums
// coeff_n z^{-n}, flagging growth of the (divergent) asymptotic tail.
cplx asym_sum(const std::vector<cplx>& coeff, cplx z) {
    kahan_sum acc;
    cplx zi = 1.0;
    double prev_mag = std::abs(coeff[0]);
    int grow_run = 0;
    for (std::size_t n = 0; n < coeff.size(); ++n) {
        const cplx term = coeff[n] * zi;
        acc.add(term);
        const double mag = std::abs(term);
        if (n > 0) {
            if (mag > prev_mag && mag > 1e-15 * std::abs(acc.value())) {
                if (++grow_run >= 2)
                    throw divergent_tail(
                        "asymptotic tail grows before the requested order");
            } else {
                grow_run = 0;
            }
        }
        prev_mag = mag;
        zi /= z;
    }
    return acc.value();
}

}  // namespace

cplx heun_irregular_B(const HeunParams& p, cplx z, int n_terms) {
    if (!heun_asymptotic_valid(p, z, n_terms))
        throw precondition_violated("heun_irregular_B: |z| below asymptotic validity bound");
    std::vector<cplx> a(static_cast<std::size_t>(n_terms));
    heun_asym_coeffs_B(p, n_terms, a.data());
    const cplx s = 0.5 * (p.gamma - p.alpha - 2.0);
    return std::pow(z, s) * asym_sum(a, z);
}

cplx heun_irregular_H(const HeunParams& p, cplx z, int n_terms) {
    if (!heun_asymptotic_valid(p, z, n_terms))
        throw precondition_violated("heun_irregular_H: |z| below asymptotic validity bound");
    std::vector<cplx> e(static_cast<std::size_t>(n_terms));
    heun_asym_coeffs_H(p, n_terms, e.data());
    const cplx t = -0.5 * (p.gamma + p.alpha + 2.0);
    return std::pow(z, t) * std::exp(z * z + p.beta * z) * asym_sum(e, z);
}

cplx kummer_1f1(cplx a, cplx b, cplx z, const SeriesControl& ctl) {
    if (is_nonpositive_offset_integer(b - 1.0))
        throw invalid_b("kummer_1f1: b is a non-positive integer");
    kahan_sum acc;
    cplx term = 1.0;
    acc.add(term);
    int small_run = 0;
    for (std::size_t n = 0; n < ctl.max_terms; ++n) {
        const double nn = static_cast<double>(n);
        term *= (a + nn) / (b + nn) * z / (nn + 1.0);
        acc.add(term);
        if (std::abs(term) <= ctl.rel_tol * std::abs(acc.value())) {
            if (++small_run >= ctl.consecutive_small) return acc.value();
        } else {
            small_run = 0;
        }
    }
    throw non_convergent("kummer_1f1: series did not converge within max_terms");
}

cplx heun_to_kummer(const HeunParams& p, cplx z, const SeriesControl& ctl) {
    if (p.beta != cplx{0.0, 0.0} || p.delta != cplx{0.0, 0.0})
        throw precondition_violated("heun_to_kummer requires beta = delta = 0");
    return kummer_1f1(0.5 + 0.25 * (p.alpha - p.gamma), 1.0 + 0.5 * p.alpha, z * z, ctl);
}

}  // namespace nd
