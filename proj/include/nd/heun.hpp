#ifndef ND_HEUN_HPP
#define ND_HEUN_HPP

#include <cstddef>

#include "nd/types.hpp"

namespace nd {

// Parameters (alpha, beta, gamma, delta) of the biconfluent Heun equation
//   z y'' + (1 + alpha - beta z - 2 z^2) y' + {(gamma - alpha - 2) z
//       - [delta + beta (1 + alpha)]/2} y = 0.
// The regular solution at z = 0 is denoted N(alpha, beta, gamma, delta, z).
struct HeunParams {
    cplx alpha{};
    cplx beta{};
    cplx gamma{};
    cplx delta{};
};

struct SeriesControl {
    double rel_tol = 1e-14;
    std::size_t max_terms = 10000;
    int consecutive_small = 3;
};

// Rising factorial (a)_n = a (a+1) ... (a+n-1); empty product for n = 0.
cplx pochhammer(cplx a, unsigned n);

// Regular solution N(alpha, beta, gamma, delta, z), normalized to N(0) = 1.
// Coefficients follow the three-term recurrence
//   A_0 = 1,  A_1 = D,  A_{n+2} = [beta (n+1) + D] A_{n+1}
//             - (n+1)(n+1+alpha)(gamma - alpha - 2 - 2n) A_n,
// with D = [delta + beta (1 + alpha)]/2; the summed term is
// A_n z^n / ((1+alpha)_n n!).  Truncation: `consecutive_small` successive
// terms below rel_tol of the partial sum (transient zero terms are common
// with three-term recurrences, hence the run-length requirement).
cplx heun_regular(const HeunParams& p, cplx z, const SeriesControl& ctl = {});

// Decaying irregular solution at z -> +inf:
//   B+(z) = z^s sum_{n>=0} a_n z^{-n},   s = (gamma - alpha - 2)/2,
//   a_0 = 1,  2 n a_n = [beta (s - n + 1) + D] a_{n-1}
//                        - (s - n + 2)(s - n + 2 + alpha) a_{n-2}.
// The series is asymptotic; n_terms picks the truncation order.  Only valid
// for |z|^2 >= 2 (|alpha| + |gamma| + n_terms); see heun_asymptotic_valid.
cplx heun_irregular_B(const HeunParams& p, cplx z, int n_terms);

// Growing irregular solution at z -> +inf:
//   H+(z) = z^t e^{z^2 + beta z} sum_{n>=0} e_n z^{-n},
//   t = -(gamma + alpha + 2)/2,
//   e_0 = 1,  2 n e_n = [beta (t - n + 1) + (beta (1 + alpha) - delta)/2] e_{n-1}
//                        + (t - n + 2)(t - n + 2 + alpha) e_{n-2}.
// The exponential factor is forced by dominant balance: substituting
// e^{z^2 + c z} leaves the z^2 term unbalanced unless c = beta.
cplx heun_irregular_H(const HeunParams& p, cplx z, int n_terms);

// Coefficient sequences of the asymptotic series above (a_0..a_{n-1} and
// e_0..e_{n-1}); exposed for connection-coefficient tail work and tests.
void heun_asym_coeffs_B(const HeunParams& p, int n, cplx* out);
void heun_asym_coeffs_H(const HeunParams& p, int n, cplx* out);

bool heun_asymptotic_valid(const HeunParams& p, cplx z, int n_terms);

// Kummer's confluent hypergeometric function 1F1(a; b; z) by direct series,
// same truncation contract as heun_regular.
cplx kummer_1f1(cplx a, cplx b, cplx z, const SeriesControl& ctl = {});

// For beta = delta = 0 the regular solution collapses to
//   N(alpha, 0, gamma, 0, z) = 1F1(1/2 + alpha/4 - gamma/4; 1 + alpha/2; z^2).
cplx heun_to_kummer(const HeunParams& p, cplx z, const SeriesControl& ctl = {});

}  // namespace nd

#endif
