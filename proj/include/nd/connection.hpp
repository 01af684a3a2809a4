#ifndef ND_CONNECTION_HPP
#define ND_CONNECTION_HPP

#include "nd/heun.hpp"
#include "nd/quadrature.hpp"

namespace nd {

// Semi-infinite moment integral of the regular solution,
//   J_lambda(p) = int_0^inf x^{lambda-1} e^{-x^2 - beta x} N(p, x) dx,
// taken along the real axis regardless of parameter phases.  Requires
// Re(lambda) > 0 for integrability at the origin, and a regular solution
// whose growing-branch content still loses to e^{-x^2} before tail_cutoff;
// otherwise the raw integral diverges (see k2 for the continued version).
cplx j_integral(cplx lambda, const HeunParams& p, const QuadratureControl& q = {});

// Connection coefficient K2 in N = K1 B+ + K2 H+ along the positive real
// axis, assembled as
//   K2(a,b,g,d) = Gamma(1+a) / [Gamma((a-g)/2) Gamma(1+(a+g)/2)]
//                 * J_{1+(a+g)/2}((a+g)/2, b, (3a-g)/2, d + b(g-a)/2).
// The inner moment integral converges only for Re(g) < Re(a); elsewhere the
// integrand's growing-branch component leaves a power-law tail.  We therefore
// subtract that component (its own connection coefficient times the H+
// asymptotic series) on [x0, cutoff] and continue the resulting scale-free
// power moments int_{x0}^inf x^{mu-1} dx to -x0^mu / mu.  The poles of the
// continued moments in mu cancel the zeros of 1/Gamma((a-g)/2) analytically;
// the assembly below performs that cancellation in a numerically stable form.
cplx k2(const HeunParams& p, const QuadratureControl& q = {});

// Closed form for beta = delta = 0:
//   K2(alpha, 0, gamma, 0) = Gamma(1 + alpha/2) / Gamma(1/2 + alpha/4 - gamma/4),
// returning exact 0 at denominator poles (this is how closed-form spectra
// emerge as zeros of K2).
cplx k2_closed_beta0_delta0(cplx alpha, cplx gamma);

struct K1Result {
    cplx value;
    double conditioning;  // |K2 H+| / |K1 B+| at the matching point
};

// B+-branch coefficient, recovered by matching N to K1 B+ + k2(p) H+ at
// z_match.  Ill-conditioned when the H+ branch swamps the decaying one.
K1Result k1(const HeunParams& p, const QuadratureControl& q, cplx z_match);

// K2 by direct two-point asymptotic matching on the positive real axis
// (solves [B+ H+; B+ H+][K1; K2] = [N; N] at two abscissae).  Used as the
// engine for the inner coefficient in k2's tail subtraction and as an
// independent cross-check of the quadrature route.
cplx k2_match(const HeunParams& p);

}  // namespace nd

#endif
