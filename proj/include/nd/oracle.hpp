#ifndef ND_ORACLE_HPP
#define ND_ORACLE_HPP

#include <utility>
#include <vector>

#include "nd/duality.hpp"
#include "nd/potential.hpp"

namespace nd {

// Uniform radial grid for the finite-difference solvers.
struct RadialGrid {
    double r_min = 1e-4;
    double r_max = 12.0;
    int n_points = 4000;

    double h() const { return (r_max - r_min) / (n_points - 1); }
    void validate() const;
};

struct FdEigenvalue {
    double E = 0.0;               // Richardson-extrapolated over (h, h/2)
    double error_estimate = 0.0;  // |E_h - E_{h/2}| relative
};

struct OrbitSample {
    std::vector<std::pair<double, double>> points;  // (r, theta), theta monotone
    double E = 0.0;
    double L = 0.0;
    double r_turn_lo = 0.0;
    double r_turn_hi = 0.0;
};

// Lowest `count` Dirichlet eigenvalues of -u'' + [U + Lam(Lam+1)/r^2] u = E u,
// Lam = l + (d-3)/2, via Sturm-sequence bisection on the three-point
// tridiagonal matrix, run on grids h and h/2 and Richardson-extrapolated.
// The first interior row carries an r^{l+1} boundary stencil correction.
// Throws grid_too_coarse when the two-grid values differ by more than 1%.
std::vector<FdEigenvalue> fd_bound_spectrum(const PotentialSpec& u, double l,
                                            const RadialGrid& grid, int count);

// Scattering phase shift by outward RK4 integration from the r^{l+1}
// boundary and log-derivative matching against free (or Coulomb-log
// corrected) sinusoids at two radii, with the leading WKB tail phase
// -(1/2k) int_r^inf U restored analytically for power tails steeper than
// 1/r.  The mod-pi ambiguity is resolved by continuity along a descending
// k-ladder anchored at high k.  Throws match_unstable when the two-radius
// values disagree by more than 5e-2.
double fd_phase_shift(const PotentialSpec& u, int l, double k, const RadialGrid& grid);

// Classical orbit r(theta) between turning points of
// 2[E - U(r)] - L^2/r^2 = 0, by adaptive quadrature of dtheta/dr with the
// r = r_turn +- t^2 substitution absorbing the inverse-square-root
// endpoints.  A double turning root (circular orbit) yields uniformly
// advancing theta at fixed r.
OrbitSample orbit_integrate(const PotentialSpec& u, double E, double L,
                            double r_start, int direction, int n_steps);

// Transforms the sample through (rho, phi) = (r^p, p theta) and evaluates
// the dual orbit equation residual |dphi/drho - RHS| by nonuniform central
// differences; returns the max relative residual over points safely inside
// the allowed region (the apsidal neighborhoods, where both sides diverge,
// are excluded).
double orbit_dual_check(const OrbitSample& sample, const PotentialSpec& u,
                        const ClassicalDualResult& dual);

}  // namespace nd

#endif
