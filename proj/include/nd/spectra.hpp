#ifndef ND_SPECTRA_HPP
#define ND_SPECTRA_HPP

#include <utility>
#include <vector>

#include "nd/connection.hpp"
#include "nd/heun.hpp"
#include "nd/potential.hpp"

namespace nd {

// Where the energy E landed in the Heun parameter set.  AsZ2Coefficient means
// E sits inside the scale c (so alpha, gamma, delta all depend on E); AsBeta
// covers the positive-fractional-power families whose energy image is the
// linear slot.
enum class EnergyRole { AsGamma, AsDelta, AsBeta, AsZ2Coefficient };

// Prefactor peeled off the radial solution:
//   u(r) = exp(-gauss_coeff z^2 - linear_coeff z) z^{power_s} f(z),  z = c r^p,
// with f the regular Heun solution.
struct PeelFactors {
    cplx gauss_coeff{0.5, 0.0};
    cplx linear_coeff{};
    cplx power_s{};
};

// Full substitution taking u'' + [E - U(r) - Lam(Lam+1)/r^2] u = 0 into the
// canonical biconfluent Heun equation in z = c r^p.
struct HeunReduction {
    double p = 1.0;
    cplx c{1.0, 0.0};
    PeelFactors peel;
    HeunParams heun;
    EnergyRole energy_role = EnergyRole::AsGamma;
};

struct SpectrumRequest {
    PotentialSpec potential;
    double l = 0.0;
    double e_lo = 0.0, e_hi = 0.0;
    int max_states = 8;
    int scan_points = 256;
};

struct BoundState {
    double E = 0.0;
    int n_r = 0;
    double k2_residual = 0.0;
    bool at_window_edge = false;
};

// Maps the radial problem to Heun normal form.  Every effective exponent
// (e+2)/p - 2 (for each potential power e and the energy's e = 0 slot) must
// land in {2, 1, 0, -1, -2}; the z^2 slot is normalized to -1 by the choice
// of c (real positive when possible, arg -pi/4 branch for scattering-side
// continuation).  Throws not_heun_reducible when no admissible p exists.
HeunReduction reduce_to_heun(const PotentialSpec& u, double l, double E);

// Bound states as zeros of K2 along the energy window: scan, bracket
// (real-part sign changes, or |K2| minima for complex-parameter families),
// refine by bisection to |dE|/|E| <= 1e-10.  The reduction is re-run at every
// scan point since alpha/gamma/delta may depend on E.
std::vector<BoundState> bound_spectrum(const SpectrumRequest& req);

// Regular radial solution prefactor x heun_regular on the given grid,
// normalized to unit maximum amplitude.
std::vector<std::pair<double, double>> eigenfunction(const PotentialSpec& u, double l,
                                                     double E,
                                                     const std::vector<double>& grid);

// Scattering phase shift delta_l = -arg K2 (principal value in (-pi, pi])
// at E = k^2, for attractive negative-power sums reducible with p = 1/2.
double phase_shift(const PotentialSpec& u, int l, double k);

// E = 2 sqrt(xi) (2 n_r + l + n/2).
double ho_energy(double xi, int n_r, double l, int n_dims);

// 3-D: -eta^2 / (4 (n_r + l + 1)^2).  The m-dimensional denominator
// n_r + l + m/2 - 1/2 is exposed in both the squared and unsquared readings;
// the squared one is the default (it reduces to the 3-D case and is the one
// confirmed by the finite-difference oracle).
double coulomb_energy(double eta, int n_r, double l, int m_dims,
                      bool squared_denominator = true);

}  // namespace nd

#endif
