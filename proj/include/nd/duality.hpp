#ifndef ND_DUALITY_HPP
#define ND_DUALITY_HPP

#include <functional>
#include <utility>
#include <vector>

#include "nd/potential.hpp"

namespace nd {

// Quantum numbers and spectrum data.  Dual images generically carry
// non-integer l, which is first-class here.
struct RadialState {
    int dimension = 3;
    double l = 0.0;
    int n_r = 0;
    double E = 0.0;
    bool is_dual_image = false;
};

// A power duality transform.  With a the pivot term's exponent offset
// (pivot power = a+1), the coordinate map is rho = r^p with p = (a+3)/2, and
// the dual exponent offset A satisfies (a+3)(A+3) = 4.
struct DualityMap {
    double coord_exponent = 1.0;          // p in rho = r^p
    double energy_coupling_factor = 1.0;  // (2/(A+3))^2 = p^2
    double angular_scale = 1.0;           // l + n/2 - 1 = scale * (ell + m/2 - 1)
    double wavefn_prefactor_exponent = 0.0;  // (A+1)/4: u(r) = rho^{(A+1)/4} v(rho)
    int pivot_index = 0;                  // which input term traded with the energy
    int dim_n = 3, dim_m = 3;
};

struct DualResult {
    PotentialSpec potential;
    RadialState state;
    DualityMap map;
};

// Dual exponent map on literal powers: input a+1, output A+1 with
// A = 4/(a+3) - 3.  Involutive; pole at a = -3.
double dual_exponent(double a_plus_1);

// Quantum power duality for a single-term potential in 3 dimensions:
//   E = -eta p^2,  xi = -curlyE p^2,  l + 1/2 = p (ell + 1/2),  p = (a+3)/2.
DualResult power_dual_quantum(const PotentialSpec& u, const RadialState& state);

// Cross-dimensional variant: angular map l + n/2 - 1 = p (ell + m/2 - 1);
// energy/coupling factors unchanged.
DualResult power_dual_dimensions(const PotentialSpec& u, int n, int m,
                                 const RadialState& state);

// General polynomial duality: the pivot term trades places with the energy;
// every non-pivot exponent b+1 maps through p (B+3) = (b+3)/p... concretely
// new_power + 2 = (old_power + 2)/p, with coefficient lambda = mu / p^2.
// The dual potential's terms are ordered: energy-image (pivot) term first,
// then the images of the non-pivot terms in input order.
DualResult polynomial_dual(const PotentialSpec& u, int pivot, const RadialState& state);

// The input plus its N pivot-images (N+1 members, pairwise dual).
std::vector<PotentialSpec> dual_set(const PotentialSpec& u);

// Two potentials are the same member of a dual set up to coefficient
// relabeling when their sorted exponent lists agree to 1e-12.
bool same_up_to_relabeling(const PotentialSpec& a, const PotentialSpec& b);

struct ClassicalDualResult {
    PotentialSpec potential;
    double E = 0.0;  // dual orbit energy (= -xi_pivot)
    double L = 0.0;  // unchanged
    DualityMap map;  // same exponent/coordinate data, no p^2 coupling factors
};

// Classical power duality: identical exponent and coordinate maps, but the
// energy/coupling swap carries no p^2 factors (eta = -E, curlyE = -xi,
// lambda = mu), L is unchanged, and the orbit angle maps as phi = p theta.
ClassicalDualResult classical_dual(const PotentialSpec& u, int pivot, double E, double L);

struct ExpLogDualResult {
    PotentialSpec potential;
    RadialState state;
    double sigma = 2.0;        // slope of the exponential side
    double alpha_scale = 1.0;  // log scale of the log-squared side
    // coordinate map r = (2/sigma) ln(alpha rho); wavefunction u = rho^{-1/2} v
};

// Exponential <-> log-squared duality:
//   (xi e^{sigma r}, E, l)  ->  eta/(rho ln(alpha rho))^2 with
//       eta = l(l+1),  ell(ell+1) = -(2/sigma)^2 E - 1/4,
//       curlyE = -(2/sigma)^2 alpha^2 xi,
// and the inverse direction.  The free parameter of the output family
// (alpha for the forward map, sigma for the inverse) is `free_parameter`.
ExpLogDualResult exp_log_dual(const PotentialSpec& input, const RadialState& state,
                              double free_parameter = 0.0);

double map_coordinate(const DualityMap& m, double r);

// Applies the coordinate and amplitude maps pointwise and renormalizes the
// image to unit maximum amplitude (the dropped constant factor is not
// tracked).
std::vector<std::pair<double, double>> map_wavefunction(
    const DualityMap& m, const std::vector<std::pair<double, double>>& samples);

// Spectrum solver f(n_r, l, couplings) -> E for the original potential;
// `couplings` are ordered as the original's terms.
using SpectrumSolver =
    std::function<double(int n_r, double l, const std::vector<double>& couplings)>;

// Inverts the duality spectrum relation: finds curlyE such that
//   f(n_r, mapped-l, couplings_U(curlyE)) = -eta p^2,
// where couplings_U has -curlyE p^2 in the pivot slot and mu_j = lambda_j p^2
// elsewhere.  couplings_V is ordered like polynomial_dual's output (pivot
// image first).  target_state supplies (n_r, ell, dimension of V).
double dual_eigenvalue(const SpectrumSolver& solver_for_U, const DualityMap& m,
                       const RadialState& target_state,
                       const std::vector<double>& couplings_V);

}  // namespace nd

#endif
