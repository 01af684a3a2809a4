#include "nd/duality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace nd {

namespace {

void require_polynomial(const PotentialSpec& u) {
    if (u.kind != PotentialKind::Polynomial)
        throw precondition_violated("power duality requires a polynomial potential");
}

double pivot_p(double pivot_power) {
    if (std::abs(pivot_power + 2.0) < 1e-12)
        throw pole_at_minus_three("dual exponent map has a pole at power -2 (a = -3)");
    return 0.5 * (pivot_power + 2.0);  // p = (a+3)/2 with a+1 the literal power
}

}  // namespace

double dual_exponent(double a_plus_1) {
    const double p = pivot_p(a_plus_1);
    return 2.0 / p - 2.0;  // A+1 = 4/(a+3) - 2
}

DualResult polynomial_dual(const PotentialSpec& u, int pivot, const RadialState& state) {
    require_polynomial(u);
    if (pivot < 0 || pivot >= static_cast<int>(u.terms.size()))
        throw pivot_out_of_range("polynomial_dual: pivot index out of range");
    const double p = pivot_p(u.terms[static_cast<std::size_t>(pivot)].power);
    const double p2 = p * p;

    DualResult out;
    out.potential.kind = PotentialKind::Polynomial;
    out.potential.dimension = u.dimension;
    // energy-image (pivot) term first
    out.potential.terms.push_back({-state.E / p2, 2.0 / p - 2.0});
    for (int j = 0; j < static_cast<int>(u.terms.size()); ++j) {
        if (j == pivot) continue;
        const auto& t = u.terms[static_cast<std::size_t>(j)];
        out.potential.terms.push_back({t.coeff / p2, (t.power + 2.0) / p - 2.0});
    }
    out.potential.validate();

    const double d = static_cast<double>(u.dimension);
    out.state.dimension = u.dimension;
    out.state.l = (state.l + 0.5 * d - 1.0) / p - 0.5 * d + 1.0;
    out.state.n_r = state.n_r;
    out.state.E = -u.terms[static_cast<std::size_t>(pivot)].coeff / p2;
    out.state.is_dual_image = true;

    out.map.coord_exponent = p;
    out.map.energy_coupling_factor = p2;
    out.map.angular_scale = p;
    out.map.wavefn_prefactor_exponent = (1.0 - p) / (2.0 * p);  // (A+1)/4
    out.map.pivot_index = pivot;
    out.map.dim_n = u.dimension;
    out.map.dim_m = u.dimension;
    return out;
}

DualResult power_dual_quantum(const PotentialSpec& u, const RadialState& state) {
    require_polynomial(u);
    if (u.terms.size() != 1)
        throw multi_term_input("power_dual_quantum requires a single-term potential");
    if (state.dimension != 3)
        throw precondition_violated("power_dual_quantum: state must be 3-dimensional");
    return polynomial_dual(u, 0, state);
}

DualResult power_dual_dimensions(const PotentialSpec& u, int n, int m,
                                 const RadialState& state) {
    require_polynomial(u);
    if (u.terms.size() != 1)
        throw multi_term_input("power_dual_dimensions requires a single-term potential");
    if (n < 1 || m < 1)
        throw precondition_violated("power_dual_dimensions: dimensions must be >= 1");
    PotentialSpec un = u;
    un.dimension = n;
    RadialState sn = state;
    sn.dimension = n;
    DualResult out = polynomial_dual(un, 0, sn);
    const double p = out.map.coord_exponent;
    // replace the equal-dimension angular map by l + n/2 - 1 = p (ell + m/2 - 1)
    out.state.l = (state.l + 0.5 * n - 1.0) / p - 0.5 * m + 1.0;
    out.state.dimension = m;
    out.potential.dimension = m;
    out.map.dim_n = n;
    out.map.dim_m = m;
    return out;
}

std::vector<PotentialSpec> dual_set(const PotentialSpec& u) {
    require_polynomial(u);
    std::vector<PotentialSpec> out{u};
    for (int pivot = 0; pivot < static_cast<int>(u.terms.size()); ++pivot) {
        const double p = pivot_p(u.terms[static_cast<std::size_t>(pivot)].power);
        // the set enumerates potential shapes; the energy-image coefficient is
        // a fresh name, chosen attractive by the sign convention
        RadialState nominal;
        nominal.E = (2.0 / p - 2.0 > 0.0) ? -p * p : p * p;
        DualResult d = polynomial_dual(u, pivot, nominal);
        out.push_back(d.potential);
    }
    return out;
}

bool same_up_to_relabeling(const PotentialSpec& a, const PotentialSpec& b) {
    if (a.kind != PotentialKind::Polynomial || b.kind != PotentialKind::Polynomial)
        return false;
    if (a.terms.size() != b.terms.size()) return false;
    std::vector<double> pa, pb;
    for (const auto& t : a.terms) pa.push_back(t.power);
    for (const auto& t : b.terms) pb.push_back(t.power);
    std::sort(pa.begin(), pa.end());
    std::sort(pb.begin(), pb.end());
    for (std::size_t i = 0; i < pa.size(); ++i)
        if (std::abs(pa[i] - pb[i]) > 1e-12) return false;
    return true;
}

ClassicalDualResult classical_dual(const PotentialSpec& u, int pivot, double E, double L) {
    require_polynomial(u);
    if (pivot < 0 || pivot >= static_cast<int>(u.terms.size()))
        throw pivot_out_of_range("classical_dual: pivot index out of range");
    const double p = pivot_p(u.terms[static_cast<std::size_t>(pivot)].power);

    ClassicalDualResult out;
    out.potential.kind = PotentialKind::Polynomial;
    out.potential.dimension = u.dimension;
    out.potential.terms.push_back({-E, 2.0 / p - 2.0});
    for (int j = 0; j < static_cast<int>(u.terms.size()); ++j) {
        if (j == pivot) continue;
        const auto& t = u.terms[static_cast<std::size_t>(j)];
        out.potential.terms.push_back({t.coeff, (t.power + 2.0) / p - 2.0});
    }
    out.potential.validate();
    out.E = -u.terms[static_cast<std::size_t>(pivot)].coeff;
    out.L = L;
    out.map.coord_exponent = p;
    out.map.energy_coupling_factor = 1.0;  // no p^2 factors classically
    out.map.angular_scale = p;             // phi = p theta
    out.map.wavefn_prefactor_exponent = 0.0;
    out.map.pivot_index = pivot;
    return out;
}

ExpLogDualResult exp_log_dual(const PotentialSpec& input, const RadialState& state,
                              double free_parameter) {
    ExpLogDualResult out;
    if (input.kind == PotentialKind::Exponential) {
        const double sigma = input.sigma;
        const double alpha = (free_parameter > 0.0) ? free_parameter : 1.0;
        const double s2 = (2.0 / sigma) * (2.0 / sigma);
        const double disc = -4.0 * s2 * state.E;  // 1 + 4 ell(ell+1)
        if (disc < 0.0)
            throw unsolvable_angular("exp_log_dual: ell(ell+1) target has no real root");
        out.potential.kind = PotentialKind::LogSquared;
        out.potential.dimension = input.dimension;
        out.potential.eta = state.l * (state.l + 1.0);
        out.potential.alpha_scale = alpha;
        out.state = state;
        out.state.l = 0.5 * (-1.0 + std::sqrt(disc));
        out.state.E = -s2 * alpha * alpha * input.xi;
        out.state.is_dual_image = true;
        out.sigma = sigma;
        out.alpha_scale = alpha;
    } else if (input.kind == PotentialKind::LogSquared) {
        const double sigma = (free_parameter > 0.0) ? free_parameter : 2.0;
        const double alpha = input.alpha_scale;
        const double s2 = (2.0 / sigma) * (2.0 / sigma);
        const double disc = 1.0 + 4.0 * input.eta;  // 1 + 4 l(l+1)
        if (disc < 0.0)
            throw unsolvable_angular("exp_log_dual: l(l+1) = eta has no real root");
        out.potential.kind = PotentialKind::Exponential;
        out.potential.dimension = input.dimension;
        out.potential.sigma = sigma;
        out.potential.xi = -state.E / (s2 * alpha * alpha);
        out.state = state;
        out.state.l = 0.5 * (-1.0 + std::sqrt(disc));
        out.state.E = -(state.l * (state.l + 1.0) + 0.25) / s2;
        out.state.is_dual_image = true;
        out.sigma = sigma;
        out.alpha_scale = alpha;
    } else {
        throw precondition_violated("exp_log_dual requires an exponential or log-squared input");
    }
    return out;
}

double map_coordinate(const DualityMap& m, double r) {
    if (r <= 0.0) throw precondition_violated("map_coordinate: r must be positive");
    return std::pow(r, m.coord_exponent);
}

std::vector<std::pair<double, double>> map_wavefunction(
    const DualityMap& m, const std::vector<std::pair<double, double>>& samples) {
    std::vector<std::pair<double, double>> out;
    out.reserve(samples.size());
    double peak = 0.0;
    for (const auto& [r, u] : samples) {
        const double rho = map_coordinate(m, r);
        const double v = u * std::pow(rho, -m.wavefn_prefactor_exponent);
        out.emplace_back(rho, v);
        peak = std::max(peak, std::abs(v));
    }
    if (peak > 0.0)
        for (auto& s : out) s.second /= peak;
    return out;
}

double dual_eigenvalue(const SpectrumSolver& solver_for_U, const DualityMap& m,
                       const RadialState& target_state,
                       const std::vector<double>& couplings_V) {
    if (couplings_V.empty())
        throw precondition_violated("dual_eigenvalue: empty coupling list");
    const double p = m.coord_exponent;
    const double p2 = m.energy_coupling_factor;
    const double eta = couplings_V[0];
    const double l_u = p * (target_state.l + 0.5 * m.dim_m - 1.0) - 0.5 * m.dim_n + 1.0;

    auto g = [&](double curlyE) -> double {
        std::vector<double> couplings_u(couplings_V.size());
        std::size_t next_np = 1;
        for (std::size_t j = 0; j < couplings_V.size(); ++j) {
            if (static_cast<int>(j) == m.pivot_index)
                couplings_u[j] = -curlyE * p2;
            else
                couplings_u[j] = couplings_V[next_np++] * p2;
        }
        return solver_for_U(target_state.n_r, l_u, couplings_u) + eta * p2;
    };

    // bracket over signed log-spaced candidates, skipping invalid (NaN) probes
    std::vector<double> candidates;
    for (double x = 6.0; x >= -8.0; x -= 0.25) candidates.push_back(-std::pow(10.0, x));
    for (double x = -8.0; x <= 6.0; x += 0.25) candidates.push_back(std::pow(10.0, x));

    double lo = 0.0, hi = 0.0, glo = 0.0, ghi = 0.0;
    bool have_prev = false, bracketed = false;
    double prev = 0.0, gprev = 0.0;
    int sign_changes = 0;
    for (double c : candidates) {
        const double gc = g(c);
        if (!std::isfinite(gc)) {
            have_prev = false;
            continue;
        }
        if (have_prev && gprev * gc <= 0.0 && (gprev != 0.0 || gc != 0.0)) {
            ++sign_changes;
            if (!bracketed) {
                lo = prev;
                hi = c;
                glo = gprev;
                ghi = gc;
                bracketed = true;
            }
        }
        prev = c;
        gprev = gc;
        have_prev = true;
    }
    if (!bracketed) throw no_bracket("dual_eigenvalue: no sign change found");
    if (sign_changes > 1)
        throw non_monotone("dual_eigenvalue: spectrum relation not monotone over the scan");

    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        const double gm = g(mid);
        if (!std::isfinite(gm)) throw non_monotone("dual_eigenvalue: solver failed inside bracket");
        if ((gm <= 0.0) == (glo <= 0.0)) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
            ghi = gm;
        }
        if (std::abs(hi - lo) <= 1e-16 * std::max(std::abs(lo), std::abs(hi))) break;
    }
    (void)ghi;
    return 0.5 * (lo + hi);
}

}  // namespace nd
