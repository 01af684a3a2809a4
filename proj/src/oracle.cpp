#include "nd/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <vector>

namespace nd {

namespace {

constexpr double kPi = std::numbers::pi;

double effective_lambda(const PotentialSpec& u, double l) {
    return l + 0.5 * (u.dimension - 3);
}

// ---- tridiagonal Sturm solver -------------------------------------------

// Lowest `count` eigenvalues of the symmetric tridiagonal (a_i on the
// diagonal, b on the off-diagonals) by negative-pivot counting.
std::vector<double> sturm_lowest(const std::vector<double>& a, double b, int count) {
    const int m = static_cast<int>(a.size());
    auto negcount = [&](double x) {
        int neg = 0;
        double d = 1.0;
        const double b2 = b * b;
        for (int i = 0; i < m; ++i) {
            d = a[static_cast<std::size_t>(i)] - x - (i > 0 ? b2 / d : 0.0);
            if (d == 0.0) d = -1e-300;
            if (d < 0.0) ++neg;
        }
        return neg;
    };
    double lo = a[0], hi = a[0];
    for (double ai : a) {
        lo = std::min(lo, ai);
        hi = std::max(hi, ai);
    }
    lo -= 2.0 * std::abs(b) + 1.0;
    hi += 2.0 * std::abs(b) + 1.0;
    std::vector<double> out;
    for (int j = 0; j < count; ++j) {
        double x0 = lo, x1 = hi;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (x0 + x1);
            if (mid == x0 || mid == x1) break;
            if (negcount(mid) >= j + 1)
                x1 = mid;
            else
                x0 = mid;
            if (x1 - x0 <= 1e-14 * std::max(1.0, std::abs(x0) + std::abs(x1))) break;
        }
        out.push_back(0.5 * (x0 + x1));
    }
    return out;
}

std::vector<double> fd_once(const PotentialSpec& u, double l, double r_min,
                            double r_max, int n_points, int count) {
    const double lam = effective_lambda(u, l);
    const double h = (r_max - r_min) / (n_points - 1);
    const int m = n_points - 2;
    std::vector<double> diag(static_cast<std::size_t>(m));
    const double inv_h2 = 1.0 / (h * h);
    for (int i = 0; i < m; ++i) {
        const double r = r_min + (i + 1) * h;
        diag[static_cast<std::size_t>(i)] =
            2.0 * inv_h2 + u.value(r) + lam * (lam + 1.0) / (r * r);
    }
    // first-row stencil correction: u(r_min) follows the regular
    // r^{lam+1} (1 + a1 r) behavior of the interior solution rather than a
    // hard zero; the first-order factor comes from the Coulomb component of
    // the potential and matters when the centrifugal coupling is critical
    if (lam + 1.0 > 0.0 && r_min > 0.0) {
        double coul = 0.0;
        for (const auto& t : u.terms)
            if (std::abs(t.power + 1.0) < 1e-12) coul += t.coeff;
        const double a1 =
            (std::abs(lam + 1.0) > 1e-12) ? coul / (2.0 * (lam + 1.0)) : 0.0;
        double ratio = std::pow(r_min / (r_min + h), lam + 1.0);
        const double w0 = 1.0 + a1 * r_min, w1 = 1.0 + a1 * (r_min + h);
        if (w0 > 0.5 && w1 > 0.5) ratio *= w0 / w1;
        diag[0] -= inv_h2 * ratio;
    }
    return sturm_lowest(diag, -inv_h2, count);
}

// ---- adaptive Simpson ----------------------------------------------------

double simpson_step(const std::function<double(double)>& f, double a, double fa,
                    double b, double fb, double fm, double whole, double tol,
                    int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return simpson_step(f, a, fa, m, fm, flm, left, 0.5 * tol, depth - 1) +
           simpson_step(f, m, fm, b, fb, frm, right, 0.5 * tol, depth - 1);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol) {
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_step(f, a, fa, b, fb, fm, whole, tol, 28);
}

}  // namespace

void RadialGrid::validate() const {
    if (!(0.0 < r_min && r_min < r_max))
        throw precondition_violated("grid: need 0 < r_min < r_max");
    if (n_points < 200)
        throw precondition_violated("grid: n_points must be at least 200");
}

std::vector<FdEigenvalue> fd_bound_spectrum(const PotentialSpec& u, double l,
                                            const RadialGrid& grid, int count) {
    grid.validate();
    if (count < 1) throw precondition_violated("fd_bound_spectrum: count must be positive");
    const auto coarse = fd_once(u, l, grid.r_min, grid.r_max, grid.n_points, count);
    const auto fine =
        fd_once(u, l, grid.r_min, grid.r_max, 2 * (grid.n_points - 1) + 1, count);
    std::vector<FdEigenvalue> out;
    for (int j = 0; j < count; ++j) {
        const double eh = coarse[static_cast<std::size_t>(j)];
        const double eh2 = fine[static_cast<std::size_t>(j)];
        const double rel = std::abs(eh - eh2) / std::max(std::abs(eh2), 1e-300);
        if (rel > 0.01)
            throw grid_too_coarse("fd_bound_spectrum: two-grid estimates differ by >1%");
        out.push_back({(4.0 * eh2 - eh) / 3.0, rel});
    }
    return out;
}

namespace {

struct PhaseMatch {
    double delta1 = 0.0, delta2 = 0.0;  // mod-pi values at the two radii
};

PhaseMatch match_once(const PotentialSpec& u, int l, double k, const RadialGrid& grid,
                      double coulomb_xi) {
    const double lam = effective_lambda(u, static_cast<double>(l));
    const double h = grid.h();
    auto rhs = [&](double r, double uu) {
        return (u.value(r) + lam * (lam + 1.0) / (r * r) - k * k) * uu;
    };
    double r = grid.r_min;
    double y = std::pow(r, l + 1.0), yp = (l + 1.0) * std::pow(r, static_cast<double>(l));
    // pick the sample index for the inner matching radius, offset by ~1.3/k
    // so the two radii never sit a half-wavelength apart
    int i1 = grid.n_points - 1 - std::max(5, static_cast<int>(std::lround(1.3 / (k * h))));
    i1 = std::max(i1, 10);
    double u1 = 0.0, up1 = 0.0, r1 = 0.0;
    for (int i = 0; i < grid.n_points - 1; ++i) {
        // RK4 on (u, u')
        const double k1u = yp, k1p = rhs(r, y);
        const double k2u = yp + 0.5 * h * k1p, k2p = rhs(r + 0.5 * h, y + 0.5 * h * k1u);
        const double k3u = yp + 0.5 * h * k2p, k3p = rhs(r + 0.5 * h, y + 0.5 * h * k2u);
        const double k4u = yp + h * k3p, k4p = rhs(r + h, y + h * k3u);
        y += h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
        yp += h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
        r = grid.r_min + (i + 1) * h;
        const double mag = std::max(std::abs(y), std::abs(yp));
        if (mag > 1e100) {  // only the ratio u'/u is used, so rescaling is free
            y /= mag;
            yp /= mag;
        }
        if (i + 1 == i1) {
            u1 = y;
            up1 = yp;
            r1 = r;
        }
    }
    auto extract = [&](double rr, double uu, double uup) {
        const double theta = std::atan2(k * uu, uup);
        double d = theta - (k * rr - l * kPi / 2.0);
        if (coulomb_xi != 0.0) d += coulomb_xi / (2.0 * k) * std::log(2.0 * k * rr);
        // restore the leading WKB tail phase of the steeper-than-1/r terms
        for (const auto& t : u.terms)
            if (t.power < -1.0)
                d += t.coeff * std::pow(rr, t.power + 1.0) / (2.0 * k * (t.power + 1.0));
        d = std::remainder(d, kPi);  // mod pi, into (-pi/2, pi/2]
        return d;
    };
    PhaseMatch out;
    out.delta1 = extract(r1, u1, up1);
    out.delta2 = extract(r, y, yp);
    return out;
}

}  // namespace

double fd_phase_shift(const PotentialSpec& u, int l, double k, const RadialGrid& grid) {
    grid.validate();
    if (k <= 0.0) throw precondition_violated("fd_phase_shift: k must be positive");
    if (u.kind != PotentialKind::Polynomial)
        throw precondition_violated("fd_phase_shift: polynomial tails only");
    double coulomb_xi = 0.0;
    for (const auto& t : u.terms) {
        if (std::abs(t.power + 1.0) < 1e-12) {
            coulomb_xi += t.coeff;
        } else if (t.power > -1.0 || t.power <= -2.0) {
            throw precondition_violated(
                "fd_phase_shift: only 1/r and steeper-than-1/r (but softer than 1/r^2) "
                "tails have a matching template");
        }
    }

    // resolve the mod-pi branch by continuity along a descending k-ladder
    // anchored where the phase shift is small
    const double k_top = std::max(6.0, 3.0 * k);
    const int steps = 10;
    double delta_cont = 0.0;
    for (int s = 0; s <= steps; ++s) {
        const double ks = k_top * std::pow(k / k_top, static_cast<double>(s) / steps);
        const PhaseMatch m = match_once(u, l, ks, grid, coulomb_xi);
        const double gap = std::remainder(m.delta1 - m.delta2, kPi);
        if (std::abs(gap) > 5e-2)
            throw match_unstable("fd_phase_shift: two-radius extraction disagrees");
        // align the second value to the first before averaging
        const double d2 = m.delta2 + kPi * std::round((m.delta1 - m.delta2) / kPi);
        const double raw = 0.5 * (m.delta1 + d2);
        delta_cont = (s == 0) ? raw : raw + kPi * std::round((delta_cont - raw) / kPi);
    }
    double d = std::remainder(delta_cont, 2.0 * kPi);
    if (d <= -kPi) d += 2.0 * kPi;
    return d;
}

OrbitSample orbit_integrate(const PotentialSpec& u, double E, double L,
                            double r_start, int direction, int n_steps) {
    if (r_start <= 0.0)
        throw precondition_violated("orbit_integrate: r_start must be positive");
    if (n_steps < 8) throw precondition_violated("orbit_integrate: n_steps too small");
    if (direction != 1 && direction != -1)
        throw precondition_violated("orbit_integrate: direction must be +-1");
    auto f = [&](double r) { return 2.0 * (E - u.value(r)) - L * L / (r * r); };
    if (f(r_start) <= 0.0)
        throw no_allowed_region("orbit_integrate: r_start is not inside the allowed region");

    auto bisect_root = [&](double good, double bad) {
        for (int it = 0; it < 200; ++it) {
            const double m = 0.5 * (good + bad);
            if (m == good || m == bad) break;
            if (f(m) > 0.0)
                good = m;
            else
                bad = m;
        }
        return 0.5 * (good + bad);
    };

    double r_bad_lo = r_start;
    while (f(r_bad_lo) > 0.0) {
        r_bad_lo *= 0.95;
        if (r_bad_lo < 1e-12 * r_start)
            throw turning_point_not_bracketed("orbit_integrate: no inner turning point");
    }
    double r_bad_hi = r_start;
    while (f(r_bad_hi) > 0.0) {
        r_bad_hi *= 1.05;
        if (r_bad_hi > 1e12 * r_start)
            throw turning_point_not_bracketed("orbit_integrate: no outer turning point");
    }
    const double r_lo = bisect_root(r_bad_lo / 0.95, r_bad_lo);
    const double r_hi = bisect_root(r_bad_hi / 1.05, r_bad_hi);

    OrbitSample out;
    out.E = E;
    out.L = L;
    out.r_turn_lo = r_lo;
    out.r_turn_hi = r_hi;

    const double width = r_hi - r_lo;
    if (width <= 1e-8 * r_hi) {
        // double root of the radicand: circular orbit, uniform angular advance
        for (int j = 0; j <= n_steps; ++j)
            out.points.emplace_back(r_start,
                                    direction * 2.0 * kPi * j / n_steps);
        return out;
    }

    // r = r_lo + width sin^2(psi) absorbs both inverse-square-root endpoints:
    // dtheta = 2L / (r^2 sqrt(F)) dpsi with F = f / ((r-r_lo)(r_hi-r)) smooth
    const double eps = 1e-7 * width;
    const double f_slope_lo = (f(r_lo + eps) - f(r_lo)) / eps;
    const double f_slope_hi = (f(r_hi) - f(r_hi - eps)) / eps;
    const double r_mid = 0.5 * (r_lo + r_hi);
    const double F_mid = f(r_mid) / ((r_mid - r_lo) * (r_hi - r_mid));
    auto F = [&](double r) {
        const double dl = r - r_lo, dh = r_hi - r;
        double v;
        if (dl < eps)
            v = f_slope_lo / std::max(dh, eps);
        else if (dh < eps)
            v = -f_slope_hi / std::max(dl, eps);
        else
            v = f(r) / (dl * dh);
        // near a double turning root every pointwise estimate cancels to
        // rounding noise; the midpoint value is then the accurate stand-in
        if (!(v > 0.0) || !std::isfinite(v)) v = F_mid;
        return v;
    };
    auto G = [&](double psi) {
        const double s = std::sin(psi);
        const double r = r_lo + width * s * s;
        return 2.0 * L / (r * r * std::sqrt(std::max(F(r), 1e-300)));
    };

    double theta = 0.0;
    out.points.emplace_back(r_lo, 0.0);
    for (int j = 1; j <= n_steps; ++j) {
        const double pa = 0.5 * kPi * (j - 1) / n_steps;
        const double pb = 0.5 * kPi * j / n_steps;
        theta += adaptive_simpson(G, pa, pb, 1e-12 * std::max(1.0, std::abs(theta)));
        const double s = std::sin(pb);
        out.points.emplace_back(r_lo + width * s * s, direction * theta);
    }
    return out;
}

double orbit_dual_check(const OrbitSample& sample, const PotentialSpec& u,
                        const ClassicalDualResult& dual) {
    (void)u;
    if (sample.points.size() < 5)
        throw precondition_violated("orbit_dual_check: too few samples");
    const double p = dual.map.coord_exponent;
    const std::size_t n = sample.points.size();
    std::vector<double> rho(n), phi(n);
    for (std::size_t j = 0; j < n; ++j) {
        rho[j] = std::pow(sample.points[j].first, p);
        phi[j] = p * sample.points[j].second;
    }
    auto fd = [&](double r) {
        return 2.0 * (dual.E - dual.potential.value(r)) -
               dual.L * dual.L / (r * r);
    };
    double fmax = 0.0;
    for (std::size_t j = 0; j < n; ++j) fmax = std::max(fmax, fd(rho[j]));
    if (fmax <= 0.0) throw no_allowed_region("orbit_dual_check: dual orbit has no allowed region");

    double worst = 0.0;
    for (std::size_t j = 1; j + 1 < n; ++j) {
        const double fr = fd(rho[j]);
        // apsidal neighborhoods: both dphi/drho and its finite-difference
        // estimate diverge, so they carry no information
        if (fr < 0.05 * fmax) continue;
        // the sample is uniform in the orbit parameter, so the symmetric
        // difference quotient is a ratio of two centered derivatives and
        // keeps second-order relative accuracy even near the apsides
        const double d = (phi[j + 1] - phi[j - 1]) / (rho[j + 1] - rho[j - 1]);
        const double rhs_sign = (d >= 0.0) ? 1.0 : -1.0;
        const double rhs = rhs_sign * dual.L / (rho[j] * rho[j] * std::sqrt(fr));
        worst = std::max(worst, std::abs(d - rhs) / std::abs(rhs));
    }
    return worst;
}

}  // namespace nd
