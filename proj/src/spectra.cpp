#include "nd/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

namespace nd {

namespace {

constexpr double kSlotTol = 1e-9;

struct Candidate {
    double p = 0.0;
    double slot_S[5] = {};  // source-term sums for q = -2..2 (index q+2)
    int q_energy = 0;
    double w = 0.0;  // c^4
};

// Effective exponent q = (e+2)/p - 2 must be an integer in [-2, 2].
std::optional<int> slot_of(double e, double p) {
    const double q = (e + 2.0) / p - 2.0;
    const double qr = std::round(q);
    if (std::abs(q - qr) > kSlotTol || qr < -2.0 || qr > 2.0) return std::nullopt;
    return static_cast<int>(qr);
}

std::optional<Candidate> try_candidate(const PotentialSpec& u, double E, double p) {
    Candidate c;
    c.p = p;
    int z2_contributors = 0;
    for (const auto& t : u.terms) {
        const auto q = slot_of(t.power, p);
        if (!q) return std::nullopt;
        c.slot_S[*q + 2] += -t.coeff;  // source term S = -coeff
        if (*q == 2) ++z2_contributors;
    }
    const auto qe = slot_of(0.0, p);
    if (!qe) return std::nullopt;
    c.q_energy = *qe;
    c.slot_S[*qe + 2] += E;
    if (*qe == 2) ++z2_contributors;
    if (z2_contributors != 1) return std::nullopt;
    const double s2 = c.slot_S[4];
    if (std::abs(s2) < 1e-300) return std::nullopt;
    c.w = -s2 / (p * p);
    return c;
}

}  // namespace

HeunReduction reduce_to_heun(const PotentialSpec& u, double l, double E) {
    if (u.kind != PotentialKind::Polynomial)
        throw not_heun_reducible("reduce_to_heun: only polynomial potentials reduce");
    u.validate();
    const double Lam = l + 0.5 * (u.dimension - 3);

    // Candidate exponents: each term as the z^2 pivot, plus the energy pivot.
    std::vector<double> ps;
    for (const auto& t : u.terms) ps.push_back(0.25 * (t.power + 2.0));
    ps.push_back(0.5);

    std::optional<Candidate> chosen;
    for (double p : ps) {
        if (p < 1e-12) continue;
        if (chosen && std::abs(p - chosen->p) < 1e-12) continue;
        const auto cand = try_candidate(u, E, p);
        if (!cand) continue;
        if (!chosen || (chosen->w <= 0.0 && cand->w > 0.0)) chosen = cand;
    }
    if (!chosen)
        throw not_heun_reducible(
            "reduce_to_heun: no exponent p places every term in the slots {2,1,0,-1,-2}");

    const double p = chosen->p;
    const double p2 = p * p;
    const cplx c = (chosen->w > 0.0)
                       ? cplx(std::pow(chosen->w, 0.25), 0.0)
                       : std::pow(-chosen->w, 0.25) *
                             std::exp(cplx(0.0, -std::numbers::pi / 4.0));

    // slot couplings g_q = S_q c^{-(q+2)} / p^2; the z^2 slot is -1 by choice of c
    auto g = [&](int q) -> cplx {
        return chosen->slot_S[q + 2] * std::pow(c, cplx(-(q + 2.0))) / p2;
    };

    HeunReduction out;
    out.p = p;
    out.c = c;
    out.heun.beta = -g(1);
    out.heun.gamma = g(0) + 0.25 * out.heun.beta * out.heun.beta;
    out.heun.delta = -2.0 * g(-1);
    // the z^{-2} slot collects the centrifugal barrier, the substitution's own
    // (p^2-1)/(4p^2), and any literal r^{-2} term (self-dual exponent)
    const cplx G2 = (p2 - 1.0) / (4.0 * p2) - Lam * (Lam + 1.0) / p2 + g(-2);
    cplx alpha = std::sqrt(1.0 - 4.0 * G2);
    if (alpha.real() < 0.0 || (alpha.real() == 0.0 && alpha.imag() < 0.0)) alpha = -alpha;
    out.heun.alpha = alpha;

    out.peel.gauss_coeff = 0.5;
    out.peel.linear_coeff = 0.5 * out.heun.beta;
    // z^s with p*s = Lam+1: the branch regular at the origin
    out.peel.power_s = 0.5 * (1.0 + alpha) - (p - 1.0) / (2.0 * p);

    switch (chosen->q_energy) {
        case 2: out.energy_role = EnergyRole::AsZ2Coefficient; break;
        case 1: out.energy_role = EnergyRole::AsBeta; break;
        case 0: out.energy_role = EnergyRole::AsGamma; break;
        case -1: out.energy_role = EnergyRole::AsDelta; break;
        default:
            throw not_heun_reducible("reduce_to_heun: energy fell into the z^{-2} slot");
    }
    return out;
}

namespace {

std::optional<cplx> k2_at(const PotentialSpec& u, double l, double E) {
    try {
        const HeunReduction red = reduce_to_heun(u, l, E);
        const cplx v = k2_match(red.heun);
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return std::nullopt;
        return v;
    } catch (const error&) {
        return std::nullopt;
    }
}

}  // namespace

std::vector<BoundState> bound_spectrum(const SpectrumRequest& req) {
    if (!(req.e_lo < req.e_hi))
        throw precondition_violated("bound_spectrum: energy window must satisfy E_lo < E_hi");
    if (req.scan_points < 64)
        throw precondition_violated("bound_spectrum: scan_points must be at least 64");

    const int n = req.scan_points;
    std::vector<double> Es(static_cast<std::size_t>(n) + 1);
    std::vector<std::optional<cplx>> Ks(static_cast<std::size_t>(n) + 1);
    int ok_count = 0;
    double max_abs = 0.0, max_im = 0.0, max_re = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double E = req.e_lo + (req.e_hi - req.e_lo) * i / n;
        Es[static_cast<std::size_t>(i)] = E;
        auto K = k2_at(req.potential, req.l, E);
        Ks[static_cast<std::size_t>(i)] = K;
        if (K) {
            ++ok_count;
            max_abs = std::max(max_abs, std::abs(*K));
            max_im = std::max(max_im, std::abs(K->imag()));
            max_re = std::max(max_re, std::abs(K->real()));
        }
    }
    if (ok_count == 0)
        throw reduction_failed("bound_spectrum: reduction failed across the whole window");

    const bool real_family = (max_im <= 1e-8 * max_abs);
    std::vector<double> roots;

    if (real_family) {
        for (int i = 0; i < n; ++i) {
            const auto &Ka = Ks[static_cast<std::size_t>(i)],
                       &Kb = Ks[static_cast<std::size_t>(i) + 1];
            if (!Ka || !Kb) continue;
            double fa = Ka->real(), fb = Kb->real();
            if (fa == 0.0) {
                roots.push_back(Es[static_cast<std::size_t>(i)]);
                continue;
            }
            if (fa * fb >= 0.0) continue;
            double a = Es[static_cast<std::size_t>(i)], b = Es[static_cast<std::size_t>(i) + 1];
            for (int it = 0; it < 80; ++it) {
                const double m = 0.5 * (a + b);
                const auto Km = k2_at(req.potential, req.l, m);
                if (!Km) break;
                const double fm = Km->real();
                if (fm == 0.0) {
                    a = b = m;
                    break;
                }
                if ((fm < 0.0) == (fa < 0.0)) {
                    a = m;
                    fa = fm;
                } else {
                    b = m;
                }
                if (std::abs(b - a) <=
                    1e-12 * std::max(1e-30, std::abs(a) + std::abs(b)))
                    break;
            }
            roots.push_back(0.5 * (a + b));
        }
    } else {
        // complex-parameter family: accept |K2| minima that drive both parts down
        for (int i = 1; i < n; ++i) {
            const auto &Kp = Ks[static_cast<std::size_t>(i) - 1],
                       &Kc = Ks[static_cast<std::size_t>(i)],
                       &Kn = Ks[static_cast<std::size_t>(i) + 1];
            if (!Kp || !Kc || !Kn) continue;
            if (std::abs(*Kc) > std::abs(*Kp) || std::abs(*Kc) > std::abs(*Kn)) continue;
            double a = Es[static_cast<std::size_t>(i) - 1], b = Es[static_cast<std::size_t>(i) + 1];
            const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
            double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
            auto mag = [&](double E) {
                const auto K = k2_at(req.potential, req.l, E);
                return K ? std::abs(*K) : std::numeric_limits<double>::infinity();
            };
            double f1 = mag(x1), f2 = mag(x2);
            for (int it = 0; it < 120 && (b - a) > 1e-12 * std::max(1e-30, std::abs(a)); ++it) {
                if (f1 < f2) {
                    b = x2;
                    x2 = x1;
                    f2 = f1;
                    x1 = b - gr * (b - a);
                    f1 = mag(x1);
                } else {
                    a = x1;
                    x1 = x2;
                    f1 = f2;
                    x2 = a + gr * (b - a);
                    f2 = mag(x2);
                }
            }
            const double Er = 0.5 * (a + b);
            const auto Kr = k2_at(req.potential, req.l, Er);
            if (!Kr) continue;
            if (std::abs(*Kr) <= 1e-8 * max_abs &&
                std::abs(Kr->real()) <= 1e-8 * std::max(max_re, 1e-300) &&
                std::abs(Kr->imag()) <= 1e-8 * std::max(max_im, 1e-300))
                roots.push_back(Er);
        }
    }

    std::sort(roots.begin(), roots.end());
    // merge duplicates from adjacent brackets
    std::vector<double> uniq;
    for (double r : roots)
        if (uniq.empty() ||
            std::abs(r - uniq.back()) > 1e-9 * std::max(1.0, std::abs(r)))
            uniq.push_back(r);

    if (uniq.empty()) throw none_found("bound_spectrum: no K2 zero in the window");

    std::vector<BoundState> out;
    const double edge = 1e-6 * (req.e_hi - req.e_lo);
    for (std::size_t i = 0; i < uniq.size() && static_cast<int>(i) < req.max_states; ++i) {
        BoundState s;
        s.E = uniq[i];
        s.n_r = static_cast<int>(i);
        const auto K = k2_at(req.potential, req.l, s.E);
        s.k2_residual = K ? std::abs(*K) : std::numeric_limits<double>::quiet_NaN();
        s.at_window_edge =
            (s.E - req.e_lo) < edge || (req.e_hi - s.E) < edge;
        out.push_back(s);
    }
    return out;
}

std::vector<std::pair<double, double>> eigenfunction(const PotentialSpec& u, double l,
                                                     double E,
                                                     const std::vector<double>& grid) {
    const HeunReduction red = reduce_to_heun(u, l, E);
    SeriesControl ctl;
    std::vector<std::pair<double, double>> out;
    out.reserve(grid.size());
    double peak = 0.0;
    for (double r : grid) {
        if (r <= 0.0) throw precondition_violated("eigenfunction: grid points must be positive");
        const cplx z = red.c * std::pow(r, red.p);
        const cplx val = std::exp(-red.peel.gauss_coeff * z * z -
                                  red.peel.linear_coeff * z) *
                         std::pow(z, red.peel.power_s) * heun_regular(red.heun, z, ctl);
        out.emplace_back(r, val.real());
        peak = std::max(peak, std::abs(val.real()));
    }
    if (peak > 0.0)
        for (auto& s : out) s.second /= peak;
    return out;
}

double phase_shift(const PotentialSpec& u, int l, double k) {
    if (k <= 0.0) throw precondition_violated("phase_shift: k must be positive");
    if (u.kind != PotentialKind::Polynomial)
        throw unsupported_family("phase_shift: only negative-power sums are supported");
    for (const auto& t : u.terms)
        if (t.power <= -2.0 || t.power >= 0.0)
            throw unsupported_family(
                "phase_shift: every term must have power strictly between -2 and 0");
    const HeunReduction red = reduce_to_heun(u, static_cast<double>(l), k * k);
    if (std::abs(red.p - 0.5) > 1e-12 ||
        red.energy_role != EnergyRole::AsZ2Coefficient)
        throw unsupported_family("phase_shift: potential is not a p = 1/2 scattering family");
    return -std::arg(k2_match(red.heun));
}

double ho_energy(double xi, int n_r, double l, int n_dims) {
    if (xi <= 0.0) throw precondition_violated("ho_energy: xi must be positive");
    if (n_r < 0) throw precondition_violated("ho_energy: n_r must be nonnegative");
    return 2.0 * std::sqrt(xi) * (2.0 * n_r + l + 0.5 * n_dims);
}

double coulomb_energy(double eta, int n_r, double l, int m_dims,
                      bool squared_denominator) {
    if (eta >= 0.0) throw precondition_violated("coulomb_energy: eta must be negative");
    if (n_r < 0) throw precondition_violated("coulomb_energy: n_r must be nonnegative");
    const double den = n_r + l + 0.5 * m_dims - 0.5;
    return squared_denominator ? -eta * eta / (4.0 * den * den)
                               : -eta * eta / (4.0 * den);
}

}  // namespace nd
