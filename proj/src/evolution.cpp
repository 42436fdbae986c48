#include "pseudoherm/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/tools/roots.hpp>

#include "pseudoherm/blocks.hpp"
#include "pseudoherm/errors.hpp"

namespace pseudoherm::evolution {

namespace {

constexpr double orthogonality_tol = 1e-10;

// Everything needed to evaluate the overlap repeatedly.
struct OverlapKernel {
    CMatrix h;
    CMatrix h_adj;
    Vec2 psi1;
    Vec2 psi2;

    OverlapKernel(const states::ThetaEps& te, const ModelParams& params)
        : h(effective_hamiltonian(params).h), h_adj(h.adjoint()) {
        const auto [a, b] = states::make_psi_pair_12(te);
        psi1 = a.vec();
        psi2 = b.vec();
    }

    Complex operator()(double t) const {
        const CMatrix g = exp_2x2(h_adj, Complex(0.0, t)) * exp_2x2(h, Complex(0.0, -t));
        return dirac_inner(psi1, g * psi2);
    }
};

}  // namespace

EffectiveHamiltonian effective_hamiltonian(const ModelParams& params) {
    const double alpha = blocks::alpha_of(0, params);  // throws in the broken regime
    const double beta = 0.5 * std::sqrt(std::max(blocks::discriminant(0, params), 0.0));
    return {params, blocks::block_hamiltonian(0, params), alpha, beta};
}

CMatrix gram_kernel(double t, const ModelParams& params) {
    const auto eff = effective_hamiltonian(params);
    return exp_2x2(eff.h.adjoint(), Complex(0.0, t)) * exp_2x2(eff.h, Complex(0.0, -t));
}

CMatrix tabulated_scaled_kernel(double t, double alpha, double beta) {
    const double bt = beta * t;
    const double ca = std::cos(alpha);
    const double sa = std::sin(alpha);
    const double sb = std::sin(bt);
    const double cb = std::cos(bt);
    const double diag = cb * cb * ca * ca + sb * sb * (1.0 + sa * sa);
    const double pre = std::sin(2.0 * bt) * sa;
    return CMatrix{{diag, pre * Complex(-sb, -ca)}, {pre * Complex(-sb, ca), diag}};
}

KernelResidual kernel_residual(double t, const ModelParams& params) {
    const auto eff = effective_hamiltonian(params);
    const double c = std::cos(eff.alpha);
    const CMatrix scaled = (c * c) * gram_kernel(t, params);
    const CMatrix printed = tabulated_scaled_kernel(t, eff.alpha, eff.beta);
    KernelResidual r{0.0, 0.0};
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            const double d = std::abs(scaled(i, j) - printed(i, j));
            if (i == j) {
                r.diagonal = std::max(r.diagonal, d);
            } else {
                r.off_diagonal = std::max(r.off_diagonal, d);
            }
        }
    }
    return r;
}

Complex overlap_at(double t, const states::ThetaEps& te, const ModelParams& params) {
    return OverlapKernel(te, params)(t);
}

EvolutionTrace overlap_trajectory(const states::ThetaEps& te, const ModelParams& params,
                                  std::span<const double> t_grid) {
    const OverlapKernel kernel(te, params);
    EvolutionTrace trace;
    trace.alpha = blocks::alpha_of(0, params);
    trace.eps_state = te.eps_state;
    trace.times.assign(t_grid.begin(), t_grid.end());
    trace.overlaps.reserve(t_grid.size());
    for (double t : t_grid) trace.overlaps.push_back(kernel(t));
    return trace;
}

OrthogonalitySearch search_orthogonality(const states::ThetaEps& te, const ModelParams& params, double t_max) {
    if (!(t_max > 0.0) || !std::isfinite(t_max)) throw std::invalid_argument("t_max must be positive and finite");
    const OverlapKernel kernel(te, params);
    const double beta = effective_hamiltonian(params).beta;

    std::size_t samples = 4096;
    if (beta > 0.0) {
        const double half_periods = t_max * beta / std::numbers::pi;
        samples = static_cast<std::size_t>(std::clamp(std::ceil(half_periods * 64.0), 1024.0, 5.0e6));
    }
    const double resolution = 1e-12 * t_max;
    auto width_ok = [resolution](double a, double b) { return std::abs(b - a) <= resolution; };
    auto refine = [&](auto part, double lo, double hi) {
        const auto [a, b] = boost::math::tools::bisect([&](double t) { return part(kernel(t)); }, lo, hi, width_ok);
        return 0.5 * (a + b);
    };
    auto re = [](Complex z) { return z.real(); };
    auto im = [](Complex z) { return z.imag(); };
    auto crosses = [](double a, double b) { return (a < 0.0 && b > 0.0) || (a > 0.0 && b < 0.0); };

    OrthogonalitySearch out;
    out.samples = samples;
    Complex prev = kernel(0.0);
    out.min_abs_overlap = std::abs(prev);
    out.t_at_min = 0.0;
    double t_prev = 0.0;

    for (std::size_t k = 1; k <= samples; ++k) {
        const double t = t_max * static_cast<double>(k) / static_cast<double>(samples);
        const Complex cur = kernel(t);
        if (std::abs(cur) < out.min_abs_overlap) {
            out.min_abs_overlap = std::abs(cur);
            out.t_at_min = t;
        }

        std::optional<double> best;
        auto consider = [&](double tc) {
            const double mag = std::abs(kernel(tc));
            if (mag <= orthogonality_tol && (!best || tc < *best)) {
                best = tc;
                out.abs_overlap_at_t_star = mag;
            }
        };

        if (crosses(prev.real(), cur.real())) {
            const double tr = refine(re, t_prev, t);
            if (!out.first_real_zero) {
                out.first_real_zero = tr;
                out.abs_overlap_at_real_zero = std::abs(kernel(tr));
            }
            consider(tr);
        }
        if (crosses(prev.imag(), cur.imag())) consider(refine(im, t_prev, t));
        if (cur.real() == 0.0 || cur.imag() == 0.0) consider(t);

        if (best) {
            out.t_star = best;
            return out;
        }
        prev = cur;
        t_prev = t;
    }
    return out;
}

std::optional<double> find_orthogonality_time(const states::ThetaEps& te, const ModelParams& params,
                                              double t_max) {
    return search_orthogonality(te, params, t_max).t_star;
}

double real_part_zero_sin2(double alpha, double eps_state) {
    const double ca = std::cos(alpha);
    const double sa = std::sin(alpha);
    const double ce = std::cos(eps_state);
    return ca * ca * ce / (2.0 * sa * (1.0 - sa * ce));
}

double exact_orthogonality_alpha(double eps_state) {
    return std::asin((1.0 - std::sin(eps_state)) / std::cos(eps_state));
}

TabulatedCondition tabulated_orthogonality_condition(double alpha, double eps) {
    if (!(alpha > 0.0 && alpha < std::numbers::pi / 2)) {
        throw DomainError("tabulated condition is defined for 0 < alpha < pi/2 only");
    }
    const double ca = std::cos(alpha);
    const double sa = std::sin(alpha);
    const double c2a = std::cos(2.0 * alpha);
    const double ce = std::cos(eps);
    const double c2e = std::cos(2.0 * eps);
    const double cot = ca / sa;

    const double shared = (c2a + ce * sa) * (c2a + ce * sa) - 4.0 * ca * ca * sa;
    const double bracket = (c2e + 4.0 * sa - 1.0) * std::pow(std::sin(2.0 * alpha), 2) +
                           2.0 * ca * ca * ce * (3.0 * std::sin(3.0 * alpha) - 5.0 * sa);

    TabulatedCondition out;
    out.numerator_polynomial = -4.0 * ca * ((1.0 - 3.0 * c2a) * ce * cot + (1.0 - c2e - 4.0 * sa) * ca);
    out.radicand = -4.0 * std::pow(ca, 4) * sa * sa * std::pow(ce - sa, 2) * shared + bracket * bracket / 16.0;
    out.denominator = 2.0 * shared;
    out.singular = std::abs(out.denominator) < 1e-12;
    if (!out.singular && out.radicand >= 0.0) {
        out.sin2_beta_t = (out.numerator_polynomial + std::sqrt(out.radicand)) / out.denominator;
        out.admissible = *out.sin2_beta_t >= 0.0 && *out.sin2_beta_t <= 1.0;
    }
    return out;
}

ModelParams ParamsFamily::at_alpha(double alpha) const {
    return {eps_energy, hbar_omega, blocks::rho_for_alpha(alpha, 0, hbar_omega, eps_energy)};
}

std::vector<ScanRow> scan_alpha(std::span<const double> eps_list, std::span<const double> alpha_grid,
                                const ParamsFamily& family) {
    std::vector<ScanRow> rows;
    rows.reserve(eps_list.size() * alpha_grid.size());
    for (double eps : eps_list) {
        const auto te = states::ThetaEps::from_eps(eps);
        for (double alpha : alpha_grid) {
            ScanRow row{eps, alpha, std::nullopt, std::nullopt, std::nullopt, true, std::nullopt, std::nullopt};
            const ModelParams params = family.at_alpha(alpha);
            const double beta = effective_hamiltonian(params).beta;
            const double t_max = family.periods * 2.0 * std::numbers::pi / beta;
            if (beta > 0.0 && std::isfinite(t_max)) {
                const auto found = search_orthogonality(te, params, t_max);
                row.min_abs_overlap = found.min_abs_overlap;
                if (found.first_real_zero) row.real_zero_beta_t = beta * *found.first_real_zero;
                if (found.t_star) {
                    const double bt = beta * *found.t_star;
                    row.t_star = found.t_star;
                    row.beta_t_star = bt;
                    row.sin2_beta_t_star = std::sin(bt) * std::sin(bt);
                    row.divergent = false;
                }
            }
            rows.push_back(row);
        }
    }
    return rows;
}

}  // namespace pseudoherm::evolution
