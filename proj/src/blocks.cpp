#include "pseudoherm/blocks.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "pseudoherm/errors.hpp"

namespace pseudoherm::blocks {

namespace {

double coupling(std::size_t n, const ModelParams& p) { return p.rho * std::sqrt(static_cast<double>(n + 1)); }

void require_reality(std::size_t n, const ModelParams& p) {
    if (!reality_condition(n, p)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "reality condition violated on block n=" << n << ": hbar_omega - eps_energy (" << p.hbar_omega - p.eps_energy
            << ") < 2*rho*sqrt(n+1) (" << 2.0 * coupling(n, p) << ")";
        throw DomainError(msg.str(), discriminant(n, p));
    }
}

}  // namespace

CMatrix block_hamiltonian(std::size_t n, const ModelParams& params) {
    params.validate();
    const double nd = static_cast<double>(n);
    const double g = coupling(n, params);
    return CMatrix{{0.5 * params.eps_energy + nd * params.hbar_omega, g},
                   {-g, -0.5 * params.eps_energy + (nd + 1.0) * params.hbar_omega}};
}

double reality_margin(std::size_t n, const ModelParams& params) {
    params.validate();
    return (params.hbar_omega - params.eps_energy) - 2.0 * coupling(n, params);
}

bool reality_condition(std::size_t n, const ModelParams& params) { return reality_margin(n, params) >= 0.0; }

bool is_exceptional_point(std::size_t n, const ModelParams& params, double rel_tol) {
    const double gap = params.hbar_omega - params.eps_energy;
    return gap > 0.0 && std::abs(reality_margin(n, params)) <= rel_tol * gap;
}

double discriminant(std::size_t n, const ModelParams& params) {
    const double gap = params.hbar_omega - params.eps_energy;
    const double g2 = 2.0 * coupling(n, params);
    return (gap - g2) * (gap + g2);
}

EigenvaluePair block_eigenvalues(std::size_t n, const ModelParams& params) {
    require_reality(n, params);
    const double centre = (2.0 * static_cast<double>(n) + 1.0) * params.hbar_omega;
    const double root = std::sqrt(discriminant(n, params));
    return {0.5 * (centre + root), 0.5 * (centre - root)};
}

std::array<Complex, 2> block_eigenvalues_complex(std::size_t n, const ModelParams& params) {
    params.validate();
    const double centre = (2.0 * static_cast<double>(n) + 1.0) * params.hbar_omega;
    const Complex root = std::sqrt(Complex(discriminant(n, params), 0.0));
    return {0.5 * (centre + root), 0.5 * (centre - root)};
}

double alpha_of(std::size_t n, const ModelParams& params) {
    params.validate();
    const double gap = params.hbar_omega - params.eps_energy;
    if (!(gap > 0.0)) {
        throw DomainError("alpha requires hbar_omega > eps_energy", discriminant(n, params));
    }
    require_reality(n, params);
    const double s = 2.0 * coupling(n, params) / gap;
    return std::asin(std::min(s, 1.0));
}

double rho_for_alpha(double alpha, std::size_t n, double hbar_omega, double eps_energy) {
    if (!(alpha >= 0.0 && alpha <= std::numbers::pi / 2)) throw DomainError("alpha must lie in [0, pi/2]");
    if (!(hbar_omega > eps_energy)) throw DomainError("alpha requires hbar_omega > eps_energy");
    return (hbar_omega - eps_energy) * std::sin(alpha) / (2.0 * std::sqrt(static_cast<double>(n + 1)));
}

EigenvectorPair block_eigenvectors(std::size_t n, const ModelParams& params) {
    const double half = 0.5 * alpha_of(n, params);
    EigenvectorPair out;
    out.plus = {std::sin(half), std::cos(half)};
    out.minus = {std::cos(half), std::sin(half)};
    out.coalesced = principal_angle(out.plus, out.minus) < 1e-8;
    return out;
}

EigenvectorPair adjoint_block_eigenvectors(std::size_t n, const ModelParams& params) {
    const double half = 0.5 * alpha_of(n, params);
    EigenvectorPair out;
    out.plus = {std::cos(half), -std::sin(half)};
    out.minus = {-std::sin(half), std::cos(half)};
    out.coalesced = principal_angle(out.plus, out.minus) < 1e-8;
    return out;
}

double coalescence_measure(std::size_t n, const ModelParams& params) {
    const auto v = block_eigenvectors(n, params);
    return principal_angle(v.plus, v.minus);
}

BlockSystem make_block_system(std::size_t n, const ModelParams& params) {
    const auto ev = block_eigenvalues(n, params);
    return {n, params, block_hamiltonian(n, params), alpha_of(n, params), ev.plus, ev.minus};
}

}  // namespace pseudoherm::blocks
