#pragma once

#include <array>
#include <cstddef>

#include "pseudoherm/linalg.hpp"
#include "pseudoherm/model.hpp"

// Two-level invariant subspaces span{|n, up>, |n+1, down>} of the full model.
//
// On block n the Hamiltonian is
//   [[ eps/2 + n hw,        rho sqrt(n+1)     ],
//    [ -rho sqrt(n+1),      -eps/2 + (n+1) hw ]]
// and with (hw - eps) sin(alpha) = 2 rho sqrt(n+1) its eigenvalues are
//   (2n+1) hw / 2 +- (hw - eps) cos(alpha) / 2.
// alpha depends on n: always ask for the alpha of a specific block.
namespace pseudoherm::blocks {

CMatrix block_hamiltonian(std::size_t n, const ModelParams& params);

/// (hw - eps) - 2 rho sqrt(n+1). Non-negative exactly in the reality domain,
/// zero at the exceptional point.
double reality_margin(std::size_t n, const ModelParams& params);

/// (hw - eps) >= 2 rho sqrt(n+1); the boundary is admitted.
bool reality_condition(std::size_t n, const ModelParams& params);

/// True when the margin vanishes to `rel_tol` relative to (hw - eps).
bool is_exceptional_point(std::size_t n, const ModelParams& params, double rel_tol = 1e-12);

/// (hw - eps)^2 - 4 rho^2 (n+1), evaluated in factored form, which stays
/// accurate next to the exceptional point.
double discriminant(std::size_t n, const ModelParams& params);

struct EigenvaluePair {
    double plus;
    double minus;
};

/// Throws DomainError (carrying the discriminant) outside the reality domain.
EigenvaluePair block_eigenvalues(std::size_t n, const ModelParams& params);

/// Closed-form pair valid in either regime; complex conjugates when broken.
std::array<Complex, 2> block_eigenvalues_complex(std::size_t n, const ModelParams& params);

/// arcsin(2 rho sqrt(n+1) / (hw - eps)) in [0, pi/2].
double alpha_of(std::size_t n, const ModelParams& params);

/// The coupling that realises `alpha` on block n for fixed hw and eps.
double rho_for_alpha(double alpha, std::size_t n, double hbar_omega, double eps_energy);

struct EigenvectorPair {
    Vec2 plus;
    Vec2 minus;
    bool coalesced = false;  // set at alpha = pi/2, where plus == minus
};

/// psi+ = (sin a/2, cos a/2), psi- = (cos a/2, sin a/2); unit Dirac norm,
/// real, no rephasing. H psi+- = lambda+- psi+-.
EigenvectorPair block_eigenvectors(std::size_t n, const ModelParams& params);

/// Eigenvectors of the adjoint block, i.e. of the block with rho -> -rho:
/// phi+ = (cos a/2, -sin a/2), phi- = (-sin a/2, cos a/2).
/// The labels follow the metric construction, not the eigenvalues:
/// H^dagger phi+ = lambda- phi+ and H^dagger phi- = lambda+ phi-, so the
/// biorthogonal partners are (phi+, psi-) and (phi-, psi+).
EigenvectorPair adjoint_block_eigenvectors(std::size_t n, const ModelParams& params);

/// Principal angle between psi+ and psi-; equals pi/2 - alpha, 0 at the
/// exceptional point.
double coalescence_measure(std::size_t n, const ModelParams& params);

struct BlockSystem {
    std::size_t n;
    ModelParams params;
    CMatrix h;
    double alpha;
    double lambda_plus;
    double lambda_minus;
};

BlockSystem make_block_system(std::size_t n, const ModelParams& params);

}  // namespace pseudoherm::blocks
