#pragma once

#include <optional>
#include <span>
#include <vector>

#include "pseudoherm/linalg.hpp"
#include "pseudoherm/model.hpp"
#include "pseudoherm/states.hpp"

// Discrimination by non-unitary evolution in the two-level sector of block 0.
//
// The states evolve with exp(-iHt) and are compared with the plain Dirac
// product, so the overlap at time t is psi1^dagger G(t) psi2 with the Gram
// kernel G(t) = exp(iH^dagger t) exp(-iHt). Writing
// H = hw/2 I + sigma . (0, i rho, (eps - hw)/2), beta^2 = (eps - hw)^2/4 - rho^2
// and b = beta, one finds
//   cos^2 a G(t) = [cos^2 bt cos^2 a + sin^2 bt (1 + sin^2 a)] I
//                  + sin 2bt sin a cos a sigma_y - 2 sin^2 bt sin a sigma_x.
//
// For the pair psi1, psi2 the overlap is therefore complex,
//   Re = cos eps + 2 sin^2 bt sin a (sin a cos eps - 1) / cos^2 a,
//   Im = -sin 2bt tan a sin eps,
// and vanishes only where both parts do: at bt = pi/2 (mod pi) on the curve
// sin a = (1 - sin eps) / cos eps.
namespace pseudoherm::evolution {

struct EffectiveHamiltonian {
    ModelParams params;
    CMatrix h;
    double alpha;  // metric angle of block 0
    double beta;   // (hw - eps) cos(alpha) / 2, an inverse time
};

/// Throws DomainError outside the reality domain of block 0.
EffectiveHamiltonian effective_hamiltonian(const ModelParams& params);

/// G(t) = exp_2x2(H^dagger, it) exp_2x2(H, -it). Hermitian, positive definite
/// below the exceptional point, G(0) = I.
CMatrix gram_kernel(double t, const ModelParams& params);

/// The tabulated closed form of cos^2(a) G(t) as printed, including its
/// off-diagonal sin 2bt sin a (-+ i cos a - sin bt).
CMatrix tabulated_scaled_kernel(double t, double alpha, double beta);

struct KernelResidual {
    double diagonal;
    double off_diagonal;
};

/// Entrywise comparison of cos^2(a) G(t) with tabulated_scaled_kernel. The
/// diagonal agrees to rounding; the off-diagonal differs by
/// 2 sin^2 bt sin a (1 - cos bt).
KernelResidual kernel_residual(double t, const ModelParams& params);

/// psi1^dagger G(t) psi2 for the pair built from `te`.
Complex overlap_at(double t, const states::ThetaEps& te, const ModelParams& params);

struct EvolutionTrace {
    std::vector<double> times;
    std::vector<Complex> overlaps;
    std::optional<double> t_star;
    double alpha;
    double eps_state;
};

/// Samples the overlap on `t_grid`. t_star is left empty; use
/// find_orthogonality_time to fill it.
EvolutionTrace overlap_trajectory(const states::ThetaEps& te, const ModelParams& params,
                                  std::span<const double> t_grid);

struct OrthogonalitySearch {
    /// Earliest t in (0, t_max] with |overlap| <= 1e-10.
    std::optional<double> t_star;
    double abs_overlap_at_t_star = 0.0;
    /// Smallest |overlap| seen on the sampling grid, and where.
    double min_abs_overlap = 0.0;
    double t_at_min = 0.0;
    /// First sign change of Re(overlap) and |overlap| there. A zero of the real
    /// part alone is not orthogonality.
    std::optional<double> first_real_zero;
    double abs_overlap_at_real_zero = 0.0;
    std::size_t samples = 0;
};

/// Scans (0, t_max] at 64 samples per half period pi/beta (at least 1024),
/// brackets every sign change of the real and of the imaginary part, refines
/// by bisection to 1e-12 t_max and accepts a bracketed point as orthogonal
/// when |overlap| <= 1e-10 there. Throws std::invalid_argument for t_max <= 0.
OrthogonalitySearch search_orthogonality(const states::ThetaEps& te, const ModelParams& params, double t_max);

/// search_orthogonality(...).t_star.
std::optional<double> find_orthogonality_time(const states::ThetaEps& te, const ModelParams& params,
                                              double t_max);

/// Zero set of Re(overlap) for theta = pi/2 - eps:
///   sin^2 bt = cos^2 a cos eps / (2 sin a (1 - sin a cos eps)).
/// A time exists when the value is in [0, 1].
double real_part_zero_sin2(double alpha, double eps_state);

/// The one metric angle at which the pair becomes exactly orthogonal (at
/// bt = pi/2): sin a = (1 - sin eps) / cos eps.
double exact_orthogonality_alpha(double eps_state);

/// The tabulated orthogonality condition for sin^2(bt), evaluated verbatim. Its
/// printed form has a "cos eps sin" factor with no argument; it is read as
/// cos eps sin a, the same factor that appears in the denominator.
struct TabulatedCondition {
    double numerator_polynomial;  // the part outside the square root
    double radicand;
    double denominator;
    /// Real value of sin^2(bt) when the radicand is non-negative and the
    /// denominator is not singular.
    std::optional<double> sin2_beta_t;
    bool singular = false;
    /// 0 <= sin2_beta_t <= 1, i.e. it corresponds to an actual time.
    bool admissible = false;
};

/// Requires 0 < alpha < pi/2; throws DomainError otherwise.
TabulatedCondition tabulated_orthogonality_condition(double alpha, double eps_state);

/// A family of models with fixed hw and eps_energy; rho is chosen per alpha on
/// block 0.
struct ParamsFamily {
    double hbar_omega = 1.0;
    double eps_energy = 0.0;
    /// Search window in periods 2 pi / beta.
    double periods = 50.0;

    ModelParams at_alpha(double alpha) const;
};

struct ScanRow {
    double eps_state;
    double alpha;
    std::optional<double> t_star;
    std::optional<double> beta_t_star;
    std::optional<double> sin2_beta_t_star;
    bool divergent;
    /// Diagnostics; empty at alpha = pi/2 where the window is unbounded.
    std::optional<double> min_abs_overlap;
    std::optional<double> real_zero_beta_t;
};

/// One row per (eps, alpha), ordered by eps then alpha in input order. A row is
/// divergent when no orthogonality time exists within `periods` periods, and
/// always at beta = 0.
std::vector<ScanRow> scan_alpha(std::span<const double> eps_list, std::span<const double> alpha_grid,
                                const ParamsFamily& family);

}  // namespace pseudoherm::evolution
