#pragma once

#include <array>
#include <utility>

#include "pseudoherm/linalg.hpp"
#include "pseudoherm/metric.hpp"

// The four entangled states live in the two-dimensional sector space spanned by
//   e_A = (|0,up> + |1,down>) / sqrt2,   e_B = (|0,down> + |1,up>) / sqrt2.
// The metric and the projectors act on sector coefficients. The explicit
// four-ket form is available through embed_4d, over the ordered basis
//   (|0,up>, |1,down>, |0,down>, |1,up>).
namespace pseudoherm::states {

struct SectorState {
    Complex c_a{};
    Complex c_b{};

    Vec2 vec() const noexcept { return {c_a, c_b}; }
    static SectorState from(const Vec2& v) noexcept { return {v[0], v[1]}; }
};

using Vec4 = std::array<Complex, 4>;

struct EntangledState4 {
    Vec4 amplitudes{};
};

/// theta and the small state separation eps_state (radians).
struct ThetaEps {
    double theta;
    double eps_state;

    /// The convention theta = pi/2 - eps used throughout the discrimination
    /// results.
    static ThetaEps from_eps(double eps_state);
    /// eps_state above 0.3 is outside the near-identical regime.
    bool outside_small_eps_regime() const noexcept { return eps_state > 0.3; }
};

/// psi1 = (cos th/2, sin th/2), psi2 = (cos(th/2 + eps), sin(th/2 + eps)).
std::pair<SectorState, SectorState> make_psi_pair_12(const ThetaEps& te);

/// psi3 = (sin th/2, cos th/2), psi4 = (sin(th/2 - eps), cos(th/2 - eps)).
/// With theta = pi/2 - eps, psi3 coincides with psi2.
std::pair<SectorState, SectorState> make_psi_pair_34(const ThetaEps& te);

EntangledState4 embed_4d(const SectorState& s);
/// Inverse of embed_4d on its range (averages each ket pair).
SectorState to_sector(const EntangledState4& s);
/// The 4x2 isometry E with embed_4d(s) = E s.
CMatrix embedding_isometry();
/// E P E^dagger.
CMatrix lift_to_4d(const CMatrix& sector_operator);

/// alpha = arcsin(cos eps): the metric angle that makes psi1, psi2
/// orthogonal. Accepts 0 < eps <= pi/2 (alpha -> 0 at the upper end) and
/// throws DomainError otherwise.
double discrimination_alpha(double eps_state);

/// Whether block n of `params` realises `alpha` to `tol`.
bool realizes_alpha(std::size_t n, const ModelParams& params, double alpha, double tol = 1e-12);

struct OverlapReport {
    Complex raw;         // <u|v>_eta
    Complex normalized;  // <u|v>_eta / (|u|_eta |v|_eta)
    double norm_u;       // |u|_eta
    double norm_v;
};

/// Metric overlap of any two sector states. Throws DegenerateNormError when
/// either state is null under eta.
OverlapReport eta_overlap(const SectorState& u, const SectorState& v, const metric::MetricOperator& eta);

/// Vanishes at sin a = cos eps; equals cos eps - sin a for theta = pi/2 - eps.
OverlapReport eta_overlap_12(const ThetaEps& te, const metric::MetricOperator& eta);

/// cos eps - sin a cos 2eps for theta = pi/2 - eps; at sin a = cos eps it is
/// 2 cos eps sin^2 eps, not zero.
OverlapReport eta_overlap_34(const ThetaEps& te, const metric::MetricOperator& eta);

/// Dual of the eta-normalised state, (eta s)^dagger / sqrt(s^dagger eta s),
/// returned as the row of coefficients. It pairs to 1 with eta_normalize(s)
/// and to 0 with any eta-orthogonal state.
Vec2 eta_bra(const SectorState& s, const metric::MetricOperator& eta);

/// The same covector over the four-ket basis. The 1/sqrt2 of the embedding
/// appears explicitly: each sector coefficient is split over its two kets.
Vec4 eta_bra_4d(const SectorState& s, const metric::MetricOperator& eta);

/// The tabulated bras of psi1 (which == 1) and psi2 (which == 2) at
/// sin a = cos eps, from their trigonometric coefficients with the
/// 1/(sqrt2 sin eps) prefactor, as printed. The psi1 row equals
/// eta_bra_4d(psi1). The psi2 row comes out identical to the psi1 row; the
/// actual dual of psi2 has the two sector coefficients exchanged.
Vec4 explicit_bra_12(int which, double eps_state);

/// P_i = |s_i><s_i|_eta = s (eta s)^dagger / (s^dagger eta s), i in 1..4,
/// built from the states themselves. Rank one and idempotent for any eta with
/// non-degenerate norms.
CMatrix projector(int i, const ThetaEps& te, const metric::MetricOperator& eta);

/// A, B, C, D over the ordered four-ket basis:
///   A = 2|e_A><e_A|, B = 2|e_B><e_B|, C = 2|e_A><e_B|, D = 2|e_B><e_A| = C^dagger.
struct AbcdOperators {
    CMatrix a, b, c, d;
};
AbcdOperators abcd_operators();

/// The tabulated projector formulas written over A..D,
///   P1 = P4 = [(1+s)A + (s-1)B - cC + cD] / (4s),
///   P2 = P3 = [(s-1)A + (s+1)B + cC - cD] / (4s),   s = sin eps, c = cos eps.
/// Returns the 4x4 operator.
CMatrix tabulated_projector_4d(int i, double eps_state);
/// The same restricted to the sector space (2x2).
CMatrix tabulated_projector(int i, double eps_state);

struct ProjectorSetSummary {
    double pair_12_minus_identity;  // max|P1 + P2 - I|
    double pair_34_minus_identity;  // max|P3 + P4 - I|
    double sum_minus_double_identity;  // max|P1 + P2 + P3 + P4 - 2I|
    double p1_minus_p4;
    double p2_minus_p3;
    double max_idempotency;  // max_i max|P_i^2 - P_i|
};

struct CompletenessReport {
    double eps_state;
    double alpha;
    /// Projectors built from the four states.
    ProjectorSetSummary from_states;
    /// Projectors from the tabulated coefficient formulas.
    ProjectorSetSummary tabulated;
    /// max|tabulated P_i - state P_i| for i = 1, 2.
    double tabulated_vs_states_12;
    /// |P1 psi2|, |P2 psi1|, |P3 psi4|, |P4 psi3| with the state projectors
    /// (Dirac norms of the images).
    double p1_on_psi2;
    double p2_on_psi1;
    double p3_on_psi4;
    double p4_on_psi3;
    /// Tabulated P4 (= P1) annihilates psi3 but not psi4.
    double tabulated_p4_on_psi3;
    double tabulated_p4_on_psi4;
};

/// Evaluated at theta = pi/2 - eps with sin a = cos eps.
CompletenessReport completeness_report(double eps_state);

}  // namespace pseudoherm::states
