#include "pseudoherm/states.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "pseudoherm/blocks.hpp"
#include "pseudoherm/errors.hpp"

namespace pseudoherm::states {

namespace {

constexpr double inv_sqrt2 = 0.70710678118654752440;

void require_index(int i) {
    if (i < 1 || i > 4) throw std::out_of_range("projector index must be 1..4, got " + std::to_string(i));
}

SectorState state_by_index(int i, const ThetaEps& te) {
    require_index(i);
    const auto [p1, p2] = make_psi_pair_12(te);
    const auto [p3, p4] = make_psi_pair_34(te);
    switch (i) {
        case 1: return p1;
        case 2: return p2;
        case 3: return p3;
        default: return p4;
    }
}

double image_norm(const CMatrix& p, const SectorState& s) { return dirac_norm(p * s.vec()); }

ProjectorSetSummary summarize(const std::array<CMatrix, 4>& p) {
    const CMatrix id = CMatrix::identity(2);
    ProjectorSetSummary out{};
    out.pair_12_minus_identity = max_abs_diff(p[0] + p[1], id);
    out.pair_34_minus_identity = max_abs_diff(p[2] + p[3], id);
    out.sum_minus_double_identity = max_abs_diff(p[0] + p[1] + p[2] + p[3], 2.0 * id);
    out.p1_minus_p4 = max_abs_diff(p[0], p[3]);
    out.p2_minus_p3 = max_abs_diff(p[1], p[2]);
    out.max_idempotency = 0.0;
    for (const auto& pi : p) out.max_idempotency = std::max(out.max_idempotency, max_abs_diff(pi * pi, pi));
    return out;
}

}  // namespace

ThetaEps ThetaEps::from_eps(double eps_state) { return {std::numbers::pi / 2 - eps_state, eps_state}; }

std::pair<SectorState, SectorState> make_psi_pair_12(const ThetaEps& te) {
    const double h = 0.5 * te.theta;
    return {{std::cos(h), std::sin(h)}, {std::cos(h + te.eps_state), std::sin(h + te.eps_state)}};
}

std::pair<SectorState, SectorState> make_psi_pair_34(const ThetaEps& te) {
    const double h = 0.5 * te.theta;
    return {{std::sin(h), std::cos(h)}, {std::sin(h - te.eps_state), std::cos(h - te.eps_state)}};
}

EntangledState4 embed_4d(const SectorState& s) {
    const Complex a = s.c_a * inv_sqrt2;
    const Complex b = s.c_b * inv_sqrt2;
    return {{a, a, b, b}};
}

SectorState to_sector(const EntangledState4& s) {
    const auto& x = s.amplitudes;
    return {(x[0] + x[1]) * inv_sqrt2, (x[2] + x[3]) * inv_sqrt2};
}

CMatrix embedding_isometry() {
    return CMatrix{{inv_sqrt2, 0.0}, {inv_sqrt2, 0.0}, {0.0, inv_sqrt2}, {0.0, inv_sqrt2}};
}

CMatrix lift_to_4d(const CMatrix& sector_operator) {
    const CMatrix e = embedding_isometry();
    return e * sector_operator * e.adjoint();
}

double discrimination_alpha(double eps_state) {
    if (!(eps_state > 0.0 && eps_state <= std::numbers::pi / 2)) {
        throw DomainError("state separation eps must lie in (0, pi/2]");
    }
    return std::asin(std::cos(eps_state));
}

bool realizes_alpha(std::size_t n, const ModelParams& params, double alpha, double tol) {
    if (!blocks::reality_condition(n, params) || !(params.hbar_omega > params.eps_energy)) return false;
    return std::abs(blocks::alpha_of(n, params) - alpha) <= tol;
}

OverlapReport eta_overlap(const SectorState& u, const SectorState& v, const metric::MetricOperator& eta) {
    const Vec2 uv = u.vec();
    const Vec2 vv = v.vec();
    OverlapReport out{};
    out.raw = metric::eta_inner(uv, vv, eta);
    const double nu2 = metric::eta_norm_squared(uv, eta);
    const double nv2 = metric::eta_norm_squared(vv, eta);
    if (!(nu2 > 0.0) || !(nv2 > 0.0)) throw DegenerateNormError("state is null under the metric");
    out.norm_u = std::sqrt(nu2);
    out.norm_v = std::sqrt(nv2);
    out.normalized = out.raw / (out.norm_u * out.norm_v);
    return out;
}

OverlapReport eta_overlap_12(const ThetaEps& te, const metric::MetricOperator& eta) {
    const auto [p1, p2] = make_psi_pair_12(te);
    return eta_overlap(p1, p2, eta);
}

OverlapReport eta_overlap_34(const ThetaEps& te, const metric::MetricOperator& eta) {
    const auto [p3, p4] = make_psi_pair_34(te);
    return eta_overlap(p3, p4, eta);
}

Vec2 eta_bra(const SectorState& s, const metric::MetricOperator& eta) {
    const Vec2 v = s.vec();
    const double n2 = metric::eta_norm_squared(v, eta);
    if (!(n2 > 1e-14 * dirac_inner(v, v).real())) {
        throw DegenerateNormError("cannot form the dual of a null vector");
    }
    const Vec2 ev = eta.matrix * v;
    const double scale = 1.0 / std::sqrt(n2);
    return {std::conj(ev[0]) * scale, std::conj(ev[1]) * scale};
}

Vec4 eta_bra_4d(const SectorState& s, const metric::MetricOperator& eta) {
    const Vec2 b = eta_bra(s, eta);
    const Complex a = b[0] * inv_sqrt2;
    const Complex c = b[1] * inv_sqrt2;
    return {a, a, c, c};
}

Vec4 explicit_bra_12(int which, double eps) {
    if (which != 1 && which != 2) throw std::out_of_range("explicit bra exists for psi1 and psi2 only");
    const double pre = 1.0 / (std::sqrt(2.0) * std::sin(eps));
    const double ce = std::cos(eps);
    double coef_a = 0.0;
    double coef_b = 0.0;
    if (which == 1) {
        const double x = (std::numbers::pi - 2.0 * eps) / 4.0;
        coef_a = pre * (std::cos(x) - std::sin(x) * ce);
        coef_b = pre * (std::sin(x) - std::cos(x) * ce);
    } else {
        const double x = (std::numbers::pi + 2.0 * eps) / 4.0;
        coef_a = pre * (std::sin(x) - std::cos(x) * ce);
        coef_b = pre * (std::cos(x) - std::sin(x) * ce);
    }
    return {coef_a, coef_a, coef_b, coef_b};
}

CMatrix projector(int i, const ThetaEps& te, const metric::MetricOperator& eta) {
    const SectorState s = state_by_index(i, te);
    const Vec2 ket = metric::eta_normalize(s.vec(), eta);
    const Vec2 bra = eta_bra(s, eta);
    CMatrix p(2, 2);
    for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 2; ++c) p(r, c) = ket[r] * bra[c];
    return p;
}

AbcdOperators abcd_operators() {
    // ordered basis: 0 = |0,up>, 1 = |1,down>, 2 = |0,down>, 3 = |1,up>
    CMatrix a(4, 4), b(4, 4), c(4, 4), d(4, 4);
    for (std::size_t r = 0; r < 2; ++r) {
        for (std::size_t k = 0; k < 2; ++k) {
            a(r, k) = 1.0;
            b(2 + r, 2 + k) = 1.0;
            c(r, 2 + k) = 1.0;
            d(2 + r, k) = 1.0;
        }
    }
    return {std::move(a), std::move(b), std::move(c), std::move(d)};
}

CMatrix tabulated_projector_4d(int i, double eps) {
    require_index(i);
    const double s = std::sin(eps);
    const double c = std::cos(eps);
    const auto ops = abcd_operators();
    const bool first_kind = (i == 1 || i == 4);
    CMatrix p = first_kind ? (1.0 + s) * ops.a + (s - 1.0) * ops.b - c * ops.c + c * ops.d
                           : (s - 1.0) * ops.a + (s + 1.0) * ops.b + c * ops.c - c * ops.d;
    p *= 1.0 / (4.0 * s);
    return p;
}

CMatrix tabulated_projector(int i, double eps) {
    const CMatrix e = embedding_isometry();
    return e.adjoint() * tabulated_projector_4d(i, eps) * e;
}

CompletenessReport completeness_report(double eps_state) {
    const ThetaEps te = ThetaEps::from_eps(eps_state);
    const double alpha = discrimination_alpha(eps_state);
    const auto eta = metric::metric_closed_form(alpha);

    std::array<CMatrix, 4> from_states;
    std::array<CMatrix, 4> tabulated;
    for (int i = 1; i <= 4; ++i) {
        from_states[i - 1] = projector(i, te, eta);
        tabulated[i - 1] = tabulated_projector(i, eps_state);
    }

    const auto [p1, p2] = make_psi_pair_12(te);
    const auto [p3, p4] = make_psi_pair_34(te);

    CompletenessReport out{};
    out.eps_state = eps_state;
    out.alpha = alpha;
    out.from_states = summarize(from_states);
    out.tabulated = summarize(tabulated);
    out.tabulated_vs_states_12 =
        std::max(max_abs_diff(tabulated[0], from_states[0]), max_abs_diff(tabulated[1], from_states[1]));
    out.p1_on_psi2 = image_norm(from_states[0], p2);
    out.p2_on_psi1 = image_norm(from_states[1], p1);
    out.p3_on_psi4 = image_norm(from_states[2], p4);
    out.p4_on_psi3 = image_norm(from_states[3], p3);
    out.tabulated_p4_on_psi3 = image_norm(tabulated[3], p3);
    out.tabulated_p4_on_psi4 = image_norm(tabulated[3], p4);
    return out;
}

}  // namespace pseudoherm::states
