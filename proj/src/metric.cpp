#include "pseudoherm/metric.hpp"

#include <cmath>
#include <numbers>

#include "pseudoherm/blocks.hpp"
#include "pseudoherm/errors.hpp"

namespace pseudoherm::metric {

MetricOperator metric_spectral(std::size_t n, const ModelParams& params) {
    const double alpha = blocks::alpha_of(n, params);
    const auto phi = blocks::adjoint_block_eigenvectors(n, params);
    CMatrix eta = CMatrix::outer(phi.plus, phi.plus);
    eta += CMatrix::outer(phi.minus, phi.minus);
    return {alpha, std::move(eta)};
}

MetricOperator metric_closed_form(double alpha) {
    if (!(alpha >= 0.0 && alpha <= std::numbers::pi / 2)) {
        throw DomainError("metric angle must lie in [0, pi/2]");
    }
    const double s = std::sin(alpha);
    return {alpha, CMatrix{{1.0, -s}, {-s, 1.0}}};
}

MetricEigenvalues metric_eigenvalues(const MetricOperator& eta) {
    // Hermitian 2x2: mean +- sqrt(half_gap^2 + |off|^2)
    const auto& m = eta.matrix;
    const double mean = 0.5 * (m(0, 0).real() + m(1, 1).real());
    const double half_gap = 0.5 * (m(0, 0).real() - m(1, 1).real());
    const double r = std::hypot(half_gap, std::abs(m(0, 1)));
    return {mean + r, mean - r};
}

Complex eta_inner(std::span<const Complex> u, std::span<const Complex> v, const MetricOperator& eta) {
    if (u.size() != eta.matrix.rows() || v.size() != eta.matrix.cols()) {
        throw DimensionError("vector length does not match the metric");
    }
    return dirac_inner(u, eta.matrix * v);
}

double quasi_hermiticity_residual(std::size_t n, const ModelParams& params) {
    const auto eta = metric_spectral(n, params);
    const CMatrix h = blocks::block_hamiltonian(n, params);
    return max_abs_diff(eta.matrix * h, h.adjoint() * eta.matrix);
}

double eta_norm_squared(const Vec2& v, const MetricOperator& eta) { return eta_inner(v, v, eta).real(); }

Vec2 eta_normalize(const Vec2& v, const MetricOperator& eta) {
    const double n2 = eta_norm_squared(v, eta);
    const double dirac2 = dirac_inner(v, v).real();
    if (!(n2 > 1e-14 * dirac2)) {
        throw DegenerateNormError("vector has non-positive metric norm (" + std::to_string(n2) + ")");
    }
    const double scale = 1.0 / std::sqrt(n2);
    return {v[0] * scale, v[1] * scale};
}

}  // namespace pseudoherm::metric
