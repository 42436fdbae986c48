#pragma once

#include <cstddef>
#include <span>

#include "pseudoherm/linalg.hpp"
#include "pseudoherm/model.hpp"

namespace pseudoherm::metric {

/// Per-block metric eta = [[1, -sin a], [-sin a, 1]] = I - sin(a) (sigma_+ + sigma_-).
/// Hermitian; eigenvalues 1 +- sin a, so positive definite for a < pi/2 and
/// singular at the exceptional point.
struct MetricOperator {
    double alpha;
    CMatrix matrix;
};

/// Sum of the projectors onto the unit-normalised adjoint eigenvectors,
/// |phi+><phi+| + |phi-><phi-|.
MetricOperator metric_spectral(std::size_t n, const ModelParams& params);

/// Throws DomainError for alpha outside [0, pi/2].
MetricOperator metric_closed_form(double alpha);

struct MetricEigenvalues {
    double upper;  // 1 + sin a
    double lower;  // 1 - sin a
};

MetricEigenvalues metric_eigenvalues(const MetricOperator& eta);

/// u^dagger eta v; antilinear in u.
Complex eta_inner(std::span<const Complex> u, std::span<const Complex> v, const MetricOperator& eta);

/// max |eta H - H^dagger eta| for block n.
double quasi_hermiticity_residual(std::size_t n, const ModelParams& params);

/// v / sqrt(<v|v>_eta). Throws DegenerateNormError when the eta-norm is not
/// positive (relative to the Dirac norm), e.g. v = (1, 1) at alpha = pi/2.
Vec2 eta_normalize(const Vec2& v, const MetricOperator& eta);

/// <v|v>_eta as a real number.
double eta_norm_squared(const Vec2& v, const MetricOperator& eta);

}  // namespace pseudoherm::metric
