#include "pseudoherm/fockspace.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "pseudoherm/blocks.hpp"
#include "pseudoherm/errors.hpp"
#include "pseudoherm/metric.hpp"

namespace pseudoherm {

void ModelParams::validate() const {
    if (!std::isfinite(eps_energy) || !std::isfinite(hbar_omega) || !std::isfinite(rho)) {
        throw std::invalid_argument("model parameters must be finite");
    }
    if (!(hbar_omega > 0.0)) throw std::invalid_argument("hbar_omega must be positive");
    if (rho < 0.0) throw std::invalid_argument("rho must be non-negative");
}

}  // namespace pseudoherm

namespace pseudoherm::fock {

FockSpinBasis::FockSpinBasis(std::size_t n_max) : n_max_(n_max) {}

std::size_t FockSpinBasis::index(std::size_t n, Spin spin) const {
    if (n > n_max_) {
        throw DimensionError("Fock level " + std::to_string(n) + " exceeds cutoff " + std::to_string(n_max_));
    }
    return 2 * n + (spin == Spin::up ? 0 : 1);
}

BasisState FockSpinBasis::state(std::size_t index) const {
    if (index >= dimension()) throw DimensionError("basis index out of range");
    return {index / 2, index % 2 == 0 ? Spin::up : Spin::down};
}

std::vector<BasisState> FockSpinBasis::ordering() const {
    std::vector<BasisState> out;
    out.reserve(dimension());
    for (std::size_t i = 0; i < dimension(); ++i) out.push_back(state(i));
    return out;
}

CVector FockSpinBasis::ket(std::size_t n, Spin spin) const {
    CVector v(dimension());
    v[index(n, spin)] = 1.0;
    return v;
}

FockSpinOperator::FockSpinOperator(FockSpinBasis b, CMatrix m) : basis(b), matrix(std::move(m)) {
    if (matrix.rows() != basis.dimension() || matrix.cols() != basis.dimension()) {
        throw DimensionError("operator matrix does not match basis dimension " + std::to_string(basis.dimension()));
    }
}

FockSpinOperator ladder_lowering(const FockSpinBasis& basis) {
    CMatrix a(basis.dimension(), basis.dimension());
    for (std::size_t n = 1; n <= basis.n_max(); ++n) {
        const double amp = std::sqrt(static_cast<double>(n));
        for (Spin s : {Spin::up, Spin::down}) a(basis.index(n - 1, s), basis.index(n, s)) = amp;
    }
    return {basis, std::move(a)};
}

FockSpinOperator build_full_hamiltonian(const ModelParams& params, const FockSpinBasis& basis) {
    params.validate();
    const std::size_t dim = basis.dimension();
    CMatrix h(dim, dim);
    for (std::size_t n = 0; n <= basis.n_max(); ++n) {
        const double oscillator = params.hbar_omega * static_cast<double>(n);
        h(basis.index(n, Spin::up), basis.index(n, Spin::up)) = 0.5 * params.eps_energy + oscillator;
        h(basis.index(n, Spin::down), basis.index(n, Spin::down)) = -0.5 * params.eps_energy + oscillator;
    }
    // rho sigma_+ a:        |n+1, down> -> sqrt(n+1) |n, up>
    // -rho sigma_- a^dag:   |n, up>     -> -sqrt(n+1) |n+1, down>
    for (std::size_t n = 0; n < basis.n_max(); ++n) {
        const double amp = params.rho * std::sqrt(static_cast<double>(n + 1));
        const std::size_t up = basis.index(n, Spin::up);
        const std::size_t down = basis.index(n + 1, Spin::down);
        h(up, down) = amp;
        h(down, up) = -amp;
    }
    return {basis, std::move(h)};
}

FockSpinOperator parity_operator(const FockSpinBasis& basis) {
    CVector diag(basis.dimension());
    for (std::size_t i = 0; i < diag.size(); ++i) diag[i] = basis.state(i).n % 2 == 0 ? 1.0 : -1.0;
    return {basis, CMatrix::diagonal(diag)};
}

FockSpinOperator sigma_z_operator(const FockSpinBasis& basis) {
    CVector diag(basis.dimension());
    for (std::size_t i = 0; i < diag.size(); ++i) diag[i] = basis.state(i).spin == Spin::up ? 1.0 : -1.0;
    return {basis, CMatrix::diagonal(diag)};
}

double pseudo_hermiticity_residual(const FockSpinOperator& h, const FockSpinOperator& o) {
    if (!(h.basis == o.basis)) throw DimensionError("operators live on different bases");
    const CMatrix conj = o.matrix * h.matrix * inverse(o.matrix);
    const CMatrix hd = h.matrix.adjoint();
    double worst = 0.0;
    for (std::size_t r = 0; r < hd.rows(); ++r) {
        if (h.basis.state(r).n >= h.basis.n_max()) continue;
        for (std::size_t c = 0; c < hd.cols(); ++c) {
            if (h.basis.state(c).n >= h.basis.n_max()) continue;
            worst = std::max(worst, std::abs(conj(r, c) - hd(r, c)));
        }
    }
    return worst;
}

std::vector<SpectrumEntry> full_spectrum(const ModelParams& params, const FockSpinBasis& basis) {
    params.validate();
    std::vector<SpectrumEntry> out;
    out.push_back({"ground", std::nullopt, Complex(-0.5 * params.eps_energy, 0.0), true});
    for (std::size_t n = 0; n < basis.n_max(); ++n) {
        const std::string tag = "block n=" + std::to_string(n);
        if (blocks::reality_condition(n, params)) {
            const auto ev = blocks::block_eigenvalues(n, params);
            out.push_back({tag + " +", n, Complex(ev.plus, 0.0), true});
            out.push_back({tag + " -", n, Complex(ev.minus, 0.0), true});
        } else {
            const auto ev = blocks::block_eigenvalues_complex(n, params);
            out.push_back({tag + " +", n, ev[0], false});
            out.push_back({tag + " -", n, ev[1], false});
        }
    }
    return out;
}

CVector evolve_full(std::span<const Complex> state, double t, const ModelParams& params,
                    const FockSpinBasis& basis) {
    if (state.size() != basis.dimension()) {
        throw DimensionError("state has " + std::to_string(state.size()) + " entries, basis has dimension " +
                             std::to_string(basis.dimension()));
    }
    if (t == 0.0) return CVector(state.begin(), state.end());
    const auto h = build_full_hamiltonian(params, basis);
    return exp_series(h.matrix, Complex(0.0, -t)) * state;
}

FockSpinOperator full_space_metric(const ModelParams& params, const FockSpinBasis& basis) {
    CMatrix eta = CMatrix::identity(basis.dimension());
    for (std::size_t n = 0; n < basis.n_max(); ++n) {
        const auto block = metric::metric_spectral(n, params);
        const std::size_t i = basis.index(n, Spin::up);
        const std::size_t j = basis.index(n + 1, Spin::down);
        eta(i, i) = block.matrix(0, 0);
        eta(i, j) = block.matrix(0, 1);
        eta(j, i) = block.matrix(1, 0);
        eta(j, j) = block.matrix(1, 1);
    }
    return {basis, std::move(eta)};
}

}  // namespace pseudoherm::fock
