#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pseudoherm/linalg.hpp"
#include "pseudoherm/model.hpp"

namespace pseudoherm::fock {

/// Spin label m_s = +1 (spin up, |n, 1/2>) or -1 (spin down, |n, -1/2>).
enum class Spin : int { down = -1, up = +1 };

struct BasisState {
    std::size_t n;
    Spin spin;
    friend bool operator==(const BasisState&, const BasisState&) = default;
};

/// Truncated Fock (x) spin basis, ordered |0,up>, |0,down>, |1,up>, |1,down>, ...
class FockSpinBasis {
public:
    static constexpr std::size_t default_n_max = 31;

    explicit FockSpinBasis(std::size_t n_max = default_n_max);

    std::size_t n_max() const noexcept { return n_max_; }
    std::size_t dimension() const noexcept { return 2 * (n_max_ + 1); }

    std::size_t index(std::size_t n, Spin spin) const;
    std::size_t index(BasisState s) const { return index(s.n, s.spin); }
    BasisState state(std::size_t index) const;
    std::vector<BasisState> ordering() const;

    /// Basis vector for |n, m_s>.
    CVector ket(std::size_t n, Spin spin) const;

    friend bool operator==(const FockSpinBasis&, const FockSpinBasis&) = default;

private:
    std::size_t n_max_;
};

/// Dense operator on the truncated space, carrying its basis.
struct FockSpinOperator {
    FockSpinBasis basis;
    CMatrix matrix;

    FockSpinOperator(FockSpinBasis b, CMatrix m);

    CVector apply(std::span<const Complex> v) const { return matrix * v; }
};

/// a (x) I_spin. The top Fock level is only lowered, so a loses nothing to
/// truncation; a^dagger is the adjoint and does drop |n_max> -> |n_max+1>.
FockSpinOperator ladder_lowering(const FockSpinBasis& basis);

FockSpinOperator build_full_hamiltonian(const ModelParams& params, const FockSpinBasis& basis);

/// (-1)^{a^dagger a} (x) I_spin. It anticommutes with a, which flips the sign of
/// the coupling and so maps H to its adjoint. The alternative
/// (-1)^{a^dagger a} (x) sigma_z works as well; the smaller one is used.
FockSpinOperator parity_operator(const FockSpinBasis& basis);

/// I_Fock (x) sigma_z.
FockSpinOperator sigma_z_operator(const FockSpinBasis& basis);

/// max |O H O^-1 - H^dagger| over rows and columns whose Fock index is below
/// n_max. Throws SingularOperatorError for a singular O.
double pseudo_hermiticity_residual(const FockSpinOperator& h, const FockSpinOperator& o);

struct SpectrumEntry {
    std::string label;            // "ground", "block n=<n> +", "block n=<n> -"
    std::optional<std::size_t> block;
    Complex value;
    bool real;
};

/// Spectrum assembled from the closed forms: the ground value -eps/2 and the
/// two eigenvalues of each complete block n = 0..n_max-1. Blocks in the broken
/// regime contribute their complex-conjugate pair with `real == false`.
std::vector<SpectrumEntry> full_spectrum(const ModelParams& params, const FockSpinBasis& basis);

/// exp(-i H t) state by the series exponential (hbar = 1).
CVector evolve_full(std::span<const Complex> state, double t, const ModelParams& params, const FockSpinBasis& basis);

/// Block-diagonal metric on the full truncated space: 1 on the ground state and
/// on the unpaired top state |n_max, up>, the per-block 2x2 metric with its own
/// alpha_n on every complete block. Requires every block to be in the reality
/// domain.
FockSpinOperator full_space_metric(const ModelParams& params, const FockSpinBasis& basis);

}  // namespace pseudoherm::fock
