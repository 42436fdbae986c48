#pragma once

namespace pseudoherm {

/// Physical parameters of the spin-oscillator Hamiltonian
///   H = (eps_energy/2) sigma_z + hbar_omega a^dagger a + rho (sigma_+ a - sigma_- a^dagger).
/// Units: hbar = 1, so all three share one energy unit and times are inverse
/// energies. eps_energy = 2 mu B_z; mu and B_z never enter separately.
struct ModelParams {
    double eps_energy = 0.0;
    double hbar_omega = 1.0;
    double rho = 0.0;

    /// Throws std::invalid_argument unless hbar_omega > 0, rho >= 0 and all
    /// three are finite.
    void validate() const;
};

}  // namespace pseudoherm
