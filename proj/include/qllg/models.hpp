#pragma once
//
// Physical constants and model builders: the quantum spin Hamiltonian
// (Zeeman + Heisenberg exchange + Dzyaloshinskii-Moriya coupling) on a
// tensor-product spin space, and the classical magnetic Hamiltonian with its
// effective fields B_k = -dH/dm_k.
//

#include "qllg/linalg.hpp"
#include "qllg/spin.hpp"

#include <map>
#include <utility>
#include <vector>

namespace qllg {

enum class Units { Codata, Paper };

// Bohr magneton in meV/T under the two supported conventions. The "paper"
// value 0.0658 is hbar/10 to three figures, which makes gamma_g*B close to
// 0.1/ps for g=1 and B=1T — handy round numbers for the bundled scenarios.
inline constexpr double MU_B_CODATA = 0.0578838;
inline constexpr double MU_B_PAPER  = 0.0658;

struct PhysicalConstants {
    double hbar = HBAR_MEV_PS; // meV*ps
    double mu_B = MU_B_CODATA; // meV/T
    double g_factor = 1.0;     // dimensionless

    // Gyromagnetic ratio, rad/(ps*T); positive by convention here.
    double gamma_g() const { return g_factor * mu_B / hbar; }
};

PhysicalConstants constants_for(Units units, double g_factor = 1.0);

// Pair couplings are stored once per unordered pair with l < k; the DMI
// vector is antisymmetric under index swap (D_kl = -D_lk) and is flipped on
// access when queried in the opposite order.
struct HamiltonianSpec {
    SpinSystem system;
    Vec3 B_tesla = Vec3::Zero();
    PhysicalConstants constants;

    void set_exchange(int a, int b, double J_meV);
    void set_dmi(int a, int b, const Vec3& D_meV); // D as seen with site order (a,b)

    double exchange(int a, int b) const;  // symmetric
    Vec3 dmi(int a, int b) const;         // antisymmetric

    const std::map<std::pair<int, int>, double>& exchange_pairs() const { return J_; }
    const std::map<std::pair<int, int>, Vec3>& dmi_pairs() const { return D_; }

  private:
    std::map<std::pair<int, int>, double> J_; // key (l,k), l<k, meV
    std::map<std::pair<int, int>, Vec3> D_;   // key (l,k), l<k, meV
};

// Quantum Hamiltonian in meV:
//
//   H = -gamma_g * sum_k B . S_k
//       + sum_{l<k} c_lk * [ J_lk S_l . S_k + D_lk . (S_l x S_k) ]
//
// with pair prefactor c_lk = 4 / (hbar^2 * 2*sqrt(s_l s_k)). For spin-1/2
// pairs this is the standard 4/hbar^2; for larger spins the 1/(2 sqrt(s_l s_k))
// scaling keeps the mean-field exchange precession frequency independent of s,
// which is what makes the s -> infinity runs line up with the classical
// integrator on a common time axis.
CMatrix build_quantum_hamiltonian(const HamiltonianSpec& spec);

// Classical magnetic energy in meV for physical moments m_k in meV/T (a
// moment of one Bohr magneton is a vector of norm mu_B):
//
//   H = -sum_k B . m_k + mu_B^{-2} sum_{l<k} [ J_lk m_l . m_k + D_lk . (m_l x m_k) ]
//
// With |m_k| = mu_B the exchange term reduces to J_lk m̂_l . m̂_k, so J keeps
// the same meaning (meV per pair) as in the quantum builder. The DMI term uses
// the same (l,k) orientation as the quantum builder, so one stored D vector
// feeds both models consistently.
double classical_energy(const std::vector<Vec3>& moments, const HamiltonianSpec& spec);

// Effective field on site k in tesla, B_k = -dH/dm_k:
//
//   B_k = B - mu_B^{-2} sum_{l != k} [ J_kl m_l + D(l,k) x m_l ]
//
// where D(l,k) is the antisymmetrized access (D(l,k) = -D(k,l)). Verified
// against central finite differences of classical_energy in the test suite.
Vec3 effective_field(const std::vector<Vec3>& moments, const HamiltonianSpec& spec, int k);

} // namespace qllg
