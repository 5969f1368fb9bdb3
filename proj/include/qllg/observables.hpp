#pragma once
//
// Everything measured on trajectories: Bloch vectors, the 4x4 correlation
// matrix, Bell nonlocality, purity, entropies, spin expectations, energy and
// the singlet overlap — plus the string-keyed registry that turns observable
// names into per-sample evaluators (the names double as CSV column headers).
//

#include <functional>
#include <string>
#include <vector>

#include "qllg/linalg.hpp"
#include "qllg/models.hpp"
#include "qllg/spin.hpp"

namespace qllg {

using Mat4 = Eigen::Matrix4d;

// T_ab = Tr(rho sigma_a (x) sigma_b), a,b in {0,x,y,z} with sigma_0 = I.
// T(0,0) = 1; row 0 / column 0 hold the site-2 / site-1 Bloch vectors; the
// lower-right 3x3 block is the spin-spin correlation matrix. Reconstruction:
// rho = (1/4) sum_ab T_ab sigma_a (x) sigma_b.
Mat4 correlation_matrix(const CMatrix& rho, const SpinSystem& system);

// r = Tr(rho_site sigma), dimensionless, |r| <= 1. Spin-1/2 sites only.
Vec3 bloch_vector(const CMatrix& rho, const SpinSystem& system, int site);

// Horodecki measure B(rho) = sqrt(max{u1^2 + u2^2 - 1, 0}) from the two
// largest singular values of the 3x3 correlation block. B > 0 iff the state
// violates a CHSH inequality; B = 1 at the Cirel'son bound.
double bell_nonlocality(const CMatrix& rho, const SpinSystem& system);

double purity(const CMatrix& rho);  // Tr rho^2

// S_delta = ln(Tr rho^delta)/(1 - delta), delta > 0, delta != 1 (delta = 1 is
// the von Neumann limit; call von_neumann_entropy instead).
double renyi_entropy(const CMatrix& rho, double delta);

// S = -Tr(rho ln rho) with 0*ln 0 = 0 (eigenvalues below 1e-300 dropped).
double von_neumann_entropy(const CMatrix& rho);

// <S> on one site, in units of hbar (so |<S>| <= s). For spin-1/2 this equals
// r/2 componentwise.
Vec3 spin_expectation(const CMatrix& rho, const SpinSystem& system, int site);

// <Psi-|rho|Psi-> for a two-qubit state.
double singlet_overlap(const CMatrix& rho, const SpinSystem& system);

// ---------------------------------------------------------------------------
// Observable registry. Names understood for quantum runs:
//   purity, vn_entropy, renyi2, renyi3, energy
//   bell_B, singlet_overlap          (two-qubit systems)
//   T_00 ... T_zz                    (two-qubit; indices in {0,x,y,z})
//   r<k>_x|y|z|mag                   (spin-1/2 site k, 1-based)
//   S<k>_x|y|z|mag                   (any site k, 1-based, units of hbar)
// and for classical runs:
//   m<k>_x|y|z|mag                   (moment components, units of mu_B)
//   energy
// ---------------------------------------------------------------------------

using QuantumObservable = std::function<double(const CMatrix& rho)>;
using ClassicalObservable = std::function<double(const std::vector<Vec3>& moments)>;

// Compiled form of a quantum observable. When `ops` is non-empty the value is
// combine({Tr(rho*ops[0]), Tr(rho*ops[1]), ...}), which lets engines that keep
// rho in a fixed eigenbasis evaluate samples in O(dim^2) without rebuilding
// the full matrix. `full` always works on the full density matrix. Only the
// spectral observables (purity, entropies) lack an ops path.
struct QuantumEvaluator {
  std::vector<CMatrix> ops;
  std::function<double(const std::vector<double>&)> combine;
  QuantumObservable full;
};

// Bind a name to an evaluator for the given system/Hamiltonian. Throws
// std::invalid_argument when the name is unknown or incompatible with the
// system (e.g. bell_B on a spin-5 pair).
QuantumEvaluator compile_quantum_evaluator(const std::string& name,
                                           const SpinSystem& system,
                                           const CMatrix& H);
QuantumObservable compile_quantum_observable(const std::string& name,
                                             const SpinSystem& system,
                                             const CMatrix& H);
ClassicalObservable compile_classical_observable(const std::string& name,
                                                 const HamiltonianSpec& spec);

bool quantum_observable_supported(const std::string& name, const SpinSystem& system);
bool classical_observable_supported(const std::string& name, const HamiltonianSpec& spec);

// Full name lists for the given system, in manual order (used by docs/tests).
std::vector<std::string> quantum_observable_names(const SpinSystem& system);
std::vector<std::string> classical_observable_names(std::size_t site_count);

}  // namespace qllg
