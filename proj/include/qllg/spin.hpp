#pragma once
//
// Spin-s operator construction and state factories: basis kets, product
// states, Bell states, Werner mixtures. Also the textual state grammar used
// by scenario files ("ket:up,down", "bell:psi-", "werner:psi+:0.9",
// "projector:+5,-5").
//

#include "qllg/linalg.hpp"

#include <string>
#include <vector>

namespace qllg {

// hbar in meV*ps; the single source of truth for the library.
inline constexpr double HBAR_MEV_PS = 0.6582119569;

// A list of sites, each carrying a spin quantum number s in {1/2, 1, 3/2, ...}.
struct SpinSystem {
    std::vector<double> spins;

    SpinSystem() = default;
    explicit SpinSystem(std::vector<double> s);

    static bool valid_spin(double s);

    int site_count() const { return static_cast<int>(spins.size()); }
    int site_dim(int site) const { return static_cast<int>(2.0 * spins.at(site) + 1.5); }
    std::vector<int> dims() const;
    int dim() const;

    bool is_two_qubit() const {
        return spins.size() == 2 && spins[0] == 0.5 && spins[1] == 0.5;
    }

    bool operator==(const SpinSystem& o) const { return spins == o.spins; }
};

// S_x, S_y, S_z for one spin-s site, in units of hbar (meV*ps). Basis ordering
// is m = s, s-1, ..., -s, so S_z = hbar*diag(s, s-1, ..., -s).
struct SpinOps {
    CMatrix x, y, z;
};
SpinOps spin_operators(double s, double hbar = HBAR_MEV_PS);

// |s,m> column vector in the descending-m basis.
CVector basis_ket(double s, double m);

// op acting on `site`, identity elsewhere: I (x) ... (x) op (x) ... (x) I.
CMatrix site_operator(const SpinSystem& system, int site, const CMatrix& op);

// A density operator together with the system it lives on. Factories validate
// the standard invariants (Hermitian, unit trace, positive semidefinite).
struct DensityOperator {
    SpinSystem system;
    CMatrix rho;
};

// Throws std::invalid_argument when rho violates Hermiticity (1e-10), unit
// trace (1e-10) or positivity (min eigenvalue >= -1e-8).
void validate_density(const CMatrix& rho, const std::string& what);

// Pure product state |k_0> (x) |k_1> (x) ... as a density operator.
DensityOperator product_state(const SpinSystem& system, const std::vector<CVector>& kets);

// Product of basis projectors |m_0...m_{n-1}><...| ("projector:+5,-5").
DensityOperator projector_state(const SpinSystem& system, const std::vector<double>& m_values);

enum class Bell { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

// Maximally entangled two-qubit states (Phi± = (|uu> ± |dd>)/sqrt2,
// Psi± = (|ud> ± |du>)/sqrt2).
DensityOperator bell_state(Bell which);

// (1-p)/4 * I + p |psi><psi| for a Bell seed; purity (1+3p^2)/4.
DensityOperator werner_state(Bell which, double p);

// Parse the scenario-file state grammar. Accepted forms:
//   ket:up,down            spin-1/2 sites, one token per site
//   projector:+5,-5        any spin, one signed m value per site
//   bell:phi+|phi-|psi+|psi-
//   werner:<bell>:<p>
// Throws std::invalid_argument with a descriptive message otherwise.
DensityOperator parse_state(const std::string& text, const SpinSystem& system);

} // namespace qllg
