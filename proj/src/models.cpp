#include "qllg/models.hpp"

#include <cmath>
#include <stdexcept>

namespace qllg {

PhysicalConstants constants_for(Units units, double g_factor) {
    PhysicalConstants c;
    c.mu_B = (units == Units::Paper) ? MU_B_PAPER : MU_B_CODATA;
    c.g_factor = g_factor;
    return c;
}

static std::pair<int, int> canonical_pair(int a, int b, const char* what) {
    if (a == b) throw std::invalid_argument(std::string(what) + ": sites must differ");
    if (a < 0 || b < 0) throw std::invalid_argument(std::string(what) + ": negative site index");
    return {std::min(a, b), std::max(a, b)};
}

void HamiltonianSpec::set_exchange(int a, int b, double J_meV) {
    J_[canonical_pair(a, b, "set_exchange")] = J_meV;
}

void HamiltonianSpec::set_dmi(int a, int b, const Vec3& D_meV) {
    auto key = canonical_pair(a, b, "set_dmi");
    D_[key] = (a < b) ? D_meV : Vec3(-D_meV);
}

double HamiltonianSpec::exchange(int a, int b) const {
    auto it = J_.find(canonical_pair(a, b, "exchange"));
    return it == J_.end() ? 0.0 : it->second;
}

Vec3 HamiltonianSpec::dmi(int a, int b) const {
    auto it = D_.find(canonical_pair(a, b, "dmi"));
    if (it == D_.end()) return Vec3::Zero();
    return (a < b) ? it->second : Vec3(-it->second);
}

CMatrix build_quantum_hamiltonian(const HamiltonianSpec& spec) {
    const SpinSystem& sys = spec.system;
    const double hbar = spec.constants.hbar;
    const int n = sys.site_count();
    const int dim = sys.dim();

    // Per-site embedded spin operators, built once.
    std::vector<SpinOps> local(n);
    std::vector<std::array<CMatrix, 3>> S(n);
    for (int k = 0; k < n; ++k) {
        local[k] = spin_operators(sys.spins[k], hbar);
        S[k] = {site_operator(sys, k, local[k].x),
                site_operator(sys, k, local[k].y),
                site_operator(sys, k, local[k].z)};
    }

    CMatrix H = CMatrix::Zero(dim, dim);

    const double gamma = spec.constants.gamma_g();
    for (int k = 0; k < n; ++k)
        for (int a = 0; a < 3; ++a)
            if (spec.B_tesla(a) != 0.0) H -= gamma * spec.B_tesla(a) * S[k][a];

    auto pair_prefactor = [&](int l, int k) {
        return 4.0 / (hbar * hbar * 2.0 * std::sqrt(sys.spins[l] * sys.spins[k]));
    };

    for (const auto& [key, J] : spec.exchange_pairs()) {
        const auto [l, k] = key;
        const double c = pair_prefactor(l, k);
        for (int a = 0; a < 3; ++a) H += c * J * S[l][a] * S[k][a];
    }
    for (const auto& [key, D] : spec.dmi_pairs()) {
        const auto [l, k] = key;
        const double c = pair_prefactor(l, k);
        // D . (S_l x S_k), components of the operator cross product.
        H += c * (D(0) * (S[l][1] * S[k][2] - S[l][2] * S[k][1]) +
                  D(1) * (S[l][2] * S[k][0] - S[l][0] * S[k][2]) +
                  D(2) * (S[l][0] * S[k][1] - S[l][1] * S[k][0]));
    }

    const double scale = std::max(1.0, max_abs(H));
    if (hermiticity_defect(H) > 1e-12 * scale)
        throw std::runtime_error("build_quantum_hamiltonian: assembled matrix is not Hermitian (internal error)");
    return H;
}

double classical_energy(const std::vector<Vec3>& m, const HamiltonianSpec& spec) {
    if (static_cast<int>(m.size()) != spec.system.site_count())
        throw std::invalid_argument("classical_energy: need one moment per site");
    const double muB = spec.constants.mu_B;

    double E = 0.0;
    for (const auto& mk : m) E -= spec.B_tesla.dot(mk);
    for (const auto& [key, J] : spec.exchange_pairs()) {
        const auto [l, k] = key;
        E += J * m[l].dot(m[k]) / (muB * muB);
    }
    for (const auto& [key, D] : spec.dmi_pairs()) {
        const auto [l, k] = key;
        E += D.dot(m[l].cross(m[k])) / (muB * muB);
    }
    return E;
}

Vec3 effective_field(const std::vector<Vec3>& m, const HamiltonianSpec& spec, int k) {
    if (k < 0 || k >= spec.system.site_count())
        throw std::invalid_argument("effective_field: site index out of range");
    if (static_cast<int>(m.size()) != spec.system.site_count())
        throw std::invalid_argument("effective_field: need one moment per site");
    const double muB = spec.constants.mu_B;

    Vec3 B = spec.B_tesla;
    for (int l = 0; l < spec.system.site_count(); ++l) {
        if (l == k) continue;
        const double J = spec.exchange(l, k);
        if (J != 0.0) B -= J * m[l] / (muB * muB);
        const Vec3 D = spec.dmi(l, k); // orientation (l,k): term is D.(m_l x m_k)
        if (D != Vec3::Zero()) B -= D.cross(m[l]) / (muB * muB);
    }
    return B;
}

} // namespace qllg
