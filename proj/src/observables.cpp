#include "qllg/observables.hpp"

#include <array>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace qllg {

namespace {

// sigma_0..sigma_3 = I, sigma_x, sigma_y, sigma_z in the descending-m basis.
std::array<CMatrix, 4> pauli_matrices() {
  std::array<CMatrix, 4> p;
  for (auto& m : p) m = CMatrix::Zero(2, 2);
  p[0](0, 0) = 1;  p[0](1, 1) = 1;
  p[1](0, 1) = 1;  p[1](1, 0) = 1;
  p[2](0, 1) = Complex(0, -1);  p[2](1, 0) = Complex(0, 1);
  p[3](0, 0) = 1;  p[3](1, 1) = -1;
  return p;
}

void require_two_qubit(const SpinSystem& system, const char* what) {
  if (!system.is_two_qubit()) {
    throw std::invalid_argument(std::string(what) + " requires a pair of spin-1/2 sites");
  }
}

void require_shape(const CMatrix& rho, const SpinSystem& system) {
  if (rho.rows() != system.dim() || rho.cols() != system.dim()) {
    throw std::invalid_argument("state dimension does not match the system");
  }
}

int pauli_index(char c) {
  switch (c) {
    case '0': return 0;
    case 'x': return 1;
    case 'y': return 2;
    case 'z': return 3;
    default: return -1;
  }
}

// Splits names of the form "<prefix><site>_<comp>" (e.g. "r1_x", "S2_mag",
// "m1_y"); site is 1-based in the name. Returns false if the shape is wrong.
bool parse_site_component(const std::string& name, char prefix, int site_count,
                          int& site, int& comp) {
  if (name.size() < 4 || name[0] != prefix || !std::isdigit(static_cast<unsigned char>(name[1]))) {
    return false;
  }
  std::size_t i = 1;
  long idx = 0;
  while (i < name.size() && std::isdigit(static_cast<unsigned char>(name[i]))) {
    idx = idx * 10 + (name[i] - '0');
    ++i;
  }
  if (i >= name.size() || name[i] != '_') return false;
  const std::string tail = name.substr(i + 1);
  if (tail == "x") comp = 0;
  else if (tail == "y") comp = 1;
  else if (tail == "z") comp = 2;
  else if (tail == "mag") comp = 3;
  else return false;
  if (idx < 1 || idx > site_count) return false;
  site = static_cast<int>(idx) - 1;
  return true;
}

double component_or_mag(const Vec3& v, int comp) {
  return comp == 3 ? v.norm() : v[comp];
}

}  // namespace

Mat4 correlation_matrix(const CMatrix& rho, const SpinSystem& system) {
  require_two_qubit(system, "correlation_matrix");
  require_shape(rho, system);
  const auto p = pauli_matrices();
  Mat4 T;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      T(a, b) = (rho * kron(p[a], p[b])).trace().real();
    }
  }
  return T;
}

Vec3 bloch_vector(const CMatrix& rho, const SpinSystem& system, int site) {
  if (site < 0 || site >= system.site_count()) {
    throw std::invalid_argument("bloch_vector: site index out of range");
  }
  if (system.spins.at(site) != 0.5) {
    throw std::invalid_argument("bloch_vector is defined for spin-1/2 sites only");
  }
  require_shape(rho, system);
  const CMatrix reduced = partial_trace(rho, system.dims(), site);
  const auto p = pauli_matrices();
  Vec3 r;
  for (int a = 0; a < 3; ++a) r[a] = (reduced * p[a + 1]).trace().real();
  return r;
}

double bell_nonlocality(const CMatrix& rho, const SpinSystem& system) {
  require_two_qubit(system, "bell_nonlocality");
  const Mat4 T = correlation_matrix(rho, system);
  const Eigen::Matrix3d block = T.block<3, 3>(1, 1);
  const auto u = svd3(block);
  return std::sqrt(std::max(u[0] * u[0] + u[1] * u[1] - 1.0, 0.0));
}

double purity(const CMatrix& rho) {
  // Tr rho^2 = ||rho||_F^2 for Hermitian rho.
  return rho.squaredNorm();
}

double renyi_entropy(const CMatrix& rho, double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("renyi_entropy: delta must be positive");
  if (delta == 1.0) {
    throw std::invalid_argument("renyi_entropy: delta = 1 is the von Neumann limit; call von_neumann_entropy");
  }
  const EigDecomposition eig = eig_hermitian(rho);
  double sum = 0.0;
  for (int i = 0; i < eig.values.size(); ++i) {
    const double lam = eig.values[i];
    if (lam > 1e-300) sum += std::pow(lam, delta);
  }
  return std::log(sum) / (1.0 - delta);
}

double von_neumann_entropy(const CMatrix& rho) {
  const EigDecomposition eig = eig_hermitian(rho);
  double s = 0.0;
  for (int i = 0; i < eig.values.size(); ++i) {
    const double lam = eig.values[i];
    if (lam > 1e-300) s -= lam * std::log(lam);
  }
  return s;
}

Vec3 spin_expectation(const CMatrix& rho, const SpinSystem& system, int site) {
  if (site < 0 || site >= system.site_count()) {
    throw std::invalid_argument("spin_expectation: site index out of range");
  }
  require_shape(rho, system);
  const CMatrix reduced = partial_trace(rho, system.dims(), site);
  const SpinOps ops = spin_operators(system.spins.at(site), 1.0);  // units of hbar
  return Vec3{(reduced * ops.x).trace().real(),
              (reduced * ops.y).trace().real(),
              (reduced * ops.z).trace().real()};
}

double singlet_overlap(const CMatrix& rho, const SpinSystem& system) {
  require_two_qubit(system, "singlet_overlap");
  require_shape(rho, system);
  // |Psi-> = (|ud> - |du>)/sqrt2 in the |uu>,|ud>,|du>,|dd> basis.
  CVector psi = CVector::Zero(4);
  psi(1) = 1.0 / std::sqrt(2.0);
  psi(2) = -1.0 / std::sqrt(2.0);
  return (psi.adjoint() * rho * psi)(0, 0).real();
}

namespace {

QuantumEvaluator spectral_only(QuantumObservable fn) {
  QuantumEvaluator ev;
  ev.full = std::move(fn);
  return ev;
}

// value = combine(traces); `full` falls out of the same pieces.
QuantumEvaluator from_ops(std::vector<CMatrix> ops,
                          std::function<double(const std::vector<double>&)> combine) {
  QuantumEvaluator ev;
  ev.ops = std::move(ops);
  ev.combine = std::move(combine);
  const std::vector<CMatrix> captured = ev.ops;
  const auto comb = ev.combine;
  ev.full = [captured, comb](const CMatrix& rho) {
    std::vector<double> v(captured.size());
    for (std::size_t i = 0; i < captured.size(); ++i) {
      v[i] = (rho * captured[i]).trace().real();
    }
    return comb(v);
  };
  return ev;
}

QuantumEvaluator single_op(CMatrix op) {
  return from_ops({std::move(op)}, [](const std::vector<double>& v) { return v[0]; });
}

double combine_norm3(const std::vector<double>& v) {
  return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
}

}  // namespace

QuantumEvaluator compile_quantum_evaluator(const std::string& name,
                                           const SpinSystem& system,
                                           const CMatrix& H) {
  if (name == "purity") return spectral_only([](const CMatrix& rho) { return purity(rho); });
  if (name == "vn_entropy") {
    return spectral_only([](const CMatrix& rho) { return von_neumann_entropy(rho); });
  }
  if (name == "renyi2") {
    return spectral_only([](const CMatrix& rho) { return renyi_entropy(rho, 2.0); });
  }
  if (name == "renyi3") {
    return spectral_only([](const CMatrix& rho) { return renyi_entropy(rho, 3.0); });
  }
  if (name == "energy") {
    if (H.rows() != system.dim() || H.cols() != system.dim()) {
      throw std::invalid_argument("energy: Hamiltonian dimension mismatch");
    }
    return single_op(H);
  }
  if (name == "bell_B") {
    require_two_qubit(system, "bell_B");
    // Nine correlation entries T_xx..T_zz feed the Horodecki formula.
    const auto p = pauli_matrices();
    std::vector<CMatrix> ops;
    for (int a = 1; a < 4; ++a) {
      for (int b = 1; b < 4; ++b) ops.push_back(kron(p[a], p[b]));
    }
    return from_ops(std::move(ops), [](const std::vector<double>& v) {
      Eigen::Matrix3d block;
      for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) block(a, b) = v[3 * a + b];
      }
      const auto u = svd3(block);
      return std::sqrt(std::max(u[0] * u[0] + u[1] * u[1] - 1.0, 0.0));
    });
  }
  if (name == "singlet_overlap") {
    require_two_qubit(system, "singlet_overlap");
    CVector psi = CVector::Zero(4);
    psi(1) = 1.0 / std::sqrt(2.0);
    psi(2) = -1.0 / std::sqrt(2.0);
    return single_op(psi * psi.adjoint());
  }
  if (name.size() == 4 && name[0] == 'T' && name[1] == '_') {
    const int a = pauli_index(name[2]);
    const int b = pauli_index(name[3]);
    if (a >= 0 && b >= 0) {
      require_two_qubit(system, "correlation matrix entries");
      const auto p = pauli_matrices();
      return single_op(kron(p[a], p[b]));
    }
  }
  int site = 0, comp = 0;
  if (parse_site_component(name, 'r', system.site_count(), site, comp)) {
    if (system.spins.at(site) != 0.5) {
      throw std::invalid_argument("observable '" + name + "' needs a spin-1/2 site");
    }
    const auto p = pauli_matrices();
    std::vector<CMatrix> ops;
    if (comp == 3) {
      for (int a = 1; a < 4; ++a) ops.push_back(site_operator(system, site, p[a]));
      return from_ops(std::move(ops), combine_norm3);
    }
    return single_op(site_operator(system, site, p[comp + 1]));
  }
  if (parse_site_component(name, 'S', system.site_count(), site, comp)) {
    const SpinOps sp = spin_operators(system.spins.at(site), 1.0);  // units of hbar
    if (comp == 3) {
      std::vector<CMatrix> ops = {site_operator(system, site, sp.x),
                                  site_operator(system, site, sp.y),
                                  site_operator(system, site, sp.z)};
      return from_ops(std::move(ops), combine_norm3);
    }
    const CMatrix& axis = comp == 0 ? sp.x : (comp == 1 ? sp.y : sp.z);
    return single_op(site_operator(system, site, axis));
  }
  throw std::invalid_argument("unknown quantum observable '" + name + "'");
}

QuantumObservable compile_quantum_observable(const std::string& name,
                                             const SpinSystem& system,
                                             const CMatrix& H) {
  return compile_quantum_evaluator(name, system, H).full;
}

ClassicalObservable compile_classical_observable(const std::string& name,
                                                 const HamiltonianSpec& spec) {
  if (name == "energy") {
    const HamiltonianSpec copy = spec;
    return [copy](const std::vector<Vec3>& m) { return classical_energy(m, copy); };
  }
  int site = 0, comp = 0;
  if (parse_site_component(name, 'm', spec.system.site_count(), site, comp)) {
    // Moments are carried in physical units (meV/T); CSV reports them in mu_B.
    const double mu_B = spec.constants.mu_B;
    return [site, comp, mu_B](const std::vector<Vec3>& m) {
      return component_or_mag(m.at(static_cast<std::size_t>(site)), comp) / mu_B;
    };
  }
  throw std::invalid_argument("unknown classical observable '" + name + "'");
}

bool quantum_observable_supported(const std::string& name, const SpinSystem& system) {
  try {
    compile_quantum_observable(name, system, CMatrix::Zero(system.dim(), system.dim()));
    return true;
  } catch (const std::invalid_argument&) {
    return false;
  }
}

bool classical_observable_supported(const std::string& name, const HamiltonianSpec& spec) {
  try {
    compile_classical_observable(name, spec);
    return true;
  } catch (const std::invalid_argument&) {
    return false;
  }
}

std::vector<std::string> quantum_observable_names(const SpinSystem& system) {
  std::vector<std::string> names = {"purity", "vn_entropy", "renyi2", "renyi3", "energy"};
  if (system.is_two_qubit()) {
    names.push_back("bell_B");
    names.push_back("singlet_overlap");
    const char axes[] = {'0', 'x', 'y', 'z'};
    for (char a : axes) {
      for (char b : axes) {
        names.push_back(std::string("T_") + a + b);
      }
    }
  }
  for (int k = 0; k < system.site_count(); ++k) {
    if (system.spins[k] == 0.5) {
      for (const char* c : {"x", "y", "z", "mag"}) {
        names.push_back("r" + std::to_string(k + 1) + "_" + c);
      }
    }
  }
  for (int k = 0; k < system.site_count(); ++k) {
    for (const char* c : {"x", "y", "z", "mag"}) {
      names.push_back("S" + std::to_string(k + 1) + "_" + c);
    }
  }
  return names;
}

std::vector<std::string> classical_observable_names(std::size_t site_count) {
  std::vector<std::string> names;
  for (std::size_t k = 0; k < site_count; ++k) {
    for (const char* c : {"x", "y", "z", "mag"}) {
      names.push_back("m" + std::to_string(k + 1) + "_" + c);
    }
  }
  names.push_back("energy");
  return names;
}

}  // namespace qllg
