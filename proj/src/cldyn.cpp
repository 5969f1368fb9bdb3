#include "qllg/cldyn.hpp"

#include <cmath>
#include <stdexcept>

namespace qllg {

namespace {

void check_sites(const std::vector<Vec3>& moments, const HamiltonianSpec& spec) {
  if (moments.size() != spec.system.spins.size()) {
    throw std::invalid_argument("moment count does not match the model's site count");
  }
}

}  // namespace

std::vector<Vec3> llg_rhs(const std::vector<Vec3>& moments,
                          const HamiltonianSpec& spec, double alpha) {
  check_sites(moments, spec);
  const double gamma = spec.constants.gamma_g();
  const double gamma_eff = gamma / (1.0 + alpha * alpha);
  const double lambda = alpha * gamma / (1.0 + alpha * alpha);
  std::vector<Vec3> dm(moments.size());
  for (std::size_t k = 0; k < moments.size(); ++k) {
    const Vec3 B = effective_field(moments, spec, static_cast<int>(k));
    const Vec3& m = moments[k];
    const double len = m.norm();
    if (len <= 0.0) throw std::invalid_argument("zero-length moment");
    dm[k] = gamma_eff * m.cross(B) - (lambda / len) * m.cross(m.cross(B));
  }
  return dm;
}

std::vector<Vec3> llg_rhs_implicit(const std::vector<Vec3>& moments,
                                   const HamiltonianSpec& spec, double alpha,
                                   double tol, int max_iter) {
  check_sites(moments, spec);
  const double gamma = spec.constants.gamma_g();
  // dm/dt = gamma_g m x B - (alpha/|m|) m x dm/dt, iterated to convergence.
  std::vector<Vec3> dm(moments.size(), Vec3::Zero());
  for (std::size_t k = 0; k < moments.size(); ++k) {
    const Vec3 B = effective_field(moments, spec, static_cast<int>(k));
    const Vec3& m = moments[k];
    const double len = m.norm();
    if (len <= 0.0) throw std::invalid_argument("zero-length moment");
    Vec3 cur = gamma * m.cross(B);  // alpha = 0 seed
    bool converged = false;
    for (int it = 0; it < max_iter; ++it) {
      Vec3 next = gamma * m.cross(B) - (alpha / len) * m.cross(cur);
      if ((next - cur).norm() <= tol * (1.0 + next.norm())) {
        cur = next;
        converged = true;
        break;
      }
      cur = next;
    }
    if (!converged) {
      throw std::runtime_error("implicit damping iteration did not converge");
    }
    dm[k] = cur;
  }
  return dm;
}

ClassicalResult integrate_classical(const ClassicalState& initial,
                                    const HamiltonianSpec& spec,
                                    const ClassicalParams& params,
                                    const ClassicalObserver& observer) {
  check_sites(initial.moments, spec);
  if (!(params.dt > 0.0)) throw std::invalid_argument("dt must be positive");
  if (!(params.t_max >= 0.0)) throw std::invalid_argument("t_max must be non-negative");
  if (params.sample_stride < 1) throw std::invalid_argument("sample_stride must be >= 1");
  if (params.alpha < 0.0) throw std::invalid_argument("alpha must be non-negative");

  const std::size_t n = initial.moments.size();
  std::vector<double> len0(n);
  for (std::size_t k = 0; k < n; ++k) {
    len0[k] = initial.moments[k].norm();
    if (!(len0[k] > 0.0)) throw std::invalid_argument("zero-length moment");
  }

  std::vector<Vec3> m = initial.moments;
  const long long total_steps = std::llround(params.t_max / params.dt);
  if (observer) observer(0.0, m);

  auto add_scaled = [n](const std::vector<Vec3>& a, double c,
                        const std::vector<Vec3>& b) {
    std::vector<Vec3> out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = a[k] + c * b[k];
    return out;
  };

  for (long long step = 1; step <= total_steps; ++step) {
    const double dt = params.dt;
    if (params.integrator == Integrator::Euler) {
      m = add_scaled(m, dt, llg_rhs(m, spec, params.alpha));
    } else {
      const std::vector<Vec3> k1 = llg_rhs(m, spec, params.alpha);
      const std::vector<Vec3> k2 = llg_rhs(add_scaled(m, 0.5 * dt, k1), spec, params.alpha);
      const std::vector<Vec3> k3 = llg_rhs(add_scaled(m, 0.5 * dt, k2), spec, params.alpha);
      const std::vector<Vec3> k4 = llg_rhs(add_scaled(m, dt, k3), spec, params.alpha);
      for (std::size_t k = 0; k < n; ++k) {
        m[k] += (dt / 6.0) * (k1[k] + 2.0 * k2[k] + 2.0 * k3[k] + k4[k]);
      }
    }
    for (std::size_t k = 0; k < n; ++k) {
      const double len = m[k].norm();
      if (!std::isfinite(len) || len <= 0.0) {
        throw std::runtime_error("moment diverged during integration; reduce dt");
      }
      m[k] *= len0[k] / len;  // precession and damping both conserve |m|
    }
    if (observer && (step % params.sample_stride == 0 || step == total_steps)) {
      observer(static_cast<double>(step) * dt, m);
    }
  }

  ClassicalResult res;
  res.stop_time = static_cast<double>(total_steps) * params.dt;
  res.steps = total_steps;
  return res;
}

}  // namespace qllg
