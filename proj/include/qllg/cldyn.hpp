#pragma once

#include <functional>
#include <vector>

#include "qllg/integrator.hpp"
#include "qllg/models.hpp"

namespace qllg {

// Classical magnetic moments, one unit-scale vector per site. The initial
// lengths are remembered so that integration can renormalize each step
// (precession/damping conserve |m| exactly; the integrator should too).
struct ClassicalState {
  std::vector<Vec3> moments;

  explicit ClassicalState(std::vector<Vec3> m) : moments(std::move(m)) {}

  std::size_t size() const { return moments.size(); }
};

// Time derivative of every moment in the Landau-Lifshitz form,
//   dm_k/dt = gamma_eff m_k x B_k - (lambda/|m_k|) m_k x (m_k x B_k),
// with gamma_eff = gamma_g/(1+alpha^2) and lambda = alpha*gamma_g/(1+alpha^2).
// This is algebraically identical to the implicit Landau-Lifshitz-Gilbert
// equation dm/dt = gamma_g m x B - (alpha/|m|) m x dm/dt.
std::vector<Vec3> llg_rhs(const std::vector<Vec3>& moments,
                          const HamiltonianSpec& spec, double alpha);

// Solves the implicit Gilbert form by fixed-point iteration (tolerance on the
// max norm of the update). Exists to cross-check llg_rhs; production code uses
// the closed form above.
std::vector<Vec3> llg_rhs_implicit(const std::vector<Vec3>& moments,
                                   const HamiltonianSpec& spec, double alpha,
                                   double tol = 1e-14, int max_iter = 200);

struct ClassicalParams {
  double alpha = 0.5;       // Gilbert damping
  Integrator integrator = Integrator::RK4;
  double dt = 1e-3;         // ps
  double t_max = 1.0;       // ps
  int sample_stride = 1;    // observer cadence in steps
};

// Observer receives (t_ps, moments) at t=0, at every sample_stride-th step,
// and at the final step.
using ClassicalObserver =
    std::function<void(double, const std::vector<Vec3>&)>;

struct ClassicalResult {
  double stop_time = 0.0;
  long long steps = 0;
};

// Fixed-step integration with per-step renormalization of each moment to its
// initial length. Throws std::runtime_error if a moment becomes non-finite
// (diverging step size) and std::invalid_argument on bad parameters.
ClassicalResult integrate_classical(const ClassicalState& initial,
                                    const HamiltonianSpec& spec,
                                    const ClassicalParams& params,
                                    const ClassicalObserver& observer = {});

}  // namespace qllg
