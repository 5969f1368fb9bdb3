#pragma once

namespace qllg {

// Fixed-step schemes shared by the quantum and classical integrators.
enum class Integrator { Euler, RK4 };

}  // namespace qllg
