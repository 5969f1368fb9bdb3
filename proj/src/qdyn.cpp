#include "qllg/qdyn.hpp"

#include <cmath>

namespace qllg {

CMatrix qllg_rhs(const CMatrix& rho, const CMatrix& H, double kappa, double hbar) {
    EigDecomposition d = eig_hermitian(rho);
    const CMatrix Ht = d.vectors.adjoint() * H * d.vectors;

    const Eigen::Index n = rho.rows();
    CMatrix dot(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            const double gap = d.values(i) - d.values(j);
            // L~_ij = (i/hbar) (lambda_i - lambda_j) H~_ij
            const Complex L = (IM / hbar) * gap * Ht(i, j);
            dot(i, j) = L / (1.0 - IM * kappa * gap);
        }
    }
    CMatrix out = d.vectors * dot * d.vectors.adjoint();
    return 0.5 * (out + out.adjoint()); // shave off round-off noise
}

CMatrix qllg_rhs_fixed_point(const CMatrix& rho, const CMatrix& H, double kappa, double hbar,
                             double tol, int max_iter) {
    const CMatrix L = (IM / hbar) * commutator(rho, H);
    CMatrix dot = L;
    for (int it = 0; it < max_iter; ++it) {
        CMatrix next = L + IM * kappa * commutator(rho, dot);
        next = 0.5 * (next + next.adjoint());
        const double change = max_abs(next - dot);
        dot = next;
        if (change < tol) return dot;
    }
    throw std::runtime_error("qllg_rhs_fixed_point: no convergence after " + std::to_string(max_iter) +
                             " iterations (kappa too large for the contraction?)");
}

CMatrix qll_rhs(const CMatrix& rho, const CMatrix& H, double kappa, double hbar) {
    const CMatrix c = commutator(rho, H);
    CMatrix out = (IM / hbar) * c - (kappa / hbar) * commutator(rho, c);
    return 0.5 * (out + out.adjoint());
}

namespace {

CMatrix eval_rhs(RhsKind kind, const CMatrix& rho, const CMatrix& H, double kappa, double hbar) {
    return kind == RhsKind::Qllg ? qllg_rhs(rho, H, kappa, hbar) : qll_rhs(rho, H, kappa, hbar);
}

void check_monitor(const CMatrix& rho, double t, double tol) {
    const double trace_err = std::abs(rho.trace() - Complex(1.0, 0.0));
    if (trace_err > tol)
        throw MonitorError("invariant monitor tripped at t=" + std::to_string(t) +
                           " ps: |Tr rho - 1| = " + std::to_string(trace_err) +
                           " > " + std::to_string(tol) + "; retry with a smaller dt");
    EigDecomposition d = eig_hermitian(rho);
    const double min_eig = d.values.minCoeff();
    if (min_eig < -tol)
        throw MonitorError("invariant monitor tripped at t=" + std::to_string(t) +
                           " ps: min eigenvalue " + std::to_string(min_eig) +
                           " < -" + std::to_string(tol) + "; retry with a smaller dt");
}

} // namespace

IntegrationResult integrate(const CMatrix& rho0, const CMatrix& H, const QDynParams& params,
                            RhsKind kind,
                            const std::function<void(double, const CMatrix&)>& observer) {
    if (params.dt <= 0.0) throw std::invalid_argument("integrate: dt must be positive");
    if (params.t_max < params.dt) throw std::invalid_argument("integrate: t_max must be at least dt");
    if (params.sample_stride < 1) throw std::invalid_argument("integrate: sample_stride must be >= 1");
    if (!(params.monitor_tol > 0.0))
        throw std::invalid_argument("integrate: monitor_tol must be positive");

    const double kappa = params.kappa, hbar = params.hbar, dt = params.dt;
    const long total_steps = static_cast<long>(std::llround(params.t_max / dt));

    CMatrix rho = 0.5 * (rho0 + rho0.adjoint());
    check_monitor(rho, 0.0, params.monitor_tol);
    if (observer) observer(0.0, rho);

    IntegrationResult res;
    for (long n = 1; n <= total_steps; ++n) {
        if (params.integrator == Integrator::Euler) {
            rho += dt * eval_rhs(kind, rho, H, kappa, hbar);
        } else {
            const CMatrix k1 = eval_rhs(kind, rho, H, kappa, hbar);
            const CMatrix k2 = eval_rhs(kind, rho + 0.5 * dt * k1, H, kappa, hbar);
            const CMatrix k3 = eval_rhs(kind, rho + 0.5 * dt * k2, H, kappa, hbar);
            const CMatrix k4 = eval_rhs(kind, rho + dt * k3, H, kappa, hbar);
            rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
        rho = 0.5 * (rho + rho.adjoint()); // symmetrize only; drift stays visible
        const double t = static_cast<double>(n) * dt;
        res.steps = n;
        res.stop_time = t;

        const bool sample = (n % params.sample_stride == 0) || n == total_steps;
        if (sample) {
            check_monitor(rho, t, params.monitor_tol);
            if (observer) observer(t, rho);
        }
        if (params.steady_tol > 0.0) {
            const double step_change = fro_norm(eval_rhs(kind, rho, H, kappa, hbar)) * dt;
            if (step_change < params.steady_tol) {
                if (!sample && observer) observer(t, rho);
                res.steady_stopped = true;
                break;
            }
        }
    }
    return res;
}

ExactPurePropagator::ExactPurePropagator(const CMatrix& rho0, const CMatrix& H, double kappa,
                                         double hbar)
    : eigH_(eig_hermitian(H)), kappa_(kappa), hbar_(hbar) {
    rho0_eig_ = eigH_.vectors.adjoint() * rho0 * eigH_.vectors;
}

CMatrix ExactPurePropagator::at(double t) const {
    const Eigen::Index n = eigH_.values.size();
    // M = exp(-i H_eff t/hbar) is diagonal in the H eigenbasis with entries
    // f_i = exp(-i(1-i*kappa) E_i t / (hbar(1+kappa^2))).
    const Complex c = (1.0 - IM * kappa_) / (1.0 + kappa_ * kappa_) / hbar_;
    // Shift energies so the largest amplification factor is exactly 1;
    // rho is normalized afterwards anyway, and the shift prevents overflow
    // and underflow at large t.
    const double E_min = eigH_.values.minCoeff();
    CVector f(n);
    for (Eigen::Index i = 0; i < n; ++i) f(i) = std::exp(-IM * c * (eigH_.values(i) - E_min) * t);

    CMatrix m = f.asDiagonal() * rho0_eig_ * f.conjugate().asDiagonal();
    const double tr = m.trace().real();
    if (!(tr > 1e-300))
        throw std::runtime_error("exact propagator: normalization underflow at t=" + std::to_string(t) +
                                 " ps; use a shorter horizon");
    m /= tr;
    CMatrix out = eigH_.vectors * m * eigH_.vectors.adjoint();
    return 0.5 * (out + out.adjoint());
}

std::vector<double> ExactPurePropagator::expectations(double t,
                                                      const std::vector<CMatrix>& ops) const {
    const Eigen::Index n = eigH_.values.size();
    const Complex c = (1.0 - IM * kappa_) / (1.0 + kappa_ * kappa_) / hbar_;
    const double E_min = eigH_.values.minCoeff();
    CVector f(n);
    for (Eigen::Index i = 0; i < n; ++i) f(i) = std::exp(-IM * c * (eigH_.values(i) - E_min) * t);

    // rho~(t)_ij = f_i rho0~_ij conj(f_j), normalized; then Tr(rho~ op~).
    CMatrix rt = f.asDiagonal() * rho0_eig_;
    rt = rt * f.conjugate().asDiagonal();
    const double tr = rt.trace().real();
    if (!(tr > 1e-300))
        throw std::runtime_error("exact propagator: normalization underflow at t=" + std::to_string(t) +
                                 " ps; use a shorter horizon");
    rt /= tr;

    std::vector<double> out;
    out.reserve(ops.size());
    for (const auto& op : ops) out.push_back((rt * op).trace().real());
    return out;
}

CMatrix ExactPurePropagator::to_eigenbasis(const CMatrix& op) const {
    return eigH_.vectors.adjoint() * op * eigH_.vectors;
}

CMatrix exact_pure_propagator(const CMatrix& rho0, const CMatrix& H, double kappa, double hbar,
                              double t) {
    const double p = (rho0 * rho0).trace().real();
    if (std::abs(p - 1.0) > 1e-8)
        throw std::invalid_argument("exact_pure_propagator: input purity " + std::to_string(p) +
                                    " is not 1 within 1e-8 (pure states only)");
    return ExactPurePropagator(rho0, H, kappa, hbar).at(t);
}

CertificateResult inequivalence_certificate(const CMatrix& rho, const CMatrix& H, double kappa,
                                            double hbar) {
    const CMatrix A = qllg_rhs(rho, H, kappa, hbar);
    const CMatrix B = qll_rhs(rho, H, kappa, hbar);

    CertificateResult res;
    const double nA = fro_norm(A);
    const double scale = std::max({1.0, max_abs(rho), max_abs(H) / hbar});
    if (nA < 1e-13 * scale) {
        res.stationary = true; // [rho,H] = 0: both flows vanish identically
        return res;
    }
    // Least squares over real c: <B,A>_F / <B,B>_F (inner products are real
    // for Hermitian A, B).
    const double bb = (B.adjoint() * B).trace().real();
    res.c_star = (B.adjoint() * A).trace().real() / bb;
    res.value = fro_norm(A - res.c_star * B) / nA;
    return res;
}

} // namespace qllg
