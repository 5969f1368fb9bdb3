#pragma once
//
// Dense complex-matrix kernels shared by the whole library: Kronecker
// products, commutators, Hermitian eigendecomposition with a deterministic
// phase convention, partial trace, matrix functions, and the 3x3 SVD used by
// the nonlocality measure. Everything here is pure and thread-safe.
//

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <functional>
#include <vector>

namespace qllg {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using Vec3    = Eigen::Vector3d;

inline constexpr Complex IM{0.0, 1.0};

// A† (conjugate transpose).
CMatrix dag(const CMatrix& a);

// [a,b] = ab - ba and {a,b} = ab + ba. Throw std::invalid_argument on
// dimension mismatch.
CMatrix commutator(const CMatrix& a, const CMatrix& b);
CMatrix anticommutator(const CMatrix& a, const CMatrix& b);

// Kronecker (tensor) product; dimensions multiply.
CMatrix kron(const CMatrix& a, const CMatrix& b);

// max_ij |a_ij|
double max_abs(const CMatrix& a);

// Frobenius norm.
double fro_norm(const CMatrix& a);

// max_ij |a_ij - conj(a_ji)|, i.e. distance from Hermiticity in the max norm.
double hermiticity_defect(const CMatrix& a);

// Eigendecomposition of a Hermitian matrix.
//
// values are ascending; vectors' columns are the matching orthonormal
// eigenvectors. The input is symmetrized ((A+A†)/2) before the solve so that
// integrator round-off cannot push it off the Hermitian manifold, and each
// eigenvector's phase is fixed deterministically: the first component with
// nonnegligible magnitude is made positive real. That keeps repeated runs
// bit-identical.
struct EigDecomposition {
    RVector values;
    CMatrix vectors;
};
EigDecomposition eig_hermitian(const CMatrix& a);

// V f(lambda) V† for Hermitian a. f may map real eigenvalues to complex
// scalars (e.g. lambda -> exp(-i c lambda)).
CMatrix matfun_hermitian(const CMatrix& a, const std::function<Complex(double)>& f);

// Singular values of a real 3x3 matrix, descending, each >= 0.
std::array<double, 3> svd3(const Eigen::Matrix3d& t);

// Partial trace over every subsystem except `keep`. dims lists the per-site
// Hilbert-space dimensions whose product must equal rho's dimension; keep is
// a 0-based site index. Trace is preserved.
CMatrix partial_trace(const CMatrix& rho, const std::vector<int>& dims, int keep);

// Trace distance (1/2)||a - b||_1 for Hermitian a, b (density operators).
double trace_distance(const CMatrix& a, const CMatrix& b);

} // namespace qllg
