#include "qllg/linalg.hpp"

#include <cmath>
#include <stdexcept>

namespace qllg {

CMatrix dag(const CMatrix& a) { return a.adjoint(); }

static void check_same_square(const CMatrix& a, const CMatrix& b, const char* op) {
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
        throw std::invalid_argument(std::string(op) + ": need equal-dimension square matrices, got " +
                                    std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " and " +
                                    std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
}

CMatrix commutator(const CMatrix& a, const CMatrix& b) {
    check_same_square(a, b, "commutator");
    return a * b - b * a;
}

CMatrix anticommutator(const CMatrix& a, const CMatrix& b) {
    check_same_square(a, b, "anticommutator");
    return a * b + b * a;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

double max_abs(const CMatrix& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

double fro_norm(const CMatrix& a) { return a.norm(); }

double hermiticity_defect(const CMatrix& a) { return max_abs(a - a.adjoint()); }

EigDecomposition eig_hermitian(const CMatrix& a) {
    if (a.rows() != a.cols())
        throw std::invalid_argument("eig_hermitian: matrix must be square");
    CMatrix sym = 0.5 * (a + a.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eig_hermitian: eigensolver failed to converge");

    EigDecomposition d;
    d.values = solver.eigenvalues(); // ascending by Eigen's contract
    d.vectors = solver.eigenvectors();

    // Deterministic phase: rotate each column so its first nonnegligible
    // component is positive real. Columns are unit vectors, so a relative
    // threshold on the column max is safe.
    for (Eigen::Index c = 0; c < d.vectors.cols(); ++c) {
        auto col = d.vectors.col(c);
        const double cutoff = 1e-12 * col.cwiseAbs().maxCoeff();
        for (Eigen::Index r = 0; r < col.size(); ++r) {
            const double mag = std::abs(col(r));
            if (mag > cutoff) {
                col *= std::conj(col(r)) / mag;
                break;
            }
        }
    }
    return d;
}

CMatrix matfun_hermitian(const CMatrix& a, const std::function<Complex(double)>& f) {
    EigDecomposition d = eig_hermitian(a);
    CVector fv(d.values.size());
    for (Eigen::Index i = 0; i < d.values.size(); ++i) fv(i) = f(d.values(i));
    return d.vectors * fv.asDiagonal() * d.vectors.adjoint();
}

std::array<double, 3> svd3(const Eigen::Matrix3d& t) {
    Eigen::JacobiSVD<Eigen::Matrix3d> svd(t);
    const auto& s = svd.singularValues(); // descending by Eigen's contract
    return {s(0), s(1), s(2)};
}

CMatrix partial_trace(const CMatrix& rho, const std::vector<int>& dims, int keep) {
    Eigen::Index total = 1;
    for (int d : dims) total *= d;
    if (rho.rows() != total || rho.cols() != total)
        throw std::invalid_argument("partial_trace: dimension product " + std::to_string(total) +
                                    " does not match matrix dimension " + std::to_string(rho.rows()));
    if (keep < 0 || keep >= static_cast<int>(dims.size()))
        throw std::invalid_argument("partial_trace: site index " + std::to_string(keep) + " out of range");

    const int dk = dims[keep];
    // Row-major strides of the composite index (i_0, i_1, ..., i_{n-1}).
    std::vector<Eigen::Index> stride(dims.size());
    Eigen::Index acc = 1;
    for (int site = static_cast<int>(dims.size()) - 1; site >= 0; --site) {
        stride[site] = acc;
        acc *= dims[site];
    }
    const Eigen::Index env = total / dk; // dimension of everything traced out

    CMatrix out = CMatrix::Zero(dk, dk);
    for (int a = 0; a < dk; ++a) {
        for (int b = 0; b < dk; ++b) {
            Complex sum = 0.0;
            // Enumerate the environment's basis states by mixed-radix count.
            for (Eigen::Index e = 0; e < env; ++e) {
                Eigen::Index row = 0, col = 0, rem = e;
                for (int site = static_cast<int>(dims.size()) - 1; site >= 0; --site) {
                    if (site == keep) continue;
                    const Eigen::Index digit = rem % dims[site];
                    rem /= dims[site];
                    row += digit * stride[site];
                    col += digit * stride[site];
                }
                sum += rho(row + a * stride[keep], col + b * stride[keep]);
            }
            out(a, b) = sum;
        }
    }
    return out;
}

double trace_distance(const CMatrix& a, const CMatrix& b) {
    EigDecomposition d = eig_hermitian(a - b);
    return 0.5 * d.values.cwiseAbs().sum();
}

} // namespace qllg
