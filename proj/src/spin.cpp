#include "qllg/spin.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qllg {

bool SpinSystem::valid_spin(double s) {
    if (s <= 0.0) return false;
    const double twice = 2.0 * s;
    return std::abs(twice - std::round(twice)) < 1e-12;
}

SpinSystem::SpinSystem(std::vector<double> s) : spins(std::move(s)) {
    for (double v : spins)
        if (!valid_spin(v))
            throw std::invalid_argument("SpinSystem: spin quantum number must be a positive half-integer, got " +
                                        std::to_string(v));
    if (dim() < 2) throw std::invalid_argument("SpinSystem: total dimension must be at least 2");
}

std::vector<int> SpinSystem::dims() const {
    std::vector<int> d(spins.size());
    for (size_t i = 0; i < spins.size(); ++i) d[i] = site_dim(static_cast<int>(i));
    return d;
}

int SpinSystem::dim() const {
    int total = 1;
    for (size_t i = 0; i < spins.size(); ++i) total *= site_dim(static_cast<int>(i));
    return total;
}

SpinOps spin_operators(double s, double hbar) {
    if (!SpinSystem::valid_spin(s))
        throw std::invalid_argument("spin_operators: invalid spin " + std::to_string(s));
    const int d = static_cast<int>(2.0 * s + 1.5);

    // Ladder construction in the descending-m basis: row index i holds
    // m_i = s - i. S+ |s,m> = hbar*sqrt(s(s+1) - m(m+1)) |s,m+1>.
    CMatrix sp = CMatrix::Zero(d, d);
    for (int i = 1; i < d; ++i) {
        const double m = s - i; // source projection
        sp(i - 1, i) = hbar * std::sqrt(s * (s + 1.0) - m * (m + 1.0));
    }
    CMatrix sm = sp.adjoint();

    SpinOps ops;
    ops.x = 0.5 * (sp + sm);
    ops.y = -0.5 * IM * (sp - sm);
    ops.z = CMatrix::Zero(d, d);
    for (int i = 0; i < d; ++i) ops.z(i, i) = hbar * (s - i);
    return ops;
}

CVector basis_ket(double s, double m) {
    if (!SpinSystem::valid_spin(s))
        throw std::invalid_argument("basis_ket: invalid spin " + std::to_string(s));
    const double idx = s - m;
    const int d = static_cast<int>(2.0 * s + 1.5);
    const int i = static_cast<int>(std::round(idx));
    if (std::abs(idx - i) > 1e-9 || i < 0 || i >= d)
        throw std::invalid_argument("basis_ket: projection m=" + std::to_string(m) +
                                    " invalid for s=" + std::to_string(s));
    CVector v = CVector::Zero(d);
    v(i) = 1.0;
    return v;
}

CMatrix site_operator(const SpinSystem& system, int site, const CMatrix& op) {
    if (site < 0 || site >= system.site_count())
        throw std::invalid_argument("site_operator: site index out of range");
    if (op.rows() != system.site_dim(site))
        throw std::invalid_argument("site_operator: operator dimension does not match site");
    CMatrix out = CMatrix::Identity(1, 1);
    for (int k = 0; k < system.site_count(); ++k) {
        if (k == site)
            out = kron(out, op);
        else
            out = kron(out, CMatrix::Identity(system.site_dim(k), system.site_dim(k)));
    }
    return out;
}

void validate_density(const CMatrix& rho, const std::string& what) {
    if (rho.rows() != rho.cols()) throw std::invalid_argument(what + ": not square");
    if (hermiticity_defect(rho) > 1e-10)
        throw std::invalid_argument(what + ": not Hermitian within 1e-10");
    if (std::abs(rho.trace() - Complex(1.0, 0.0)) > 1e-10)
        throw std::invalid_argument(what + ": trace differs from 1 by more than 1e-10");
    EigDecomposition d = eig_hermitian(rho);
    if (d.values.minCoeff() < -1e-8)
        throw std::invalid_argument(what + ": negative eigenvalue " + std::to_string(d.values.minCoeff()));
}

DensityOperator product_state(const SpinSystem& system, const std::vector<CVector>& kets) {
    if (static_cast<int>(kets.size()) != system.site_count())
        throw std::invalid_argument("product_state: need one ket per site");
    CVector psi = CVector::Ones(1);
    for (int k = 0; k < system.site_count(); ++k) {
        if (kets[k].size() != system.site_dim(k))
            throw std::invalid_argument("product_state: ket dimension mismatch on site " + std::to_string(k));
        CVector next(psi.size() * kets[k].size());
        for (Eigen::Index i = 0; i < psi.size(); ++i)
            next.segment(i * kets[k].size(), kets[k].size()) = psi(i) * kets[k];
        psi = next;
    }
    psi.normalize();
    DensityOperator out{system, psi * psi.adjoint()};
    validate_density(out.rho, "product_state");
    return out;
}

DensityOperator projector_state(const SpinSystem& system, const std::vector<double>& m_values) {
    if (static_cast<int>(m_values.size()) != system.site_count())
        throw std::invalid_argument("projector_state: need one m value per site");
    std::vector<CVector> kets;
    for (int k = 0; k < system.site_count(); ++k)
        kets.push_back(basis_ket(system.spins[k], m_values[k]));
    return product_state(system, kets);
}

static CVector bell_ket(Bell which) {
    const double r = 1.0 / std::sqrt(2.0);
    CVector v = CVector::Zero(4); // basis |uu>, |ud>, |du>, |dd>
    switch (which) {
        case Bell::PhiPlus:  v(0) = r; v(3) = r;  break;
        case Bell::PhiMinus: v(0) = r; v(3) = -r; break;
        case Bell::PsiPlus:  v(1) = r; v(2) = r;  break;
        case Bell::PsiMinus: v(1) = r; v(2) = -r; break;
    }
    return v;
}

DensityOperator bell_state(Bell which) {
    SpinSystem sys({0.5, 0.5});
    CVector v = bell_ket(which);
    DensityOperator out{sys, v * v.adjoint()};
    validate_density(out.rho, "bell_state");
    return out;
}

DensityOperator werner_state(Bell which, double p) {
    if (p < 0.0 || p > 1.0)
        throw std::invalid_argument("werner_state: mixing parameter p=" + std::to_string(p) +
                                    " outside [0,1]");
    SpinSystem sys({0.5, 0.5});
    CVector v = bell_ket(which);
    CMatrix rho = (1.0 - p) / 4.0 * CMatrix::Identity(4, 4) + p * (v * v.adjoint());
    DensityOperator out{sys, rho};
    validate_density(out.rho, "werner_state");
    return out;
}

static std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : text) {
        if (c == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

static Bell parse_bell_label(const std::string& label) {
    if (label == "phi+") return Bell::PhiPlus;
    if (label == "phi-") return Bell::PhiMinus;
    if (label == "psi+") return Bell::PsiPlus;
    if (label == "psi-") return Bell::PsiMinus;
    throw std::invalid_argument("unknown Bell state '" + label + "' (want phi+|phi-|psi+|psi-)");
}

DensityOperator parse_state(const std::string& text, const SpinSystem& system) {
    const auto colon = text.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("state '" + text + "': expected <kind>:<args>");
    const std::string kind = text.substr(0, colon);
    const std::string args = text.substr(colon + 1);

    if (kind == "ket") {
        std::vector<CVector> kets;
        const auto tokens = split(args, ',');
        if (static_cast<int>(tokens.size()) != system.site_count())
            throw std::invalid_argument("state '" + text + "': need one token per site (" +
                                        std::to_string(system.site_count()) + " sites)");
        for (int k = 0; k < system.site_count(); ++k) {
            if (system.spins[k] != 0.5)
                throw std::invalid_argument("state '" + text + "': ket grammar is for spin-1/2 sites; "
                                            "use projector:<m,...> for higher spin");
            if (tokens[k] == "up")
                kets.push_back(basis_ket(0.5, 0.5));
            else if (tokens[k] == "down")
                kets.push_back(basis_ket(0.5, -0.5));
            else
                throw std::invalid_argument("state '" + text + "': unknown ket token '" + tokens[k] +
                                            "' (want up|down)");
        }
        return product_state(system, kets);
    }
    if (kind == "projector") {
        const auto tokens = split(args, ',');
        std::vector<double> ms;
        for (const auto& tok : tokens) {
            try {
                size_t used = 0;
                ms.push_back(std::stod(tok, &used));
                if (used != tok.size()) throw std::invalid_argument(tok);
            } catch (const std::exception&) {
                throw std::invalid_argument("state '" + text + "': bad projection value '" + tok + "'");
            }
        }
        return projector_state(system, ms);
    }
    if (kind == "bell") {
        if (!system.is_two_qubit())
            throw std::invalid_argument("state '" + text + "': Bell states need two spin-1/2 sites");
        return bell_state(parse_bell_label(args));
    }
    if (kind == "werner") {
        if (!system.is_two_qubit())
            throw std::invalid_argument("state '" + text + "': Werner states need two spin-1/2 sites");
        const auto parts = split(args, ':');
        if (parts.size() != 2)
            throw std::invalid_argument("state '" + text + "': want werner:<bell>:<p>");
        double p = 0.0;
        try {
            size_t used = 0;
            p = std::stod(parts[1], &used);
            if (used != parts[1].size()) throw std::invalid_argument(parts[1]);
        } catch (const std::exception&) {
            throw std::invalid_argument("state '" + text + "': bad mixing parameter '" + parts[1] + "'");
        }
        return werner_state(parse_bell_label(parts[0]), p);
    }
    throw std::invalid_argument("state '" + text + "': unknown kind '" + kind +
                                "' (want ket|projector|bell|werner)");
}

} // namespace qllg
