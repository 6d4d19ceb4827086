#include "raimsim/linalg.hpp"
#include "raimsim/error.hpp"

#include <cmath>

namespace raimsim {

MatrixXcd expm_hermitian(const MatrixXd& h, double t)
{
    auto es = eigh(h);
    const MatrixXd& v = es.eigenvectors();
    VectorXcd phase = (es.eigenvalues() * (-t)).unaryExpr([](double x) { return std::polar(1.0, x); });
    MatrixXcd vc = v.cast<cplx>();
    return (vc * phase.asDiagonal()) * vc.transpose();
}

MatrixXcd expm_hermitian(const MatrixXcd& h, double t)
{
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(h);
    if (es.info() != Eigen::Success)
        throw NumericalError("Hermitian eigensolver failed in expm_hermitian");
    VectorXcd phase = (es.eigenvalues() * (-t)).unaryExpr([](double x) { return std::polar(1.0, x); });
    const MatrixXcd& v = es.eigenvectors();
    return (v * phase.asDiagonal()) * v.adjoint();
}

double unitarity_defect(const MatrixXcd& u)
{
    MatrixXcd d = u.adjoint() * u;
    d.diagonal().array() -= 1.0;
    return d.cwiseAbs().maxCoeff();
}

double orthonormality_defect(const MatrixXd& v)
{
    MatrixXd d = v.transpose() * v;
    d.diagonal().array() -= 1.0;
    return d.cwiseAbs().maxCoeff();
}

double symmetry_defect(const MatrixXd& m) { return (m - m.transpose()).cwiseAbs().maxCoeff(); }

Eigen::SelfAdjointEigenSolver<MatrixXd> eigh(const MatrixXd& m, bool vectors)
{
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(m, vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw NumericalError("symmetric eigensolver did not converge");
    return es;
}

void expm_action(const MatrixXcd& h, double dt, VectorXcd& psi, double tol)
{
    // split the step so that each sub-step has |H dt| <= 1
    double norm = h.cwiseAbs().rowwise().sum().maxCoeff() * std::abs(dt);
    int substeps = std::max(1, static_cast<int>(std::ceil(norm)));
    double h_dt = dt / substeps;
    const double psi_norm = psi.norm();
    for (int s = 0; s < substeps; ++s) {
        VectorXcd term = psi;
        VectorXcd acc = psi;
        for (int k = 1; k < 60; ++k) {
            term = (h * term) * cplx(0.0, -h_dt / k);
            acc += term;
            if (term.norm() < tol * psi_norm)
                break;
        }
        psi = acc;
    }
}

} // namespace raimsim
