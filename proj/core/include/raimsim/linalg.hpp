#pragma once

#include <complex>
#include <Eigen/Dense>

namespace raimsim {

using cplx = std::complex<double>;
using Eigen::MatrixXd;
using Eigen::MatrixXcd;
using Eigen::VectorXd;
using Eigen::VectorXcd;

// exp(-i H t) for real symmetric H
MatrixXcd expm_hermitian(const MatrixXd& h, double t);
MatrixXcd expm_hermitian(const MatrixXcd& h, double t);

// max_ij |U^dagger U - 1|_ij
double unitarity_defect(const MatrixXcd& u);
// max_ij |V^T V - 1|_ij for a real matrix with orthonormal columns
double orthonormality_defect(const MatrixXd& v);
double symmetry_defect(const MatrixXd& m);

// Real symmetric eigendecomposition with eigenvalues ascending.
// Throws NumericalError if Eigen reports failure.
Eigen::SelfAdjointEigenSolver<MatrixXd> eigh(const MatrixXd& m, bool vectors = true);

// psi <- exp(-i H dt) psi via a truncated Taylor series with scaling.
// Terms are summed until their norm drops below tol * |psi|.
void expm_action(const MatrixXcd& h, double dt, VectorXcd& psi, double tol = 1e-15);

} // namespace raimsim
