#ifndef SLMAT_TESTS_SUPPORT_HPP
#define SLMAT_TESTS_SUPPORT_HPP

#include <random>

#include "slmat/problem.hpp"
#include "slmat/types.hpp"

namespace slmat::testing {

inline CMat zeros(int m) { return CMat::Zero(m, m); }
inline CMat eye(int m) { return CMat::Identity(m, m); }

inline CMat ones_projector(int m) {
    return CMat::Constant(m, m, Complex(1.0 / m, 0.0));
}

inline double matdiff(const CMat& A, const CMat& B) {
    return (A - B).cwiseAbs().maxCoeff();
}

inline BoundaryData boundary(const CMat& T1, const CMat& T2) {
    int m = static_cast<int>(T1.rows());
    return validate_boundary(T1, T2, zeros(m), zeros(m), m);
}

// m = 1, T1 = T2 = 0 (Dirichlet-Dirichlet).
inline ProblemL scalar_dirichlet(int n_cells = 1) {
    return make_problem(SigmaField::zero(1, n_cells), boundary(zeros(1), zeros(1)));
}

// m = 1, T1 = T2 = 1 (Robin-Robin with H = 0).
inline ProblemL scalar_robin(int n_cells = 1) {
    return make_problem(SigmaField::zero(1, n_cells), boundary(eye(1), eye(1)));
}

// m = 2, T1 = diag(1, 0), T2 = diag(0, 1).
inline BoundaryData mixed2_boundary() {
    CMat T1 = zeros(2), T2 = zeros(2);
    T1(0, 0) = 1.0;
    T2(1, 1) = 1.0;
    return boundary(T1, T2);
}
inline ProblemL mixed2(int n_cells = 1) {
    return make_problem(SigmaField::zero(2, n_cells), mixed2_boundary());
}

// m = 3 star graph: T1 = 0, T2 = ones/3.
inline BoundaryData star3_boundary() { return boundary(zeros(3), ones_projector(3)); }
inline ProblemL star3(int n_cells = 1) {
    return make_problem(SigmaField::zero(3, n_cells), star3_boundary());
}

inline CMat random_hermitian(int m, std::mt19937& rng, double norm_cap = 1.0) {
    std::normal_distribution<double> dist(0.0, 1.0);
    CMat A(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) A(i, j) = Complex(dist(rng), dist(rng));
    CMat H = 0.5 * (A + A.adjoint());
    double nrm = H.cwiseAbs().maxCoeff() * m;
    if (nrm > norm_cap) H *= norm_cap / nrm;
    return H;
}

inline SigmaField random_sigma(int m, int n_cells, std::mt19937& rng, double amplitude = 1.0) {
    SigmaField s;
    s.m = m;
    for (int c = 0; c < n_cells; ++c) s.cells.push_back(random_hermitian(m, rng, amplitude));
    return s;
}

// Orthogonal projector of the given rank from a random unitary.
inline CMat random_projector(int m, int rank, std::mt19937& rng) {
    std::normal_distribution<double> dist(0.0, 1.0);
    CMat A(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) A(i, j) = Complex(dist(rng), dist(rng));
    Eigen::HouseholderQR<CMat> qr(A);
    CMat Q = qr.householderQ();
    CMat P = CMat::Zero(m, m);
    for (int i = 0; i < rank; ++i) P += Q.col(i) * Q.col(i).adjoint();
    return 0.5 * (P + P.adjoint());
}

}  // namespace slmat::testing

#endif
