#include "slmat/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>

namespace slmat {

CMat hermitize(const CMat& A) { return 0.5 * (A + A.adjoint()); }

double smax(const CMat& A) {
    if (A.size() == 0) return 0.0;
    return A.jacobiSvd().singularValues()(0);
}

double smin(const CMat& A) {
    Eigen::JacobiSVD<CMat> svd(A);
    const auto& s = svd.singularValues();
    return s(s.size() - 1);
}

int rank_above(const CMat& A, double threshold) {
    Eigen::JacobiSVD<CMat> svd(A);
    const auto& s = svd.singularValues();
    int r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > threshold) ++r;
    return r;
}

bool is_hermitian(const CMat& A, double tol) {
    double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
    return (A - A.adjoint()).cwiseAbs().maxCoeff() <= tol * scale;
}

bool is_orthogonal_projector(const CMat& A, double tol) {
    if (!is_hermitian(A, tol)) return false;
    double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
    return (A * A - A).cwiseAbs().maxCoeff() <= tol * scale;
}

CMat projector_onto_range(const CMat& A, double rel_threshold) {
    const Eigen::Index m = A.rows();
    Eigen::JacobiSVD<CMat> svd(A, Eigen::ComputeFullU);
    const auto& s = svd.singularValues();
    if (s.size() == 0 || s(0) == 0.0) return CMat::Zero(m, m);
    double cut = rel_threshold * s(0);
    CMat T = CMat::Zero(m, m);
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        if (s(i) > cut) T += svd.matrixU().col(i) * svd.matrixU().col(i).adjoint();
    }
    return hermitize(T);
}

ProjectorSnap snap_to_projector(const CMat& A, double max_round) {
    Eigen::SelfAdjointEigenSolver<CMat> eig(hermitize(A));
    const RVec& vals = eig.eigenvalues();
    const CMat& vecs = eig.eigenvectors();
    const Eigen::Index m = A.rows();
    CMat P = CMat::Zero(m, m);
    double dist = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) {
        double v = vals(i);
        double rounded = (v > 0.5) ? 1.0 : 0.0;
        double d = std::abs(v - rounded);
        if (d > max_round)
            throw numerical_error("NoConvergence",
                                  "eigenvalue " + std::to_string(v) + " too far from {0,1}");
        dist = std::max(dist, d);
        if (rounded == 1.0) P += vecs.col(i) * vecs.col(i).adjoint();
    }
    return {hermitize(P), dist};
}

int range_intersection_dim(const CMat& P, const CMat& Q, double threshold) {
    // Singular values of P*Q are cosines of the principal angles between the
    // ranges (padded with zeros); the intersection counts values at 1.
    Eigen::JacobiSVD<CMat> svd(P * Q);
    const auto& s = svd.singularValues();
    int d = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) >= 1.0 - threshold) ++d;
    return d;
}

int kernel_intersection_dim(const CMat& P, const CMat& Q, double threshold) {
    const Eigen::Index m = P.rows();
    CMat Pp = CMat::Identity(m, m) - P;
    CMat Qp = CMat::Identity(m, m) - Q;
    return range_intersection_dim(Pp, Qp, threshold);
}

}  // namespace slmat
