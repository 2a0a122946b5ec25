#include "slmat/problem.hpp"

#include <algorithm>
#include <cmath>

#include "slmat/linalg.hpp"

namespace slmat {

int SigmaField::cell_at(double x) const {
    int n = cell_count();
    int i = static_cast<int>(std::floor(x / kPi * n));
    return std::clamp(i, 0, n - 1);
}

SigmaField SigmaField::zero(int m, int n_cells) {
    SigmaField s;
    s.m = m;
    s.cells.assign(static_cast<size_t>(n_cells), CMat::Zero(m, m));
    return s;
}

SigmaField SigmaField::refined(int factor) const {
    SigmaField s;
    s.m = m;
    s.cells.reserve(cells.size() * static_cast<size_t>(factor));
    for (const CMat& c : cells)
        for (int j = 0; j < factor; ++j) s.cells.push_back(c);
    return s;
}

SigmaField SigmaField::shifted(const CMat& c) const {
    SigmaField s = *this;
    for (CMat& cell : s.cells) cell += c;
    return s;
}

void SigmaField::validate(double tol) const {
    if (cells.empty()) throw validation_error("BadSigma", "sigma needs at least one cell");
    for (const CMat& c : cells) {
        if (c.rows() != m || c.cols() != m)
            throw validation_error("BadSigma", "sigma cell dimension mismatch");
        if (!is_hermitian(c, tol))
            throw validation_error("BadSigma", "sigma cell is not Hermitian");
    }
}

BoundaryData validate_boundary(const CMat& T1, const CMat& T2, const CMat& H1, const CMat& H2,
                               int m) {
    auto check_dims = [m](const CMat& A, const char* name) {
        if (A.rows() != m || A.cols() != m)
            throw validation_error("BadDimension", std::string(name) + " is not m x m");
    };
    check_dims(T1, "T1");
    check_dims(T2, "T2");
    check_dims(H1, "H1");
    check_dims(H2, "H2");

    if (!is_orthogonal_projector(T1, 1e-12))
        throw validation_error("NotProjector", "T1 is not an orthogonal projector");
    if (!is_orthogonal_projector(T2, 1e-12))
        throw validation_error("NotProjector", "T2 is not an orthogonal projector");

    auto check_h = [](const CMat& T, const CMat& H, const char* name) {
        if (!is_hermitian(H, 1e-12))
            throw validation_error("BadH", std::string(name) + " is not Hermitian");
        double scale = std::max(1.0, H.cwiseAbs().maxCoeff());
        if ((H - T * H * T).cwiseAbs().maxCoeff() > 1e-12 * scale)
            throw validation_error("BadH", std::string(name) + " violates H = T H T");
    };
    check_h(T1, H1, "H1");
    check_h(T2, H2, "H2");

    BoundaryData b;
    b.m = m;
    b.T1 = T1;
    b.T2 = T2;
    b.H1 = H1;
    b.H2 = H2;
    return b;
}

ProblemL make_problem(SigmaField sigma, BoundaryData boundary) {
    sigma.validate();
    if (sigma.m != boundary.m)
        throw validation_error("BadDimension", "sigma and boundary dimensions differ");
    ProblemL p;
    p.p = range_intersection_dim(boundary.T1, boundary.T2);
    p.p_perp = kernel_intersection_dim(boundary.T1, boundary.T2);
    p.sigma = std::move(sigma);
    p.boundary = std::move(boundary);
    return p;
}

ProblemL normalize_H1(const ProblemL& problem) {
    const BoundaryData& b = problem.boundary;
    if (b.H1.cwiseAbs().maxCoeff() == 0.0) return problem;
    BoundaryData nb = b;
    nb.H1 = CMat::Zero(b.m, b.m);
    nb.H2 = b.H2 - b.T2 * b.H1 * b.T2;
    return make_problem(problem.sigma.shifted(b.H1), nb);
}

IndexSet index_set(const BoundaryData& boundary, int n_max) {
    IndexSet out;
    out.p = range_intersection_dim(boundary.T1, boundary.T2);
    out.p_perp = kernel_intersection_dim(boundary.T1, boundary.T2);
    for (int k = out.p_perp + 1; k <= boundary.m; ++k) out.indices.push_back({0, k});
    for (int n = 1; n <= n_max; ++n)
        for (int k = 1; k <= boundary.m; ++k) out.indices.push_back({n, k});
    return out;
}

}  // namespace slmat
