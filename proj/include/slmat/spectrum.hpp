#ifndef SLMAT_SPECTRUM_HPP
#define SLMAT_SPECTRUM_HPP

#include <string>
#include <vector>

#include "slmat/problem.hpp"
#include "slmat/propagator.hpp"
#include "slmat/spectral_data.hpp"
#include "slmat/types.hpp"

namespace slmat {

/// V1(Y) = T1 (Y^[1](0) - H1 Y(0)) - T1p Y(0), from a state at x = 0.
CMat V1_form(const PropagatorState& at0, const BoundaryData& b);

/// V1perp(Y) = T1 Y(0) + T1p Y^[1](0).
CMat V1perp_form(const PropagatorState& at0, const BoundaryData& b);

/// V2(Y) = T2 (Y^[1](pi) - H2 Y(pi)) - T2p Y(pi), from a state at x = pi.
CMat V2_form(const PropagatorState& at_pi, const BoundaryData& b);

/// Normalized characteristic matrix
/// W(rho) = -(T2/rho + T2p) V2(phi(rho^2)) (T1 + rho T1p);
/// equal to W0(rho) for sigma = 0, H = 0, and with uniformly bounded
/// conditioning away from the spectrum. Requires rho != 0.
CMat charW(const ProblemL& problem, Complex rho);

struct EigenvalueRecord {
    double lambda = 0.0;
    double rho = 0.0;  // sqrt(max(lambda, 0))
    int multiplicity = 1;
    double residual = 0.0;  // relative smin of the boundary form at lambda
};

struct LocateResult {
    std::vector<EigenvalueRecord> records;  // sorted by lambda
    std::vector<std::string> warnings;      // non-fatal NonRealResidual reports

    /// Total count including multiplicities.
    int total() const;
};

/// All eigenvalues with sqrt(lambda) in [0, rho_max] plus any negative
/// eigenvalues. Scans smin(W(rho)) on a grid (step 0.005 by default),
/// refines minima by golden section, reads multiplicities off the singular
/// values, and verifies the count against the zero-case root pattern;
/// a persistent deficit raises MissedRootSuspicion.
LocateResult locate_eigenvalues(const ProblemL& problem, double rho_max,
                                double grid_step = 0.005);

struct WeylSample {
    Complex lambda;
    CMat M;
};

/// Weyl matrix M(lambda) = -(V2(phi))^{-1} V2(psi). Raises NearPole when
/// cond(V2(phi)) exceeds 1e12.
WeylSample weyl(const ProblemL& problem, Complex lambda);

/// Weight matrix of an eigenvalue group: (1/(2 pi i)) times the contour
/// integral of M around the group. `foreign_gap` is the lambda-distance to
/// the nearest eigenvalue outside the group, `spread` the group's internal
/// lambda spread. 512 trapezoid nodes; the result is Hermitized and must be
/// PSD up to -1e-8 * |alpha| (else NotPSD).
CMat weight_matrix(const ProblemL& problem, double lambda_center, double foreign_gap,
                   double spread = 0.0);

/// Forward pipeline: locate eigenvalues up to rho ~ n_max + 1, assign (n, k)
/// indices in the Theorem-2.3 ordering, and compute one weight per group.
SpectralDataSet spectral_data(const ProblemL& problem, int n_max);

/// Residuals of the spectral-data structure relations: V2(phi) alpha = 0 and
/// the weighted phi-Gram orthogonality (quadrature with `nodes` points,
/// cell-aligned composite Simpson).
struct StructureResiduals {
    double max_val = 0.0;          // max |V2(phi(lambda)) alpha|
    double max_sym_offdiag = 0.0;  // max |alpha Gram alpha| across groups
    double max_sym_diag = 0.0;     // max |alpha Gram alpha - alpha| within groups
};
StructureResiduals orthogonality_residuals(const ProblemL& problem,
                                           const SpectralDataSet& data, int nodes = 4096);

/// max over the sample set of |M(conj(lambda))^dag - M(lambda)|.
double weyl_symmetry_residual(const ProblemL& problem, const std::vector<Complex>& lambdas);

}  // namespace slmat

#endif
