#ifndef SLMAT_ZEROCASE_HPP
#define SLMAT_ZEROCASE_HPP

#include <vector>

#include "slmat/problem.hpp"
#include "slmat/spectral_data.hpp"
#include "slmat/types.hpp"

namespace slmat {

/// W0(rho) = (T2 T1 + T2p T1p) sin(rho pi) + (T2p T1 - T2 T1p) cos(rho pi).
/// Its zeros on [0, 1) are the fractional parts r_k of the unperturbed
/// eigenvalue square roots.
CMat W0_eval(Complex rho, const BoundaryData& b);

/// U0(rho) = (T2 T1 + T2p T1p) cos(rho pi) + (T2 T1p - T2p T1) sin(rho pi).
CMat U0_eval(Complex rho, const BoundaryData& b);

/// E0(rho) = W0(rho)^{-1} U0(rho); 1-periodic, simple poles at r_k + n.
CMat E0_eval(Complex rho, const BoundaryData& b);

/// M0(lambda) = (T1 + rho T1p) E0(rho) (T1/rho + T1p), rho = sqrt(lambda).
CMat M0_eval(Complex lambda, const BoundaryData& b);

/// The m zeros of det W0 on [0, 1), sorted, repeated with multiplicity.
/// Multiplicity of an interior root is dim Ker W0; at rho = 0 it equals
/// p + p_perp. Throws RootCountMismatch when multiplicities do not sum to m.
std::vector<double> roots_r(const BoundaryData& b);

struct ResidueProjector {
    double r = 0.0;       // distinct root in [0, 1)
    int multiplicity = 1; // multiplicity of r in the root list
    CMat A;               // A = pi * Res_{rho=r} E0(rho), an orthogonal projector
};

/// Closed-form spectral model of the sigma = 0, H1 = H2 = 0 problem.
struct ZeroCaseModel {
    int m = 1;
    std::vector<double> roots;               // size m, sorted with multiplicity
    std::vector<ResidueProjector> residues;  // one per distinct root
    int p = 0;
    int p_perp = 0;

    const ResidueProjector& residue_at(double r) const;
};

/// Residue projectors A_k by trapezoid quadrature of E0 over circles around
/// each distinct root (radius = min(gap to the nearest distinct pole, 0.5)/3,
/// 256 nodes). Throws ContourTooClose when a radius falls below 1e-4.
std::vector<ResidueProjector> A_residues(const BoundaryData& b);

ZeroCaseModel zero_model(const BoundaryData& b);

/// Weight of the zero-case entry with square root rho0 = n + r:
/// (2/pi)(T1 + rho0 T1p) A (T1 + rho0 T1p), or (1/pi) T1 A T1 at rho0 = 0.
CMat zero_weight(const CMat& T1, double rho0, const CMat& A);

/// Full zero-case spectral data over J truncated at n_max.
SpectralDataSet zero_spectral_data(const BoundaryData& b, int n_max);
SpectralDataSet zero_spectral_data(const ZeroCaseModel& model, const CMat& T1, int n_max);

/// Mittag-Leffler form of E0 from the residue model alone:
/// E0(rho) = sum over distinct roots of A_r cot(pi (rho - r)).
/// Used as an independent route for cross-checks.
CMat E0_from_model(const ZeroCaseModel& model, Complex rho);

}  // namespace slmat

#endif
