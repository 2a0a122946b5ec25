#ifndef SLMAT_BASIS_HPP
#define SLMAT_BASIS_HPP

#include <utility>
#include <vector>

#include "slmat/problem.hpp"
#include "slmat/spectral_data.hpp"
#include "slmat/types.hpp"

namespace slmat {

struct BasisEntry {
    SpectralIndex index;
    Complex rho;                // sqrt(lambda); the 0 branch uses (T1 + x T1p)
    bool rho_is_zero = false;
    CVec E;                     // unit vector in Ran B of its group
    std::vector<CVec> samples;  // values on the uniform grid
};

/// Vector sequence sampled on a uniform (K+1)-point grid over [0, pi];
/// inner products are composite trapezoid sums on that grid.
struct BasisFamily {
    int m = 1;
    int K = 0;
    std::vector<double> xs;
    std::vector<BasisEntry> entries;

    double inner(const BasisEntry& a, const BasisEntry& b) const;  // Re <a, b> not taken: complex
    Complex inner_c(const BasisEntry& a, const BasisEntry& b) const;
};

/// Per group: eigenvectors of B_nk = (pi/2) T_nk^{-1} alpha_nk T_nk^{-1} for
/// eigenvalues above 1e-8 |B| (exactly multiplicity many, else RankMismatch),
/// in descending eigenvalue order, phase fixed so the component of largest
/// modulus is real positive.
std::vector<std::pair<SpectralIndex, CVec>> select_E(const SpectralDataSet& data,
                                                     const CMat& T1);

/// Y_nk(x) = (cos(rho x) T1 + sin(rho x) T1p) E_nk, or (T1 + x T1p) E_nk when
/// rho = 0, sampled on the uniform grid (K >= 1024).
BasisFamily build_Y(const SpectralDataSet& data, const CMat& T1, int K);

/// Extreme eigenvalues of the Gram matrix of the entries with n <= N.
std::pair<double, double> frame_bounds(const BasisFamily& family, int N);

struct ClosenessReport {
    double total = 0.0;              // sum over entries of |Y - Y_ref|^2
    std::vector<double> per_n;       // indexed by n
    double tail_previous = 0.0;
    double tail_recent = 0.0;
    bool cauchy_pass = true;
};

/// Quadratic closeness sum of two families over a matching index set
/// (IndexMismatch otherwise).
ClosenessReport quadratic_closeness(const BasisFamily& family, const BasisFamily& reference);

/// The eigenfunction sequence phi(x, lambda_nk) T_nk E_nk sampled like build_Y;
/// coincides with build_Y exactly in the zero case.
BasisFamily eigenfunction_family(const ProblemL& problem, const SpectralDataSet& data, int K);

}  // namespace slmat

#endif
