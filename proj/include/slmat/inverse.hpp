#ifndef SLMAT_INVERSE_HPP
#define SLMAT_INVERSE_HPP

#include <utility>
#include <vector>

#include "slmat/asymptotics.hpp"
#include "slmat/problem.hpp"
#include "slmat/spectral_data.hpp"
#include "slmat/types.hpp"

namespace slmat {

struct WeylSeriesConfig {
    double omega = 1.0;  // regularizer beta(lambda) = lambda / (lambda^2 + omega^2)
    int n_max = 0;       // series truncation (0 = use every entry in the dataset)
    double rho_star_start = 0.26;  // first rho* candidate for recover_T2
};

double beta_regularizer(double lambda, double omega);

/// Truncated regularized Weyl series
/// M_N(lambda) = sum over (n, k), n <= N of (1/(lambda - lambda_nk) +
/// beta(lambda_nk)) alpha'_nk, summed in ascending (n, k) order.
/// Raises PoleHit when lambda collides with a data point.
CMat weyl_series(const SpectralDataSet& data, const WeylSeriesConfig& cfg, Complex lambda);

/// The additive constant of the zero-case series: C0* = lim_{tau -> +inf}
/// (tau T1p - M0(-tau^2)), extrapolated from evaluations at a fixed tau
/// ladder with a truncation-aware basis. Expects genuine zero-case data.
CMat C0_star(const SpectralDataSet& zero_data, const WeylSeriesConfig& cfg);

struct RecoveredT1 {
    CMat T1;
    CMat T1p;
    double snap_distance = 0.0;
};

/// T1p as the n^2 coefficient of (pi/2) sum_k alpha'_nk, fitted over the top
/// half of the n-blocks and snapped to a projector.
RecoveredT1 recover_T1(const SpectralDataSet& data);

/// Canonical solution (A, B) = (E + tI, I - tE) of (tA + B)^{-1}(A - tB) = E;
/// unique up to a nonsingular left factor. t = +-i raises SingularCombination.
std::pair<CMat, CMat> solve_AB(const CMat& E, Complex t);

struct RecoveredT2 {
    CMat T2;
    double rho_star = 0.0;
    double range_residual = 0.0;  // discarded singular mass of D*, relative
};

/// Steps 2-6 of the projector-recovery algorithm: synthesize the zero-case
/// series from (r, A, T1), evaluate E0(rho*) through the regularized series
/// with its additive constant, build D* = (E0 + tan(rho* pi) I) T1 +
/// (tan(rho* pi) E0 - I) T1p and project onto Ran D*^dag. rho* starts at 0.26
/// and shifts by +0.07 away from the pattern n + r_k (RhoStarUnusable when
/// no admissible point exists).
RecoveredT2 recover_T2(const ExtractedRA& ra, const CMat& T1, const WeylSeriesConfig& cfg = {});

struct RecoveredProjectors {
    CMat T1;
    CMat T2;
    double t1_snap = 0.0;
    double t2_residual = 0.0;
    double rho_star = 0.0;
};

/// Full projector recovery from spectral data (steps 1-6).
RecoveredProjectors algorithm_T12(const SpectralDataSet& data, const WeylSeriesConfig& cfg = {});

/// The spectral-data-preserving transform: sigma -> sigma - H1d,
/// H2 -> H2 + T2 H1d T2, with H1d = H1d^dag = T1p H1d T1p (else BadDiamond).
ProblemL apply_transform(const ProblemL& problem, const CMat& H1_diamond);

/// Exact zero-case Weyl matrix from a synthesized root/projector model
/// (series summed in closed form); the independent cross-check route for
/// recover_T2.
CMat model_M0(const ExtractedRA& ra, const CMat& T1, Complex lambda);

}  // namespace slmat

#endif
