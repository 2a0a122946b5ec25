#ifndef SLMAT_LINALG_HPP
#define SLMAT_LINALG_HPP

#include "slmat/types.hpp"

namespace slmat {

/// (A + A†)/2.
CMat hermitize(const CMat& A);

/// Largest singular value; 0 for empty matrices.
double smax(const CMat& A);

/// Smallest singular value.
double smin(const CMat& A);

/// Number of singular values strictly above `threshold`.
int rank_above(const CMat& A, double threshold);

/// True when A is Hermitian within `tol` (entrywise, relative to max(1, |A|)).
bool is_hermitian(const CMat& A, double tol = 1e-12);

/// True when A = A† = A² within `tol`.
bool is_orthogonal_projector(const CMat& A, double tol = 1e-12);

/// Orthogonal projector onto the column space of A. Columns with singular
/// value below rel_threshold * smax(A) are treated as zero; A ~ 0 maps to 0.
CMat projector_onto_range(const CMat& A, double rel_threshold = 1e-8);

/// Snap a Hermitian near-projector to the closest projector by rounding
/// eigenvalues to {0, 1}. Returns the projector and the distance
/// max_i |eig_i - round(eig_i)|. Eigenvalues farther than `max_round`
/// from both 0 and 1 raise NoConvergence.
struct ProjectorSnap {
    CMat projector;
    double distance;
};
ProjectorSnap snap_to_projector(const CMat& A, double max_round = 0.3);

/// dim(Ran P ∩ Ran Q) for orthogonal projectors P, Q.
int range_intersection_dim(const CMat& P, const CMat& Q, double threshold = 1e-8);

/// dim(Ker P ∩ Ker Q) for orthogonal projectors P, Q.
int kernel_intersection_dim(const CMat& P, const CMat& Q, double threshold = 1e-8);

}  // namespace slmat

#endif
