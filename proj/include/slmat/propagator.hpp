#ifndef SLMAT_PROPAGATOR_HPP
#define SLMAT_PROPAGATOR_HPP

#include <vector>

#include "slmat/problem.hpp"
#include "slmat/types.hpp"

namespace slmat {

/// Pair (Y, Y^[1]) at position x, where Y^[1] = Y' - sigma Y. When
/// log_scale != 0 the true values are exp(log_scale) * (Y, Y1); propagation
/// deep in the complex plane rescales internally to stay finite.
struct PropagatorState {
    double x = 0.0;
    CMat Y, Y1;
    double log_scale = 0.0;
};

struct PropagateOptions {
    bool rescale = false;   // track log_scale instead of overflowing
    double exp_cap = 50.0;  // |Im sqrt(lambda)| * |to - from| cap when rescale is off
};

/// Integrates the first-order system Y' = sigma Y + Y^[1],
/// (Y^[1])' = -sigma Y^[1] - sigma^2 Y - lambda Y from state.x to to_x
/// (either direction). Each cell of constant sigma is advanced by the exact
/// closed form, so piecewise-constant sigma incurs no discretization error.
/// Throws ExpOverflow when rescaling is off and the exponential growth
/// bound exceeds exp_cap.
PropagatorState propagate(const ProblemL& problem, Complex lambda, double to_x,
                          PropagatorState state, const PropagateOptions& opts = {});

/// phi: the solution with phi(0) = T1, phi^[1](0) = T1p + H1 (V1(phi) = 0),
/// propagated to x = pi.
PropagatorState phi_at_pi(const ProblemL& problem, Complex lambda);

/// psi: psi(0) = -T1p, psi^[1](0) = T1 (V1perp(psi) = 0, V1(psi) = I).
PropagatorState psi_at_pi(const ProblemL& problem, Complex lambda);

/// Psi: Psi(pi) = T2, Psi^[1](pi) = T2p + H2, propagated backward to x = 0.
PropagatorState Psi_at_zero(const ProblemL& problem, Complex lambda);

PropagatorState phi_initial(const ProblemL& problem);
PropagatorState psi_initial(const ProblemL& problem);

/// Matrix Wronskian <Y^dag, Z> = Y^dag Z^[1] - (Y^[1])^dag Z of two states at
/// a common x (Y conventionally propagated at conj(lambda)). Uses the raw
/// (scaled) matrices; the caller accounts for log_scale factors.
CMat wronskian(const PropagatorState& Y, const PropagatorState& Z);

/// Y-values of the solution with the given initial state at the sorted
/// positions xs (ascending, within [0, pi]).
std::vector<CMat> solution_samples(const ProblemL& problem, Complex lambda,
                                   PropagatorState state, const std::vector<double>& xs);

}  // namespace slmat

#endif
