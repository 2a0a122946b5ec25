#include "slmat/propagator.hpp"

#include <algorithm>
#include <cmath>

namespace slmat {

namespace {

// sin(z)/z, series near 0.
Complex sinc(Complex z) {
    if (std::abs(z) < 1e-4) {
        Complex z2 = z * z;
        return 1.0 - z2 / 6.0 + z2 * z2 / 120.0;
    }
    return std::sin(z) / z;
}

// Advances (Y, Yd=Y') by a signed step h under -Y'' = lambda Y.
void trig_step(Complex lambda, double h, CMat& Y, CMat& Yd) {
    Complex rho = std::sqrt(lambda);
    Complex z = rho * h;
    Complex c = std::cos(z);
    Complex s = h * sinc(z);  // sin(rho h)/rho
    CMat Ynew = c * Y + s * Yd;
    CMat Ydnew = -lambda * s * Y + c * Yd;
    Y = std::move(Ynew);
    Yd = std::move(Ydnew);
}

}  // namespace

PropagatorState propagate(const ProblemL& problem, Complex lambda, double to_x,
                          PropagatorState state, const PropagateOptions& opts) {
    const SigmaField& sigma = problem.sigma;
    const int n = sigma.cell_count();
    const double w = sigma.cell_width();
    double x = state.x;
    double span = std::abs(to_x - x);

    if (!opts.rescale) {
        double tau = std::abs(std::sqrt(lambda).imag());
        if (tau * span > opts.exp_cap)
            throw numerical_error("ExpOverflow",
                                  "|Im sqrt(lambda)| * span exceeds the cap; "
                                  "request rescaling");
    }

    const double eps = 1e-14 * kPi;
    int guard = 2 * n + 4;
    while (std::abs(to_x - x) > eps && guard-- > 0) {
        int cell;
        double xe;
        if (to_x > x) {
            cell = std::min(static_cast<int>(std::floor(x / w + 1e-9)), n - 1);
            xe = std::min((cell + 1) * w, to_x);
        } else {
            cell = std::max(static_cast<int>(std::ceil(x / w - 1e-9)) - 1, 0);
            xe = std::max(cell * w, to_x);
        }
        const CMat& sc = sigma.cells[static_cast<size_t>(cell)];
        // True derivative at the cell edge, step, then back to the quasi-derivative.
        CMat Yd = sc * state.Y + state.Y1;
        trig_step(lambda, xe - x, state.Y, Yd);
        state.Y1 = Yd - sc * state.Y;
        x = xe;

        if (opts.rescale) {
            double s = std::max(state.Y.cwiseAbs().maxCoeff(), state.Y1.cwiseAbs().maxCoeff());
            if (s > 1e100 || (s > 0.0 && s < 1e-100)) {
                state.Y /= s;
                state.Y1 /= s;
                state.log_scale += std::log(s);
            }
        }
    }
    state.x = to_x;
    return state;
}

PropagatorState phi_initial(const ProblemL& problem) {
    const BoundaryData& b = problem.boundary;
    return {0.0, b.T1, b.T1p() + b.H1, 0.0};
}

PropagatorState psi_initial(const ProblemL& problem) {
    const BoundaryData& b = problem.boundary;
    return {0.0, -b.T1p(), b.T1, 0.0};
}

PropagatorState phi_at_pi(const ProblemL& problem, Complex lambda) {
    return propagate(problem, lambda, kPi, phi_initial(problem), {.rescale = true});
}

PropagatorState psi_at_pi(const ProblemL& problem, Complex lambda) {
    return propagate(problem, lambda, kPi, psi_initial(problem), {.rescale = true});
}

PropagatorState Psi_at_zero(const ProblemL& problem, Complex lambda) {
    const BoundaryData& b = problem.boundary;
    PropagatorState init{kPi, b.T2, b.T2p() + b.H2, 0.0};
    return propagate(problem, lambda, 0.0, std::move(init), {.rescale = true});
}

CMat wronskian(const PropagatorState& Y, const PropagatorState& Z) {
    return Y.Y.adjoint() * Z.Y1 - Y.Y1.adjoint() * Z.Y;
}

std::vector<CMat> solution_samples(const ProblemL& problem, Complex lambda,
                                   PropagatorState state, const std::vector<double>& xs) {
    std::vector<CMat> out;
    out.reserve(xs.size());
    for (double x : xs) {
        state = propagate(problem, lambda, x, std::move(state), {.rescale = true});
        out.push_back(std::exp(state.log_scale) * state.Y);
    }
    return out;
}

}  // namespace slmat
