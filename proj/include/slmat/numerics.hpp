#ifndef SLMAT_NUMERICS_HPP
#define SLMAT_NUMERICS_HPP

#include <functional>
#include <vector>

#include "slmat/types.hpp"

namespace slmat {

/// Minimizes a unimodal f on [a, b] by golden-section search until the
/// bracket is shorter than xtol. Returns the midpoint of the final bracket.
double golden_section_min(const std::function<double(double)>& f, double a, double b,
                          double xtol);

/// (1/(2 pi i)) * contour integral of F over the circle |z - center| = radius,
/// trapezoid rule with `nodes` points (spectrally accurate for meromorphic
/// integrands away from poles).
CMat contour_mean(const std::function<CMat(Complex)>& F, Complex center, double radius,
                  int nodes);

/// cot(z), stable for large |Im z|.
Complex stable_cot(Complex z);

/// Gauss-Legendre nodes/weights on [a, b].
struct GaussRule {
    std::vector<double> x;
    std::vector<double> w;
};
GaussRule gauss_legendre(int n, double a, double b);

/// Least-squares fit of sum_j coeff[j] * basis[j](t) to matrix samples:
/// returns the coefficient matrices. `samples` pairs (t_i, M_i).
std::vector<CMat> fit_matrix_series(const std::vector<std::pair<double, CMat>>& samples,
                                    const std::vector<std::function<double(double)>>& basis);

/// Runs fn(i) for i in [0, n) on up to `threads` workers (deterministic:
/// each index writes only its own results).
void parallel_for(int n, int threads, const std::function<void(int)>& fn);

/// Global worker cap used by the CLI --threads flag (default 1).
int worker_threads();
void set_worker_threads(int n);

}  // namespace slmat

#endif
