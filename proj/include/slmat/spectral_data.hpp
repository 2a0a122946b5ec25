#ifndef SLMAT_SPECTRAL_DATA_HPP
#define SLMAT_SPECTRAL_DATA_HPP

#include <vector>

#include "slmat/problem.hpp"
#include "slmat/types.hpp"

namespace slmat {

struct SpectralEntry {
    SpectralIndex index;
    double lambda = 0.0;
    CMat alpha;            // full group weight, shared by every member of a group
    int multiplicity = 1;  // group size
};

/// Indexed spectral data {lambda_nk, alpha_nk} with the partition of entries
/// into maximal equal-lambda groups. Entries are sorted by (n, k) and lambda
/// is non-decreasing along that order.
struct SpectralDataSet {
    int m = 1;
    std::vector<SpectralEntry> entries;
    std::vector<std::vector<int>> groups;  // entry indices, each group ascending

    int n_max() const;
    /// alpha' of entry i: the group weight on the first index of its group,
    /// zero on the others.
    CMat alpha_prime(int i) const;
    /// Entry index for (n, k), or -1.
    int find(SpectralIndex idx) const;
    /// Sum of alpha'_{ns} over the group containing (n, k) (equals the group
    /// weight when (n, k) is present).
    CMat alpha_group(SpectralIndex idx) const;

    /// Rebuilds `groups` from equal-lambda runs: consecutive entries are
    /// grouped when |lambda_i - lambda_j| <= tol * (1 + |lambda|).
    void regroup(double rel_tol = 1e-6);
    /// Checks ordering, grouping consistency, Hermitian PSD weights.
    void validate() const;
};

}  // namespace slmat

#endif
