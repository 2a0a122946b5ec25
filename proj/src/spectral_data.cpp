#include "slmat/spectral_data.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "slmat/linalg.hpp"

namespace slmat {

int SpectralDataSet::n_max() const {
    int n = 0;
    for (const auto& e : entries) n = std::max(n, e.index.n);
    return n;
}

CMat SpectralDataSet::alpha_prime(int i) const {
    // Groups are consecutive index runs in ascending order.
    auto it = std::upper_bound(groups.begin(), groups.end(), i,
                               [](int v, const std::vector<int>& g) { return v < g.front(); });
    if (it != groups.begin()) {
        --it;
        if (i >= it->front() && i <= it->back())
            return (it->front() == i) ? entries[static_cast<size_t>(i)].alpha
                                      : CMat::Zero(m, m);
    }
    return entries[static_cast<size_t>(i)].alpha;
}

int SpectralDataSet::find(SpectralIndex idx) const {
    for (size_t i = 0; i < entries.size(); ++i)
        if (entries[i].index == idx) return static_cast<int>(i);
    return -1;
}

CMat SpectralDataSet::alpha_group(SpectralIndex idx) const {
    int i = find(idx);
    if (i < 0) throw numerical_error("IndexMismatch", "spectral index not present");
    return entries[static_cast<size_t>(i)].alpha;
}

void SpectralDataSet::regroup(double rel_tol) {
    groups.clear();
    std::vector<int> current;
    for (int i = 0; i < static_cast<int>(entries.size()); ++i) {
        if (!current.empty()) {
            double prev = entries[static_cast<size_t>(current.back())].lambda;
            double cur = entries[static_cast<size_t>(i)].lambda;
            if (std::abs(cur - prev) > rel_tol * (1.0 + std::abs(cur))) {
                groups.push_back(current);
                current.clear();
            }
        }
        current.push_back(i);
    }
    if (!current.empty()) groups.push_back(current);
    for (const auto& g : groups)
        for (int i : g) entries[static_cast<size_t>(i)].multiplicity = static_cast<int>(g.size());
}

void SpectralDataSet::validate() const {
    for (size_t i = 1; i < entries.size(); ++i) {
        if (entries[i].index <= entries[i - 1].index)
            throw validation_error("BadData", "entries not sorted by (n, k)");
        if (entries[i].lambda < entries[i - 1].lambda - 1e-9 * (1.0 + std::abs(entries[i].lambda)))
            throw validation_error("BadData", "lambda not non-decreasing");
    }
    for (const auto& e : entries) {
        if (!is_hermitian(e.alpha, 1e-8))
            throw validation_error("BadData", "weight matrix not Hermitian");
        Eigen::SelfAdjointEigenSolver<CMat> eig(hermitize(e.alpha));
        double nrm = smax(e.alpha);
        if (eig.eigenvalues().minCoeff() < -1e-8 * std::max(1.0, nrm))
            throw validation_error("BadData", "weight matrix not PSD");
    }
    for (const auto& g : groups) {
        const CMat& a = entries[static_cast<size_t>(g.front())].alpha;
        for (int i : g) {
            const auto& e = entries[static_cast<size_t>(i)];
            if (e.multiplicity != static_cast<int>(g.size()))
                throw validation_error("BadData", "multiplicity differs from group size");
            if ((e.alpha - a).cwiseAbs().maxCoeff() > 1e-8 * std::max(1.0, smax(a)))
                throw validation_error("BadData", "weights differ within a group");
        }
        int r = rank_above(a, 1e-6 * std::max(1.0, smax(a)));
        if (r != static_cast<int>(g.size()))
            throw validation_error("BadData", "rank(alpha) differs from group size");
    }
}

}  // namespace slmat
