#ifndef SLMAT_ASYMPTOTICS_HPP
#define SLMAT_ASYMPTOTICS_HPP

#include <vector>

#include "slmat/spectral_data.hpp"
#include "slmat/types.hpp"

namespace slmat {

/// A cluster of k-indices sharing one limit root r, with the extracted
/// residue projector.
struct RootCluster {
    double r = 0.0;
    std::vector<int> ks;        // 1-based k indices, ascending
    CMat A;                     // snapped projector
    double snap_distance = 0.0; // distance of the raw estimate to the projector
};

struct ExtractedRA {
    std::vector<double> r;  // r[k-1] = cluster center of track k
    std::vector<RootCluster> clusters;
};

/// Estimates r_k = lim(sqrt(lambda_nk) - n) and the projectors
/// A_k = (pi/2) lim (T1 + T1p/n) alpha_n^{(k)} (T1 + T1p/n) from the top half
/// of the data by low-order fits in 1/n (exact on zero-case data, noise
/// averaging otherwise). Raises NoConvergence when half- and quarter-window
/// estimates drift by more than 0.05 or a projector snap fails.
ExtractedRA extract_r_A(const SpectralDataSet& data, const CMat& T1);

struct KappaReport {
    struct Row {
        int n = 0;
        int k = 1;
        double rho = 0.0;
        double kappa = 0.0;
    };
    std::vector<Row> rows;              // ascending (n, k), n >= 1
    std::vector<double> cumulative;     // running sum of kappa^2, row order
    double tail_previous = 0.0;         // sum of kappa^2 over n in (N/2, N]
    double tail_recent = 0.0;           // sum over n in (N, 2N], N = n_max/2
    bool cauchy_pass = true;            // tail_recent <= tail_previous (+ slack)
};

/// kappa_nk = sqrt(lambda_nk) - n - r_k and the l2 tail-decay diagnostic.
KappaReport kappa_report(const SpectralDataSet& data, const std::vector<double>& r);

struct WeightGapReport {
    struct Row {
        int n = 0;
        int cluster = 0;  // index into ExtractedRA::clusters
        double K_norm = 0.0;
    };
    std::vector<Row> rows;
    std::vector<double> cumulative;  // running sum of |K|^2
    double tail_previous = 0.0;
    double tail_recent = 0.0;
    bool cauchy_pass = true;
};

/// K_nk = (pi/2)(T1 + T1p/n) alpha_n^{(k)} (T1 + T1p/n) - A_k per cluster.
WeightGapReport weight_gap_report(const SpectralDataSet& data, const ExtractedRA& ra,
                                  const CMat& T1);

}  // namespace slmat

#endif
