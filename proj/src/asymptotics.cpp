#include "slmat/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "slmat/linalg.hpp"

namespace slmat {

namespace {

// Sum of alpha'_{nk} over k in `ks` for the given n.
CMat alpha_block(const SpectralDataSet& data, int n, const std::vector<int>& ks) {
    CMat sum = CMat::Zero(data.m, data.m);
    for (int i = 0; i < static_cast<int>(data.entries.size()); ++i) {
        const auto& e = data.entries[static_cast<size_t>(i)];
        if (e.index.n != n) continue;
        if (std::find(ks.begin(), ks.end(), e.index.k) == ks.end()) continue;
        sum += data.alpha_prime(i);
    }
    return sum;
}

double rho_of(const SpectralEntry& e) {
    if (e.lambda < 0.0)
        throw numerical_error("NoConvergence", "negative eigenvalue in the asymptotic range");
    return std::sqrt(e.lambda);
}

// Mean of rho_nk - n over the window n in [n_lo, n_hi].
double window_mean_r(const SpectralDataSet& data, int k, int n_lo, int n_hi, double& inv_n_mean) {
    double sum = 0.0;
    inv_n_mean = 0.0;
    int count = 0;
    for (int n = n_lo; n <= n_hi; ++n) {
        int i = data.find({n, k});
        if (i < 0) continue;
        sum += rho_of(data.entries[static_cast<size_t>(i)]) - n;
        inv_n_mean += 1.0 / n;
        ++count;
    }
    if (count == 0) throw numerical_error("NoConvergence", "empty extraction window");
    inv_n_mean /= count;
    return sum / count;
}

// rho-normalized weight block: exactly A_k on zero-case data.
CMat G_of_n(const SpectralDataSet& data, const std::vector<int>& ks, const CMat& T1, int n) {
    const Eigen::Index m = T1.rows();
    CMat T1p = CMat::Identity(m, m) - T1;
    int i = data.find({n, ks.front()});
    double rho = rho_of(data.entries[static_cast<size_t>(i)]);
    CMat f = T1 + T1p / rho;
    return (kPi / 2.0) * f * alpha_block(data, n, ks) * f;
}

}  // namespace

ExtractedRA extract_r_A(const SpectralDataSet& data, const CMat& T1) {
    const int m = data.m;
    const int n_max = data.n_max();
    if (n_max < 16)
        throw validation_error("BadData", "asymptotic extraction needs n_max >= 16");
    const int half = n_max / 2;
    const int quarter = (3 * n_max) / 4;

    ExtractedRA out;
    out.r.resize(static_cast<size_t>(m));
    std::vector<double> raw(static_cast<size_t>(m));
    for (int k = 1; k <= m; ++k) {
        // Two-window Richardson removes the leading c/n part of kappa.
        double h1 = 0.0, h2 = 0.0;
        double m1 = window_mean_r(data, k, quarter, n_max, h1);
        double m2 = window_mean_r(data, k, half, quarter - 1, h2);
        if (std::abs(m1 - m2) > 0.05)
            throw numerical_error("NoConvergence",
                                  "r estimate drifts for k = " + std::to_string(k));
        raw[static_cast<size_t>(k - 1)] = (m1 * h2 - m2 * h1) / (h2 - h1);
    }

    // Cluster the per-track limits (they are ascending by construction).
    for (int k = 1; k <= m;) {
        RootCluster cluster;
        cluster.ks.push_back(k);
        int k_end = k;
        while (k_end < m &&
               raw[static_cast<size_t>(k_end)] - raw[static_cast<size_t>(k_end - 1)] < 0.04) {
            ++k_end;
            cluster.ks.push_back(k_end);
        }
        double center = 0.0;
        for (int kk : cluster.ks) center += raw[static_cast<size_t>(kk - 1)];
        center /= static_cast<double>(cluster.ks.size());
        cluster.r = std::clamp(center, 0.0, 1.0 - 1e-12);
        out.clusters.push_back(std::move(cluster));
        k = k_end + 1;
    }

    for (auto& cluster : out.clusters) {
        // Plain mean of the rho-normalized blocks over the top quartile.
        CMat acc = CMat::Zero(m, m);
        int count = 0;
        for (int n = quarter; n <= n_max; ++n, ++count) acc += G_of_n(data, cluster.ks, T1, n);
        CMat est = hermitize(acc / count);
        auto snap = snap_to_projector(est, 0.3);
        if (rank_above(snap.projector, 0.5) != static_cast<int>(cluster.ks.size()))
            throw numerical_error("NoConvergence", "snapped projector rank mismatch");
        cluster.A = snap.projector;
        cluster.snap_distance = snap.distance;
        for (int kk : cluster.ks) out.r[static_cast<size_t>(kk - 1)] = cluster.r;
    }
    return out;
}

KappaReport kappa_report(const SpectralDataSet& data, const std::vector<double>& r) {
    KappaReport rep;
    const int n_max = data.n_max();
    std::map<int, double> per_n;  // sum of kappa^2 per n
    double running = 0.0;
    for (const auto& e : data.entries) {
        if (e.index.n < 1) continue;
        KappaReport::Row row;
        row.n = e.index.n;
        row.k = e.index.k;
        row.rho = rho_of(e);
        row.kappa = row.rho - e.index.n - r[static_cast<size_t>(e.index.k - 1)];
        running += row.kappa * row.kappa;
        per_n[row.n] += row.kappa * row.kappa;
        rep.rows.push_back(row);
        rep.cumulative.push_back(running);
    }
    const int N = n_max / 2;
    for (const auto& [n, v] : per_n) {
        if (n > N / 2 && n <= N) rep.tail_previous += v;
        if (n > N && n <= 2 * N) rep.tail_recent += v;
    }
    rep.cauchy_pass = rep.tail_recent <= rep.tail_previous + 1e-12;
    return rep;
}

WeightGapReport weight_gap_report(const SpectralDataSet& data, const ExtractedRA& ra,
                                  const CMat& T1) {
    WeightGapReport rep;
    const int n_max = data.n_max();
    std::map<int, double> per_n;
    double running = 0.0;
    for (int n = 1; n <= n_max; ++n) {
        for (size_t c = 0; c < ra.clusters.size(); ++c) {
            CMat K = G_of_n(data, ra.clusters[c].ks, T1, n) - ra.clusters[c].A;
            WeightGapReport::Row row;
            row.n = n;
            row.cluster = static_cast<int>(c);
            row.K_norm = smax(K);
            running += row.K_norm * row.K_norm;
            per_n[n] += row.K_norm * row.K_norm;
            rep.rows.push_back(row);
            rep.cumulative.push_back(running);
        }
    }
    const int N = n_max / 2;
    for (const auto& [n, v] : per_n) {
        if (n > N / 2 && n <= N) rep.tail_previous += v;
        if (n > N && n <= 2 * N) rep.tail_recent += v;
    }
    rep.cauchy_pass = rep.tail_recent <= rep.tail_previous + 1e-12;
    return rep;
}

}  // namespace slmat
