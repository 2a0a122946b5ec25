#include "slmat/zerocase.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

#include "slmat/linalg.hpp"
#include "slmat/numerics.hpp"

namespace slmat {

CMat W0_eval(Complex rho, const BoundaryData& b) {
    Complex s = std::sin(rho * kPi), c = std::cos(rho * kPi);
    return (b.T2 * b.T1 + b.T2p() * b.T1p()) * s + (b.T2p() * b.T1 - b.T2 * b.T1p()) * c;
}

CMat U0_eval(Complex rho, const BoundaryData& b) {
    Complex s = std::sin(rho * kPi), c = std::cos(rho * kPi);
    return (b.T2 * b.T1 + b.T2p() * b.T1p()) * c + (b.T2 * b.T1p() - b.T2p() * b.T1) * s;
}

CMat E0_eval(Complex rho, const BoundaryData& b) {
    return W0_eval(rho, b).partialPivLu().solve(U0_eval(rho, b));
}

CMat M0_eval(Complex lambda, const BoundaryData& b) {
    Complex rho = std::sqrt(lambda);
    CMat E = E0_eval(rho, b);
    return (b.T1 + rho * b.T1p()) * E * (b.T1 / rho + b.T1p());
}

std::vector<double> roots_r(const BoundaryData& b) {
    const int m = b.m;
    const double h = 1e-3;
    const int grid_n = static_cast<int>(std::lround(1.0 / h));

    std::vector<double> sm(static_cast<size_t>(grid_n) + 1);
    double scale = 0.0;
    for (int i = 0; i <= grid_n; ++i) {
        Eigen::JacobiSVD<CMat> svd(W0_eval(i * h, b));
        sm[static_cast<size_t>(i)] = svd.singularValues()(m - 1);
        scale = std::max(scale, svd.singularValues()(0));
    }
    const double accept = 1e-6 * scale;

    auto multiplicity_at = [&](double r) {
        Eigen::JacobiSVD<CMat> svd(W0_eval(r, b));
        const auto& s = svd.singularValues();
        double cut = 1e-7 * std::max(s(0), 0.1 * scale);
        int d = 0;
        for (int i = 0; i < m; ++i)
            if (s(i) < cut) ++d;
        return d;
    };

    std::vector<double> roots;
    // rho = 0 handled from the endpoint directly.
    if (sm[0] < accept) {
        int d = multiplicity_at(0.0);
        roots.insert(roots.end(), static_cast<size_t>(d), 0.0);
    }
    for (int i = 1; i < grid_n; ++i) {
        if (sm[static_cast<size_t>(i)] > 0.05 * scale) continue;
        if (sm[static_cast<size_t>(i)] > sm[static_cast<size_t>(i) - 1] ||
            sm[static_cast<size_t>(i)] > sm[static_cast<size_t>(i) + 1])
            continue;
        double r = golden_section_min([&](double x) { return smin(W0_eval(x, b)); },
                                      (i - 1) * h, (i + 1) * h, 1e-12);
        if (smin(W0_eval(r, b)) > accept) continue;
        if (r < 0.5 * h || r > 1.0 - 1e-9) continue;  // belongs to the rho = 0 family
        if (!roots.empty() && std::abs(r - roots.back()) < 1e-9) continue;
        int d = multiplicity_at(r);
        roots.insert(roots.end(), static_cast<size_t>(std::max(d, 1)), r);
    }

    if (static_cast<int>(roots.size()) != m)
        throw numerical_error("RootCountMismatch",
                              "found " + std::to_string(roots.size()) + " roots, expected " +
                                  std::to_string(m));
    std::sort(roots.begin(), roots.end());
    return roots;
}

std::vector<ResidueProjector> A_residues(const BoundaryData& b) {
    std::vector<double> roots = roots_r(b);
    std::vector<ResidueProjector> out;
    for (size_t i = 0; i < roots.size();) {
        size_t j = i;
        while (j < roots.size() && roots[j] == roots[i]) ++j;
        ResidueProjector rp;
        rp.r = roots[i];
        rp.multiplicity = static_cast<int>(j - i);
        out.push_back(rp);
        i = j;
    }
    // Gap of each distinct root to the nearest other pole of the 1-periodic set.
    for (size_t i = 0; i < out.size(); ++i) {
        double gap = 1.0;  // the pole at r + 1
        for (size_t j = 0; j < out.size(); ++j) {
            if (i == j) continue;
            for (int shift = -1; shift <= 1; ++shift)
                gap = std::min(gap, std::abs(out[i].r - (out[j].r + shift)));
        }
        double radius = std::min(gap, 0.5) / 3.0;
        if (radius < 1e-4)
            throw numerical_error("ContourTooClose",
                                  "residue contour radius " + std::to_string(radius));
        CMat A = kPi * contour_mean([&](Complex rho) { return E0_eval(rho, b); },
                                    Complex(out[i].r, 0.0), radius, 256);
        out[i].A = hermitize(A);
    }
    return out;
}

const ResidueProjector& ZeroCaseModel::residue_at(double r) const {
    for (const auto& rp : residues)
        if (std::abs(rp.r - r) < 1e-9) return rp;
    throw numerical_error("RootCountMismatch", "no residue stored for root");
}

ZeroCaseModel zero_model(const BoundaryData& b) {
    ZeroCaseModel model;
    model.m = b.m;
    model.residues = A_residues(b);
    for (const auto& rp : model.residues)
        model.roots.insert(model.roots.end(), static_cast<size_t>(rp.multiplicity), rp.r);
    model.p = range_intersection_dim(b.T1, b.T2);
    model.p_perp = kernel_intersection_dim(b.T1, b.T2);
    if (!model.roots.empty() && model.roots.front() == 0.0) {
        if (model.residues.front().multiplicity != model.p + model.p_perp)
            throw numerical_error("RootCountMismatch",
                                  "multiplicity at rho = 0 differs from p + p_perp");
    } else if (model.p + model.p_perp != 0) {
        throw numerical_error("RootCountMismatch", "missing root at rho = 0");
    }
    return model;
}

CMat zero_weight(const CMat& T1, double rho0, const CMat& A) {
    const Eigen::Index m = T1.rows();
    CMat T1p = CMat::Identity(m, m) - T1;
    if (rho0 == 0.0) return (T1 * A * T1) / kPi;
    CMat f = T1 + rho0 * T1p;
    return (2.0 / kPi) * f * A * f;
}

SpectralDataSet zero_spectral_data(const ZeroCaseModel& model, const CMat& T1, int n_max) {
    SpectralDataSet data;
    data.m = model.m;
    for (int n = 0; n <= n_max; ++n) {
        int k_first = (n == 0) ? model.p_perp + 1 : 1;
        int k = k_first;
        while (k <= model.m) {
            double r = model.roots[static_cast<size_t>(k - 1)];
            int k_end = k;
            while (k_end < model.m && model.roots[static_cast<size_t>(k_end)] == r) ++k_end;
            double rho0 = n + r;
            CMat alpha = zero_weight(T1, rho0, model.residue_at(r).A);
            std::vector<int> group;
            for (int kk = k; kk <= k_end; ++kk) {
                SpectralEntry e;
                e.index = {n, kk};
                e.lambda = rho0 * rho0;
                e.alpha = alpha;
                e.multiplicity = k_end - k + 1;
                group.push_back(static_cast<int>(data.entries.size()));
                data.entries.push_back(std::move(e));
            }
            data.groups.push_back(std::move(group));
            k = k_end + 1;
        }
    }
    return data;
}

SpectralDataSet zero_spectral_data(const BoundaryData& b, int n_max) {
    return zero_spectral_data(zero_model(b), b.T1, n_max);
}

CMat E0_from_model(const ZeroCaseModel& model, Complex rho) {
    CMat E = CMat::Zero(model.m, model.m);
    for (const auto& rp : model.residues) E += rp.A * stable_cot(kPi * (rho - rp.r));
    return E;
}

}  // namespace slmat
