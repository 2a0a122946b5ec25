#include "slmat/spectrum.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "slmat/linalg.hpp"
#include "slmat/numerics.hpp"
#include "slmat/zerocase.hpp"

namespace slmat {

CMat V1_form(const PropagatorState& s, const BoundaryData& b) {
    return b.T1 * (s.Y1 - b.H1 * s.Y) - b.T1p() * s.Y;
}

CMat V1perp_form(const PropagatorState& s, const BoundaryData& b) {
    return b.T1 * s.Y + b.T1p() * s.Y1;
}

CMat V2_form(const PropagatorState& s, const BoundaryData& b) {
    return b.T2 * (s.Y1 - b.H2 * s.Y) - b.T2p() * s.Y;
}

CMat charW(const ProblemL& problem, Complex rho) {
    const BoundaryData& b = problem.boundary;
    PropagatorState phi = phi_at_pi(problem, rho * rho);
    CMat V2 = V2_form(phi, b) * std::exp(phi.log_scale);
    return -(b.T2 / rho + b.T2p()) * V2 * (b.T1 + rho * b.T1p());
}

int LocateResult::total() const {
    int t = 0;
    for (const auto& r : records) t += r.multiplicity;
    return t;
}

namespace {

struct Hit {
    double pos = 0.0;       // scan coordinate (rho or t)
    double residual = 0.0;  // relative smin at the refined point
    int multiplicity = 1;
};

// Scans f = smin(F(x)) on [lo, hi], refines local minima by golden section,
// and reads multiplicities from the singular values of F. `F` must be
// normalized so that smax stays O(1) across the window.
std::vector<Hit> scan_minima(const std::function<CMat(double)>& F, double lo, double hi,
                             double step, std::vector<std::string>& warnings,
                             const char* tag) {
    const int npts = static_cast<int>(std::ceil((hi - lo) / step)) + 1;
    std::vector<double> val(static_cast<size_t>(npts));
    std::vector<double> top(static_cast<size_t>(npts));
    parallel_for(npts, worker_threads(), [&](int i) {
        double x = std::min(lo + i * step, hi);
        Eigen::JacobiSVD<CMat> svd(F(x));
        const auto& s = svd.singularValues();
        val[static_cast<size_t>(i)] = s(s.size() - 1);
        top[static_cast<size_t>(i)] = s(0);
    });
    double scale = *std::max_element(top.begin(), top.end());
    if (scale <= 0.0) return {};

    auto refine = [&](double a, double b) -> std::optional<Hit> {
        double xr = golden_section_min([&](double x) { return smin(F(x)); }, a, b, 1e-11);
        Eigen::JacobiSVD<CMat> svd(F(xr));
        const auto& s = svd.singularValues();
        double local_top = std::max(s(0), 0.01 * scale);
        if (s(s.size() - 1) > 1e-7 * std::max(s(0), 0.05 * scale)) {
            warnings.push_back(std::string("NonRealResidual: ") + tag + " minimum near " +
                               std::to_string(xr) + " does not reach zero");
            return std::nullopt;
        }
        Hit h;
        h.pos = xr;
        h.residual = s(s.size() - 1) / local_top;
        h.multiplicity = 0;
        for (Eigen::Index i = 0; i < s.size(); ++i)
            if (s(i) < 1e-6 * local_top) ++h.multiplicity;
        h.multiplicity = std::max(h.multiplicity, 1);
        return h;
    };

    std::vector<Hit> hits;
    auto consider = [&](double a, double b) {
        if (auto h = refine(a, b)) {
            for (const Hit& prev : hits)
                if (std::abs(prev.pos - h->pos) < 2e-9) return;
            hits.push_back(*h);
        }
    };
    for (int i = 1; i + 1 < npts; ++i) {
        double f = val[static_cast<size_t>(i)];
        if (f > 0.05 * scale) continue;
        if (f > val[static_cast<size_t>(i) - 1] || f > val[static_cast<size_t>(i) + 1]) continue;
        consider(lo + (i - 1) * step, std::min(lo + (i + 1) * step, hi));
    }
    // Endpoint dips that the interior local-minimum test misses.
    if (npts >= 2 && val[0] < 0.05 * scale && val[0] < val[1]) consider(lo, lo + step);
    if (npts >= 2 && val[static_cast<size_t>(npts) - 1] < 0.05 * scale &&
        val[static_cast<size_t>(npts) - 1] < val[static_cast<size_t>(npts) - 2])
        consider(hi - step, hi);

    std::sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) { return a.pos < b.pos; });

    // Close pairs may hide further roots between them: rescan those windows.
    std::vector<Hit> extra;
    for (size_t i = 0; i + 1 < hits.size(); ++i) {
        double d = hits[i + 1].pos - hits[i].pos;
        if (d > 4e-9 && d < 0.02) {
            double a = hits[i].pos + 1e-6, b = hits[i + 1].pos - 1e-6;
            if (b > a) {
                auto inner = scan_minima(F, a, b, std::max((b - a) / 40.0, 1e-8), warnings, tag);
                for (const Hit& h : inner) {
                    bool known = false;
                    for (const Hit& prev : hits)
                        if (std::abs(prev.pos - h.pos) < 2e-9) known = true;
                    if (!known) extra.push_back(h);
                }
            }
        }
    }
    hits.insert(hits.end(), extra.begin(), extra.end());
    std::sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) { return a.pos < b.pos; });
    return hits;
}

// Expected number of eigenvalues with sqrt(lambda) <= R, from the zero-case
// root pattern n + r_k of the problem's own projectors.
int expected_count(const BoundaryData& b, int p_perp, const std::vector<double>& roots,
                   double R) {
    if (R < 0) return 0;
    int count = 0;
    const int m = b.m;
    for (int k = p_perp + 1; k <= m; ++k)
        if (roots[static_cast<size_t>(k - 1)] <= R) ++count;
    for (int n = 1; n <= static_cast<int>(std::floor(R)); ++n)
        for (int k = 1; k <= m; ++k)
            if (n + roots[static_cast<size_t>(k - 1)] <= R) ++count;
    return count;
}

double sigma_norm_bound(const ProblemL& problem) {
    double s = 0.0;
    for (const CMat& c : problem.sigma.cells) s = std::max(s, c.cwiseAbs().maxCoeff() * c.rows());
    return s;
}

std::vector<EigenvalueRecord> run_scans(const ProblemL& problem, double rho_max,
                                        double grid_step, std::vector<std::string>& warnings) {
    const BoundaryData& b = problem.boundary;
    const int m = problem.m();
    std::vector<EigenvalueRecord> records;

    // lambda = 0 from the raw boundary form; W(rho) is singularly normalized there.
    bool has_zero = false;
    {
        PropagatorState phi0 = phi_at_pi(problem, 0.0);
        CMat V2 = V2_form(phi0, b) * std::exp(phi0.log_scale);
        Eigen::JacobiSVD<CMat> svd(V2);
        const auto& s = svd.singularValues();
        double scale = std::max(s(0), 1.0);
        int d = 0;
        for (Eigen::Index i = 0; i < s.size(); ++i)
            if (s(i) < 1e-6 * scale) ++d;
        if (d > 0) {
            records.push_back({0.0, 0.0, d, s(m - 1) / scale});
            has_zero = true;
        }
    }

    // Small-rho window with the raw V2 form (the (T1 + rho T1p)^{-1}
    // normalization degenerates as rho -> 0).
    auto rawV2 = [&](double rho) {
        PropagatorState phi = phi_at_pi(problem, Complex(rho * rho, 0.0));
        return CMat(V2_form(phi, b) * std::exp(phi.log_scale));
    };
    for (const Hit& h : scan_minima(rawV2, 1e-3, 0.05, grid_step / 5.0, warnings, "rho")) {
        if (has_zero && h.pos < 3e-3) continue;  // skirt of the lambda = 0 root
        records.push_back({h.pos * h.pos, h.pos, h.multiplicity, h.residual});
    }

    // Main window with the normalized characteristic matrix.
    auto Wmat = [&](double rho) { return charW(problem, Complex(rho, 0.0)); };
    for (const Hit& h : scan_minima(Wmat, 0.05, rho_max, grid_step, warnings, "rho")) {
        records.push_back({h.pos * h.pos, h.pos, h.multiplicity, h.residual});
    }

    // Negative eigenvalues: lambda = -t^2 with the exponentially normalized V2.
    double t_floor = 1.0 + sigma_norm_bound(problem) + smax(b.H1) + smax(b.H2);
    auto negV2 = [&](double t) {
        PropagatorState phi = phi_at_pi(problem, Complex(-t * t, 0.0));
        return CMat(V2_form(phi, b) * std::exp(phi.log_scale - t * kPi));
    };
    for (const Hit& h : scan_minima(negV2, grid_step, t_floor, grid_step, warnings, "tau")) {
        if (has_zero && h.pos < 3.0 * grid_step) continue;
        records.push_back({-h.pos * h.pos, 0.0, h.multiplicity, h.residual});
    }

    std::sort(records.begin(), records.end(),
              [](const EigenvalueRecord& a, const EigenvalueRecord& b) { return a.lambda < b.lambda; });

    // Window seams can report one root twice.
    std::vector<EigenvalueRecord> dedup;
    for (const auto& rec : records) {
        if (!dedup.empty() &&
            std::abs(rec.lambda - dedup.back().lambda) < 1e-7 * (1.0 + std::abs(rec.lambda))) {
            dedup.back().multiplicity = std::max(dedup.back().multiplicity, rec.multiplicity);
            dedup.back().residual = std::min(dedup.back().residual, rec.residual);
        } else {
            dedup.push_back(rec);
        }
    }
    return dedup;
}

}  // namespace

LocateResult locate_eigenvalues(const ProblemL& problem, double rho_max, double grid_step) {
    LocateResult out;
    out.records = run_scans(problem, rho_max, grid_step, out.warnings);

    std::vector<double> roots = roots_r(problem.boundary);
    int expected = expected_count(problem.boundary, problem.p_perp, roots, rho_max - 1.0);
    if (out.total() < expected) {
        out.warnings.push_back("count deficit at step " + std::to_string(grid_step) +
                               "; rescanning");
        out.records = run_scans(problem, rho_max, grid_step / 5.0, out.warnings);
        if (out.total() < expected)
            throw numerical_error("MissedRootSuspicion",
                                  "located " + std::to_string(out.total()) + " eigenvalues, " +
                                      "expected at least " + std::to_string(expected));
    }
    return out;
}

WeylSample weyl(const ProblemL& problem, Complex lambda) {
    const BoundaryData& b = problem.boundary;
    PropagatorState phi = phi_at_pi(problem, lambda);
    PropagatorState psi = psi_at_pi(problem, lambda);
    CMat V2phi = V2_form(phi, b);
    CMat V2psi = V2_form(psi, b);
    Eigen::JacobiSVD<CMat> svd(V2phi);
    const auto& s = svd.singularValues();
    // Conditioning measured against the propagated state, so that a scalar
    // V2(phi) ~ 0 (pole, but cond = 1) is still caught.
    double state_scale =
        std::max(phi.Y.cwiseAbs().maxCoeff(), phi.Y1.cwiseAbs().maxCoeff());
    if (!(s(s.size() - 1) > 1e-12 * state_scale) || s(0) / s(s.size() - 1) > 1e12)
        throw numerical_error("NearPole", "V2(phi) is numerically singular at this lambda");
    CMat M = -V2phi.partialPivLu().solve(V2psi) * std::exp(psi.log_scale - phi.log_scale);
    return {lambda, std::move(M)};
}

CMat weight_matrix(const ProblemL& problem, double lambda_center, double foreign_gap,
                   double spread) {
    double rho_hat = std::sqrt(std::max(lambda_center, 0.0));
    double cap = std::max(rho_hat * rho_hat, 0.25);
    double radius = std::min(foreign_gap / 3.0, cap);
    if (!(radius > 10.0 * spread) || !(radius > 0.0))
        throw numerical_error("GroupNotIsolated",
                              "cannot isolate the group at lambda = " +
                                  std::to_string(lambda_center));
    CMat alpha = contour_mean([&](Complex z) { return weyl(problem, z).M; },
                              Complex(lambda_center, 0.0), radius, 512);
    alpha = hermitize(alpha);
    double nrm = smax(alpha);
    Eigen::SelfAdjointEigenSolver<CMat> eig(alpha);
    if (eig.eigenvalues().minCoeff() < -1e-8 * std::max(nrm, 1e-300))
        throw numerical_error("NotPSD", "weight matrix has a negative eigenvalue");
    return alpha;
}

SpectralDataSet spectral_data(const ProblemL& problem, int n_max) {
    const double rho_max = n_max + 1.25;
    LocateResult loc = locate_eigenvalues(problem, rho_max);

    // Group records whose lambdas agree within the reporting tolerance.
    struct Grp {
        double center = 0.0;
        double spread = 0.0;
        int size = 0;
    };
    std::vector<Grp> grps;
    for (const auto& rec : loc.records) {
        bool merge = !grps.empty() &&
                     std::abs(rec.lambda - grps.back().center) <=
                         1e-6 * (1.0 + std::abs(rec.lambda));
        if (merge) {
            Grp& g = grps.back();
            g.spread = std::max(g.spread, rec.lambda - g.center);
            g.size += rec.multiplicity;
        } else {
            grps.push_back({rec.lambda, 0.0, rec.multiplicity});
        }
    }

    IndexSet J = index_set(problem.boundary, n_max);
    const int needed = static_cast<int>(J.indices.size());
    int available = 0;
    for (const auto& g : grps) available += g.size;
    if (available < needed)
        throw numerical_error("MissedRootSuspicion",
                              "only " + std::to_string(available) + " eigenvalues located for " +
                                  std::to_string(needed) + " indices");

    SpectralDataSet data;
    data.m = problem.m();
    int j = 0;
    for (size_t gi = 0; gi < grps.size() && j < needed; ++gi) {
        const Grp& g = grps[gi];
        double gap = std::numeric_limits<double>::infinity();
        if (gi > 0) gap = std::min(gap, g.center - grps[gi - 1].center);
        if (gi + 1 < grps.size()) gap = std::min(gap, grps[gi + 1].center - g.center);
        if (!std::isfinite(gap)) gap = std::max(1.0, std::abs(g.center));
        CMat alpha = weight_matrix(problem, g.center, gap, g.spread);

        std::vector<int> group;
        for (int s = 0; s < g.size && j < needed; ++s, ++j) {
            SpectralEntry e;
            e.index = J.indices[static_cast<size_t>(j)];
            e.lambda = g.center;
            e.alpha = alpha;
            e.multiplicity = g.size;
            group.push_back(static_cast<int>(data.entries.size()));
            data.entries.push_back(std::move(e));
        }
        data.groups.push_back(std::move(group));
    }
    return data;
}

StructureResiduals orthogonality_residuals(const ProblemL& problem, const SpectralDataSet& data,
                                           int nodes) {
    const BoundaryData& b = problem.boundary;
    const int ncells = problem.sigma.cell_count();
    const double w = problem.sigma.cell_width();

    // Cell-aligned composite Simpson grid (kinks of phi' sit on cell edges).
    int per = std::max(2, (nodes + ncells - 1) / ncells);
    if (per % 2) ++per;
    std::vector<double> xs;
    std::vector<double> wt;
    for (int c = 0; c < ncells; ++c) {
        double lo = c * w, h = w / per;
        for (int i = 0; i <= per; ++i) {
            xs.push_back(lo + i * h);
            double we = (i == 0 || i == per) ? 1.0 : (i % 2 ? 4.0 : 2.0);
            wt.push_back(we * h / 3.0);
        }
    }

    StructureResiduals out;
    std::vector<std::vector<CMat>> samples(data.groups.size());
    std::vector<CMat> alphas(data.groups.size());
    std::vector<double> lambdas(data.groups.size());
    for (size_t g = 0; g < data.groups.size(); ++g) {
        const SpectralEntry& e = data.entries[static_cast<size_t>(data.groups[g].front())];
        lambdas[g] = e.lambda;
        alphas[g] = e.alpha;
        samples[g] = solution_samples(problem, e.lambda, phi_initial(problem), xs);

        PropagatorState phi = phi_at_pi(problem, e.lambda);
        CMat val = V2_form(phi, b) * std::exp(phi.log_scale) * e.alpha;
        out.max_val = std::max(out.max_val, val.cwiseAbs().maxCoeff());
    }
    for (size_t g1 = 0; g1 < data.groups.size(); ++g1) {
        for (size_t g2 = g1; g2 < data.groups.size(); ++g2) {
            CMat gram = CMat::Zero(data.m, data.m);
            for (size_t i = 0; i < xs.size(); ++i)
                gram += wt[i] * samples[g1][i].adjoint() * samples[g2][i];
            CMat rel = alphas[g1] * gram * alphas[g2];
            if (g1 == g2)
                out.max_sym_diag = std::max(out.max_sym_diag,
                                            (rel - alphas[g1]).cwiseAbs().maxCoeff());
            else
                out.max_sym_offdiag = std::max(out.max_sym_offdiag, rel.cwiseAbs().maxCoeff());
        }
    }
    return out;
}

double weyl_symmetry_residual(const ProblemL& problem, const std::vector<Complex>& lambdas) {
    double worst = 0.0;
    for (Complex lam : lambdas) {
        CMat M = weyl(problem, lam).M;
        CMat Mc = weyl(problem, std::conj(lam)).M;
        worst = std::max(worst, (Mc.adjoint() - M).cwiseAbs().maxCoeff());
    }
    return worst;
}

}  // namespace slmat
