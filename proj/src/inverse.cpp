#include "slmat/inverse.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

#include "slmat/linalg.hpp"
#include "slmat/numerics.hpp"
#include "slmat/zerocase.hpp"

namespace slmat {

double beta_regularizer(double lambda, double omega) {
    return lambda / (lambda * lambda + omega * omega);
}

CMat weyl_series(const SpectralDataSet& data, const WeylSeriesConfig& cfg, Complex lambda) {
    const int n_cut = (cfg.n_max > 0) ? cfg.n_max : data.n_max();
    CMat sum = CMat::Zero(data.m, data.m);
    for (int i = 0; i < static_cast<int>(data.entries.size()); ++i) {
        const auto& e = data.entries[static_cast<size_t>(i)];
        if (e.index.n > n_cut) continue;
        Complex d = lambda - e.lambda;
        if (std::abs(d) < 1e-12 * (1.0 + std::abs(e.lambda)))
            throw numerical_error("PoleHit", "lambda hits a data point");
        sum += (1.0 / d + beta_regularizer(e.lambda, cfg.omega)) * data.alpha_prime(i);
    }
    return sum;
}

namespace {

// Tail-shape basis for the C0* extrapolation: the truncated series misses
// sum_{n > N} tau^2/(tau^2 + n^2) per unit of the T1p block.
double truncation_shape(double tau, int N) {
    double s = 0.0;
    const int direct = 100000;
    for (int n = N + 1; n <= N + direct; ++n) s += tau * tau / (tau * tau + double(n) * n);
    double X = N + direct + 1.0;
    s += tau * (kPi / 2.0 - std::atan(X / tau)) + 0.5 * tau * tau / (tau * tau + X * X);
    return s;
}

// Block decomposition of the zero-case weight family of one residue
// projector: alpha(rho) = (2/pi)(B0 + rho B1 + rho^2 B2).
struct WeightBlocks {
    double r = 0.0;
    CMat B0, B1, B2;
    CMat zero_weight;  // (1/pi) T1 A T1 for the lambda = 0 entry
    bool has_zero_entry = false;
};

std::vector<WeightBlocks> weight_blocks(const ExtractedRA& ra, const CMat& T1) {
    const Eigen::Index m = T1.rows();
    CMat T1p = CMat::Identity(m, m) - T1;
    std::vector<WeightBlocks> out;
    for (const auto& c : ra.clusters) {
        WeightBlocks wb;
        wb.r = c.r;
        wb.B0 = T1 * c.A * T1;
        wb.B1 = T1 * c.A * T1p + T1p * c.A * T1;
        wb.B2 = T1p * c.A * T1p;
        if (c.r == 0.0) {
            wb.zero_weight = (T1 * c.A * T1) / kPi;
            wb.has_zero_entry = wb.zero_weight.cwiseAbs().maxCoeff() > 1e-10;
        }
        out.push_back(std::move(wb));
    }
    return out;
}

// One series term at rho = n + r for a block-decomposed cluster.
inline void add_term(CMat& acc, const WeightBlocks& wb, double rho, Complex lambda,
                     double omega) {
    double mu = rho * rho;
    Complex c = 1.0 / (lambda - mu) + beta_regularizer(mu, omega);
    acc += (2.0 / kPi) * c * (wb.B0 + rho * wb.B1 + (rho * rho) * wb.B2);
}

// Full regularized series of the synthesized zero-case data: direct sum over
// n <= N_direct plus the Euler-Maclaurin closure of the remainder, so the
// result carries the infinite sum to near machine precision.
CMat model_series_full(const std::vector<WeightBlocks>& blocks, Complex lambda, double omega) {
    const Eigen::Index m = blocks.front().B0.rows();
    const int N_direct = 100000;
    CMat acc = CMat::Zero(m, m);
    for (const auto& wb : blocks) {
        if (wb.has_zero_entry) acc += wb.zero_weight / lambda;
        double r0 = wb.r;
        if (r0 > 0.0) add_term(acc, wb, r0, lambda, omega);  // the n = 0 entry
        for (int n = 1; n <= N_direct; ++n) add_term(acc, wb, n + r0, lambda, omega);
    }
    // Remainder: sum_{n > N} g(n) ~ integral_{N+1}^inf g + g(N+1)/2.
    auto g = [&](double x) {
        CMat v = CMat::Zero(m, m);
        for (const auto& wb : blocks) add_term(v, wb, x + wb.r, lambda, omega);
        return v;
    };
    GaussRule rule = gauss_legendre(32, 0.0, 1.0 / (N_direct + 1.0));
    for (size_t i = 0; i < rule.x.size(); ++i) {
        double u = rule.x[i];
        acc += (rule.w[i] / (u * u)) * g(1.0 / u);
    }
    acc += 0.5 * g(N_direct + 1.0);
    return acc;
}

// Additive constant of the synthesized series from the tau ladder (5, 10):
// est(tau) = C + T1/tau + O(exp(-2 pi tau)), so C = 2 est(10) - est(5).
CMat model_C0(const std::vector<WeightBlocks>& blocks, const CMat& T1p, double omega) {
    auto est = [&](double tau) {
        return CMat(tau * T1p - model_series_full(blocks, Complex(-tau * tau, 0.0), omega));
    };
    return 2.0 * est(10.0) - est(5.0);
}

}  // namespace

CMat C0_star(const SpectralDataSet& zero_data, const WeylSeriesConfig& cfg) {
    CMat T1p = recover_T1(zero_data).T1p;
    const int N = (cfg.n_max > 0) ? cfg.n_max : zero_data.n_max();
    const std::vector<double> taus = {2.0, 3.0, 4.0, 6.0, 8.0};
    std::vector<std::pair<double, CMat>> samples;
    for (double tau : taus)
        samples.push_back({tau, tau * T1p - weyl_series(zero_data, cfg, Complex(-tau * tau, 0.0))});

    std::vector<std::function<double(double)>> basis = {
        [](double) { return 1.0; },
        [](double t) { return 1.0 / t; },
        [N](double t) { return truncation_shape(t, N); },
    };
    auto coef = fit_matrix_series(samples, basis);

    // The fit residual is the convergence diagnostic: the three shapes must
    // explain every tau sample.
    for (const auto& [tau, val] : samples) {
        CMat fit = coef[0] + coef[1] / tau + coef[2] * truncation_shape(tau, N);
        if ((val - fit).cwiseAbs().maxCoeff() > 0.05)
            throw numerical_error("NoConvergence", "C0* tau-ladder fit residual too large");
    }
    return coef[0];
}

RecoveredT1 recover_T1(const SpectralDataSet& data) {
    const int n_max = data.n_max();
    if (n_max < 16) throw validation_error("BadData", "recover_T1 needs n_max >= 16");
    std::vector<std::pair<double, CMat>> samples;
    std::vector<int> all_k(static_cast<size_t>(data.m));
    for (int k = 1; k <= data.m; ++k) all_k[static_cast<size_t>(k - 1)] = k;
    for (int n = n_max / 2; n <= n_max; ++n) {
        CMat P = CMat::Zero(data.m, data.m);
        for (int i = 0; i < static_cast<int>(data.entries.size()); ++i) {
            const auto& e = data.entries[static_cast<size_t>(i)];
            if (e.index.n == n) P += data.alpha_prime(i);
        }
        samples.push_back({static_cast<double>(n), (kPi / 2.0) * P});
    }
    // (pi/2) sum_k alpha'_nk is exactly quadratic in n on zero-case data with
    // leading coefficient T1p; the fit averages the l2 remainder otherwise.
    std::vector<std::function<double(double)>> basis = {
        [](double t) { return t * t; },
        [](double t) { return t; },
        [](double) { return 1.0; },
    };
    CMat Q = hermitize(fit_matrix_series(samples, basis)[0]);
    auto snap = snap_to_projector(Q, 0.3);
    RecoveredT1 out;
    out.T1p = snap.projector;
    out.T1 = CMat::Identity(data.m, data.m) - snap.projector;
    out.snap_distance = snap.distance;
    return out;
}

std::pair<CMat, CMat> solve_AB(const CMat& E, Complex t) {
    if (std::abs(t - Complex(0, 1)) < 1e-12 || std::abs(t + Complex(0, 1)) < 1e-12)
        throw numerical_error("SingularCombination", "t = +-i makes tA + B singular");
    const Eigen::Index m = E.rows();
    CMat A = E + t * CMat::Identity(m, m);
    CMat B = CMat::Identity(m, m) - t * E;
    CMat lhs = (t * A + B).partialPivLu().solve(A - t * B);
    if ((lhs - E).cwiseAbs().maxCoeff() > 1e-10 * std::max(1.0, E.cwiseAbs().maxCoeff()))
        throw numerical_error("SingularCombination", "solution residual too large");
    return {A, B};
}

RecoveredT2 recover_T2(const ExtractedRA& ra, const CMat& T1, const WeylSeriesConfig& cfg) {
    const Eigen::Index m = T1.rows();
    CMat T1p = CMat::Identity(m, m) - T1;

    // Admissible rho*: clear of the pattern n + r_k (mod 1), of the tan pole
    // at 1/2, and of the endpoints.
    double rho_star = cfg.rho_star_start;
    bool found = false;
    for (int attempt = 0; attempt < 13; ++attempt) {
        double frac = rho_star - std::floor(rho_star);
        bool ok = frac > 0.05 && frac < 0.95 && std::abs(frac - 0.5) >= 0.05;
        for (const auto& c : ra.clusters) {
            double d = std::abs(frac - c.r);
            d = std::min(d, 1.0 - d);
            if (d < 0.05) ok = false;
        }
        if (ok) {
            rho_star = frac;
            found = true;
            break;
        }
        rho_star += 0.07;
    }
    if (!found) throw numerical_error("RhoStarUnusable", "no admissible rho* in (0, 1)");

    auto blocks = weight_blocks(ra, T1);
    CMat C = model_C0(blocks, T1p, cfg.omega);
    Complex lam(rho_star * rho_star, 0.0);
    CMat M0 = model_series_full(blocks, lam, cfg.omega) + C;
    CMat E0 = (T1 + T1p / rho_star) * M0 * (rho_star * T1 + T1p);

    double t = std::tan(rho_star * kPi);
    CMat D = (E0 + t * CMat::Identity(m, m)) * T1 +
             (t * E0 - CMat::Identity(m, m)) * T1p;
    CMat Dh = D.adjoint();

    // Rank decision with a noise floor tied to the scale of D*.
    Eigen::JacobiSVD<CMat> svd(Dh, Eigen::ComputeFullU);
    const auto& s = svd.singularValues();
    double cut = std::max(1e-8 * (s.size() ? s(0) : 0.0), 1e-6 * (1.0 + std::abs(t)));
    CMat T2 = CMat::Zero(m, m);
    double discarded = 0.0, kept = 0.0;
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        if (s(i) > cut) {
            T2 += svd.matrixU().col(i) * svd.matrixU().col(i).adjoint();
            kept = std::max(kept, s(i));
        } else {
            discarded += s(i) * s(i);
        }
    }
    RecoveredT2 out;
    out.T2 = hermitize(T2);
    out.rho_star = rho_star;
    out.range_residual = (kept > 0.0) ? std::sqrt(discarded) / kept : std::sqrt(discarded);
    return out;
}

RecoveredProjectors algorithm_T12(const SpectralDataSet& data, const WeylSeriesConfig& cfg) {
    RecoveredT1 t1 = recover_T1(data);
    ExtractedRA ra = extract_r_A(data, t1.T1);
    RecoveredT2 t2 = recover_T2(ra, t1.T1, cfg);
    RecoveredProjectors out;
    out.T1 = t1.T1;
    out.T2 = t2.T2;
    out.t1_snap = t1.snap_distance;
    out.t2_residual = t2.range_residual;
    out.rho_star = t2.rho_star;
    return out;
}

ProblemL apply_transform(const ProblemL& problem, const CMat& H1_diamond) {
    const BoundaryData& b = problem.boundary;
    double scale = std::max(1.0, H1_diamond.cwiseAbs().maxCoeff());
    if (!is_hermitian(H1_diamond, 1e-10))
        throw validation_error("BadDiamond", "H1_diamond is not Hermitian");
    if ((H1_diamond - b.T1p() * H1_diamond * b.T1p()).cwiseAbs().maxCoeff() > 1e-10 * scale)
        throw validation_error("BadDiamond", "H1_diamond must live in the kernel block of T1");
    BoundaryData nb = b;
    nb.H2 = hermitize(b.H2 + b.T2 * H1_diamond * b.T2);
    return make_problem(problem.sigma.shifted(-H1_diamond), nb);
}

CMat model_M0(const ExtractedRA& ra, const CMat& T1, Complex lambda) {
    const Eigen::Index m = T1.rows();
    CMat T1p = CMat::Identity(m, m) - T1;
    Complex rho = std::sqrt(lambda);
    CMat E = CMat::Zero(m, m);
    for (const auto& c : ra.clusters) E += c.A * stable_cot(kPi * (rho - c.r));
    return (T1 + rho * T1p) * E * (T1 / rho + T1p);
}

}  // namespace slmat
