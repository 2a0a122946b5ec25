#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "slmat/asymptotics.hpp"
#include "slmat/basis.hpp"
#include "slmat/inverse.hpp"
#include "slmat/io.hpp"
#include "slmat/linalg.hpp"
#include "slmat/numerics.hpp"
#include "slmat/propagator.hpp"
#include "slmat/spectrum.hpp"
#include "slmat/zerocase.hpp"

using namespace slmat;

namespace {

int run_spectrum(const std::string& path, int nmax, const std::string& out, bool csv) {
    ProblemL p = load_problem(path);
    SpectralDataSet data = spectral_data(p, nmax);
    if (!out.empty()) save_spectral_data(data, out);
    if (csv) std::cout << spectral_data_csv(data);
    if (out.empty() && !csv) std::cout << spectral_data_csv(data);
    return 0;
}

int run_zerocase(const std::string& path, int nmax, const std::string& out, bool csv) {
    ProblemL p = load_problem(path);
    double sig_norm = 0.0;
    for (const auto& c : p.sigma.cells) sig_norm = std::max(sig_norm, c.cwiseAbs().maxCoeff());
    if (sig_norm > 0.0 || p.boundary.H1.cwiseAbs().maxCoeff() > 0.0 ||
        p.boundary.H2.cwiseAbs().maxCoeff() > 0.0)
        std::cerr << "warning: zerocase ignores the nonzero sigma/H of this problem\n";
    SpectralDataSet data = zero_spectral_data(p.boundary, nmax);
    if (!out.empty()) save_spectral_data(data, out);
    if (csv || out.empty()) std::cout << spectral_data_csv(data);
    return 0;
}

int run_weyl(const std::string& path, const std::string& lambda_str) {
    ProblemL p = load_problem(path);
    double re = 0.0, im = 0.0;
    if (std::sscanf(lambda_str.c_str(), "%lf,%lf", &re, &im) < 1)
        throw validation_error("BadFlag", "--lambda expects re[,im]");
    WeylSample s = weyl(p, Complex(re, im));
    print_matrix(std::cout, s.M);
    return 0;
}

int run_recover(const std::string& path, const std::string& out) {
    SpectralDataSet data = load_spectral_data(path);
    RecoveredProjectors rec = algorithm_T12(data);
    if (!out.empty())
        save_recovered(rec, out);
    else
        std::cout << recovered_json(rec);
    return 0;
}

int run_graph_reduce(const std::string& path, const std::string& out) {
    GraphSpec g = load_graph(path);
    ReducedGraph red = reduce_graph(g);
    if (!out.empty()) save_problem(red.problem, out, red.rescale);
    std::printf("m %d rescale %.17g  (lambda_original = rescale^2 * lambda_reduced)\n", red.m,
                red.rescale);
    return 0;
}

int run_basis(const std::string& path, int N, int K) {
    SpectralDataSet data = load_spectral_data(path);
    CMat T1 = recover_T1(data).T1;
    BasisFamily fam = build_Y(data, T1, K);
    auto [lo, hi] = frame_bounds(fam, N);
    std::printf("gram_min %.17g\ngram_max %.17g\n", lo, hi);
    return 0;
}

struct VerifyReport {
    int failures = 0;

    void check(const std::string& name, bool pass, double residual) {
        std::printf("[%s] %-34s residual %.3e\n", pass ? "PASS" : "FAIL", name.c_str(), residual);
        if (!pass) ++failures;
    }
};

int run_verify(const std::string& path, int nmax) {
    ProblemL p = load_problem(path);
    VerifyReport rep;
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> ul(-3.0, 25.0), ui(0.1, 1.5);

    {  // Wronskian conservation
        double worst = 0.0;
        for (int t = 0; t < 20; ++t) {
            Complex lam(ul(rng), ui(rng));
            auto y = propagate(p, std::conj(lam), kPi, phi_initial(p), {.rescale = true});
            auto z = propagate(p, lam, kPi, phi_initial(p), {.rescale = true});
            CMat w0 = wronskian(phi_initial(p), phi_initial(p));
            CMat wx = wronskian(y, z) * std::exp(y.log_scale + z.log_scale);
            worst = std::max(worst,
                             (wx - w0).cwiseAbs().maxCoeff() /
                                 std::max(1.0, wx.cwiseAbs().maxCoeff()));
        }
        rep.check("wronskian conservation", worst < 1e-10, worst);
    }

    SpectralDataSet data = spectral_data(p, nmax);
    {
        double worst = 0.0;
        LocateResult loc = locate_eigenvalues(p, nmax + 1.25);
        for (const auto& r : loc.records) worst = std::max(worst, r.residual);
        rep.check("eigenvalue residuals", worst < 1e-8, worst);
    }
    {
        bool ok = true;
        double worst = 0.0;
        for (const auto& g : data.groups) {
            const auto& e = data.entries[static_cast<size_t>(g.front())];
            Eigen::SelfAdjointEigenSolver<CMat> eig(hermitize(e.alpha));
            double neg = -std::min(0.0, eig.eigenvalues().minCoeff());
            worst = std::max(worst, neg / std::max(1.0, smax(e.alpha)));
            if (rank_above(e.alpha, 1e-6 * std::max(1.0, smax(e.alpha))) !=
                static_cast<int>(g.size()))
                ok = false;
        }
        rep.check("weight PSD and rank=multiplicity", ok && worst < 1e-8, worst);
    }
    {
        StructureResiduals sr = orthogonality_residuals(p, data);
        rep.check("V2(phi) alpha = 0", sr.max_val < 1e-6, sr.max_val);
        double worst = std::max(sr.max_sym_offdiag, sr.max_sym_diag);
        rep.check("weighted orthogonality", worst < 1e-6, worst);
    }
    {
        double worst = weyl_symmetry_residual(
            p, {Complex(1.3, 0.7), Complex(-2.1, 0.4), Complex(8.6, 1.1)});
        rep.check("Weyl symmetry", worst < 1e-8, worst);
    }

    double sig_norm = 0.0;
    for (const auto& c : p.sigma.cells) sig_norm = std::max(sig_norm, c.cwiseAbs().maxCoeff());
    bool is_zero_case = sig_norm == 0.0 && p.boundary.H1.cwiseAbs().maxCoeff() == 0.0 &&
                        p.boundary.H2.cwiseAbs().maxCoeff() == 0.0;
    if (is_zero_case) {
        SpectralDataSet oracle = zero_spectral_data(p.boundary, nmax);
        double worst = 0.0;
        bool ok = oracle.entries.size() == data.entries.size();
        if (ok)
            for (size_t i = 0; i < data.entries.size(); ++i) {
                worst = std::max(worst, std::abs(data.entries[i].lambda - oracle.entries[i].lambda));
                worst = std::max(worst,
                                 (data.entries[i].alpha - oracle.entries[i].alpha)
                                     .cwiseAbs()
                                     .maxCoeff());
            }
        rep.check("zero-case closed-form match", ok && worst < 1e-8, worst);
    }

    if (nmax >= 16) {
        try {
            ExtractedRA ra = extract_r_A(data, p.boundary.T1);
            double snap = 0.0;
            for (const auto& c : ra.clusters) snap = std::max(snap, c.snap_distance);
            KappaReport kr = kappa_report(data, ra.r);
            WeightGapReport wr = weight_gap_report(data, ra, p.boundary.T1);
            rep.check("asymptotic projector snap", snap < 5e-2, snap);
            rep.check("kappa l2 tail decay", kr.cauchy_pass, kr.tail_recent);
            rep.check("weight-gap l2 tail decay", wr.cauchy_pass, wr.tail_recent);
        } catch (const Error& e) {
            rep.check(std::string("asymptotics (") + e.code() + ")", false, 0.0);
        }
    }

    {
        BasisFamily fam = build_Y(data, p.boundary.T1, 2048);
        auto [lo_half, hi_half] = frame_bounds(fam, std::max(nmax / 2, 1));
        auto [lo, hi] = frame_bounds(fam, nmax);
        bool ok = lo > 0.01 && hi <= kPi + 0.1 &&
                  std::abs(lo - lo_half) <= 0.35 * std::max(lo, lo_half);
        rep.check("frame bounds", ok, lo);
    }

    std::printf("%s: %d check(s) failed\n", rep.failures ? "FAIL" : "OK", rep.failures);
    return rep.failures ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"matrix Sturm-Liouville spectral toolkit"};
    app.require_subcommand(1);
    int threads = 1;
    app.add_option("--threads", threads, "worker thread cap");

    std::string in, out, lambda_str = "-1";
    int nmax = 10, N = 8, K = 2048;
    bool csv = false;

    auto* sc_spectrum = app.add_subcommand("spectrum", "forward spectral data");
    sc_spectrum->add_option("problem", in)->required();
    sc_spectrum->add_option("--nmax", nmax);
    sc_spectrum->add_option("--out", out);
    sc_spectrum->add_flag("--csv", csv);

    auto* sc_zero = app.add_subcommand("zerocase", "closed-form zero-case data");
    sc_zero->add_option("problem", in)->required();
    sc_zero->add_option("--nmax", nmax);
    sc_zero->add_option("--out", out);
    sc_zero->add_flag("--csv", csv);

    auto* sc_weyl = app.add_subcommand("weyl", "Weyl matrix at lambda");
    sc_weyl->add_option("problem", in)->required();
    sc_weyl->add_option("--lambda", lambda_str, "re[,im]");

    auto* sc_recover = app.add_subcommand("recover", "boundary projectors from data");
    sc_recover->add_option("data", in)->required();
    sc_recover->add_option("--out", out);

    auto* sc_graph = app.add_subcommand("graph-reduce", "metric graph to matrix problem");
    sc_graph->add_option("graph", in)->required();
    sc_graph->add_option("--out", out);

    auto* sc_verify = app.add_subcommand("verify", "run the invariant suite");
    sc_verify->add_option("problem", in)->required();
    sc_verify->add_option("--nmax", nmax);

    auto* sc_basis = app.add_subcommand("basis", "frame bounds of the Y family");
    sc_basis->add_option("data", in)->required();
    sc_basis->add_option("--N", N);
    sc_basis->add_option("--grid", K);

    CLI11_PARSE(app, argc, argv);
    set_worker_threads(threads);

    try {
        if (sc_spectrum->parsed()) return run_spectrum(in, nmax, out, csv);
        if (sc_zero->parsed()) return run_zerocase(in, nmax, out, csv);
        if (sc_weyl->parsed()) return run_weyl(in, lambda_str);
        if (sc_recover->parsed()) return run_recover(in, out);
        if (sc_graph->parsed()) return run_graph_reduce(in, out);
        if (sc_verify->parsed()) return run_verify(in, nmax);
        if (sc_basis->parsed()) return run_basis(in, N, K);
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return e.kind() == ErrorKind::Validation ? 1 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
