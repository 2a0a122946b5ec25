#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "slmat/asymptotics.hpp"
#include "slmat/spectrum.hpp"
#include "slmat/zerocase.hpp"
#include "support.hpp"

using namespace slmat;
using namespace slmat::testing;

namespace {

// Truncate to complete n-blocks <= n_cut.
SpectralDataSet truncated(const SpectralDataSet& data, int n_cut) {
    SpectralDataSet out;
    out.m = data.m;
    for (const auto& e : data.entries)
        if (e.index.n <= n_cut) out.entries.push_back(e);
    out.regroup();
    return out;
}

SigmaField sawtooth_sigma(double amplitude, int cells) {
    SigmaField s = SigmaField::zero(1, cells);
    for (int c = 0; c < cells; ++c)
        s.cells[static_cast<size_t>(c)](0, 0) = amplitude * (2.0 * (c + 0.5) / cells - 1.0);
    return s;
}

}  // namespace

TEST_CASE("zero-case data reproduce r and A exactly") {
    for (const auto& b : {boundary(zeros(1), zeros(1)), mixed2_boundary(), star3_boundary()}) {
        auto data = zero_spectral_data(b, 16);
        auto ra = extract_r_A(data, b.T1);
        auto roots = roots_r(b);
        for (int k = 1; k <= b.m; ++k)
            CHECK(std::abs(ra.r[static_cast<size_t>(k - 1)] - roots[static_cast<size_t>(k - 1)]) <
                  1e-10);
        auto model = zero_model(b);
        REQUIRE(ra.clusters.size() == model.residues.size());
        for (size_t c = 0; c < ra.clusters.size(); ++c) {
            CHECK(matdiff(ra.clusters[c].A, model.residues[c].A) < 1e-9);
            CHECK(ra.clusters[c].snap_distance < 1e-9);
        }
    }
}

TEST_CASE("star zero data: A(0) = I - T2 and A(1/2) = T2") {
    auto b = star3_boundary();
    auto ra = extract_r_A(zero_spectral_data(b, 16), b.T1);
    REQUIRE(ra.clusters.size() == 2);
    CHECK(matdiff(ra.clusters[0].A, eye(3) - ones_projector(3)) < 1e-9);
    CHECK(matdiff(ra.clusters[1].A, ones_projector(3)) < 1e-9);
    CHECK(ra.clusters[0].ks == std::vector<int>{1, 2});
    CHECK(ra.clusters[1].ks == std::vector<int>{3});
}

TEST_CASE("sawtooth scalar potential: extraction converges to the Dirichlet limits") {
    ProblemL p = make_problem(sawtooth_sigma(0.5, 8), boundary(zeros(1), zeros(1)));
    auto data = spectral_data(p, 64);
    auto ra = extract_r_A(data, p.boundary.T1);
    CHECK(std::abs(ra.r[0]) < 1e-3);
    CHECK(std::abs(ra.clusters[0].A(0, 0) - Complex(1.0, 0.0)) < 1e-9);  // snapped
    CHECK(ra.clusters[0].snap_distance < 1e-3);

    SUBCASE("projection distance decreases as n_max doubles") {
        double d16 = extract_r_A(truncated(data, 16), p.boundary.T1).clusters[0].snap_distance;
        double d32 = extract_r_A(truncated(data, 32), p.boundary.T1).clusters[0].snap_distance;
        double d64 = ra.clusters[0].snap_distance;
        CHECK(d32 <= d16);
        CHECK(d64 <= d32);
    }

    SUBCASE("kappa tail decay for the sawtooth data") {
        auto kr = kappa_report(data, ra.r);
        CHECK(kr.cauchy_pass);
        CHECK(kr.rows.back().kappa == doctest::Approx(0.0).epsilon(1.0));
        CHECK(std::abs(kr.rows.back().kappa) < 1e-2);
        CHECK(kr.cumulative.back() < 1.0);
    }

    SUBCASE("weight-gap tail decay for the sawtooth data") {
        auto wr = weight_gap_report(data, ra, p.boundary.T1);
        CHECK(wr.cauchy_pass);
        CHECK(wr.rows.back().K_norm < 1e-2);
    }
}

TEST_CASE("zero case: kappa and K vanish identically") {
    auto b = mixed2_boundary();
    auto data = zero_spectral_data(b, 20);
    auto ra = extract_r_A(data, b.T1);
    auto kr = kappa_report(data, ra.r);
    for (const auto& row : kr.rows) CHECK(std::abs(row.kappa) < 1e-10);
    CHECK(kr.cauchy_pass);
    auto wr = weight_gap_report(data, ra, b.T1);
    for (const auto& row : wr.rows) CHECK(row.K_norm < 1e-9);
    CHECK(wr.cauchy_pass);
}

TEST_CASE("scalar Dirichlet with a step potential: kappa decays") {
    SigmaField sig = SigmaField::zero(1, 2);
    sig.cells[0](0, 0) = 0.8;
    ProblemL p = make_problem(sig, boundary(zeros(1), zeros(1)));
    auto data = spectral_data(p, 64);
    auto ra = extract_r_A(data, p.boundary.T1);
    auto kr = kappa_report(data, ra.r);
    CHECK(kr.cauchy_pass);
    // kappa_n -> 0: the last quarter must sit well below the first.
    double early = 0.0, late = 0.0;
    for (const auto& row : kr.rows) {
        if (row.n <= 16) early = std::max(early, std::abs(row.kappa));
        if (row.n > 48) late = std::max(late, std::abs(row.kappa));
    }
    CHECK(late < 0.5 * early);
    auto wr = weight_gap_report(data, ra, p.boundary.T1);
    CHECK(wr.cauchy_pass);
}

TEST_CASE("m=2 random Hermitian sigma: tail diagnostics at n_max = 32") {
    std::mt19937 rng(2027);
    ProblemL p = make_problem(random_sigma(2, 4, rng, 1.0), mixed2_boundary());
    auto data = spectral_data(p, 32);
    auto ra = extract_r_A(data, p.boundary.T1);
    for (const auto& c : ra.clusters) CHECK(c.snap_distance < 5e-2);
    CHECK(kappa_report(data, ra.r).cauchy_pass);
    CHECK(weight_gap_report(data, ra, p.boundary.T1).cauchy_pass);
}

TEST_CASE("star with constant per-edge potentials at n_max = 32") {
    std::vector<std::vector<double>> sig = {{0.2}, {-0.1}, {0.3}};
    // Build the diagonal-sigma star directly from the boundary fixtures.
    SigmaField s = SigmaField::zero(3, 1);
    for (int j = 0; j < 3; ++j) s.cells[0](j, j) = sig[static_cast<size_t>(j)][0];
    ProblemL p = make_problem(s, star3_boundary());
    auto data = spectral_data(p, 32);
    auto ra = extract_r_A(data, p.boundary.T1);
    auto wr = weight_gap_report(data, ra, p.boundary.T1);
    CHECK(wr.cauchy_pass);
    CHECK(kappa_report(data, ra.r).cauchy_pass);
}

TEST_CASE("extraction refuses short datasets") {
    auto data = zero_spectral_data(mixed2_boundary(), 8);
    CHECK_THROWS_AS(extract_r_A(data, mixed2_boundary().T1), Error);
}
