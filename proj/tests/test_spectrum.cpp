#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "slmat/linalg.hpp"
#include "slmat/spectrum.hpp"
#include "slmat/zerocase.hpp"
#include "support.hpp"

using namespace slmat;
using namespace slmat::testing;

TEST_CASE("charW equals W0 when sigma = 0") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> ur(0.06, 8.0);
    for (const auto& b : {boundary(zeros(1), zeros(1)), mixed2_boundary(), star3_boundary()}) {
        ProblemL p = make_problem(SigmaField::zero(b.m, 2), b);
        for (int i = 0; i < 20; ++i) {
            double rho = ur(rng);
            CHECK(matdiff(charW(p, rho), W0_eval(rho, b)) < 1e-12 * std::max(1.0, rho));
        }
    }
}

TEST_CASE("charW for constant sigma on scalar Dirichlet stays sin(rho pi)") {
    SigmaField sig = SigmaField::zero(1, 3);
    for (auto& c : sig.cells) c(0, 0) = 0.5;
    ProblemL p = make_problem(sig, boundary(zeros(1), zeros(1)));
    for (double rho : {0.3, 0.5, 1.8, 4.4}) {
        CHECK(std::abs(charW(p, rho)(0, 0) - Complex(std::sin(rho * kPi), 0)) < 1e-12);
    }
    CHECK(std::abs(charW(p, 0.5)(0, 0) - Complex(1.0, 0)) < 1e-12);
}

TEST_CASE("locate_eigenvalues: scalar Dirichlet up to rho_max = 3.5") {
    auto loc = locate_eigenvalues(scalar_dirichlet(), 3.5);
    REQUIRE(loc.records.size() == 3);
    for (int n = 1; n <= 3; ++n) {
        CHECK(loc.records[static_cast<size_t>(n - 1)].lambda ==
              doctest::Approx(n * n).epsilon(1e-10));
        CHECK(loc.records[static_cast<size_t>(n - 1)].multiplicity == 1);
        CHECK(loc.records[static_cast<size_t>(n - 1)].residual < 1e-8);
    }
}

TEST_CASE("locate_eigenvalues: mixed m=2 doubles at (n + 1/2)^2") {
    auto loc = locate_eigenvalues(mixed2(), 3.9);
    REQUIRE(loc.records.size() == 4);
    for (size_t i = 0; i < loc.records.size(); ++i) {
        double rho = 0.5 + static_cast<double>(i);
        CHECK(loc.records[i].lambda == doctest::Approx(rho * rho).epsilon(1e-10));
        CHECK(loc.records[i].multiplicity == 2);
    }
}

TEST_CASE("locate_eigenvalues: star m=3 pattern") {
    auto loc = locate_eigenvalues(star3(), 2.9);
    REQUIRE(loc.records.size() == 5);
    CHECK(loc.records[4].lambda == doctest::Approx(6.25).epsilon(1e-10));
    CHECK(loc.records[0].lambda == doctest::Approx(0.25).epsilon(1e-10));
    CHECK(loc.records[0].multiplicity == 1);
    CHECK(loc.records[1].lambda == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(loc.records[1].multiplicity == 2);
    CHECK(loc.records[2].lambda == doctest::Approx(2.25).epsilon(1e-10));
    CHECK(loc.records[2].multiplicity == 1);
    CHECK(loc.records[3].lambda == doctest::Approx(4.0).epsilon(1e-10));
    CHECK(loc.records[3].multiplicity == 2);
}

TEST_CASE("weyl closed forms at lambda = -1") {
    const double coth_pi = std::cosh(kPi) / std::sinh(kPi);
    auto md = weyl(scalar_dirichlet(), Complex(-1.0, 0.0));
    CHECK(std::abs(md.M(0, 0) - Complex(coth_pi, 0.0)) < 1e-12);
    auto mr = weyl(scalar_robin(), Complex(-1.0, 0.0));
    CHECK(std::abs(mr.M(0, 0) + Complex(coth_pi, 0.0)) < 1e-12);
}

TEST_CASE("weyl symmetry M(conj lambda)^dag = M(lambda)") {
    std::mt19937 rng(11);
    ProblemL p = make_problem(random_sigma(2, 4, rng), mixed2_boundary());
    CHECK(weyl_symmetry_residual(p, {Complex(1.5, 0.5), Complex(-0.7, 1.2), Complex(6.3, 0.9)}) <
          1e-8);
}

TEST_CASE("weyl raises NearPole on an eigenvalue") {
    CHECK_THROWS_WITH_AS(weyl(scalar_dirichlet(), Complex(1.0, 0.0)),
                         doctest::Contains("NearPole"), Error);
}

TEST_CASE("weight_matrix closed forms") {
    auto a1 = weight_matrix(scalar_dirichlet(), 1.0, 3.0);
    CHECK(std::abs(a1(0, 0) - Complex(2.0 / kPi, 0.0)) < 1e-10);

    auto a0 = weight_matrix(scalar_robin(), 0.0, 1.0);
    CHECK(std::abs(a0(0, 0) - Complex(1.0 / kPi, 0.0)) < 1e-10);

    auto am = weight_matrix(mixed2(), 0.25, 2.0);
    CMat expect = zeros(2);
    expect(0, 0) = 2.0 / kPi;
    expect(1, 1) = 1.0 / (2.0 * kPi);
    CHECK(matdiff(am, expect) < 1e-10);
}

TEST_CASE("forward spectral_data equals the zero-case closed forms") {
    for (const auto& b : {boundary(zeros(1), zeros(1)), boundary(eye(1), eye(1)),
                          mixed2_boundary(), star3_boundary()}) {
        ProblemL p = make_problem(SigmaField::zero(b.m, 2), b);
        auto forward = spectral_data(p, 4);
        auto oracle = zero_spectral_data(b, 4);
        REQUIRE(forward.entries.size() == oracle.entries.size());
        for (size_t i = 0; i < forward.entries.size(); ++i) {
            CHECK(forward.entries[i].index == oracle.entries[i].index);
            CHECK(std::abs(forward.entries[i].lambda - oracle.entries[i].lambda) < 1e-9);
            CHECK(matdiff(forward.entries[i].alpha, oracle.entries[i].alpha) < 1e-9);
            CHECK(forward.entries[i].multiplicity == oracle.entries[i].multiplicity);
        }
    }
}

TEST_CASE("rank of the weight equals the multiplicity") {
    std::mt19937 rng(71);
    ProblemL p = make_problem(random_sigma(2, 3, rng, 0.8), mixed2_boundary());
    auto data = spectral_data(p, 4);
    data.validate();
    for (const auto& g : data.groups) {
        const auto& e = data.entries[static_cast<size_t>(g.front())];
        CHECK(rank_above(e.alpha, 1e-6 * std::max(1.0, smax(e.alpha))) ==
              static_cast<int>(g.size()));
    }
}

TEST_CASE("structure relations (Val and weighted orthogonality)") {
    std::mt19937 rng(83);
    SUBCASE("scalar with a step potential") {
        SigmaField sig = SigmaField::zero(1, 2);
        sig.cells[0](0, 0) = 0.8;
        ProblemL p = make_problem(sig, boundary(zeros(1), zeros(1)));
        auto data = spectral_data(p, 6);
        auto res = orthogonality_residuals(p, data);
        CHECK(res.max_val < 1e-6);
        CHECK(res.max_sym_offdiag < 1e-6);
        CHECK(res.max_sym_diag < 1e-6);
    }
    SUBCASE("m=2 random Hermitian sigma") {
        ProblemL p = make_problem(random_sigma(2, 4, rng, 0.6), mixed2_boundary());
        auto data = spectral_data(p, 6);
        auto res = orthogonality_residuals(p, data);
        CHECK(res.max_val < 1e-6);
        CHECK(res.max_sym_offdiag < 1e-6);
        CHECK(res.max_sym_diag < 1e-6);
    }
}

TEST_CASE("normalize_H1 leaves the spectrum unchanged") {
    CMat h1 = eye(1) * 0.3;
    auto b = validate_boundary(eye(1), eye(1), h1, zeros(1), 1);
    SigmaField sig = SigmaField::zero(1, 2);
    sig.cells[1](0, 0) = 0.4;
    ProblemL p = make_problem(sig, b);
    ProblemL q = normalize_H1(p);
    auto dp = spectral_data(p, 6);
    auto dq = spectral_data(q, 6);
    REQUIRE(dp.entries.size() == dq.entries.size());
    for (size_t i = 0; i < dp.entries.size(); ++i) {
        CHECK(std::abs(dp.entries[i].lambda - dq.entries[i].lambda) < 1e-10);
        CHECK(matdiff(dp.entries[i].alpha, dq.entries[i].alpha) < 1e-8);
    }
}

TEST_CASE("located eigenvalues of a random self-adjoint problem are real and complete") {
    std::mt19937 rng(97);
    ProblemL p = make_problem(random_sigma(3, 3, rng, 1.0),
                              boundary(random_projector(3, 2, rng), random_projector(3, 1, rng)));
    auto loc = locate_eigenvalues(p, 6.5);
    int per_window_total = 0;
    for (const auto& r : loc.records) {
        CHECK(r.residual < 1e-8);
        per_window_total += r.multiplicity;
    }
    // Theorem-2.3 count: m eigenvalues per unit rho-window asymptotically.
    CHECK(per_window_total >= 3 * 5);
}
