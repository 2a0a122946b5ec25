#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "slmat/linalg.hpp"
#include "slmat/zerocase.hpp"
#include "support.hpp"

using namespace slmat;
using namespace slmat::testing;

namespace {

// Exact Gram integral of the explicit zero-case solutions:
// int_0^pi phi0(x, rho1^2)^dag phi0(x, rho2^2) dx, split over T1 / T1p.
double int_cos_cos(double a, double b) {
    if (a == 0.0 && b == 0.0) return kPi;
    if (a == b) return kPi / 2.0 + std::sin(2.0 * a * kPi) / (4.0 * a);
    return std::sin((a - b) * kPi) / (2.0 * (a - b)) + std::sin((a + b) * kPi) / (2.0 * (a + b));
}

double int_sin_sin(double a, double b) {
    if (a == 0.0 || b == 0.0) return 0.0;
    if (a == b) return kPi / 2.0 - std::sin(2.0 * a * kPi) / (4.0 * a);
    return std::sin((a - b) * kPi) / (2.0 * (a - b)) - std::sin((a + b) * kPi) / (2.0 * (a + b));
}

CMat exact_gram(const CMat& T1, double rho1, double rho2) {
    const int m = static_cast<int>(T1.rows());
    CMat T1p = CMat::Identity(m, m) - T1;
    if (rho1 == 0.0 && rho2 == 0.0)
        return kPi * T1 + (kPi * kPi * kPi / 3.0) * T1p;
    if (rho1 == 0.0) {
        // phi0(x, 0) = T1 + x T1p against cos/sin parts of phi0(x, rho2^2).
        double c = std::sin(rho2 * kPi) / rho2;
        double s = (std::sin(rho2 * kPi) / (rho2 * rho2) - kPi * std::cos(rho2 * kPi) / rho2) / rho2;
        return c * T1 + s * T1p;
    }
    if (rho2 == 0.0) return exact_gram(T1, 0.0, rho1).adjoint();
    return int_cos_cos(rho1, rho2) * T1 +
           (int_sin_sin(rho1, rho2) / (rho1 * rho2)) * T1p;
}

}  // namespace

TEST_CASE("W0 and U0 closed forms") {
    auto dd = boundary(zeros(1), zeros(1));
    CHECK(std::abs(W0_eval(0.5, dd)(0, 0) - Complex(1.0, 0.0)) < 1e-15);

    auto mb = mixed2_boundary();
    CMat W = W0_eval(0.25, mb);
    CHECK(std::abs(W(0, 0) - Complex(std::cos(kPi / 4), 0)) < 1e-15);
    CHECK(std::abs(W(1, 1) + Complex(std::cos(kPi / 4), 0)) < 1e-15);
    CHECK(std::abs(W(0, 1)) + std::abs(W(1, 0)) < 1e-15);

    auto rr = boundary(eye(1), eye(1));
    CHECK(std::abs(U0_eval(0.0, rr)(0, 0) - Complex(1.0, 0.0)) < 1e-15);
}

TEST_CASE("roots_r on the closed-form fixtures") {
    auto dd_roots = roots_r(boundary(zeros(1), zeros(1)));
    REQUIRE(dd_roots.size() == 1);
    CHECK(dd_roots[0] == 0.0);

    auto mixed_roots = roots_r(mixed2_boundary());
    REQUIRE(mixed_roots.size() == 2);
    CHECK(std::abs(mixed_roots[0] - 0.5) < 1e-10);
    CHECK(std::abs(mixed_roots[1] - 0.5) < 1e-10);

    auto star_roots = roots_r(star3_boundary());
    REQUIRE(star_roots.size() == 3);
    CHECK(star_roots[0] == 0.0);
    CHECK(star_roots[1] == 0.0);
    CHECK(std::abs(star_roots[2] - 0.5) < 1e-10);
}

TEST_CASE("A_residues on the closed-form fixtures") {
    auto dd = A_residues(boundary(zeros(1), zeros(1)));
    REQUIRE(dd.size() == 1);
    CHECK(std::abs(dd[0].A(0, 0) - Complex(1.0, 0.0)) < 1e-10);

    auto mx = A_residues(mixed2_boundary());
    REQUIRE(mx.size() == 1);
    CHECK(mx[0].multiplicity == 2);
    CHECK(matdiff(mx[0].A, eye(2)) < 1e-10);

    auto st = A_residues(star3_boundary());
    REQUIRE(st.size() == 2);
    CHECK(st[0].r == 0.0);
    CHECK(st[0].multiplicity == 2);
    CHECK(matdiff(st[0].A, eye(3) - ones_projector(3)) < 1e-10);
    CHECK(std::abs(st[1].r - 0.5) < 1e-10);
    CHECK(matdiff(st[1].A, ones_projector(3)) < 1e-10);
}

TEST_CASE("zero_spectral_data closed forms") {
    SUBCASE("scalar Dirichlet: lambda = n^2, alpha = 2 n^2 / pi") {
        auto data = zero_spectral_data(boundary(zeros(1), zeros(1)), 4);
        REQUIRE(data.entries.size() == 4);
        for (const auto& e : data.entries) {
            double n = e.index.n;
            CHECK(e.lambda == doctest::Approx(n * n).epsilon(1e-12));
            CHECK(std::abs(e.alpha(0, 0) - Complex(2.0 * n * n / kPi, 0)) < 1e-10);
        }
    }
    SUBCASE("scalar Robin-Robin: alpha_0 = 1/pi, alpha_n = 2/pi") {
        auto data = zero_spectral_data(boundary(eye(1), eye(1)), 3);
        REQUIRE(data.entries.size() == 4);
        CHECK(data.entries[0].lambda == 0.0);
        CHECK(std::abs(data.entries[0].alpha(0, 0) - Complex(1.0 / kPi, 0)) < 1e-10);
        for (size_t i = 1; i < data.entries.size(); ++i) {
            double n = data.entries[i].index.n;
            CHECK(data.entries[i].lambda == doctest::Approx(n * n).epsilon(1e-12));
            CHECK(std::abs(data.entries[i].alpha(0, 0) - Complex(2.0 / kPi, 0)) < 1e-10);
        }
    }
    SUBCASE("mixed m=2: group weight (2/pi) diag(1, (n+1/2)^2)") {
        auto data = zero_spectral_data(mixed2_boundary(), 3);
        REQUIRE(data.entries.size() == 8);
        for (const auto& g : data.groups) CHECK(g.size() == 2);
        for (const auto& e : data.entries) {
            double rho = e.index.n + 0.5;
            CHECK(e.lambda == doctest::Approx(rho * rho).epsilon(1e-12));
            CHECK(e.multiplicity == 2);
            CMat expect = zeros(2);
            expect(0, 0) = 2.0 / kPi;
            expect(1, 1) = 2.0 / kPi * rho * rho;
            CHECK(matdiff(e.alpha, expect) < 1e-10);
        }
    }
    SUBCASE("star m=3: multiplicity pattern and weights") {
        auto data = zero_spectral_data(star3_boundary(), 2);
        REQUIRE(data.entries.size() == 1 + 2 * 3);
        CHECK(data.entries[0].index == SpectralIndex{0, 3});
        CHECK(data.entries[0].lambda == doctest::Approx(0.25));
        CHECK(data.entries[0].multiplicity == 1);
        auto e11 = data.entries[1];
        CHECK(e11.index == SpectralIndex{1, 1});
        CHECK(e11.lambda == doctest::Approx(1.0));
        CHECK(e11.multiplicity == 2);
        CHECK(matdiff(e11.alpha, (2.0 / kPi) * (eye(3) - ones_projector(3))) < 1e-10);
        auto e13 = data.entries[3];
        CHECK(e13.index == SpectralIndex{1, 3});
        CHECK(e13.lambda == doctest::Approx(2.25));
        CHECK(matdiff(e13.alpha, (2.0 / kPi) * 2.25 * ones_projector(3)) < 1e-10);
    }
}

TEST_CASE("residue projector invariants on random projector pairs") {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 6; ++trial) {
        int m = 2 + static_cast<int>(rng() % 2);
        auto b = boundary(random_projector(m, 1 + static_cast<int>(rng() % m), rng),
                          random_projector(m, 1 + static_cast<int>(rng() % m), rng));
        auto model = zero_model(b);

        CMat sum = zeros(m);
        for (const auto& rp : model.residues) {
            CHECK(matdiff(rp.A, rp.A.adjoint()) < 1e-10);
            CHECK(matdiff(rp.A * rp.A, rp.A) < 1e-10);
            CHECK(rank_above(rp.A, 0.5) == rp.multiplicity);
            sum += rp.A;
        }
        CHECK(matdiff(sum, eye(m)) < 1e-10);
        for (size_t i = 0; i < model.residues.size(); ++i)
            for (size_t j = i + 1; j < model.residues.size(); ++j)
                CHECK(matdiff(model.residues[i].A * model.residues[j].A, zeros(m)) < 1e-9);

        // (Aks): paired roots r + s = 1 (or both 0) are conjugate under T1 - T1p.
        CMat R = b.T1 - b.T1p();
        for (const auto& ri : model.residues) {
            double rs = (ri.r == 0.0) ? 0.0 : 1.0 - ri.r;
            for (const auto& rj : model.residues) {
                if (std::abs(rj.r - rs) < 1e-8)
                    CHECK(matdiff(ri.A, R * rj.A * R) < 1e-9);
            }
        }

        // (A1): block structure of the residue at r = 0.
        if (model.roots.front() == 0.0) {
            const CMat& A1 = model.residues.front().A;
            CMat block = b.T1 * A1 * b.T1 + b.T1p() * A1 * b.T1p();
            CHECK(matdiff(A1, block) < 1e-9);
            CHECK(rank_above(b.T1 * A1 * b.T1, 1e-7) == model.p);
            CHECK(rank_above(b.T1p() * A1 * b.T1p(), 1e-7) == model.p_perp);
        }
    }
}

TEST_CASE("w0 symmetry w0(rho) = +/- w0(1 - rho)") {
    std::mt19937 rng(5);
    auto check_symmetry = [](const BoundaryData& b) {
        double sign = 0.0;
        for (int i = 1; i < 100; ++i) {
            double rho = i / 100.0;
            Complex w = W0_eval(rho, b).determinant();
            Complex wm = W0_eval(1.0 - rho, b).determinant();
            if (std::abs(w) < 1e-3) continue;
            double s = ((w / wm).real() > 0) ? 1.0 : -1.0;
            if (sign == 0.0) sign = s;
            CHECK(std::abs(w - sign * wm) < 1e-9 * std::max(1.0, std::abs(w)));
        }
    };
    check_symmetry(mixed2_boundary());
    check_symmetry(star3_boundary());
    check_symmetry(boundary(random_projector(3, 2, rng), random_projector(3, 1, rng)));
}

TEST_CASE("zero data satisfies the weighted orthogonality, exact trig integrals") {
    std::vector<BoundaryData> cases = {boundary(zeros(1), zeros(1)), boundary(eye(1), eye(1)),
                                       mixed2_boundary(), star3_boundary()};
    for (const auto& b : cases) {
        auto data = zero_spectral_data(b, 5);
        for (size_t g1 = 0; g1 < data.groups.size(); ++g1) {
            for (size_t g2 = g1; g2 < data.groups.size(); ++g2) {
                const auto& e1 = data.entries[static_cast<size_t>(data.groups[g1].front())];
                const auto& e2 = data.entries[static_cast<size_t>(data.groups[g2].front())];
                CMat G = exact_gram(b.T1, std::sqrt(e1.lambda), std::sqrt(e2.lambda));
                CMat R = e1.alpha * G * e2.alpha;
                if (g1 == g2)
                    CHECK(matdiff(R, e1.alpha) < 1e-9);
                else
                    CHECK(R.cwiseAbs().maxCoeff() < 1e-9);
            }
        }
    }
}

TEST_CASE("W0 inverse bound on the strip away from roots") {
    std::vector<BoundaryData> cases = {mixed2_boundary(), star3_boundary()};
    for (const auto& b : cases) {
        auto roots = roots_r(b);
        const double delta = 0.1;
        auto clear_of_roots = [&](double re) {
            for (double r : roots)
                for (int s = -1; s <= 1; ++s)
                    if (std::abs(re - (r + s)) < delta) return false;
            return true;
        };
        double base = 0.0, high = 0.0;
        for (int i = 0; i < 20; ++i) {
            double re = i / 20.0;
            if (!clear_of_roots(re)) continue;
            for (double tau : {0.5, 1.0, 2.0, 4.0}) {
                Eigen::JacobiSVD<CMat> svd(W0_eval(Complex(re, tau), b));
                double v = std::exp(tau * kPi) / svd.singularValues()(b.m - 1);
                if (tau == 0.5)
                    base = std::max(base, v);
                else
                    high = std::max(high, v);
            }
        }
        CHECK(high < 4.0 * base);
    }
}

TEST_CASE("E0 Mittag-Leffler form agrees with the direct evaluation") {
    std::mt19937 rng(31);
    std::vector<BoundaryData> cases = {mixed2_boundary(), star3_boundary(),
                                       boundary(random_projector(3, 1, rng),
                                                random_projector(3, 2, rng))};
    for (const auto& b : cases) {
        auto model = zero_model(b);
        for (Complex rho : {Complex(0.26, 0.0), Complex(0.77, 0.3), Complex(0.13, -1.1)}) {
            CHECK(matdiff(E0_from_model(model, rho), E0_eval(rho, b)) < 1e-8);
        }
    }
}
