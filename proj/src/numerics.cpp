#include "slmat/numerics.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include <Eigen/Dense>

namespace slmat {

double golden_section_min(const std::function<double(double)>& f, double a, double b,
                          double xtol) {
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > xtol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

CMat contour_mean(const std::function<CMat(Complex)>& F, Complex center, double radius,
                  int nodes) {
    CMat acc;
    for (int j = 0; j < nodes; ++j) {
        double theta = 2.0 * kPi * j / nodes;
        Complex e(std::cos(theta), std::sin(theta));
        CMat val = F(center + radius * e) * (radius * e);
        if (acc.size() == 0)
            acc = val;
        else
            acc += val;
    }
    return acc / static_cast<double>(nodes);
}

Complex stable_cot(Complex z) {
    if (z.imag() > 1.0) {
        Complex e = std::exp(Complex(0, 2) * z);  // |e| < 1
        return Complex(0, 1) * (e + 1.0) / (e - 1.0);
    }
    if (z.imag() < -1.0) {
        Complex e = std::exp(Complex(0, -2) * z);
        return Complex(0, -1) * (e + 1.0) / (e - 1.0);
    }
    return std::cos(z) / std::sin(z);
}

GaussRule gauss_legendre(int n, double a, double b) {
    // Golub-Welsch: eigenvalues of the Jacobi matrix.
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i) {
        double beta = i / std::sqrt(4.0 * i * i - 1.0);
        J(i, i - 1) = beta;
        J(i - 1, i) = beta;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(J);
    GaussRule rule;
    rule.x.resize(static_cast<size_t>(n));
    rule.w.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        double t = eig.eigenvalues()(i);
        double w0 = 2.0 * eig.eigenvectors()(0, i) * eig.eigenvectors()(0, i);
        rule.x[static_cast<size_t>(i)] = 0.5 * (b - a) * t + 0.5 * (a + b);
        rule.w[static_cast<size_t>(i)] = 0.5 * (b - a) * w0;
    }
    return rule;
}

std::vector<CMat> fit_matrix_series(const std::vector<std::pair<double, CMat>>& samples,
                                    const std::vector<std::function<double(double)>>& basis) {
    const int n = static_cast<int>(samples.size());
    const int q = static_cast<int>(basis.size());
    if (n < q) throw numerical_error("NoConvergence", "not enough samples for the fit");
    Eigen::MatrixXd D(n, q);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < q; ++j) D(i, j) = basis[static_cast<size_t>(j)](samples[static_cast<size_t>(i)].first);
    Eigen::MatrixXd G = (D.transpose() * D).inverse() * D.transpose();  // q x n
    const Eigen::Index m = samples.front().second.rows();
    std::vector<CMat> out(static_cast<size_t>(q), CMat::Zero(m, m));
    for (int j = 0; j < q; ++j)
        for (int i = 0; i < n; ++i) out[static_cast<size_t>(j)] += G(j, i) * samples[static_cast<size_t>(i)].second;
    return out;
}

namespace {
std::atomic<int> g_threads{1};
}

int worker_threads() { return g_threads.load(); }
void set_worker_threads(int n) { g_threads.store(n < 1 ? 1 : n); }

void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
    threads = std::min(threads, n);
    if (threads <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(threads));
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&]() {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace slmat
