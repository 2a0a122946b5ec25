#include "slmat/basis.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <map>

#include "slmat/linalg.hpp"
#include "slmat/propagator.hpp"

namespace slmat {

Complex BasisFamily::inner_c(const BasisEntry& a, const BasisEntry& b) const {
    const double h = kPi / K;
    Complex acc = 0.0;
    for (int i = 0; i <= K; ++i) {
        double w = (i == 0 || i == K) ? 0.5 : 1.0;
        acc += w * a.samples[static_cast<size_t>(i)].dot(b.samples[static_cast<size_t>(i)]);
    }
    return acc * h;
}

double BasisFamily::inner(const BasisEntry& a, const BasisEntry& b) const {
    return inner_c(a, b).real();
}

std::vector<std::pair<SpectralIndex, CVec>> select_E(const SpectralDataSet& data,
                                                     const CMat& T1) {
    const int m = data.m;
    CMat T1p = CMat::Identity(m, m) - T1;
    std::vector<std::pair<SpectralIndex, CVec>> out;
    for (const auto& group : data.groups) {
        const SpectralEntry& head = data.entries[static_cast<size_t>(group.front())];
        double rho = std::sqrt(std::max(head.lambda, 0.0));
        bool zero_branch = head.lambda <= 0.0 || rho < 1e-12;
        CMat Tinv = zero_branch ? CMat(CMat::Identity(m, m)) : CMat(T1 + T1p / rho);
        CMat B = hermitize((kPi / 2.0) * Tinv * head.alpha * Tinv);

        // Candidate vectors in descending-eigenvalue order. When B is
        // block-diagonal with respect to T1 the degenerate choice is broken
        // blockwise (T1 block first on ties), which keeps the selection
        // deterministic and aligned with the r = 0 weight structure.
        std::vector<std::pair<double, CVec>> candidates;
        double nrm = 1e-300;
        bool block_diagonal = (T1 * B * T1p).cwiseAbs().maxCoeff() <=
                              1e-10 * std::max(1.0, B.cwiseAbs().maxCoeff());
        if (block_diagonal && rank_above(T1, 0.5) > 0 && rank_above(T1p, 0.5) > 0) {
            for (const CMat& block : {CMat(T1 * B * T1), CMat(T1p * B * T1p)}) {
                Eigen::SelfAdjointEigenSolver<CMat> eig(block);
                for (int i = m - 1; i >= 0; --i) {
                    candidates.push_back({eig.eigenvalues()(i), eig.eigenvectors().col(i)});
                    nrm = std::max(nrm, std::abs(eig.eigenvalues()(i)));
                }
            }
            std::stable_sort(candidates.begin(), candidates.end(),
                             [](const auto& a, const auto& b) { return a.first > b.first; });
        } else {
            Eigen::SelfAdjointEigenSolver<CMat> eig(B);
            for (int i = m - 1; i >= 0; --i) {
                candidates.push_back({eig.eigenvalues()(i), eig.eigenvectors().col(i)});
                nrm = std::max(nrm, std::abs(eig.eigenvalues()(i)));
            }
        }
        std::vector<CVec> keep;
        for (const auto& [val, vec] : candidates)
            if (val > 1e-8 * nrm) keep.push_back(vec);
        if (static_cast<int>(keep.size()) != static_cast<int>(group.size()))
            throw numerical_error("RankMismatch",
                                  "group rank " + std::to_string(keep.size()) +
                                      " != multiplicity " + std::to_string(group.size()));
        for (size_t j = 0; j < group.size(); ++j) {
            CVec v = keep[j];
            // Deterministic phase: the largest-modulus component is real positive.
            int arg_max = 0;
            for (int i = 1; i < m; ++i)
                if (std::abs(v(i)) > std::abs(v(arg_max))) arg_max = i;
            Complex ph = v(arg_max) / std::abs(v(arg_max));
            v /= ph;
            out.push_back({data.entries[static_cast<size_t>(group[static_cast<size_t>(j)])].index,
                           v.normalized()});
        }
    }
    return out;
}

namespace {

BasisFamily family_grid(int m, int K) {
    if (K < 1024) throw validation_error("BadGrid", "grid needs K >= 1024");
    BasisFamily fam;
    fam.m = m;
    fam.K = K;
    fam.xs.resize(static_cast<size_t>(K) + 1);
    for (int i = 0; i <= K; ++i) fam.xs[static_cast<size_t>(i)] = kPi * i / K;
    return fam;
}

}  // namespace

BasisFamily build_Y(const SpectralDataSet& data, const CMat& T1, int K) {
    const int m = data.m;
    CMat T1p = CMat::Identity(m, m) - T1;
    BasisFamily fam = family_grid(m, K);
    auto Es = select_E(data, T1);
    for (const auto& [index, E] : Es) {
        int ei = data.find(index);
        const SpectralEntry& entry = data.entries[static_cast<size_t>(ei)];
        BasisEntry be;
        be.index = index;
        be.rho_is_zero = entry.lambda <= 0.0 || std::sqrt(std::abs(entry.lambda)) < 1e-12;
        be.rho = be.rho_is_zero ? Complex(0.0, 0.0) : std::sqrt(Complex(entry.lambda, 0.0));
        be.E = E;
        be.samples.reserve(fam.xs.size());
        for (double x : fam.xs) {
            CVec y;
            if (be.rho_is_zero)
                y = (T1 + x * T1p) * E;
            else
                y = (std::cos(be.rho * x) * T1 + std::sin(be.rho * x) * T1p) * E;
            be.samples.push_back(std::move(y));
        }
        fam.entries.push_back(std::move(be));
    }
    return fam;
}

std::pair<double, double> frame_bounds(const BasisFamily& family, int N) {
    std::vector<int> use;
    for (int i = 0; i < static_cast<int>(family.entries.size()); ++i)
        if (family.entries[static_cast<size_t>(i)].index.n <= N) use.push_back(i);
    const int q = static_cast<int>(use.size());
    CMat gram(q, q);
    for (int a = 0; a < q; ++a)
        for (int bq = a; bq < q; ++bq) {
            Complex v = family.inner_c(family.entries[static_cast<size_t>(use[static_cast<size_t>(a)])],
                                       family.entries[static_cast<size_t>(use[static_cast<size_t>(bq)])]);
            gram(a, bq) = v;
            gram(bq, a) = std::conj(v);
        }
    Eigen::SelfAdjointEigenSolver<CMat> eig(gram);
    return {eig.eigenvalues().minCoeff(), eig.eigenvalues().maxCoeff()};
}

ClosenessReport quadratic_closeness(const BasisFamily& family, const BasisFamily& reference) {
    if (family.entries.size() != reference.entries.size() || family.K != reference.K)
        throw numerical_error("IndexMismatch", "families differ in size or grid");
    ClosenessReport rep;
    std::map<int, double> per_n;
    const double h = kPi / family.K;
    int n_max = 0;
    for (size_t i = 0; i < family.entries.size(); ++i) {
        const BasisEntry& a = family.entries[i];
        const BasisEntry& b = reference.entries[i];
        if (!(a.index == b.index))
            throw numerical_error("IndexMismatch", "family index sets differ");
        double d2 = 0.0;
        for (int j = 0; j <= family.K; ++j) {
            double w = (j == 0 || j == family.K) ? 0.5 : 1.0;
            d2 += w * (a.samples[static_cast<size_t>(j)] - b.samples[static_cast<size_t>(j)])
                          .squaredNorm();
        }
        d2 *= h;
        rep.total += d2;
        per_n[a.index.n] += d2;
        n_max = std::max(n_max, a.index.n);
    }
    rep.per_n.assign(static_cast<size_t>(n_max) + 1, 0.0);
    for (const auto& [n, v] : per_n) rep.per_n[static_cast<size_t>(n)] = v;
    const int N = n_max / 2;
    for (const auto& [n, v] : per_n) {
        if (n > N / 2 && n <= N) rep.tail_previous += v;
        if (n > N && n <= 2 * N) rep.tail_recent += v;
    }
    rep.cauchy_pass = rep.tail_recent <= rep.tail_previous + 1e-12;
    return rep;
}

BasisFamily eigenfunction_family(const ProblemL& problem, const SpectralDataSet& data, int K) {
    const int m = data.m;
    const BoundaryData& b = problem.boundary;
    CMat T1p = b.T1p();
    BasisFamily fam = family_grid(m, K);
    auto Es = select_E(data, b.T1);

    // phi samples once per group.
    std::map<double, std::vector<CMat>> phi_cache;
    for (const auto& group : data.groups) {
        double lambda = data.entries[static_cast<size_t>(group.front())].lambda;
        if (!phi_cache.count(lambda))
            phi_cache[lambda] = solution_samples(problem, lambda, phi_initial(problem), fam.xs);
    }

    for (const auto& [index, E] : Es) {
        const SpectralEntry& entry = data.entries[static_cast<size_t>(data.find(index))];
        BasisEntry be;
        be.index = index;
        be.rho_is_zero = entry.lambda <= 0.0 || std::sqrt(std::abs(entry.lambda)) < 1e-12;
        be.rho = be.rho_is_zero ? Complex(0, 0) : std::sqrt(Complex(entry.lambda, 0.0));
        be.E = E;
        CMat Tnk = be.rho_is_zero ? CMat(CMat::Identity(m, m)) : CMat(b.T1 + be.rho * T1p);
        CVec w = Tnk * E;
        const auto& phis = phi_cache[entry.lambda];
        be.samples.reserve(fam.xs.size());
        for (size_t j = 0; j < fam.xs.size(); ++j) be.samples.push_back(phis[j] * w);
        fam.entries.push_back(std::move(be));
    }
    return fam;
}

}  // namespace slmat
