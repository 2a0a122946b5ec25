#ifndef SLMAT_PROBLEM_HPP
#define SLMAT_PROBLEM_HPP

#include <vector>

#include "slmat/types.hpp"

namespace slmat {

/// Piecewise-constant Hermitian matrix field on (0, pi): cell i (0-based)
/// covers (i*pi/N, (i+1)*pi/N) with constant value cells[i].
struct SigmaField {
    int m = 1;
    std::vector<CMat> cells;

    int cell_count() const { return static_cast<int>(cells.size()); }
    double cell_width() const { return kPi / static_cast<double>(cells.size()); }
    /// Index of the cell containing x (clamped to [0, N-1]).
    int cell_at(double x) const;

    static SigmaField zero(int m, int n_cells = 1);
    /// Same field with every cell split into `factor` equal parts.
    SigmaField refined(int factor) const;
    /// Adds a constant Hermitian matrix to every cell.
    SigmaField shifted(const CMat& c) const;

    void validate(double tol = 1e-12) const;
};

/// Boundary data (T1, H1) at x = 0 and (T2, H2) at x = pi. The Tj are
/// orthogonal projectors and Hj = Hj^dag = Tj Hj Tj.
struct BoundaryData {
    int m = 1;
    CMat T1, T2, H1, H2;

    CMat T1p() const { return CMat::Identity(m, m) - T1; }
    CMat T2p() const { return CMat::Identity(m, m) - T2; }
};

BoundaryData validate_boundary(const CMat& T1, const CMat& T2, const CMat& H1, const CMat& H2,
                               int m);

/// A full problem: sigma plus boundary data, with the derived subspace
/// dimensions p = dim(Ran T1 ∩ Ran T2) and p_perp = dim(Ker T1 ∩ Ker T2).
struct ProblemL {
    SigmaField sigma;
    BoundaryData boundary;
    int p = 0;
    int p_perp = 0;

    int m() const { return boundary.m; }
};

ProblemL make_problem(SigmaField sigma, BoundaryData boundary);

/// Shifts H1 into sigma: sigma += H1 (every cell), H2 -= T2 H1 T2, H1 = 0.
/// Spectral data are unchanged.
ProblemL normalize_H1(const ProblemL& problem);

struct SpectralIndex {
    int n = 0;
    int k = 1;

    friend bool operator==(const SpectralIndex&, const SpectralIndex&) = default;
    friend auto operator<=>(const SpectralIndex& a, const SpectralIndex& b) {
        if (a.n != b.n) return a.n <=> b.n;
        return a.k <=> b.k;
    }
};

/// The index set J truncated at n <= n_max, in lexicographic order:
/// (0, k) for k = p_perp+1..m, then (n, k) for n >= 1, k = 1..m.
struct IndexSet {
    std::vector<SpectralIndex> indices;
    int p = 0;
    int p_perp = 0;
};

IndexSet index_set(const BoundaryData& boundary, int n_max);

}  // namespace slmat

#endif
