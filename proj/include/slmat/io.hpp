#ifndef SLMAT_IO_HPP
#define SLMAT_IO_HPP

#include <iosfwd>
#include <string>

#include "slmat/graphs.hpp"
#include "slmat/inverse.hpp"
#include "slmat/problem.hpp"
#include "slmat/spectral_data.hpp"

namespace slmat {

/// Problem file: { "m", "N", "sigma": [cell][m*m [re,im]] row-major,
/// "T1", "T2", "H1", "H2": flat row-major [re,im] arrays }.
ProblemL load_problem(const std::string& path);
void save_problem(const ProblemL& problem, const std::string& path, double rescale = 0.0);

/// Spectral-data file: { "m", "entries": [{ "n", "k", "lambda",
/// "multiplicity", "alpha" }] }, entries sorted by (n, k).
SpectralDataSet load_spectral_data(const std::string& path);
void save_spectral_data(const SpectralDataSet& data, const std::string& path);

/// Graph file: { "edges": [{ "v0", "v1", "length": [num, den] (units of pi),
/// "sigma": [cells] }], "vertices": [{ "id", "condition": "dirichlet" |
/// { "kirchhoff": h } }] }.
GraphSpec load_graph(const std::string& path);

void save_recovered(const RecoveredProjectors& rec, const std::string& path);
std::string recovered_json(const RecoveredProjectors& rec);

/// Matrix as "[re,im]" pairs with 17 significant digits, row per line.
void print_matrix(std::ostream& os, const CMat& M);

/// Flat CSV: n,k,lambda,multiplicity,alpha entries (re then im, row-major).
std::string spectral_data_csv(const SpectralDataSet& data);

}  // namespace slmat

#endif
