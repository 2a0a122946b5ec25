#ifndef SLMAT_GRAPHS_HPP
#define SLMAT_GRAPHS_HPP

#include <map>
#include <vector>

#include "slmat/problem.hpp"
#include "slmat/types.hpp"

namespace slmat {

struct Rational {
    long long num = 1;
    long long den = 1;

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// Vertex condition: Dirichlet (y = 0) or the Kirchhoff-type matching
/// (continuity plus quasi-derivative flux balance with coupling h).
struct VertexCondition {
    bool dirichlet = false;
    double h = 0.0;
};

struct GraphEdge {
    int v0 = 0;  // the x = 0 end
    int v1 = 0;  // the x = L end
    Rational length;
    std::vector<double> sigma_cells;  // real scalar field, uniform cells along the edge
};

struct GraphSpec {
    std::vector<GraphEdge> edges;
    std::map<int, VertexCondition> vertices;

    void validate() const;  // connectivity, endpoint resolution, denominator cap
};

/// Star graph with m edges of length pi: Dirichlet (or Robin with the given
/// h values) outer ends at x = 0, the Kirchhoff(h) center at x = pi.
/// T2 = ones/m, H2 = h T2; the mixed case sets T1 = diag(1 x r, 0) and
/// H1 = diag(h_1..h_r, 0).
ProblemL star_problem(int m, double h, const std::vector<double>& robin_h,
                      const std::vector<std::vector<double>>& sigmas);

struct NormalizedGraph {
    GraphSpec graph;              // equal edge lengths, bipartite, edges oriented class1 -> class2
    std::map<int, int> vclass;    // vertex id -> 1 or 2
    double edge_length = 0.0;     // common length L before rescaling to pi
    double rescale = 0.0;         // s = pi / L; lambda_original = s^2 * lambda_reduced
};

/// Subdivides edges to a common rational length, adds midpoint vertices when
/// an odd cycle obstructs 2-coloring, assigns bipartition classes, and
/// orients every edge from class 1 (x = 0) to class 2 (x = pi).
NormalizedGraph bipartite_normalize(const GraphSpec& graph);

struct ReducedGraph {
    ProblemL problem;   // on (0, pi) after rescaling
    double rescale;     // lambda_original = rescale^2 * lambda_reduced
    int m;              // edge count of the normalized graph
};

/// Builds the matrix problem of a normalized graph: T_j as sums of the
/// per-vertex averaging projectors, H_j = sum of h_v T_j^v, sigma = diag of
/// the per-edge fields (rescaled to the pi interval).
ReducedGraph general_reduction(const NormalizedGraph& normalized);

/// bipartite_normalize followed by general_reduction.
ReducedGraph reduce_graph(const GraphSpec& graph);

}  // namespace slmat

#endif
