#include "slmat/graphs.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <set>

namespace slmat {

namespace {

long long lcm_ll(long long a, long long b) { return a / std::gcd(a, b) * b; }

std::vector<double> resample_cells(const std::vector<double>& cells, int target) {
    const int n = static_cast<int>(cells.size());
    if (target % n != 0)
        throw validation_error("BadSigma", "cell counts are not commensurate");
    std::vector<double> out;
    out.reserve(static_cast<size_t>(target));
    int rep = target / n;
    for (double v : cells)
        for (int i = 0; i < rep; ++i) out.push_back(v);
    return out;
}

}  // namespace

void GraphSpec::validate() const {
    if (edges.empty()) throw validation_error("BadGraph", "graph has no edges");
    std::set<int> seen;
    for (const auto& e : edges) {
        if (!vertices.count(e.v0) || !vertices.count(e.v1))
            throw validation_error("BadGraph", "edge endpoint without a vertex entry");
        if (e.length.num <= 0 || e.length.den <= 0)
            throw validation_error("BadGraph", "edge length must be positive");
        if (e.length.den > 64)
            throw numerical_error("IrrationalLengths",
                                  "length denominator exceeds the cap of 64");
        if (e.sigma_cells.empty())
            throw validation_error("BadSigma", "edge without sigma cells");
        seen.insert(e.v0);
        seen.insert(e.v1);
    }
    for (const auto& [id, cond] : vertices)
        if (!seen.count(id)) throw validation_error("BadGraph", "isolated vertex");
    // Connectivity over the edge list.
    std::map<int, std::vector<int>> adj;
    for (const auto& e : edges) {
        adj[e.v0].push_back(e.v1);
        adj[e.v1].push_back(e.v0);
    }
    std::set<int> reached;
    std::queue<int> frontier;
    frontier.push(edges.front().v0);
    reached.insert(edges.front().v0);
    while (!frontier.empty()) {
        int v = frontier.front();
        frontier.pop();
        for (int w : adj[v])
            if (reached.insert(w).second) frontier.push(w);
    }
    if (reached.size() != vertices.size())
        throw validation_error("BadGraph", "graph is not connected");
}

ProblemL star_problem(int m, double h, const std::vector<double>& robin_h,
                      const std::vector<std::vector<double>>& sigmas) {
    if (m < 2) throw validation_error("BadGraph", "star needs at least two edges");
    if (static_cast<int>(sigmas.size()) != m)
        throw validation_error("BadSigma", "need one sigma field per edge");
    const int r = static_cast<int>(robin_h.size());
    if (r > m) throw validation_error("BadGraph", "more Robin ends than edges");

    int cells = 1;
    for (const auto& s : sigmas) cells = static_cast<int>(lcm_ll(cells, static_cast<long long>(s.size())));
    SigmaField sigma;
    sigma.m = m;
    sigma.cells.assign(static_cast<size_t>(cells), CMat::Zero(m, m));
    for (int j = 0; j < m; ++j) {
        auto cj = resample_cells(sigmas[static_cast<size_t>(j)], cells);
        for (int c = 0; c < cells; ++c) sigma.cells[static_cast<size_t>(c)](j, j) = cj[static_cast<size_t>(c)];
    }

    CMat T1 = CMat::Zero(m, m), H1 = CMat::Zero(m, m);
    for (int j = 0; j < r; ++j) {
        T1(j, j) = 1.0;
        H1(j, j) = robin_h[static_cast<size_t>(j)];
    }
    CMat T2 = CMat::Constant(m, m, Complex(1.0 / m, 0.0));
    CMat H2 = h * T2;
    return make_problem(std::move(sigma), validate_boundary(T1, T2, H1, H2, m));
}

NormalizedGraph bipartite_normalize(const GraphSpec& input) {
    input.validate();

    // Common subdivision length L = gcd of the rational lengths.
    long long D = 1;
    for (const auto& e : input.edges) D = lcm_ll(D, e.length.den);
    long long G = 0;
    for (const auto& e : input.edges) G = std::gcd(G, e.length.num * (D / e.length.den));
    Rational L{G, D};

    auto subdivide = [](const GraphSpec& g, const Rational& unit) {
        GraphSpec out;
        out.vertices = g.vertices;
        int next_id = 0;
        for (const auto& [id, cond] : g.vertices) next_id = std::max(next_id, id + 1);
        for (const auto& e : g.edges) {
            // pieces = length / unit over a common denominator.
            long long common = lcm_ll(e.length.den, unit.den);
            long long pieces_ll = (e.length.num * (common / e.length.den)) /
                                  (unit.num * (common / unit.den));
            int pieces = static_cast<int>(pieces_ll);
            int ncells = static_cast<int>(lcm_ll(static_cast<long long>(e.sigma_cells.size()),
                                                 pieces));
            auto cells = resample_cells(e.sigma_cells, ncells);
            int per = ncells / pieces;
            int prev = e.v0;
            for (int p = 0; p < pieces; ++p) {
                int next = (p + 1 == pieces) ? e.v1 : next_id++;
                if (p + 1 < pieces) out.vertices[next] = VertexCondition{false, 0.0};
                GraphEdge piece;
                piece.v0 = prev;
                piece.v1 = next;
                piece.length = unit;
                piece.sigma_cells.assign(cells.begin() + p * per, cells.begin() + (p + 1) * per);
                out.edges.push_back(std::move(piece));
                prev = next;
            }
        }
        return out;
    };

    GraphSpec g = subdivide(input, L);

    // 2-coloring; an odd cycle forces one more halving of every edge.
    auto try_color = [](const GraphSpec& graph, std::map<int, int>& klass) {
        klass.clear();
        std::map<int, std::vector<int>> adj;
        for (const auto& e : graph.edges) {
            adj[e.v0].push_back(e.v1);
            adj[e.v1].push_back(e.v0);
        }
        int start = graph.vertices.begin()->first;
        klass[start] = 1;
        std::queue<int> frontier;
        frontier.push(start);
        while (!frontier.empty()) {
            int v = frontier.front();
            frontier.pop();
            for (int w : adj[v]) {
                if (!klass.count(w)) {
                    klass[w] = 3 - klass[v];
                    frontier.push(w);
                } else if (klass[w] == klass[v]) {
                    return false;
                }
            }
        }
        return true;
    };

    std::map<int, int> klass;
    if (!try_color(g, klass)) {
        L = Rational{L.num, L.den * 2};
        g = subdivide(g, L);
        if (!try_color(g, klass))
            throw numerical_error("OrientationConflict",
                                  "halved graph still fails to 2-color");
    }

    // Orient every edge from class 1 to class 2.
    for (auto& e : g.edges) {
        if (klass[e.v0] == 2 && klass[e.v1] == 1) {
            std::swap(e.v0, e.v1);
            std::reverse(e.sigma_cells.begin(), e.sigma_cells.end());
        } else if (klass[e.v0] == klass[e.v1]) {
            throw numerical_error("OrientationConflict", "edge inside one bipartition class");
        }
    }

    NormalizedGraph out;
    out.graph = std::move(g);
    out.vclass = std::move(klass);
    // Rational lengths are in units of pi, so an edge of length [1, 1]
    // needs no rescaling.
    out.edge_length = L.value() * kPi;
    out.rescale = kPi / out.edge_length;
    return out;
}

ReducedGraph general_reduction(const NormalizedGraph& normalized) {
    const GraphSpec& g = normalized.graph;
    const int m = static_cast<int>(g.edges.size());
    const double s = normalized.rescale;

    int cells = 1;
    for (const auto& e : g.edges)
        cells = static_cast<int>(lcm_ll(cells, static_cast<long long>(e.sigma_cells.size())));
    SigmaField sigma;
    sigma.m = m;
    sigma.cells.assign(static_cast<size_t>(cells), CMat::Zero(m, m));
    for (int j = 0; j < m; ++j) {
        auto cj = resample_cells(g.edges[static_cast<size_t>(j)].sigma_cells, cells);
        // x -> s x maps the edge to (0, pi) and divides sigma by s.
        for (int c = 0; c < cells; ++c)
            sigma.cells[static_cast<size_t>(c)](j, j) = cj[static_cast<size_t>(c)] / s;
    }

    CMat T1 = CMat::Zero(m, m), H1 = CMat::Zero(m, m);
    CMat T2 = CMat::Zero(m, m), H2 = CMat::Zero(m, m);
    for (const auto& [id, cond] : g.vertices) {
        if (cond.dirichlet) continue;  // zero block
        std::vector<int> incident;
        bool at_zero = (normalized.vclass.at(id) == 1);
        for (int j = 0; j < m; ++j) {
            const auto& e = g.edges[static_cast<size_t>(j)];
            if ((at_zero && e.v0 == id) || (!at_zero && e.v1 == id)) incident.push_back(j);
        }
        if (incident.empty()) continue;
        double w = 1.0 / static_cast<double>(incident.size());
        CMat Tv = CMat::Zero(m, m);
        for (int a : incident)
            for (int bq : incident) Tv(a, bq) = w;
        // Kirchhoff coupling h rescales with x like sigma.
        if (at_zero) {
            T1 += Tv;
            H1 += (cond.h / s) * Tv;
        } else {
            T2 += Tv;
            H2 += (cond.h / s) * Tv;
        }
    }

    ReducedGraph out{make_problem(std::move(sigma), validate_boundary(T1, T2, H1, H2, m)),
                     normalized.rescale, m};
    return out;
}

ReducedGraph reduce_graph(const GraphSpec& graph) {
    return general_reduction(bipartite_normalize(graph));
}

}  // namespace slmat
