#include "slmat/io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace slmat {

namespace {

using nlohmann::json;

json matrix_to_json(const CMat& M) {
    json out = json::array();
    for (Eigen::Index i = 0; i < M.rows(); ++i)
        for (Eigen::Index j = 0; j < M.cols(); ++j)
            out.push_back(json::array({M(i, j).real(), M(i, j).imag()}));
    return out;
}

CMat matrix_from_json(const json& j, int m, const char* name) {
    if (!j.is_array() || static_cast<int>(j.size()) != m * m)
        throw validation_error("BadFile", std::string(name) + " must hold m*m [re,im] pairs");
    CMat M(m, m);
    for (int i = 0; i < m; ++i)
        for (int k = 0; k < m; ++k) {
            const json& e = j[static_cast<size_t>(i * m + k)];
            if (!e.is_array() || e.size() != 2)
                throw validation_error("BadFile", std::string(name) + " entry is not [re,im]");
            M(i, k) = Complex(e[0].get<double>(), e[1].get<double>());
        }
    return M;
}

json load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("BadFile", "cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw validation_error("BadFile", std::string("JSON parse failure: ") + e.what());
    }
    return j;
}

void write_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw validation_error("BadFile", "cannot write " + path);
    out << j.dump(1) << "\n";
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

ProblemL load_problem(const std::string& path) {
    json j = load_file(path);
    int m = j.at("m").get<int>();
    int n = j.at("N").get<int>();
    if (m < 1 || n < 1) throw validation_error("BadFile", "m and N must be positive");
    SigmaField sigma;
    sigma.m = m;
    const json& cells = j.at("sigma");
    if (!cells.is_array() || static_cast<int>(cells.size()) != n)
        throw validation_error("BadFile", "sigma must hold N cells");
    for (int c = 0; c < n; ++c)
        sigma.cells.push_back(matrix_from_json(cells[static_cast<size_t>(c)], m, "sigma cell"));
    BoundaryData b = validate_boundary(matrix_from_json(j.at("T1"), m, "T1"),
                                       matrix_from_json(j.at("T2"), m, "T2"),
                                       matrix_from_json(j.at("H1"), m, "H1"),
                                       matrix_from_json(j.at("H2"), m, "H2"), m);
    return make_problem(std::move(sigma), std::move(b));
}

void save_problem(const ProblemL& problem, const std::string& path, double rescale) {
    json j;
    j["m"] = problem.m();
    j["N"] = problem.sigma.cell_count();
    json cells = json::array();
    for (const CMat& c : problem.sigma.cells) cells.push_back(matrix_to_json(c));
    j["sigma"] = cells;
    j["T1"] = matrix_to_json(problem.boundary.T1);
    j["T2"] = matrix_to_json(problem.boundary.T2);
    j["H1"] = matrix_to_json(problem.boundary.H1);
    j["H2"] = matrix_to_json(problem.boundary.H2);
    if (rescale > 0.0) j["rescale"] = rescale;
    write_file(path, j);
}

SpectralDataSet load_spectral_data(const std::string& path) {
    json j = load_file(path);
    SpectralDataSet data;
    data.m = j.at("m").get<int>();
    for (const json& e : j.at("entries")) {
        SpectralEntry entry;
        entry.index = {e.at("n").get<int>(), e.at("k").get<int>()};
        entry.lambda = e.at("lambda").get<double>();
        entry.multiplicity = e.at("multiplicity").get<int>();
        entry.alpha = matrix_from_json(e.at("alpha"), data.m, "alpha");
        data.entries.push_back(std::move(entry));
    }
    data.regroup();
    data.validate();
    return data;
}

void save_spectral_data(const SpectralDataSet& data, const std::string& path) {
    json j;
    j["m"] = data.m;
    json entries = json::array();
    for (const auto& e : data.entries) {
        json je;
        je["n"] = e.index.n;
        je["k"] = e.index.k;
        je["lambda"] = e.lambda;
        je["multiplicity"] = e.multiplicity;
        je["alpha"] = matrix_to_json(e.alpha);
        entries.push_back(std::move(je));
    }
    j["entries"] = entries;
    write_file(path, j);
}

GraphSpec load_graph(const std::string& path) {
    json j = load_file(path);
    GraphSpec g;
    for (const json& je : j.at("edges")) {
        GraphEdge e;
        e.v0 = je.at("v0").get<int>();
        e.v1 = je.at("v1").get<int>();
        const json& len = je.at("length");
        if (!len.is_array() || len.size() != 2)
            throw validation_error("BadFile", "edge length must be [num, den]");
        e.length = {len[0].get<long long>(), len[1].get<long long>()};
        for (const json& c : je.at("sigma")) e.sigma_cells.push_back(c.get<double>());
        g.edges.push_back(std::move(e));
    }
    for (const json& jv : j.at("vertices")) {
        VertexCondition cond;
        const json& c = jv.at("condition");
        if (c.is_string() && c.get<std::string>() == "dirichlet") {
            cond.dirichlet = true;
        } else if (c.is_object() && c.contains("kirchhoff")) {
            cond.h = c.at("kirchhoff").get<double>();
        } else {
            throw validation_error("BadFile", "vertex condition must be \"dirichlet\" or {\"kirchhoff\": h}");
        }
        g.vertices[jv.at("id").get<int>()] = cond;
    }
    g.validate();
    return g;
}

std::string recovered_json(const RecoveredProjectors& rec) {
    json j;
    j["T1"] = matrix_to_json(rec.T1);
    j["T2"] = matrix_to_json(rec.T2);
    j["snap_distance"] = std::max(rec.t1_snap, rec.t2_residual);
    j["t1_snap"] = rec.t1_snap;
    j["t2_range_residual"] = rec.t2_residual;
    j["rho_star"] = rec.rho_star;
    return j.dump(1) + "\n";
}

void save_recovered(const RecoveredProjectors& rec, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw validation_error("BadFile", "cannot write " + path);
    out << recovered_json(rec);
}

void print_matrix(std::ostream& os, const CMat& M) {
    for (Eigen::Index i = 0; i < M.rows(); ++i) {
        for (Eigen::Index j = 0; j < M.cols(); ++j) {
            os << (j ? " " : "") << "[" << fmt17(M(i, j).real()) << "," << fmt17(M(i, j).imag())
               << "]";
        }
        os << "\n";
    }
}

std::string spectral_data_csv(const SpectralDataSet& data) {
    std::ostringstream os;
    os << "n,k,lambda,multiplicity";
    for (int i = 0; i < data.m; ++i)
        for (int j = 0; j < data.m; ++j) os << ",alpha_re_" << i << j << ",alpha_im_" << i << j;
    os << "\n";
    for (const auto& e : data.entries) {
        os << e.index.n << "," << e.index.k << "," << fmt17(e.lambda) << "," << e.multiplicity;
        for (int i = 0; i < data.m; ++i)
            for (int j = 0; j < data.m; ++j)
                os << "," << fmt17(e.alpha(i, j).real()) << "," << fmt17(e.alpha(i, j).imag());
        os << "\n";
    }
    return os.str();
}

}  // namespace slmat
