// Copyright 2026 The symdisc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// JSON problem and report files.
//
// Problem file (version 1):
//   {
//     "version": 1,
//     "n": 3,
//     "blocks": [ { "sign": -1, "r": M, "rho0": M }, ... ]
//   }
// where a matrix M is an array of rows and every entry is a [re, im] pair.
//
// Report file:
//   {
//     "tool_version": "...", "p_error": x, "optimal": bool,
//     "certifying": bool, "tol_scale": x,
//     "conditions": { "pairwise_residual", "global_min_eigenvalue",
//                     "sum_hermiticity_residual", "completeness_residual",
//                     "pom_positivity_min" },
//     "per_block": [ { "dim", "weight", "correct_share",
//                      "phase_graph_connected", "pom": [M, ...],
//                      "residuals": { ...same keys as conditions... } } ]
//   }

#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "symdisc/cxmat.hpp"
#include "symdisc/error.hpp"
#include "symdisc/optmeas.hpp"
#include "symdisc/symstates.hpp"

namespace symdisc::io {

using json = nlohmann::json;

inline constexpr int kProblemVersion = 1;
inline constexpr const char* kToolVersion = "symdisc 1.0.0";

struct ProblemBlock {
    Sign sign = Sign::Plus;
    ComplexMatrix r;
    ComplexMatrix rho0;
};

struct ProblemFile {
    int version = kProblemVersion;
    int n = 1;
    std::vector<ProblemBlock> blocks;
};

inline json matrix_to_json(const ComplexMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

inline ComplexMatrix matrix_from_json(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty()) throw Error(ErrorKind::Parse, where + ": expected a non-empty array of rows");
    const std::size_t rows = j.size();
    const std::size_t cols = j.front().is_array() ? j.front().size() : 0;
    std::vector<Complex> data;
    for (const auto& row : j) {
        if (!row.is_array() || row.size() != cols || cols == 0) {
            throw Error(ErrorKind::Parse, where + ": rows must be equal-length arrays");
        }
        for (const auto& z : row) {
            if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number()) {
                throw Error(ErrorKind::Parse, where + ": entries must be [re, im] number pairs");
            }
            data.emplace_back(z[0].get<double>(), z[1].get<double>());
        }
    }
    return ComplexMatrix(rows, cols, std::move(data));
}

inline json to_json(const ProblemFile& p) {
    json blocks = json::array();
    for (const auto& b : p.blocks) {
        blocks.push_back({{"sign", static_cast<int>(b.sign)}, {"r", matrix_to_json(b.r)}, {"rho0", matrix_to_json(b.rho0)}});
    }
    return {{"version", p.version}, {"n", p.n}, {"blocks", std::move(blocks)}};
}

inline ProblemFile problem_from_json(const json& j) {
    try {
        if (!j.is_object()) throw Error(ErrorKind::Parse, "problem file must be a JSON object");
        ProblemFile p;
        p.version = j.at("version").get<int>();
        if (p.version != kProblemVersion) {
            throw Error(ErrorKind::Parse, "unsupported problem version " + std::to_string(p.version));
        }
        p.n = j.at("n").get<int>();
        const json& blocks = j.at("blocks");
        if (!blocks.is_array() || blocks.empty()) throw Error(ErrorKind::Parse, "\"blocks\" must be a non-empty array");
        for (std::size_t i = 0; i < blocks.size(); ++i) {
            const std::string where = "blocks[" + std::to_string(i) + "]";
            const json& b = blocks[i];
            const int sign = b.at("sign").get<int>();
            if (sign != 1 && sign != -1) throw Error(ErrorKind::Parse, where + ".sign must be +1 or -1");
            p.blocks.push_back({sign == 1 ? Sign::Plus : Sign::Minus, matrix_from_json(b.at("r"), where + ".r"),
                                matrix_from_json(b.at("rho0"), where + ".rho0")});
        }
        return p;
    } catch (const json::exception& e) {
        throw Error(ErrorKind::Parse, e.what());
    }
}

inline ProblemFile parse_problem(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(ErrorKind::Parse, e.what());
    }
    return problem_from_json(j);
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw Error(ErrorKind::Io, "cannot read " + path);
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Io, "cannot open " + path + " for writing");
    out << text;
    if (!out) throw Error(ErrorKind::Io, "cannot write " + path);
}

inline ProblemFile load_problem(const std::string& path) { return parse_problem(read_file(path)); }

inline std::string dump_problem(const ProblemFile& p) { return to_json(p).dump(2) + "\n"; }

/// Validates every block; block weights are the rho0 traces.
inline DirectSumProblem build_problem(const ProblemFile& p) {
    std::vector<SymmetricFamily> blocks;
    for (const auto& b : p.blocks) {
        const double weight = trace(b.rho0).real();
        blocks.push_back(SymmetricFamily::create(b.r, p.n, b.sign, b.rho0, weight));
    }
    return DirectSumProblem::create(std::move(blocks));
}

inline ProblemFile to_problem_file(const DirectSumProblem& problem) {
    ProblemFile p;
    p.n = problem.n();
    for (const auto& b : problem.blocks()) p.blocks.push_back({b.sign(), b.r(), b.rho0()});
    return p;
}

inline json residuals_to_json(const ConditionResiduals& r) {
    return {{"pairwise_residual", r.pairwise_residual},
            {"global_min_eigenvalue", r.global_min_eigenvalue},
            {"sum_hermiticity_residual", r.sum_hermiticity_residual},
            {"completeness_residual", r.completeness_residual},
            {"pom_positivity_min", r.pom_positivity_min}};
}

inline json report_to_json(const OptimalityReport& report) {
    json blocks = json::array();
    for (const auto& b : report.per_block) {
        json pom = json::array();
        for (const auto& e : b.pom.elements) pom.push_back(matrix_to_json(e));
        blocks.push_back({{"dim", b.dim},
                          {"weight", b.weight},
                          {"correct_share", b.correct_share},
                          {"phase_graph_connected", b.phase_graph_connected},
                          {"pom", std::move(pom)},
                          {"residuals", residuals_to_json(b.residuals)}});
    }
    return {{"tool_version", kToolVersion},
            {"p_error", report.p_error},
            {"optimal", report.optimal},
            {"certifying", report.certifying},
            {"tol_scale", report.tol_scale},
            {"conditions", residuals_to_json(report.conditions)},
            {"per_block", std::move(blocks)}};
}

inline std::string dump_report(const OptimalityReport& report) { return report_to_json(report).dump(2) + "\n"; }

}  // namespace symdisc::io
