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

// Subcommand bodies for the symdisc command-line tool. They write to the
// given streams and return the process exit code, so tests can drive them
// without spawning processes.
//
// Exit codes:
//   0  success
//   2  problem failed validation
//   3  I/O failure
//   4  parse failure or unknown gallery id
//   5  construction failure
//   6  certification failure
//   7  simulation failure

#pragma once

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "symdisc/error.hpp"
#include "symdisc/gallery.hpp"
#include "symdisc/optmeas.hpp"
#include "symdisc/oracle.hpp"
#include "symdisc/problem_io.hpp"

namespace symdisc::cli {

enum ExitCode : int {
    kOk = 0,
    kValidation = 2,
    kIo = 3,
    kParse = 4,
    kConstruction = 5,
    kCertification = 6,
    kSimulation = 7,
};

inline constexpr std::uint64_t kDefaultSeed = 1;
inline constexpr std::int64_t kDefaultShots = 1000000;

inline int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Io: return kIo;
        case ErrorKind::Parse: return kParse;
        case ErrorKind::Construction:
        case ErrorKind::InvalidPhi0:
        case ErrorKind::NoConvergence:
        case ErrorKind::Precondition: return kConstruction;
        case ErrorKind::Normalization: return kSimulation;
        default: return kValidation;
    }
}

/// Text block listing the fixed tolerances, for --help.
inline std::string tolerance_summary() {
    std::ostringstream s;
    s << "Fixed tolerances (scaled only by --tol-scale, which marks reports non-certifying):\n"
      << "  pairwise condition residual      <= " << Thresholds::kPairwise << "\n"
      << "  global condition min eigenvalue  >= -" << Thresholds::kGlobal << "\n"
      << "  completeness residual            <= " << Thresholds::kCompleteness << "\n"
      << "  POM positivity floor             >= -" << Thresholds::kPositivity << "\n"
      << "  hermiticity of sum pi_k rho_k    <= " << Thresholds::kHermiticity << "\n"
      << "  family unitarity / order / trace <= " << FamilyTolerances::kUnitarity << "\n"
      << "  oracle gap (ansatz search)       <= " << kOracleTolerance << "\n"
      << "Exit codes: 0 ok, 2 validation, 3 io, 4 parse, 5 construction, 6 certification, 7 simulation.\n";
    return s.str();
}

inline std::string format12(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

inline bool is_gallery_id(const std::string& s) { return s == "ex1" || s == "ex2" || s == "ex3"; }

inline DirectSumProblem gallery_problem(const std::string& id, int n) {
    if (id == "ex1") return DirectSumProblem::single(gallery::build_ex1(n));
    if (id == "ex2") return DirectSumProblem::single(gallery::build_ex2());
    if (id == "ex3") return gallery::build_ex3();
    throw Error(ErrorKind::Parse, "unknown gallery id '" + id + "' (expected ex1, ex2 or ex3)");
}

/// A problem source is either a file path or a gallery id (ex1 uses `n`).
inline DirectSumProblem load_source(const std::string& source, int n) {
    if (is_gallery_id(source)) return gallery_problem(source, n);
    return io::build_problem(io::load_problem(source));
}

namespace detail {

template <typename F>
int guarded(std::ostream& err, F&& body) {
    try {
        return body();
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kConstruction;
    }
}

inline void print_residuals(std::ostream& out, const std::string& label, const ConditionResiduals& r) {
    out << label << "\n"
        << "  pairwise_residual        " << format12(r.pairwise_residual) << "\n"
        << "  global_min_eigenvalue    " << format12(r.global_min_eigenvalue) << "\n"
        << "  sum_hermiticity_residual " << format12(r.sum_hermiticity_residual) << "\n"
        << "  completeness_residual    " << format12(r.completeness_residual) << "\n"
        << "  pom_positivity_min       " << format12(r.pom_positivity_min) << "\n";
}

/// "uniform", "canonical", or per-block comma lists of real eigenbasis
/// coefficients separated by ';'.
inline std::vector<std::optional<ComplexMatrix>> parse_phi0(const std::string& text, const DirectSumProblem& p) {
    std::vector<std::optional<ComplexMatrix>> out;
    if (text == "canonical") {
        out.resize(p.blocks().size());
        return out;
    }
    if (text == "uniform") {
        for (const auto& b : p.blocks()) out.emplace_back(uniform_phi0(b));
        return out;
    }
    std::vector<std::string> groups;
    std::stringstream ss(text);
    for (std::string g; std::getline(ss, g, ';');) groups.push_back(g);
    if (groups.size() != p.blocks().size()) {
        throw Error(ErrorKind::Parse, "--phi0 needs one coefficient list per block (" +
                                          std::to_string(p.blocks().size()) + ")");
    }
    for (std::size_t i = 0; i < groups.size(); ++i) {
        std::vector<double> coeffs;
        std::stringstream gs(groups[i]);
        for (std::string tok; std::getline(gs, tok, ',');) {
            try {
                std::size_t used = 0;
                coeffs.push_back(std::stod(tok, &used));
                if (used != tok.size()) throw std::invalid_argument(tok);
            } catch (const std::exception&) {
                throw Error(ErrorKind::Parse, "--phi0: cannot parse '" + tok + "' as a number");
            }
        }
        out.emplace_back(phi0_from_coefficients(p.blocks()[i], coeffs));
    }
    return out;
}

}  // namespace detail

inline int cmd_validate(const std::string& source, int n, std::ostream& out, std::ostream& err) {
    return detail::guarded(err, [&] {
        const DirectSumProblem p = load_source(source, n);
        out << "valid: n=" << p.n() << " blocks=" << p.blocks().size() << "\n";
        for (std::size_t i = 0; i < p.blocks().size(); ++i) {
            const auto& b = p.blocks()[i];
            out << "  block " << i << ": dim=" << b.dim() << " sign=" << static_cast<int>(b.sign())
                << " trace=" << format12(b.weight()) << " real-nonnegative eigenbasis found"
                << (b.phase_graph_connected() ? "" : " (phase graph disconnected)") << "\n";
        }
        return static_cast<int>(kOk);
    });
}

struct SolveOptions {
    std::string out_path;
    std::string phi0 = "canonical";
    double tol_scale = 1.0;
};

inline int cmd_solve(const std::string& source, int n, const SolveOptions& opt, std::ostream& out,
                     std::ostream& err) {
    return detail::guarded(err, [&] {
        const DirectSumProblem p = load_source(source, n);
        const auto phi0s = detail::parse_phi0(opt.phi0, p);
        std::vector<Pom> poms;
        for (std::size_t i = 0; i < p.blocks().size(); ++i) poms.push_back(build_pom(p.blocks()[i], phi0s[i]));
        const OptimalityReport report = evaluate(p, poms, Thresholds{opt.tol_scale});
        if (!opt.out_path.empty()) io::write_file(opt.out_path, io::dump_report(report));
        out << format12(report.p_error) << "\n";
        return static_cast<int>(kOk);
    });
}

struct CertifyOptions {
    int grid_steps = kDefaultGridSteps;
    double tol_scale = 1.0;
    /// Test hook: adds ε·diag(1, −1, 0, …) to π0 of the first block with
    /// dimension >= 2 and renormalizes before certifying.
    double inject_perturbation = 0.0;
};

inline int cmd_certify(const std::string& source, int n, const CertifyOptions& opt, std::ostream& out,
                       std::ostream& err) {
    return detail::guarded(err, [&] {
        const DirectSumProblem p = load_source(source, n);
        std::optional<std::vector<Pom>> injected;
        if (opt.inject_perturbation != 0.0) {
            std::vector<Pom> poms = solve(p).block_poms;
            for (std::size_t i = 0; i < poms.size(); ++i) {
                const std::size_t d = p.blocks()[i].dim();
                if (d < 2) continue;
                std::vector<Complex> diag(d);
                diag[0] = opt.inject_perturbation;
                diag[1] = -opt.inject_perturbation;
                poms[i] = perturb_pom(poms[i], ComplexMatrix::diagonal(diag));
                break;
            }
            injected = std::move(poms);
        }
        const CertifyResult c = certify(p, opt.grid_steps, injected, Thresholds{opt.tol_scale});
        out << "p_error        " << format12(c.report.p_error) << "\n"
            << "oracle_p_error " << format12(c.oracle_p_error) << "\n"
            << "oracle_gap     " << format12(c.oracle_gap) << " (tolerance " << kOracleTolerance << ")\n";
        detail::print_residuals(out, "conditions", c.report.conditions);
        for (std::size_t i = 0; i < c.report.per_block.size(); ++i) {
            detail::print_residuals(out, "block " + std::to_string(i) + " (grid " +
                                             std::to_string(c.searches[i].grid_steps) + ")",
                                    c.report.per_block[i].residuals);
        }
        if (!c.report.certifying) out << "note: tolerances scaled, result is not certifying\n";
        out << (c.certified ? "CERTIFIED" : "NOT CERTIFIED") << "\n";
        return static_cast<int>(c.certified ? kOk : kCertification);
    });
}

struct SimulateOptions {
    std::int64_t shots = kDefaultShots;
    std::optional<std::uint64_t> seed;
};

/// Explicit seed, else $SYMDISC_SEED, else kDefaultSeed.
inline std::uint64_t resolve_seed(const std::optional<std::uint64_t>& seed) {
    if (seed) return *seed;
    if (const char* env = std::getenv("SYMDISC_SEED"); env != nullptr && *env != '\0') {
        try {
            std::size_t used = 0;
            const unsigned long long v = std::stoull(env, &used);
            if (used == std::string(env).size()) return v;
        } catch (const std::exception&) {
        }
        throw Error(ErrorKind::Parse, std::string("SYMDISC_SEED is not an unsigned integer: ") + env);
    }
    return kDefaultSeed;
}

inline int cmd_simulate(const std::string& source, int n, const SimulateOptions& opt, std::ostream& out,
                        std::ostream& err) {
    return detail::guarded(err, [&] {
        if (opt.shots < 1) throw Error(ErrorKind::Parse, "--shots must be >= 1");
        const DirectSumProblem p = load_source(source, n);
        const std::uint64_t seed = resolve_seed(opt.seed);
        const Solution sol = solve(p);
        const SimulationResult r = simulate(p, sol.block_poms, opt.shots, seed);
        const bool pass = r.within_3_sigma();
        out << "shots     " << r.shots << "\n"
            << "seed      " << r.seed << "\n"
            << "errors    " << r.errors << "\n"
            << "empirical " << format12(r.empirical_error_rate) << "\n"
            << "analytic  " << format12(r.analytic_p_error) << "\n"
            << "sigma     " << format12(r.sigma()) << "\n"
            << (pass ? "PASS" : "FAIL") << "\n";
        return static_cast<int>(pass ? kOk : kSimulation);
    });
}

inline int cmd_gallery(const std::string& id, int n, const std::string& out_path, std::ostream& out,
                       std::ostream& err) {
    return detail::guarded(err, [&] {
        const std::string text = io::dump_problem(io::to_problem_file(gallery_problem(id, n)));
        if (out_path.empty() || out_path == "-") {
            out << text;
        } else {
            io::write_file(out_path, text);
            out << "wrote " << out_path << "\n";
        }
        return static_cast<int>(kOk);
    });
}

}  // namespace symdisc::cli
