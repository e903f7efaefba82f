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

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "symdisc/cli.hpp"

namespace {

constexpr const char* kSourceHelp = "Problem file (JSON) or gallery id ex1|ex2|ex3";

}  // namespace

int main(int argc, char** argv) {
    using namespace symdisc;

    CLI::App app{"symdisc: optimal minimum-error measurement for symmetric mixed states"};
    app.footer(cli::tolerance_summary());
    app.require_subcommand(1);

    std::string source;
    int n = 3;

    auto* validate = app.add_subcommand("validate", "Check a problem and locate its real-nonnegative eigenbasis");
    validate->add_option("problem", source, kSourceHelp)->required();
    validate->add_option("--n", n, "Group order for the ex1 gallery problem")->check(CLI::Range(2, 64));

    cli::SolveOptions solve_opt;
    auto* solve = app.add_subcommand("solve", "Build the optimal POM, write a report, print p_error");
    solve->add_option("problem", source, kSourceHelp)->required();
    solve->add_option("--n", n, "Group order for the ex1 gallery problem")->check(CLI::Range(2, 64));
    solve->add_option("--out", solve_opt.out_path, "Report file to write");
    solve->add_option("--phi0", solve_opt.phi0,
                      "canonical | uniform | per-block comma lists of real eigenbasis coefficients joined by ';'");
    solve->add_option("--tol-scale", solve_opt.tol_scale, "Multiply all thresholds (non-certifying)");

    cli::CertifyOptions certify_opt;
    auto* certify = app.add_subcommand("certify", "Check optimality conditions and compare with the ansatz oracle");
    certify->add_option("problem", source, kSourceHelp)->required();
    certify->add_option("--n", n, "Group order for the ex1 gallery problem")->check(CLI::Range(2, 64));
    certify->add_option("--grid-steps", certify_opt.grid_steps, "Grid points per real search parameter")
        ->check(CLI::Range(11, 100001));
    certify->add_option("--tol-scale", certify_opt.tol_scale, "Multiply all thresholds (non-certifying)");
    certify->add_option("--inject-perturbation", certify_opt.inject_perturbation,
                        "Test hook: perturb pi_0 by eps*diag(1,-1) before certifying")
        ->group("");

    cli::SimulateOptions simulate_opt;
    std::uint64_t seed = 0;
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo check of p_error (3-sigma binomial test)");
    simulate->add_option("problem", source, kSourceHelp)->required();
    simulate->add_option("--n", n, "Group order for the ex1 gallery problem")->check(CLI::Range(2, 64));
    simulate->add_option("--shots", simulate_opt.shots, "Number of simulated transmissions");
    auto* seed_opt = simulate->add_option("--seed", seed, "PRNG seed (default: $SYMDISC_SEED, else 1)");

    std::string gallery_id;
    std::string gallery_out;
    auto* gallery = app.add_subcommand("gallery", "Write a reference problem file");
    gallery->add_option("id", gallery_id, "ex1 | ex2 | ex3")->required();
    gallery->add_option("--n", n, "Group order for ex1")->check(CLI::Range(2, 64));
    gallery->add_option("--out", gallery_out, "Output path (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return cli::kParse;
    }

    if (*validate) return cli::cmd_validate(source, n, std::cout, std::cerr);
    if (*solve) return cli::cmd_solve(source, n, solve_opt, std::cout, std::cerr);
    if (*certify) return cli::cmd_certify(source, n, certify_opt, std::cout, std::cerr);
    if (*simulate) {
        if (*seed_opt) simulate_opt.seed = seed;
        return cli::cmd_simulate(source, n, simulate_opt, std::cout, std::cerr);
    }
    if (*gallery) return cli::cmd_gallery(gallery_id, n, gallery_out, std::cout, std::cerr);
    return cli::kParse;
}
