#include <chrono>
#include <iostream>

#include <CLI11.hpp>

#include "difftsp/gen.hpp"
#include "difftsp/io.hpp"
#include "difftsp/oracle.hpp"
#include "difftsp/tour_odd.hpp"

namespace {

using namespace difftsp;

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitAudit = 4;

std::vector<std::array<int, 4>> parse_paths(const std::string& text) {
    std::vector<std::array<int, 4>> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t semi = text.find(';', start);
        const std::string part = text.substr(start, semi == std::string::npos ? std::string::npos : semi - start);
        if (!part.empty()) {
            std::array<int, 4> tuple{};
            std::size_t pos = 0;
            for (int i = 0; i < 4; ++i) {
                const std::size_t comma = part.find(',', pos);
                const std::string tok = part.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
                try {
                    tuple[i] = std::stoi(tok);
                } catch (const std::exception&) {
                    throw MalformedInputError("bad --paths entry '" + part + "'");
                }
                if (i < 3) {
                    if (comma == std::string::npos) throw MalformedInputError("--paths tuples need 4 vertices");
                    pos = comma + 1;
                } else if (comma != std::string::npos) {
                    throw MalformedInputError("--paths tuples need exactly 4 vertices");
                }
            }
            out.push_back(tuple);
        }
        if (semi == std::string::npos) break;
        start = semi + 1;
    }
    if (out.empty()) throw MalformedInputError("--paths is empty");
    return out;
}

int cmd_gen(int n, const std::string& dist_text, std::uint64_t seed, const std::string& out_path) {
    const DistSpec dist = DistSpec::parse(dist_text);
    const Instance inst = generate_instance(n, dist, seed);
    const std::string text = serialize_instance_json(inst);
    if (out_path.empty() || out_path == "-")
        std::cout << text;
    else
        write_file(out_path, text);
    return kExitOk;
}

int cmd_exact(const std::string& in_path, const std::string& objective, int cap) {
    const Instance inst = load_instance_file(in_path);
    const ExactTour ex = exact_tour(inst, objective == "max" ? Objective::Max : Objective::Min, cap);
    std::cout << ex.length << "\n";
    for (std::size_t i = 0; i < ex.tour.size(); ++i) std::cout << (i ? " " : "") << ex.tour[i];
    std::cout << "\n";
    return kExitOk;
}

int cmd_solve(const std::string& in_path, bool oracle, bool audit, const std::string& mode_text,
              const std::string& paths_text, int threads, std::uint64_t seed, int cap) {
    const auto t0 = std::chrono::steady_clock::now();
    const Instance inst = load_instance_file(in_path);

    RunReport rep;
    rep.instance = inst.name();
    rep.n = inst.size();
    rep.seed = seed;

    TourResult result;
    std::optional<EvenRun> even_run;
    if (inst.size() % 2 == 0) {
        even_run = solve_even(inst);
        result = even_run->result;
    } else {
        OddMode mode = OddMode::full_mode();
        if (mode_text == "fixed") {
            if (paths_text.empty()) throw MalformedInputError("--mode fixed requires --paths");
            mode = OddMode::fixed(parse_paths(paths_text));
        } else if (mode_text != "full") {
            throw MalformedInputError("--mode must be full or fixed");
        }
        result = tour_odd(inst, mode, threads);
    }
    rep.algorithm = result.algorithm;
    rep.apx = result.length;
    rep.tour = canonical_tour(result.tour, inst);
    rep.candidates = result.candidates;

    if (oracle) {
        const Weight opt = exact_tour(inst, Objective::Min, cap).length;
        const Weight wor = exact_tour(inst, Objective::Max, cap).length;
        rep.opt = opt;
        rep.wor = wor;
        rep.rho = differential_ratio(opt, wor, result.length).str();
        if (result.algorithm == "even") {
            const bool pass = 4 * result.length <= 3 * opt + wor;
            rep.guarantee = "4*" + std::to_string(result.length) + " <= 3*" + std::to_string(opt) + " + " +
                            std::to_string(wor);
            rep.guarantee_pass = pass;
        } else if (result.algorithm == "odd") {
            const bool pass = 8 * result.length <= 6 * opt + 2 * wor;
            rep.guarantee = "8*" + std::to_string(result.length) + " <= 6*" + std::to_string(opt) + " + 2*" +
                            std::to_string(wor);
            rep.guarantee_pass = pass;
        } else {
            rep.guarantee = "exact optimum";
            rep.guarantee_pass = result.length == opt;
        }
    }

    bool audit_failed = false;
    if (audit) {
        AuditReport ar;
        if (even_run) {
            ar = audit_even_run(*even_run, inst);
        } else if (result.algorithm == "odd") {
            const auto& g = result.winning_guess;
            const OddRun run = inner_construction(inst, g[0], g[1], g[2], g[3]);
            ar = audit_odd(run, inst);
        } else {
            ar.add("exact fallback needs no structural audit", true);
        }
        rep.audit_ok = ar.ok;
        for (const AuditCheck& c : ar.checks)
            if (!c.pass) rep.audit_failures.push_back(c.name + (c.detail.empty() ? "" : ": " + c.detail));
        audit_failed = !ar.ok;
    }

    rep.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    std::cout << serialize_run_report(rep);
    return audit_failed ? kExitAudit : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"3/4-differential TSP approximation toolkit"};
    app.require_subcommand(1);

    auto* gen = app.add_subcommand("gen", "generate a random instance file");
    int gen_n = 8;
    std::string gen_dist = "uniform:0:100";
    std::uint64_t gen_seed = 0;
    std::string gen_out;
    gen->add_option("--n", gen_n, "vertex count (>= 3)")->required();
    gen->add_option("--dist", gen_dist, "uniform:LO:HI | euclidean:BOX | onetwo");
    gen->add_option("--seed", gen_seed, "RNG seed");
    gen->add_option("--out", gen_out, "output path (default stdout)");

    auto* solve = app.add_subcommand("solve", "run the approximation algorithm and report");
    std::string solve_in;
    bool solve_oracle = false, solve_audit = false;
    std::string solve_mode = "full", solve_paths;
    int solve_threads = 1, solve_cap = 20;
    std::uint64_t solve_seed = 0;
    solve->add_option("--in", solve_in, "instance file (native JSON or TSPLIB)")->required();
    solve->add_flag("--oracle", solve_oracle, "also compute opt/wor exactly and check the guarantee");
    solve->add_flag("--audit", solve_audit, "run the structural audits and embed the outcome");
    solve->add_option("--mode", solve_mode, "odd-case guess mode: full | fixed");
    solve->add_option("--paths", solve_paths, "fixed-mode guesses, e.g. \"0,1,2,3;4,5,6,7\"");
    solve->add_option("--threads", solve_threads, "worker threads for the odd-case guess loop");
    solve->add_option("--seed", solve_seed, "seed recorded in the report");
    solve->add_option("--oracle-cap", solve_cap, "max n for the exact oracle");

    auto* exact = app.add_subcommand("exact", "exact shortest/longest tour via subset DP");
    std::string exact_in, exact_obj = "min";
    int exact_cap = 20;
    exact->add_option("--in", exact_in, "instance file")->required();
    exact->add_option("--objective", exact_obj, "min | max")->check(CLI::IsMember({"min", "max"}));
    exact->add_option("--cap", exact_cap, "max n for the DP table guard");

    try {
        app.parse(argc, argv);
        if (gen->parsed()) return cmd_gen(gen_n, gen_dist, gen_seed, gen_out);
        if (exact->parsed()) return cmd_exact(exact_in, exact_obj, exact_cap);
        return cmd_solve(solve_in, solve_oracle, solve_audit, solve_mode, solve_paths, solve_threads, solve_seed,
                         solve_cap);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitParse;
    } catch (const MalformedInputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const PreconditionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const InfeasibleError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const ResourceGuardError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const Error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitAudit;
    }
}
