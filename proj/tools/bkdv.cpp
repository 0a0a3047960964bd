// Command-line front end: verify, compare, sweep, profile-dump.
// Exit codes: 0 all checks pass, 1 a check failed, 2 runtime or input error.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "bkdv/config.hpp"
#include "bkdv/errors.hpp"
#include "bkdv/experiment.hpp"
#include "bkdv/oracles.hpp"

namespace {

struct Common {
    std::string config;
    std::string out;
    std::optional<std::uint64_t> seed;
    int threads = 1;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--config", c.config, "YAML configuration file (defaults apply when omitted)");
    cmd->add_option("--out", c.out, "output directory (overrides output_dir)");
    cmd->add_option("--seed", c.seed, "random seed (overrides seed)");
    cmd->add_option("--threads", c.threads, "worker threads for independent runs")->check(CLI::Range(1, 256));
}

bkdv::ExperimentConfig resolve(const Common& c) {
    auto cfg = c.config.empty() ? bkdv::ExperimentConfig{} : bkdv::load_config(c.config);
    if (c.seed) cfg.seed = *c.seed;
    if (!c.out.empty()) cfg.output_dir = c.out;
    return cfg;
}

void save(const std::filesystem::path& p, const std::string& text) {
    std::filesystem::create_directories(p.parent_path());
    std::ofstream os(p, std::ios::binary);
    os << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Solitary waves over a variable bottom: verification and PDE-versus-ODE experiments"};
    app.require_subcommand(1);

    Common verify_opts, compare_opts, sweep_opts, dump_opts;
    bool oracles = false;
    std::string axis;
    std::vector<double> values;

    auto* verify = app.add_subcommand("verify", "run the property suites (or the oracles with --oracles)");
    add_common(verify, verify_opts);
    verify->add_flag("--oracles", oracles, "run the slow two-method reference computations instead");

    auto* compare = app.add_subcommand("compare", "evolve the PDE and compare with the effective ODE");
    add_common(compare, compare_opts);

    auto* sweep = app.add_subcommand("sweep", "run compare over a list of values of one parameter");
    add_common(sweep, sweep_opts);
    sweep->add_option("--axis", axis, "alpha, s, N, eps_a, eps_x, eps_t or c0")->required();
    sweep->add_option("--values", values, "values of the axis")->required()->delimiter(',');

    auto* dump = app.add_subcommand("profile-dump", "write the soliton and its tangent vectors to profile.csv");
    add_common(dump, dump_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*verify) {
            const auto cfg = resolve(verify_opts);
            if (oracles) {
                const auto recs = bkdv::run_all_oracles(verify_opts.threads);
                const auto text = bkdv::format_records(recs);
                std::cout << text;
                save(std::filesystem::path(cfg.output_dir) / "records.txt", text);
                for (const auto& r : recs) {
                    if (!r.agree()) {
                        std::cerr << "oracle disagreement: " << r.name << " (" << r.inputs << ")\n";
                        return 1;
                    }
                }
                return 0;
            }
            const auto rep = bkdv::cmd_verify(cfg, verify_opts.threads);
            std::cout << rep.to_text();
            save(std::filesystem::path(cfg.output_dir) / "verify.txt", bkdv::format_checks(rep.checks));
            return rep.all_pass() ? 0 : 1;
        }
        if (*compare) {
            const auto cfg = resolve(compare_opts);
            const auto res = bkdv::cmd_compare(cfg, cfg.output_dir);
            std::cout << res.report.to_text() << "runtime " << res.report.seconds << " s\n";
            return res.report.pass() ? 0 : 1;
        }
        if (*sweep) {
            const auto cfg = resolve(sweep_opts);
            const int failed = bkdv::cmd_sweep(cfg, axis, values, cfg.output_dir, sweep_opts.threads);
            std::cout << values.size() - static_cast<std::size_t>(failed) << '/' << values.size()
                      << " runs passed; see " << (std::filesystem::path(cfg.output_dir) / "sweep.csv").string() << '\n';
            return failed == 0 ? 0 : 1;
        }
        if (*dump) {
            const auto cfg = resolve(dump_opts);
            bkdv::profile_dump(cfg, cfg.output_dir);
            return 0;
        }
    } catch (const bkdv::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
