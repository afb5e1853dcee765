#include "wigner/cli/config.hpp"
#include "wigner/cli/scenario.hpp"
#include "wigner/errors.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

int exit_code(const std::exception& e) {
    using namespace wigner;
    if (dynamic_cast<const ConfigurationError*>(&e) || dynamic_cast<const CapabilityError*>(&e) ||
        dynamic_cast<const ComparabilityError*>(&e) || dynamic_cast<const DomainError*>(&e))
        return 2;
    if (dynamic_cast<const CoverageError*>(&e) || dynamic_cast<const ResolutionError*>(&e)) return 4;
    return 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Wigner-function expansions for single-well potentials"};
    app.require_subcommand(1);

    std::string config, out_dir, dir_a, dir_b, cmp_out = "comparison";
    auto* run = app.add_subcommand("run", "execute a scenario config");
    run->add_option("config", config, "scenario JSON")->required();
    run->add_option("-o,--output", out_dir, "output directory (defaults to the config's output)");

    auto* validate = app.add_subcommand("validate", "schema-check a config");
    validate->add_option("config", config, "scenario JSON")->required();

    auto* compare = app.add_subcommand("compare", "compare two run directories");
    compare->add_option("dir_a", dir_a)->required();
    compare->add_option("dir_b", dir_b)->required();
    compare->add_option("-o,--output", cmp_out, "report directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*validate) {
            const auto c = wigner::cli::load_config(config);
            std::cout << "ok " << c.name << " " << wigner::cli::config_hash(c) << "\n";
        } else if (*run) {
            const auto c = wigner::cli::load_config(config);
            const std::string out = out_dir.empty() ? c.output : out_dir;
            try {
                wigner::cli::run_scenario(c, out, std::cout);
            } catch (const std::exception& e) {
                std::cerr << "scenario '" << c.name << "': ";
                throw;
            }
            std::cout << "wrote " << out << "\n";
        } else if (*compare) {
            const auto s = wigner::cli::compare_runs(dir_a, dir_b, cmp_out, std::cout);
            if (s.order_mismatch) std::cout << "note: eps-scaling exponents of the two runs differ\n";
        }
    } catch (const wigner::SchemaError& e) {
        std::cerr << "config error at " << e.path() << ": " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return exit_code(e);
    }
    return 0;
}
