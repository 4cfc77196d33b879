#include <symplab/suites.hpp>

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

namespace {

struct Args {
    std::string config;
    std::string out = "report.jsonl";
    std::optional<std::string> suite;
    std::optional<uint64_t> seed;
    std::optional<double> tol;
};

void add_common(CLI::App* sub, Args& args)
{
    sub->add_option("config", args.config, "scenario config file")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("-o,--out", args.out, "report output path (JSON Lines)")
        ->capture_default_str();
    sub->add_option("--suite", args.suite, "run this suite instead of the subcommand's");
    sub->add_option("--seed", args.seed, "override the scenario seed");
    sub->add_option("--tol", args.tol, "override the scenario check tolerance")
        ->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"numerical laboratory for a two-cocycle on symplectomorphism groups"};
    app.require_subcommand(1);

    Args args;
    add_common(app.add_subcommand("verify", "cocycle and primitive identity checks"), args);
    add_common(app.add_subcommand("table", "cocycle values over the declared map grid, with CSV"),
               args);
    add_common(app.add_subcommand("kahler", "cocycle against signed triangle areas on the disk"),
               args);
    add_common(app.add_subcommand("distortion", "power growth and word-length diagnostics"),
               args);
    add_common(app.add_subcommand("hamiltonian", "action functional checks for flow maps"), args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    symplab::RunOverrides ov;
    ov.suite = args.suite ? *args.suite : app.get_subcommands().front()->get_name();
    ov.seed = args.seed;
    ov.tol = args.tol;
    return symplab::run_scenario(args.config, args.out, ov, std::cout);
}
