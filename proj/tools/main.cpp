#include <filesystem>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "handles.hpp"

using namespace ifscli;

int main(int argc, char** argv) {
    CLI::App app{"ifs-lab: attractors, target sets, chaos games and stationary measures of interval IFSs"};
    app.require_subcommand(1);

    std::string config_path, out_dir = ".";
    // Flag values are applied after the config file so they take precedence.
    std::map<std::string, std::string> flags;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "config file (key = value, [map] blocks)");
        sub->add_option("--out", out_dir, "output directory");
        for (const char* key : {"preset", "tol", "max-depth", "max-iter", "bins", "samples", "seed", "weights", "matrix",
                                "budget", "workers", "prefix", "w1-tol", "merge-eps", "reference", "tail",
                                "resolution", "conley-eps", "mode", "x0"}) {
            std::string name = key;
            sub->add_option_function<std::string>(
                "--" + name,
                [&flags, name](const std::string& v) {
                    std::string cfg_key = name;
                    for (char& c : cfg_key)
                        if (c == '-') c = '_';
                    flags[cfg_key] = v;
                },
                "see README");
        }
    };

    struct Sub {
        const char* name;
        const char* help;
        int (*run)(const Context&);
    };
    const Sub subs[] = {
        {"target", "approximate the target set by word refinement", cmd_target},
        {"attractor", "star set plus Conley and stability probes", cmd_attractor},
        {"chaos", "run a chaos game and compare its tail with the target set", cmd_chaos},
        {"stationary", "stationary measure of the Markov operator", cmd_stationary},
        {"recurrent", "stationary measure of a recurrent IFS", cmd_recurrent},
        {"split", "splitting, separability and rigidity witnesses", cmd_split},
    };
    for (const Sub& s : subs) add_common(app.add_subcommand(s.name, s.help));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kConfig;
    }

    try {
        Context ctx;
        if (!config_path.empty()) ctx.cfg = load_config(config_path);
        for (const auto& [k, v] : flags) apply_setting(ctx.cfg, k, v);
        validate(ctx.cfg);
        ctx.out_dir = out_dir;
        std::filesystem::create_directories(ctx.out_dir);
        for (const Sub& s : subs)
            if (app.got_subcommand(s.name)) return s.run(ctx);
        return kInternal;
    } catch (const ConfigError& e) {
        std::cerr << "ifs-lab: config error: " << e.what() << "\n";
        return kConfig;
    } catch (const ApiError& e) {
        std::cerr << "ifs-lab: " << e.what() << "\n";
        return exit_code_for(e.status);
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "ifs-lab: " << e.what() << "\n";
        return kConfig;
    } catch (const std::exception& e) {
        std::cerr << "ifs-lab: internal error: " << e.what() << "\n";
        return kInternal;
    }
}
