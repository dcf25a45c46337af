#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "platewave/commands.hpp"
#include "platewave/config.hpp"

namespace {

constexpr const char* kUsage =
    "usage: platewave <command> [--config FILE] [--KEY VALUE]...\n"
    "\n"
    "commands:\n"
    "  spectrum   emit the configured mode spectrum\n"
    "  resolvent  resolvent norm along the imaginary axis\n"
    "  classify   classify one (theta, beta) point\n"
    "  sweep      classify a grid of (theta, beta) points\n"
    "  witness    build a lack-of-analyticity witness sequence\n"
    "  decay      energy decay of random initial data\n"
    "  gevrey     lambda^phi-scaled resolvent norm in a Gevrey region\n"
    "\n"
    "Flags mirror config-file keys (--theta 0.5 is theta=0.5) and override\n"
    "values from --config. Every command requires an output path\n"
    "(output=... or --output ...). Exit codes: 0 success, 1 usage or\n"
    "configuration error, 2 numerical failure.\n";

} // namespace

int main(int argc, char** argv) {
    using platewave::ConfigError;
    std::vector<std::string> args(argv + 1, argv + argc);
    if (args.empty() || args[0] == "--help" || args[0] == "-h") {
        std::cout << kUsage;
        return args.empty() ? 1 : 0;
    }
    const std::string command = args[0];

    try {
        // First pass: locate --config so flags can override file values.
        platewave::RunConfig cfg;
        for (std::size_t i = 1; i + 1 < args.size(); ++i) {
            if (args[i] == "--config") {
                std::ifstream in(args[i + 1]);
                if (!in)
                    throw ConfigError("cannot read config file '" +
                                      args[i + 1] + "'");
                std::stringstream buf;
                buf << in.rdbuf();
                cfg = platewave::parse_config(buf.str());
            }
        }
        for (std::size_t i = 1; i < args.size(); ++i) {
            const std::string& a = args[i];
            if (a.rfind("--", 0) != 0)
                throw ConfigError("unexpected argument '" + a + "'");
            if (i + 1 >= args.size())
                throw ConfigError("flag '" + a + "' needs a value");
            const std::string key = a.substr(2);
            const std::string value = args[++i];
            if (key == "config") continue; // handled above
            platewave::apply_config_key(cfg, key, value);
        }
        return platewave::run_command(command, cfg, std::cerr);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n" << kUsage;
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
