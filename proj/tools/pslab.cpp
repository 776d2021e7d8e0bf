#include <iostream>
#include <string>
#include <vector>

#include "pslab/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    if (args.empty()) {
        std::cerr << "usage: pslab <subcommand> [options]\n"
                  << "subcommands: ps best-response dynamics verify enumerate spne threat gen "
                     "import experiment selfcheck\n"
                  << "run 'pslab --help' for details\n";
        return 2;
    }
    return pslab::run_cli(args, std::cout, std::cerr);
}
