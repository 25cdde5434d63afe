#include "qmf/cli.hpp"

#include <iostream>
#include <string>
#include <vector>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    qmf::cli::CliResult result = qmf::cli::run_cli(args);
    if (result.exit_code == 1 && result.text_mode && result.envelope.is_null()) {
        std::cerr << result.text << "\n";
        return result.exit_code;
    }
    std::cout << result.output() << "\n";
    return result.exit_code;
}
