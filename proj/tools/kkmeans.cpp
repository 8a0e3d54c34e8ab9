#include <iostream>

#include "kkm/cli.hpp"

int main(int argc, char** argv) {
    kkm::cli::RunSpec spec;
    try {
        spec = kkm::cli::parse_args(argc, argv);
    } catch (const kkm::cli::HelpRequested& help) {
        std::cout << help.what();
        return 0;
    } catch (const kkm::cli::UsageError& e) {
        std::cerr << "kkmeans: " << e.what() << "\nRun with --help for usage.\n";
        return 2;
    }
    return kkm::cli::run_main(spec, std::cout, std::cerr);
}
