#include <iostream>

#include "kharmonic/cli.hpp"

int main(int argc, char** argv) {
    int exit_code = 0;
    auto config = kharmonic::parse_args(argc, argv, exit_code, std::cout, std::cerr);
    if (!config) return exit_code;
    try {
        return kharmonic::run(*config, std::cout, std::cerr);
    } catch (const std::exception& e) {
        std::cerr << "kharm: " << e.what() << '\n';
        return 2;
    }
}
