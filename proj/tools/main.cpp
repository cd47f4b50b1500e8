#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "ciso/sha256.hpp"
#include "cli.hpp"

int main(int argc, char** argv) {
    if (!ciso::sha256::self_test()) {
        std::cerr << "fatal: SHA-256 self-test failed\n";
        std::abort();
    }
    const std::vector<std::string> args(argv + 1, argv + argc);
    return ciso::cli::run(args, std::cout, std::cerr);
}
