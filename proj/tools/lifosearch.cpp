#include <string>
#include <vector>

#include "lifo/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return lifo::cli_main(args);
}
