#include <vector>

#include "lamsim/cli.hpp"

int main(int argc, char** argv) {
    return lamsim::run_command(std::vector<std::string>(argv + 1, argv + argc));
}
