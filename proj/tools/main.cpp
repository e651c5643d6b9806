// SPDX-License-Identifier: Apache-2.0
#include <iostream>

#include "oppenheim/cli.hpp"

int main(int argc, char** argv) {
    return oppenheim::run_cli(argc, argv, std::cout, std::cerr);
}
