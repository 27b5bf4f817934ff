#include <iostream>

#include "qcong/cli.hpp"

int main(int argc, char** argv) { return qcong::cli::main_with_args(argc, argv, std::cout, std::cerr); }
