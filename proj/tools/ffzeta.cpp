#include <iostream>

#include "ffzeta/cli.hpp"

int main(int argc, char** argv) { return ffzeta::cli::run(argc, argv, std::cout, std::cerr); }
