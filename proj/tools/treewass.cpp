#include <iostream>

#include "treewass/cli.hpp"

int main(int argc, char** argv) { return treewass::cli::run(argc, argv, std::cout, std::cerr); }
