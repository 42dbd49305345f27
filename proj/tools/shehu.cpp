#include <iostream>

#include "shehu/cli.hpp"

int main(int argc, char** argv) { return shehu::cli::run(argc, argv, std::cout, std::cerr); }
