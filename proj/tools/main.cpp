#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) { return bihindex::cli::main_entry(argc, argv, std::cout, std::cerr); }
