#include <iostream>

#include "commands.hpp"

int main(int argc, char** argv) { return nucleus::cli::run(argc, argv, std::cout, std::cerr); }
