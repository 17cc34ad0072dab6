// rcpi.cpp: command-line front end

#include <iostream>

#include "rcpi/cli.hpp"

int main(int argc, char** argv) { return rcpi::cli::run(argc, argv, std::cin, std::cout, std::cerr); }
