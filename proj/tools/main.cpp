#include "cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return fibspec::cli::run(argc, argv, std::cerr); }
