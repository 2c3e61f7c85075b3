#include <iostream>

#include "mwc/cli.hpp"

int main(int argc, char** argv) { return mwc::cli_main(argc, argv, std::cout, std::cerr); }
