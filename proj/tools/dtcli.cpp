#include <iostream>

#include "dt/cli.hpp"

int main(int argc, char** argv) { return dt::run_cli({argv + 1, argv + argc}, std::cout, std::cerr); }
