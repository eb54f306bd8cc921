#include <iostream>

#include "jkinv/commands.hpp"

int main(int argc, char** argv) { return jk::run_cli(argc, argv, std::cout, std::cerr); }
