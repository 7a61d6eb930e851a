#include <iostream>

#include "fiscmon/cli_io.hpp"

int main(int argc, char** argv) {
  return fiscmon::cli::main_entry(argc, argv, std::cout, std::cerr);
}
