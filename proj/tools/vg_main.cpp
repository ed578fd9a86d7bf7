#include <iostream>

#include "vg/cli.hpp"

int main(int argc, char** argv) {
  return vg::cli::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
