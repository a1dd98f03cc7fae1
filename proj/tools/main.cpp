#include <iostream>

#include "causal_econ/cli.hpp"

int main(int argc, char** argv) {
  return causal_econ::run_cli({argv + 1, argv + argc}, std::cout, std::cerr);
}
