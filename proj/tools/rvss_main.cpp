#include <iostream>

#include "rvss/cli.hpp"

int main(int argc, char** argv) {
  return rvss::run_cli({argv + 1, argv + argc}, std::cout, std::cerr);
}
