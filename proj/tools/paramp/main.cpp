#include <iostream>

#include "paramp_cli/app.hpp"

int main(int argc, char** argv) {
  return paramp::cli::run(argc, argv, std::cout, std::cerr);
}
