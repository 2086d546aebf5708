#include <iostream>
#include <string>
#include <vector>

#include "totcheck/driver.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return totcheck::run(args, std::cout, std::cerr);
}
