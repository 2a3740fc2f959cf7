#include <iostream>

#include "foliage/cli.hpp"

int main(int argc, char** argv) {
  return foliage::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
