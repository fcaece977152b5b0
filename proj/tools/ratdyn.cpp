#include <iostream>

#include "ratdyn/workbench.hpp"

int main(int argc, char** argv) {
  return ratdyn::run_command(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
