// Runs all acceptance criteria; exit status is nonzero when any fails.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "corrtest/acceptance.hpp"

int main(int argc, char** argv) {
  corrtest::acceptance::Options opt;
  std::vector<std::string> selection(argv + 1, argv + argc);
  const bool ok = corrtest::acceptance::run(opt, selection, std::cout, std::cerr);
  std::cout << (ok ? "ALL PASS" : "SOME FAILED") << std::endl;
  return ok ? EXIT_SUCCESS : EXIT_FAILURE;
}
