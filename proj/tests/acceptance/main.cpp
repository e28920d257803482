#include <cstdlib>
#include <iostream>
#include <string>

#include "acceptance.hpp"
#include "generators.hpp"

int main(int argc, char** argv) {
  std::uint64_t seed = toricsplit::testing::kDefaultSeed;
  if (argc > 1) seed = std::stoull(argv[1], nullptr, 0);
  bool all = true;
  for (const auto& r : toricsplit::testing::run_acceptance(seed)) {
    std::cout << toricsplit::testing::format_result(r) << "\n";
    all = all && r.passed;
  }
  std::cout << (all ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL") << std::endl;
  return all ? EXIT_SUCCESS : EXIT_FAILURE;
}
