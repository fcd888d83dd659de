// Acceptance gate: one PASS/FAIL line per criterion, for n = 1 and n = 2.

#include "fueter/acceptance.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

int main(int argc, char** argv) {
  std::vector<int> ns = {1, 2};
  std::vector<int> only;
  std::uint64_t seed = 7;
  for (int a = 1; a < argc; ++a) {
    const std::string arg = argv[a];
    if (arg == "--n" && a + 1 < argc) ns = {std::atoi(argv[++a])};
    else if (arg == "--seed" && a + 1 < argc) seed = std::strtoull(argv[++a], nullptr, 10);
    else if (arg == "--only" && a + 1 < argc) only.push_back(std::atoi(argv[++a]));
  }
  if (only.empty()) only = {1, 2, 3, 4, 5, 6, 7, 8};

  bool all = true;
  for (int id : only) {
    bool passed = true;
    std::string detail;
    const auto t0 = std::chrono::steady_clock::now();
    for (int n : ns) {
      fueter::CriterionResult r;
      try {
        r = fueter::run_criterion(id, {n, seed});
      } catch (const std::exception& e) {
        r.id = id;
        r.failure = std::string("exception: ") + e.what();
      }
      if (!r.passed) {
        passed = false;
        if (detail.empty()) detail = "n=" + std::to_string(n) + ": " + r.failure;
      }
      std::fprintf(stderr, "  [%d n=%d] %s\n", id, n, fueter::to_json(r).dump().c_str());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s criterion %d (%.1fs)%s%s\n", passed ? "PASS" : "FAIL", id, secs,
                detail.empty() ? "" : ": ", detail.c_str());
    std::fflush(stdout);
    all = all && passed;
  }
  return all ? 0 : 1;
}
