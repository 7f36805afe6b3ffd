// Acceptance suite: runs every reproduction criterion at its pinned
// tolerance and prints one PASS/FAIL line per criterion.

#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "skbound/suites.hpp"

int main(int argc, char** argv) {
  std::uint64_t seed = 20250810;
  for (int i = 1; i < argc; ++i)
    if (std::strcmp(argv[i], "--seed") == 0 && i + 1 < argc)
      seed = std::strtoull(argv[i + 1], nullptr, 10);

  const auto& ids = skb::suite_map().at("all");
  int failures = 0;
  double total = 0.0;
  for (int id : ids) {
    skb::CriterionResult r = skb::run_criterion(id, seed);
    total += r.runtime_s;
    std::printf("%s criterion %2d: %s — %s [%.1fs]\n", r.pass ? "PASS" : "FAIL", r.id,
                r.name.c_str(), r.detail.c_str(), r.runtime_s);
    std::fflush(stdout);
    if (!r.pass) ++failures;
  }
  std::printf("%d/%d criteria passed in %.1fs\n", static_cast<int>(ids.size()) - failures,
              static_cast<int>(ids.size()), total);
  return failures == 0 ? 0 : 1;
}
