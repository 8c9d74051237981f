// Acceptance suite: one line per criterion, nonzero exit on any failure.

#include <cstdio>

#include "CLI11.hpp"
#include "ppi/acceptance.hpp"
#include "ppi/error.hpp"

int main(int argc, char** argv) {
  CLI::App app{"power partial isometry acceptance suite"};
  std::uint64_t seed = 42;
  std::string scale = "desk";
  std::vector<int> only;
  app.add_option("--seed", seed, "base seed");
  app.add_option("--scale", scale, "smoke or desk")->check(CLI::IsMember({"smoke", "desk"}));
  app.add_option("--only", only, "run just these criteria")->check(CLI::Range(1, ppi::acceptance::kCriteria));
  CLI11_PARSE(app, argc, argv);

  ppi::acceptance::Config cfg;
  cfg.seed = seed;
  cfg.scale = ppi::acceptance::parse_scale(scale);
  if (only.empty())
    for (int i = 1; i <= ppi::acceptance::kCriteria; ++i) only.push_back(i);

  int failed = 0;
  double total = 0;
  for (int id : only) {
    const auto r = ppi::acceptance::run_criterion(id, cfg);
    total += r.seconds;
    if (!r.pass) ++failed;
    std::printf("[%s] %2d %-52s %6.2fs  %s\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds,
                r.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu criteria, %d failed, %.2fs (seed %llu, scale %s)\n", only.size(), failed, total,
              static_cast<unsigned long long>(seed), ppi::acceptance::scale_name(cfg.scale));
  return failed == 0 ? 0 : 1;
}
