// Acceptance suite: runs every criterion at the stated tolerance and prints
// one pass/fail line per criterion. Exit code 0 when all pass, 3 otherwise.
#include "slag/verify.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>

int main(int argc, char** argv) {
  slag::VerifyOptions opt;
  for (int a = 1; a + 1 < argc; a += 2) {
    if (!std::strcmp(argv[a], "--res")) opt.res = std::atoi(argv[a + 1]);
    if (!std::strcmp(argv[a], "--pde-res")) opt.pde_res = std::atoi(argv[a + 1]);
    if (!std::strcmp(argv[a], "--probes")) opt.probes = std::atoi(argv[a + 1]);
    if (!std::strcmp(argv[a], "--seed")) opt.seed = (unsigned)std::atoi(argv[a + 1]);
  }
  slag::RunConfig cfg;
  cfg.set("res", std::to_string(opt.res));
  cfg.set("pde_res", std::to_string(opt.pde_res));
  cfg.set("seed", std::to_string(opt.seed));

  slag::VerifyReport rep = slag::run_verify(opt, cfg);
  for (const auto& r : rep.criteria)
    std::printf("[%s] %2d %-38s %s\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(),
                r.details.c_str());
  std::printf("%s\n", rep.all_pass ? "acceptance: ALL CRITERIA PASS" : "acceptance: FAILURES");
  return rep.all_pass ? 0 : 3;
}
