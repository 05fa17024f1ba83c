#include <chrono>
#include <cstdio>
#include <omp.h>

#include "nangle/corpus.hpp"
#include "nangle/quotient.hpp"

using namespace nangle;

namespace {

template <class F>
double seconds(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  Budget b;
  b.cap_instances = argc > 1 ? static_cast<std::size_t>(std::atoi(argv[1])) : 48;
  b.cap_solutions = 128;
  std::printf("threads %d, cap_instances %zu, cap_solutions %zu\n", omp_get_max_threads(), b.cap_instances,
              b.cap_solutions);
  std::printf("%-40s %-14s %10s %10s %8s %s\n", "structure", "kernel", "serial s", "omp s", "speedup", "same");
  bool all_same = true;
  for (const auto& e : builtin_corpus()) {
    AxiomReport rs, rp;
    const double ts = seconds([&] { rs = check_axioms(*e.angles, b, Exec::serial); });
    const double tp = seconds([&] { rp = check_axioms(*e.angles, b, Exec::parallel); });
    const bool same = report_json(rs, b) == report_json(rp, b);
    all_same = all_same && same;
    std::printf("%-40s %-14s %10.3f %10.3f %8.2f %s\n", e.name.c_str(), "check-axioms", ts, tp, ts / tp,
                same ? "yes" : "NO");
  }
  const std::pair<CorpusEntry, Subcategory> pairs[] = {{split_structure(2, 2, {0, 1}, 4), Subcategory({0})},
                                                       {split_structure(2, 2, {1, 0}, 4), Subcategory::none()},
                                                       {local_algebra_candidate(3), Subcategory::none()}};
  for (const auto& [e, D] : pairs) {
    const Subcategory Z = Subcategory::all(e.structure.category());
    AxiomReport rs, rp;
    const double ts = seconds([&] { rs = verify_quotient_theorem(e.angles, Z, D, b, Exec::serial); });
    const double tp = seconds([&] { rp = verify_quotient_theorem(e.angles, Z, D, b, Exec::parallel); });
    const bool same = report_json(rs, b) == report_json(rp, b);
    all_same = all_same && same;
    std::printf("%-40s %-14s %10.3f %10.3f %8.2f %s\n", e.name.c_str(), "verify-theorem", ts, tp, ts / tp,
                same ? "yes" : "NO");
  }
  return all_same ? 0 : 1;
}
