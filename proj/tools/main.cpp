#include <cctype>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "nangle/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"nangle: verification of n-angulated structures over F_p"};
  nangle::JobConfig cfg;
  std::string task = "check-axioms";
  std::string Z, D, witness;
  bool serial = false;
  std::string export_dir;
  auto* input = app.add_option("--input", cfg.input, "category file");
  auto* exp = app.add_option("--export-corpus", export_dir, "write the built-in corpus as category files and exit");
  input->excludes(exp);
  app.add_option("--task", task,
                 "validate-category | check-axioms | validate-mutation-pair | build-quotient | verify-theorem | "
                 "verify-frobenius");
  app.add_option("--n", cfg.n, "angle length (default: the file's n=)");
  app.add_option("--cap-objects", cfg.budget.cap_objects, "object multiplicity cap");
  app.add_option("--cap-solutions", cfg.budget.cap_solutions, "points examined per solution space");
  app.add_option("--cap-instances", cfg.budget.cap_instances, "sampled instances per axiom");
  app.add_option("--seed", cfg.budget.seed, "sampling seed");
  app.add_option("--output", cfg.output, "report path (default: stdout)");
  app.add_option("--Z", Z, "generators of Z, or all");
  app.add_option("--D", D, "generators of D, or none");
  app.add_option("--witness", witness, "JSON with fixed angles and dual angles");
  app.add_flag("--serial", serial, "disable OpenMP kernels");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return e.get_exit_code() == 0 ? app.exit(e) : (app.exit(e), 3);
  }
  if (!export_dir.empty()) {
    std::filesystem::create_directories(export_dir);
    for (const auto& e : nangle::builtin_corpus()) {
      std::string file = e.name;
      for (char& ch : file)
        if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '-') ch = '_';
      const std::string path = (std::filesystem::path(export_dir) / (file + ".cat")).string();
      nangle::write_file_atomically(path, nangle::serialize_category_file(nangle::export_corpus_entry(e)));
      std::cout << path << "\n";
    }
    return 0;
  }
  if (cfg.input.empty()) {
    std::cerr << "--input is required\n";
    return 3;
  }
  const auto t = nangle::parse_task(task);
  if (!t) {
    std::cerr << "unknown task '" << task << "'\n";
    return 3;
  }
  cfg.task = *t;
  if (!Z.empty()) cfg.Z = Z;
  if (!D.empty()) cfg.D = D;
  if (!witness.empty()) cfg.witness = witness;
  if (serial) cfg.exec = nangle::Exec::serial;
  nangle::JobResult r;
  try {
    r = nangle::run_job(cfg);
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 3;
  }
  if (cfg.output.empty()) std::cout << r.report;
  return r.exit_code;
}
