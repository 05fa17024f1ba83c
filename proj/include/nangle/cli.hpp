#pragma once

// Category files, jobs and reports.
//
// File grammar, one statement per line, '#' starts a comment:
//   field p=<prime>
//   n=<int>
//   gen <name>
//   hom <g> <h> dim=<d> basis=<name>,<name>,...
//   id <g> = <lincomb>
//   comp <a> <b> = <lincomb>        b ∘ a, for a : g -> h and b : h -> k
//   rel <a> <b> = <lincomb>         a declared value of b ∘ a
//   sigma gen <g> -> <h>
//   sigma hom <a> -> <lincomb>
//   angles split | wrap-exact | listed
//   seq <X_1> | ... | <X_n> :: <coords> | ... | <coords>     (listed members)
//   Z <g> <g> ...      D <g> ...   (optional subcategories)
// A lincomb is 0 or terms [c*]name joined by + or -. Objects are g+h+... or 0;
// coords are space separated integers, or - for an empty vector.

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nangle/corpus.hpp"
#include "nangle/quotient.hpp"

namespace nangle {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_, column_;
};

struct CategoryFile {
  int n = 3;
  SuspendedCategory structure;
  std::string oracle = "split";
  std::vector<NSequence> listed;
  std::optional<Subcategory> Z, D;
};

/// Throws ParseError on syntax errors and on validation errors (at the line
/// that completes the offending data, or line 0 for whole-file laws).
CategoryFile parse_category_file(const std::string& text);
std::string serialize_category_file(const CategoryFile& f);

CategoryFile export_corpus_entry(const CorpusEntry& e);
std::shared_ptr<const AngleClass> make_angle_class(const CategoryFile& f);

/// Generator names separated by commas or spaces; "all" and "none" are accepted.
Subcategory parse_subcategory(const PresentedCategory& c, const std::string& spec);

enum class Task { validate_category, check_axioms, validate_mutation_pair, build_quotient, verify_theorem, verify_frobenius };
std::optional<Task> parse_task(const std::string& name);
std::string to_string(Task t);

struct JobConfig {
  std::string input;
  Task task = Task::check_axioms;
  int n = 0;  ///< 0 keeps the file's n
  Budget budget;
  std::string output;  ///< empty writes to stdout
  std::optional<std::string> Z, D;
  std::optional<std::string> witness;  ///< JSON with "fixed angles" and "dual angles"
  Exec exec = Exec::parallel;
};

struct JobResult {
  int exit_code = 0;  ///< 0 pass, 1 fail, 2 inconclusive, 3 input error
  std::string report;
};

/// Runs a job on file text; witness_text replaces reading config.witness.
JobResult run_job_text(const JobConfig& config, const std::string& text,
                       const std::optional<std::string>& witness_text = std::nullopt);
/// Reads config.input (and config.witness), runs, writes config.output atomically.
JobResult run_job(const JobConfig& config);

/// Parses the "fixed angles" / "dual angles" lists (bare or inside a report's choices).
MutationPairWitness parse_witness(const PresentedCategory& c, const Json& j, const Subcategory& Z,
                                  const Subcategory& D, int n);

void write_file_atomically(const std::string& path, const std::string& content);

}  // namespace nangle
