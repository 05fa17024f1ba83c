#pragma once

// Verdicts, witnesses and the structured report emitted by every checker.

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "nangle/addcat.hpp"

namespace nangle {

using Json = nlohmann::ordered_json;

enum class Verdict { pass, fail, inconclusive };
enum class Membership { in, out, inconclusive };

std::string to_string(Verdict v);
std::string to_string(Membership m);
/// fail > inconclusive > pass.
Verdict combine(Verdict a, Verdict b);

struct Witness {
  std::string description;
  Json data;
};

struct AxiomResult {
  std::string name;
  Verdict verdict = Verdict::pass;
  std::vector<Witness> witnesses;
  std::size_t instances = 0;
  std::size_t budget_spent = 0;
  std::string note;

  static AxiomResult named(std::string n) {
    AxiomResult r;
    r.name = std::move(n);
    return r;
  }
  /// Folds an instance outcome in, keeping at most a few witnesses.
  void absorb(Verdict v, std::optional<Witness> w = std::nullopt);
};

struct AxiomReport {
  std::string task;
  std::vector<AxiomResult> results;
  Json choices = Json::object();
  Json notes = Json::array();

  void add(AxiomResult r) { results.push_back(std::move(r)); }
  void append(const AxiomReport& other);
  Verdict overall() const;
  const AxiomResult* find(const std::string& name) const;
};

/// Search limits shared by all bounded checkers.
struct Budget {
  int cap_objects = 2;              ///< max total multiplicity of enumerated objects
  std::size_t cap_solutions = 64;   ///< max points examined per affine solution space
  std::size_t cap_instances = 48;   ///< max sampled instances per axiom
  std::uint64_t seed = 1;
  bool exhaustive = false;          ///< user asserts the candidate search is complete
};

enum class Exec { serial, parallel };

Json budget_json(const Budget& b);
Json report_json(const AxiomReport& r, const Budget& b);

Json object_json(const PresentedCategory& c, const ObjectExpr& x);
Json morphism_json(const PresentedCategory& c, const Morphism& f);

}  // namespace nangle
