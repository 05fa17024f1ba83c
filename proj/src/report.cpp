#include "nangle/report.hpp"

namespace nangle {

namespace {
constexpr std::size_t kMaxWitnesses = 4;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

std::string to_string(Membership m) {
  switch (m) {
    case Membership::in: return "in";
    case Membership::out: return "out";
    case Membership::inconclusive: return "inconclusive";
  }
  return "?";
}

Verdict combine(Verdict a, Verdict b) {
  if (a == Verdict::fail || b == Verdict::fail) return Verdict::fail;
  if (a == Verdict::inconclusive || b == Verdict::inconclusive) return Verdict::inconclusive;
  return Verdict::pass;
}

void AxiomResult::absorb(Verdict v, std::optional<Witness> w) {
  ++instances;
  verdict = combine(verdict, v);
  if (!w) return;
  // Failures crowd out other witnesses; they must stay replayable.
  if (v == Verdict::fail) {
    std::size_t fails = 0;
    for (const auto& x : witnesses)
      if (x.data.value("verdict", "") == "fail") ++fails;
    if (fails >= kMaxWitnesses) return;
    if (witnesses.size() >= kMaxWitnesses) {
      for (auto it = witnesses.begin(); it != witnesses.end(); ++it)
        if (it->data.value("verdict", "") != "fail") {
          witnesses.erase(it);
          break;
        }
    }
    w->data["verdict"] = "fail";
    witnesses.push_back(std::move(*w));
  } else if (witnesses.size() < kMaxWitnesses) {
    w->data["verdict"] = to_string(v);
    witnesses.push_back(std::move(*w));
  }
}

void AxiomReport::append(const AxiomReport& other) {
  for (const auto& r : other.results) results.push_back(r);
  for (const auto& n : other.notes) notes.push_back(n);
  for (const auto& [k, v] : other.choices.items()) choices[k] = v;
}

Verdict AxiomReport::overall() const {
  Verdict v = Verdict::pass;
  for (const auto& r : results) v = combine(v, r.verdict);
  return v;
}

const AxiomResult* AxiomReport::find(const std::string& name) const {
  for (const auto& r : results)
    if (r.name == name) return &r;
  return nullptr;
}

Json budget_json(const Budget& b) {
  return Json{{"cap_objects", b.cap_objects},
              {"cap_solutions", b.cap_solutions},
              {"cap_instances", b.cap_instances},
              {"exhaustive", b.exhaustive}};
}

Json report_json(const AxiomReport& r, const Budget& b) {
  Json verdicts = Json::array();
  Json witnesses = Json::array();
  for (const auto& a : r.results) {
    Json v{{"axiom", a.name},
           {"verdict", to_string(a.verdict)},
           {"instances", a.instances},
           {"budget_spent", a.budget_spent}};
    if (!a.note.empty()) v["note"] = a.note;
    verdicts.push_back(v);
    for (const auto& w : a.witnesses) witnesses.push_back(Json{{"axiom", a.name}, {"description", w.description}, {"data", w.data}});
  }
  return Json{{"task", r.task},
              {"overall", to_string(r.overall())},
              {"verdicts", verdicts},
              {"witnesses", witnesses},
              {"budgets", budget_json(b)},
              {"seed", b.seed},
              {"choices", r.choices},
              {"notes", r.notes}};
}

Json object_json(const PresentedCategory& c, const ObjectExpr& x) {
  Json out = Json::array();
  for (int g : x.summands) out.push_back(c.generator_name(g));
  return out;
}

Json morphism_json(const PresentedCategory& c, const Morphism& f) {
  return Json{{"dom", object_json(c, f.dom)}, {"cod", object_json(c, f.cod)}, {"coords", f.coords}};
}

}  // namespace nangle
