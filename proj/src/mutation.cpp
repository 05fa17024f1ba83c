#include "nangle/mutation.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace nangle {

bool is_D_monic(const PresentedCategory& c, const Morphism& f, const Subcategory& D) {
  for (int g : D.generators) {
    const ObjectExpr G = ObjectExpr::gen(g);
    const std::size_t target = hom_dim(c, f.dom, G);
    if (target == 0) continue;
    if (rank(precomposition_matrix(c, f, G)) != target) return false;
  }
  return true;
}

bool is_D_epic(const PresentedCategory& c, const Morphism& f, const Subcategory& D) {
  for (int g : D.generators) {
    const ObjectExpr G = ObjectExpr::gen(g);
    const std::size_t target = hom_dim(c, G, f.cod);
    if (target == 0) continue;
    if (rank(postcomposition_matrix(c, f, G)) != target) return false;
  }
  return true;
}

Morphism stacked_left_map(const PresentedCategory& c, const ObjectExpr& x, const Subcategory& D) {
  std::vector<ObjectExpr> targets, sources;
  for (int s : x.summands) sources.push_back(ObjectExpr::gen(s));
  // one row per (G, summand j, basis element b of Hom(x_j, G))
  std::vector<std::vector<Morphism>> grid;
  for (int g : D.generators)
    for (std::size_t j = 0; j < x.size(); ++j)
      for (std::size_t b = 0; b < c.hom_dim(x.summands[j], g); ++b) {
        targets.push_back(ObjectExpr::gen(g));
        std::vector<Morphism> row;
        for (std::size_t k = 0; k < x.size(); ++k)
          row.push_back(k == j ? basis_morphism(c, x.summands[k], g, b)
                               : zero_morphism(c, sources[k], ObjectExpr::gen(g)));
        grid.push_back(row);
      }
  if (targets.empty()) return zero_morphism(c, x, ObjectExpr::zero());
  return block_matrix(c, targets, sources, grid);
}

Morphism stacked_right_map(const PresentedCategory& c, const ObjectExpr& x, const Subcategory& D) {
  std::vector<ObjectExpr> targets, sources;
  for (int s : x.summands) targets.push_back(ObjectExpr::gen(s));
  std::vector<std::pair<std::size_t, std::size_t>> cols;  // (summand, basis)
  std::vector<int> col_gen;
  for (int g : D.generators)
    for (std::size_t j = 0; j < x.size(); ++j)
      for (std::size_t b = 0; b < c.hom_dim(g, x.summands[j]); ++b) {
        sources.push_back(ObjectExpr::gen(g));
        cols.emplace_back(j, b);
        col_gen.push_back(g);
      }
  if (sources.empty()) return zero_morphism(c, ObjectExpr::zero(), x);
  std::vector<std::vector<Morphism>> grid(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t k = 0; k < cols.size(); ++k)
      grid[i].push_back(cols[k].first == i ? basis_morphism(c, col_gen[k], x.summands[i], cols[k].second)
                                           : zero_morphism(c, sources[k], targets[i]));
  return block_matrix(c, targets, sources, grid);
}

std::optional<Morphism> find_left_approximation(const PresentedCategory& c, const ObjectExpr& x,
                                                const Subcategory& D, const Budget&) {
  if (D.contains(x)) return identity(c, x);
  Morphism f = stacked_left_map(c, x, D);
  if (!is_D_monic(c, f, D)) return std::nullopt;
  return f;
}

std::optional<Morphism> find_right_approximation(const PresentedCategory& c, const ObjectExpr& x,
                                                 const Subcategory& D, const Budget&) {
  if (D.contains(x)) return identity(c, x);
  Morphism f = stacked_right_map(c, x, D);
  if (!is_D_epic(c, f, D)) return std::nullopt;
  return f;
}

bool is_approximation_angle(const PresentedCategory& c, const NSequence& seq, const Subcategory& Z,
                            const Subcategory& D) {
  const int n = seq.n();
  if (!Z.contains(seq.objects[0]) || !Z.contains(seq.objects[n - 1])) return false;
  for (int i = 1; i + 1 < n; ++i)
    if (!D.contains(seq.objects[i])) return false;
  return is_D_monic(c, seq.maps[0], D) && is_D_epic(c, seq.maps[n - 2], D);
}

bool is_monomorphism_in(const PresentedCategory& c, const Morphism& f, const Subcategory& Z) {
  for (int g : Z.generators) {
    const ObjectExpr G = ObjectExpr::gen(g);
    if (rank(postcomposition_matrix(c, f, G)) != hom_dim(c, G, f.dom)) return false;
  }
  return true;
}

bool is_epimorphism_in(const PresentedCategory& c, const Morphism& f, const Subcategory& Z) {
  for (int g : Z.generators) {
    const ObjectExpr G = ObjectExpr::gen(g);
    if (rank(precomposition_matrix(c, f, G)) != hom_dim(c, f.cod, G)) return false;
  }
  return true;
}

Json subcategory_json(const PresentedCategory& c, const Subcategory& s) {
  Json out = Json::array();
  for (int g : s.generators) out.push_back(c.generator_name(g));
  return out;
}

namespace {

struct Shape {
  Subcategory ends;
  Subcategory middle;
  bool approximations = true;
};

bool fits(const PresentedCategory& c, const NSequence& seq, const Shape& shape) {
  const int n = seq.n();
  if (!shape.ends.contains(seq.objects[0]) || !shape.ends.contains(seq.objects[n - 1])) return false;
  for (int i = 1; i + 1 < n; ++i)
    if (!shape.middle.contains(seq.objects[i])) return false;
  if (!shape.approximations) return true;
  return is_D_monic(c, seq.maps[0], shape.middle) && is_D_epic(c, seq.maps[n - 2], shape.middle);
}

std::vector<NSequence> with_rotations(const SuspendedCategory& s, const std::vector<NSequence>& members) {
  std::vector<NSequence> out;
  for (const auto& m : members) {
    NSequence r = m;
    for (int k = 0; k < m.n(); ++k) {
      if (std::find(out.begin(), out.end(), r) == out.end()) out.push_back(r);
      r = rotate_left(s, r);
    }
  }
  return out;
}

// An angle starting at generator g with the given shape.
std::optional<NSequence> find_anchored(const AngleClass& cls, const std::vector<NSequence>& pool, int g,
                                       const Shape& shape, const Budget& budget, std::size_t& examined) {
  const PresentedCategory& c = cls.structure().category();
  const ObjectExpr X = ObjectExpr::gen(g);
  auto accept = [&](const NSequence& seq) {
    ++examined;
    return fits(c, seq, shape) && cls.contains(seq) == Membership::in;
  };
  if (auto d1 = find_left_approximation(c, X, shape.middle, budget)) {
    if (auto seq = cls.complete(*d1); seq && accept(*seq)) return seq;
  }
  for (const auto& m : pool)
    if (m.objects[0] == X && accept(m)) return m;
  return std::nullopt;
}

std::shared_ptr<const AngleClass> borrow(const AngleClass& theta) {
  return std::shared_ptr<const AngleClass>(&theta, [](const AngleClass*) {});
}

std::vector<NSequence> to_op_all(const OppositeClass& op, const std::vector<NSequence>& seqs) {
  std::vector<NSequence> out;
  for (const auto& m : seqs) out.push_back(op.to_op(m));
  return out;
}

// Sampled completions of maps out of Z-objects.
std::vector<NSequence> completions_from(const AngleClass& theta, const Subcategory& Z, const Budget& budget,
                                        bool targets_in_Z) {
  const PresentedCategory& c = theta.structure().category();
  std::mt19937_64 rng(budget.seed + 17);
  const auto sources = objects_up_to(Z.generators, budget.cap_objects);
  const auto targets = objects_up_to(targets_in_Z ? Z.generators : theta.generators(), budget.cap_objects);
  std::vector<NSequence> out;
  const std::size_t per_pair = std::max<std::size_t>(
      2, budget.cap_instances / std::max<std::size_t>(1, sources.size() * targets.size()) + 1);
  for (const auto& x : sources)
    for (const auto& y : targets)
      for (const auto& f : sample_morphisms(c, x, y, per_pair, rng)) {
        if (out.size() >= 4 * budget.cap_instances) return out;
        if (auto seq = theta.complete(f)) out.push_back(*seq);
      }
  return out;
}

}  // namespace

MutationPairResult validate_mutation_pair(const AngleClass& theta, const Subcategory& Z, const Subcategory& D,
                                          const Budget& budget) {
  if (!D.subset_of(Z)) throw PreconditionError("D must be a subset of Z");
  const SuspendedCategory& s = theta.structure();
  const PresentedCategory& c = s.category();
  const int n = theta.n();
  MutationPairResult out;
  out.report.task = "validate-mutation-pair";
  out.report.choices["Z"] = subcategory_json(c, Z);
  out.report.choices["D"] = subcategory_json(c, D);

  const Shape shape{Z, D, true};
  const auto pool = with_rotations(s, theta.enumerate(budget));
  OppositeClass op(borrow(theta));
  const auto op_pool = to_op_all(op, pool);
  // With D = 0 every candidate is X -> 0 -> ... -> 0 -> Y -> ΣX, and exactness forces Y ≅ ΣX.
  const bool complete_search = budget.exhaustive || D.generators.empty();

  MutationPairWitness w{Z, D, n, {}, {}};
  AxiomResult cond1 = AxiomResult::named("condition (1)"), cond2 = AxiomResult::named("condition (2)");
  Json fixed = Json::array(), dual = Json::array();
  for (int g : Z.generators) {
    std::size_t examined = 0;
    auto a = find_anchored(theta, pool, g, shape, budget, examined);
    cond1.budget_spent += examined;
    if (a) {
      w.left.push_back(*a);
      fixed.push_back(Json{{"generator", c.generator_name(g)}, {"angle", sequence_json(c, *a)}});
      cond1.absorb(Verdict::pass);
    } else {
      cond1.absorb(complete_search ? Verdict::fail : Verdict::inconclusive,
                   Witness{"no angle X -> D_1 -> ... -> Y -> ΣX with approximations for generator " +
                               c.generator_name(g),
                           Json{{"generator", c.generator_name(g)}, {"examined", examined}}});
    }
    examined = 0;
    auto b = find_anchored(op, op_pool, g, shape, budget, examined);
    cond2.budget_spent += examined;
    std::optional<NSequence> back;
    if (b) {
      back = op.from_op(*b);
      if (!(back->objects.back() == ObjectExpr::gen(g)) || !is_approximation_angle(c, *back, Z, D) ||
          theta.contains(*back) != Membership::in)
        back.reset();
    }
    if (back) {
      w.right.push_back(*back);
      dual.push_back(Json{{"generator", c.generator_name(g)}, {"angle", sequence_json(c, *back)}});
      cond2.absorb(Verdict::pass);
    } else {
      cond2.absorb(complete_search ? Verdict::fail : Verdict::inconclusive,
                   Witness{"no angle X -> D_1 -> ... -> Y -> ΣX with approximations ending at generator " +
                               c.generator_name(g),
                           Json{{"generator", c.generator_name(g)}, {"examined", examined}}});
    }
  }
  if (!complete_search) {
    cond1.note = "existential search; a miss is inconclusive unless the budget is marked exhaustive";
    cond2.note = cond1.note;
  }
  out.report.add(cond1);
  out.report.add(cond2);
  out.report.choices["fixed angles"] = fixed;
  out.report.choices["dual angles"] = dual;
  if (out.report.overall() == Verdict::pass) out.witness = std::move(w);
  return out;
}

AxiomResult is_extension_closed(const AngleClass& theta, const Subcategory& Z, const Budget& budget) {
  const SuspendedCategory& s = theta.structure();
  const PresentedCategory& c = s.category();
  auto members = theta.enumerate(budget);
  auto more = completions_from(theta, Z, budget, false);
  members.insert(members.end(), more.begin(), more.end());
  AxiomResult res = AxiomResult::named("extension-closed");
  for (const auto& m : with_rotations(s, members)) {
    const int n = m.n();
    if (!Z.contains(m.objects[0]) || !Z.contains(m.objects[n - 1])) continue;
    int bad = -1;
    for (int i = 1; i + 1 < n && bad < 0; ++i)
      if (!Z.contains(m.objects[i])) bad = i;
    if (bad < 0) {
      res.absorb(Verdict::pass);
    } else {
      res.absorb(Verdict::fail, Witness{"endpoints in Z but term X_" + std::to_string(bad + 1) + " is not",
                                        Json{{"angle", sequence_json(c, m)}, {"position", bad + 1}}});
    }
  }
  return res;
}

AxiomResult is_suspension_closed(const SuspendedCategory& s, const Subcategory& Z) {
  const PresentedCategory& c = s.category();
  AxiomResult res = AxiomResult::named("suspension-closed");
  for (int g : Z.generators)
    for (int power : {1, -1}) {
      const ObjectExpr y = apply_suspension(s, ObjectExpr::gen(g), power);
      if (Z.contains(y)) {
        res.absorb(Verdict::pass);
      } else {
        res.absorb(Verdict::fail, Witness{std::string(power > 0 ? "Σ" : "Σ⁻¹") + c.generator_name(g) + " is not in Z",
                                          Json{{"generator", c.generator_name(g)}, {"power", power}}});
      }
    }
  return res;
}

std::vector<NSequence> internal_angles(const AngleClass& theta, const Subcategory& Z, const Budget& budget) {
  auto members = theta.enumerate(budget);
  auto more = completions_from(theta, Z, budget, true);
  members.insert(members.end(), more.begin(), more.end());
  std::vector<NSequence> out;
  for (const auto& m : with_rotations(theta.structure(), members)) {
    bool inside = true;
    for (const auto& x : m.objects) inside = inside && Z.contains(x);
    if (inside) out.push_back(m);
  }
  return out;
}

FrobeniusData compute_e_injectives(const AngleClass& theta, const Subcategory& Z, const Budget& budget,
                                   AdmissibleReading reading) {
  const SuspendedCategory& s = theta.structure();
  const PresentedCategory& c = s.category();
  const int n = theta.n();
  FrobeniusData d;
  d.Z = Z;
  d.reading = reading;
  d.E = internal_angles(theta, Z, budget);
  std::vector<int> inj, proj;
  for (int g : Z.generators) {
    const Subcategory G({g});
    std::optional<Morphism> bad_mono, bad_epi;
    const bool literal = reading == AdmissibleReading::all_first_maps;
    for (const auto& e : d.E) {
      const Morphism& mono = e.maps[0];
      const Morphism& epi = e.maps[n - 2];
      if (!bad_mono && (literal || is_monomorphism_in(c, mono, Z)) && !is_D_monic(c, mono, G)) bad_mono = mono;
      if (!bad_epi && (literal || is_epimorphism_in(c, epi, Z)) && !is_D_epic(c, epi, G)) bad_epi = epi;
    }
    if (bad_mono)
      d.injective_failures.emplace_back(g, *bad_mono);
    else
      inj.push_back(g);
    if (bad_epi)
      d.projective_failures.emplace_back(g, *bad_epi);
    else
      proj.push_back(g);
  }
  d.injectives = Subcategory(inj);
  d.projectives = Subcategory(proj);

  OppositeClass op(borrow(theta));
  const auto op_pool = to_op_all(op, d.E);
  for (int g : Z.generators) {
    std::size_t examined = 0;
    d.enough_injectives.push_back(find_anchored(theta, d.E, g, Shape{Z, d.injectives, false}, budget, examined));
    auto b = find_anchored(op, op_pool, g, Shape{Z, d.projectives, false}, budget, examined);
    if (b) {
      NSequence back = op.from_op(*b);
      bool inside = true;
      for (const auto& x : back.objects) inside = inside && Z.contains(x);
      if (!inside) b.reset();
      else b = back;
    }
    d.enough_projectives.push_back(b);
  }
  return d;
}

AxiomReport check_frobenius(const AngleClass& theta, const Subcategory& Z, const Budget& budget, FrobeniusData* data,
                            AdmissibleReading reading) {
  const PresentedCategory& c = theta.structure().category();
  FrobeniusData d = compute_e_injectives(theta, Z, budget, reading);
  AxiomReport rep;
  rep.task = "check-frobenius";
  rep.choices["Z"] = subcategory_json(c, Z);
  rep.choices["E-injectives"] = subcategory_json(c, d.injectives);
  rep.choices["E-projectives"] = subcategory_json(c, d.projectives);
  rep.choices["E sample size"] = d.E.size();
  rep.notes.push_back("E is read as all Θ-members with every term in Z; I and P are computed against the sampled E");
  rep.choices["admissible maps"] =
      reading == AdmissibleReading::monomorphisms ? "first/last maps that are mono/epi in Z" : "all first/last maps";

  AxiomResult excluded = AxiomResult::named("E-injectives");
  excluded.absorb(Verdict::pass);
  for (const auto& [g, mono] : d.injective_failures)
    excluded.witnesses.push_back(Witness{"Hom(-, " + c.generator_name(g) + ") is not onto on an admissible mono",
                                         Json{{"generator", c.generator_name(g)}, {"mono", morphism_json(c, mono)}}});
  for (const auto& [g, epi] : d.projective_failures)
    excluded.witnesses.push_back(Witness{"Hom(" + c.generator_name(g) + ", -) is not onto on an admissible epi",
                                         Json{{"generator", c.generator_name(g)}, {"epi", morphism_json(c, epi)}}});
  excluded.note = "informational: generators excluded from I or P, with the map they fail on";
  rep.add(excluded);

  auto enough = [&](const std::string& name, const std::vector<std::optional<NSequence>>& found,
                    const std::string& what) {
    AxiomResult r = AxiomResult::named(name);
    for (std::size_t k = 0; k < Z.generators.size(); ++k) {
      const int g = Z.generators[k];
      if (found[k]) {
        r.absorb(Verdict::pass);
      } else {
        r.absorb(budget.exhaustive ? Verdict::fail : Verdict::inconclusive,
                 Witness{"no E-angle with middle terms in " + what + " at generator " + c.generator_name(g),
                         Json{{"generator", c.generator_name(g)}}});
      }
    }
    return r;
  };
  rep.add(enough("enough E-injectives", d.enough_injectives, "I"));
  rep.add(enough("enough E-projectives", d.enough_projectives, "P"));
  AxiomResult same = AxiomResult::named("injectives = projectives");
  if (d.injectives == d.projectives) {
    same.absorb(Verdict::pass);
  } else {
    same.absorb(Verdict::fail, Witness{"E-injectives and E-projectives differ",
                                       Json{{"injectives", subcategory_json(c, d.injectives)},
                                            {"projectives", subcategory_json(c, d.projectives)}}});
  }
  rep.add(same);
  if (data) *data = std::move(d);
  return rep;
}

}  // namespace nangle
