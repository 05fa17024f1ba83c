#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

#include "nangle/angles.hpp"

namespace nangle {

namespace {

Verdict from_membership(Membership m) {
  switch (m) {
    case Membership::in: return Verdict::pass;
    case Membership::out: return Verdict::fail;
    default: return Verdict::inconclusive;
  }
}

Json square_json(const PresentedCategory& c, const SquareInstance& q) {
  return Json{{"top", sequence_json(c, q.top)},
              {"bottom", sequence_json(c, q.bottom)},
              {"phi1", morphism_json(c, q.phi1)},
              {"phi2", morphism_json(c, q.phi2)}};
}

Json octahedron_json(const PresentedCategory& c, const OctahedronInstance& q) {
  return Json{{"top", sequence_json(c, q.top)},
              {"middle", sequence_json(c, q.middle)},
              {"column", sequence_json(c, q.column)},
              {"phi2", morphism_json(c, q.phi2)}};
}

Morphism random_morphism(const PresentedCategory& c, const ObjectExpr& x, const ObjectExpr& y, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coin(0, c.modulus() - 1);
  Vec v(hom_dim(c, x, y));
  for (int& e : v) e = coin(rng);
  return {x, y, v};
}

// Literal block decomposition: connected components of the graph whose nodes
// are summands and whose edges are nonzero blocks.
std::vector<std::vector<std::vector<std::size_t>>> literal_components(const SuspendedCategory& s,
                                                                      const NSequence& seq) {
  const PresentedCategory& c = s.category();
  const int n = seq.n();
  std::vector<std::size_t> base(n + 1, 0);
  for (int i = 0; i < n; ++i) base[i + 1] = base[i] + seq.objects[i].size();
  std::vector<std::size_t> parent(base[n]);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  auto unite = [&](std::size_t a, std::size_t b) { parent[find(a)] = find(b); };
  // Summand r of ΣX_1 comes from summand origin[r] of X_1.
  std::vector<std::size_t> origin;
  for (std::size_t j = 0; j < seq.objects[0].size(); ++j)
    for (std::size_t t = 0; t < s.sigma.object_image[seq.objects[0].summands[j]].size(); ++t) origin.push_back(j);
  for (int i = 0; i < n; ++i) {
    const Morphism& f = seq.maps[i];
    for (std::size_t r = 0; r < f.cod.size(); ++r)
      for (std::size_t k = 0; k < f.dom.size(); ++k) {
        if (vec_is_zero(block(c, f, r, k))) continue;
        const std::size_t target = i + 1 < n ? base[i + 1] + r : base[0] + origin[r];
        unite(base[i] + k, target);
      }
  }
  std::vector<std::size_t> roots;
  for (std::size_t a = 0; a < base[n]; ++a)
    if (std::find(roots.begin(), roots.end(), find(a)) == roots.end()) roots.push_back(find(a));
  std::vector<std::vector<std::vector<std::size_t>>> out;
  for (std::size_t root : roots) {
    std::vector<std::vector<std::size_t>> keep(n);
    for (int i = 0; i < n; ++i)
      for (std::size_t k = 0; k < seq.objects[i].size(); ++k)
        if (find(base[i] + k) == root) keep[i].push_back(k);
    out.push_back(keep);
  }
  return out;
}

}  // namespace

NSequence random_sequence(const SuspendedCategory& s, const std::vector<ObjectExpr>& objs, int n, std::mt19937_64& rng) {
  const PresentedCategory& c = s.category();
  NSequence seq;
  for (int i = 0; i < n; ++i) seq.objects.push_back(objs[rng() % objs.size()]);
  for (int i = 0; i < n; ++i) {
    const ObjectExpr target = i + 1 < n ? seq.objects[i + 1] : apply_suspension(s, seq.objects[0], 1);
    seq.maps.push_back(random_morphism(c, seq.objects[i], target, rng));
  }
  return seq;
}

std::vector<InstanceVerdict> run_instances(std::size_t count, const std::function<InstanceVerdict(std::size_t)>& fn,
                                          Exec exec) {
  std::vector<InstanceVerdict> out(count);
  std::vector<std::string> errors(count);
  const long total = static_cast<long>(count);
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < total; ++i) {
      try {
        out[i] = fn(static_cast<std::size_t>(i));
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  } else {
    for (long i = 0; i < total; ++i) {
      try {
        out[i] = fn(static_cast<std::size_t>(i));
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  }
  for (const auto& e : errors)
    if (!e.empty()) throw std::runtime_error(e);
  return out;
}

AxiomResult fold_instances(const std::string& name, const std::vector<InstanceVerdict>& outcomes) {
  AxiomResult res;
  res.name = name;
  for (const auto& o : outcomes) {
    if (o.skipped) continue;
    res.absorb(o.verdict, o.witness);
    res.budget_spent += o.spent;
  }
  return res;
}

// ---- N1 ---------------------------------------------------------------------------

namespace {

AxiomReport n1_with(const AngleClass& theta, const std::vector<NSequence>& members, const Budget& budget, Exec exec) {
  const SuspendedCategory& s = theta.structure();
  const PresentedCategory& c = s.category();
  const int n = theta.n();
  AxiomReport rep;

  // (a) sums of members, members' literal summands, and sums with non-members.
  {
    struct Job {
      int kind;
      std::size_t a, b;
      NSequence extra;
    };
    std::vector<Job> jobs;
    std::mt19937_64 rng(budget.seed ^ 0xa1);
    const auto objs = objects_up_to(theta.generators(), std::max(1, budget.cap_objects - 1));
    if (!members.empty()) {
      for (std::size_t t = 0; t < budget.cap_instances; ++t) {
        const std::size_t a = rng() % members.size(), b = rng() % members.size();
        jobs.push_back({0, a, b, {}});
      }
      for (std::size_t a = 0; a < members.size(); ++a) jobs.push_back({1, a, 0, {}});
      for (std::size_t t = 0; t < budget.cap_instances; ++t)
        jobs.push_back({2, rng() % members.size(), 0, random_sequence(s, objs, n, rng)});
    }
    auto outcomes = run_instances(
        jobs.size(),
        [&](std::size_t i) {
          const Job& job = jobs[i];
          InstanceVerdict v;
          v.spent = 1;
          if (job.kind == 0) {
            const NSequence sum = direct_sum(s, members[job.a], members[job.b]);
            v.verdict = from_membership(theta.contains(sum));
            if (v.verdict != Verdict::pass)
              v.witness = Witness{"direct sum of two members is not a member",
                                  Json{{"left", sequence_json(c, members[job.a])},
                                       {"right", sequence_json(c, members[job.b])}}};
          } else if (job.kind == 1) {
            const auto parts = literal_components(s, members[job.a]);
            if (parts.size() < 2) {
              v.skipped = true;
              return v;
            }
            for (const auto& keep : parts) {
              auto piece = restrict_sequence(s, members[job.a], keep);
              if (!piece) continue;
              ++v.spent;
              const Verdict pv = from_membership(theta.contains(*piece));
              if (pv != Verdict::pass && v.verdict == Verdict::pass) {
                v.verdict = pv;
                v.witness = Witness{"direct summand of a member is not a member",
                                    Json{{"member", sequence_json(c, members[job.a])},
                                         {"summand", sequence_json(c, *piece)}}};
              }
            }
          } else {
            // If A ⊕ B is a member, so is the summand B.
            const Membership mb = theta.contains(job.extra);
            if (mb != Membership::out) {
              v.skipped = true;
              return v;
            }
            const NSequence sum = direct_sum(s, members[job.a], job.extra);
            const Membership ms = theta.contains(sum);
            if (ms == Membership::in) {
              v.verdict = Verdict::fail;
              v.witness = Witness{"sum is a member but its summand is not",
                                  Json{{"member", sequence_json(c, members[job.a])},
                                       {"summand", sequence_json(c, job.extra)}}};
            } else if (ms == Membership::inconclusive) {
              v.verdict = Verdict::inconclusive;
            }
          }
          return v;
        },
        exec);
    rep.add(fold_instances("N1(a)", outcomes));
  }

  // (b) trivial angles.
  {
    std::vector<ObjectExpr> objs{ObjectExpr::zero()};
    for (int g : theta.generators()) objs.push_back(ObjectExpr::gen(g));
    auto outcomes = run_instances(
        objs.size(),
        [&](std::size_t i) {
          InstanceVerdict v;
          v.spent = 1;
          const NSequence t = trivial_angle(s, objs[i], n);
          v.verdict = from_membership(theta.contains(t));
          if (v.verdict != Verdict::pass)
            v.witness = Witness{"trivial angle of " + describe(c, objs[i]) + " is not a member",
                                Json{{"generator", object_json(c, objs[i])}, {"sequence", sequence_json(c, t)}}};
          return v;
        },
        exec);
    rep.add(fold_instances("N1(b)", outcomes));
  }

  // (c) completion of morphisms between objects at the cap.
  {
    std::mt19937_64 rng(budget.seed ^ 0xc1);
    const auto objs = objects_up_to(theta.generators(), budget.cap_objects);
    const std::size_t pairs = objs.size() * objs.size();
    const std::size_t per_pair = std::max<std::size_t>(1, budget.cap_instances * 2 / std::max<std::size_t>(pairs, 1));
    std::vector<Morphism> fs;
    for (const auto& x : objs)
      for (const auto& y : objs) {
        auto m = sample_morphisms(c, x, y, per_pair, rng);
        fs.insert(fs.end(), m.begin(), m.end());
      }
    auto outcomes = run_instances(
        fs.size(),
        [&](std::size_t i) {
          InstanceVerdict v;
          v.spent = 1;
          auto seq = theta.complete(fs[i]);
          if (!seq) {
            v.verdict = Verdict::inconclusive;
            v.witness = Witness{"completion procedure found no n-angle", Json{{"f1", morphism_json(c, fs[i])}}};
          } else if (seq->maps[0] != fs[i] || theta.contains(*seq) != Membership::in) {
            v.verdict = Verdict::fail;
            v.witness = Witness{"completion is not a member starting at f1",
                                Json{{"f1", morphism_json(c, fs[i])}, {"sequence", sequence_json(c, *seq)}}};
          }
          return v;
        },
        exec);
    rep.add(fold_instances("N1(c)", outcomes));
  }
  return rep;
}

AxiomResult n2_with(const AngleClass& theta, const std::vector<NSequence>& members, Exec exec) {
  const SuspendedCategory& s = theta.structure();
  const PresentedCategory& c = s.category();
  auto outcomes = run_instances(
      members.size(),
      [&](std::size_t i) {
        InstanceVerdict v;
        v.spent = 2;
        const NSequence l = rotate_left(s, members[i]);
        const NSequence r = rotate_right(s, members[i]);
        const Verdict vl = from_membership(theta.contains(l));
        const Verdict vr = from_membership(theta.contains(r));
        v.verdict = combine(vl, vr);
        if (vl != Verdict::pass)
          v.witness = Witness{"left rotation of a member is not a member",
                              Json{{"member", sequence_json(c, members[i])}, {"rotated", sequence_json(c, l)}}};
        else if (vr != Verdict::pass)
          v.witness = Witness{"right rotation of a member is not a member",
                              Json{{"member", sequence_json(c, members[i])}, {"rotated", sequence_json(c, r)}}};
        return v;
      },
      exec);
  return fold_instances("N2", outcomes);
}

std::vector<SquareInstance> squares_from(const AngleClass& theta, const std::vector<NSequence>& members,
                                         const Budget& budget) {
  const SuspendedCategory& s = theta.structure();
  const PresentedCategory& c = s.category();
  std::vector<SquareInstance> out;
  if (members.empty()) return out;
  std::mt19937_64 rng(budget.seed ^ 0x53);
  for (std::size_t a = 0; a < members.size() && out.size() < budget.cap_instances / 4 + 1; ++a)
    out.push_back({members[a], members[a], identity(c, members[a].objects[0]), identity(c, members[a].objects[1])});
  std::size_t attempts = 0;
  while (out.size() < budget.cap_instances && attempts < 8 * budget.cap_instances) {
    ++attempts;
    const NSequence& top = members[rng() % members.size()];
    const NSequence& bottom = members[rng() % members.size()];
    const Morphism phi1 = random_morphism(c, top.objects[0], bottom.objects[0], rng);
    const Morphism rhs = compose(c, bottom.maps[0], phi1);
    auto sol = solve_linear(precomposition_matrix(c, top.maps[0], bottom.objects[1]), rhs.coords);
    if (!sol) continue;
    AffineSpace space(c.modulus(), *sol);
    const std::size_t size = space.size_capped(budget.cap_solutions);
    const Vec phi2 = space.point(rng() % size);
    out.push_back({top, bottom, phi1, {top.objects[1], bottom.objects[1], phi2}});
  }
  return out;
}

std::vector<OctahedronInstance> octahedra_from(const AngleClass& theta, const std::vector<NSequence>& members,
                                               const Budget& budget) {
  const SuspendedCategory& s = theta.structure();
  const PresentedCategory& c = s.category();
  std::vector<OctahedronInstance> out;
  if (members.empty()) return out;
  std::mt19937_64 rng(budget.seed ^ 0x0c7);
  for (std::size_t a = 0; a < members.size() && out.size() < budget.cap_instances / 4 + 1; ++a) {
    const NSequence& top = members[a];
    auto column = theta.complete(identity(c, top.objects[1]));
    if (column) out.push_back({top, top, *column, identity(c, top.objects[1])});
  }
  const auto objs = objects_up_to(theta.generators(), budget.cap_objects);
  std::size_t attempts = 0;
  while (out.size() < budget.cap_instances && attempts < 8 * budget.cap_instances) {
    ++attempts;
    const NSequence& top = members[rng() % members.size()];
    const ObjectExpr& y2 = objs[rng() % objs.size()];
    const Morphism phi2 = random_morphism(c, top.objects[1], y2, rng);
    auto middle = theta.complete(compose(c, phi2, top.maps[0]));
    if (!middle) continue;
    auto column = theta.complete(phi2);
    if (!column) continue;
    out.push_back({top, *middle, *column, phi2});
  }
  return out;
}

}  // namespace

std::vector<SquareInstance> sample_squares(const AngleClass& theta, const Budget& budget) {
  return squares_from(theta, theta.enumerate(budget), budget);
}

std::vector<OctahedronInstance> sample_octahedra(const AngleClass& theta, const Budget& budget) {
  return octahedra_from(theta, theta.enumerate(budget), budget);
}

AxiomReport check_N1(const AngleClass& theta, const Budget& budget, Exec exec) {
  return n1_with(theta, theta.enumerate(budget), budget, exec);
}

AxiomResult check_N2(const AngleClass& theta, const Budget& budget, Exec exec) {
  return n2_with(theta, theta.enumerate(budget), exec);
}

// ---- N3 / N4 ------------------------------------------------------------------------

InstanceVerdict n3_instance(const AngleClass& theta, const SquareInstance& inst) {
  const SuspendedCategory& s = theta.structure();
  InstanceVerdict v;
  v.spent = 1;
  auto space = complete_morphism(s, inst.phi1, inst.phi2, inst.top, inst.bottom);
  if (!space) {
    v.verdict = Verdict::fail;
    v.witness = Witness{"commuting square admits no completion", square_json(s.category(), inst)};
  }
  return v;
}

InstanceVerdict n4_instance(const AngleClass& theta, const SquareInstance& inst, const Budget& budget) {
  const SuspendedCategory& s = theta.structure();
  const PresentedCategory& c = s.category();
  InstanceVerdict v;
  auto space = complete_morphism(s, inst.phi1, inst.phi2, inst.top, inst.bottom);
  if (!space) {
    v.verdict = Verdict::fail;
    v.witness = Witness{"commuting square admits no completion", square_json(c, inst)};
    return v;
  }
  const std::size_t size = space->space().size_capped(budget.cap_solutions);
  bool unknown = false;
  for (std::size_t k = 0; k < size; ++k) {
    ++v.spent;
    const Membership m = theta.contains(mapping_cone(s, space->morphism(k)));
    if (m == Membership::in) return v;
    if (m == Membership::inconclusive) unknown = true;
  }
  Json data = square_json(c, inst);
  data["examined"] = size;
  if (space->space().fits(budget.cap_solutions) && !unknown) {
    v.verdict = Verdict::fail;
    v.witness = Witness{"no completion has a mapping cone in the class", data};
  } else {
    v.verdict = Verdict::inconclusive;
    v.witness = Witness{"cone search exhausted its budget", data};
  }
  return v;
}

AxiomResult check_N3(const AngleClass& theta, const Budget& budget, Exec exec) {
  const auto squares = sample_squares(theta, budget);
  return fold_instances("N3", run_instances(squares.size(), [&](std::size_t i) { return n3_instance(theta, squares[i]); }, exec));
}

AxiomResult check_N4(const AngleClass& theta, const Budget& budget, Exec exec) {
  const auto squares = sample_squares(theta, budget);
  return fold_instances(
      "N4", run_instances(squares.size(), [&](std::size_t i) { return n4_instance(theta, squares[i], budget); }, exec));
}

// ---- N4' ----------------------------------------------------------------------------

NSequence octahedral_sequence(const SuspendedCategory& s, const OctahedronInstance& inst,
                              const std::vector<Morphism>& phi, const std::vector<Morphism>& psi,
                              const std::vector<Morphism>& link) {
  const PresentedCategory& c = s.category();
  const int n = inst.top.n();
  const int p = c.modulus();
  // 1-based accessors matching the axiom's notation.
  auto X = [&](int j) { return inst.top.objects[j - 1]; };
  auto f = [&](int j) { return inst.top.maps[j - 1]; };
  auto Y = [&](int j) { return inst.middle.objects[j - 1]; };
  auto g = [&](int j) { return inst.middle.maps[j - 1]; };
  auto Z = [&](int j) { return inst.column.objects[j - 1]; };
  auto h = [&](int j) { return inst.column.maps[j - 1]; };
  auto ph = [&](int j) { return phi[j - 1]; };
  auto ps = [&](int j) { return psi[j - 3]; };
  auto lk = [&](int k) { return link[k - 4]; };
  struct Part {
    char kind;
    int idx;
  };
  auto parts = [&](int k) {
    std::vector<Part> out;
    if (k == 1) return std::vector<Part>{{'X', 3}};
    if (k == n) return std::vector<Part>{{'Z', n}};
    if (k + 2 <= n) out.push_back({'X', k + 2});
    out.push_back({'Y', k + 1});
    if (k >= 3) out.push_back({'Z', k});
    return out;
  };
  auto obj = [&](const Part& q) { return q.kind == 'X' ? X(q.idx) : q.kind == 'Y' ? Y(q.idx) : Z(q.idx); };
  auto entry = [&](int k, const Part& to, const Part& from) -> std::optional<Morphism> {
    if (k == 1) {
      if (to.kind == 'X') return f(3);
      if (to.kind == 'Y') return ph(3);
      return std::nullopt;
    }
    if (from.kind == 'X') {
      if (to.kind == 'X') return scale(c, p - 1, f(k + 2));
      if (to.kind == 'Y') return scale(c, c.field().sign(k), ph(k + 2));
      return lk(k + 2);
    }
    if (from.kind == 'Y') {
      if (to.kind == 'Y') return scale(c, p - 1, g(k + 1));
      if (to.kind == 'Z') return ps(k + 1);
      return std::nullopt;
    }
    if (to.kind == 'Z') return h(k);
    return std::nullopt;
  };
  NSequence out;
  for (int k = 1; k <= n; ++k) {
    ObjectExpr w;
    for (const Part& q : parts(k)) w = w + obj(q);
    out.objects.push_back(w);
  }
  for (int k = 1; k < n; ++k) {
    const auto src = parts(k), dst = parts(k + 1);
    std::vector<ObjectExpr> so, to;
    for (const Part& q : src) so.push_back(obj(q));
    for (const Part& q : dst) to.push_back(obj(q));
    std::vector<std::vector<Morphism>> grid;
    for (const Part& t : dst) {
      std::vector<Morphism> row;
      for (const Part& q : src) {
        auto e = entry(k, t, q);
        row.push_back(e ? *e : zero_morphism(c, obj(q), obj(t)));
      }
      grid.push_back(row);
    }
    out.maps.push_back(block_matrix(c, to, so, grid));
  }
  out.maps.push_back(compose(c, apply_suspension(s, f(2), 1), h(n)));
  return out;
}

SquareInstance square_of(const OctahedronInstance& inst) { return {inst.top, inst.middle, Morphism{}, inst.phi2}; }

InstanceVerdict n4_prime_instance(const AngleClass& theta, const OctahedronInstance& inst, const Budget& budget,
                                  OctahedronData* found) {
  const SuspendedCategory& s = theta.structure();
  const PresentedCategory& c = s.category();
  const int n = theta.n();
  const int p = c.modulus();
  InstanceVerdict v;
  std::vector<std::optional<Morphism>> fixed(n);
  fixed[0] = identity(c, inst.top.objects[0]);
  fixed[1] = inst.phi2;
  auto stage1 = solve_sequence_morphism(s, inst.top, inst.middle, fixed);
  if (!stage1) {
    v.verdict = Verdict::fail;
    v.witness = Witness{"no morphism (1, φ2, ...) between the top rows", octahedron_json(c, inst)};
    return v;
  }
  // Unknown layout: ψ_3..ψ_n then ϕ_4..ϕ_n.
  std::vector<std::pair<ObjectExpr, ObjectExpr>> slots;
  for (int j = 3; j <= n; ++j) slots.push_back({inst.middle.objects[j - 1], inst.column.objects[j - 1]});
  for (int k = 4; k <= n; ++k) slots.push_back({inst.top.objects[k - 1], inst.column.objects[k - 2]});
  std::vector<std::size_t> offs;
  std::size_t total = 0;
  for (const auto& [a, b] : slots) {
    offs.push_back(total);
    total += hom_dim(c, a, b);
  }
  auto unpack = [&](const Vec& u, std::vector<Morphism>& psi, std::vector<Morphism>& link) {
    psi.clear();
    link.clear();
    for (std::size_t t = 0; t < slots.size(); ++t) {
      const std::size_t d = hom_dim(c, slots[t].first, slots[t].second);
      Morphism m{slots[t].first, slots[t].second,
                 Vec(u.begin() + static_cast<long>(offs[t]), u.begin() + static_cast<long>(offs[t] + d))};
      (static_cast<int>(t) < n - 2 ? psi : link).push_back(m);
    }
  };
  const Morphism target = compose(c, apply_suspension(s, inst.top.maps[0], 1), inst.middle.maps[n - 1]);
  const std::size_t size1 = stage1->space().size_capped(budget.cap_solutions);
  bool exhausted = stage1->space().fits(budget.cap_solutions);
  bool unknown = false;
  std::size_t links_examined = 0;
  // past half the cap, points of an oversized space are drawn at random
  std::mt19937_64 rng(budget.seed * 0x9e3779b97f4a7c15ULL + 4);
  auto index = [&](std::size_t i, std::size_t size, bool fits) -> std::size_t {
    return fits || i < size / 2 ? i : static_cast<std::size_t>(rng());
  };
  const bool fits1 = exhausted;
  for (std::size_t a = 0; a < size1; ++a) {
    const auto phi = stage1->components(index(a, size1, fits1));
    auto residual = [&](const Vec& u) {
      std::vector<Morphism> psi, link;
      unpack(u, psi, link);
      const NSequence seq = octahedral_sequence(s, inst, phi, psi, link);
      Vec r;
      for (int k = 0; k < n; ++k) {
        const Morphism next = k + 1 < n ? seq.maps[k + 1] : apply_suspension(s, seq.maps[0], 1);
        const Morphism comp = compose(c, next, seq.maps[k]);
        r.insert(r.end(), comp.coords.begin(), comp.coords.end());
      }
      const Morphism diff = sub(c, compose(c, inst.column.maps[n - 1], psi[n - 3]), target);
      r.insert(r.end(), diff.coords.begin(), diff.coords.end());
      return r;
    };
    auto sol = solve_affine(p, total, residual);
    if (!sol) continue;
    AffineSpace space(p, *sol);
    const std::size_t size2 = space.size_capped(budget.cap_solutions);
    const bool fits2 = space.fits(budget.cap_solutions);
    if (!fits2) exhausted = false;
    for (std::size_t b = 0; b < size2; ++b) {
      ++v.spent;
      ++links_examined;
      std::vector<Morphism> psi, link;
      unpack(space.point(index(b, size2, fits2)), psi, link);
      NSequence seq = octahedral_sequence(s, inst, phi, psi, link);
      const Membership m = theta.contains(seq);
      if (m == Membership::in) {
        if (found) *found = OctahedronData{phi, psi, link, seq};
        return v;
      }
      if (m == Membership::inconclusive) unknown = true;
    }
  }
  Json data = octahedron_json(c, inst);
  data["examined"] = links_examined;
  if (exhausted && !unknown) {
    v.verdict = Verdict::fail;
    v.witness = Witness{"no octahedral data makes the assembled sequence a member", data};
  } else {
    v.verdict = Verdict::inconclusive;
    v.witness = Witness{"octahedral search exhausted its budget", data};
  }
  return v;
}

AxiomResult check_N4_prime(const AngleClass& theta, const Budget& budget, Exec exec) {
  const auto inst = sample_octahedra(theta, budget);
  return fold_instances(
      "N4'", run_instances(inst.size(), [&](std::size_t i) { return n4_prime_instance(theta, inst[i], budget); }, exec));
}

AxiomResult check_N4_equivalence(const AngleClass& theta, const Budget& budget, Exec exec) {
  const PresentedCategory& c = theta.structure().category();
  const auto inst = sample_octahedra(theta, budget);
  auto outcomes = run_instances(
      inst.size(),
      [&](std::size_t i) {
        SquareInstance q = square_of(inst[i]);
        q.phi1 = identity(c, inst[i].top.objects[0]);
        const InstanceVerdict a = n4_instance(theta, q, budget);
        const InstanceVerdict b = n4_prime_instance(theta, inst[i], budget);
        InstanceVerdict v;
        v.spent = a.spent + b.spent;
        if (a.verdict == b.verdict) return v;
        const bool definite = a.verdict != Verdict::inconclusive && b.verdict != Verdict::inconclusive;
        v.verdict = definite ? Verdict::fail : Verdict::inconclusive;
        Json data = octahedron_json(c, inst[i]);
        data["cone_search"] = to_string(a.verdict);
        data["octahedral_search"] = to_string(b.verdict);
        v.witness = Witness{"cone search and octahedral search disagree", data};
        return v;
      },
      exec);
  return fold_instances("N4<=>N4'", outcomes);
}

AxiomResult screen_hom_exactness(const AngleClass& theta, const Budget& budget, Exec exec) {
  const SuspendedCategory& s = theta.structure();
  const auto members = theta.enumerate(budget);
  auto probes = objects_up_to(theta.generators(), budget.cap_objects);
  probes.erase(probes.begin());
  auto outcomes = run_instances(
      members.size(),
      [&](std::size_t i) {
        InstanceVerdict v;
        for (Variance var : {Variance::covariant, Variance::contravariant}) {
          AxiomResult r = check_hom_exact(s, members[i], var, probes);
          v.spent += r.budget_spent;
          if (r.verdict == Verdict::fail) {
            v.verdict = Verdict::fail;
            v.witness = r.witnesses.front();
            break;
          }
        }
        return v;
      },
      exec);
  return fold_instances("hom-exactness screen", outcomes);
}

AxiomReport check_axioms(const AngleClass& theta, const Budget& budget, Exec exec) {
  const auto members = theta.enumerate(budget);
  AxiomReport rep = n1_with(theta, members, budget, exec);
  rep.add(n2_with(theta, members, exec));
  const auto squares = squares_from(theta, members, budget);
  rep.add(fold_instances(
      "N3", run_instances(squares.size(), [&](std::size_t i) { return n3_instance(theta, squares[i]); }, exec)));
  rep.add(fold_instances(
      "N4", run_instances(squares.size(), [&](std::size_t i) { return n4_instance(theta, squares[i], budget); }, exec)));
  const auto octa = octahedra_from(theta, members, budget);
  rep.add(fold_instances(
      "N4'", run_instances(octa.size(), [&](std::size_t i) { return n4_prime_instance(theta, octa[i], budget); }, exec)));
  return rep;
}

}  // namespace nangle
