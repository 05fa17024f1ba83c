#include "nangle/angles.hpp"

#include <algorithm>
#include <numeric>

namespace nangle {

namespace {

Morphism neg(const PresentedCategory& c, const Morphism& f) { return scale(c, c.modulus() - 1, f); }

int sign_n(const PresentedCategory& c, int n) { return c.field().sign(n); }

// Rows and columns picked by summand index.
Morphism select(const PresentedCategory& c, const Morphism& f, const std::vector<std::size_t>& rows,
                const std::vector<std::size_t>& cols) {
  ObjectExpr x, y;
  for (std::size_t j : cols) x.summands.push_back(f.dom.summands[j]);
  for (std::size_t i : rows) y.summands.push_back(f.cod.summands[i]);
  Morphism out = zero_morphism(c, x, y);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) set_block(c, out, i, j, block(c, f, rows[i], cols[j]));
  return out;
}

bool exact_at(const FpMatrix& in, const FpMatrix& out, std::size_t middle_dim) {
  if (!(out * in).is_zero()) return false;
  return rank(in) + rank(out) == middle_dim;
}

}  // namespace

// ---- sequences ----------------------------------------------------------------

bool is_valid_sequence(const SuspendedCategory& s, const NSequence& seq) {
  const int n = seq.n();
  if (n < 1 || seq.maps.size() != seq.objects.size()) return false;
  const PresentedCategory& c = s.category();
  for (int i = 0; i < n; ++i) {
    const Morphism& f = seq.maps[i];
    const ObjectExpr& target = i + 1 < n ? seq.objects[i + 1] : apply_suspension(s, seq.objects[0], 1);
    if (f.dom != seq.objects[i] || f.cod != target) return false;
    if (f.coords.size() != hom_dim(c, f.dom, f.cod)) return false;
  }
  return true;
}

bool commutes(const SuspendedCategory& s, const SequenceMorphism& phi) {
  const PresentedCategory& c = s.category();
  const int n = phi.source.n();
  if (phi.target.n() != n || static_cast<int>(phi.components.size()) != n) return false;
  for (int i = 0; i < n; ++i) {
    const Morphism& next = i + 1 < n ? phi.components[i + 1] : apply_suspension(s, phi.components[0], 1);
    if (compose(c, phi.target.maps[i], phi.components[i]) != compose(c, next, phi.source.maps[i])) return false;
  }
  return true;
}

NSequence rotate_left(const SuspendedCategory& s, const NSequence& seq) {
  const PresentedCategory& c = s.category();
  const int n = seq.n();
  NSequence out;
  for (int i = 1; i < n; ++i) out.objects.push_back(seq.objects[i]);
  out.objects.push_back(apply_suspension(s, seq.objects[0], 1));
  for (int i = 1; i < n; ++i) out.maps.push_back(seq.maps[i]);
  out.maps.push_back(scale(c, sign_n(c, n), apply_suspension(s, seq.maps[0], 1)));
  return out;
}

NSequence rotate_right(const SuspendedCategory& s, const NSequence& seq) {
  const PresentedCategory& c = s.category();
  const int n = seq.n();
  NSequence out;
  const ObjectExpr& xn = seq.objects[n - 1];
  out.objects.push_back(apply_suspension(s, xn, -1));
  for (int i = 0; i + 1 < n; ++i) out.objects.push_back(seq.objects[i]);
  // Σ⁻¹X_n -> Σ⁻¹ΣX_1 -> X_1 and X_{n-1} -> X_n -> ΣΣ⁻¹X_n.
  const Morphism first = compose(c, s.unit_at(seq.objects[0]), apply_suspension(s, seq.maps[n - 1], -1));
  out.maps.push_back(scale(c, sign_n(c, n), first));
  for (int i = 0; i + 2 < n; ++i) out.maps.push_back(seq.maps[i]);
  const Morphism back = *inverse(c, s.counit_at(xn));
  out.maps.push_back(compose(c, back, seq.maps[n - 2]));
  return out;
}

NSequence trivial_angle(const SuspendedCategory& s, const ObjectExpr& x, int n) {
  const PresentedCategory& c = s.category();
  NSequence out;
  out.objects.push_back(x);
  out.objects.push_back(x);
  for (int i = 2; i < n; ++i) out.objects.push_back(ObjectExpr::zero());
  out.maps.push_back(identity(c, x));
  for (int i = 1; i < n; ++i) {
    const ObjectExpr& target = i + 1 < n ? out.objects[i + 1] : apply_suspension(s, x, 1);
    out.maps.push_back(zero_morphism(c, out.objects[i], target));
  }
  return out;
}

NSequence direct_sum(const SuspendedCategory& s, const NSequence& a, const NSequence& b) {
  const PresentedCategory& c = s.category();
  if (a.n() != b.n()) throw std::invalid_argument("direct_sum: sequences of different length");
  NSequence out;
  for (int i = 0; i < a.n(); ++i) {
    out.objects.push_back(a.objects[i] + b.objects[i]);
    out.maps.push_back(direct_sum(c, a.maps[i], b.maps[i]));
  }
  return out;
}

NSequence transport(const SuspendedCategory& s, const NSequence& seq, const std::vector<Morphism>& isos) {
  const PresentedCategory& c = s.category();
  const int n = seq.n();
  NSequence out;
  for (int i = 0; i < n; ++i) out.objects.push_back(isos[i].cod);
  for (int i = 0; i < n; ++i) {
    const Morphism inv = *inverse(c, isos[i]);
    const Morphism next = i + 1 < n ? isos[i + 1] : apply_suspension(s, isos[0], 1);
    out.maps.push_back(compose(c, next, compose(c, seq.maps[i], inv)));
  }
  return out;
}

std::optional<NSequence> restrict_sequence(const SuspendedCategory& s, const NSequence& seq,
                                           const std::vector<std::vector<std::size_t>>& keep) {
  const PresentedCategory& c = s.category();
  const int n = seq.n();
  if (static_cast<int>(keep.size()) != n) return std::nullopt;
  // Summand positions of ΣX_1 coming from the kept summands of X_1.
  std::vector<std::size_t> last;
  std::vector<std::size_t> start;
  std::size_t pos = 0;
  for (int g : seq.objects[0].summands) {
    start.push_back(pos);
    pos += s.sigma.object_image[g].size();
  }
  for (std::size_t j : keep[0]) {
    const int g = seq.objects[0].summands[j];
    for (std::size_t t = 0; t < s.sigma.object_image[g].size(); ++t) last.push_back(start[j] + t);
  }
  NSequence out;
  for (int i = 0; i < n; ++i) {
    ObjectExpr x;
    for (std::size_t j : keep[i]) x.summands.push_back(seq.objects[i].summands[j]);
    out.objects.push_back(x);
  }
  for (int i = 0; i < n; ++i) out.maps.push_back(select(c, seq.maps[i], i + 1 < n ? keep[i + 1] : last, keep[i]));
  if (!is_valid_sequence(s, out)) return std::nullopt;
  return out;
}

NSequence mapping_cone(const SuspendedCategory& s, const SequenceMorphism& phi) {
  const PresentedCategory& c = s.category();
  if (!commutes(s, phi)) throw std::invalid_argument("mapping_cone: morphism squares do not commute");
  const NSequence& x = phi.source;
  const NSequence& y = phi.target;
  const int n = x.n();
  // X_{n+1} = ΣX_1, f_{n+1} = Σf_1, φ_{n+1} = Σφ_1.
  auto xobj = [&](int i) { return i < n ? x.objects[i] : apply_suspension(s, x.objects[i - n], 1); };
  auto xmap = [&](int i) { return i < n ? x.maps[i] : apply_suspension(s, x.maps[i - n], 1); };
  auto comp = [&](int i) { return i < n ? phi.components[i] : apply_suspension(s, phi.components[i - n], 1); };
  NSequence out;
  for (int i = 0; i < n; ++i) out.objects.push_back(xobj(i + 1) + y.objects[i]);
  for (int i = 0; i < n; ++i) {
    const ObjectExpr ynext = i + 1 < n ? y.objects[i + 1] : apply_suspension(s, y.objects[0], 1);
    out.maps.push_back(block_matrix(c, {xobj(i + 2), ynext}, {xobj(i + 1), y.objects[i]},
                                    {{neg(c, xmap(i + 1)), zero_morphism(c, y.objects[i], xobj(i + 2))},
                                     {comp(i + 1), y.maps[i]}}));
  }
  return out;
}

// ---- linear completion ------------------------------------------------------------

std::optional<LinearSolution> solve_affine(int p, std::size_t unknowns, const std::function<Vec(const Vec&)>& residual) {
  const Vec r0 = residual(Vec(unknowns, 0));
  std::vector<Vec> cols;
  cols.reserve(unknowns);
  for (std::size_t t = 0; t < unknowns; ++t) {
    Vec e(unknowns, 0);
    e[t] = 1;
    cols.push_back(vec_sub(p, residual(e), r0));
  }
  const FpMatrix a = FpMatrix::from_columns(p, r0.size(), cols);
  return solve_linear(a, vec_scale(p, p - 1, r0));
}

SequenceMorphismSpace::SequenceMorphismSpace(const SuspendedCategory& s, NSequence source, NSequence target,
                                             std::vector<std::optional<Morphism>> fixed, AffineSpace space,
                                             std::vector<std::size_t> offsets)
    : s_(&s),
      source_(std::move(source)),
      target_(std::move(target)),
      fixed_(std::move(fixed)),
      space_(std::move(space)),
      offsets_(std::move(offsets)) {}

namespace {

std::vector<Morphism> assemble(const PresentedCategory& c, const NSequence& src, const NSequence& dst,
                               const std::vector<std::optional<Morphism>>& fixed,
                               const std::vector<std::size_t>& offsets, const Vec& u) {
  std::vector<Morphism> out;
  for (int i = 0; i < src.n(); ++i) {
    if (fixed[i]) {
      out.push_back(*fixed[i]);
      continue;
    }
    const std::size_t d = hom_dim(c, src.objects[i], dst.objects[i]);
    out.push_back({src.objects[i], dst.objects[i],
                   Vec(u.begin() + static_cast<long>(offsets[i]), u.begin() + static_cast<long>(offsets[i] + d))});
  }
  return out;
}

}  // namespace

std::vector<Morphism> SequenceMorphismSpace::components(std::size_t index) const {
  return assemble(s_->category(), source_, target_, fixed_, offsets_, space_.point(index));
}

SequenceMorphism SequenceMorphismSpace::morphism(std::size_t index) const {
  return {source_, target_, components(index)};
}

std::optional<SequenceMorphismSpace> solve_sequence_morphism(const SuspendedCategory& s, const NSequence& source,
                                                             const NSequence& target,
                                                             const std::vector<std::optional<Morphism>>& fixed) {
  const PresentedCategory& c = s.category();
  const int n = source.n();
  if (target.n() != n || static_cast<int>(fixed.size()) != n)
    throw std::invalid_argument("solve_sequence_morphism: length mismatch");
  std::vector<std::size_t> offsets(n, 0);
  std::size_t total = 0;
  for (int i = 0; i < n; ++i) {
    offsets[i] = total;
    if (!fixed[i]) total += hom_dim(c, source.objects[i], target.objects[i]);
  }
  auto residual = [&](const Vec& u) {
    const auto phi = assemble(c, source, target, fixed, offsets, u);
    Vec r;
    for (int i = 0; i < n; ++i) {
      const Morphism next = i + 1 < n ? phi[i + 1] : apply_suspension(s, phi[0], 1);
      const Morphism d = sub(c, compose(c, target.maps[i], phi[i]), compose(c, next, source.maps[i]));
      r.insert(r.end(), d.coords.begin(), d.coords.end());
    }
    return r;
  };
  auto sol = solve_affine(c.modulus(), total, residual);
  if (!sol) return std::nullopt;
  return SequenceMorphismSpace(s, source, target, fixed, AffineSpace(c.modulus(), *sol), offsets);
}

std::optional<SequenceMorphismSpace> complete_morphism(const SuspendedCategory& s, const Morphism& phi1,
                                                       const Morphism& phi2, const NSequence& source,
                                                       const NSequence& target) {
  const PresentedCategory& c = s.category();
  if (compose(c, target.maps[0], phi1) != compose(c, phi2, source.maps[0]))
    throw PreconditionError("complete_morphism: the first square does not commute");
  std::vector<std::optional<Morphism>> fixed(source.n());
  fixed[0] = phi1;
  fixed[1] = phi2;
  return solve_sequence_morphism(s, source, target, fixed);
}

SequenceIsoResult sequence_iso_search(const SuspendedCategory& s, const NSequence& a, const NSequence& b,
                                      std::size_t cap) {
  const PresentedCategory& c = s.category();
  SequenceIsoResult res;
  if (a.n() != b.n()) return res;
  for (int i = 0; i < a.n(); ++i) {
    const ObjectExpr &x = a.objects[i], &y = b.objects[i];
    const std::size_t d = hom_dim(c, x, y);
    if (d != hom_dim(c, x, x) || d != hom_dim(c, y, y) || d != hom_dim(c, y, x)) return res;
  }
  auto space = solve_sequence_morphism(s, a, b, std::vector<std::optional<Morphism>>(a.n()));
  if (!space) return res;
  const std::size_t size = space->space().size_capped(cap);
  for (std::size_t k = 0; k < size; ++k) {
    ++res.examined;
    auto comps = space->components(k);
    if (std::all_of(comps.begin(), comps.end(), [&](const Morphism& f) { return is_isomorphism(c, f); })) {
      res.outcome = SearchOutcome::found;
      res.components = std::move(comps);
      return res;
    }
  }
  res.outcome = space->space().fits(cap) ? SearchOutcome::none : SearchOutcome::inconclusive;
  return res;
}

// ---- exactness ------------------------------------------------------------------

AxiomResult check_hom_exact(const SuspendedCategory& s, const NSequence& seq, Variance variance,
                            const std::vector<ObjectExpr>& probes) {
  const PresentedCategory& c = s.category();
  const int n = seq.n();
  AxiomResult res;
  res.name = variance == Variance::covariant ? "hom-exact covariant" : "hom-exact contravariant";
  // Three consecutive periods S, L^n S, L^2n S form one chain.
  std::vector<ObjectExpr> objs;
  std::vector<Morphism> maps;
  NSequence cur = seq;
  for (int period = 0; period < 3; ++period) {
    for (int i = 0; i < n; ++i) {
      objs.push_back(cur.objects[i]);
      maps.push_back(cur.maps[i]);
    }
    for (int i = 0; i < n; ++i) cur = rotate_left(s, cur);
  }
  objs.push_back(maps.back().cod);
  for (std::size_t w = 0; w < probes.size(); ++w) {
    const ObjectExpr& probe = probes[w];
    std::vector<FpMatrix> m;
    for (const Morphism& f : maps)
      m.push_back(variance == Variance::covariant ? postcomposition_matrix(c, f, probe)
                                                  : precomposition_matrix(c, f, probe));
    for (std::size_t k = 1; k < maps.size(); ++k) {
      ++res.budget_spent;
      const std::size_t dim = variance == Variance::covariant ? hom_dim(c, probe, objs[k]) : hom_dim(c, objs[k], probe);
      const bool ok = variance == Variance::covariant ? exact_at(m[k - 1], m[k], dim) : exact_at(m[k], m[k - 1], dim);
      if (!ok) {
        res.absorb(Verdict::fail, Witness{"not exact at position " + std::to_string(k) + " for probe " + describe(c, probe),
                                          Json{{"position", k}, {"probe", object_json(c, probe)},
                                               {"sequence", sequence_json(c, seq)}}});
        return res;
      }
    }
    ++res.instances;
  }
  return res;
}

// ---- enumeration --------------------------------------------------------------------

std::vector<ObjectExpr> objects_up_to(const std::vector<int>& generators, int cap) {
  std::vector<ObjectExpr> out{ObjectExpr::zero()};
  std::vector<ObjectExpr> layer{ObjectExpr::zero()};
  for (int size = 1; size <= cap; ++size) {
    std::vector<ObjectExpr> next;
    for (const ObjectExpr& x : layer) {
      const int last = x.is_zero() ? -1 : x.summands.back();
      for (int g : generators) {
        if (g < last) continue;
        ObjectExpr y = x;
        y.summands.push_back(g);
        next.push_back(y);
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

std::vector<Morphism> sample_morphisms(const PresentedCategory& c, const ObjectExpr& x, const ObjectExpr& y,
                                       std::size_t cap, std::mt19937_64& rng) {
  const std::size_t d = hom_dim(c, x, y);
  std::vector<Morphism> out;
  if (cap == 0) return out;
  const auto all = enumerate_vectors(c.modulus(), d, cap + 1);
  if (all.size() <= cap) {
    for (const Vec& v : all) out.push_back({x, y, v});
    return out;
  }
  out.push_back(zero_morphism(c, x, y));
  if (x == y && out.size() < cap) out.push_back(identity(c, x));
  std::uniform_int_distribution<int> coin(0, c.modulus() - 1);
  while (out.size() < cap) {
    Vec v(d);
    for (int& e : v) e = coin(rng);
    out.push_back({x, y, v});
  }
  return out;
}

std::vector<int> AngleClass::generators() const {
  std::vector<int> g(static_cast<std::size_t>(structure().category().generator_count()));
  std::iota(g.begin(), g.end(), 0);
  return g;
}

std::vector<NSequence> AngleClass::enumerate(const Budget& budget) const {
  const SuspendedCategory& s = structure();
  const PresentedCategory& c = s.category();
  std::mt19937_64 rng(budget.seed);
  std::vector<NSequence> out;
  auto push = [&](const NSequence& seq) {
    if (out.size() >= budget.cap_instances) return;
    if (std::find(out.begin(), out.end(), seq) == out.end()) out.push_back(seq);
  };
  for (int g : generators()) {
    auto t = complete(identity(c, ObjectExpr::gen(g)));
    if (t) push(*t);
  }
  const auto objs = objects_up_to(generators(), budget.cap_objects);
  const std::size_t pairs = objs.size() * objs.size();
  const std::size_t per_pair = std::max<std::size_t>(2, 2 * budget.cap_instances / std::max<std::size_t>(pairs, 1) + 1);
  std::vector<Morphism> candidates;
  for (const auto& x : objs)
    for (const auto& y : objs) {
      auto m = sample_morphisms(c, x, y, per_pair, rng);
      candidates.insert(candidates.end(), m.begin(), m.end());
    }
  std::shuffle(candidates.begin(), candidates.end(), rng);
  bool rotate = false;
  for (const Morphism& f : candidates) {
    if (out.size() >= budget.cap_instances) break;
    auto seq = complete(f);
    if (!seq) continue;
    push(rotate ? rotate_left(s, *seq) : *seq);
    rotate = !rotate;
  }
  return out;
}

// ---- splitting and the Hom-exact class ----------------------------------------------------

std::optional<MorphismSplitting> split_morphism(const PresentedCategory& c, const Morphism& f) {
  const ObjectExpr& x = f.dom;
  const ObjectExpr& y = f.cod;
  const std::size_t rows = y.size(), cols = x.size();
  Morphism cur = f, u = identity(c, x), v = identity(c, y);
  std::vector<bool> row_done(rows, false), col_done(cols, false);
  MorphismSplitting out;
  std::vector<std::size_t> dom_order, cod_order;
  auto blk = [&](std::size_t i, std::size_t j) {
    return Morphism{ObjectExpr::gen(x.summands[j]), ObjectExpr::gen(y.summands[i]), block(c, cur, i, j)};
  };
  // Clears column j outside row i by row operations, then row i outside column j.
  auto eliminate = [&](std::size_t i, std::size_t j, const std::vector<std::pair<std::size_t, Morphism>>& row_factors,
                       const std::vector<std::pair<std::size_t, Morphism>>& col_factors) {
    Morphism e = identity(c, y);
    for (const auto& [k, a] : row_factors) set_block(c, e, k, i, neg(c, a).coords);
    cur = compose(c, e, cur);
    v = compose(c, e, v);
    Morphism g = identity(c, x);
    for (const auto& [l, b] : col_factors) set_block(c, g, j, l, neg(c, b).coords);
    cur = compose(c, cur, g);
    u = compose(c, u, g);
  };
  auto iso_pivot = [&]() {
    for (std::size_t i = 0; i < rows; ++i) {
      if (row_done[i]) continue;
      for (std::size_t j = 0; j < cols; ++j) {
        if (col_done[j]) continue;
        const Morphism b = blk(i, j);
        if (is_zero(b)) continue;
        auto inv = inverse(c, b);
        if (!inv) continue;
        std::vector<std::pair<std::size_t, Morphism>> rf, cf;
        for (std::size_t k = 0; k < rows; ++k)
          if (k != i) rf.emplace_back(k, compose(c, blk(k, j), *inv));
        eliminate(i, j, rf, {});
        for (std::size_t l = 0; l < cols; ++l)
          if (l != j) cf.emplace_back(l, compose(c, *inv, blk(i, l)));
        eliminate(i, j, {}, cf);
        row_done[i] = col_done[j] = true;
        cod_order.push_back(i);
        dom_order.push_back(j);
        out.pieces.push_back({MorphismSplitting::Kind::iso, x.summands[j], y.summands[i], blk(i, j)});
        return true;
      }
    }
    return false;
  };
  auto radical_pivot = [&]() {
    for (std::size_t i = 0; i < rows; ++i) {
      if (row_done[i]) continue;
      for (std::size_t j = 0; j < cols; ++j) {
        if (col_done[j]) continue;
        const Morphism b = blk(i, j);
        if (is_zero(b)) continue;
        std::vector<std::pair<std::size_t, Morphism>> rf, cf;
        bool ok = true;
        for (std::size_t k = 0; k < rows && ok; ++k) {
          if (k == i || row_done[k] || is_zero(blk(k, j))) continue;
          const ObjectExpr yk = ObjectExpr::gen(y.summands[k]);
          auto sol = solve_linear(precomposition_matrix(c, b, yk), blk(k, j).coords);
          if (!sol) ok = false;
          else rf.emplace_back(k, Morphism{b.cod, yk, sol->particular});
        }
        for (std::size_t l = 0; l < cols && ok; ++l) {
          if (l == j || col_done[l] || is_zero(blk(i, l))) continue;
          const ObjectExpr xl = ObjectExpr::gen(x.summands[l]);
          auto sol = solve_linear(postcomposition_matrix(c, b, xl), blk(i, l).coords);
          if (!sol) ok = false;
          else cf.emplace_back(l, Morphism{xl, b.dom, sol->particular});
        }
        if (!ok) continue;
        eliminate(i, j, rf, cf);
        row_done[i] = col_done[j] = true;
        cod_order.push_back(i);
        dom_order.push_back(j);
        out.pieces.push_back({MorphismSplitting::Kind::radical, x.summands[j], y.summands[i], blk(i, j)});
        return true;
      }
    }
    return false;
  };
  while (iso_pivot() || radical_pivot()) {
  }
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      if (!row_done[i] && !col_done[j] && !is_zero(blk(i, j))) return std::nullopt;

  for (std::size_t j = 0; j < cols; ++j)
    if (!col_done[j]) {
      dom_order.push_back(j);
      out.pieces.push_back({MorphismSplitting::Kind::zero_domain, x.summands[j], -1,
                            zero_morphism(c, ObjectExpr::gen(x.summands[j]), ObjectExpr::zero())});
    }
  for (std::size_t i = 0; i < rows; ++i)
    if (!row_done[i]) {
      cod_order.push_back(i);
      out.pieces.push_back({MorphismSplitting::Kind::zero_codomain, -1, y.summands[i],
                            zero_morphism(c, ObjectExpr::zero(), ObjectExpr::gen(y.summands[i]))});
    }
  const Morphism q1 = permutation_morphism(c, x, dom_order);
  const Morphism q2 = permutation_morphism(c, y, cod_order);
  out.to_domain = compose(c, u, *inverse(c, q1));
  out.to_codomain = *inverse(c, compose(c, q2, v));
  return out;
}

HomExactClass::HomExactClass(SuspendedCategory s, int n, std::string name)
    : s_(std::move(s)), n_(n), name_(std::move(name)) {
  if (!s_.strict) throw std::invalid_argument("HomExactClass needs an automorphism");
}

Membership HomExactClass::contains(const NSequence& seq) const {
  if (seq.n() != n_ || !is_valid_sequence(s_, seq)) return Membership::out;
  const PresentedCategory& c = s_.category();
  std::vector<Morphism> maps = seq.maps;
  maps.push_back(scale(c, sign_n(c, n_), apply_suspension(s_, seq.maps[0], 1)));
  for (int g = 0; g < c.generator_count(); ++g) {
    const ObjectExpr w = ObjectExpr::gen(g);
    std::vector<FpMatrix> m;
    for (const Morphism& f : maps) m.push_back(postcomposition_matrix(c, f, w));
    for (std::size_t k = 1; k < maps.size(); ++k)
      if (!exact_at(m[k - 1], m[k], hom_dim(c, w, maps[k].dom))) return Membership::out;
  }
  return Membership::in;
}

std::optional<NSequence> HomExactClass::complete(const Morphism& f) const {
  const PresentedCategory& c = s_.category();
  auto split = split_morphism(c, f);
  if (!split) return std::nullopt;
  std::optional<NSequence> total;
  for (const auto& piece : split->pieces) {
    NSequence part;
    using K = MorphismSplitting::Kind;
    if (piece.kind == K::iso) {
      part.objects = {piece.map.dom, piece.map.cod};
      for (int i = 2; i < n_; ++i) part.objects.push_back(ObjectExpr::zero());
      part.maps.push_back(piece.map);
      for (int i = 1; i < n_; ++i)
        part.maps.push_back(zero_morphism(c, part.objects[i], i + 1 < n_ ? part.objects[i + 1]
                                                                        : apply_suspension(s_, piece.map.dom, 1)));
    } else if (piece.kind == K::zero_domain) {
      const ObjectExpr x = piece.map.dom, sx = apply_suspension(s_, x, 1);
      part.objects.push_back(x);
      for (int i = 1; i + 1 < n_; ++i) part.objects.push_back(ObjectExpr::zero());
      part.objects.push_back(sx);
      for (int i = 0; i + 1 < n_; ++i) part.maps.push_back(zero_morphism(c, part.objects[i], part.objects[i + 1]));
      part.maps.push_back(scale(c, sign_n(c, n_), identity(c, sx)));
    } else if (piece.kind == K::zero_codomain) {
      const ObjectExpr y = piece.map.cod;
      part.objects = {ObjectExpr::zero(), y, y};
      for (int i = 3; i < n_; ++i) part.objects.push_back(ObjectExpr::zero());
      part.maps.push_back(zero_morphism(c, ObjectExpr::zero(), y));
      part.maps.push_back(identity(c, y));
      for (int i = 2; i < n_; ++i)
        part.maps.push_back(zero_morphism(c, part.objects[i], i + 1 < n_ ? part.objects[i + 1] : ObjectExpr::zero()));
    } else {
      const ObjectExpr x = piece.map.dom;
      if (piece.map.cod != x || apply_suspension(s_, x, 1) != x) return std::nullopt;
      bool found = false;
      for (int sg : {1, c.modulus() - 1}) {
        NSequence wrap;
        for (int i = 0; i < n_; ++i) wrap.objects.push_back(x);
        for (int i = 0; i + 1 < n_; ++i) wrap.maps.push_back(piece.map);
        wrap.maps.push_back(scale(c, sg, piece.map));
        if (contains(wrap) == Membership::in) {
          part = wrap;
          found = true;
          break;
        }
      }
      if (!found) return std::nullopt;
    }
    total = total ? direct_sum(s_, *total, part) : part;
  }
  if (!total) total = trivial_angle(s_, ObjectExpr::zero(), n_);
  std::vector<Morphism> isos;
  isos.push_back(split->to_domain);
  isos.push_back(split->to_codomain);
  for (int i = 2; i < n_; ++i) isos.push_back(identity(c, total->objects[i]));
  NSequence result = transport(s_, *total, isos);
  if (result.maps[0] != f || contains(result) != Membership::in) return std::nullopt;
  return result;
}

// ---- opposite ----------------------------------------------------------------------------

NSequence opposite_sequence(const SuspendedCategory& s, const NSequence& seq) {
  const PresentedCategory& c = s.category();
  const int n = seq.n();
  NSequence out;
  for (int i = 0; i < n; ++i) out.objects.push_back(seq.objects[n - 1 - i]);
  for (int i = 0; i + 1 < n; ++i) out.maps.push_back(to_opposite(c, seq.maps[n - 2 - i]));
  out.maps.push_back(to_opposite(c, scale(c, sign_n(c, n), apply_suspension(s, seq.maps[n - 1], -1))));
  return out;
}

OppositeClass::OppositeClass(std::shared_ptr<const AngleClass> base)
    : base_(std::move(base)), op_(build_opposite(base_->structure())) {}

NSequence OppositeClass::to_op(const NSequence& seq) const { return opposite_sequence(base_->structure(), seq); }

NSequence OppositeClass::from_op(const NSequence& seq) const {
  const SuspendedCategory& s = base_->structure();
  const PresentedCategory& c = s.category();
  const PresentedCategory& oc = op_.category();
  const int n = seq.n();
  NSequence out;
  for (int i = 0; i < n; ++i) out.objects.push_back(seq.objects[n - 1 - i]);
  for (int j = 0; j + 1 < n; ++j) out.maps.push_back(to_opposite(oc, seq.maps[n - 2 - j]));
  out.maps.push_back(scale(c, sign_n(c, n), apply_suspension(s, to_opposite(oc, seq.maps[n - 1]), 1)));
  return out;
}

Membership OppositeClass::contains(const NSequence& seq) const {
  if (seq.n() != n() || !is_valid_sequence(op_, seq)) return Membership::out;
  return base_->contains(from_op(seq));
}

std::optional<NSequence> OppositeClass::complete(const Morphism& f) const {
  const SuspendedCategory& s = base_->structure();
  auto seq = base_->complete(to_opposite(op_.category(), f));
  if (!seq) return std::nullopt;
  NSequence r = *seq;
  for (int i = 0; i + 2 < n(); ++i) r = rotate_right(s, r);
  return to_op(r);
}

Json sequence_json(const PresentedCategory& c, const NSequence& seq) {
  Json objs = Json::array(), maps = Json::array();
  for (const auto& x : seq.objects) objs.push_back(object_json(c, x));
  for (const auto& f : seq.maps) maps.push_back(morphism_json(c, f));
  return Json{{"objects", objs}, {"maps", maps}};
}

}  // namespace nangle
