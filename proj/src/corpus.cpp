#include "nangle/corpus.hpp"

#include <algorithm>
#include <stdexcept>

namespace nangle {

namespace {

std::string generator_label(int count, int g) {
  static const char* short_names[] = {"s", "t", "u", "v"};
  if (count <= 4) return short_names[g];
  return "g" + std::to_string(g);
}

std::string perm_label(const std::vector<int>& perm) {
  bool id = true;
  for (std::size_t g = 0; g < perm.size(); ++g) id = id && perm[g] == static_cast<int>(g);
  if (id) return "id";
  if (perm.size() == 2) return "swap";
  std::string out;
  for (int v : perm) out += std::to_string(v);
  return out;
}

bool objects_look_alike(const NSequence& a, const NSequence& b) {
  if (a.n() != b.n()) return false;
  for (int i = 0; i < a.n(); ++i)
    if (!a.objects[i].same_multiset(b.objects[i])) return false;
  return true;
}

}  // namespace

SuspendedCategory semisimple_structure(int p, int count, const std::vector<int>& perm) {
  if (static_cast<int>(perm.size()) != count) throw std::invalid_argument("split_structure: invalid permutation");
  std::vector<std::string> names;
  for (int g = 0; g < count; ++g) names.push_back(generator_label(count, g));
  auto c = std::make_shared<PresentedCategory>(p, names);
  for (int g = 0; g < count; ++g) c->set_hom(g, g, {"id_" + names[g]});
  for (int g = 0; g < count; ++g) {
    c->set_identity(g, {1});
    c->set_composite(g, g, g, 0, 0, {1});
  }
  c->validate();
  std::vector<FpMatrix> maps;
  for (int g = 0; g < count; ++g)
    for (int h = 0; h < count; ++h) maps.push_back(FpMatrix::identity(p, c->hom_dim(g, h)));
  try {
    return make_automorphism(c, perm, maps);
  } catch (const ValidationError&) {
    throw std::invalid_argument("split_structure: invalid permutation");
  }
}

SuspendedCategory dual_numbers_structure(int p) {
  auto c = std::make_shared<PresentedCategory>(p, std::vector<std::string>{"P"});
  c->set_hom(0, 0, {"id", "x"});
  c->set_identity(0, {1, 0});
  c->set_composite(0, 0, 0, 0, 0, {1, 0});
  c->set_composite(0, 0, 0, 0, 1, {0, 1});
  c->set_composite(0, 0, 0, 1, 0, {0, 1});
  c->set_composite(0, 0, 0, 1, 1, {0, 0});
  c->add_relation(0, 0, 0, 1, 1, {0, 0});
  c->validate();
  return make_automorphism(c, {0}, {FpMatrix::identity(p, 2)});
}

CorpusEntry split_structure(int p, int count, const std::vector<int>& perm, int n) {
  if (n < 3) throw std::invalid_argument("split_structure: n must be at least 3");
  CorpusEntry e;
  e.structure = semisimple_structure(p, count, perm);
  e.n = n;
  e.name = "split(p=" + std::to_string(p) + ",gens=" + std::to_string(count) + ",sigma=" + perm_label(perm) +
           ",n=" + std::to_string(n) + ")";
  e.angles = std::make_shared<HomExactClass>(e.structure, n, "split");
  e.oracle = "split";
  e.expected = "pass";
  e.provenance = "semisimple category; contractible n-Σ-sequences";
  return e;
}

CorpusEntry local_algebra_candidate(int n) {
  if (n < 3) throw std::invalid_argument("local_algebra_candidate: n must be at least 3");
  CorpusEntry e;
  e.structure = dual_numbers_structure(2);
  e.n = n;
  e.name = "local(F2[x]/(x^2),n=" + std::to_string(n) + ")";
  e.angles = std::make_shared<HomExactClass>(e.structure, n, "wrap-exact");
  e.oracle = "wrap-exact";
  e.expected = "recorded, not asserted";
  e.provenance = "candidate: wrap-around exact sequences of free modules over a local algebra";
  return e;
}

std::vector<CorpusEntry> builtin_corpus() {
  return {split_structure(2, 1, {0}, 4),    split_structure(2, 2, {1, 0}, 4), split_structure(2, 2, {0, 1}, 4),
          split_structure(3, 1, {0}, 3),    split_structure(3, 2, {1, 0}, 5), split_structure(2, 0, {}, 4),
          local_algebra_candidate(3),       local_algebra_candidate(4)};
}

// ---- listed class -------------------------------------------------------------------

ListedClass::ListedClass(SuspendedCategory s, int n, std::vector<NSequence> members, std::size_t iso_cap)
    : s_(std::move(s)), n_(n), members_(std::move(members)), iso_cap_(iso_cap) {
  for (const auto& m : members_)
    if (m.n() != n_ || !is_valid_sequence(s_, m))
      throw ValidationError("listed class: a listed sequence is not a valid n-Σ-sequence");
}

Membership ListedClass::contains(const NSequence& seq) const {
  if (seq.n() != n_ || !is_valid_sequence(s_, seq)) return Membership::out;
  bool unknown = false;
  for (const auto& m : members_) {
    if (!objects_look_alike(m, seq)) continue;
    const auto r = sequence_iso_search(s_, m, seq, iso_cap_);
    if (r.outcome == SearchOutcome::found) return Membership::in;
    if (r.outcome == SearchOutcome::inconclusive) unknown = true;
  }
  return unknown ? Membership::inconclusive : Membership::out;
}

std::optional<NSequence> ListedClass::complete(const Morphism& f) const {
  const PresentedCategory& c = s_.category();
  const int p = c.modulus();
  for (const auto& m : members_) {
    if (!m.objects[0].same_multiset(f.dom) || !m.objects[1].same_multiset(f.cod)) continue;
    // β ∘ m.f1 = f ∘ α with α, β invertible.
    const std::size_t da = hom_dim(c, m.objects[0], f.dom), db = hom_dim(c, m.objects[1], f.cod);
    auto split = [&](const Vec& u) {
      return std::pair<Morphism, Morphism>{
          Morphism{m.objects[0], f.dom, Vec(u.begin(), u.begin() + static_cast<long>(da))},
          Morphism{m.objects[1], f.cod, Vec(u.begin() + static_cast<long>(da), u.end())}};
    };
    auto sol = solve_affine(p, da + db, [&](const Vec& u) {
      auto [a, b] = split(u);
      return sub(c, compose(c, b, m.maps[0]), compose(c, f, a)).coords;
    });
    if (!sol) continue;
    AffineSpace space(p, *sol);
    const std::size_t size = space.size_capped(iso_cap_);
    for (std::size_t k = 0; k < size; ++k) {
      auto [a, b] = split(space.point(k));
      if (!is_isomorphism(c, a) || !is_isomorphism(c, b)) continue;
      std::vector<Morphism> isos{a, b};
      for (int i = 2; i < n_; ++i) isos.push_back(identity(c, m.objects[i]));
      return transport(s_, m, isos);
    }
  }
  return std::nullopt;
}

std::vector<NSequence> ListedClass::enumerate(const Budget& budget) const {
  std::vector<NSequence> out;
  for (const auto& m : members_) {
    if (out.size() >= budget.cap_instances) break;
    out.push_back(m);
  }
  return out;
}

// ---- defects ---------------------------------------------------------------------------

namespace {

class WithoutTrivial : public ForwardingClass {
 public:
  WithoutTrivial(std::shared_ptr<const AngleClass> base, int g)
      : ForwardingClass(std::move(base)), trivial_(trivial_angle(structure(), ObjectExpr::gen(g), n())) {}
  std::string name() const override { return base_->name() + " without one trivial angle"; }
  Membership contains(const NSequence& seq) const override {
    if (objects_look_alike(seq, trivial_) &&
        sequence_iso_search(structure(), trivial_, seq, 4096).outcome == SearchOutcome::found)
      return Membership::out;
    return base_->contains(seq);
  }
  std::optional<NSequence> complete(const Morphism& f) const override {
    auto r = base_->complete(f);
    if (r && contains(*r) != Membership::in) return std::nullopt;
    return r;
  }
  std::vector<NSequence> enumerate(const Budget& budget) const override {
    std::vector<NSequence> out;
    for (auto& m : base_->enumerate(budget))
      if (contains(m) == Membership::in) out.push_back(m);
    return out;
  }

 private:
  NSequence trivial_;
};

class LeftOnly : public ForwardingClass {
 public:
  LeftOnly(std::shared_ptr<const AngleClass> base, const Budget& budget)
      : ForwardingClass(std::move(base)), seeds_(base_->enumerate(budget)) {}
  std::string name() const override { return base_->name() + " closed under left rotation only"; }
  Membership contains(const NSequence& seq) const override {
    for (const auto& e : seeds_)
      if (seq == e || seq == rotate_left(structure(), e)) return Membership::in;
    return Membership::out;
  }
  std::optional<NSequence> complete(const Morphism& f) const override {
    auto r = base_->complete(f);
    if (r && contains(*r) != Membership::in) return std::nullopt;
    return r;
  }
  std::vector<NSequence> enumerate(const Budget&) const override { return seeds_; }

 private:
  std::vector<NSequence> seeds_;
};

class RejectSums : public ForwardingClass {
 public:
  using ForwardingClass::ForwardingClass;
  std::string name() const override { return base_->name() + " rejecting direct sums"; }
  Membership contains(const NSequence& seq) const override {
    for (const auto& x : seq.objects)
      if (x.size() > 1) return Membership::out;
    return base_->contains(seq);
  }
  std::optional<NSequence> complete(const Morphism& f) const override {
    auto r = base_->complete(f);
    if (r && contains(*r) != Membership::in) return std::nullopt;
    return r;
  }
  std::vector<NSequence> enumerate(const Budget& budget) const override {
    std::vector<NSequence> out;
    for (auto& m : base_->enumerate(budget))
      if (contains(m) == Membership::in) out.push_back(m);
    return out;
  }
};

}  // namespace

std::shared_ptr<AngleClass> without_trivial_of(std::shared_ptr<const AngleClass> base, int generator) {
  return std::make_shared<WithoutTrivial>(std::move(base), generator);
}

std::shared_ptr<AngleClass> left_rotations_only(std::shared_ptr<const AngleClass> base, const Budget& budget) {
  return std::make_shared<LeftOnly>(std::move(base), budget);
}

std::shared_ptr<AngleClass> reject_sums(std::shared_ptr<const AngleClass> base) {
  return std::make_shared<RejectSums>(std::move(base));
}

}  // namespace nangle
