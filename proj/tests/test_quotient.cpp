#include "doctest.h"
#include "nangle/corpus.hpp"
#include "nangle/quotient.hpp"

#include <cmath>
#include <random>
#include <set>

using namespace nangle;

namespace {

Budget small_budget() {
  Budget b;
  b.cap_solutions = 32;
  b.cap_instances = 12;
  b.seed = 3;
  return b;
}

// s -a-> t with Hom(t, s) = 0 and Σ = id
SuspendedCategory arrow_structure() {
  auto c = std::make_shared<PresentedCategory>(2, std::vector<std::string>{"s", "t"});
  c->set_hom(0, 0, {"id_s"});
  c->set_hom(1, 1, {"id_t"});
  c->set_hom(0, 1, {"a"});
  c->set_identity(0, {1});
  c->set_identity(1, {1});
  c->set_composite(0, 0, 0, 0, 0, {1});
  c->set_composite(1, 1, 1, 0, 0, {1});
  c->set_composite(0, 0, 1, 0, 0, {1});
  c->set_composite(0, 1, 1, 0, 0, {1});
  c->validate();
  return make_automorphism(
      c, {0, 1}, {FpMatrix::identity(2, 1), FpMatrix::identity(2, 1), FpMatrix::identity(2, 0), FpMatrix::identity(2, 1)});
}

// All composites X -> G -> Y through objects of D of multiplicity <= 2.
std::set<Vec> brute_ideal(const PresentedCategory& c, const ObjectExpr& x, const ObjectExpr& y, const Subcategory& D) {
  std::set<Vec> out{Vec(hom_dim(c, x, y), 0)};
  for (const auto& g : objects_up_to(D.generators, 2))
    for (const Vec& u : enumerate_vectors(c.modulus(), hom_dim(c, x, g), 1 << 12))
      for (const Vec& v : enumerate_vectors(c.modulus(), hom_dim(c, g, y), 1 << 12))
        out.insert(compose(c, Morphism{g, y, v}, Morphism{x, g, u}).coords);
  return out;
}

const AxiomResult& result(const AxiomReport& r, const std::string& name) {
  const AxiomResult* a = r.find(name);
  REQUIRE_MESSAGE(a, name);
  return *a;
}

void check_no_fail(const AxiomReport& r) {
  for (const auto& a : r.results) CHECK_MESSAGE(a.verdict != Verdict::fail, a.name);
}

}  // namespace

TEST_CASE("ideal subspaces") {
  const auto e = split_structure(2, 2, {0, 1}, 4);
  const auto& c = e.structure.category();
  const ObjectExpr S = ObjectExpr::gen(0), T = ObjectExpr::gen(1);
  CHECK(ideal_subspace(c, T, T, Subcategory({0})).empty());
  CHECK(ideal_subspace(c, S, S, Subcategory({0})).size() == 1);
  CHECK(ideal_subspace(c, S + T, S + T, Subcategory::none()).empty());
  CHECK(ideal_subspace(c, S + T, S + T, Subcategory::all(c)).size() == 2);
  const QuotientCategory q(e.structure, Subcategory::all(c), Subcategory({0}));
  REQUIRE(q.category().generator_count() == 1);
  CHECK(q.category().generator_name(0) == "t");
  CHECK(q.category().hom_dim(0, 0) == 1);
  CHECK(q.to_quotient(S + T + S) == ObjectExpr::gen(0));
  CHECK(q.in_ideal(identity(c, S)));
  CHECK_FALSE(q.in_ideal(identity(c, T)));
  CHECK_THROWS_AS(QuotientCategory(e.structure, Subcategory({0}), Subcategory({1})), PreconditionError);
  const QuotientCategory all(e.structure, Subcategory::all(c), Subcategory::all(c));
  CHECK(all.category().generator_count() == 0);
  const QuotientCategory none(e.structure, Subcategory::all(c), Subcategory::none());
  for (int g = 0; g < 2; ++g)
    for (int h = 0; h < 2; ++h) CHECK(none.category().hom_dim(g, h) == c.hom_dim(g, h));
}

TEST_CASE("ideal subspaces agree with brute force") {
  const SuspendedCategory arrow = arrow_structure();
  const auto dual = local_algebra_candidate(3);
  const auto split = split_structure(3, 2, {1, 0}, 3);
  for (const SuspendedCategory* s : {&arrow, &dual.structure, &split.structure}) {
    const auto& c = s->category();
    const int p = c.modulus();
    std::vector<int> gens;
    for (int g = 0; g < c.generator_count(); ++g) gens.push_back(g);
    for (const auto& D : {Subcategory({0}), Subcategory({c.generator_count() - 1}), Subcategory::none()})
      for (const auto& x : objects_up_to(gens, 2))
        for (const auto& y : objects_up_to(gens, 1)) {
          const auto basis = ideal_subspace(c, x, y, D);
          const auto brute = brute_ideal(c, x, y, D);
          CHECK(brute.size() == static_cast<std::size_t>(std::pow(p, basis.size())));
          for (const Vec& v : brute) CHECK(in_span(p, hom_dim(c, x, y), basis, v));
        }
  }
  const auto& ac = arrow.category();
  // a = id_t ∘ a factors through t but not through s (Hom(t, s) = 0)
  CHECK(ideal_subspace(ac, ObjectExpr::gen(0), ObjectExpr::gen(1), Subcategory({1})).size() == 1);
  CHECK(ideal_subspace(ac, ObjectExpr::gen(0), ObjectExpr::gen(0), Subcategory({1})).empty());
}

TEST_CASE("the ideal is two-sided and quotient composition is well defined") {
  std::mt19937_64 rng(11);
  const SuspendedCategory arrow = arrow_structure();
  const auto dual = local_algebra_candidate(3);
  const auto split = split_structure(2, 2, {0, 1}, 4);
  for (const SuspendedCategory* s : {&arrow, &dual.structure, &split.structure}) {
    const auto& c = s->category();
    const Subcategory Z = Subcategory::all(c);
    for (const auto& D : {Subcategory({0}), Subcategory({c.generator_count() - 1})}) {
      const QuotientCategory q(*s, Z, D);
      const auto objs = objects_up_to(Z.generators, 2);
      for (int trial = 0; trial < 60; ++trial) {
        const ObjectExpr& v = objs[rng() % objs.size()];
        const ObjectExpr& x = objs[rng() % objs.size()];
        const ObjectExpr& y = objs[rng() % objs.size()];
        const ObjectExpr& w = objs[rng() % objs.size()];
        const auto basis = ideal_subspace(c, x, y, D);
        Vec iv(hom_dim(c, x, y), 0);
        for (const Vec& b : basis) iv = vec_add(c.modulus(), iv, vec_scale(c.modulus(), static_cast<int>(rng() % 3), b));
        const Morphism i{x, y, iv};
        const Morphism h = sample_morphisms(c, v, x, 1, rng).front();
        const Morphism g = sample_morphisms(c, y, w, 1, rng).front();
        CHECK(q.in_ideal(i));
        CHECK(q.in_ideal(compose(c, g, compose(c, i, h))));
        // representatives f and f + i give the same class of g ∘ f
        const Morphism f = sample_morphisms(c, x, y, 1, rng).front();
        const Morphism gq = q.project(g), fq = q.project(f);
        CHECK(q.project(compose(c, g, add(c, f, i))) == compose(q.category(), gq, fq));
        CHECK(q.project(q.lift(fq)) == fq);
      }
    }
  }
}

TEST_CASE("T on the zero mutation pair is Σ") {
  const auto e = split_structure(2, 2, {1, 0}, 4);
  const auto& c = e.structure.category();
  const Subcategory all = Subcategory::all(c);
  const auto mp = validate_mutation_pair(*e.angles, all, Subcategory::none(), small_budget());
  REQUIRE(mp.witness);
  auto q = std::make_shared<QuotientCategory>(e.structure, all, Subcategory::none());
  const QuotientFunctor T(q, *e.angles, *mp.witness, small_budget());
  CHECK(T.equivalence_found());
  for (int g = 0; g < 2; ++g)
    CHECK(T.structure().sigma.object_image[g] == e.structure.sigma.object_image[g]);
  std::mt19937_64 rng(2);
  for (const auto& x : objects_up_to({0, 1}, 2))
    for (const auto& y : objects_up_to({0, 1}, 2))
      for (const auto& f : sample_morphisms(c, x, y, 4, rng)) {
        // with d_4 = id the completion is forced to be Σf
        CHECK(T.ambient_T(f) == apply_suspension(e.structure, f, 1));
      }
  const auto iso = natural_isomorphism(q->category(), T.structure().sigma, e.structure.sigma, 4096);
  CHECK(iso.outcome == SearchOutcome::found);
}

TEST_CASE("T preserves identities and is well defined") {
  const auto e = split_structure(2, 2, {0, 1}, 4);
  const auto& c = e.structure.category();
  const Subcategory all = Subcategory::all(c), D({0});
  const auto mp = validate_mutation_pair(*e.angles, all, D, small_budget());
  REQUIRE(mp.witness);
  auto q = std::make_shared<QuotientCategory>(e.structure, all, D);
  const QuotientFunctor T(q, *e.angles, *mp.witness, small_budget());
  for (const auto& x : objects_up_to({0, 1}, 2)) {
    const Morphism t = T.ambient_T(identity(c, x));
    CHECK(q->in_ideal(sub(c, t, identity(c, t.dom))));
  }
  CHECK_NOTHROW(validate_functor(q->category(), T.structure().sigma, "T"));
  CHECK(T.equivalence_found());
  const auto sources = standard_sources(*e.angles, all, D, small_budget());
  REQUIRE_FALSE(sources.empty());
  const AxiomResult wd = check_well_definedness(T, sources, small_budget(), 50);
  CHECK(wd.verdict == Verdict::pass);
  CHECK(wd.instances >= 50);
}

TEST_CASE("standard angles") {
  const auto e = split_structure(2, 2, {0, 1}, 4);
  const auto& s = e.structure;
  const auto& c = s.category();
  const Subcategory all = Subcategory::all(c), D({0});
  const auto mp = validate_mutation_pair(*e.angles, all, D, small_budget());
  REQUIRE(mp.witness);
  auto q = std::make_shared<QuotientCategory>(s, all, D);
  auto T = std::make_shared<QuotientFunctor>(q, *e.angles, *mp.witness, small_budget());
  const ObjectExpr X = ObjectExpr::gen(1);
  const StandardAngle st = standard_angle(trivial_angle(s, X, 4), *e.angles, *T);
  const auto& qc = q->category();
  const ObjectExpr Xq = ObjectExpr::gen(0);
  CHECK(st.quotient.objects[0] == Xq);
  CHECK(st.quotient.objects[1] == Xq);
  CHECK(st.quotient.objects[2].is_zero());
  CHECK(st.quotient.maps[0] == identity(qc, Xq));
  CHECK(is_zero(st.quotient.maps[3]));
  // s -> 0 is not D-monic
  CHECK_THROWS_AS(standard_angle(rotate_left(s, trivial_angle(s, ObjectExpr::gen(0), 4)), *e.angles, *T),
                  PreconditionError);

  const PhiClass phi(T, e.angles, small_budget());
  CHECK(phi.contains(st.quotient) == Membership::in);
  CHECK(phi_membership(phi, trivial_angle(T->structure(), Xq, 4)) == Membership::in);
  for (const auto& a : phi.pool()) CHECK(phi.contains(a.quotient) == Membership::in);
  NSequence broken = trivial_angle(T->structure(), Xq + Xq, 4);
  // id then a nonzero map out of X + X cannot compose to zero
  broken.objects[2] = Xq;
  broken.maps[1] = Morphism{Xq + Xq, Xq, {1, 0}};
  broken.maps[2] = zero_morphism(qc, Xq, ObjectExpr::zero());
  broken.objects[3] = ObjectExpr::zero();
  broken.maps[3] = zero_morphism(qc, ObjectExpr::zero(), T->structure().sigma.apply(Xq + Xq));
  REQUIRE(is_valid_sequence(T->structure(), broken));
  CHECK(phi.contains(broken) == Membership::out);
}

TEST_CASE("standard angles for the zero pair recover f_n") {
  const auto e = split_structure(3, 2, {1, 0}, 3);
  const auto& s = e.structure;
  const auto& c = s.category();
  const Subcategory all = Subcategory::all(c);
  const auto mp = validate_mutation_pair(*e.angles, all, Subcategory::none(), small_budget());
  REQUIRE(mp.witness);
  auto q = std::make_shared<QuotientCategory>(s, all, Subcategory::none());
  const QuotientFunctor T(q, *e.angles, *mp.witness, small_budget());
  for (const auto& src : standard_sources(*e.angles, all, Subcategory::none(), small_budget())) {
    const StandardAngle st = standard_angle(src, *e.angles, T);
    for (int i = 0; i + 1 < 3; ++i) CHECK(st.quotient.maps[i] == src.maps[i]);
    const NSequence W = T.fixed_angle(src.objects[0]);
    CHECK(compose(c, W.maps[2], st.quotient.maps[2]) == src.maps[2]);
  }
}

TEST_CASE("quotient identities on a nontrivial pair") {
  const auto e = split_structure(2, 2, {0, 1}, 4);
  const auto& c = e.structure.category();
  const Subcategory all = Subcategory::all(c), D({0});
  const auto mp = validate_mutation_pair(*e.angles, all, D, small_budget());
  REQUIRE(mp.witness);
  auto q = std::make_shared<QuotientCategory>(e.structure, all, D);
  const QuotientFunctor T(q, *e.angles, *mp.witness, small_budget());
  const auto sources = standard_sources(*e.angles, all, D, small_budget());
  std::vector<StandardAngle> angles;
  for (const auto& src : sources) angles.push_back(standard_angle(src, *e.angles, T));
  const AxiomResult comp = check_compatibility(T, angles, small_budget());
  CHECK(comp.verdict == Verdict::pass);
  CHECK(comp.instances > 0);
  const AxiomResult rot = check_rotation_identity(T, angles, small_budget());
  CHECK(rot.verdict == Verdict::pass);
  CHECK(rot.instances > 0);
  const AxiomReport oct = check_octahedral_identities(*e.angles, T, sources, small_budget());
  for (const auto& r : oct.results) {
    CHECK_MESSAGE(r.verdict == Verdict::pass, r.name);
    CHECK_MESSAGE(r.instances > 0, r.name);
  }
}

TEST_CASE("quotient pipeline on degenerate pairs") {
  const auto e = split_structure(2, 2, {1, 0}, 4);
  const auto& c = e.structure.category();
  const Subcategory all = Subcategory::all(c);
  {
    const AxiomReport r = verify_quotient_theorem(e.angles, all, all, small_budget());
    CHECK(r.overall() == Verdict::pass);
    CHECK(r.choices["quotient generators"].empty());
    CHECK(r.find("Φ N3"));
  }
  {
    const AxiomReport r = verify_quotient_theorem(e.angles, all, Subcategory::none(), small_budget());
    check_no_fail(r);
    CHECK(result(r, "T isomorphic to Σ").verdict == Verdict::pass);
    CHECK(r.choices["quotient hom dims"] == Json::parse("[[1,0],[0,1]]"));
    const AxiomReport base = check_axioms(*e.angles, small_budget());
    for (const auto& a : base.results) {
      const AxiomResult* qa = r.find("Φ " + a.name);
      REQUIRE_MESSAGE(qa, a.name);
      CHECK_MESSAGE(qa->verdict == a.verdict, a.name);
    }
  }
  CHECK_THROWS_AS(verify_quotient_theorem(e.angles, Subcategory({0}), Subcategory({1}), small_budget()),
                  PreconditionError);
}

TEST_CASE("quotient pipeline on a nontrivial pair") {
  const auto e = split_structure(2, 2, {0, 1}, 4);
  const auto& c = e.structure.category();
  const AxiomReport r = verify_quotient_theorem(e.angles, Subcategory::all(c), Subcategory({0}), small_budget());
  check_no_fail(r);
  CHECK(r.choices["quotient generators"] == Json::parse("[\"t\"]"));
  CHECK(result(r, "T' quasi-inverse to T").verdict == Verdict::pass);
  CHECK(result(r, "well-definedness of T").instances > 0);
}

TEST_CASE("a corrupted fixed angle breaks well-definedness") {
  const auto e = split_structure(2, 2, {0, 1}, 4);
  const auto& c = e.structure.category();
  const Subcategory all = Subcategory::all(c), D({0});
  auto mp = validate_mutation_pair(*e.angles, all, D, small_budget());
  REQUIRE(mp.witness);
  MutationPairWitness w = *mp.witness;
  // zero out d_n of the fixed angle at t, so Hom(-, TX) -> Hom(-, ΣX) stops being exact
  NSequence& a = w.left[1];
  a.maps[3] = zero_morphism(c, a.objects[3], a.maps[3].cod);
  const AxiomReport r = verify_quotient_theorem(e.angles, all, D, small_budget(), Exec::serial, &w);
  CHECK(r.overall() == Verdict::fail);
  CHECK(result(r, "supplied witness").verdict == Verdict::fail);
  CHECK(result(r, "well-definedness of T").verdict == Verdict::fail);
}

TEST_CASE("Frobenius corollary") {
  for (const auto& e : {split_structure(2, 2, {1, 0}, 4), split_structure(3, 1, {0}, 3)}) {
    const auto& c = e.structure.category();
    const AxiomReport r = verify_frobenius_corollary(e.angles, Subcategory::all(c), small_budget());
    CHECK(r.overall() == Verdict::pass);
    CHECK(r.choices["quotient generators"].empty());
  }
  const auto z = split_structure(2, 0, {}, 4);
  CHECK(verify_frobenius_corollary(z.angles, Subcategory::none(), small_budget()).overall() == Verdict::pass);
  // Σs = t is missing: the guard stops the pipeline
  const auto e = split_structure(2, 2, {1, 0}, 4);
  const AxiomReport r = verify_frobenius_corollary(e.angles, Subcategory({0}), small_budget());
  CHECK(r.overall() == Verdict::fail);
  CHECK_FALSE(r.find("T functorial"));
}
