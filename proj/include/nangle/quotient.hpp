#pragma once

// The quotient Z/D, the functor T with quasi-inverse T', standard angles and
// the quotient verification pipelines.

#include <memory>
#include <optional>
#include <vector>

#include "nangle/mutation.hpp"

namespace nangle {

/// Basis (ambient coordinates) of the morphisms X -> Y factoring through D.
std::vector<Vec> ideal_subspace(const PresentedCategory& c, const ObjectExpr& x, const ObjectExpr& y,
                                const Subcategory& D);

/// Z/D presented on the generators of Z not in D. Quotient Hom bases are the
/// lexicographically first complement of the ideal in the ambient basis.
class QuotientCategory {
 public:
  QuotientCategory(SuspendedCategory ambient, Subcategory Z, Subcategory D);

  const SuspendedCategory& ambient() const { return ambient_; }
  const PresentedCategory& ambient_category() const { return ambient_.category(); }
  const PresentedCategory& category() const { return *cat_; }
  std::shared_ptr<const PresentedCategory> category_ptr() const { return cat_; }
  const Subcategory& Z() const { return Z_; }
  const Subcategory& D() const { return D_; }
  /// Ambient index of each quotient generator.
  const std::vector<int>& generators() const { return gens_; }
  int quotient_generator(int ambient) const { return index_[ambient]; }

  const std::vector<Vec>& ideal_basis(int g, int h) const;
  /// Ambient basis indices forming the quotient basis of Hom(g, h).
  const std::vector<std::size_t>& complement(int g, int h) const;

  /// Drops summands in D. Throws if x is not in Z.
  ObjectExpr to_quotient(const ObjectExpr& x) const;
  ObjectExpr to_ambient(const ObjectExpr& q) const;
  /// underline(f) for f between objects of Z.
  Morphism project(const Morphism& f) const;
  /// The representative in the span of the complement basis.
  Morphism lift(const Morphism& q) const;
  bool in_ideal(const Morphism& f) const;

 private:
  struct Pair {
    std::vector<Vec> ideal;
    std::vector<std::size_t> complement;
    FpMatrix projection;  ///< dim(quotient) x dim(ambient)
  };
  const Pair& pair(int g, int h) const { return pairs_[static_cast<std::size_t>(g) * index_.size() + h]; }

  SuspendedCategory ambient_;
  Subcategory Z_, D_;
  std::vector<int> gens_;
  std::vector<int> index_;
  std::vector<Pair> pairs_;
  std::shared_ptr<PresentedCategory> cat_;
};

QuotientCategory build_quotient(const SuspendedCategory& s, const Subcategory& Z, const Subcategory& D);

/// Components η_k : F(k) -> G(k) of a natural isomorphism F => G, if one is
/// found among the first cap solutions of the naturality system.
struct NaturalIsoSearch {
  SearchOutcome outcome = SearchOutcome::none;
  std::vector<Morphism> components;
  std::size_t examined = 0;
};
NaturalIsoSearch natural_isomorphism(const PresentedCategory& c, const FunctorData& F, const FunctorData& G,
                                     std::size_t cap);

/// T on Z/D, its quasi-inverse, and the fixed angles they are read from.
class QuotientFunctor {
 public:
  QuotientFunctor(std::shared_ptr<const QuotientCategory> q, const AngleClass& theta, MutationPairWitness witness,
                  const Budget& budget);

  const QuotientCategory& quotient() const { return *q_; }
  const MutationPairWitness& witness() const { return w_; }
  /// The quotient with Σ = T, Σ⁻¹ = T' and the found natural isomorphisms.
  const SuspendedCategory& structure() const { return s_; }
  bool equivalence_found() const { return equivalence_; }
  const NaturalIsoSearch& counit_search() const { return counit_; }
  const NaturalIsoSearch& unit_search() const { return unit_; }
  int n() const { return w_.n; }

  /// Direct sum of the generators' fixed angles X -> D_1 -> ... -> TX -> ΣX.
  NSequence fixed_angle(const ObjectExpr& x) const;
  /// Direct sum of the dual angles T'X -> D_1 -> ... -> X -> ΣT'X.
  NSequence dual_angle(const ObjectExpr& x) const;
  /// A representative of T(underline f) : TX -> TX' (ambient).
  Morphism ambient_T(const Morphism& f) const;
  Morphism ambient_T_inverse(const Morphism& f) const;
  /// D-monic factorisation: a with a ∘ f1 = d1 for the fixed angle of f1.dom.
  std::optional<Morphism> factor_through(const Morphism& f1) const;

 private:
  std::shared_ptr<const QuotientCategory> q_;
  MutationPairWitness w_;
  SuspendedCategory s_;
  NaturalIsoSearch counit_, unit_;
  bool equivalence_ = false;
};

struct StandardAngle {
  NSequence source;               ///< ambient member with f1 D-monic
  std::vector<Morphism> a;        ///< a_1 = 1, a_2, ..., a_n into the fixed angle
  NSequence quotient;             ///< X_1 -> ... -> X_n -> TX_1 in Z/D
};

/// Throws PreconditionError if seq is not a member in Z with D-monic f1.
StandardAngle standard_angle(const NSequence& seq, const AngleClass& theta, const QuotientFunctor& T);

/// Φ: quotient sequences isomorphic to standard angles (bounded search).
class PhiClass : public AngleClass {
 public:
  PhiClass(std::shared_ptr<const QuotientFunctor> T, std::shared_ptr<const AngleClass> theta, const Budget& budget);

  std::string name() const override { return "standard angles of " + theta_->name(); }
  const SuspendedCategory& structure() const override { return T_->structure(); }
  int n() const override { return T_->n(); }
  Membership contains(const NSequence& seq) const override;
  std::optional<NSequence> complete(const Morphism& f) const override;

  /// The canonical standard angle on f: complete (f; d1) : X -> Y ⊕ D_1.
  std::optional<StandardAngle> canonical(const Morphism& f) const;
  const std::vector<StandardAngle>& pool() const { return pool_; }

 private:
  std::shared_ptr<const QuotientFunctor> T_;
  std::shared_ptr<const AngleClass> theta_;
  std::size_t cap_;
  std::uint64_t seed_;
  std::vector<StandardAngle> pool_;
};

Membership phi_membership(const PhiClass& phi, const NSequence& seq);

/// Mutation pair and extension closure, then Z/D, T, T' and the axioms for Φ.
/// A supplied witness replaces the search; it is checked and then used as is.
AxiomReport verify_quotient_theorem(std::shared_ptr<const AngleClass> theta, const Subcategory& Z,
                                    const Subcategory& D, const Budget& budget, Exec exec = Exec::parallel,
                                    const MutationPairWitness* supplied = nullptr);

/// Members and approximation shape of each angle of a witness.
AxiomResult check_witness(const AngleClass& theta, const MutationPairWitness& w);
AxiomReport verify_frobenius_corollary(std::shared_ptr<const AngleClass> theta, const Subcategory& Z,
                                       const Budget& budget, Exec exec = Exec::parallel);

/// Last components of morphisms into fixed angles sharing the first component
/// agree modulo D. Compares at least min_pairs pairs when the sources allow it.
AxiomResult check_well_definedness(const QuotientFunctor& T, const std::vector<NSequence>& sources,
                                   const Budget& budget, std::size_t min_pairs = 200);
/// T(φ_1) a_n = b_n φ_n modulo D for morphisms between standard angles.
AxiomResult check_compatibility(const QuotientFunctor& T, const std::vector<StandardAngle>& angles,
                                const Budget& budget);
/// Every ψ' with d_n ψ' = (-1)^n f_n equals (-1)^n a_n modulo D.
AxiomResult check_rotation_identity(const QuotientFunctor& T, const std::vector<StandardAngle>& angles,
                                    const Budget& budget);
/// c_n ψ_n = T(f_1) b_n and e_n = T(f_2) c_n modulo D on sampled octahedra.
AxiomReport check_octahedral_identities(const AngleClass& theta, const QuotientFunctor& T,
                                        const std::vector<NSequence>& sources, const Budget& budget);

/// Members of Θ with every term in Z and D-monic first map.
std::vector<NSequence> standard_sources(const AngleClass& theta, const Subcategory& Z, const Subcategory& D,
                                        const Budget& budget);

}  // namespace nangle
