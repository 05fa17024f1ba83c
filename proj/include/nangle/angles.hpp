#pragma once

// n-Σ-sequences, rotations, mapping cones, Hom-exactness and bounded
// checkers for the n-angulated axioms.

#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "nangle/addcat.hpp"
#include "nangle/report.hpp"

namespace nangle {

/// X_1 -> X_2 -> ... -> X_n -> Σ X_1.
struct NSequence {
  std::vector<ObjectExpr> objects;
  std::vector<Morphism> maps;

  int n() const { return static_cast<int>(objects.size()); }
  friend bool operator==(const NSequence&, const NSequence&) = default;
};

/// Structural validity: map i goes X_i -> X_{i+1}, the last map ends at Σ X_1.
bool is_valid_sequence(const SuspendedCategory& s, const NSequence& seq);

struct SequenceMorphism {
  NSequence source;
  NSequence target;
  std::vector<Morphism> components;
};

bool commutes(const SuspendedCategory& s, const SequenceMorphism& phi);

NSequence rotate_left(const SuspendedCategory& s, const NSequence& seq);
NSequence rotate_right(const SuspendedCategory& s, const NSequence& seq);
/// X -> X -> 0 -> ... -> 0 -> ΣX.
NSequence trivial_angle(const SuspendedCategory& s, const ObjectExpr& x, int n);
NSequence direct_sum(const SuspendedCategory& s, const NSequence& a, const NSequence& b);
/// The sequence obtained by moving seq along isomorphisms isos[i] : X_i -> X'_i.
NSequence transport(const SuspendedCategory& s, const NSequence& seq, const std::vector<Morphism>& isos);
/// Keeps the chosen summands of each object; the last object's selection is
/// induced by Σ. Returns nullopt if the result is not a valid sequence.
std::optional<NSequence> restrict_sequence(const SuspendedCategory& s, const NSequence& seq,
                                           const std::vector<std::vector<std::size_t>>& keep);
NSequence mapping_cone(const SuspendedCategory& s, const SequenceMorphism& phi);

class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Affine space of sequence morphisms source -> target with some components
/// held fixed. Points are enumerated in kernel-coefficient lexicographic order.
class SequenceMorphismSpace {
 public:
  SequenceMorphismSpace(const SuspendedCategory& s, NSequence source, NSequence target,
                        std::vector<std::optional<Morphism>> fixed, AffineSpace space,
                        std::vector<std::size_t> offsets);
  const AffineSpace& space() const { return space_; }
  std::vector<Morphism> components(std::size_t index) const;
  SequenceMorphism morphism(std::size_t index) const;

 private:
  const SuspendedCategory* s_;
  NSequence source_, target_;
  std::vector<std::optional<Morphism>> fixed_;
  AffineSpace space_;
  std::vector<std::size_t> offsets_;
};

/// Solves all commutation squares jointly for the components not fixed.
std::optional<SequenceMorphismSpace> solve_sequence_morphism(const SuspendedCategory& s, const NSequence& source,
                                                             const NSequence& target,
                                                             const std::vector<std::optional<Morphism>>& fixed);

/// (N3)-style completion with φ1, φ2 given. Throws PreconditionError if the
/// first square does not commute.
std::optional<SequenceMorphismSpace> complete_morphism(const SuspendedCategory& s, const Morphism& phi1,
                                                       const Morphism& phi2, const NSequence& source,
                                                       const NSequence& target);

struct SequenceIsoResult {
  SearchOutcome outcome = SearchOutcome::none;
  std::vector<Morphism> components;
  std::size_t examined = 0;
};

/// Searches the space of sequence morphisms a -> b for one with every component invertible.
SequenceIsoResult sequence_iso_search(const SuspendedCategory& s, const NSequence& a, const NSequence& b,
                                      std::size_t cap);

/// Solves residual(u) = 0 for an affine residual map F_p^unknowns -> F_p^m.
std::optional<LinearSolution> solve_affine(int p, std::size_t unknowns, const std::function<Vec(const Vec&)>& residual);

enum class Variance { covariant, contravariant };

/// Exactness of Hom(W,-) (or Hom(-,W)) on three consecutive periods of seq.
AxiomResult check_hom_exact(const SuspendedCategory& s, const NSequence& seq, Variance variance,
                            const std::vector<ObjectExpr>& probes);

/// All objects of total multiplicity <= cap over the given generators, in canonical form.
std::vector<ObjectExpr> objects_up_to(const std::vector<int>& generators, int cap);
/// Hom(X,Y): exhaustive if it has at most cap elements, otherwise a seeded sample (zero first).
std::vector<Morphism> sample_morphisms(const PresentedCategory& c, const ObjectExpr& x, const ObjectExpr& y,
                                       std::size_t cap, std::mt19937_64& rng);

/// A structurally valid sequence with objects drawn from objs and uniform random maps.
NSequence random_sequence(const SuspendedCategory& s, const std::vector<ObjectExpr>& objs, int n, std::mt19937_64& rng);

/// A class Θ of n-Σ-sequences in a fixed structure.
class AngleClass {
 public:
  virtual ~AngleClass() = default;

  virtual std::string name() const = 0;
  virtual const SuspendedCategory& structure() const = 0;
  virtual int n() const = 0;
  virtual Membership contains(const NSequence& seq) const = 0;
  /// An n-angle whose first morphism is f, if the class's procedure finds one.
  virtual std::optional<NSequence> complete(const Morphism& f) const = 0;
  /// Members at the object cap, deterministic in budget.seed.
  virtual std::vector<NSequence> enumerate(const Budget& budget) const;
  /// Generators whose objects are enumerated.
  virtual std::vector<int> generators() const;
};

/// Sequences whose doubly periodic complex is exact under every Hom(G,-).
/// Completion splits f into isomorphism, radical and zero parts.
class HomExactClass : public AngleClass {
 public:
  HomExactClass(SuspendedCategory s, int n, std::string name);

  std::string name() const override { return name_; }
  const SuspendedCategory& structure() const override { return s_; }
  int n() const override { return n_; }
  Membership contains(const NSequence& seq) const override;
  std::optional<NSequence> complete(const Morphism& f) const override;

 private:
  SuspendedCategory s_;
  int n_;
  std::string name_;
};

/// Θ transported to (C^op, Σ⁻¹) by reversing sequences.
class OppositeClass : public AngleClass {
 public:
  explicit OppositeClass(std::shared_ptr<const AngleClass> base);

  std::string name() const override { return base_->name() + "^op"; }
  const SuspendedCategory& structure() const override { return op_; }
  int n() const override { return base_->n(); }
  Membership contains(const NSequence& seq) const override;
  std::optional<NSequence> complete(const Morphism& f) const override;

  /// C-sequence -> C^op-sequence, (X_n, ..., X_1) with last map (-1)^n Σ⁻¹ f_n.
  NSequence to_op(const NSequence& seq) const;
  NSequence from_op(const NSequence& seq) const;

 private:
  std::shared_ptr<const AngleClass> base_;
  SuspendedCategory op_;
};

NSequence opposite_sequence(const SuspendedCategory& s, const NSequence& seq);

/// Splits f : X -> Y as iso pieces, radical pieces and zero rows/columns via
/// elementary automorphisms. Used by completion procedures.
struct MorphismSplitting {
  enum class Kind { iso, radical, zero_domain, zero_codomain };
  struct Piece {
    Kind kind;
    int dom_gen = -1;  ///< -1 for zero_codomain
    int cod_gen = -1;  ///< -1 for zero_domain
    Morphism map;      ///< the single-generator component
  };
  std::vector<Piece> pieces;
  Morphism to_domain;    ///< iso X' -> X
  Morphism to_codomain;  ///< iso Y' -> Y; f = to_codomain ∘ (⊕ pieces) ∘ to_domain⁻¹
};

std::optional<MorphismSplitting> split_morphism(const PresentedCategory& c, const Morphism& f);

// ---- checkers -------------------------------------------------------------

AxiomReport check_N1(const AngleClass& theta, const Budget& budget, Exec exec = Exec::parallel);
AxiomResult check_N2(const AngleClass& theta, const Budget& budget, Exec exec = Exec::parallel);

/// A commuting first square between two members.
struct SquareInstance {
  NSequence top, bottom;
  Morphism phi1, phi2;
};

/// Instance of the higher octahedral axiom: rows top, middle (first map φ2∘f1)
/// and the column angle on φ2.
struct OctahedronInstance {
  NSequence top, middle, column;
  Morphism phi2;
};

struct OctahedronData {
  std::vector<Morphism> phi;   ///< φ1..φn with φ1 = 1
  std::vector<Morphism> psi;   ///< ψ3..ψn
  std::vector<Morphism> link;  ///< ϕ4..ϕn
  NSequence sequence;          ///< the assembled sequence
};

std::vector<SquareInstance> sample_squares(const AngleClass& theta, const Budget& budget);
std::vector<OctahedronInstance> sample_octahedra(const AngleClass& theta, const Budget& budget);

struct InstanceVerdict {
  Verdict verdict = Verdict::pass;
  std::size_t spent = 0;
  std::optional<Witness> witness;
  bool skipped = false;  ///< not an instance of the axiom; not counted
};

InstanceVerdict n3_instance(const AngleClass& theta, const SquareInstance& inst);
InstanceVerdict n4_instance(const AngleClass& theta, const SquareInstance& inst, const Budget& budget);
/// The assembled sequence for given (a)-morphisms and unknown coordinates.
NSequence octahedral_sequence(const SuspendedCategory& s, const OctahedronInstance& inst,
                              const std::vector<Morphism>& phi, const std::vector<Morphism>& psi,
                              const std::vector<Morphism>& link);
InstanceVerdict n4_prime_instance(const AngleClass& theta, const OctahedronInstance& inst, const Budget& budget,
                                  OctahedronData* found = nullptr);
SquareInstance square_of(const OctahedronInstance& inst);

/// Folds instance outcomes into one result, in index order.
AxiomResult fold_instances(const std::string& name, const std::vector<InstanceVerdict>& outcomes);

AxiomResult check_N3(const AngleClass& theta, const Budget& budget, Exec exec = Exec::parallel);
AxiomResult check_N4(const AngleClass& theta, const Budget& budget, Exec exec = Exec::parallel);
AxiomResult check_N4_prime(const AngleClass& theta, const Budget& budget, Exec exec = Exec::parallel);
/// Per-instance agreement of the cone search and the octahedral search.
AxiomResult check_N4_equivalence(const AngleClass& theta, const Budget& budget, Exec exec = Exec::parallel);
/// Every enumerated member is Hom-exact in both variances for all probes at the cap.
AxiomResult screen_hom_exactness(const AngleClass& theta, const Budget& budget, Exec exec = Exec::parallel);

/// N1 (a,b,c), N2, N3, N4, N4'.
AxiomReport check_axioms(const AngleClass& theta, const Budget& budget, Exec exec = Exec::parallel);

Json sequence_json(const PresentedCategory& c, const NSequence& seq);

/// Runs fn(i) for i < count, in parallel if requested; results are returned in index order.
std::vector<InstanceVerdict> run_instances(std::size_t count, const std::function<InstanceVerdict(std::size_t)>& fn,
                                          Exec exec);

}  // namespace nangle
