#pragma once

// Approximations, mutation pairs, extension-closedness and E-injectives.

#include <optional>
#include <vector>

#include "nangle/angles.hpp"

namespace nangle {

/// Precomposition with f is onto Hom(X, G) for every generator G of D.
bool is_D_monic(const PresentedCategory& c, const Morphism& f, const Subcategory& D);
/// Postcomposition with f is onto Hom(G, Y) for every generator G of D.
bool is_D_epic(const PresentedCategory& c, const Morphism& f, const Subcategory& D);

/// X -> ⊕_G G^{dim Hom(X,G)} with the Hom basis as components.
Morphism stacked_left_map(const PresentedCategory& c, const ObjectExpr& x, const Subcategory& D);
/// ⊕_G G^{dim Hom(G,X)} -> X, dually.
Morphism stacked_right_map(const PresentedCategory& c, const ObjectExpr& x, const Subcategory& D);

/// id_X when X lies in D, otherwise the stacked map (which is always D-monic).
std::optional<Morphism> find_left_approximation(const PresentedCategory& c, const ObjectExpr& x,
                                                const Subcategory& D, const Budget& budget);
std::optional<Morphism> find_right_approximation(const PresentedCategory& c, const ObjectExpr& x,
                                                 const Subcategory& D, const Budget& budget);

struct MutationPairWitness {
  Subcategory Z, D;
  int n = 3;
  /// Per generator of Z (in Z.generators order): X -> D_1 -> ... -> D_{n-2} -> Y -> ΣX.
  std::vector<NSequence> left;
  /// Per generator of Z: X' -> D_1 -> ... -> D_{n-2} -> Y -> ΣX' ending at the generator.
  std::vector<NSequence> right;
};

/// Checks the shape of a condition angle: D_i in D, ends in Z, d_1 a left and
/// d_{n-1} a right D-approximation.
bool is_approximation_angle(const PresentedCategory& c, const NSequence& seq, const Subcategory& Z,
                            const Subcategory& D);

struct MutationPairResult {
  AxiomReport report;
  std::optional<MutationPairWitness> witness;
};

MutationPairResult validate_mutation_pair(const AngleClass& theta, const Subcategory& Z, const Subcategory& D,
                                          const Budget& budget);

/// Members (and rotations, and completions of sampled maps out of Z) with
/// endpoints in Z must have every term in Z.
AxiomResult is_extension_closed(const AngleClass& theta, const Subcategory& Z, const Budget& budget);

/// Σ Z ⊆ Z and Σ⁻¹ Z ⊆ Z.
AxiomResult is_suspension_closed(const SuspendedCategory& s, const Subcategory& Z);

/// Which first maps of E count as admissible monomorphisms (dually epis).
enum class AdmissibleReading {
  monomorphisms,  ///< first maps that are monomorphisms in Z
  all_first_maps  ///< every first map, read literally
};

/// Postcomposition with f is injective on Hom(G, X) for every generator G of Z.
bool is_monomorphism_in(const PresentedCategory& c, const Morphism& f, const Subcategory& Z);
bool is_epimorphism_in(const PresentedCategory& c, const Morphism& f, const Subcategory& Z);

struct FrobeniusData {
  Subcategory Z;
  AdmissibleReading reading = AdmissibleReading::monomorphisms;
  std::vector<NSequence> E;  ///< sampled members with every term in Z
  Subcategory injectives, projectives;
  /// Per generator excluded from I (resp. P): an admissible mono (epi) it fails on.
  std::vector<std::pair<int, Morphism>> injective_failures, projective_failures;
  std::vector<std::optional<NSequence>> enough_injectives, enough_projectives;  ///< per generator of Z
};

/// Members of Θ at the cap whose terms all lie in Z, with rotations.
std::vector<NSequence> internal_angles(const AngleClass& theta, const Subcategory& Z, const Budget& budget);

FrobeniusData compute_e_injectives(const AngleClass& theta, const Subcategory& Z, const Budget& budget,
                                   AdmissibleReading reading = AdmissibleReading::monomorphisms);
AxiomReport check_frobenius(const AngleClass& theta, const Subcategory& Z, const Budget& budget,
                            FrobeniusData* data = nullptr,
                            AdmissibleReading reading = AdmissibleReading::monomorphisms);

Json subcategory_json(const PresentedCategory& c, const Subcategory& s);

}  // namespace nangle
