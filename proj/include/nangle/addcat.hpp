#pragma once

// Finitely presented additive categories over F_p.
//
// Objects are formal direct sums of generators (kept in summand order, since
// block matrices need an order; canonical() gives the sorted multiset form).
// A morphism X -> Y stores one coordinate vector per (target summand, source
// summand) pair, laid out target-major.

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nangle/ffmat.hpp"

namespace nangle {

class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ObjectExpr {
  std::vector<int> summands;

  ObjectExpr() = default;
  explicit ObjectExpr(std::vector<int> s) : summands(std::move(s)) {}
  static ObjectExpr zero() { return {}; }
  static ObjectExpr gen(int g) { return ObjectExpr({g}); }

  std::size_t size() const { return summands.size(); }
  bool is_zero() const { return summands.empty(); }
  ObjectExpr canonical() const;
  /// Same multiset of generators.
  bool same_multiset(const ObjectExpr& other) const { return canonical() == other.canonical(); }

  friend bool operator==(const ObjectExpr&, const ObjectExpr&) = default;
  friend auto operator<=>(const ObjectExpr&, const ObjectExpr&) = default;
};

ObjectExpr operator+(const ObjectExpr& a, const ObjectExpr& b);  ///< direct sum (concatenation)

class PresentedCategory {
 public:
  PresentedCategory() = default;
  PresentedCategory(int p, std::vector<std::string> generator_names);

  int modulus() const { return field_.p; }
  const PrimeField& field() const { return field_; }
  int generator_count() const { return static_cast<int>(names_.size()); }
  const std::string& generator_name(int g) const { return names_.at(g); }
  std::optional<int> find_generator(const std::string& name) const;

  void set_hom(int g, int h, std::vector<std::string> basis_names);
  std::size_t hom_dim(int g, int h) const { return dims_[index(g, h)]; }
  const std::vector<std::string>& basis_names(int g, int h) const { return basis_[index(g, h)]; }

  void set_identity(int g, Vec coords);
  const Vec& identity_coords(int g) const { return ids_.at(g); }

  /// Sets b∘a for basis element a of Hom(g,h) and b of Hom(h,k).
  void set_composite(int g, int h, int k, std::size_t a, std::size_t b, const Vec& value);
  Vec composite(int g, int h, int k, std::size_t a, std::size_t b) const;

  /// Composes coordinate vectors: second ∘ first, first in Hom(g,h), second in Hom(h,k).
  Vec compose_coords(int g, int h, int k, const Vec& first, const Vec& second) const;

  /// Declares b∘a = value as a relation that validate() must confirm.
  void add_relation(int g, int h, int k, std::size_t a, std::size_t b, Vec value);
  struct Relation {
    int g, h, k;
    std::size_t a, b;
    Vec value;
  };
  const std::vector<Relation>& relations() const { return relations_; }

  /// Checks associativity and unit laws on all basis triples and pairs, and
  /// the declared relations. Throws ValidationError naming the first failing law.
  void validate() const;

 private:
  std::size_t index(int g, int h) const { return static_cast<std::size_t>(g) * names_.size() + h; }
  std::size_t tindex(int g, int h, int k) const {
    const std::size_t n = names_.size();
    return (static_cast<std::size_t>(g) * n + h) * n + k;
  }

  PrimeField field_{2};
  std::vector<std::string> names_;
  std::vector<std::size_t> dims_;
  std::vector<std::vector<std::string>> basis_;
  std::vector<Vec> ids_;
  // comp_[g,h,k][(a*dim(h,k) + b)*dim(g,k) + r]
  std::vector<Vec> comp_;
  std::vector<Relation> relations_;
};

struct Morphism {
  ObjectExpr dom;
  ObjectExpr cod;
  Vec coords;

  friend bool operator==(const Morphism&, const Morphism&) = default;
};

// ---- morphism arithmetic ------------------------------------------------

std::size_t hom_dim(const PresentedCategory& c, const ObjectExpr& x, const ObjectExpr& y);
/// Offset of block (target summand i, source summand j) in the coordinate vector.
std::size_t block_offset(const PresentedCategory& c, const ObjectExpr& x, const ObjectExpr& y, std::size_t i,
                         std::size_t j);
Vec block(const PresentedCategory& c, const Morphism& f, std::size_t i, std::size_t j);
void set_block(const PresentedCategory& c, Morphism& f, std::size_t i, std::size_t j, const Vec& v);

Morphism zero_morphism(const PresentedCategory& c, const ObjectExpr& x, const ObjectExpr& y);
Morphism identity(const PresentedCategory& c, const ObjectExpr& x);
Morphism basis_morphism(const PresentedCategory& c, int g, int h, std::size_t basis_index);
Morphism from_coords(const ObjectExpr& x, const ObjectExpr& y, Vec coords);

/// g ∘ f. Throws std::invalid_argument on object mismatch.
Morphism compose(const PresentedCategory& c, const Morphism& g, const Morphism& f);
Morphism add(const PresentedCategory& c, const Morphism& a, const Morphism& b);
Morphism sub(const PresentedCategory& c, const Morphism& a, const Morphism& b);
Morphism scale(const PresentedCategory& c, int s, const Morphism& a);
bool is_zero(const Morphism& f);

/// Block diagonal f ⊕ g.
Morphism direct_sum(const PresentedCategory& c, const Morphism& f, const Morphism& g);
/// Assembles a morphism ⊕_j X_j -> ⊕_i Y_i from a grid grid[i][j] : X_j -> Y_i.
Morphism block_matrix(const PresentedCategory& c, const std::vector<ObjectExpr>& targets,
                      const std::vector<ObjectExpr>& sources, const std::vector<std::vector<Morphism>>& grid);
/// Component of f between object-level parts of a split domain and codomain.
Morphism sub_block(const PresentedCategory& c, const Morphism& f, std::size_t cod_first, std::size_t cod_count,
                   std::size_t dom_first, std::size_t dom_count);
/// Permutation isomorphism sending summand perm[k] of x to position k of the result.
Morphism permutation_morphism(const PresentedCategory& c, const ObjectExpr& x, const std::vector<std::size_t>& perm);

/// Matrix of u ↦ g∘u, Hom(W,X) -> Hom(W,Y) for g : X -> Y.
FpMatrix postcomposition_matrix(const PresentedCategory& c, const Morphism& g, const ObjectExpr& w);
/// Matrix of u ↦ u∘f, Hom(Y,W) -> Hom(X,W) for f : X -> Y.
FpMatrix precomposition_matrix(const PresentedCategory& c, const Morphism& f, const ObjectExpr& w);

std::optional<Morphism> inverse(const PresentedCategory& c, const Morphism& f);
bool is_isomorphism(const PresentedCategory& c, const Morphism& f);

enum class SearchOutcome { found, none, inconclusive };

struct IsoSearchResult {
  SearchOutcome outcome = SearchOutcome::none;
  std::optional<Morphism> iso;
  std::size_t examined = 0;
};

/// Enumerates Hom(X,Y) in coordinate order looking for an isomorphism.
IsoSearchResult iso_search(const PresentedCategory& c, const ObjectExpr& x, const ObjectExpr& y, std::size_t cap);

// ---- functors -------------------------------------------------------------

/// Additive functor data on a presented category: each generator goes to an
/// object and each Hom(g,h) maps linearly into Hom(F g, F h).
struct FunctorData {
  std::vector<ObjectExpr> object_image;
  std::vector<FpMatrix> hom_map;  ///< index g*G + h; columns are images of basis elements

  ObjectExpr apply(const ObjectExpr& x) const;
  Morphism apply(const PresentedCategory& c, const Morphism& f) const;
  const FpMatrix& map(int g, int h) const { return hom_map[static_cast<std::size_t>(g) * object_image.size() + h]; }
};

void validate_functor(const PresentedCategory& c, const FunctorData& f, const std::string& label);
FunctorData identity_functor(const PresentedCategory& c);
FunctorData compose_functors(const PresentedCategory& c, const FunctorData& outer, const FunctorData& inner);

/// A category with a suspension Σ and an inverse up to natural isomorphism.
/// For an automorphism the unit data are identities.
struct SuspendedCategory {
  std::shared_ptr<const PresentedCategory> cat;
  FunctorData sigma;
  FunctorData sigma_inv;
  std::vector<Morphism> counit;  ///< per generator g: Σ Σ⁻¹ g -> g, invertible
  std::vector<Morphism> unit;    ///< per generator g: Σ⁻¹ Σ g -> g, invertible
  bool strict = true;

  const PresentedCategory& category() const { return *cat; }
  int modulus() const { return cat->modulus(); }
  Morphism counit_at(const ObjectExpr& x) const;
  Morphism unit_at(const ObjectExpr& x) const;
};

/// Builds an automorphism from a generator permutation and invertible Hom maps,
/// computing the inverse data. Throws ValidationError if not functorial/invertible.
SuspendedCategory make_automorphism(std::shared_ptr<const PresentedCategory> c, const std::vector<int>& perm,
                                    std::vector<FpMatrix> hom_maps);

/// Σ^power applied to f (negative powers use the inverse).
Morphism apply_suspension(const SuspendedCategory& s, const Morphism& f, int power);
ObjectExpr apply_suspension(const SuspendedCategory& s, const ObjectExpr& x, int power);

/// The opposite category with suspension Σ⁻¹ (requires an automorphism).
SuspendedCategory build_opposite(const SuspendedCategory& s);
/// Reinterprets a morphism X -> Y of C as the morphism Y -> X of C^op.
Morphism to_opposite(const PresentedCategory& c, const Morphism& f);
PresentedCategory opposite_category(const PresentedCategory& c);

/// A full subcategory given by a set of generators; an object belongs to it
/// iff every summand does.
struct Subcategory {
  std::vector<int> generators;  ///< sorted, unique

  Subcategory() = default;
  explicit Subcategory(std::vector<int> gens);
  static Subcategory all(const PresentedCategory& c);
  static Subcategory none() { return {}; }

  bool contains_generator(int g) const;
  bool contains(const ObjectExpr& x) const;
  bool subset_of(const Subcategory& other) const;
  friend bool operator==(const Subcategory&, const Subcategory&) = default;
};

std::string describe(const PresentedCategory& c, const ObjectExpr& x);

}  // namespace nangle
