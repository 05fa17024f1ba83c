#pragma once

// Built-in example structures, and class decorators used to plant defects.

#include <memory>
#include <string>
#include <vector>

#include "nangle/angles.hpp"

namespace nangle {

struct CorpusEntry {
  std::string name;
  SuspendedCategory structure;
  int n = 3;
  std::shared_ptr<const AngleClass> angles;
  std::string oracle;  ///< split | wrap-exact | listed
  std::string expected;
  std::string provenance;
};

/// Semisimple category on `count` simples with Hom(g,g) = F_p and Σ permuting generators.
SuspendedCategory semisimple_structure(int p, int count, const std::vector<int>& perm);
/// Free modules over F_p[x]/(x^2) on one generator P, Σ = identity.
SuspendedCategory dual_numbers_structure(int p);

CorpusEntry split_structure(int p, int count, const std::vector<int>& perm, int n);
CorpusEntry local_algebra_candidate(int n);
std::vector<CorpusEntry> builtin_corpus();

/// Θ given by an explicit list; membership is isomorphism to a listed sequence.
class ListedClass : public AngleClass {
 public:
  ListedClass(SuspendedCategory s, int n, std::vector<NSequence> members, std::size_t iso_cap = 4096);

  std::string name() const override { return "listed"; }
  const SuspendedCategory& structure() const override { return s_; }
  int n() const override { return n_; }
  Membership contains(const NSequence& seq) const override;
  std::optional<NSequence> complete(const Morphism& f) const override;
  std::vector<NSequence> enumerate(const Budget& budget) const override;
  const std::vector<NSequence>& members() const { return members_; }

 private:
  SuspendedCategory s_;
  int n_;
  std::vector<NSequence> members_;
  std::size_t iso_cap_;
};

/// Forwards everything to a base class; decorators override pieces.
class ForwardingClass : public AngleClass {
 public:
  explicit ForwardingClass(std::shared_ptr<const AngleClass> base) : base_(std::move(base)) {}
  std::string name() const override { return base_->name(); }
  const SuspendedCategory& structure() const override { return base_->structure(); }
  int n() const override { return base_->n(); }
  Membership contains(const NSequence& seq) const override { return base_->contains(seq); }
  std::optional<NSequence> complete(const Morphism& f) const override { return base_->complete(f); }
  std::vector<NSequence> enumerate(const Budget& budget) const override { return base_->enumerate(budget); }
  std::vector<int> generators() const override { return base_->generators(); }

 protected:
  std::shared_ptr<const AngleClass> base_;
};

/// Drops the trivial angle of one generator (and anything isomorphic to it).
std::shared_ptr<AngleClass> without_trivial_of(std::shared_ptr<const AngleClass> base, int generator);
/// Members are the enumerated base members and their left rotations only.
std::shared_ptr<AngleClass> left_rotations_only(std::shared_ptr<const AngleClass> base, const Budget& budget);
/// Rejects every sequence with an object of more than one summand.
std::shared_ptr<AngleClass> reject_sums(std::shared_ptr<const AngleClass> base);

}  // namespace nangle
