#pragma once

// Functions from choice assignments to mwp-inf values, represented as sums of
// scalar-weighted products of delta indicators.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mwp/semiring.hpp"

namespace mwp {

using Assignment = std::vector<std::uint32_t>;

/// Cardinalities of the choice domains A_0, A_1, ... in allocation order.
class ChoiceDomainRegistry {
 public:
  ChoiceDomainRegistry() = default;
  explicit ChoiceDomainRegistry(std::vector<std::uint32_t> cards);

  /// Registers a new choice point and returns its index.
  std::uint32_t allocate(std::uint32_t cardinality);

  std::size_t size() const { return cards_.size(); }
  std::uint32_t cardinality(std::uint32_t index) const { return cards_.at(index); }
  const std::vector<std::uint32_t>& cardinalities() const { return cards_; }

  /// Number of assignments, saturating at SIZE_MAX.
  std::size_t assignment_count() const;

  bool valid(const Assignment& a) const;

  /// Advances `a` to the next assignment in lexicographic order (last index
  /// fastest). Returns false after the last one.
  bool next(Assignment& a) const;

  /// Calls `fn` on every assignment in lexicographic order; stops early when
  /// `fn` returns false.
  void for_each(const std::function<bool(const Assignment&)>& fn) const;

  friend bool operator==(const ChoiceDomainRegistry&, const ChoiceDomainRegistry&) = default;

 private:
  std::vector<std::uint32_t> cards_;
};

/// delta(value, index): worth m where the pick at `index` equals `value`.
struct Delta {
  std::uint32_t index = 0;
  std::uint32_t value = 0;

  friend auto operator<=>(const Delta&, const Delta&) = default;
};

using DeltaList = std::vector<Delta>;

/// True when every delta of `a` occurs in `b` (both sorted by index).
bool delta_subset(std::span<const Delta> a, std::span<const Delta> b);

/// True when `a` satisfies every delta of `list`.
bool delta_matches(std::span<const Delta> list, const Assignment& a);

/// Sorted union of two delta lists, or nullopt if they pick different values
/// for the same index.
std::optional<DeltaList> delta_merge(std::span<const Delta> a, std::span<const Delta> b);

std::string to_string(const DeltaList& deltas);

struct Monomial {
  MwpInf scalar = MwpInf::kM;
  DeltaList deltas;

  friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Canonical monomial order: lexicographic over (index, value) pairs, a proper
/// prefix first. Scalars do not take part.
inline bool monomial_less(const Monomial& a, const Monomial& b) { return a.deltas < b.deltas; }

/// Zero (nullopt) when the delta lists conflict.
std::optional<Monomial> monomial_mul(const Monomial& a, const Monomial& b);

std::string to_string(const Monomial& m);

class ChoicePolynomial {
 public:
  ChoicePolynomial() = default;

  /// Builds from arbitrary monomials and reduces.
  explicit ChoicePolynomial(std::vector<Monomial> monomials);

  static ChoicePolynomial constant(MwpInf scalar);
  static ChoicePolynomial delta(MwpInf scalar, DeltaList deltas);

  const std::vector<Monomial>& monomials() const { return monomials_; }
  bool is_zero() const { return monomials_.empty(); }
  bool has_infinity() const;

  /// The monomials carrying an infinite scalar.
  ChoicePolynomial infinity_part() const;

  /// Monomials whose scalar is at least `threshold`, rescaled to `scalar`.
  ChoicePolynomial at_least(MwpInf threshold, MwpInf scalar) const;

  /// Throws std::out_of_range if `a` is too short for an index used here.
  MwpInf eval(const Assignment& a) const;

  /// Canonical form: the maximal cylinders of every level set. Two
  /// polynomials with the same values at every assignment over `registry`
  /// have identical canonical forms.
  ChoicePolynomial simplify(const ChoiceDomainRegistry& registry) const;

  std::string to_string() const;

  friend bool operator==(const ChoicePolynomial&, const ChoicePolynomial&) = default;

 private:
  friend ChoicePolynomial add(const ChoicePolynomial&, const ChoicePolynomial&);
  friend ChoicePolynomial mul(const ChoicePolynomial&, const ChoicePolynomial&);
  friend ChoicePolynomial mul_naive(const ChoicePolynomial&, const ChoicePolynomial&);
  friend ChoicePolynomial sum(const std::vector<ChoicePolynomial>&);

  struct Reduced {};
  ChoicePolynomial(Reduced, std::vector<Monomial> sorted) : monomials_(std::move(sorted)) {}

  std::vector<Monomial> monomials_;
};

/// Sorts, merges equal delta lists by max, and drops zero and subsumed
/// monomials (those extending another whose scalar is at least as large).
void reduce(std::vector<Monomial>& monomials);

ChoicePolynomial add(const ChoicePolynomial& p, const ChoicePolynomial& q);

/// Ordered product: each P x q_i list is sorted, then the lists are merged by
/// repeatedly taking the smallest head. Infinite parts of both factors are
/// kept, since 0 x inf = inf.
ChoicePolynomial mul(const ChoicePolynomial& p, const ChoicePolynomial& q);

/// Sum of many polynomials with a single reduction.
ChoicePolynomial sum(const std::vector<ChoicePolynomial>& terms);

/// Reference product: all pairwise products, then one sort.
ChoicePolynomial mul_naive(const ChoicePolynomial& p, const ChoicePolynomial& q);

struct ChoicePolySemiring {
  using value_type = ChoicePolynomial;
  static ChoicePolynomial zero() { return {}; }
  static ChoicePolynomial one() { return ChoicePolynomial::constant(MwpInf::kM); }
  static ChoicePolynomial add(const ChoicePolynomial& a, const ChoicePolynomial& b) {
    return mwp::add(a, b);
  }
  static ChoicePolynomial mul(const ChoicePolynomial& a, const ChoicePolynomial& b) {
    return mwp::mul(a, b);
  }
};

using PolyMatrix = SquareMatrix<ChoicePolySemiring>;

/// Same result as the generic product; sums each entry in one pass.
PolyMatrix mul(const PolyMatrix& a, const PolyMatrix& b);

MwpMatrix evaluate(const PolyMatrix& m, const Assignment& a);

/// Every assignment paired with its evaluated matrix.
std::vector<std::pair<Assignment, MwpMatrix>> iso_expand(const PolyMatrix& m,
                                                          const ChoiceDomainRegistry& registry);

/// Rebuilds a matrix from its complete table of evaluations, in canonical form.
PolyMatrix iso_inverse(const std::vector<std::pair<Assignment, MwpMatrix>>& table,
                       const ChoiceDomainRegistry& registry);

/// Entry-wise canonical form.
PolyMatrix simplify(const PolyMatrix& m, const ChoiceDomainRegistry& registry);

}  // namespace mwp
