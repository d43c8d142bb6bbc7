#pragma once

// Layered record of the assignment cylinders on which an infinite
// coefficient appeared. Vertices are delta lists; a vertex in layer n has n
// deltas. Sibling vertices that together exhaust a choice domain are fused
// into their common shorter list.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mwp/choice_poly.hpp"

namespace mwp {

class DeltaGraph {
 public:
  struct Edge {
    DeltaList a;
    DeltaList b;
    std::uint32_t label;  // the index at which a and b differ
  };

  DeltaGraph() = default;
  /// The registry may keep growing while this graph is in use.
  explicit DeltaGraph(std::shared_ptr<const ChoiceDomainRegistry> registry)
      : registry_(std::move(registry)) {}

  const ChoiceDomainRegistry* registry() const { return registry_.get(); }

  /// Adds a cylinder and fuses to a fixpoint. Lists already covered by a
  /// stored shorter list are ignored.
  void insert(DeltaList deltas);

  /// Runs fusion to a fixpoint. insert() already does this.
  void fuse();

  bool is_complete() const;
  bool empty() const { return vertex_count() == 0; }
  bool covered(const Assignment& a) const;

  std::size_t vertex_count() const;
  const std::map<std::size_t, std::set<DeltaList>>& layers() const { return layers_; }
  std::vector<DeltaList> vertices() const;

  /// Pairs of same-layer vertices differing in exactly one delta value.
  std::vector<Edge> edges() const;

  /// Lexicographically smallest assignment not covered, if any.
  std::optional<Assignment> first_uncovered() const;

  /// Visits uncovered assignments in lexicographic order until `fn` returns
  /// false.
  void for_each_uncovered(const std::function<bool(const Assignment&)>& fn) const;

  /// `layer=<n> <deltas>` per vertex and a `complete: yes|no` footer.
  std::string dump() const;

 private:
  bool insert_raw(DeltaList deltas);
  bool erase(const DeltaList& deltas);
  bool contains(const DeltaList& deltas) const;
  bool fuse_strict();
  bool fuse_generalized();
  bool fuse_consensus();
  std::uint32_t cardinality(std::uint32_t index) const;

  std::shared_ptr<const ChoiceDomainRegistry> registry_;
  std::map<std::size_t, std::set<DeltaList>> layers_;
};

}  // namespace mwp
