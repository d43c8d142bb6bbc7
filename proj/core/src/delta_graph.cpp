#include "mwp/delta_graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace mwp {

namespace {

DeltaList without_index(const DeltaList& d, std::uint32_t index) {
  DeltaList out;
  out.reserve(d.size());
  for (const auto& x : d)
    if (x.index != index) out.push_back(x);
  return out;
}

DeltaList with_value(DeltaList d, std::uint32_t index, std::uint32_t value) {
  for (auto& x : d)
    if (x.index == index) x.value = value;
  return d;
}

}  // namespace

std::uint32_t DeltaGraph::cardinality(std::uint32_t index) const {
  if (!registry_) throw std::logic_error("delta graph has no registry");
  return registry_->cardinality(index);
}

bool DeltaGraph::contains(const DeltaList& deltas) const {
  auto it = layers_.find(deltas.size());
  return it != layers_.end() && it->second.count(deltas) != 0;
}

bool DeltaGraph::erase(const DeltaList& deltas) {
  auto it = layers_.find(deltas.size());
  if (it == layers_.end() || it->second.erase(deltas) == 0) return false;
  if (it->second.empty()) layers_.erase(it);
  return true;
}

bool DeltaGraph::insert_raw(DeltaList deltas) {
  for (const auto& [n, layer] : layers_) {
    if (n > deltas.size()) break;
    for (const auto& v : layer)
      if (delta_subset(v, deltas)) return false;
  }
  std::vector<DeltaList> absorbed;
  for (const auto& [n, layer] : layers_) {
    if (n <= deltas.size()) continue;
    for (const auto& v : layer)
      if (delta_subset(deltas, v)) absorbed.push_back(v);
  }
  for (const auto& v : absorbed) erase(v);
  layers_[deltas.size()].insert(std::move(deltas));
  return true;
}

void DeltaGraph::insert(DeltaList deltas) {
  std::sort(deltas.begin(), deltas.end());
  for (const auto& d : deltas)
    if (d.value >= cardinality(d.index)) throw std::out_of_range("delta value outside its domain");
  if (insert_raw(std::move(deltas))) fuse();
}

void DeltaGraph::fuse() {
  while (fuse_strict() || fuse_generalized() || fuse_consensus()) {
  }
}

// A vertex whose siblings at index i (same list, every other value at i) are
// all present is replaced, together with them, by the list without i.
bool DeltaGraph::fuse_strict() {
  for (const auto& [n, layer] : layers_) {
    for (const auto& v : layer) {
      for (const auto& d : v) {
        const auto card = cardinality(d.index);
        bool all = true;
        for (std::uint32_t t = 0; t < card && all; ++t)
          if (t != d.value) all = contains(with_value(v, d.index, t));
        if (all) {
          insert_raw(without_index(v, d.index));
          return true;
        }
      }
    }
  }
  return false;
}

// Like strict fusion, but a sibling may be any vertex picking another value
// at i whose remaining deltas are a subset of v's.
bool DeltaGraph::fuse_generalized() {
  std::vector<DeltaList> all = vertices();
  for (const auto& v : all) {
    for (const auto& d : v) {
      const auto rest = without_index(v, d.index);
      const auto card = cardinality(d.index);
      bool ok = true;
      for (std::uint32_t t = 0; t < card && ok; ++t) {
        if (t == d.value) continue;
        ok = std::any_of(all.begin(), all.end(), [&](const DeltaList& u) {
          auto it = std::find_if(u.begin(), u.end(),
                                 [&](const Delta& x) { return x.index == d.index; });
          return it != u.end() && it->value == t &&
                 delta_subset(without_index(u, d.index), rest);
        });
      }
      if (ok) {
        insert_raw(rest);
        return true;
      }
    }
  }
  return false;
}

// Multi-valued consensus: one vertex per value at index i, whose other
// deltas are compatible, covers the union of those other deltas.
bool DeltaGraph::fuse_consensus() {
  const std::vector<DeltaList> all = vertices();
  std::set<std::uint32_t> indices;
  for (const auto& v : all)
    for (const auto& d : v) indices.insert(d.index);

  for (auto i : indices) {
    const auto card = cardinality(i);
    std::vector<std::vector<DeltaList>> groups(card);
    for (const auto& v : all)
      for (const auto& d : v)
        if (d.index == i) groups[d.value].push_back(without_index(v, i));
    if (std::any_of(groups.begin(), groups.end(), [](const auto& g) { return g.empty(); }))
      continue;

    std::optional<DeltaList> hit;
    std::function<void(std::uint32_t, const DeltaList&)> go = [&](std::uint32_t t,
                                                                   const DeltaList& acc) {
      if (hit) return;
      if (t == card) {
        bool covered_already = std::any_of(all.begin(), all.end(), [&](const DeltaList& u) {
          return delta_subset(u, acc);
        });
        if (!covered_already) hit = acc;
        return;
      }
      for (const auto& g : groups[t]) {
        auto merged = delta_merge(acc, g);
        if (merged) go(t + 1, *merged);
        if (hit) return;
      }
    };
    go(0, {});
    if (hit) {
      insert_raw(std::move(*hit));
      return true;
    }
  }
  return false;
}

bool DeltaGraph::is_complete() const {
  auto it = layers_.find(0);
  return it != layers_.end() && !it->second.empty();
}

bool DeltaGraph::covered(const Assignment& a) const {
  for (const auto& [n, layer] : layers_)
    for (const auto& v : layer)
      if (delta_matches(v, a)) return true;
  return false;
}

std::size_t DeltaGraph::vertex_count() const {
  std::size_t n = 0;
  for (const auto& [k, layer] : layers_) n += layer.size();
  return n;
}

std::vector<DeltaList> DeltaGraph::vertices() const {
  std::vector<DeltaList> out;
  for (const auto& [n, layer] : layers_) out.insert(out.end(), layer.begin(), layer.end());
  return out;
}

std::vector<DeltaGraph::Edge> DeltaGraph::edges() const {
  std::vector<Edge> out;
  for (const auto& [n, layer] : layers_) {
    std::vector<DeltaList> vs(layer.begin(), layer.end());
    for (std::size_t x = 0; x < vs.size(); ++x)
      for (std::size_t y = x + 1; y < vs.size(); ++y) {
        int diff = 0;
        std::uint32_t label = 0;
        for (std::size_t k = 0; k < n && diff <= 1; ++k) {
          if (vs[x][k].index != vs[y][k].index) {
            diff = 2;
          } else if (vs[x][k].value != vs[y][k].value) {
            ++diff;
            label = vs[x][k].index;
          }
        }
        if (diff == 1) out.push_back(Edge{vs[x], vs[y], label});
      }
  }
  return out;
}

void DeltaGraph::for_each_uncovered(const std::function<bool(const Assignment&)>& fn) const {
  const std::size_t p = registry_ ? registry_->size() : 0;
  // Vertices grouped by the position after their last index: a vertex can
  // only be decided once all its indices are assigned.
  std::vector<std::vector<const DeltaList*>> decided_at(p + 1);
  for (const auto& [n, layer] : layers_)
    for (const auto& v : layer) {
      const std::size_t at = v.empty() ? 0 : v.back().index + 1;
      if (at > p) throw std::out_of_range("vertex uses an unregistered index");
      decided_at[at].push_back(&v);
    }

  Assignment a(p, 0);
  bool stop = false;
  std::function<void(std::size_t)> go = [&](std::size_t depth) {
    for (const auto* v : decided_at[depth])
      if (delta_matches(*v, a)) return;
    if (depth == p) {
      if (!fn(a)) stop = true;
      return;
    }
    const auto card = registry_->cardinality(static_cast<std::uint32_t>(depth));
    for (std::uint32_t t = 0; t < card && !stop; ++t) {
      a[depth] = t;
      go(depth + 1);
    }
    a[depth] = 0;
  };
  go(0);
}

std::optional<Assignment> DeltaGraph::first_uncovered() const {
  std::optional<Assignment> out;
  for_each_uncovered([&](const Assignment& a) {
    out = a;
    return false;
  });
  return out;
}

std::string DeltaGraph::dump() const {
  std::string s;
  for (const auto& [n, layer] : layers_)
    for (const auto& v : layer)
      s += "layer=" + std::to_string(n) + " " + (v.empty() ? std::string("1") : to_string(v)) + "\n";
  s += std::string("complete: ") + (is_complete() ? "yes" : "no") + "\n";
  return s;
}

}  // namespace mwp
