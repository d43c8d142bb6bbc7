#include "mwp/choice_poly.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <stdexcept>

namespace mwp {

// ---------------------------------------------------------------------------
// Registry

ChoiceDomainRegistry::ChoiceDomainRegistry(std::vector<std::uint32_t> cards)
    : cards_(std::move(cards)) {
  for (auto c : cards_)
    if (c == 0) throw std::invalid_argument("choice domain must be non-empty");
}

std::uint32_t ChoiceDomainRegistry::allocate(std::uint32_t cardinality) {
  if (cardinality == 0) throw std::invalid_argument("choice domain must be non-empty");
  cards_.push_back(cardinality);
  return static_cast<std::uint32_t>(cards_.size() - 1);
}

std::size_t ChoiceDomainRegistry::assignment_count() const {
  constexpr auto kMax = std::numeric_limits<std::size_t>::max();
  std::size_t total = 1;
  for (auto c : cards_) {
    if (total > kMax / c) return kMax;
    total *= c;
  }
  return total;
}

bool ChoiceDomainRegistry::valid(const Assignment& a) const {
  if (a.size() != cards_.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] >= cards_[i]) return false;
  return true;
}

bool ChoiceDomainRegistry::next(Assignment& a) const {
  for (std::size_t i = a.size(); i-- > 0;) {
    if (++a[i] < cards_[i]) return true;
    a[i] = 0;
  }
  return false;
}

void ChoiceDomainRegistry::for_each(const std::function<bool(const Assignment&)>& fn) const {
  Assignment a(cards_.size(), 0);
  do {
    if (!fn(a)) return;
  } while (next(a));
}

// ---------------------------------------------------------------------------
// Delta lists

bool delta_subset(std::span<const Delta> a, std::span<const Delta> b) {
  if (a.size() > b.size()) return false;
  std::size_t j = 0;
  for (const auto& d : a) {
    while (j < b.size() && b[j].index < d.index) ++j;
    if (j == b.size() || b[j] != d) return false;
    ++j;
  }
  return true;
}

bool delta_matches(std::span<const Delta> list, const Assignment& a) {
  for (const auto& d : list) {
    if (d.index >= a.size()) throw std::out_of_range("assignment does not cover choice index");
    if (a[d.index] != d.value) return false;
  }
  return true;
}

std::optional<DeltaList> delta_merge(std::span<const Delta> a, std::span<const Delta> b) {
  DeltaList out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].index < b[j].index) {
      out.push_back(a[i++]);
    } else if (b[j].index < a[i].index) {
      out.push_back(b[j++]);
    } else {
      if (a[i].value != b[j].value) return std::nullopt;
      out.push_back(a[i++]);
      ++j;
    }
  }
  out.insert(out.end(), a.begin() + static_cast<std::ptrdiff_t>(i), a.end());
  out.insert(out.end(), b.begin() + static_cast<std::ptrdiff_t>(j), b.end());
  return out;
}

std::string to_string(const DeltaList& deltas) {
  std::string s;
  for (std::size_t k = 0; k < deltas.size(); ++k) {
    if (k) s += '.';
    s += "δ(" + std::to_string(deltas[k].value) + "," + std::to_string(deltas[k].index) + ")";
  }
  return s;
}

// ---------------------------------------------------------------------------
// Monomials

std::optional<Monomial> monomial_mul(const Monomial& a, const Monomial& b) {
  const MwpInf s = mul(a.scalar, b.scalar);
  if (s == MwpInf::kZero) return std::nullopt;
  auto deltas = delta_merge(a.deltas, b.deltas);
  if (!deltas) return std::nullopt;
  return Monomial{s, std::move(*deltas)};
}

std::string to_string(const Monomial& m) {
  std::string s(1, to_char(m.scalar));
  if (!m.deltas.empty()) s += "." + to_string(m.deltas);
  return s;
}

// ---------------------------------------------------------------------------
// Reduction

namespace {

// Assumes sorted input; merges equal lists and removes zeros and subsumed
// monomials.
void reduce_sorted(std::vector<Monomial>& ms) {
  std::vector<Monomial> merged;
  merged.reserve(ms.size());
  for (auto& m : ms) {
    if (m.scalar == MwpInf::kZero) continue;
    if (!merged.empty() && merged.back().deltas == m.deltas) {
      merged.back().scalar = add(merged.back().scalar, m.scalar);
    } else {
      merged.push_back(std::move(m));
    }
  }
  if (merged.size() < 2) {
    ms = std::move(merged);
    return;
  }
  // Kept monomials go into a trie over their delta lists, shorter lists
  // first since a subsuming monomial always has fewer deltas. A monomial is
  // subsumed if some kept path made of its own deltas ends at a scalar at
  // least as large; `best` bounds each subtree so the walk can stop early.
  std::size_t longest = 0, total = 1;
  for (const auto& m : merged) {
    longest = std::max(longest, m.deltas.size());
    total += m.deltas.size();
  }
  std::vector<std::size_t> start(longest + 2, 0);
  for (const auto& m : merged) ++start[m.deltas.size() + 1];
  for (std::size_t k = 1; k < start.size(); ++k) start[k] += start[k - 1];
  std::vector<std::size_t> by_size(merged.size());
  for (std::size_t i = 0; i < merged.size(); ++i) by_size[start[merged[i].deltas.size()]++] = i;
  struct Node {
    MwpInf here = MwpInf::kZero;
    MwpInf best = MwpInf::kZero;
    std::vector<std::pair<Delta, std::uint32_t>> children;
  };
  std::vector<Node> trie(1);
  trie.reserve(total);
  std::vector<std::pair<std::uint32_t, std::size_t>> stack;  // (node, next delta)
  auto subsumed = [&](const Monomial& n) {
    if (trie[0].best < n.scalar) return false;
    stack.assign(1, {0, 0});
    while (!stack.empty()) {
      auto [id, pos] = stack.back();
      stack.pop_back();
      const Node& node = trie[id];
      if (node.here >= n.scalar) return true;
      for (const auto& [d, child] : node.children) {
        if (trie[child].best < n.scalar) continue;
        for (std::size_t t = pos; t < n.deltas.size() && n.deltas[t].index <= d.index; ++t)
          if (n.deltas[t] == d) {
            stack.emplace_back(child, t + 1);
            break;
          }
      }
    }
    return false;
  };
  auto insert = [&](const Monomial& m) {
    std::uint32_t id = 0;
    trie[0].best = std::max(trie[0].best, m.scalar);
    for (const auto& d : m.deltas) {
      std::uint32_t next = 0;
      for (const auto& [cd, child] : trie[id].children)
        if (cd == d) next = child;
      if (!next) {
        next = static_cast<std::uint32_t>(trie.size());
        trie[id].children.emplace_back(d, next);
        trie.emplace_back();
      }
      id = next;
      trie[id].best = std::max(trie[id].best, m.scalar);
    }
    trie[id].here = std::max(trie[id].here, m.scalar);
  };
  std::vector<char> keep(merged.size(), 1);
  for (auto idx : by_size) {
    if (subsumed(merged[idx])) {
      keep[idx] = 0;
    } else {
      insert(merged[idx]);
    }
  }
  ms.clear();
  for (std::size_t i = 0; i < merged.size(); ++i)
    if (keep[i]) ms.push_back(std::move(merged[i]));
}

}  // namespace

void reduce(std::vector<Monomial>& monomials) {
  std::sort(monomials.begin(), monomials.end(), monomial_less);
  reduce_sorted(monomials);
}

// ---------------------------------------------------------------------------
// Polynomials

ChoicePolynomial::ChoicePolynomial(std::vector<Monomial> monomials)
    : monomials_(std::move(monomials)) {
  reduce(monomials_);
}

ChoicePolynomial ChoicePolynomial::constant(MwpInf scalar) {
  if (scalar == MwpInf::kZero) return {};
  return ChoicePolynomial(Reduced{}, {Monomial{scalar, {}}});
}

ChoicePolynomial ChoicePolynomial::delta(MwpInf scalar, DeltaList deltas) {
  std::sort(deltas.begin(), deltas.end());
  for (std::size_t k = 1; k < deltas.size(); ++k)
    if (deltas[k].index == deltas[k - 1].index) {
      if (deltas[k].value != deltas[k - 1].value) return {};
    }
  deltas.erase(std::unique(deltas.begin(), deltas.end()), deltas.end());
  return ChoicePolynomial(std::vector<Monomial>{Monomial{scalar, std::move(deltas)}});
}

bool ChoicePolynomial::has_infinity() const {
  return std::any_of(monomials_.begin(), monomials_.end(),
                     [](const Monomial& m) { return m.scalar == MwpInf::kInf; });
}

ChoicePolynomial ChoicePolynomial::infinity_part() const { return at_least(MwpInf::kInf, MwpInf::kInf); }

ChoicePolynomial ChoicePolynomial::at_least(MwpInf threshold, MwpInf scalar) const {
  std::vector<Monomial> out;
  for (const auto& m : monomials_)
    if (m.scalar >= threshold) out.push_back(Monomial{scalar, m.deltas});
  // Rescaling keeps the order; only subsumption may change.
  reduce_sorted(out);
  return ChoicePolynomial(Reduced{}, std::move(out));
}

MwpInf ChoicePolynomial::eval(const Assignment& a) const {
  MwpInf v = MwpInf::kZero;
  for (const auto& m : monomials_)
    if (m.scalar > v && delta_matches(m.deltas, a)) v = m.scalar;
  return v;
}

std::string ChoicePolynomial::to_string() const {
  if (monomials_.empty()) return "0";
  std::string s;
  for (std::size_t k = 0; k < monomials_.size(); ++k) {
    if (k) s += '+';
    s += mwp::to_string(monomials_[k]);
  }
  return s;
}

ChoicePolynomial add(const ChoicePolynomial& p, const ChoicePolynomial& q) {
  if (p.is_zero()) return q;
  if (q.is_zero()) return p;
  std::vector<Monomial> out;
  out.reserve(p.monomials_.size() + q.monomials_.size());
  std::merge(p.monomials_.begin(), p.monomials_.end(), q.monomials_.begin(), q.monomials_.end(),
             std::back_inserter(out), monomial_less);
  reduce_sorted(out);
  return ChoicePolynomial(ChoicePolynomial::Reduced{}, std::move(out));
}

ChoicePolynomial mul(const ChoicePolynomial& p, const ChoicePolynomial& q) {
  std::vector<std::vector<Monomial>> lists;
  lists.reserve(q.monomials_.size() + 2);
  // Step 1: P x q_i for every monomial of Q. The canonical order is not
  // preserved by products in general, so each list is sorted here.
  for (const auto& n : q.monomials_) {
    std::vector<Monomial> li;
    li.reserve(p.monomials_.size());
    for (const auto& m : p.monomials_)
      if (auto r = monomial_mul(m, n)) li.push_back(std::move(*r));
    if (li.empty()) continue;
    if (!std::is_sorted(li.begin(), li.end(), monomial_less))
      std::sort(li.begin(), li.end(), monomial_less);
    lists.push_back(std::move(li));
  }
  for (const auto* f : {&p, &q}) {
    auto inf = f->infinity_part();
    if (!inf.is_zero()) lists.push_back(std::move(inf.monomials_));
  }

  // Steps 2-5: repeatedly move the smallest head into the result.
  using Head = std::pair<std::size_t, std::size_t>;  // (list, position)
  auto greater = [&](const Head& a, const Head& b) {
    const auto& x = lists[a.first][a.second];
    const auto& y = lists[b.first][b.second];
    if (monomial_less(y, x)) return true;
    if (monomial_less(x, y)) return false;
    return a.first > b.first;
  };
  std::priority_queue<Head, std::vector<Head>, decltype(greater)> heads(greater);
  std::size_t total = 0;
  for (std::size_t i = 0; i < lists.size(); ++i) {
    heads.emplace(i, 0);
    total += lists[i].size();
  }
  std::vector<Monomial> out;
  out.reserve(total);
  while (!heads.empty()) {
    auto [li, pos] = heads.top();
    heads.pop();
    out.push_back(std::move(lists[li][pos]));
    if (pos + 1 < lists[li].size()) heads.emplace(li, pos + 1);
  }
  reduce_sorted(out);
  return ChoicePolynomial(ChoicePolynomial::Reduced{}, std::move(out));
}

ChoicePolynomial sum(const std::vector<ChoicePolynomial>& terms) {
  std::size_t total = 0;
  for (const auto& t : terms) total += t.monomials_.size();
  std::vector<Monomial> out;
  out.reserve(total);
  for (const auto& t : terms) out.insert(out.end(), t.monomials_.begin(), t.monomials_.end());
  std::sort(out.begin(), out.end(), monomial_less);
  reduce_sorted(out);
  return ChoicePolynomial(ChoicePolynomial::Reduced{}, std::move(out));
}

ChoicePolynomial mul_naive(const ChoicePolynomial& p, const ChoicePolynomial& q) {
  std::vector<Monomial> out;
  for (const auto& m : p.monomials_)
    for (const auto& n : q.monomials_)
      if (auto r = monomial_mul(m, n)) out.push_back(std::move(*r));
  for (const auto* f : {&p, &q})
    for (const auto& m : f->monomials_)
      if (m.scalar == MwpInf::kInf) out.push_back(m);
  return ChoicePolynomial(std::move(out));
}

// ---------------------------------------------------------------------------
// Canonical form by iterated consensus.
//
// For an index i with domain size k, monomials c_0..c_{k-1} with c_v picking
// value v at i together cover the cylinder given by the union of their other
// deltas, at the least of their scalars. Closing under this rule and
// absorbing yields, for every scalar level, all maximal cylinders inside the
// level set, which is unique per function.

namespace {

bool absorbed(const std::vector<Monomial>& ms, const Monomial& cand) {
  for (const auto& m : ms)
    if (m.scalar >= cand.scalar && delta_subset(m.deltas, cand.deltas)) return true;
  return false;
}

DeltaList without_index(const DeltaList& d, std::uint32_t index) {
  DeltaList out;
  out.reserve(d.size());
  for (const auto& x : d)
    if (x.index != index) out.push_back(x);
  return out;
}

// One consensus sweep; returns the new monomials found.
std::vector<Monomial> consensus_round(const std::vector<Monomial>& ms,
                                      const ChoiceDomainRegistry& registry) {
  std::vector<std::uint32_t> indices;
  for (const auto& m : ms)
    for (const auto& d : m.deltas) indices.push_back(d.index);
  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());

  std::vector<Monomial> found;
  for (auto i : indices) {
    if (i >= registry.size()) throw std::out_of_range("choice index not registered");
    const auto card = registry.cardinality(i);
    std::vector<std::vector<Monomial>> groups(card);
    for (const auto& m : ms)
      for (const auto& d : m.deltas)
        if (d.index == i) groups[d.value].push_back(Monomial{m.scalar, without_index(m.deltas, i)});
    if (std::any_of(groups.begin(), groups.end(), [](const auto& g) { return g.empty(); }))
      continue;

    // Depth-first over one pick per value.
    std::vector<std::size_t> pick(card, 0);
    std::function<void(std::uint32_t, const DeltaList&, MwpInf)> go =
        [&](std::uint32_t v, const DeltaList& acc, MwpInf s) {
          if (v == card) {
            Monomial cand{s, acc};
            if (!absorbed(ms, cand) && !absorbed(found, cand)) found.push_back(std::move(cand));
            return;
          }
          for (const auto& g : groups[v]) {
            auto merged = delta_merge(acc, g.deltas);
            if (!merged) continue;
            go(v + 1, *merged, std::min(s, g.scalar));
          }
        };
    go(0, {}, MwpInf::kInf);
  }
  return found;
}

}  // namespace

ChoicePolynomial ChoicePolynomial::simplify(const ChoiceDomainRegistry& registry) const {
  std::vector<Monomial> cur = monomials_;
  for (;;) {
    auto found = consensus_round(cur, registry);
    if (found.empty()) break;
    cur.insert(cur.end(), std::make_move_iterator(found.begin()),
               std::make_move_iterator(found.end()));
    reduce(cur);
  }
  return ChoicePolynomial(Reduced{}, std::move(cur));
}

// ---------------------------------------------------------------------------
// Matrices of polynomials

PolyMatrix mul(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.size() != b.size()) throw DimensionError("matrix product of unequal dimensions");
  const std::size_t n = a.size();
  PolyMatrix c(n);
  // Raw products of a whole entry are reduced once instead of per term.
  std::vector<Monomial> raw;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      raw.clear();
      for (std::size_t k = 0; k < n; ++k) {
        const auto& x = a.at(i, k).monomials();
        const auto& y = b.at(k, j).monomials();
        for (const auto& m : x)
          for (const auto& q : y)
            if (auto r = monomial_mul(m, q)) raw.push_back(std::move(*r));
        for (const auto* f : {&x, &y})
          for (const auto& m : *f)
            if (m.scalar == MwpInf::kInf) raw.push_back(m);
      }
      c.at(i, j) = ChoicePolynomial(std::move(raw));
      raw = {};
    }
  return c;
}

MwpMatrix evaluate(const PolyMatrix& m, const Assignment& a) {
  MwpMatrix out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) out.at(i, j) = m.at(i, j).eval(a);
  return out;
}

std::vector<std::pair<Assignment, MwpMatrix>> iso_expand(const PolyMatrix& m,
                                                          const ChoiceDomainRegistry& registry) {
  std::vector<std::pair<Assignment, MwpMatrix>> out;
  registry.for_each([&](const Assignment& a) {
    out.emplace_back(a, evaluate(m, a));
    return true;
  });
  return out;
}

PolyMatrix iso_inverse(const std::vector<std::pair<Assignment, MwpMatrix>>& table,
                       const ChoiceDomainRegistry& registry) {
  if (table.empty()) return {};
  const std::size_t n = table.front().second.size();
  PolyMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<Monomial> ms;
      for (const auto& [a, mat] : table) {
        if (mat.size() != n) throw DimensionError("inconsistent matrix sizes in table");
        DeltaList ds;
        for (std::uint32_t k = 0; k < a.size(); ++k) ds.push_back(Delta{k, a[k]});
        ms.push_back(Monomial{mat.at(i, j), std::move(ds)});
      }
      out.at(i, j) = ChoicePolynomial(std::move(ms)).simplify(registry);
    }
  return out;
}

PolyMatrix simplify(const PolyMatrix& m, const ChoiceDomainRegistry& registry) {
  PolyMatrix out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) out.at(i, j) = m.at(i, j).simplify(registry);
  return out;
}

}  // namespace mwp
