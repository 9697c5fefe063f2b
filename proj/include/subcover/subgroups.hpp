#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "subcover/element_set.hpp"
#include "subcover/errors.hpp"
#include "subcover/group.hpp"

namespace subcover {

inline constexpr std::size_t kDefaultLatticeCap = 20000;

struct Subgroup {
  ElementSet members;
  int order = 0;
};

// Complete subgroup lattice of one group. Subgroups are sorted by
// (order, member sequence) so ids are canonical; maximal and normal
// subgroups are flagged by id.
struct SubgroupLattice {
  std::vector<Subgroup> subgroups;
  std::vector<int> maximal_ids;
  std::vector<int> normal_ids;
  std::vector<char> is_maximal;  // indexed by id
  std::vector<char> is_normal;

  int whole_id() const { return static_cast<int>(subgroups.size()) - 1; }
  int proper_count() const { return static_cast<int>(subgroups.size()) - 1; }

  int find(const ElementSet& members) const {
    for (std::size_t i = 0; i < subgroups.size(); ++i)
      if (subgroups[i].members == members) return static_cast<int>(i);
    return -1;
  }
};

namespace detail {

// Closure of `seed` under the group product. If `early_whole` is set and
// the closure grows past n/2 elements it must be the whole group (order
// divides n), so the full member set is returned immediately.
inline ElementSet close_under_product(const Group& g, const ElementSet& seed,
                                      bool early_whole) {
  const int n = g.order();
  ElementSet members(n);
  members.set(0);
  std::vector<int> elems{0};
  for (int x : seed.members())
    if (!members.test(x)) {
      members.set(x);
      elems.push_back(x);
    }

  // Every ordered pair is seen once the later of its two elements is
  // processed, so products of all pairs get included.
  for (std::size_t head = 1; head < elems.size(); ++head) {
    const int x = elems[head];
    for (std::size_t j = 0; j <= head; ++j) {
      const int y = elems[j];
      for (int z : {g.op(x, y), g.op(y, x)}) {
        if (!members.test(z)) {
          members.set(z);
          elems.push_back(z);
          if (early_whole && members.size() > n / 2) {
            ElementSet whole(n);
            for (int i = 0; i < n; ++i) whole.set(i);
            return whole;
          }
        }
      }
    }
  }
  return members;
}

}  // namespace detail

// Smallest subgroup containing the seed elements.
inline Subgroup generated_subgroup(const Group& g, const ElementSet& seed) {
  ElementSet members = detail::close_under_product(g, seed, false);
  return Subgroup{members, members.size()};
}

// Full lattice: seed with all cyclic subgroups, then close the collection
// under pairwise join until no new subgroup appears.
inline SubgroupLattice all_subgroups(const Group& g,
                                     std::size_t lattice_cap = kDefaultLatticeCap) {
  const int n = g.order();
  std::vector<ElementSet> found;
  std::unordered_map<ElementSet, int, ElementSetHash> index;

  auto add = [&](const ElementSet& s) -> int {
    auto it = index.find(s);
    if (it != index.end()) return it->second;
    int id = static_cast<int>(found.size());
    found.push_back(s);
    index.emplace(s, id);
    if (found.size() > lattice_cap) throw LatticeExceedsLimit(lattice_cap);
    return id;
  };

  ElementSet trivial(n);
  trivial.set(0);
  add(trivial);

  // Cyclic subgroups by power iteration.
  for (int x = 1; x < n; ++x) {
    ElementSet cyc(n);
    int acc = 0;
    do {
      cyc.set(acc);
      acc = g.op(acc, x);
    } while (acc != 0);
    add(cyc);
  }

  ElementSet whole(n);
  for (int i = 0; i < n; ++i) whole.set(i);
  add(whole);

  // Pairwise join closure. Processing each new entry against all earlier
  // ones covers every unordered pair exactly once, including pairs that
  // involve subgroups discovered along the way.
  for (std::size_t i = 1; i < found.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      const ElementSet& a = found[i];
      const ElementSet& b = found[j];
      if (a.subset_of(b) || b.subset_of(a)) continue;
      if (a.size() > n / 2 || b.size() > n / 2) {
        continue;  // join of a proper subgroup with one of index < 2 is G
      }
      add(detail::close_under_product(g, a.unite(b), true));
    }
  }

  SubgroupLattice lat;
  lat.subgroups.reserve(found.size());
  for (const auto& s : found) lat.subgroups.push_back(Subgroup{s, s.size()});
  std::sort(lat.subgroups.begin(), lat.subgroups.end(),
            [](const Subgroup& a, const Subgroup& b) {
              if (a.order != b.order) return a.order < b.order;
              return a.members.member_lex_less(b.members);
            });

  const int m = static_cast<int>(lat.subgroups.size());
  lat.is_maximal.assign(m, 0);
  lat.is_normal.assign(m, 0);

  // Maximal: proper, contained in no other proper subgroup. Candidates
  // only need checking against strictly larger proper subgroups.
  for (int i = 0; i < m - 1; ++i) {
    bool maximal = true;
    for (int j = i + 1; j < m - 1 && maximal; ++j)
      if (lat.subgroups[j].order > lat.subgroups[i].order &&
          lat.subgroups[i].members.subset_of(lat.subgroups[j].members))
        maximal = false;
    if (maximal) {
      lat.is_maximal[i] = 1;
      lat.maximal_ids.push_back(i);
    }
  }

  // Normal: conjugation by every group element preserves the member set.
  for (int i = 0; i < m; ++i) {
    bool normal = true;
    const auto hs = lat.subgroups[i].members.members();
    for (int x = 0; x < n && normal; ++x)
      for (int h : hs)
        if (!lat.subgroups[i].members.test(g.conjugate(x, h))) {
          normal = false;
          break;
        }
    if (normal) {
      lat.is_normal[i] = 1;
      lat.normal_ids.push_back(i);
    }
  }

  return lat;
}

// Group on the cosets of a normal subgroup; the coset of the identity is
// element 0 of the quotient.
inline Group quotient(const Group& g, const Subgroup& nsub) {
  const int n = g.order();
  const auto hs = nsub.members.members();
  for (int x = 0; x < n; ++x)
    for (int h : hs)
      if (!nsub.members.test(g.conjugate(x, h))) throw NotNormal();

  // Left cosets, labeled in order of their least element; element 0 is in
  // the coset of the identity, so that coset gets label 0.
  std::vector<int> coset_of(n, -1);
  std::vector<int> reps;
  for (int x = 0; x < n; ++x) {
    if (coset_of[x] >= 0) continue;
    const int label = static_cast<int>(reps.size());
    reps.push_back(x);
    for (int h : hs) coset_of[g.op(x, h)] = label;
  }

  const int q = static_cast<int>(reps.size());
  std::vector<std::vector<int>> table(q, std::vector<int>(q));
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b) table[a][b] = coset_of[g.op(reps[a], reps[b])];

  return Group::from_cayley_table(table, g.name() + "/N" + std::to_string(nsub.order));
}

namespace detail {

// Greedy generating sequence: repeatedly adjoin the lowest-index element
// outside the span of what has been picked so far.
inline std::vector<int> generating_sequence(const Group& g) {
  const int n = g.order();
  std::vector<int> gens;
  ElementSet span(n);
  span.set(0);
  for (int x = 1; x < n; ++x) {
    if (span.test(x)) continue;
    gens.push_back(x);
    ElementSet seed(n);
    for (int m : span.members()) seed.set(m);
    seed.set(x);
    span = close_under_product(g, seed, false);
    if (span.size() == n) break;
  }
  return gens;
}

struct IsoSearch {
  const Group& g;
  const Group& h;
  const std::vector<int>& gens;
  std::vector<int> g_orders;
  std::vector<int> h_orders;
  std::vector<int> map;      // g element -> h element, -1 unknown
  std::vector<char> used;    // h elements already taken
  std::vector<int> mapped;   // g elements with known images, closure order

  IsoSearch(const Group& g_, const Group& h_, const std::vector<int>& gens_)
      : g(g_), h(h_), gens(gens_) {
    const int n = g.order();
    g_orders.resize(n);
    h_orders.resize(n);
    for (int x = 0; x < n; ++x) {
      g_orders[x] = element_order(g, x);
      h_orders[x] = element_order(h, x);
    }
    map.assign(n, -1);
    used.assign(n, 0);
    map[0] = 0;
    used[0] = 1;
    mapped.push_back(0);
  }

  // Close the partial map under products. Newly determined images must be
  // consistent and injective; returns the number of elements appended to
  // `mapped` (for undo), or -1 on contradiction.
  int extend(int x, int y) {
    if (map[x] >= 0) return map[x] == y ? 0 : -1;
    if (used[y]) return -1;
    const std::size_t base = mapped.size();
    map[x] = y;
    used[y] = 1;
    mapped.push_back(x);
    for (std::size_t head = base; head < mapped.size(); ++head) {
      const int a = mapped[head];
      for (std::size_t j = 0; j < mapped.size(); ++j) {
        const int b = mapped[j];
        const int pairs[2][2] = {{g.op(a, b), h.op(map[a], map[b])},
                                 {g.op(b, a), h.op(map[b], map[a])}};
        for (const auto& pr : pairs) {
          const int c = pr[0], want = pr[1];
          if (map[c] >= 0) {
            if (map[c] != want) { undo(base); return -1; }
          } else if (used[want]) {
            undo(base);
            return -1;
          } else {
            map[c] = want;
            used[want] = 1;
            mapped.push_back(c);
          }
        }
      }
    }
    return static_cast<int>(mapped.size() - base);
  }

  void undo(std::size_t base) {
    while (mapped.size() > base) {
      const int x = mapped.back();
      mapped.pop_back();
      used[map[x]] = 0;
      map[x] = -1;
    }
  }

  bool search(std::size_t gi) {
    if (gi == gens.size()) return mapped.size() == static_cast<std::size_t>(g.order());
    const int x = gens[gi];
    for (int y = 0; y < h.order(); ++y) {
      if (used[y] || h_orders[y] != g_orders[x]) continue;
      const std::size_t base = mapped.size();
      if (extend(x, y) >= 0) {
        if (search(gi + 1)) return true;
        undo(base);
      }
    }
    return false;
  }
};

}  // namespace detail

// Table-preserving bijection test: order and element-order fingerprints
// first, then backtracking over images of a generating sequence.
inline bool are_isomorphic(const Group& g, const Group& h) {
  if (g.order() != h.order()) return false;
  const int n = g.order();
  if (n == 1) return true;

  std::vector<int> go(n), ho(n);
  for (int x = 0; x < n; ++x) {
    go[x] = element_order(g, x);
    ho[x] = element_order(h, x);
  }
  {
    auto gs = go, hs = ho;
    std::sort(gs.begin(), gs.end());
    std::sort(hs.begin(), hs.end());
    if (gs != hs) return false;
  }

  const std::vector<int> gens = detail::generating_sequence(g);
  detail::IsoSearch search(g, h, gens);
  if (!search.search(0)) return false;

  // The closure marks every product of mapped pairs, so a completed map is
  // a homomorphism; the full check below keeps that independent of the
  // closure bookkeeping.
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (search.map[g.op(a, b)] != h.op(search.map[a], search.map[b])) return false;
  return true;
}

// True iff some normal subgroup of g gives a quotient isomorphic to t.
// Normal subgroups of the wrong index are skipped.
inline bool has_quotient_isomorphic(const Group& g, const SubgroupLattice& lattice,
                                    const Group& t) {
  if (g.order() % t.order() != 0) return false;
  const int want = g.order() / t.order();
  for (int id : lattice.normal_ids) {
    if (lattice.subgroups[id].order != want) continue;
    if (are_isomorphic(quotient(g, lattice.subgroups[id]), t)) return true;
  }
  return false;
}

inline std::vector<Subgroup> subgroups_of_index(const Group& g,
                                                const SubgroupLattice& lattice,
                                                int d) {
  std::vector<Subgroup> out;
  if (d <= 0 || g.order() % d != 0) return out;
  const int want = g.order() / d;
  for (const auto& s : lattice.subgroups)
    if (s.order == want) out.push_back(s);
  return out;
}

inline std::vector<int> subgroup_ids_of_index(const Group& g,
                                              const SubgroupLattice& lattice, int d) {
  std::vector<int> out;
  if (d <= 0 || g.order() % d != 0) return out;
  const int want = g.order() / d;
  for (std::size_t i = 0; i < lattice.subgroups.size(); ++i)
    if (lattice.subgroups[i].order == want) out.push_back(static_cast<int>(i));
  return out;
}

// |{x*y : x in a, y in b}|. For subgroups this equals |a||b|/|a n b|; the
// value is computed from the set product itself so tests can check the
// formula against it.
inline int setwise_product_size(const Group& g, const Subgroup& a, const Subgroup& b) {
  ElementSet prod(g.order());
  for (int x : a.members.members())
    for (int y : b.members.members()) prod.set(g.op(x, y));
  return prod.size();
}

}  // namespace subcover
