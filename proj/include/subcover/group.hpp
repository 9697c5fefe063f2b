#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "subcover/errors.hpp"

namespace subcover {

inline constexpr std::size_t kDefaultOrderCap = 5040;

// Permutation in one-line notation: images[i] is where point i goes.
struct Permutation {
  std::vector<int> images;

  int degree() const { return static_cast<int>(images.size()); }

  bool is_bijection() const {
    std::vector<char> seen(images.size(), 0);
    for (int v : images) {
      if (v < 0 || v >= degree() || seen[v]) return false;
      seen[v] = 1;
    }
    return true;
  }

  static Permutation identity(int degree) {
    Permutation p;
    p.images.resize(degree);
    for (int i = 0; i < degree; ++i) p.images[i] = i;
    return p;
  }

  // (p * q)(i) = p(q(i)): apply q first, then p.
  Permutation operator*(const Permutation& q) const {
    Permutation r;
    r.images.resize(images.size());
    for (std::size_t i = 0; i < images.size(); ++i) r.images[i] = images[q.images[i]];
    return r;
  }

  bool operator==(const Permutation& o) const { return images == o.images; }
  bool operator<(const Permutation& o) const { return images < o.images; }
};

// Finite group as a validated Cayley table over element indices 0..n-1,
// identity fixed at index 0. Immutable after construction.
class Group {
 public:
  const std::string& name() const { return name_; }
  int order() const { return n_; }

  // table lookup: product of elements a and b
  int op(int a, int b) const { return table_[static_cast<std::size_t>(a) * n_ + b]; }
  int inverse(int a) const { return inv_[a]; }

  int power(int x, int e) const {
    int acc = 0;
    for (int i = 0; i < e; ++i) acc = op(acc, x);
    return acc;
  }

  // g h g^-1
  int conjugate(int g, int h) const { return op(op(g, h), inv_[g]); }

  const std::vector<int>& raw_table() const { return table_; }

  std::vector<std::vector<int>> table_rows() const {
    std::vector<std::vector<int>> rows(n_, std::vector<int>(n_));
    for (int a = 0; a < n_; ++a)
      for (int b = 0; b < n_; ++b) rows[a][b] = op(a, b);
    return rows;
  }

  static Group from_cayley_table(const std::vector<std::vector<int>>& table,
                                 std::string name = "",
                                 std::size_t order_cap = kDefaultOrderCap);
  static Group from_permutations(const std::vector<Permutation>& generators,
                                 std::string name = "",
                                 std::size_t order_cap = kDefaultOrderCap);
  static Group direct_product(const Group& g, const Group& h,
                              std::string name = "",
                              std::size_t order_cap = kDefaultOrderCap);

  // Underlying permutations when built via from_permutations, indexed by
  // element; empty otherwise.
  const std::vector<Permutation>& permutations() const { return perms_; }

  void rename(std::string name) { name_ = std::move(name); }

 private:
  Group(std::string name, int n, std::vector<int> flat)
      : name_(std::move(name)), n_(n), table_(std::move(flat)) {
    validate();
  }

  void validate();

  std::string name_;
  int n_ = 0;
  std::vector<int> table_;  // flattened n x n
  std::vector<int> inv_;
  std::vector<Permutation> perms_;
};

inline void Group::validate() {
  const int n = n_;
  if (n <= 0) throw NotAGroup("latin-square", "empty table");

  // Latin square: every row and column a permutation of 0..n-1.
  std::vector<char> seen(n);
  for (int a = 0; a < n; ++a) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int b = 0; b < n; ++b) {
      int v = op(a, b);
      if (v < 0 || v >= n || seen[v])
        throw NotAGroup("latin-square", "row " + std::to_string(a) +
                        " repeats or escapes range at column " + std::to_string(b), a, b);
      seen[v] = 1;
    }
  }
  for (int b = 0; b < n; ++b) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int a = 0; a < n; ++a) {
      int v = op(a, b);
      if (seen[v])
        throw NotAGroup("latin-square", "column " + std::to_string(b) +
                        " repeats entry at row " + std::to_string(a), a, b);
      seen[v] = 1;
    }
  }

  // Identity at index 0.
  for (int a = 0; a < n; ++a)
    if (op(0, a) != a || op(a, 0) != a)
      throw NotAGroup("identity", "element 0 is not a two-sided identity at " +
                      std::to_string(a), 0, a);

  // Two-sided inverses.
  inv_.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (op(a, b) == 0 && op(b, a) == 0) {
        inv_[a] = b;
        break;
      }
    }
    if (inv_[a] < 0)
      throw NotAGroup("inverse", "element " + std::to_string(a) +
                      " has no two-sided inverse", a);
  }

  // Associativity by the direct triple loop.
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const int ab = op(a, b);
      for (int c = 0; c < n; ++c)
        if (op(ab, c) != op(a, op(b, c)))
          throw NotAGroup("associativity",
                          "(a*b)*c != a*(b*c) for a=" + std::to_string(a) +
                          " b=" + std::to_string(b) + " c=" + std::to_string(c),
                          a, b, c);
    }
}

inline Group Group::from_cayley_table(const std::vector<std::vector<int>>& table,
                                      std::string name, std::size_t order_cap) {
  const int n = static_cast<int>(table.size());
  if (n == 0) throw NotAGroup("latin-square", "empty table");
  if (static_cast<std::size_t>(n) > order_cap) throw ClosureExceedsLimit(order_cap);
  for (const auto& row : table)
    if (static_cast<int>(row.size()) != n)
      throw NotAGroup("latin-square", "table is not square");
  for (const auto& row : table)
    for (int v : row)
      if (v < 0 || v >= n)
        throw NotAGroup("latin-square", "entry out of range");

  // Locate the identity and relabel it to index 0 if needed.
  int id = -1;
  for (int e = 0; e < n && id < 0; ++e) {
    bool ok = true;
    for (int a = 0; a < n; ++a)
      if (table[e][a] != a || table[a][e] != a) { ok = false; break; }
    if (ok) id = e;
  }
  if (id < 0) throw NotAGroup("identity", "no two-sided identity element");

  std::vector<int> relabel(n);
  for (int i = 0; i < n; ++i) relabel[i] = i;
  if (id != 0) std::swap(relabel[0], relabel[id]);  // involution: maps id<->0

  std::vector<int> flat(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      flat[static_cast<std::size_t>(relabel[a]) * n + relabel[b]] = relabel[table[a][b]];

  return Group(std::move(name), n, std::move(flat));
}

inline Group Group::from_permutations(const std::vector<Permutation>& generators,
                                      std::string name, std::size_t order_cap) {
  if (generators.empty())
    throw NotAGroup("identity", "empty generator list");
  const int degree = generators.front().degree();
  if (degree <= 0) throw NotAGroup("latin-square", "permutation of degree 0");
  for (const auto& p : generators) {
    if (p.degree() != degree)
      throw NotAGroup("latin-square", "generators have mixed degrees");
    if (!p.is_bijection())
      throw NotAGroup("latin-square", "generator is not a bijection");
  }

  // Breadth-first closure under right multiplication by generators.
  std::vector<Permutation> elems{Permutation::identity(degree)};
  std::map<Permutation, int> index{{elems[0], 0}};
  for (std::size_t head = 0; head < elems.size(); ++head) {
    for (const auto& gen : generators) {
      Permutation next = elems[head] * gen;
      if (index.emplace(next, static_cast<int>(elems.size())).second) {
        elems.push_back(std::move(next));
        if (elems.size() > order_cap) throw ClosureExceedsLimit(order_cap);
      }
    }
  }

  const int n = static_cast<int>(elems.size());
  std::vector<int> flat(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      flat[static_cast<std::size_t>(a) * n + b] = index.at(elems[a] * elems[b]);

  Group g(std::move(name), n, std::move(flat));
  g.perms_ = std::move(elems);
  return g;
}

inline Group Group::direct_product(const Group& g, const Group& h,
                                   std::string name, std::size_t order_cap) {
  const std::size_t order = static_cast<std::size_t>(g.order()) * h.order();
  if (order > order_cap) throw ClosureExceedsLimit(order_cap);
  const int gn = g.order(), hn = h.order(), n = static_cast<int>(order);

  // Pairs (a, b) ordered lexicographically: index = a*|h| + b, so the
  // identity pair lands at index 0.
  std::vector<int> flat(static_cast<std::size_t>(n) * n);
  for (int a1 = 0; a1 < gn; ++a1)
    for (int b1 = 0; b1 < hn; ++b1)
      for (int a2 = 0; a2 < gn; ++a2)
        for (int b2 = 0; b2 < hn; ++b2) {
          int x = a1 * hn + b1, y = a2 * hn + b2;
          flat[static_cast<std::size_t>(x) * n + y] = g.op(a1, a2) * hn + h.op(b1, b2);
        }

  if (name.empty()) name = g.name() + "x" + h.name();
  return Group(std::move(name), n, std::move(flat));
}

// Least m >= 1 with x^m = identity; divides the group order.
inline int element_order(const Group& g, int x) {
  int acc = x, m = 1;
  while (acc != 0) {
    acc = g.op(acc, x);
    ++m;
  }
  return m;
}

inline bool is_cyclic(const Group& g) {
  for (int x = 0; x < g.order(); ++x)
    if (element_order(g, x) == g.order()) return true;
  return false;
}

}  // namespace subcover
