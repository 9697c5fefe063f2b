#pragma once

#include <cctype>
#include <string>
#include <utility>
#include <vector>

#include "subcover/errors.hpp"
#include "subcover/group.hpp"
#include "subcover/subgroups.hpp"

namespace subcover {

struct CatalogEntry {
  std::string name;
  Group group;
  std::string provenance;
};

namespace detail {

inline Group cyclic(int n, std::string name, std::size_t cap) {
  if (static_cast<std::size_t>(n) > cap) throw ClosureExceedsLimit(cap);
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) table[a][b] = (a + b) % n;
  return Group::from_cayley_table(table, std::move(name), cap);
}

inline Group trivial_group(std::string name, std::size_t cap) {
  return cyclic(1, std::move(name), cap);
}

// Dihedral group of order 2n. Faithful on n points for n >= 3; the two
// degenerate cases get explicit tables.
inline Group dihedral(int n, std::string name, std::size_t cap) {
  if (n == 1) return cyclic(2, std::move(name), cap);
  if (n == 2) {
    Permutation a{{1, 0, 2, 3}}, b{{0, 1, 3, 2}};
    return Group::from_permutations({a, b}, std::move(name), cap);
  }
  Permutation rot, refl;
  rot.images.resize(n);
  refl.images.resize(n);
  for (int i = 0; i < n; ++i) {
    rot.images[i] = (i + 1) % n;
    refl.images[i] = (n - i) % n;
  }
  return Group::from_permutations({rot, refl}, std::move(name), cap);
}

inline Group symmetric(int n, std::string name, std::size_t cap) {
  if (n <= 1) return trivial_group(std::move(name), cap);
  Permutation swap01 = Permutation::identity(n);
  swap01.images[0] = 1;
  swap01.images[1] = 0;
  Permutation cycle;
  cycle.images.resize(n);
  for (int i = 0; i < n; ++i) cycle.images[i] = (i + 1) % n;
  return Group::from_permutations({swap01, cycle}, std::move(name), cap);
}

inline Group alternating(int n, std::string name, std::size_t cap) {
  if (n <= 2) return trivial_group(std::move(name), cap);
  Permutation tri = Permutation::identity(n);
  tri.images[0] = 1;
  tri.images[1] = 2;
  tri.images[2] = 0;
  if (n == 3) return Group::from_permutations({tri}, std::move(name), cap);
  // Even full cycle for odd n; cycle on points 1..n-1 for even n.
  Permutation cycle = Permutation::identity(n);
  if (n % 2 == 1) {
    for (int i = 0; i < n; ++i) cycle.images[i] = (i + 1) % n;
  } else {
    for (int i = 1; i < n; ++i) cycle.images[i] = i % (n - 1) + 1;
  }
  return Group::from_permutations({tri, cycle}, std::move(name), cap);
}

// Quaternion group: elements (sign, basis) with basis in {1, i, j, k},
// index = 2*basis + (sign < 0).
inline Group quaternion8(std::string name, std::size_t cap) {
  auto mul = [](int x, int y) {
    static const int basis_prod[4][4] = {{0, 1, 2, 3},
                                         {1, 0, 3, 2},
                                         {2, 3, 0, 1},
                                         {3, 2, 1, 0}};
    // sign of b1*b2 for bases 1,i,j,k: +1 except squares (-1) and the
    // cyclic rules ij=k, jk=i, ki=j (ji=-k, kj=-i, ik=-j).
    static const int sign_prod[4][4] = {{+1, +1, +1, +1},
                                        {+1, -1, +1, -1},
                                        {+1, -1, -1, +1},
                                        {+1, +1, -1, -1}};
    int b1 = x >> 1, s1 = (x & 1) ? -1 : +1;
    int b2 = y >> 1, s2 = (y & 1) ? -1 : +1;
    int b = basis_prod[b1][b2];
    int s = s1 * s2 * sign_prod[b1][b2];
    return 2 * b + (s < 0 ? 1 : 0);
  };
  std::vector<std::vector<int>> table(8, std::vector<int>(8));
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) table[a][b] = mul(a, b);
  return Group::from_cayley_table(table, std::move(name), cap);
}

// Frobenius group of order 20 from its permutation generators; the
// defining relations a^5 = b^4 = 1, ba = a^2 b are checked on them.
inline Group frobenius20(std::string name, std::size_t cap) {
  Permutation a{{1, 2, 3, 4, 0}};     // (0 1 2 3 4)
  Permutation b{{0, 2, 4, 1, 3}};     // (1 2 4 3)
  Group g = Group::from_permutations({a, b}, std::move(name), cap);
  if (g.order() != 20) throw GroupError("F20 closure has wrong order");
  int ia = -1, ib = -1;
  for (int x = 0; x < g.order(); ++x) {
    if (g.permutations()[x] == a) ia = x;
    if (g.permutations()[x] == b) ib = x;
  }
  if (ia < 0 || ib < 0 || g.power(ia, 5) != 0 || g.power(ib, 4) != 0 ||
      g.op(ib, ia) != g.op(g.power(ia, 2), ib))
    throw GroupError("F20 presentation relations violated");
  return g;
}

inline bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// E<n> with n = p^q: elementary abelian, the direct power of C_p.
inline Group elementary_abelian(int n, std::string name, std::size_t cap) {
  int p = 0;
  for (int d = 2; d <= n; ++d)
    if (n % d == 0) { p = d; break; }
  if (p == 0 || !is_prime(p)) throw UnknownSpec(name);
  int rest = n;
  while (rest % p == 0) rest /= p;
  if (rest != 1) throw UnknownSpec(name);  // not a prime power

  Group g = cyclic(p, "C" + std::to_string(p), cap);
  Group acc = g;
  while (acc.order() < n) acc = Group::direct_product(acc, g, "", cap);
  acc.rename(std::move(name));
  return acc;
}

inline std::string to_upper(const std::string& s) {
  std::string out = s;
  for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

inline int parse_int(const std::string& s, const std::string& whole) {
  if (s.empty()) throw UnknownSpec(whole);
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) throw UnknownSpec(whole);
  try {
    return std::stoi(s);
  } catch (const std::exception&) {
    throw UnknownSpec(whole);
  }
}

inline Group make_atom(const std::string& atom, const std::string& whole,
                       std::size_t cap) {
  if (atom.size() < 2) throw UnknownSpec(whole);
  const char head = atom[0];
  const std::string tail = atom.substr(1);
  switch (head) {
    case 'C': {
      int n = parse_int(tail, whole);
      if (n < 1) throw UnknownSpec(whole);
      return cyclic(n, atom, cap);
    }
    case 'D': {
      int n = parse_int(tail, whole);
      if (n < 1) throw UnknownSpec(whole);
      return dihedral(n, atom, cap);
    }
    case 'S': {
      int n = parse_int(tail, whole);
      if (n < 1 || n > 6) throw UnknownSpec(whole);
      return symmetric(n, atom, cap);
    }
    case 'A': {
      int n = parse_int(tail, whole);
      if (n < 1 || n > 6) throw UnknownSpec(whole);
      return alternating(n, atom, cap);
    }
    case 'Q': {
      if (tail != "8") throw UnknownSpec(whole);
      return quaternion8(atom, cap);
    }
    case 'F': {
      if (tail != "20") throw UnknownSpec(whole);
      return frobenius20(atom, cap);
    }
    case 'E': {
      int n = parse_int(tail, whole);
      if (n < 2) throw UnknownSpec(whole);
      return elementary_abelian(n, atom, cap);
    }
    default: throw UnknownSpec(whole);
  }
}

}  // namespace detail

// Group-spec grammar, case-insensitive: Cn | Dn (order 2n) | Sn | An
// (n <= 6) | Q8 | F20 | E<p^q>, with direct products joined by "x"
// ("C3xC3", "S3xC2"). The cyclic group C1 also parses as the order check
// requires n >= 1.
inline Group make(const std::string& spec, std::size_t cap = kDefaultOrderCap) {
  const std::string canon = detail::to_upper(spec);
  if (canon.empty()) throw UnknownSpec(spec);

  std::vector<std::string> atoms;
  std::string cur;
  for (char c : canon) {
    if (c == 'X') {
      atoms.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  atoms.push_back(cur);

  Group acc = detail::make_atom(atoms[0], spec, cap);
  std::string name = atoms[0];
  for (std::size_t i = 1; i < atoms.size(); ++i) {
    Group next = detail::make_atom(atoms[i], spec, cap);
    name += "x" + atoms[i];
    acc = Group::direct_product(acc, next, name, cap);
  }
  acc.rename(name);
  return acc;
}

// Deterministic catalog of named small groups: cyclics, the named groups,
// elementary abelian squares, dihedrals, then all pairwise direct products
// of those base entries, deduplicated by isomorphism (first constructed
// wins). Extra entries (e.g. loaded from files) are merged at the end
// under the same dedup rule.
inline std::vector<CatalogEntry> scan_catalog(
    int max_order, const std::vector<CatalogEntry>& extra = {},
    std::size_t cap = kDefaultOrderCap) {
  std::vector<CatalogEntry> entries;

  auto add = [&](CatalogEntry e) -> bool {
    if (e.group.order() > max_order) return false;
    for (const auto& prev : entries)
      if (prev.group.order() == e.group.order() &&
          are_isomorphic(prev.group, e.group))
        return false;
    entries.push_back(std::move(e));
    return true;
  };

  std::vector<std::string> base_names;
  for (int n = 1; n <= max_order; ++n) base_names.push_back("C" + std::to_string(n));
  for (const char* s : {"S3", "S4", "A4", "A5", "Q8", "F20",
                        "C2xC2", "C3xC3", "C5xC5", "C7xC7"})
    base_names.push_back(s);
  for (int n = 3; 2 * n <= max_order; ++n) base_names.push_back("D" + std::to_string(n));

  // Base families. Products are formed over the deduplicated base (the
  // first base_count entries) so isomorphic factors do not reappear.
  for (const auto& name : base_names) {
    Group g = make(name, cap);
    if (g.order() > max_order) continue;
    add(CatalogEntry{g.name(), g, "make(" + name + ")"});
  }
  const std::size_t base_count = entries.size();

  for (std::size_t i = 0; i < base_count; ++i) {
    for (std::size_t j = i; j < base_count; ++j) {
      const CatalogEntry& a = entries[i];
      const CatalogEntry& b = entries[j];
      if (static_cast<long long>(a.group.order()) * b.group.order() > max_order)
        continue;
      const std::string name = a.name + "x" + b.name;
      Group prod = Group::direct_product(a.group, b.group, name, cap);
      add(CatalogEntry{name, std::move(prod),
                       "direct_product(" + a.name + "," + b.name + ")"});
    }
  }

  for (const auto& e : extra) {
    if (e.group.order() > max_order) continue;
    add(e);
  }

  return entries;
}

}  // namespace subcover
