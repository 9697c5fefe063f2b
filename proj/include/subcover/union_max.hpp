#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "subcover/catalog.hpp"
#include "subcover/covering.hpp"
#include "subcover/element_set.hpp"
#include "subcover/errors.hpp"
#include "subcover/group.hpp"
#include "subcover/rational.hpp"
#include "subcover/subgroups.hpp"

namespace subcover {

// A maximum k-fold union of proper subgroups: mu_k(G) together with the
// subgroups attaining it. The id list has min(k, #proper) entries; when
// fewer maximal subgroups than k exist, the optimum uses all of them and
// the list is padded with the smallest unused proper ids (which lie
// inside the chosen maximals, leaving the union unchanged).
struct UnionWitness {
  int k = 0;                      // as requested
  std::vector<int> subgroup_ids;  // lattice ids, ascending
  int union_size = 0;
  Rational ratio;                 // union_size / |G|
  std::vector<Rational> ratios;   // |H_i| / |G| per id, ascending
};

// Right side of (*): sum(n_i) - n_d * (sum(n_i) - n_d) with n_d the
// designated ratio. The canonical form designates the last entry; callers
// sort ascending so that is the largest.
inline Rational star_bound_designated(const std::vector<Rational>& ratios,
                                      std::size_t designated) {
  Rational sum(0);
  for (const Rational& r : ratios) sum = sum + r;
  const Rational& nd = ratios.at(designated);
  return sum - nd * (sum - nd);
}

inline Rational star_bound(const std::vector<Rational>& ratios) {
  if (ratios.empty()) return Rational(0);
  return star_bound_designated(ratios, ratios.size() - 1);
}

struct StarCheck {
  Rational union_ratio;
  Rational bound;
  bool holds = false;
};

// Evaluates (*) for the given proper subgroups: union ratio against the
// bound with the largest ratio designated.
inline StarCheck check_star_inequality(const Group& g,
                                       const SubgroupLattice& lattice,
                                       const std::vector<int>& ids) {
  ElementSet u(g.order());
  u.set(0);
  std::vector<Rational> ratios;
  for (int id : ids) {
    u = u.unite(lattice.subgroups[id].members);
    ratios.emplace_back(lattice.subgroups[id].order, g.order());
  }
  std::sort(ratios.begin(), ratios.end());
  StarCheck c;
  c.union_ratio = ids.empty() ? Rational(0) : Rational(u.size(), g.order());
  c.bound = star_bound(ratios);
  c.holds = !(c.bound < c.union_ratio);
  return c;
}

namespace detail {

// Exact mu_k over the maximal subgroups, in two phases: the optimal union
// size first (largest subgroups first), then the lexicographically least
// id list attaining it (id order, take-before-skip). Both phases prune
// with an identity-aware bound: every subgroup after the first can add at
// most its size minus one, since all of them share the identity.
class MuSearch {
 public:
  MuSearch(const SubgroupLattice& lattice, int n) : n_(n) {
    for (int id : lattice.maximal_ids) {
      ids_.push_back(id);
      masks_.push_back(&lattice.subgroups[id].members);
      sizes_.push_back(lattice.subgroups[id].order);
    }
  }

  int best_value(int kk) {
    kk_ = kk;
    order_.resize(ids_.size());
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(),
                     [&](int a, int b) { return sizes_[a] > sizes_[b]; });
    build_suffix_top();
    best_ = 0;
    ElementSet u(n_);
    dfs_value(0, 0, u);
    return best_;
  }

  std::vector<int> lex_witness(int kk, int target) {
    kk_ = kk;
    order_.resize(ids_.size());
    std::iota(order_.begin(), order_.end(), 0);
    build_suffix_top();
    target_ = target;
    found_ = false;
    sel_.clear();
    ElementSet u(n_);
    dfs_lex(0, 0, u);
    if (!found_) throw GroupError("mu_k witness search missed its own optimum");
    std::vector<int> out;
    out.reserve(best_sel_.size());
    for (int pos : best_sel_) out.push_back(ids_[pos]);
    return out;
  }

 private:
  void build_suffix_top() {
    const int m = static_cast<int>(order_.size());
    top_.assign(m + 1, std::vector<int>(kk_ + 1, 0));
    std::vector<int> suffix;  // sizes at positions >= pos, descending
    for (int pos = m - 1; pos >= 0; --pos) {
      const int s = sizes_[order_[pos]];
      suffix.insert(
          std::upper_bound(suffix.begin(), suffix.end(), s, std::greater<int>()),
          s);
      int acc = 0;
      for (int r = 1; r <= kk_; ++r) {
        if (r <= static_cast<int>(suffix.size())) acc += suffix[r - 1];
        top_[pos][r] = acc;
      }
    }
  }

  int gain_bound(int pos, int chosen) const {
    const int r = kk_ - chosen;
    return top_[pos][r] - (chosen == 0 ? r - 1 : r);
  }

  void dfs_value(int pos, int chosen, const ElementSet& u) {
    if (chosen == kk_) {
      best_ = std::max(best_, u.size());
      return;
    }
    if (static_cast<int>(order_.size()) - pos < kk_ - chosen) return;
    if (u.size() + gain_bound(pos, chosen) <= best_) return;
    dfs_value(pos + 1, chosen + 1, u.unite(*masks_[order_[pos]]));
    dfs_value(pos + 1, chosen, u);
  }

  void dfs_lex(int pos, int chosen, const ElementSet& u) {
    if (found_) return;
    if (chosen == kk_) {
      if (u.size() == target_) {
        best_sel_ = sel_;
        found_ = true;
      }
      return;
    }
    if (static_cast<int>(order_.size()) - pos < kk_ - chosen) return;
    if (u.size() + gain_bound(pos, chosen) < target_) return;
    sel_.push_back(order_[pos]);
    dfs_lex(pos + 1, chosen + 1, u.unite(*masks_[order_[pos]]));
    sel_.pop_back();
    dfs_lex(pos + 1, chosen, u);
  }

  int n_;
  std::vector<int> ids_;
  std::vector<const ElementSet*> masks_;
  std::vector<int> sizes_;
  std::vector<int> order_;  // positions into ids_, phase-specific order
  std::vector<std::vector<int>> top_;
  int kk_ = 0;
  int best_ = 0;
  int target_ = 0;
  bool found_ = false;
  std::vector<int> sel_;
  std::vector<int> best_sel_;
};

}  // namespace detail

// Exact mu_k(G). The search runs over maximal subgroups only: replacing
// any proper subgroup with a maximal one containing it never shrinks the
// union, and a set of fewer distinct maximals extends without loss, so
// the optimum over min(k, #maximal) distinct maximals is exact.
// pre: k >= 1
inline UnionWitness mu_k(const Group& g, const SubgroupLattice& lattice, int k) {
  const int n = g.order();
  UnionWitness w;
  w.k = k;

  const int propers = lattice.proper_count();
  const int take = std::min(k, propers);
  const int m = static_cast<int>(lattice.maximal_ids.size());
  const int kk = std::min(k, m);

  std::vector<int> core;
  if (kk > 0) {
    if (kk == m) {
      core = lattice.maximal_ids;
    } else {
      detail::MuSearch search(lattice, n);
      const int best = search.best_value(kk);
      core = search.lex_witness(kk, best);
    }
    ElementSet u(n);
    for (int id : core) u = u.unite(lattice.subgroups[id].members);
    w.union_size = u.size();
  }

  std::vector<char> used(lattice.subgroups.size(), 0);
  for (int id : core) used[id] = 1;
  for (int id = 0; static_cast<int>(core.size()) < take; ++id)
    if (!used[id]) {
      core.push_back(id);
      used[id] = 1;
    }

  std::sort(core.begin(), core.end());
  w.subgroup_ids = std::move(core);
  w.ratio = Rational(w.union_size, n);
  for (int id : w.subgroup_ids)
    w.ratios.emplace_back(lattice.subgroups[id].order, n);
  return w;
}

// ---------------------------------------------------------------------
// Equality predicates from the k = 2 and k = 3 analyses. Tuples are
// sorted by subgroup order ascending before the role-sensitive checks,
// matching the convention n_1 <= ... <= n_k.

inline bool c2_proof_predicate(const Group& g, const SubgroupLattice& lat,
                               int id1, int id2) {
  if (id1 == id2) return false;
  const Subgroup& h1 = lat.subgroups[id1];
  const Subgroup& h2 = lat.subgroups[id2];
  return 2 * h1.order == g.order() && 2 * h2.order == g.order() &&
         setwise_product_size(g, h1, h2) == g.order();
}

inline bool c2_index_predicate(const Group& g, const SubgroupLattice& lat,
                               int id1, int id2) {
  return id1 != id2 && lat.is_maximal[id1] && lat.is_maximal[id2] &&
         2 * lat.subgroups[id1].order == g.order() &&
         2 * lat.subgroups[id2].order == g.order();
}

namespace detail {

inline std::array<int, 3> sorted_by_order(const SubgroupLattice& lat,
                                          std::array<int, 3> ids) {
  std::sort(ids.begin(), ids.end(), [&](int a, int b) {
    return lat.subgroups[a].order < lat.subgroups[b].order;
  });
  return ids;
}

inline bool distinct3(const std::array<int, 3>& ids) {
  return ids[0] != ids[1] && ids[1] != ids[2] && ids[0] != ids[2];
}

}  // namespace detail

// Equality condition in the proof of the 5/6 bound: n1 = n2 = 1/3,
// n3 = 1/2, H1H3 = H2H3 = G, and H1 n H2 <= H3.
inline bool c3_proof_predicate(const Group& g, const SubgroupLattice& lat,
                               std::array<int, 3> ids) {
  ids = detail::sorted_by_order(lat, ids);
  if (!detail::distinct3(ids)) return false;
  const Subgroup& h1 = lat.subgroups[ids[0]];
  const Subgroup& h2 = lat.subgroups[ids[1]];
  const Subgroup& h3 = lat.subgroups[ids[2]];
  return 3 * h1.order == g.order() && 3 * h2.order == g.order() &&
         2 * h3.order == g.order() &&
         setwise_product_size(g, h1, h3) == g.order() &&
         setwise_product_size(g, h2, h3) == g.order() &&
         h1.members.intersect(h2.members).subset_of(h3.members);
}

// Headline form of the same condition: distinct maximal subgroups, two of
// index 3 and one of index 2.
inline bool c3_index_predicate(const Group& g, const SubgroupLattice& lat,
                               std::array<int, 3> ids) {
  ids = detail::sorted_by_order(lat, ids);
  if (!detail::distinct3(ids)) return false;
  for (int id : ids)
    if (!lat.is_maximal[id]) return false;
  return 3 * lat.subgroups[ids[0]].order == g.order() &&
         3 * lat.subgroups[ids[1]].order == g.order() &&
         2 * lat.subgroups[ids[2]].order == g.order();
}

// Odd-order analogues for the 7/9 bound: all three ratios 1/3 in the
// proof form; distinct maximal subgroups of index 3 in the headline form.
inline bool c3odd_proof_predicate(const Group& g, const SubgroupLattice& lat,
                                  std::array<int, 3> ids) {
  ids = detail::sorted_by_order(lat, ids);
  if (!detail::distinct3(ids)) return false;
  const Subgroup& h1 = lat.subgroups[ids[0]];
  const Subgroup& h2 = lat.subgroups[ids[1]];
  const Subgroup& h3 = lat.subgroups[ids[2]];
  return 3 * h1.order == g.order() && 3 * h2.order == g.order() &&
         3 * h3.order == g.order() &&
         setwise_product_size(g, h1, h3) == g.order() &&
         setwise_product_size(g, h2, h3) == g.order() &&
         h1.members.intersect(h2.members).subset_of(h3.members);
}

inline bool c3odd_index_predicate(const Group& g, const SubgroupLattice& lat,
                                  std::array<int, 3> ids) {
  if (!detail::distinct3(ids)) return false;
  for (int id : ids)
    if (!lat.is_maximal[id] || 3 * lat.subgroups[id].order != g.order())
      return false;
  return true;
}

// ---------------------------------------------------------------------
// Verdicts: each verifies one bound on the mu witness and evaluates every
// formulation of its equality condition; forms_agree records that they
// all coincided with the observed equality.

struct C2Verdict {
  UnionWitness witness;
  bool bound_holds = false;  // mu_2 / |G| <= 3/4
  bool equality = false;
  bool proof_form = false;  // witness pair: n1 = n2 = 1/2 and H1H2 = G
  bool index_form = false;  // witness pair: distinct maximal of index 2
  bool group_form = false;  // G has at least two subgroups of index 2
  bool forms_agree = false;
};

inline C2Verdict verify_c2(const Group& g, const SubgroupLattice& lat) {
  C2Verdict v;
  v.witness = mu_k(g, lat, 2);
  const Rational bound(3, 4);
  v.bound_holds = !(bound < v.witness.ratio);
  v.equality = v.witness.ratio == bound;
  if (v.witness.subgroup_ids.size() == 2) {
    const int a = v.witness.subgroup_ids[0], b = v.witness.subgroup_ids[1];
    v.proof_form = c2_proof_predicate(g, lat, a, b);
    v.index_form = c2_index_predicate(g, lat, a, b);
  }
  v.group_form = subgroup_ids_of_index(g, lat, 2).size() >= 2;
  v.forms_agree = v.equality == v.proof_form && v.equality == v.index_form &&
                  v.equality == v.group_form;
  return v;
}

struct C3Verdict {
  CoverResult sigma;
  bool applicable = false;  // sigma(G) != 3 (uncoverable qualifies)
  UnionWitness witness;
  bool bound_holds = false;  // mu_3 / |G| <= 5/6
  bool equality = false;
  bool proof_form = false;
  bool index_form = false;
  bool forms_agree = false;  // required only when applicable
};

inline C3Verdict verify_c3(const Group& g, const SubgroupLattice& lat) {
  C3Verdict v;
  v.sigma = sigma_exact(g, lat);
  v.applicable = v.sigma.uncoverable || v.sigma.sigma != 3;
  v.witness = mu_k(g, lat, 3);
  const Rational bound(5, 6);
  v.bound_holds = !(bound < v.witness.ratio);
  v.equality = v.witness.ratio == bound;
  if (v.witness.subgroup_ids.size() == 3) {
    const std::array<int, 3> ids{v.witness.subgroup_ids[0],
                                 v.witness.subgroup_ids[1],
                                 v.witness.subgroup_ids[2]};
    v.proof_form = c3_proof_predicate(g, lat, ids);
    v.index_form = c3_index_predicate(g, lat, ids);
  }
  v.forms_agree = v.equality == v.proof_form && v.equality == v.index_form;
  return v;
}

struct C3OddVerdict {
  CoverResult sigma;
  bool applicable = false;  // |G| odd and sigma(G) != 3
  UnionWitness witness;
  bool bound_holds = false;  // mu_3 / |G| <= 7/9
  bool equality = false;
  bool proof_form = false;
  bool index_form = false;
  bool forms_agree = false;
};

inline C3OddVerdict verify_c3_odd(const Group& g, const SubgroupLattice& lat) {
  C3OddVerdict v;
  v.sigma = sigma_exact(g, lat);
  v.applicable =
      g.order() % 2 == 1 && (v.sigma.uncoverable || v.sigma.sigma != 3);
  v.witness = mu_k(g, lat, 3);
  const Rational bound(7, 9);
  v.bound_holds = !(bound < v.witness.ratio);
  v.equality = v.witness.ratio == bound;
  if (v.witness.subgroup_ids.size() == 3) {
    const std::array<int, 3> ids{v.witness.subgroup_ids[0],
                                 v.witness.subgroup_ids[1],
                                 v.witness.subgroup_ids[2]};
    v.proof_form = c3odd_proof_predicate(g, lat, ids);
    v.index_form = c3odd_index_predicate(g, lat, ids);
  }
  v.forms_agree = v.equality == v.proof_form && v.equality == v.index_form;
  return v;
}

// ---------------------------------------------------------------------
// Conjecture probe: with sigma(G) = k+1, is there a maximal subgroup M
// no larger than any witness subgroup that completes the witness union
// to all of G?

struct ConjectureReport {
  std::string group;
  int k = 0;
  CoverResult sigma;
  UnionWitness witness;
  bool sigma_is_k_plus_1 = false;
  int completer_id = -1;  // least such maximal id, -1 if none
  bool satisfied = false;
};

inline ConjectureReport conjecture_probe(const Group& g,
                                         const SubgroupLattice& lattice,
                                         int k) {
  ConjectureReport r;
  r.group = g.name();
  r.k = k;
  r.sigma = sigma_exact(g, lattice);
  r.witness = mu_k(g, lattice, k);
  r.sigma_is_k_plus_1 = !r.sigma.uncoverable && r.sigma.sigma == k + 1;

  const int n = g.order();
  ElementSet u(n);
  u.set(0);
  int min_order = n;
  for (int id : r.witness.subgroup_ids) {
    u = u.unite(lattice.subgroups[id].members);
    min_order = std::min(min_order, lattice.subgroups[id].order);
  }
  for (int id : lattice.maximal_ids) {
    const Subgroup& msub = lattice.subgroups[id];
    if (msub.order > min_order) continue;
    if (u.unite(msub.members).size() == n) {
      r.completer_id = id;
      break;
    }
  }
  r.satisfied = r.sigma_is_k_plus_1 && r.completer_id >= 0;
  return r;
}

// ---------------------------------------------------------------------
// Empirical c_k scan over a catalog: for every group with sigma(G) > k
// (uncoverable included), record the mu_k witness; the report's max ratio
// is the empirical candidate for c_k.

struct ScanRow {
  std::string group;
  int order = 0;
  CoverResult sigma;
  UnionWitness witness;
};

struct ScanReport {
  int k = 0;
  std::vector<ScanRow> rows;  // sorted by group name
  Rational max_ratio;         // 0 when no group qualifies
  std::string max_group;      // first attaining group in row order
};

inline ScanReport empirical_ck_scan(const std::vector<CatalogEntry>& entries,
                                    int k, int jobs = 1,
                                    std::size_t lattice_cap = kDefaultLatticeCap) {
  std::vector<std::optional<ScanRow>> slots(entries.size());
  std::atomic<std::size_t> next{0};

  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= entries.size()) return;
      const Group& g = entries[i].group;
      const SubgroupLattice lattice = all_subgroups(g, lattice_cap);
      CoverResult sigma = sigma_exact(g, lattice);
      if (!sigma.uncoverable && sigma.sigma <= k) continue;
      ScanRow row;
      row.group = entries[i].name;
      row.order = g.order();
      row.sigma = std::move(sigma);
      row.witness = mu_k(g, lattice, k);
      slots[i] = std::move(row);
    }
  };

  const int nthreads = std::max(1, jobs);
  if (nthreads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  ScanReport rep;
  rep.k = k;
  for (auto& s : slots)
    if (s) rep.rows.push_back(std::move(*s));
  std::sort(rep.rows.begin(), rep.rows.end(),
            [](const ScanRow& a, const ScanRow& b) { return a.group < b.group; });
  rep.max_ratio = Rational(0);
  for (const auto& row : rep.rows)
    if (rep.max_ratio < row.witness.ratio) {
      rep.max_ratio = row.witness.ratio;
      rep.max_group = row.group;
    }
  return rep;
}

}  // namespace subcover
