#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "subcover/catalog.hpp"
#include "subcover/element_set.hpp"
#include "subcover/errors.hpp"
#include "subcover/group.hpp"
#include "subcover/subgroups.hpp"

namespace subcover {

// sigma(G): the least number of proper subgroups whose union is G, or
// Uncoverable when no such cover exists (exactly the cyclic groups).
struct CoverResult {
  bool uncoverable = false;
  int sigma = 0;                 // meaningful iff !uncoverable
  std::vector<int> certificate;  // lattice ids of a minimum cover, ascending

  std::string str() const {
    return uncoverable ? "Uncoverable" : std::to_string(sigma);
  }
};

enum class SigmaValue { Three, Four, Five, Six, OtherOrUnknown, Uncoverable };

inline std::string to_string(SigmaValue v) {
  switch (v) {
    case SigmaValue::Three: return "3";
    case SigmaValue::Four: return "4";
    case SigmaValue::Five: return "5";
    case SigmaValue::Six: return "6";
    case SigmaValue::OtherOrUnknown: return "OtherOrUnknown";
    case SigmaValue::Uncoverable: return "Uncoverable";
  }
  return "?";
}

struct SigmaClass {
  SigmaValue value = SigmaValue::OtherOrUnknown;
  std::string reason;
  // The fired clause has two formulations (subgroup counts vs quotient
  // fingerprint); true when both gave the same answer. Always true for
  // single-form clauses.
  bool forms_agree = true;
};

namespace detail {

// Branch-and-bound minimum set cover over the maximal subgroups. Branches
// on an uncovered element contained in the fewest maximals (ties: lowest
// element index); candidates are tried largest subgroup first (ties:
// lowest lattice id). Any cover is refinable to one by maximals, so the
// optimum over maximals is sigma(G).
class SigmaSearch {
 public:
  SigmaSearch(const Group& g, const SubgroupLattice& lattice)
      : n_(g.order()), lattice_(lattice) {
    for (int id : lattice.maximal_ids) masks_.push_back(&lattice.subgroups[id].members);
    containing_.resize(n_);
    for (std::size_t pos = 0; pos < masks_.size(); ++pos)
      for (int e : masks_[pos]->members()) containing_[e].push_back(static_cast<int>(pos));
    // Largest subgroup first; positions ascend with lattice id, so the
    // position itself is the deterministic tie-break.
    for (auto& list : containing_)
      std::stable_sort(list.begin(), list.end(), [&](int a, int b) {
        return masks_[a]->size() > masks_[b]->size();
      });
  }

  bool coverable() const {
    for (int x = 1; x < n_; ++x)
      if (containing_[x].empty()) return false;
    return n_ > 1;
  }

  // pre: coverable()
  CoverResult run() {
    best_ = static_cast<int>(masks_.size()) + 1;
    ElementSet covered(n_);
    covered.set(0);
    chosen_.clear();
    dfs(covered, 0);
    CoverResult res;
    res.sigma = best_;
    res.certificate = best_cert_;
    for (int& pos : res.certificate) pos = lattice_.maximal_ids[pos];
    std::sort(res.certificate.begin(), res.certificate.end());
    return res;
  }

 private:
  void dfs(const ElementSet& covered, int count) {
    if (covered.size() == n_) {
      if (count < best_) {
        best_ = count;
        best_cert_ = chosen_;
      }
      return;
    }
    if (count + 1 >= best_) return;
    int branch = -1;
    std::size_t fewest = masks_.size() + 1;
    for (int x = 0; x < n_; ++x) {
      if (covered.test(x)) continue;
      if (containing_[x].size() < fewest) {
        fewest = containing_[x].size();
        branch = x;
      }
    }
    for (int pos : containing_[branch]) {
      chosen_.push_back(pos);
      dfs(covered.unite(*masks_[pos]), count + 1);
      chosen_.pop_back();
    }
  }

  int n_;
  const SubgroupLattice& lattice_;
  std::vector<const ElementSet*> masks_;
  std::vector<std::vector<int>> containing_;
  int best_ = 0;
  std::vector<int> chosen_;
  std::vector<int> best_cert_;
};

inline const Group& fingerprint_group(const char* spec) {
  static const Group klein = make("C2xC2");
  static const Group c3c3 = make("C3xC3");
  static const Group s3 = make("S3");
  static const Group a4 = make("A4");
  static const Group c5c5 = make("C5xC5");
  static const Group d5 = make("D5");
  static const Group f20 = make("F20");
  const std::string s = spec;
  if (s == "C2xC2") return klein;
  if (s == "C3xC3") return c3c3;
  if (s == "S3") return s3;
  if (s == "A4") return a4;
  if (s == "C5xC5") return c5c5;
  if (s == "D5") return d5;
  return f20;
}

}  // namespace detail

// Exact sigma by branch-and-bound over the maximal subgroups. Detects
// uncoverable groups (some element lies in no proper subgroup) up front.
inline CoverResult sigma_exact(const Group& g, const SubgroupLattice& lattice) {
  detail::SigmaSearch search(g, lattice);
  if (!search.coverable()) return CoverResult{true, 0, {}};
  return search.run();
}

// Structural classifier for sigma following the known characterisations,
// in precedence order:
//   - cyclic groups are uncoverable;
//   - sigma = 3  iff at least two subgroups of index 2
//                iff a quotient isomorphic to C2xC2;
//   - sigma = 4  iff (not 3 and) at least two subgroups of index 3
//                iff a quotient isomorphic to C3xC3 or S3;
//   - sigma = 5  iff (not 3,4 and) a maximal subgroup of index 4; the
//                companion fingerprint (quotient A4) is evaluated and
//                recorded in forms_agree but the index form decides;
//   - sigma = 6  iff (not 3,4,5 and) a quotient isomorphic to C5xC5, D5,
//                or F20;
//   - otherwise OtherOrUnknown (sigma is some other value).
// The two-form clauses for 3 and 4 throw ClauseMismatch if the forms ever
// disagree; that would falsify the characterisation itself.
inline SigmaClass sigma_classifier(const Group& g, const SubgroupLattice& lattice) {
  if (is_cyclic(g))
    return SigmaClass{SigmaValue::Uncoverable, "cyclic group", true};

  const bool idx2 = subgroup_ids_of_index(g, lattice, 2).size() >= 2;
  const bool quo2 =
      has_quotient_isomorphic(g, lattice, detail::fingerprint_group("C2xC2"));
  if (idx2 != quo2) throw ClauseMismatch("sigma=3: index-2 count vs C2xC2 quotient");
  if (idx2)
    return SigmaClass{SigmaValue::Three, "at least two subgroups of index 2", true};

  const bool idx3 = subgroup_ids_of_index(g, lattice, 3).size() >= 2;
  const bool quo3 =
      has_quotient_isomorphic(g, lattice, detail::fingerprint_group("C3xC3")) ||
      has_quotient_isomorphic(g, lattice, detail::fingerprint_group("S3"));
  if (idx3 != quo3)
    throw ClauseMismatch("sigma=4: index-3 count vs C3xC3/S3 quotient");
  if (idx3)
    return SigmaClass{SigmaValue::Four, "at least two subgroups of index 3", true};

  bool idx4_maximal = false;
  for (int id : subgroup_ids_of_index(g, lattice, 4))
    if (lattice.is_maximal[id]) idx4_maximal = true;
  const bool quo4 =
      has_quotient_isomorphic(g, lattice, detail::fingerprint_group("A4"));
  if (idx4_maximal)
    return SigmaClass{SigmaValue::Five, "maximal subgroup of index 4",
                      idx4_maximal == quo4};

  const bool quo5 =
      has_quotient_isomorphic(g, lattice, detail::fingerprint_group("C5xC5")) ||
      has_quotient_isomorphic(g, lattice, detail::fingerprint_group("D5")) ||
      has_quotient_isomorphic(g, lattice, detail::fingerprint_group("F20"));
  if (quo5)
    return SigmaClass{SigmaValue::Six,
                      "quotient isomorphic to C5xC5, D5, or F20", true};

  return SigmaClass{SigmaValue::OtherOrUnknown, "no small-sigma clause applies",
                    idx4_maximal == quo4};
}

// Consistency of the exact search with the classifier: a classified value
// must match exactly; OtherOrUnknown requires the exact value to lie
// outside {3,4,5,6}; Uncoverable must coincide.
inline bool sigma_consistent(const CoverResult& exact, const SigmaClass& cls) {
  switch (cls.value) {
    case SigmaValue::Uncoverable: return exact.uncoverable;
    case SigmaValue::Three: return !exact.uncoverable && exact.sigma == 3;
    case SigmaValue::Four: return !exact.uncoverable && exact.sigma == 4;
    case SigmaValue::Five: return !exact.uncoverable && exact.sigma == 5;
    case SigmaValue::Six: return !exact.uncoverable && exact.sigma == 6;
    case SigmaValue::OtherOrUnknown:
      return !exact.uncoverable && (exact.sigma < 3 || exact.sigma > 6);
  }
  return false;
}

inline bool sigma_cross_check(const Group& g, const SubgroupLattice& lattice) {
  return sigma_consistent(sigma_exact(g, lattice), sigma_classifier(g, lattice));
}

}  // namespace subcover
