#pragma once

#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "spanloc/errors.hpp"

namespace spanloc {

struct Morphism {
  std::string name;
  int dom = -1;
  int cod = -1;
};

/// A violated axiom together with a concrete witness.
struct Violation {
  std::string clause;
  std::string witness;
};

/// A finite category: named objects and morphisms with a total composition
/// table on composable pairs. Identities are generated automatically under
/// the reserved names id_<object>; user code never adds them.
///
/// Build with add_object / add_morphism / set_composite, then call finalize()
/// before using lookups. All data is immutable after finalize.
class FinCategory {
 public:
  int add_object(const std::string& name);
  int add_morphism(const std::string& name, int dom, int cod);
  // g after f, i.e. composite = g ∘ f. Requires cod(f) == dom(g).
  void set_composite(int g, int f, int composite);
  void finalize();

  int num_objects() const { return static_cast<int>(objects_.size()); }
  int num_morphisms() const { return static_cast<int>(morphisms_.size()); }
  const std::string& object_name(int o) const { return objects_[o]; }
  const std::string& morphism_name(int m) const { return morphisms_[m].name; }
  int object_index(const std::string& name) const;    // -1 if absent
  int morphism_index(const std::string& name) const;  // -1 if absent
  int dom(int m) const { return morphisms_[m].dom; }
  int cod(int m) const { return morphisms_[m].cod; }
  int identity(int o) const { return identity_[o]; }
  bool is_identity(int m) const;

  // Composite g ∘ f, or -1 when the pair is not composable or the table has
  // no entry for it.
  int compose(int g, int f) const;

  // Derived categories (span levels, fiber products) whose composites follow
  // componentwise from stored arrow data can resolve composition on demand
  // instead of materializing a quadratic table. Consulted on table misses.
  void set_compose_fallback(std::function<int(int, int)> fn) {
    compose_fallback_ = std::move(fn);
  }
  const std::vector<int>& hom(int a, int b) const;

  bool is_iso(int m) const { return inverse_[m] >= 0; }
  int inverse(int m) const { return inverse_[m]; }
  bool has_iso(int a, int b) const;

  bool finalized() const { return finalized_; }

  /// Exhaustive axiom scan: name uniqueness, dom/cod sanity, identity laws,
  /// totality of composition on composable pairs, associativity.
  std::vector<Violation> validate() const;

 private:
  std::vector<std::string> objects_;
  std::vector<Morphism> morphisms_;
  std::vector<int> identity_;
  std::unordered_map<long long, int> compose_;
  std::function<int(int, int)> compose_fallback_;
  std::unordered_map<std::string, int> object_index_;
  std::unordered_map<std::string, int> morphism_index_;
  // Sparse: large derived categories have quadratically many object pairs.
  std::unordered_map<long long, std::vector<int>> hom_;
  std::vector<int> inverse_;
  bool finalized_ = false;

  static long long pair_key(int g, int f) {
    return (static_cast<long long>(g) << 32) | static_cast<unsigned int>(f);
  }
};

/// A functor between finite categories, stored as index maps.
struct FinFunctor {
  const FinCategory* source = nullptr;
  const FinCategory* target = nullptr;
  std::vector<int> object_map;
  std::vector<int> morphism_map;

  int on_object(int o) const { return object_map[o]; }
  int on_morphism(int m) const { return morphism_map[m]; }
  std::vector<Violation> validate() const;
};

FinFunctor identity_functor(const FinCategory& c);
FinFunctor compose_functors(const FinFunctor& g, const FinFunctor& f);

/// Components of a natural transformation F -> G, indexed by source objects.
struct NatTransformation {
  std::vector<int> components;
};

bool is_natural(const FinFunctor& f, const FinFunctor& g,
                const std::vector<int>& components);

struct PullbackCone {
  int apex = -1;
  int leg1 = -1;  // to dom(f)
  int leg2 = -1;  // to dom(g)
};

/// Brute-force pullback of the cospan (f, g): enumerates all cones and checks
/// universality against every test cone. Among universal cones returns the
/// lexicographically minimal (apex, leg1, leg2). Throws CospanMismatch when
/// cod(f) != cod(g).
std::optional<PullbackCone> pullback(const FinCategory& c, int f, int g);

/// True when the given cone is universal over (f, g).
bool is_pullback_cone(const FinCategory& c, int f, int g, const PullbackCone& cone);

/// The unique mediating morphism from `test` into the universal cone `uni`
/// over (f, g), or -1 if none exists in hom(test.apex, uni.apex).
int mediating_morphism(const FinCategory& c, const PullbackCone& uni,
                       const PullbackCone& test);

/// Memoizing wrapper around pullback(); constructions that must agree on
/// their canonical pullback choice share one cache.
class PullbackCache {
 public:
  explicit PullbackCache(const FinCategory& c) : cat_(&c) {}
  const std::optional<PullbackCone>& get(int f, int g);
  const FinCategory& category() const { return *cat_; }

 private:
  const FinCategory* cat_;
  std::unordered_map<long long, std::optional<PullbackCone>> memo_;
};

/// All functors D -> C, complete and duplicate-free. The search-space
/// estimate |Ob C|^|Ob D| must not exceed the budget.
std::vector<FinFunctor> enumerate_functors(const FinCategory& d, const FinCategory& c,
                                           long long budget);

struct CheckResult {
  bool ok = false;
  std::string witness;
};

/// Fully faithful + essentially surjective, with a witness on failure.
CheckResult check_equivalence(const FinFunctor& f);

FinCategory opposite(const FinCategory& c);
FinFunctor opposite_functor(const FinFunctor& f, const FinCategory& src_op,
                            const FinCategory& tgt_op);

}  // namespace spanloc
