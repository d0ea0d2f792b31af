#pragma once

#include <map>
#include <string>
#include <vector>

#include "spanloc/relcat.hpp"

namespace spanloc {

/// A simplicial set truncated at dimension `dim`, stored dimensionwise with
/// explicit face and degeneracy tables.
struct TSSet {
  int dim = 0;
  std::vector<int> counts;  // simplices per dimension, size dim + 1
  // face[k][i][s]: i-th face of k-simplex s (1 <= k <= dim, 0 <= i <= k)
  std::vector<std::vector<std::vector<int>>> face;
  // degen[k][i][s]: i-th degeneracy of k-simplex s (0 <= k < dim, 0 <= i <= k)
  std::vector<std::vector<std::vector<int>>> degen;

  bool is_degenerate(int k, int s) const;
};

/// Exhaustive check of the simplicial identities on all stored simplices.
std::vector<Violation> validate_sset(const TSSet& x);

/// A levelwise map of truncated simplicial sets.
struct SSetMap {
  const TSSet* source = nullptr;
  const TSSet* target = nullptr;
  std::vector<std::vector<int>> level;  // level[k][s]

  int at(int k, int s) const { return level[k][s]; }
};

std::vector<Violation> validate_sset_map(const SSetMap& p);

SSetMap identity_map(const TSSet& x);

/// The nerve of a finite category together with the chain decoding of each
/// simplex: a k-simplex is [c0, m1, ..., mk] for a composable chain.
struct NerveData {
  TSSet x;
  std::vector<std::vector<std::vector<int>>> chains;  // chains[k][s]
  std::vector<std::map<std::vector<int>, int>> index;

  int simplex_index(int k, const std::vector<int>& chain) const;
  int vertex_index(int object) const;
  int edge_index(const FinCategory& c, int m) const;  // [dom m, m]
};

NerveData nerve(const FinCategory& c, int d);

/// The map of nerves induced by a functor. Both nerves must be truncated at
/// the same dimension.
SSetMap nerve_map(const FinFunctor& f, const NerveData& src, const NerveData& tgt);

TSSet standard_simplex(int n, int d);
TSSet boundary_simplex(int n, int d);
TSSet horn_simplex(int n, int l, int d);
TSSet terminal_sset(int d);

SSetMap to_terminal(const TSSet& x, const TSSet& terminal);

enum class HornKind { Inner, Left, Right, Kan };

struct HornResult {
  bool ok = false;
  std::string witness;
};

/// Every lifting problem (Λˡ[n] -> source, Δ[n] -> target) of the selected
/// kind with n <= d has a solution. The witness is the minimal unsolvable
/// problem in (n, base simplex, horn faces) order. Throws
/// DimensionBoundTooLow when d < 2 or either simplicial set is truncated
/// below d.
HornResult horn_lift_check(const SSetMap& p, HornKind kind, int d);

/// A functor to finite sets: per object a cardinality, per morphism a map.
struct SetFunctor {
  std::vector<int> size;                 // per object
  std::vector<std::vector<int>> action;  // per morphism
};

std::vector<Violation> validate_set_functor(const FinCategory& c, const SetFunctor& f);

/// The category of elements of a set-valued functor, with its discrete
/// opfibration to the base.
struct ElementsCategory {
  FinCategory cat;
  std::vector<std::pair<int, int>> objs;  // (base object, element)
  std::vector<int> proj_obj;
  std::vector<int> proj_mor;

  FinFunctor projection(const FinCategory& base) const;
};

ElementsCategory category_of_elements(const FinCategory& c, const SetFunctor& f);

/// Nerve of the category of elements with its projection; the output always
/// passes the left-fibration horn check.
struct GrothendieckData {
  ElementsCategory elements;
  NerveData total;
  NerveData base;

  SSetMap map() const;  // total -> base (built on demand; struct stays movable)
};

GrothendieckData grothendieck(const FinCategory& c, const SetFunctor& f, int d);

/// For every hypercover w, the base change of p over the edge w is a Kan
/// fibration and transport induces a bijection on fiber components. p must
/// be a left fibration onto the nerve of r's base.
struct WLocalResult {
  bool ok = false;
  std::string witness;
};

WLocalResult w_local_check(const RelativeCategory& r, const NerveData& base_nerve,
                           const SSetMap& p, int d);

/// Vertex components under 1-simplices; returns the class id per vertex,
/// classes numbered by first appearance.
std::vector<int> pi0(const TSSet& x);

/// Presentation of the fundamental group of the 2-skeleton at a basepoint:
/// generators are non-tree nondegenerate edges in the component, one relation
/// per nondegenerate 2-simplex.
struct GroupoidPresentation {
  int num_generators = 0;
  std::vector<std::vector<std::pair<int, int>>> relations;  // (generator, exponent)
};

GroupoidPresentation pi1_presentation(const TSSet& x, int basepoint);

/// Rank of the abelianization (free part) via fraction-free integer
/// elimination on the relation matrix.
int abelianization_rank(const GroupoidPresentation& p);

}  // namespace spanloc
