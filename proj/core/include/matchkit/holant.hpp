#pragma once

#include <optional>
#include <span>
#include <vector>

#include "matchkit/signature.hpp"

namespace matchkit {

enum class Side { Left, Right };

/* Weighted graph for perfect-matching counting. Vertices are 0-based. */
struct WeightedGraph {
  struct Edge {
    int u = 0, v = 0;
    Scalar w;
  };
  int vertex_count = 0;
  std::vector<Edge> edges;
  Mode mode = Mode::Exact;
};

/* Sum of prod(edge weights) over all perfect matchings. CapExceeded beyond
 * the vertex cap; odd vertex counts give 0. */
Scalar count_pm(const WeightedGraph& g);

/*
 * Holant instance: every edge is a Boolean variable, every vertex carries a
 * signature over its incident edges in slot order. Both endpoints of an
 * edge must be distinct vertices; loops are expressed by splitting with a
 * [1,0,1] vertex.
 */
struct HolantVertex {
  Signature sig;
  std::vector<int> edges;  // edge ids in variable order
  std::optional<Side> side;
};

struct HolantInstance {
  std::vector<HolantVertex> vertices;
  int edge_count = 0;

  void validate() const;
  bool bipartite_tagged() const;
  Mode mode() const;
};

/* Z = sum over all edge assignments of the product of vertex values. */
Scalar eval_holant(const HolantInstance& inst);

/* #CSP instance: n Boolean variables, constraints with (possibly repeated)
 * 1-based scopes. */
struct CspConstraint {
  Signature sig;
  std::vector<int> scope;
};

struct CspInstance {
  int variable_count = 0;
  std::vector<CspConstraint> constraints;
  std::optional<int> occurrence_bound;  // per-variable cap when set

  void validate() const;
  Mode mode() const;
};

Scalar eval_csp(const CspInstance& inst);

/* Bipartite Holant picture of a #CSP instance: constraints on the left,
 * one equality vertex per variable on the right (degree-0 variables become
 * arity-0 vertices of value 2). Z is preserved exactly. */
HolantInstance csp_to_holant(const CspInstance& inst);

/* Basis change across the bipartition: left signatures become f T^-1 and
 * right ones T g; Z is invariant. SingularMatrix / NotBipartite. */
HolantInstance holographic_rewrite(const HolantInstance& inst, const BinaryMatrix& t);

}  // namespace matchkit
