#pragma once

#include <optional>
#include <span>
#include <vector>

#include "matchkit/classify.hpp"
#include "matchkit/holant.hpp"
#include "matchkit/matchgate.hpp"
#include "matchkit/signature.hpp"

namespace matchkit {

/*
 * Gadget graph: vertices carry signatures, internal edges join two slots,
 * dangling edges have one endpoint and an external order. The optional
 * rotation system lists each vertex's slots in cyclic order and feeds the
 * Euler-formula planarity check.
 */
struct GadgetVertex {
  Signature sig;
  std::vector<int> slots;  // edge ids in variable order
  std::optional<Side> side;
  std::vector<int> rotation;  // cyclic order of slot positions; empty = slot order
};

struct GadgetGraph {
  std::vector<GadgetVertex> vertices;
  int edge_count = 0;
  std::vector<int> dangling;  // edge ids in external order
  bool rotation_present = false;

  void validate() const;
};

/* Eliminates internal edges one at a time (merging endpoints and summing
 * the shared variable) and returns the arity-|dangling| signature in
 * dangling order. ArityCapExceeded when an intermediate table would grow
 * past the cap. */
Signature contract(const GadgetGraph& gg);

/* Faces are traced from the rotation system; true iff V - E + F = 2 with
 * dangling edges attached to virtual leaf vertices. MissingRotation /
 * Disconnected. */
bool check_rotation_planar(const GadgetGraph& gg);

/* Signature of a planar weighted graph with ordered external vertices:
 * entry at alpha is the perfect-matching sum of the graph minus the
 * externals flagged 1. */
Signature matchgate_signature_from_graph(const WeightedGraph& g,
                                         std::span<const int> externals);

enum class MatingRole { Dangling, SumUp, Fix0, Fix1 };

/* Two copies of f joined variable-wise through role vertices: Sum-up is
 * [1,0,1], Fix-to-0 is [1,0,0], Fix-to-1 is [0,0,1]; the single Dangling
 * variable stays open on both copies, giving a binary result. */
GadgetGraph mating_gadget(const Signature& f, std::span<const MatingRole> roles);

/*
 * Star realization of a permutable matchgate: one central symmetric
 * signature and a chain of symmetric binaries per variable, inner to
 * outer. contract(to_gadget()) equals scale * f exactly.
 */
struct StarGadget {
  Signature central;
  std::vector<std::vector<Signature>> chains;
  Scalar scale;

  GadgetGraph to_gadget() const;
};

StarGadget synthesize_star(const Signature& f);

/*
 * For f in M_P - A: a planar left-side gadget over {f} | {[1,0],[1,0,1],
 * [1,0,1,0]} whose contraction is a symmetric signature in M - A.
 * case_id names the construction branch that fired:
 *   1 parity, pair pinning        2 parity, alignment chains
 *   3 parity arity-2, mating      4 parity arity-2, triple gadget
 *   5 parity arity-2, even quad   6 matching, single sum-up
 *   7 matching, double sum-up     8 parity, antidiagonal rerouting (then 1/2)
 */
struct SymmetricRealization {
  GadgetGraph gadget;
  Signature realized;  // contract(gadget)
  int case_id = 0;
};

SymmetricRealization realize_symmetric_from_mp(const Signature& f);

/* Generalized-mating realizations behind the bounded-occurrence dichotomy. */
struct BinaryRealization {
  enum class Kind { NondegBinary, Point001 };
  GadgetGraph gadget;
  Signature realized;  // contract(gadget)
  Kind kind = Kind::NondegBinary;
};

/* Mates two copies of a non-degenerate signature (recursively fixing
 * variables) into a non-degenerate binary. */
BinaryRealization realize_nondeg_binary(const Signature& f);

/* Either a non-degenerate binary or the point signature (0,0,0,1), using
 * only [1,0] and [1,0,1] helpers. */
BinaryRealization realize_binary_or_001(const Signature& f);

}  // namespace matchkit
