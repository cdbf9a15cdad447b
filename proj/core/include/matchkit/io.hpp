#pragma once

#include <string>
#include <vector>

#include "matchkit/gadget.hpp"
#include "matchkit/holant.hpp"
#include "matchkit/signature.hpp"

namespace matchkit {

/*
 * Versioned JSON file formats ("format": 1 everywhere).
 *
 * signature: {"format":1, "name":..., "arity":n, "mode":"exact"|"float",
 *             "entries":[scalar strings in table order],
 *             "symmetric":[f0..fn]}   -- entries may be omitted when
 *             "symmetric" is present.
 * sigset:    {"format":1, "signatures":[signature | {"file": path}]} or a
 *            bare array of the same.
 * gadget:    {"format":1, "vertices":[{"signature":..., "edges":[ids],
 *             "side":"left"|"right", "rotation":[slot order]}],
 *             "edge_count":m, "dangling":[ids]}
 * instance:  {"format":1, "kind":"holant"|"csp"|"graph", ...}
 */

struct NamedSignature {
  std::string name;
  Signature sig;
};

Signature signature_from_json_text(const std::string& text, Mode default_mode);
std::string signature_to_json_text(const Signature& f, const std::string& name = "");
Signature load_signature(const std::string& path, Mode default_mode);

std::vector<NamedSignature> signature_set_from_json_text(const std::string& text,
                                                         Mode default_mode,
                                                         const std::string& base_dir = "");
std::vector<NamedSignature> load_signature_set(const std::string& path, Mode default_mode);

GadgetGraph gadget_from_json_text(const std::string& text, Mode default_mode,
                                  const std::string& base_dir = "");
std::string gadget_to_json_text(const GadgetGraph& gg);
GadgetGraph load_gadget(const std::string& path, Mode default_mode);

HolantInstance holant_from_json_text(const std::string& text, Mode default_mode);
CspInstance csp_from_json_text(const std::string& text, Mode default_mode);
WeightedGraph graph_from_json_text(const std::string& text, Mode default_mode);

/* Dispatches on "kind". */
enum class InstanceKind { Holant, Csp, Graph };
InstanceKind instance_kind_of_json_text(const std::string& text);
HolantInstance load_holant(const std::string& path, Mode default_mode);
CspInstance load_csp(const std::string& path, Mode default_mode);
WeightedGraph load_graph(const std::string& path, Mode default_mode);

std::string read_text_file(const std::string& path);

}  // namespace matchkit
