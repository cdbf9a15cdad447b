#include "matchkit/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace matchkit {

using nlohmann::json;

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

json parse_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ParseError("invalid JSON", 0);
  return j;
}

void check_format(const json& j) {
  if (j.contains("format") && j["format"] != 1)
    throw ParseError("unsupported format version", 0);
}

Mode mode_of(const json& j, Mode fallback) {
  if (!j.contains("mode")) return fallback;
  return mode_from_string(j["mode"].get<std::string>());
}

Signature signature_from_json(const json& j, Mode default_mode,
                              const std::string& base_dir = "") {
  if (!j.is_object()) throw ParseError("signature must be a JSON object", 0);
  if (j.contains("file")) {  // reference to a signature file
    std::filesystem::path p = j["file"].get<std::string>();
    if (p.is_relative() && !base_dir.empty()) p = std::filesystem::path(base_dir) / p;
    return signature_from_json(parse_json(read_text_file(p.string())), default_mode);
  }
  check_format(j);
  Mode m = mode_of(j, default_mode);
  if (j.contains("symmetric")) {
    SymmetricSignature s;
    s.mode = m;
    for (const auto& v : j["symmetric"])
      s.values.push_back(parse_scalar(v.get<std::string>(), m));
    Signature expanded = s.expand();
    if (j.contains("arity") && j["arity"].get<int>() != expanded.arity())
      throw ParseError("arity disagrees with the symmetric profile", 0);
    if (j.contains("entries")) {
      const auto& entries = j["entries"];
      if (entries.size() != expanded.size())
        throw ParseError("entries length disagrees with arity", 0);
      for (std::uint32_t i = 0; i < expanded.size(); ++i)
        if (!expanded.at(i).equals(parse_scalar(entries[i].get<std::string>(), m)))
          throw ParseError("entries disagree with the symmetric profile", 0);
    }
    return expanded;
  }
  if (!j.contains("arity") || !j.contains("entries"))
    throw ParseError("signature needs arity and entries (or symmetric)", 0);
  int arity = j["arity"].get<int>();
  const auto& entries = j["entries"];
  if (entries.size() != (std::size_t{1} << arity))
    throw ParseError("entries length disagrees with arity", 0);
  std::vector<Scalar> table;
  table.reserve(entries.size());
  for (const auto& v : entries) table.push_back(parse_scalar(v.get<std::string>(), m));
  return Signature(arity, m, std::move(table));
}

json signature_to_json(const Signature& f, const std::string& name) {
  json j;
  j["format"] = 1;
  if (!name.empty()) j["name"] = name;
  j["arity"] = f.arity();
  j["mode"] = to_string(f.mode());
  json entries = json::array();
  for (std::uint32_t i = 0; i < f.size(); ++i) entries.push_back(format_scalar(f.at(i)));
  j["entries"] = std::move(entries);
  if (auto sym = detect_symmetric(f)) {
    json prof = json::array();
    for (const Scalar& s : sym->values) prof.push_back(format_scalar(s));
    j["symmetric"] = std::move(prof);
  }
  return j;
}

}  // namespace

Signature signature_from_json_text(const std::string& text, Mode default_mode) {
  return signature_from_json(parse_json(text), default_mode);
}

std::string signature_to_json_text(const Signature& f, const std::string& name) {
  return signature_to_json(f, name).dump(2);
}

Signature load_signature(const std::string& path, Mode default_mode) {
  return signature_from_json_text(read_text_file(path), default_mode);
}

std::vector<NamedSignature> signature_set_from_json_text(const std::string& text,
                                                         Mode default_mode,
                                                         const std::string& base_dir) {
  json j = parse_json(text);
  json arr;
  if (j.is_array()) {
    arr = j;
  } else {
    check_format(j);
    if (!j.contains("signatures")) throw ParseError("signature set needs 'signatures'", 0);
    arr = j["signatures"];
  }
  std::vector<NamedSignature> out;
  int idx = 0;
  for (const auto& item : arr) {
    NamedSignature ns;
    if (item.is_object() && item.contains("file")) {
      std::filesystem::path p = item["file"].get<std::string>();
      if (p.is_relative() && !base_dir.empty()) p = std::filesystem::path(base_dir) / p;
      json sub = parse_json(read_text_file(p.string()));
      ns.sig = signature_from_json(sub, default_mode, base_dir);
      ns.name = sub.contains("name") ? sub["name"].get<std::string>() : p.stem().string();
    } else {
      ns.sig = signature_from_json(item, default_mode, base_dir);
      ns.name = item.contains("name") ? item["name"].get<std::string>()
                                      : "sig" + std::to_string(idx);
    }
    ++idx;
    out.push_back(std::move(ns));
  }
  return out;
}

std::vector<NamedSignature> load_signature_set(const std::string& path, Mode default_mode) {
  std::filesystem::path p(path);
  return signature_set_from_json_text(read_text_file(path), default_mode,
                                      p.parent_path().string());
}

GadgetGraph gadget_from_json_text(const std::string& text, Mode default_mode,
                                  const std::string& base_dir) {
  json j = parse_json(text);
  check_format(j);
  GadgetGraph gg;
  gg.edge_count = j.at("edge_count").get<int>();
  for (const auto& vj : j.at("vertices")) {
    GadgetVertex v;
    v.sig = signature_from_json(vj.at("signature"), default_mode, base_dir);
    v.slots = vj.at("edges").get<std::vector<int>>();
    if (vj.contains("side"))
      v.side = vj["side"].get<std::string>() == "left" ? Side::Left : Side::Right;
    if (vj.contains("rotation")) {
      v.rotation = vj["rotation"].get<std::vector<int>>();
      gg.rotation_present = true;
    }
    gg.vertices.push_back(std::move(v));
  }
  gg.dangling = j.at("dangling").get<std::vector<int>>();
  gg.validate();
  return gg;
}

std::string gadget_to_json_text(const GadgetGraph& gg) {
  json j;
  j["format"] = 1;
  j["edge_count"] = gg.edge_count;
  json verts = json::array();
  for (const auto& v : gg.vertices) {
    json vj;
    vj["signature"] = signature_to_json(v.sig, "");
    vj["edges"] = v.slots;
    if (v.side) vj["side"] = *v.side == Side::Left ? "left" : "right";
    if (!v.rotation.empty()) vj["rotation"] = v.rotation;
    verts.push_back(std::move(vj));
  }
  j["vertices"] = std::move(verts);
  j["dangling"] = gg.dangling;
  return j.dump(2);
}

GadgetGraph load_gadget(const std::string& path, Mode default_mode) {
  std::filesystem::path p(path);
  return gadget_from_json_text(read_text_file(path), default_mode,
                               p.parent_path().string());
}

namespace {

void expect_kind(const json& j, const char* kind) {
  if (!j.contains("kind") || j["kind"].get<std::string>() != kind)
    throw ParseError(std::string("expected kind '") + kind + "'", 0);
}

}  // namespace

InstanceKind instance_kind_of_json_text(const std::string& text) {
  json j = parse_json(text);
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "holant") return InstanceKind::Holant;
  if (kind == "csp") return InstanceKind::Csp;
  if (kind == "graph") return InstanceKind::Graph;
  throw ParseError("unknown instance kind '" + kind + "'", 0);
}

HolantInstance holant_from_json_text(const std::string& text, Mode default_mode) {
  json j = parse_json(text);
  check_format(j);
  expect_kind(j, "holant");
  HolantInstance inst;
  inst.edge_count = j.at("edge_count").get<int>();
  for (const auto& vj : j.at("vertices")) {
    HolantVertex v;
    v.sig = signature_from_json(vj.at("signature"), default_mode);
    v.edges = vj.at("edges").get<std::vector<int>>();
    if (vj.contains("side"))
      v.side = vj["side"].get<std::string>() == "left" ? Side::Left : Side::Right;
    inst.vertices.push_back(std::move(v));
  }
  inst.validate();
  return inst;
}

CspInstance csp_from_json_text(const std::string& text, Mode default_mode) {
  json j = parse_json(text);
  check_format(j);
  expect_kind(j, "csp");
  CspInstance inst;
  inst.variable_count = j.at("variables").get<int>();
  if (j.contains("occurrence_bound")) inst.occurrence_bound = j["occurrence_bound"].get<int>();
  for (const auto& cj : j.at("constraints")) {
    CspConstraint c;
    c.sig = signature_from_json(cj.at("signature"), default_mode);
    c.scope = cj.at("scope").get<std::vector<int>>();
    inst.constraints.push_back(std::move(c));
  }
  inst.validate();
  return inst;
}

WeightedGraph graph_from_json_text(const std::string& text, Mode default_mode) {
  json j = parse_json(text);
  check_format(j);
  expect_kind(j, "graph");
  WeightedGraph g;
  g.mode = default_mode;
  if (j.contains("mode")) g.mode = mode_from_string(j["mode"].get<std::string>());
  g.vertex_count = j.at("vertices").get<int>();
  for (const auto& ej : j.at("edges")) {
    WeightedGraph::Edge e;
    e.u = ej.at("u").get<int>();
    e.v = ej.at("v").get<int>();
    e.w = ej.contains("w") ? parse_scalar(ej["w"].get<std::string>(), g.mode)
                           : Scalar::one(g.mode);
    g.edges.push_back(std::move(e));
  }
  return g;
}

HolantInstance load_holant(const std::string& path, Mode default_mode) {
  return holant_from_json_text(read_text_file(path), default_mode);
}
CspInstance load_csp(const std::string& path, Mode default_mode) {
  return csp_from_json_text(read_text_file(path), default_mode);
}
WeightedGraph load_graph(const std::string& path, Mode default_mode) {
  return graph_from_json_text(read_text_file(path), default_mode);
}

}  // namespace matchkit
