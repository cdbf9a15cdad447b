#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "matchkit/decide.hpp"
#include "matchkit/gadget.hpp"
#include "matchkit/io.hpp"

using namespace matchkit;
using nlohmann::json;

namespace {

struct Options {
  bool json_out = false;
  Mode mode = Mode::Exact;
};

void apply_env() {
  if (const char* v = std::getenv("MATCHKIT_EPS")) set_float_eps(std::atof(v));
  if (const char* v = std::getenv("MATCHKIT_ARITY_CAP")) set_arity_cap(std::atoi(v));
}

Mode env_mode() {
  if (const char* v = std::getenv("MATCHKIT_MODE")) return mode_from_string(v);
  return Mode::Exact;
}

void emit(const Options& opt, const json& j, const std::string& text) {
  if (opt.json_out)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text << "\n";
}

json witness_json(const Signature& f, const MgiWitness& w) {
  return json{{"beta", f.index_string(w.beta)},
              {"gamma", f.index_string(w.gamma)},
              {"sum", format_scalar(w.sum)}};
}

int run_check_mgi(const Options& opt, const std::string& path) {
  Signature f = load_signature(path, opt.mode);
  MgiReport rep = mgi_check(f);
  json j{{"pass", rep.pass}};
  std::string text;
  if (rep.pass) {
    text = "pass: all matchgate identities hold";
  } else {
    j["witness"] = witness_json(f, *rep.witness);
    text = "fail, witness beta=" + f.index_string(rep.witness->beta) +
           " gamma=" + f.index_string(rep.witness->gamma) +
           " sum=" + format_scalar(rep.witness->sum);
  }
  emit(opt, j, text);
  return 0;
}

int run_check_matchgate(const Options& opt, const std::string& path) {
  Signature f = load_signature(path, opt.mode);
  MatchgateReport rep = is_matchgate(f);
  json j{{"matchgate", rep.yes}};
  std::string text = rep.yes ? "matchgate signature" : "not a matchgate signature";
  if (!rep.yes) {
    j["witness"] = witness_json(f, *rep.witness);
    text += ", witness beta=" + f.index_string(rep.witness->beta) +
            " gamma=" + f.index_string(rep.witness->gamma);
  }
  emit(opt, j, text);
  return 0;
}

std::vector<int> parse_permutation(const std::string& text, int arity) {
  std::vector<int> perm;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) {
      perm.push_back(std::stoi(cur));
      cur.clear();
    }
  };
  for (char c : text) {
    if (std::isdigit(static_cast<unsigned char>(c)))
      cur.push_back(c);
    else
      flush();
  }
  flush();
  if (static_cast<int>(perm.size()) != arity)
    throw ParseError("permutation length does not match arity", 0);
  return perm;
}

int run_check_perm(const Options& opt, const std::string& path, const std::string& perm_text) {
  Signature f = load_signature(path, opt.mode);
  std::vector<int> perm = parse_permutation(perm_text, f.arity());
  bool keeps = permutation_preserves_matchgate(f, perm);
  emit(opt, json{{"preserved", keeps}},
       keeps ? "preserved: the permuted signature is still a matchgate"
             : "not preserved: the permuted signature fails the matchgate identities");
  return 0;
}

json mp_type_json(const MpType& t) {
  json j;
  switch (t.kind) {
    case MpType::Kind::Pinning: j["kind"] = "pinning"; break;
    case MpType::Kind::Parity: j["kind"] = "parity"; break;
    case MpType::Kind::Matching: j["kind"] = "matching"; break;
    case MpType::Kind::SmallArity: j["kind"] = "small-arity"; break;
  }
  if (!t.weights.empty()) {
    json w = json::array();
    for (std::size_t a = 1; a < t.weights.size(); ++a)
      w.push_back(format_scalar(t.weights[a]));
    j["weights"] = std::move(w);
  }
  if (t.hub) j["hub"] = t.hub;
  return j;
}

int run_classify(const Options& opt, const std::string& path) {
  Signature f = load_signature(path, opt.mode);
  ClassVerdict v = classify_signature(f);
  json j{{"affine", v.in_affine},
         {"product", v.in_product},
         {"matchgate", v.in_matchgate},
         {"matchgate_hat", v.in_matchgate_hat},
         {"permutable", v.in_permutable},
         {"permutable_hat", v.in_permutable_hat}};
  if (v.mp_type) j["mp_type"] = mp_type_json(*v.mp_type);
  std::string text = std::string("A: ") + (v.in_affine ? "yes" : "no") +
                     "  P: " + (v.in_product ? "yes" : "no") +
                     "  M: " + (v.in_matchgate ? "yes" : "no") +
                     "  M^: " + (v.in_matchgate_hat ? "yes" : "no") +
                     "  M_P: " + (v.in_permutable ? "yes" : "no") +
                     "  M_P^: " + (v.in_permutable_hat ? "yes" : "no");
  if (v.mp_type) text += "\nnormalized type: " + mp_type_json(*v.mp_type).dump();
  emit(opt, j, text);
  return 0;
}

int run_normalize(const Options& opt, const std::string& path) {
  Signature f = load_signature(path, opt.mode);
  Normalization norm = normalize(f);
  if (norm.trivial) {
    emit(opt, json{{"trivial", true}}, "trivial: the signature is identically zero");
    return 0;
  }
  json j{{"trivial", false},
         {"shift", f.index_string(norm.cert.shift)},
         {"scale", format_scalar(norm.cert.scale)},
         {"normalized", json::parse(signature_to_json_text(norm.normalized))}};
  emit(opt, j,
       "shift " + f.index_string(norm.cert.shift) + ", scale " +
           format_scalar(norm.cert.scale) + "\n" +
           signature_to_json_text(norm.normalized, "normalized"));
  return 0;
}

int run_synth_star(const Options& opt, const std::string& path) {
  Signature f = load_signature(path, opt.mode);
  StarGadget star = synthesize_star(f);
  json chains = json::array();
  for (const auto& chain : star.chains) {
    json links = json::array();
    for (const Signature& link : chain) {
      auto sym = detect_symmetric(link);
      json entries = json::array();
      for (const Scalar& s : sym->values) entries.push_back(format_scalar(s));
      links.push_back(entries);
    }
    chains.push_back(links);
  }
  auto hsym = detect_symmetric(star.central);
  json hvals = json::array();
  for (const Scalar& s : hsym->values) hvals.push_back(format_scalar(s));
  json j{{"central", hvals},
         {"chains", chains},
         {"scale", format_scalar(star.scale)},
         {"gadget", json::parse(gadget_to_json_text(star.to_gadget()))}};
  emit(opt, j,
       "central " + hvals.dump() + "\nchains " + chains.dump() + "\nscale " +
           format_scalar(star.scale));
  return 0;
}

int run_synth_sym(const Options& opt, const std::string& path) {
  Signature f = load_signature(path, opt.mode);
  SymmetricRealization real = realize_symmetric_from_mp(f);
  auto sym = detect_symmetric(real.realized);
  json vals = json::array();
  for (const Scalar& s : sym->values) vals.push_back(format_scalar(s));
  json j{{"case", real.case_id},
         {"symmetric", vals},
         {"gadget", json::parse(gadget_to_json_text(real.gadget))}};
  emit(opt, j, "case " + std::to_string(real.case_id) + ", realized " + vals.dump());
  return 0;
}

int run_synth_nondeg(const Options& opt, const std::string& path) {
  Signature f = load_signature(path, opt.mode);
  BinaryRealization real = realize_nondeg_binary(f);
  json j{{"kind", "nondeg_binary"},
         {"realized", json::parse(signature_to_json_text(real.realized))},
         {"gadget", json::parse(gadget_to_json_text(real.gadget))}};
  emit(opt, j, "realized " + signature_to_json_text(real.realized, ""));
  return 0;
}

int run_eval(const Options& opt, const std::string& what, const std::string& path) {
  Scalar z;
  if (what == "holant")
    z = eval_holant(load_holant(path, opt.mode));
  else if (what == "csp")
    z = eval_csp(load_csp(path, opt.mode));
  else
    z = count_pm(load_graph(path, opt.mode));
  emit(opt, json{{"value", format_scalar(z)}}, "Z = " + format_scalar(z));
  return 0;
}

BinaryMatrix matrix_from_arg(const std::string& arg, Mode m) {
  if (arg == "H2") return BinaryMatrix::hadamard(m);
  json j = json::parse(read_text_file(arg), nullptr, false);
  if (j.is_discarded()) throw ParseError("matrix file is not valid JSON", 0);
  const auto& e = j.at("entries");
  return BinaryMatrix{parse_scalar(e.at(0).at(0).get<std::string>(), m),
                      parse_scalar(e.at(0).at(1).get<std::string>(), m),
                      parse_scalar(e.at(1).at(0).get<std::string>(), m),
                      parse_scalar(e.at(1).at(1).get<std::string>(), m)};
}

int run_transform(const Options& opt, const std::string& path, const std::string& matrix) {
  Signature f = load_signature(path, opt.mode);
  BinaryMatrix t = matrix_from_arg(matrix, opt.mode);
  Signature out = transform(t, f);
  emit(opt, json::parse(signature_to_json_text(out)), signature_to_json_text(out, ""));
  return 0;
}

int run_decide(const Options& opt, const std::string& path, const std::string& variant_s,
               int d) {
  auto variant = variant_from_string(variant_s);
  if (!variant) throw ParseError("unknown variant '" + variant_s + "'", 0);
  std::vector<NamedSignature> set = load_signature_set(path, opt.mode);
  std::vector<Signature> sigs;
  for (const auto& ns : set) sigs.push_back(ns.sig);
  DichotomyVerdict verdict = decide(sigs, *variant, d);
  json j;
  j["variant"] = to_string(*variant);
  j["outcome"] = verdict.poly ? "poly" : "sharp-p-hard";
  if (verdict.witness_class) j["class"] = to_string(*verdict.witness_class);
  json table = json::array();
  for (std::size_t i = 0; i < set.size(); ++i) {
    const ClassVerdict& v = verdict.per_signature[i];
    table.push_back(json{{"name", set[i].name},
                         {"affine", v.in_affine},
                         {"product", v.in_product},
                         {"matchgate_hat", v.in_matchgate_hat},
                         {"permutable_hat", v.in_permutable_hat}});
  }
  j["memberships"] = std::move(table);
  if (!verdict.poly) {
    json cex = json::array();
    for (auto [cls, idx] : verdict.counterexamples)
      cex.push_back(json{{"class", to_string(cls)}, {"outside", set[idx].name}});
    j["counterexamples"] = std::move(cex);
  }
  std::string text = verdict.poly
                         ? std::string("poly (") + to_string(*verdict.witness_class) + ")"
                         : "sharp-p-hard";
  emit(opt, j, text);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  apply_env();
  Options opt;
  opt.mode = env_mode();

  CLI::App app{"matchkit: matchgate signature algebra and counting dichotomies"};
  app.require_subcommand(1);
  bool json_flag = false;
  std::string mode_flag;
  app.add_flag("--json", json_flag, "machine-readable output");
  app.add_option("--sig-mode", mode_flag, "scalar mode: exact or float");

  std::string sig_path, perm_text, inst_path, matrix_arg, sigset_path, variant;
  int d = 3;

  auto* check = app.add_subcommand("check", "signature predicates");
  check->require_subcommand(1);
  auto* c_mgi = check->add_subcommand("mgi", "run the matchgate identities");
  c_mgi->add_option("sig", sig_path)->required();
  auto* c_mg = check->add_subcommand("matchgate", "matchgate membership");
  c_mg->add_option("sig", sig_path)->required();
  auto* c_perm = check->add_subcommand("perm", "does a permutation preserve matchgates");
  c_perm->add_option("sig", sig_path)->required();
  c_perm->add_option("perm", perm_text)->required();

  auto* classify_cmd = app.add_subcommand("classify", "class memberships and type");
  classify_cmd->add_option("sig", sig_path)->required();

  auto* norm_cmd = app.add_subcommand("normalize", "shift-scale normal form");
  norm_cmd->add_option("sig", sig_path)->required();

  auto* synth = app.add_subcommand("synth", "gadget syntheses");
  synth->require_subcommand(1);
  auto* s_star = synth->add_subcommand("star", "star gadget of a permutable matchgate");
  s_star->add_option("sig", sig_path)->required();
  auto* s_sym = synth->add_subcommand("sym", "symmetric non-affine realization");
  s_sym->add_option("sig", sig_path)->required();
  auto* s_nondeg = synth->add_subcommand("nondeg", "non-degenerate binary by mating");
  s_nondeg->add_option("sig", sig_path)->required();

  auto* eval_cmd = app.add_subcommand("eval", "brute-force oracles");
  eval_cmd->require_subcommand(1);
  auto* e_h = eval_cmd->add_subcommand("holant", "holant value");
  e_h->add_option("instance", inst_path)->required();
  auto* e_c = eval_cmd->add_subcommand("csp", "#CSP value");
  e_c->add_option("instance", inst_path)->required();
  auto* e_p = eval_cmd->add_subcommand("pm", "perfect matching sum");
  e_p->add_option("instance", inst_path)->required();

  auto* tr = app.add_subcommand("transform", "basis change of a signature");
  tr->add_option("sig", sig_path)->required();
  tr->add_option("matrix", matrix_arg)->required();

  auto* dec = app.add_subcommand("decide", "dichotomy verdict for a signature set");
  dec->add_option("sigset", sigset_path)->required();
  dec->add_option("--variant", variant)->required();
  dec->add_option("--d", d);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 3;  // usage problems are parse errors
  }
  opt.json_out = json_flag;
  if (!mode_flag.empty()) {
    try {
      opt.mode = mode_from_string(mode_flag);
    } catch (const ParseError& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 3;
    }
  }

  try {
    if (c_mgi->parsed()) return run_check_mgi(opt, sig_path);
    if (c_mg->parsed()) return run_check_matchgate(opt, sig_path);
    if (c_perm->parsed()) return run_check_perm(opt, sig_path, perm_text);
    if (classify_cmd->parsed()) return run_classify(opt, sig_path);
    if (norm_cmd->parsed()) return run_normalize(opt, sig_path);
    if (s_star->parsed()) return run_synth_star(opt, sig_path);
    if (s_sym->parsed()) return run_synth_sym(opt, sig_path);
    if (s_nondeg->parsed()) return run_synth_nondeg(opt, sig_path);
    if (e_h->parsed()) return run_eval(opt, "holant", inst_path);
    if (e_c->parsed()) return run_eval(opt, "csp", inst_path);
    if (e_p->parsed()) return run_eval(opt, "pm", inst_path);
    if (tr->parsed()) return run_transform(opt, sig_path, matrix_arg);
    if (dec->parsed()) return run_decide(opt, sigset_path, variant, d);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error [" << e.kind() << "]: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
