// Command-line front end: similarity construction, spectral seriation,
// and PQ-tree queries over delimited matrix files or bundled fixtures.
//
// Exit codes: 0 success, 1 negative query answer, 2 input error,
// 3 ill-posed warning (result still emitted), 4 numeric failure,
// 5 enumeration capacity exceeded.

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "seriate/seriate.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitInput = 2;
constexpr int kExitIllPosed = 3;
constexpr int kExitNumeric = 4;
constexpr int kExitCapacity = 5;

struct InputSpec {
  std::string fixture_name;
  std::string path;
  bool header = false;
  bool binarize = false;
};

struct ToleranceFlags {
  double eig_tol = seriate::Tolerances{}.eig_tol;
  double mult_tol = seriate::Tolerances{}.mult_tol;
  double tie_tol = seriate::Tolerances{}.tie_tol;

  seriate::Tolerances to_tolerances() const { return {eig_tol, mult_tol, tie_tol}; }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw seriate::ParseError("cannot open input file '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

seriate::AbundanceMatrix load_matrix(const InputSpec& spec) {
  seriate::AbundanceMatrix m;
  if (!spec.fixture_name.empty()) {
    m = seriate::fixture(spec.fixture_name);
  } else {
    seriate::ParseOptions opts;
    opts.header = spec.header;
    m = seriate::parse_matrix(read_file(spec.path), opts);
  }
  if (spec.binarize) return seriate::binarize(m).matrix();
  return m;
}

std::string format_double(double x) {
  std::ostringstream os;
  os << std::setprecision(9) << x;
  return os.str();
}

std::string join_labels(const std::vector<seriate::Label>& labels, char sep = ',') {
  std::ostringstream os;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i) os << sep;
    os << labels[i];
  }
  return os.str();
}

std::vector<seriate::Label> parse_permutation(const std::string& text) {
  std::vector<seriate::Label> out;
  std::string tok;
  std::istringstream is(text);
  while (std::getline(is, tok, ',')) {
    try {
      std::size_t used = 0;
      int v = std::stoi(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      out.push_back(v);
    } catch (const std::exception&) {
      throw seriate::ParseError("cannot parse permutation entry '" + tok + "'");
    }
  }
  if (out.empty()) throw seriate::ParseError("empty permutation");
  return out;
}

nlohmann::json warning_to_json(const seriate::Warning& w) {
  nlohmann::json j;
  j["code"] = w.code == seriate::Warning::Code::IllPosedComponent ? "ill-posed-component"
                                                                  : "input-binarized";
  j["message"] = w.message;
  if (!w.units.empty()) j["units"] = w.units;
  if (!w.basis.empty()) j["fiedler_basis"] = w.basis;
  return j;
}

nlohmann::json report_to_json(const seriate::SeriationResult& r, seriate::IllPosedPolicy policy,
                              const seriate::Tolerances& tol) {
  nlohmann::json j;
  j["tree"] = seriate::to_json(r.tree);
  j["frontier"] = seriate::frontier(r.tree);
  j["count"] = seriate::count_frontiers(r.tree).str();
  j["policy"] = policy == seriate::IllPosedPolicy::PCollapse ? "p-collapse" : "first-vector";
  j["tolerances"] = {{"eig_tol", tol.eig_tol}, {"mult_tol", tol.mult_tol}, {"tie_tol", tol.tie_tol}};
  j["components"] = nlohmann::json::array();
  for (const auto& c : r.components) {
    nlohmann::json cj;
    cj["units"] = c.units;
    cj["size"] = c.units.size();
    if (c.fiedler) {
      cj["fiedler_value"] = c.fiedler->value;
      cj["multiplicity"] = c.fiedler->multiplicity;
      cj["eigengap"] = std::isinf(c.fiedler->eigengap) ? nlohmann::json("inf")
                                                       : nlohmann::json(c.fiedler->eigengap);
    } else {
      cj["trivial"] = true;
    }
    j["components"].push_back(std::move(cj));
  }
  j["warnings"] = nlohmann::json::array();
  for (const auto& w : r.warnings) j["warnings"].push_back(warning_to_json(w));
  return j;
}

void print_warnings(const seriate::SeriationResult& r) {
  for (const auto& w : r.warnings) std::cerr << "warning: " << w.message << "\n";
}

int run_similarity(const InputSpec& spec, const std::string& format) {
  seriate::AbundanceMatrix m = load_matrix(spec);
  if (!m.is_binary())
    std::cerr << "warning: input has non-binary abundance entries; binarizing\n";
  seriate::SimilarityMatrix s = seriate::similarity(seriate::binarize(m));

  if (format == "json") {
    nlohmann::json j;
    j["order"] = s.order();
    j["labels"] = s.labels();
    auto rows = nlohmann::json::array();
    for (std::size_t i = 0; i < s.order(); ++i) {
      auto row = nlohmann::json::array();
      for (std::size_t k = 0; k < s.order(); ++k) row.push_back(s.at(i, k));
      rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    std::cout << j.dump(2) << "\n";
  } else {
    for (std::size_t i = 0; i < s.order(); ++i) {
      for (std::size_t k = 0; k < s.order(); ++k) std::cout << (k ? "," : "") << s.at(i, k);
      std::cout << "\n";
    }
  }
  return kExitOk;
}

int run_seriate(const InputSpec& spec, const ToleranceFlags& tf, const std::string& policy_name,
                const std::string& format) {
  const seriate::Tolerances tol = tf.to_tolerances();
  const seriate::IllPosedPolicy policy = policy_name == "first-vector"
                                             ? seriate::IllPosedPolicy::FirstVector
                                             : seriate::IllPosedPolicy::PCollapse;
  seriate::SeriationResult r = seriate::spectral_seriation(load_matrix(spec), tol, policy);
  print_warnings(r);

  if (format == "json") {
    std::cout << report_to_json(r, policy, tol).dump(2) << "\n";
  } else {
    const auto tree_format =
        format == "dot" ? seriate::TreeFormat::Dot : seriate::TreeFormat::Ascii;
    std::cout << seriate::to_text(r.tree, tree_format);
    const char* prefix = format == "dot" ? "// " : "";
    std::cout << prefix << "frontier: " << join_labels(seriate::frontier(r.tree)) << "\n";
    std::cout << prefix << "count: " << seriate::count_frontiers(r.tree).str() << "\n";
    for (const auto& c : r.components) {
      std::cout << prefix << "component {" << join_labels(c.units) << "}";
      if (c.fiedler) {
        std::cout << ": fiedler value " << format_double(c.fiedler->value) << ", multiplicity "
                  << c.fiedler->multiplicity;
      } else {
        std::cout << ": trivial size " << c.units.size();
      }
      std::cout << "\n";
    }
    for (const auto& w : r.warnings) std::cout << prefix << "warning: " << w.message << "\n";
  }
  return r.ill_posed() ? kExitIllPosed : kExitOk;
}

seriate::PQTree load_tree(const std::string& path) { return seriate::from_text(read_file(path)); }

int run_tree_frontiers(const std::string& path, std::uint64_t cap) {
  auto perms = seriate::enumerate_frontiers(load_tree(path), cap);
  for (const auto& p : perms) std::cout << join_labels(p) << "\n";
  return kExitOk;
}

int run_tree_count(const std::string& path) {
  std::cout << seriate::count_frontiers(load_tree(path)).str() << "\n";
  return kExitOk;
}

int run_tree_contains(const std::string& path, const std::string& perm_text) {
  const bool member = seriate::contains(load_tree(path), parse_permutation(perm_text));
  std::cout << (member ? "true" : "false") << "\n";
  return member ? kExitOk : kExitNegative;
}

int run_tree_render(const std::string& path, const std::string& format) {
  const seriate::TreeFormat f = format == "ascii"  ? seriate::TreeFormat::Ascii
                                : format == "json" ? seriate::TreeFormat::Json
                                                   : seriate::TreeFormat::Dot;
  std::cout << seriate::to_text(load_tree(path), f);
  return kExitOk;
}

void add_input_flags(CLI::App* cmd, InputSpec& spec) {
  auto* group = cmd->add_option_group("input", "matrix source");
  group->add_option("--fixture", spec.fixture_name,
                    "bundled matrix name (see `fixtures` subcommand)");
  group->add_option("--input", spec.path, "delimited matrix file (CSV/TSV/whitespace)");
  group->require_option(1);
  cmd->add_flag("--header", spec.header, "treat the first input line as column labels");
  cmd->add_flag("--binarize", spec.binarize, "binarize abundance input without warning");
}

void add_tolerance_flags(CLI::App* cmd, ToleranceFlags& tf) {
  cmd->add_option("--eig-tol", tf.eig_tol, "eigensolver residual tolerance")
      ->capture_default_str();
  cmd->add_option("--mult-tol", tf.mult_tol, "eigenvalue multiplicity gap tolerance")
      ->capture_default_str();
  cmd->add_option("--tie-tol", tf.tie_tol, "fiedler entry tie tolerance")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectral seriation with PQ-tree output"};
  app.require_subcommand(1);

  InputSpec sim_input;
  std::string sim_format = "text";
  auto* sim = app.add_subcommand("similarity", "compute the similarity matrix S = B B^T");
  add_input_flags(sim, sim_input);
  sim->add_option("--format", sim_format, "output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();

  InputSpec ser_input;
  ToleranceFlags ser_tol;
  std::string ser_policy = "p-collapse";
  std::string ser_format = "json";
  auto* ser = app.add_subcommand("seriate", "run spectral seriation and emit the PQ-tree");
  add_input_flags(ser, ser_input);
  add_tolerance_flags(ser, ser_tol);
  ser->add_option("--policy", ser_policy, "handling of ill-posed components")
      ->check(CLI::IsMember({"p-collapse", "first-vector"}))
      ->capture_default_str();
  ser->add_option("--format", ser_format, "output format")
      ->check(CLI::IsMember({"json", "dot", "ascii", "text"}))
      ->capture_default_str();

  auto* tree = app.add_subcommand("tree", "queries on a PQ-tree JSON file");
  tree->require_subcommand(1);

  std::string fr_file;
  std::uint64_t fr_cap = 1000000;
  auto* fr = tree->add_subcommand("frontiers", "enumerate all admissible permutations");
  fr->add_option("file", fr_file, "tree JSON file")->required();
  fr->add_option("--max-enumerate", fr_cap, "refuse to enumerate more than this many")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  std::string ct_file;
  auto* ct = tree->add_subcommand("count", "print the exact number of admissible permutations");
  ct->add_option("file", ct_file, "tree JSON file")->required();

  std::string in_file, in_perm;
  auto* in = tree->add_subcommand("contains", "test membership of a permutation");
  in->add_option("file", in_file, "tree JSON file")->required();
  in->add_option("permutation", in_perm, "comma-separated unit labels")->required();

  std::string rd_file, rd_format = "dot";
  auto* rd = tree->add_subcommand("render", "render the tree");
  rd->add_option("file", rd_file, "tree JSON file")->required();
  rd->add_option("--format", rd_format, "output format")
      ->check(CLI::IsMember({"dot", "ascii", "json"}))
      ->capture_default_str();

  auto* fx = app.add_subcommand("fixtures", "list bundled matrix names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*sim) return run_similarity(sim_input, sim_format);
    if (*ser) return run_seriate(ser_input, ser_tol, ser_policy,
                                 ser_format == "text" ? "ascii" : ser_format);
    if (*fr) return run_tree_frontiers(fr_file, fr_cap);
    if (*ct) return run_tree_count(ct_file);
    if (*in) return run_tree_contains(in_file, in_perm);
    if (*rd) return run_tree_render(rd_file, rd_format);
    if (*fx) {
      for (const auto& name : seriate::fixture_names()) std::cout << name << "\n";
      return kExitOk;
    }
  } catch (const seriate::CapacityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const seriate::NumericError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const seriate::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
