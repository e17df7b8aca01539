// rinfty: command-line front end for the R-infinity classifier, witness
// certification, exact linear algebra and the brute-force oracles.
//
// Exit codes: 0 success, 1 domain failure, 2 usage or parse error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "rinfty/abelian.hpp"
#include "rinfty/classifier.hpp"
#include "rinfty/errors.hpp"
#include "rinfty/json_io.hpp"
#include "rinfty/lamplighter.hpp"
#include "rinfty/matrix.hpp"
#include "rinfty/smith.hpp"
#include "rinfty/wreath.hpp"

namespace {

using nlohmann::json;
using namespace rinfty;

constexpr int kOk = 0;
constexpr int kDomainFailure = 1;
constexpr int kUsageError = 2;

// Raised for failures that are results rather than bad input.
struct DomainFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  bool json_output = false;

  std::string group;
  std::size_t k = 0;
  std::string out_file;
  std::string case_name;
  std::string witness_file;

  std::string matrix;
  std::uint64_t modulus = 0;
  std::uint64_t max_order = kDefaultMaxOrder;

  std::string multiplier;
  std::string action_file;
  std::uint64_t n = 0;
  std::string twister;
  std::uint64_t bound = 0;
  std::string strategy = "generators";
  std::size_t max_reps = 1000;
};

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return json::parse(buf.str());
  } catch (const json::exception& e) {
    throw ParseError(path + ": invalid JSON: " + e.what());
  }
}

void emit(const Options& opt, const json& payload, const std::string& text) {
  if (opt.json_output) {
    std::cout << payload.dump() << '\n';
  } else {
    std::cout << text;
  }
}

// ---------------------------------------------------------------------------

int run_classify(const Options& opt) {
  const auto g = parse_group(opt.group);
  const Classification c = classify(g, opt.k);
  std::ostringstream text;
  text << "verdict: " << to_string(c.verdict) << '\n'
       << "case: " << to_string(c.case_tag) << '\n'
       << "witness: " << (c.witness ? "attached" : "none") << '\n'
       << "reason: " << c.reason << '\n';
  emit(opt, json_io::to_json(c), text.str());
  return kOk;
}

int write_witness(const Options& opt, const WreathAutomorphism& phi);

int run_witness(const Options& opt) {
  const auto g = parse_group(opt.group);
  if (!opt.case_name.empty()) {
    const CaseTag tag = opt.case_name == "case4" ? CaseTag::Case4
                        : opt.case_name == "case5" ? CaseTag::Case5
                                                   : throw ParameterError("--case must be case4 or case5");
    if (!case_condition(tag, g, opt.k))
      throw DomainFailure(opt.case_name + " conditions do not hold for " + g.to_string() + ", k=" + std::to_string(opt.k));
    return write_witness(opt, build_witness(g, opt.k, tag));
  }
  const Classification c = classify(g, opt.k);
  if (!c.witness) {
    throw DomainFailure("no in-repo witness for " + g.to_string() + ", k=" + std::to_string(opt.k) + ": " +
                        to_string(c.verdict) + " (" + to_string(c.case_tag) + "): " + c.reason);
  }
  return write_witness(opt, *c.witness);
}

int write_witness(const Options& opt, const WreathAutomorphism& phi) {
  const std::string doc = json_io::to_json(phi).dump() + "\n";
  if (opt.out_file.empty()) {
    std::cout << doc;
  } else {
    std::ofstream out(opt.out_file);
    if (!out) throw ParseError("cannot write " + opt.out_file);
    out << doc;
  }
  return kOk;
}

int run_certify(const Options& opt) {
  const WreathAutomorphism phi = json_io::witness_from_json(read_json_file(opt.witness_file));
  const OrbitCertificate cert = certify_finite_reidemeister(phi);
  std::cout << json_io::to_json(phi, cert).dump() << '\n';
  if (!cert.certified()) {
    std::cerr << "certification failed: " << cert.failure << '\n';
    return kDomainFailure;
  }
  return kOk;
}

int run_linalg(const std::string& what, const Options& opt) {
  const IntMatrix m = json_io::parse_matrix(opt.matrix);
  if (what == "det") {
    const Integer d = det(m);
    if (opt.modulus) {
      const std::uint64_t r = mod_u64(d, opt.modulus);
      emit(opt, json{{"det", r}, {"mod", opt.modulus}}, std::to_string(r) + "\n");
    } else {
      emit(opt, json{{"det", json_io::to_json(d)}}, d.get_str() + "\n");
    }
    return kOk;
  }
  if (what == "snf") {
    if (opt.modulus) throw ParameterError("snf does not take --mod");
    const SmithForm s = smith_normal_form(m);
    std::ostringstream text;
    text << "S = " << s.S.to_string() << "\nU = " << s.U.to_string() << "\nV = " << s.V.to_string() << '\n';
    emit(opt, json_io::to_json(s), text.str());
    return kOk;
  }
  if (what == "coker") {
    if (opt.modulus) throw ParameterError("coker does not take --mod");
    const Cardinal c = coker_order(m);
    emit(opt, json{{"coker", c.is_finite() ? json_io::to_json(c.value()) : json("infinite")}}, c.to_string() + "\n");
    return kOk;
  }
  if (what == "kernel") {
    if (!opt.modulus) throw ParameterError("kernel requires --mod");
    const Integer count = kernel_count_mod(m, opt.modulus);
    emit(opt, json{{"kernel", json_io::to_json(count)}, {"mod", opt.modulus}}, count.get_str() + "\n");
    return kOk;
  }
  // order
  const auto order = opt.modulus ? matrix_order(reduce_mod(m, opt.modulus), opt.max_order)
                                 : matrix_order(m, opt.max_order);
  json payload{{"order", order ? json(*order) : json(nullptr)}};
  if (opt.modulus) payload["mod"] = opt.modulus;
  emit(opt, payload, (order ? std::to_string(*order) : std::string("none")) + "\n");
  return kOk;
}

int run_oracle_abelian(const Options& opt) {
  const auto g = parse_group(opt.group);
  BlockAutomorphism phi;
  if (!opt.action_file.empty()) {
    phi = json_io::block_automorphism_from_json(read_json_file(opt.action_file));
  } else {
    Integer m;
    if (opt.multiplier.empty() || m.set_str(opt.multiplier, 10) != 0)
      throw ParameterError("oracle abelian needs --m INT or --action FILE");
    for (const auto& c : g.components()) phi.blocks.push_back(ComponentAction::scalar(c.p, c.r, c.d, m));
  }
  phi.check_compatible(g);
  const TwistedClasses classes = twisted_classes_bruteforce(g, phi, opt.bound ? opt.bound : kAbelianOracleBound);
  const Integer fixed = reidemeister_abelian(g, phi);
  const bool agree = fixed == Integer(static_cast<unsigned long>(classes.count));

  json reps = json::array();
  for (std::size_t i = 0; i < classes.representatives.size() && i < opt.max_reps; ++i)
    reps.push_back(json_io::to_json(classes.representatives[i]));
  json payload{{"classes", classes.count},
               {"image_size", classes.image_size},
               {"fixed_count", json_io::to_json(fixed)},
               {"agree", agree},
               {"representatives", std::move(reps)},
               {"representatives_truncated", classes.representatives.size() > opt.max_reps}};
  std::ostringstream text;
  text << "classes: " << classes.count << "\n|C(phi)|: " << fixed.get_str() << "\nagree: " << (agree ? "yes" : "no")
       << '\n';
  emit(opt, payload, text.str());
  return agree ? kOk : kDomainFailure;
}

ClassStrategy parse_strategy(const std::string& s) {
  if (s == "generators") return ClassStrategy::Generators;
  if (s == "pairs") return ClassStrategy::AllPairs;
  throw ParameterError("unknown strategy '" + s + "' (expected generators or pairs)");
}

json finite_element_json(const FiniteLamplighterOracle& oracle, const PrimePowerDecomposition& g, std::uint64_t index) {
  const FiniteWreathElement x = oracle.decode(index);
  json lamps = json::array();
  for (std::uint32_t p = 0; p < x.lamps.size(); ++p) {
    if (x.lamps[p] == 0) continue;
    lamps.push_back({{"at", oracle.decode_position(p)}, {"value", json_io::to_json(g.decode(x.lamps[p]))}});
  }
  return json{{"index", index}, {"shift", oracle.decode_position(x.shift)}, {"lamps", std::move(lamps)}};
}

int run_oracle_lamplighter(const Options& opt) {
  const auto g = parse_group(opt.group);
  const WreathAutomorphism phi = json_io::witness_from_json(read_json_file(opt.witness_file));
  if (phi.rank() != opt.k) throw ParameterError("witness rank does not match --k");
  const FiniteLamplighterOracle oracle(g, opt.n, opt.k, phi, opt.bound ? opt.bound : kLamplighterOracleBound);
  const ClassStrategy strategy = parse_strategy(opt.strategy);

  std::uint32_t twister = 0;
  if (!opt.twister.empty()) {
    json t;
    try {
      t = json::parse(opt.twister);
    } catch (const json::exception& e) {
      throw ParseError(std::string("--twister is not valid JSON: ") + e.what());
    }
    if (!t.is_array() || t.size() != opt.k) throw ParseError("--twister must be an array of k integers");
    std::vector<std::uint64_t> coords;
    for (const auto& c : t) coords.push_back(mod_u64(json_io::integer_from_json(c), opt.n));
    twister = oracle.encode_position(coords);
  }

  const LamplighterClasses classes = oracle.twisted_classes(twister, strategy);
  const SumFormulaCheck sum = oracle.sum_formula(strategy);

  json reps = json::array();
  for (std::size_t i = 0; i < classes.representatives.size() && i < opt.max_reps; ++i)
    reps.push_back(finite_element_json(oracle, g, classes.representatives[i]));
  json base_reps = json::array();
  for (std::uint32_t z : sum.base_representatives) base_reps.push_back(oracle.decode_position(z));

  json payload{{"group_order", oracle.order()},
               {"classes", classes.count},
               {"representatives", std::move(reps)},
               {"representatives_truncated", classes.representatives.size() > opt.max_reps},
               {"sum_formula_applicable", sum.applicable},
               {"sum_formula_ok", sum.applicable ? json(sum.ok) : json(nullptr)},
               {"sum_formula", {{"base_representatives", std::move(base_reps)},
                                {"terms", sum.terms},
                                {"sum", sum.sum},
                                {"total", sum.total}}}};
  std::ostringstream text;
  text << "group order: " << oracle.order() << "\nclasses: " << classes.count << "\nsum formula: ";
  if (!sum.applicable) {
    text << "not applicable (M mod n has nontrivial fixed points)\n";
  } else {
    text << (sum.ok ? "ok" : "MISMATCH") << " (" << sum.sum << " vs " << sum.total << ")\n";
  }
  emit(opt, payload, text.str());
  return (!sum.applicable || sum.ok) ? kOk : kDomainFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decide and certify the R-infinity property for G wr Z^k with G finite abelian"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_flag("--json", opt.json_output, "Print only a compact JSON payload on stdout");

  auto* classify_cmd = app.add_subcommand("classify", "Classify G wr Z^k");
  classify_cmd->add_option("--group", opt.group, "Group spec p^r:d,...")->required();
  classify_cmd->add_option("--k", opt.k, "Rank k >= 1")->required()->check(CLI::PositiveNumber);

  auto* witness_cmd = app.add_subcommand("witness", "Emit a witness automorphism (Cases 4 and 5)");
  witness_cmd->add_option("--group", opt.group, "Group spec p^r:d,...")->required();
  witness_cmd->add_option("--k", opt.k, "Rank k >= 1")->required()->check(CLI::PositiveNumber);
  witness_cmd->add_option("--out", opt.out_file, "Write the witness JSON here instead of stdout");
  witness_cmd->add_option("--case", opt.case_name, "Build this construction (case4 | case5) instead of the classified case");

  auto* certify_cmd = app.add_subcommand("certify", "Certify a witness file and print its certificate");
  certify_cmd->add_option("--witness", opt.witness_file, "Witness JSON file")->required();

  auto* linalg_cmd = app.add_subcommand("linalg", "Exact linear algebra");
  linalg_cmd->require_subcommand(1);
  std::string linalg_what;
  for (const char* name : {"det", "snf", "coker", "order", "kernel"}) {
    auto* sub = linalg_cmd->add_subcommand(name);
    sub->add_option("--matrix", opt.matrix, "Matrix as nested JSON arrays")->required();
    sub->add_option("--mod", opt.modulus, "Work modulo this integer (>= 2)")->check(CLI::Range(std::uint64_t{2}, std::uint64_t{1} << 62));
    if (std::string(name) == "order") sub->add_option("--max-order", opt.max_order, "Search bound");
    sub->callback([&linalg_what, name] { linalg_what = name; });
  }

  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force twisted conjugacy oracles");
  oracle_cmd->require_subcommand(1);
  auto* abelian_cmd = oracle_cmd->add_subcommand("abelian", "Twisted classes of a finite abelian group");
  abelian_cmd->add_option("--group", opt.group, "Group spec p^r:d,...")->required();
  abelian_cmd->add_option("--m", opt.multiplier, "Scalar automorphism x -> m x");
  abelian_cmd->add_option("--action", opt.action_file, "Block automorphism JSON (list of components)");
  abelian_cmd->add_option("--bound", opt.bound, "Enumeration bound");
  abelian_cmd->add_option("--max-reps", opt.max_reps, "Representatives to print");
  auto* lamp_cmd = oracle_cmd->add_subcommand("lamplighter", "Twisted classes of G wr (Z_n)^k");
  lamp_cmd->add_option("--group", opt.group, "Group spec p^r:d,...")->required();
  lamp_cmd->add_option("--n", opt.n, "Cyclic quotient of the base")->required()->check(CLI::Range(2, 1 << 20));
  lamp_cmd->add_option("--k", opt.k, "Rank k >= 1")->required()->check(CLI::PositiveNumber);
  lamp_cmd->add_option("--witness", opt.witness_file, "Witness JSON file")->required();
  lamp_cmd->add_option("--twister", opt.twister, "Translation z as a JSON array");
  lamp_cmd->add_option("--bound", opt.bound, "Enumeration bound on the group order");
  lamp_cmd->add_option("--strategy", opt.strategy, "generators | pairs");
  lamp_cmd->add_option("--max-reps", opt.max_reps, "Representatives to print");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  try {
    if (classify_cmd->parsed()) return run_classify(opt);
    if (witness_cmd->parsed()) return run_witness(opt);
    if (certify_cmd->parsed()) return run_certify(opt);
    if (linalg_cmd->parsed()) return run_linalg(linalg_what, opt);
    if (abelian_cmd->parsed()) return run_oracle_abelian(opt);
    if (lamp_cmd->parsed()) return run_oracle_lamplighter(opt);
  } catch (const DomainFailure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDomainFailure;
  } catch (const SizeBoundError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDomainFailure;
  } catch (const InvertibilityError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDomainFailure;
  } catch (const OrderError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDomainFailure;
  } catch (const std::invalid_argument& e) {
    // ParseError, ParameterError, DimensionError
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}
