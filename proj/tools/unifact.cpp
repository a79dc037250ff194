// unifact: command-line front end. Every command prints one JSON report on
// stdout; see schemas/report.schema.json.

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "unifact/cartesian.hpp"
#include "unifact/diagonal.hpp"
#include "unifact/factorisation.hpp"
#include "unifact/rng.hpp"
#include "unifact/serialize.hpp"

using namespace unifact;

namespace {

constexpr const char* kVersion = "0.1.0";

enum Exit { exit_ok = 0, exit_invalid = 2, exit_cap = 3 };

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::cap_exceeded:
    case ErrorKind::budget_exceeded:
      return exit_cap;
    default:
      return exit_invalid;
  }
}

Json images(const Automorphism& a) { return to_json(a); }

Json tuple_json(const Tuple& t) { return Json(t); }

Json diagnosis_json(const Diagnosis& d) {
  Json j{{"claim", static_cast<int>(d.claim)},
         {"claim_name", claim_name(d.claim)},
         {"detail", d.detail},
         {"witness", tuple_json(d.witness)},
         {"vertices", d.vertices},
         {"labels", one_based(d.labels)}};
  if (d.composite) j["composite"] = images(*d.composite);
  if (d.augmented) j["augmented"] = diagnosis_json(*d.augmented);
  return j;
}

// "12,34" -> {{0,1},{2,3}}; "1.10,2.3" for indices past 9.
std::vector<std::vector<unsigned>> parse_index_lists(const std::string& text, const char* what) {
  std::vector<std::vector<unsigned>> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string tok = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (tok.empty()) throw Error(ErrorKind::invalid_input, std::string("empty entry in ") + what);
    std::vector<unsigned> list;
    auto push = [&](const std::string& s) {
      if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
        throw Error(ErrorKind::invalid_input, std::string("bad index '") + s + "' in " + what);
      const unsigned v = static_cast<unsigned>(std::stoul(s));
      if (v == 0) throw Error(ErrorKind::invalid_input, std::string(what) + " are 1-based");
      list.push_back(v - 1);
    };
    if (tok.find('.') != std::string::npos) {
      std::size_t s = 0;
      while (s <= tok.size()) {
        const std::size_t dot = tok.find('.', s);
        push(tok.substr(s, dot == std::string::npos ? std::string::npos : dot - s));
        if (dot == std::string::npos) break;
        s = dot + 1;
      }
    } else {
      for (char c : tok) push(std::string(1, c));
    }
    out.push_back(std::move(list));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

GroupPtr build_group(const std::string& text, std::size_t cap) { return make_group(parse_group_spec(text), cap); }

struct Common {
  std::size_t group_cap = default_group_cap;
};

// Shared state for the diag subcommands.
struct DiagOptions {
  std::string base = "alternating:5";
  unsigned k = 3;
  std::string strips;  // default: one strip on every coordinate
  std::string top;     // default: all normalizing permutations
  std::size_t cap = default_point_cap;
  std::uint64_t seed = 0;
  std::uint64_t samples = 0;
  std::uint64_t budget = 1000000;
  std::string witness = "witness.json";
};

Json diag_config(const DiagOptions& o, const StripProduct& stab, const std::vector<std::vector<unsigned>>& top) {
  Json strips = Json::array();
  for (const auto& s : stab.strips()) strips.push_back(one_based(s.support()));
  Json tops = Json::array();
  for (const auto& p : top) tops.push_back(one_based(p));
  return {{"base", o.base}, {"k", o.k}, {"strips", strips}, {"top", tops}, {"cap", o.cap}};
}

StripProduct parse_stabilizer(const GroupPtr& t, unsigned k, const std::string& text) {
  DirectPower m(t, k);
  std::vector<FullStrip> strips;
  if (text.empty()) {
    std::vector<unsigned> all(k);
    for (unsigned i = 0; i < k; ++i) all[i] = i;
    strips.push_back(FullStrip::diagonal(t, all));
  } else {
    std::vector<bool> used(k, false);
    for (auto& sup : parse_index_lists(text, "strip coordinates")) {
      for (unsigned c : sup) {
        if (c >= k) throw Error(ErrorKind::invalid_input, "strip coordinate beyond k");
        if (used[c]) throw Error(ErrorKind::invalid_input, "strips overlap");
        used[c] = true;
      }
      strips.push_back(FullStrip::diagonal(t, sup));
    }
  }
  return StripProduct(m, std::move(strips));
}

std::optional<std::vector<std::vector<unsigned>>> parse_top(const std::string& text) {
  if (text.empty()) return std::nullopt;
  if (text == "none") return std::vector<std::vector<unsigned>>{};
  return parse_index_lists(text, "top permutations");
}

DiagonalAction make_diagonal(const DiagOptions& o, const Common& c) {
  if (o.k < 2) throw Error(ErrorKind::invalid_input, "k must be at least 2");
  const GroupPtr t = build_group(o.base, c.group_cap);
  return DiagonalAction(parse_stabilizer(t, o.k, o.strips), parse_top(o.top), o.cap);
}

Json cmd_uniform(const std::string& group, const Common& c) {
  const GroupPtr t = build_group(group, c.group_cap);
  const auto autos = enumerate_automorphisms(t);
  Json uniform = Json::array();
  std::size_t equivalence_exceptions = 0;
  for (const auto& a : autos) {
    const bool u = is_uniform(a).uniform;
    if (u != (fixed_points(a).size() == 1)) ++equivalence_exceptions;
    if (u) uniform.push_back(images(a));
  }
  Json r{{"group", t->name()},
         {"order", t->order()},
         {"abelian", t->is_abelian()},
         {"solvable", is_solvable(*t)},
         {"automorphisms", autos.size()},
         {"uniform_count", uniform.size()},
         {"uniform", uniform},
         {"fixed_point_free_equivalence_exceptions", equivalence_exceptions}};
  if (t->is_abelian()) {
    std::vector<Elem> inv(t->order());
    for (Elem g = 0; g < t->order(); ++g) inv[g] = t->inv(g);
    const auto a = Automorphism::checked(t, inv);
    r["inversion_uniform"] = is_uniform(a).uniform;
  }
  std::string note;
  if (!is_solvable(*t)) note = "non-solvable group: no uniform automorphism";
  else if (uniform.empty()) note = "no uniform automorphism";
  else note = "uniform automorphisms exist";
  r["note"] = note;
  return r;
}

Json cmd_orthstrip(const std::string& group, std::uint64_t budget, const Common& c) {
  const auto r = orthstrip_check(build_group(group, c.group_cap), budget);
  Json pairs = Json::array();
  for (auto [a, b] : r.factorising_pairs) pairs.push_back({a, b});
  Json bad = Json::array();
  for (auto [a, b] : r.counterexamples) bad.push_back({a, b});
  return {{"group", r.group},          {"automorphisms", r.automorphisms}, {"pairs", r.pairs},
          {"factorising", r.factorising}, {"predicted", r.predicted},     {"agreements", r.agreements},
          {"counterexamples", bad},       {"factorising_pairs", pairs}};
}

Json cmd_stripfact(const std::string& group, unsigned k, const std::string& mode, std::uint64_t n,
                   std::uint64_t seed, std::uint64_t budget, const Common& c) {
  SearchConfig cfg;
  if (mode == "exhaustive") cfg.mode = SearchMode::exhaustive;
  else if (mode == "sampled") cfg.mode = SearchMode::sampled;
  else throw Error(ErrorKind::invalid_input, "mode must be exhaustive or sampled");
  cfg.samples = n;
  cfg.seed = seed;
  cfg.budget = budget;
  const auto r = nostripfact_search(build_group(group, c.group_cap), k, cfg);
  Json diag = Json::object();
  for (std::size_t i = 0; i < claim_count; ++i)
    diag[claim_name(static_cast<Claim>(i + 1))] = r.diagnoses[i];
  Json j{{"group", r.group},
         {"k", r.k},
         {"hypothesis_holds", r.hypothesis_holds},
         {"automorphisms", r.automorphisms},
         {"shapes", r.shapes},
         {"candidates", to_json(r.candidates)},
         {"pairs_checked", r.pairs_checked},
         {"factorisations_found", r.factorisations_found},
         {"undiagnosed", r.undiagnosed},
         {"diagnoses", diag}};
  if (r.uniform) {
    j["uniform_automorphism"] = images(*r.uniform);
    j["note"] = "hypothesis violated: the base group has a uniform automorphism";
  }
  if (r.first_factorisation)
    j["first_factorisation"] = {{"x", to_json(r.first_factorisation->first)},
                                {"y", to_json(r.first_factorisation->second)}};
  if (r.first_witness)
    j["first_rejection"] = {{"x", to_json(r.first_witness->x)},
                            {"y", to_json(r.first_witness->y)},
                            {"diagnosis", diagnosis_json(r.first_witness->diagnosis)}};
  return j;
}

Json cmd_g6(const std::string& group, std::uint64_t budget, const Common& c) {
  const auto r = g6_joint_uniform_search(build_group(group, c.group_cap), budget);
  return {{"group", r.group},
          {"order", r.order},
          {"automorphisms", r.automorphisms},
          {"searched", r.searched},
          {"pairs", r.pairs},
          {"max_joint_image", r.max_joint_image},
          {"square_order", to_json(r.square_order)},
          {"joint_uniform_exists", r.searched ? Json(BigInt(r.max_joint_image) == r.square_order) : Json(nullptr)},
          {"best_pair", {r.best_alpha2, r.best_alpha3}},
          {"x_order", to_json(r.x_order)},
          {"y_order", to_json(r.y_order)},
          {"intersection_order", to_json(r.intersection_order)},
          {"product_order", to_json(r.product_order)},
          {"ambient_order", to_json(r.ambient_order)},
          {"deficiency", to_json(r.deficiency)}};
}

Json cmd_cartesian(const std::string& base, unsigned k, const std::string& strips, const std::string& g0text,
                   std::uint64_t budget, const Common& c) {
  if (k < 2) throw Error(ErrorKind::invalid_input, "k must be at least 2");
  const GroupPtr t = build_group(base, c.group_cap);
  const StripProduct m0 = parse_stabilizer(t, k, strips);
  if (g0text.empty()) throw Error(ErrorKind::invalid_input, "--g0 is required");
  const auto g0 = FactorTransitiveAutGroup::from_permutations(m0.ambient(), parse_index_lists(g0text, "G0 permutations"));
  CartesianSearchStats st;
  const auto found = enumerate_cartesian_over(m0, g0, budget, &st);
  Json fams = Json::array();
  bool all_disjoint = true;
  for (const auto& f : found) {
    Json factors = Json::array();
    for (const auto& k_i : f.factors()) {
      const auto sp = as_strip_product(k_i);
      factors.push_back(sp ? to_json(*sp) : Json("not a strip product"));
    }
    const auto rep = mainstripfact_verify(f, g0);
    all_disjoint = all_disjoint && rep.status == MainstripfactReport::Status::vacuous;
    fams.push_back({{"factors", factors}, {"verified", verify_cartesian(f).holds}, {"involved_strips", rep.involved.size()},
                    {"mainstripfact", status_name(rep.status)}});
  }
  return {{"m0", to_json(m0)},
          {"candidates", st.candidates},
          {"families_checked", st.families_checked},
          {"found", found.size()},
          {"families", fams},
          {"involved_strips_pairwise_disjoint", all_disjoint}};
}

Json equivariance_json(const EquivarianceReport& r) {
  return {{"bijective", r.bijective}, {"checks", r.checks}, {"failures", r.failures}, {"sampled", r.sampled},
          {"ok", r.ok()}};
}

Json cmd_diag_build(const DiagOptions& o, const Common& c) {
  const DiagonalAction d = make_diagonal(o, c);
  const auto ax = check_action_axioms(d);
  const auto st = check_structural_quasiprimitivity(d);
  return {{"config", diag_config(o, d.stabilizer(), d.top())},
          {"points", d.points()},
          {"type", d.is_simple_type() ? "simple" : "compound"},
          {"generators", d.generators().size()},
          {"axioms",
           {{"identity_fixes", ax.identity_fixes},
            {"bijective", ax.bijective},
            {"tables_match", ax.tables_match},
            {"products_compatible", ax.products_compatible},
            {"stabilizer_fixes_base", ax.stabilizer_fixes_base},
            {"m_transitive", ax.m_transitive},
            {"checks", ax.checks},
            {"ok", ax.ok()}}},
          {"structural",
           {{"m_transitive", st.m_transitive},
            {"top_transitive_on_factors", st.top_transitive_on_factors},
            {"stabilizer_subdirect", st.stabilizer_subdirect},
            {"passes", st.passes()},
            {"normal_subgroups_enumerated", false}}}};
}

Json cmd_diag_embed(const DiagOptions& o, const Common& c) {
  const DiagonalAction d = make_diagonal(o, c);
  EquivarianceReport eq;
  const auto w = embed_compound(d, o.samples, o.seed, &eq);
  const Json config = diag_config(o, d.stabilizer(), d.top());
  std::ofstream out(o.witness);
  if (!out) throw Error(ErrorKind::invalid_input, "cannot write witness file " + o.witness);
  out << Json{{"config", config}, {"witness", to_json(w)}}.dump() << '\n';
  return {{"config", config},       {"points", d.points()},        {"delta", w.delta},
          {"r", w.r},               {"blocks", to_json(w)["blocks"]}, {"witness_file", o.witness},
          {"equivariance", equivariance_json(eq)}};
}

Json cmd_diag_no_embed(const DiagOptions& o, const Common& c) {
  const DiagonalAction d = make_diagonal(o, c);
  const auto s = search_invariant_cartesian_decompositions(d, o.budget);
  Json list = Json::array();
  for (const auto& f : s.decompositions) {
    Json factors = Json::array();
    for (const auto& k_i : f.factors()) {
      const auto sp = as_strip_product(k_i);
      factors.push_back(sp ? to_json(*sp) : Json("not a strip product"));
    }
    list.push_back(factors);
  }
  return {{"config", diag_config(o, d.stabilizer(), d.top())},
          {"points", d.points()},
          {"type", s.simple_type ? "simple" : "compound"},
          {"candidates", s.stats.candidates},
          {"families_checked", s.stats.families_checked},
          {"decompositions", list},
          {"embeds", !s.decompositions.empty()}};
}

Json cmd_diag_verify(const DiagOptions& o, const Common& c) {
  std::ifstream in(o.witness);
  if (!in) throw Error(ErrorKind::invalid_input, "cannot read witness file " + o.witness);
  Json file;
  try {
    in >> file;
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::invalid_input, std::string("witness file is not JSON: ") + e.what());
  }
  DiagOptions from = o;
  std::vector<std::vector<unsigned>> top;
  try {
    const Json& cfg = file.at("config");
    from.base = cfg.at("base").get<std::string>();
    from.k = cfg.at("k").get<unsigned>();
    from.cap = cfg.at("cap").get<std::size_t>();
    std::string strips;
    for (const auto& s : cfg.at("strips")) {
      if (!strips.empty()) strips += ',';
      std::string tok;
      for (const auto& v : s) tok += (tok.empty() ? "" : ".") + std::to_string(v.get<unsigned>());
      strips += tok;
    }
    from.strips = strips;
    for (const auto& p : cfg.at("top")) {
      std::vector<unsigned> perm;
      for (const auto& v : p) {
        const auto x = v.get<unsigned>();
        if (x == 0) throw Error(ErrorKind::invalid_input, "top permutations are 1-based");
        perm.push_back(x - 1);
      }
      top.push_back(std::move(perm));
    }
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::invalid_input, std::string("malformed witness config: ") + e.what());
  }
  const GroupPtr t = build_group(from.base, c.group_cap);
  const DiagonalAction d(parse_stabilizer(t, from.k, from.strips), top, from.cap);
  const EmbeddingWitness w = embedding_witness_from_json(file.at("witness"));
  const auto eq = verify_embedding(d, w, o.samples, o.seed);
  return {{"config", diag_config(from, d.stabilizer(), d.top())},
          {"witness_file", o.witness},
          {"points", d.points()},
          {"equivariance", equivariance_json(eq)}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Uniform automorphisms, strip factorisations and diagonal-type actions"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  Common common;
  app.add_option("--group-cap", common.group_cap, "Largest group order to build")->capture_default_str();

  std::string group;
  unsigned k = 2;
  std::string mode = "exhaustive";
  std::uint64_t n = 10000, seed = 0;
  std::uint64_t orth_budget = 10000000, sf_budget = 1000000000, g6_budget = 1000000, cart_budget = 1000000;
  std::string strips, g0;
  DiagOptions dopt;

  std::string command;
  Json config;
  std::function<Json()> run;

  auto* uniform = app.add_subcommand("uniform", "List uniform automorphisms of a group");
  uniform->add_option("--group", group, "Group spec, e.g. cyclic:9")->required();
  uniform->callback([&] {
    command = "uniform";
    config = {{"group", group}};
    run = [&] { return cmd_uniform(group, common); };
  });

  auto* orth = app.add_subcommand("orthstrip", "Check every pair of twisted diagonals of T^2");
  orth->add_option("--group", group)->required();
  orth->add_option("--budget", orth_budget, "Largest number of pairs")->capture_default_str();
  orth->callback([&] {
    command = "orthstrip";
    config = {{"group", group}, {"budget", orth_budget}};
    run = [&] { return cmd_orthstrip(group, orth_budget, common); };
  });

  auto* sf = app.add_subcommand("stripfact", "Search strip-product pairs X, Y with XY = T^k");
  sf->add_option("--group", group)->required();
  sf->add_option("--k", k)->required();
  sf->add_option("--mode", mode)->check(CLI::IsMember({"exhaustive", "sampled"}))->capture_default_str();
  sf->add_option("--n", n, "Pairs to sample")->capture_default_str();
  sf->add_option("--seed", seed)->capture_default_str();
  sf->add_option("--budget", sf_budget, "Largest number of exhaustive pairs")->capture_default_str();
  sf->callback([&] {
    command = "stripfact";
    config = {{"group", group}, {"k", k}, {"mode", mode}, {"n", n}, {"seed", seed}, {"budget", sf_budget}};
    run = [&] { return cmd_stripfact(group, k, mode, n, seed, sf_budget, common); };
  });

  auto* g6 = app.add_subcommand("g6", "Six-coordinate construction without joint uniform automorphisms");
  g6->add_option("--group", group)->required();
  g6->add_option("--budget", g6_budget, "Largest number of automorphism pairs")->capture_default_str();
  g6->callback([&] {
    command = "g6";
    config = {{"group", group}, {"budget", g6_budget}};
    run = [&] { return cmd_g6(group, g6_budget, common); };
  });

  auto* cart = app.add_subcommand("cartesian", "Enumerate invariant cartesian factorisations over M0");
  cart->add_option("--base", dopt.base)->capture_default_str();
  cart->add_option("--k", k)->required();
  cart->add_option("--strips", strips, "Strips of M0, e.g. 12,34 (default: one strip)");
  cart->add_option("--g0", g0, "Factor permutations generating G0, e.g. 3412,2143")->required();
  cart->add_option("--budget", cart_budget, "Largest number of families")->capture_default_str();
  cart->callback([&] {
    command = "cartesian";
    config = {{"base", dopt.base}, {"k", k}, {"strips", strips}, {"g0", g0}, {"budget", cart_budget}};
    run = [&] { return cmd_cartesian(dopt.base, k, strips, g0, cart_budget, common); };
  });

  auto* diag = app.add_subcommand("diag", "Diagonal-type actions");
  diag->require_subcommand(1);
  auto add_diag_options = [&](CLI::App* sub) {
    sub->add_option("--base", dopt.base)->capture_default_str();
    sub->add_option("--k", dopt.k)->capture_default_str();
    sub->add_option("--strips", dopt.strips, "Strip supports, e.g. 12,34 (default: one strip)");
    sub->add_option("--top", dopt.top, "Top permutations, e.g. 231 or 'none' (default: full normalizer)");
    sub->add_option("--cap", dopt.cap, "Point cap")->capture_default_str();
    sub->add_option("--seed", dopt.seed)->capture_default_str();
  };
  auto diag_config_echo = [&](const std::string& name) {
    command = "diag " + name;
    config = {{"base", dopt.base},   {"k", dopt.k},       {"strips", dopt.strips},   {"top", dopt.top},
              {"cap", dopt.cap},     {"seed", dopt.seed}, {"samples", dopt.samples}, {"budget", dopt.budget},
              {"witness", dopt.witness}};
  };
  auto* build = diag->add_subcommand("build", "Build the coset action and check it");
  add_diag_options(build);
  build->callback([&] {
    diag_config_echo("build");
    run = [&] { return cmd_diag_build(dopt, common); };
  });
  auto* embed = diag->add_subcommand("embed", "Embed a compound diagonal action into a product-action wreath product");
  add_diag_options(embed);
  embed->add_option("--samples", dopt.samples, "Sampled equivariance checks (0 = all)")->capture_default_str();
  embed->add_option("--out", dopt.witness, "Witness file")->capture_default_str();
  embed->callback([&] {
    diag_config_echo("embed");
    run = [&] { return cmd_diag_embed(dopt, common); };
  });
  auto* noembed = diag->add_subcommand("no-embed-check", "Search invariant cartesian decompositions");
  add_diag_options(noembed);
  noembed->add_option("--budget", dopt.budget, "Largest number of families")->capture_default_str();
  noembed->callback([&] {
    diag_config_echo("no-embed-check");
    run = [&] { return cmd_diag_no_embed(dopt, common); };
  });
  auto* verify = diag->add_subcommand("verify-witness", "Re-check a witness file");
  verify->add_option("--witness", dopt.witness, "Witness file")->capture_default_str();
  verify->add_option("--samples", dopt.samples, "Sampled equivariance checks (0 = all)")->capture_default_str();
  verify->add_option("--seed", dopt.seed)->capture_default_str();
  verify->callback([&] {
    diag_config_echo("verify-witness");
    run = [&] { return cmd_diag_verify(dopt, common); };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_invalid;
  }

  Json report{{"command", command}, {"version", kVersion}, {"config", config}};
  report["config"]["group_cap"] = common.group_cap;
  const auto start = std::chrono::steady_clock::now();
  int code = exit_ok;
  try {
    report["result"] = run();
    report["status"] = "ok";
  } catch (const Error& e) {
    report["status"] = "error";
    report["error"] = {{"kind", to_string(e.kind())}, {"message", e.what()}};
    code = exit_code(e.kind());
  }
  const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  report["elapsed_ms"] = ms;
  std::cout << report.dump(2) << '\n';
  return code;
}
