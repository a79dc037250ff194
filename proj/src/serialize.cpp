#include "unifact/serialize.hpp"

#include <limits>

namespace unifact {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::invalid_input, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

unsigned as_uint(const Json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 0) bad(std::string(what) + " must be a non-negative integer");
  return j.get<unsigned>();
}

std::vector<unsigned> uint_list(const Json& j, const char* what) {
  if (!j.is_array()) bad(std::string(what) + " must be an array");
  std::vector<unsigned> out;
  for (const auto& x : j) out.push_back(as_uint(x, what));
  return out;
}

std::vector<unsigned> zero_based(const Json& j, unsigned k, const char* what) {
  std::vector<unsigned> out;
  for (unsigned c : uint_list(j, what)) {
    if (c < 1 || c > k) bad(std::string(what) + " index " + std::to_string(c) + " is outside 1.." + std::to_string(k));
    out.push_back(c - 1);
  }
  return out;
}

}  // namespace

GroupSpec group_spec_from_json(const Json& j) {
  if (!j.is_object()) bad("group spec must be a JSON object");
  const auto& kind_j = field(j, "kind");
  if (!kind_j.is_string()) bad("group kind must be a string");
  const std::string kind = kind_j.get<std::string>();
  GroupSpec spec;
  if (kind == "cyclic") {
    spec = GroupSpec::cyclic(as_uint(field(j, "n"), "n"));
  } else if (kind == "symmetric") {
    spec = GroupSpec::symmetric(as_uint(field(j, "n"), "n"));
  } else if (kind == "alternating") {
    spec = GroupSpec::alternating(as_uint(field(j, "n"), "n"));
  } else if (kind == "dihedral") {
    spec = GroupSpec::dihedral(as_uint(field(j, "n"), "n"));
  } else if (kind == "product") {
    const auto& fs = field(j, "factors");
    if (!fs.is_array() || fs.empty()) bad("product factors must be a non-empty array");
    std::vector<GroupSpec> factors;
    for (const auto& f : fs) factors.push_back(group_spec_from_json(f));
    spec = GroupSpec::product(std::move(factors));
  } else if (kind == "table") {
    const auto& rows = field(j, "mul");
    if (!rows.is_array()) bad("mul must be an array of rows");
    std::vector<std::vector<Elem>> table;
    for (const auto& r : rows) {
      std::vector<Elem> row;
      for (unsigned x : uint_list(r, "table entry")) row.push_back(x);
      table.push_back(std::move(row));
    }
    spec = GroupSpec::from_table(std::move(table));
  } else if (kind == "perm") {
    const unsigned degree = as_uint(field(j, "degree"), "degree");
    const auto& gens = field(j, "generators");
    if (!gens.is_array()) bad("generators must be an array");
    std::vector<std::vector<unsigned>> g;
    for (const auto& x : gens) g.push_back(uint_list(x, "permutation image"));
    spec = GroupSpec::from_permutations(degree, std::move(g));
  } else {
    bad("unknown group kind '" + kind + "'");
  }
  if (j.contains("label")) {
    if (!j.at("label").is_string()) bad("label must be a string");
    spec.label = j.at("label").get<std::string>();
  }
  return spec;
}

Json group_spec_to_json(const GroupSpec& spec) {
  using K = GroupSpec::Kind;
  Json j;
  switch (spec.kind) {
    case K::cyclic: j = {{"kind", "cyclic"}, {"n", spec.n}}; break;
    case K::symmetric: j = {{"kind", "symmetric"}, {"n", spec.n}}; break;
    case K::alternating: j = {{"kind", "alternating"}, {"n", spec.n}}; break;
    case K::dihedral: j = {{"kind", "dihedral"}, {"n", spec.n}}; break;
    case K::product: {
      Json fs = Json::array();
      for (const auto& f : spec.factors) fs.push_back(group_spec_to_json(f));
      j = {{"kind", "product"}, {"factors", fs}};
      break;
    }
    case K::table: j = {{"kind", "table"}, {"mul", spec.table}}; break;
    case K::perm: j = {{"kind", "perm"}, {"degree", spec.degree}, {"generators", spec.generators}}; break;
  }
  if (!spec.label.empty()) j["label"] = spec.label;
  return j;
}

Json to_json(const Automorphism& a) { return a.images(); }

Automorphism automorphism_from_json(const GroupPtr& group, const Json& j) {
  std::vector<Elem> images;
  for (unsigned x : uint_list(j, "automorphism image")) images.push_back(x);
  return Automorphism::checked(group, std::move(images));
}

Json to_json(const FullStrip& s) {
  Json tw = Json::array();
  for (std::size_t i = 1; i < s.support().size(); ++i) tw.push_back(to_json(s.twist(i)));
  return {{"support", one_based(s.support())}, {"twists", tw}};
}

FullStrip strip_from_json(const GroupPtr& group, const Json& j) {
  const auto support = uint_list(field(j, "support"), "support");
  const auto& tw = j.contains("twists") ? j.at("twists") : Json::array();
  if (!tw.is_array()) bad("twists must be an array");
  if (support.empty()) bad("strip support is empty");
  if (tw.size() + 1 != support.size()) bad("a strip with support size m needs m-1 twists");
  std::vector<unsigned> sup;
  for (unsigned c : support) {
    if (c < 1) bad("strip support is 1-based");
    sup.push_back(c - 1);
  }
  std::vector<Automorphism> twists{Automorphism::identity(group)};
  for (const auto& t : tw) twists.push_back(automorphism_from_json(group, t));
  return FullStrip(group, std::move(sup), std::move(twists));
}

Json to_json(const StripProduct& p) {
  Json strips = Json::array();
  for (const auto& s : p.strips()) strips.push_back(to_json(s));
  return {{"strips", strips}, {"full", one_based(p.full())}};
}

StripProduct strip_product_from_json(const DirectPower& m, const Json& j) {
  const auto& ss = field(j, "strips");
  if (!ss.is_array()) bad("strips must be an array");
  std::vector<FullStrip> strips;
  for (const auto& s : ss) {
    FullStrip st = strip_from_json(m.base, s);
    for (unsigned c : st.support())
      if (c >= m.k) bad("strip support index " + std::to_string(c + 1) + " is outside 1.." + std::to_string(m.k));
    strips.push_back(std::move(st));
  }
  std::vector<unsigned> full;
  if (j.contains("full")) full = zero_based(j.at("full"), m.k, "full");
  return StripProduct(m, std::move(strips), std::move(full));
}

Json to_json(const FactorAutomorphism& g) {
  Json tw = Json::array();
  for (const auto& t : g.twists) tw.push_back(to_json(t));
  return {{"perm", one_based(g.perm)}, {"twists", tw}};
}

FactorAutomorphism factor_automorphism_from_json(const DirectPower& m, const Json& j) {
  FactorAutomorphism g = FactorAutomorphism::permutation(m, zero_based(field(j, "perm"), m.k, "perm"));
  if (j.contains("twists")) {
    const auto& tw = j.at("twists");
    if (!tw.is_array() || tw.size() != m.k) bad("factor automorphism needs one twist per coordinate");
    for (unsigned i = 0; i < m.k; ++i) g.twists[i] = automorphism_from_json(m.base, tw[i]);
  }
  return g;
}

Json to_json(const BigInt& n) {
  if (n >= 0 && n <= BigInt(std::numeric_limits<std::uint64_t>::max())) return n.convert_to<std::uint64_t>();
  return n.str();
}

Json one_based(const std::vector<unsigned>& idx) {
  Json out = Json::array();
  for (unsigned c : idx) out.push_back(c + 1);
  return out;
}

}  // namespace unifact
