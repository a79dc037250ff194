#include <charconv>

#include "unifact/group.hpp"
#include "unifact/serialize.hpp"

namespace unifact {

GroupSpec GroupSpec::cyclic(unsigned n) {
  GroupSpec s;
  s.kind = Kind::cyclic;
  s.n = n;
  return s;
}

GroupSpec GroupSpec::symmetric(unsigned n) {
  GroupSpec s;
  s.kind = Kind::symmetric;
  s.n = n;
  return s;
}

GroupSpec GroupSpec::alternating(unsigned n) {
  GroupSpec s;
  s.kind = Kind::alternating;
  s.n = n;
  return s;
}

GroupSpec GroupSpec::dihedral(unsigned n) {
  GroupSpec s;
  s.kind = Kind::dihedral;
  s.n = n;
  return s;
}

GroupSpec GroupSpec::product(std::vector<GroupSpec> factors) {
  GroupSpec s;
  s.kind = Kind::product;
  s.factors = std::move(factors);
  return s;
}

GroupSpec GroupSpec::from_table(std::vector<std::vector<Elem>> mul, std::string label) {
  GroupSpec s;
  s.kind = Kind::table;
  s.table = std::move(mul);
  s.label = std::move(label);
  return s;
}

GroupSpec GroupSpec::from_permutations(unsigned degree, std::vector<std::vector<unsigned>> gens,
                                       std::string label) {
  GroupSpec s;
  s.kind = Kind::perm;
  s.degree = degree;
  s.generators = std::move(gens);
  s.label = std::move(label);
  return s;
}

std::string describe(const GroupSpec& spec) {
  if (!spec.label.empty()) return spec.label;
  using K = GroupSpec::Kind;
  switch (spec.kind) {
    case K::cyclic: return "C" + std::to_string(spec.n);
    case K::symmetric: return "S" + std::to_string(spec.n);
    case K::alternating: return "A" + std::to_string(spec.n);
    case K::dihedral: return "D" + std::to_string(spec.n);
    case K::product: {
      std::string out;
      for (const auto& f : spec.factors) {
        if (!out.empty()) out += "x";
        out += describe(f);
      }
      return out;
    }
    case K::table: return "table(" + std::to_string(spec.table.size()) + ")";
    case K::perm: return "perm(" + std::to_string(spec.degree) + ")";
  }
  return "?";
}

namespace {

unsigned parse_uint(std::string_view s) {
  unsigned v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw Error(ErrorKind::invalid_input, "expected a non-negative integer, got '" + std::string(s) + "'");
  return v;
}

GroupSpec parse_simple(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos)
    throw Error(ErrorKind::invalid_input, "group spec must look like kind:param, got '" + std::string(text) + "'");
  const std::string_view kind = text.substr(0, colon);
  const std::string_view param = text.substr(colon + 1);
  if (kind == "cyclic") return GroupSpec::cyclic(parse_uint(param));
  if (kind == "symmetric") return GroupSpec::symmetric(parse_uint(param));
  if (kind == "alternating") return GroupSpec::alternating(parse_uint(param));
  if (kind == "dihedral") return GroupSpec::dihedral(parse_uint(param));
  throw Error(ErrorKind::invalid_input, "unknown group kind '" + std::string(kind) + "'");
}

}  // namespace

GroupSpec parse_group_spec(std::string_view text) {
  if (!text.empty() && text.front() == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::invalid_input, std::string("bad group JSON: ") + e.what());
    }
    return group_spec_from_json(j);
  }
  constexpr std::string_view product_prefix = "product:";
  if (text.starts_with(product_prefix)) {
    std::vector<GroupSpec> factors;
    std::string_view rest = text.substr(product_prefix.size());
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      factors.push_back(parse_simple(rest.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    if (factors.empty()) throw Error(ErrorKind::invalid_input, "product needs at least one factor");
    return GroupSpec::product(std::move(factors));
  }
  return parse_simple(text);
}

}  // namespace unifact
