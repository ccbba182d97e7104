#ifndef MAXDIM_GROUPSPEC_HPP
#define MAXDIM_GROUPSPEC_HPP

#include <cctype>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "maxdim/errors.hpp"
#include "maxdim/fp.hpp"
#include "maxdim/group.hpp"
#include "maxdim/module_action.hpp"
#include "maxdim/perm.hpp"
#include "maxdim/product.hpp"
#include "maxdim/psl2.hpp"
#include "maxdim/semidirect.hpp"

#include <json.hpp>

namespace maxdim {

// A group description: either a named family recipe or explicit generators
// in cycle notation. Cycle notation is 1-based in files and 0-based
// internally; the parser is exactly that boundary.
enum class FamilyKind {
  cyclic, dihedral, symmetric, alternating, elementary_abelian, quaternion,
  wreath_cyclic, psl2, direct_product, semidirect_file, generators
};

struct GroupRecipe {
  FamilyKind kind = FamilyKind::generators;
  std::vector<std::uint32_t> params;
  std::vector<std::unique_ptr<GroupRecipe>> factors;  // direct_product
  std::string file;                                   // semidirect_file
  std::vector<Permutation> generators;                // generators
  std::optional<std::uint32_t> cap;

  GroupRecipe() = default;
  GroupRecipe(GroupRecipe const& o) { *this = o; }
  GroupRecipe& operator=(GroupRecipe const& o) {
    kind = o.kind;
    params = o.params;
    file = o.file;
    generators = o.generators;
    cap = o.cap;
    factors.clear();
    for (auto const& f : o.factors) factors.push_back(std::make_unique<GroupRecipe>(*f));
    return *this;
  }
  GroupRecipe(GroupRecipe&&) = default;
  GroupRecipe& operator=(GroupRecipe&&) = default;
};

namespace detail {

inline std::string trim(std::string s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

inline std::vector<Permutation> parse_cycles(std::string const& text, int line) {
  // "(1 2 3)(4 5)" or "()" for the identity; points are 1-based
  std::vector<std::vector<std::uint32_t>> cycles;
  std::size_t i = 0;
  std::uint32_t maxpt = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    if (text[i] != '(') throw ParseError(line, "expected '(' in cycle notation");
    std::size_t close = text.find(')', i);
    if (close == std::string::npos) throw ParseError(line, "unbalanced cycle");
    std::istringstream in(text.substr(i + 1, close - i - 1));
    std::vector<std::uint32_t> cyc;
    std::string tok;
    while (in >> tok) {
      for (char c : tok)
        if (!std::isdigit(static_cast<unsigned char>(c)) && c != ',')
          throw ParseError(line, "bad point '" + tok + "'");
      if (tok.back() == ',') tok.pop_back();
      std::uint32_t pt = static_cast<std::uint32_t>(std::stoul(tok));
      if (pt == 0) throw ParseError(line, "points are 1-based");
      maxpt = std::max(maxpt, pt);
      cyc.push_back(pt);
    }
    if (!cyc.empty()) cycles.push_back(std::move(cyc));
    i = close + 1;
  }
  std::uint32_t degree = std::max<std::uint32_t>(maxpt, 1);
  std::vector<Point> images(degree);
  for (std::uint32_t k = 0; k < degree; ++k) images[k] = static_cast<Point>(k);
  for (auto const& cyc : cycles)
    for (std::size_t k = 0; k < cyc.size(); ++k) {
      std::uint32_t from = cyc[k] - 1, to = cyc[(k + 1) % cyc.size()] - 1;
      images[from] = static_cast<Point>(to);
    }
  try {
    return {Permutation(std::move(images))};
  } catch (InvalidPermutation const& e) {
    throw ParseError(line, e.what());
  }
}

// split "name arg arg [sub] [sub]" respecting brackets
inline std::vector<std::string> split_family_args(std::string const& s, int line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    if (std::isspace(static_cast<unsigned char>(s[i]))) {
      ++i;
      continue;
    }
    if (s[i] == '[') {
      int depth = 0;
      std::size_t j = i;
      for (; j < s.size(); ++j) {
        if (s[j] == '[') ++depth;
        if (s[j] == ']' && --depth == 0) break;
      }
      if (j == s.size()) throw ParseError(line, "unbalanced brackets");
      out.push_back(s.substr(i + 1, j - i - 1));
      i = j + 1;
    } else {
      std::size_t j = i;
      while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back(s.substr(i, j - i));
      i = j;
    }
  }
  return out;
}

inline std::uint32_t parse_u32(std::string const& s, int line) {
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw ParseError(line, "expected a number, got '" + s + "'");
  if (s.empty()) throw ParseError(line, "expected a number");
  return static_cast<std::uint32_t>(std::stoul(s));
}

}  // namespace detail

inline GroupRecipe parse_group_spec(std::string const& text);

namespace detail {

inline GroupRecipe parse_family(std::string const& body, int line) {
  auto args = split_family_args(body, line);
  if (args.empty()) throw ParseError(line, "empty family");
  GroupRecipe r;
  std::string const& name = args[0];
  auto need = [&](std::size_t n) {
    if (args.size() != n + 1)
      throw ParseError(line, "family " + name + " expects " + std::to_string(n) + " argument(s)");
  };
  auto check = [&](bool ok, std::string const& msg) {
    if (!ok) throw ParseError(line, name + ": " + msg);
  };
  if (name == "cyclic") {
    need(1);
    r.kind = FamilyKind::cyclic;
    r.params = {parse_u32(args[1], line)};
    check(r.params[0] >= 1, "order must be >= 1");
  } else if (name == "dihedral") {
    need(1);
    r.kind = FamilyKind::dihedral;
    r.params = {parse_u32(args[1], line)};
    check(r.params[0] >= 3, "n must be >= 3 (order 2n)");
  } else if (name == "symmetric") {
    need(1);
    r.kind = FamilyKind::symmetric;
    r.params = {parse_u32(args[1], line)};
    check(r.params[0] >= 1 && r.params[0] <= 6, "n must be in [1, 6]");
  } else if (name == "alternating") {
    need(1);
    r.kind = FamilyKind::alternating;
    r.params = {parse_u32(args[1], line)};
    check(r.params[0] >= 3 && r.params[0] <= 6, "n must be in [3, 6]");
  } else if (name == "elementaryAbelian") {
    need(2);
    r.kind = FamilyKind::elementary_abelian;
    r.params = {parse_u32(args[1], line), parse_u32(args[2], line)};
    check(is_prime(r.params[0]), "p must be prime");
    check(r.params[1] >= 1 && r.params[1] <= 16, "k must be in [1, 16]");
  } else if (name == "quaternion") {
    need(1);
    r.kind = FamilyKind::quaternion;
    r.params = {parse_u32(args[1], line)};
    check(r.params[0] == 8, "only quaternion 8 is supported");
  } else if (name == "wreathCyclic") {
    need(1);
    r.kind = FamilyKind::wreath_cyclic;
    r.params = {parse_u32(args[1], line)};
    check(is_prime(r.params[0]) && r.params[0] <= 3, "p must be a prime <= 3");
  } else if (name == "psl2") {
    need(1);
    r.kind = FamilyKind::psl2;
    r.params = {parse_u32(args[1], line)};
    check(is_prime(r.params[0]) && r.params[0] >= 5 && r.params[0] <= 13,
          "p must be a prime in [5, 13]");
  } else if (name == "directProduct") {
    need(2);
    r.kind = FamilyKind::direct_product;
    r.factors.push_back(std::make_unique<GroupRecipe>(parse_group_spec(args[1])));
    r.factors.push_back(std::make_unique<GroupRecipe>(parse_group_spec(args[2])));
  } else if (name == "semidirect") {
    need(1);
    r.kind = FamilyKind::semidirect_file;
    r.file = args[1];
  } else {
    throw UnknownFamily(line, "unknown family '" + name + "'");
  }
  return r;
}

}  // namespace detail

inline GroupRecipe parse_group_spec(std::string const& text) {
  GroupRecipe r;
  bool have_family = false, have_gens = false;
  int lineno = 0;
  std::istringstream in(text);
  std::string raw;
  while (std::getline(in, raw)) {
    ++lineno;
    auto line = detail::trim(raw);
    if (line.empty() || line[0] == '#') continue;
    auto colon = line.find(':');
    if (colon == std::string::npos) throw ParseError(lineno, "expected 'key: value'");
    auto key = detail::trim(line.substr(0, colon));
    auto value = detail::trim(line.substr(colon + 1));
    if (key == "family") {
      if (have_family || have_gens) throw ParseError(lineno, "duplicate group description");
      auto cap = r.cap;
      r = detail::parse_family(value, lineno);
      r.cap = cap;
      have_family = true;
    } else if (key == "gen") {
      if (have_family) throw ParseError(lineno, "cannot mix family and generators");
      auto perms = detail::parse_cycles(value, lineno);
      r.generators.push_back(std::move(perms[0]));
      have_gens = true;
    } else if (key == "cap") {
      r.cap = detail::parse_u32(value, lineno);
    } else {
      throw ParseError(lineno, "unknown key '" + key + "'");
    }
  }
  if (!have_family && !have_gens) throw ParseError(lineno, "no group description found");
  if (have_gens) {
    r.kind = FamilyKind::generators;
    // pad generators to a common degree
    std::size_t degree = 1;
    for (auto const& g : r.generators) degree = std::max(degree, g.degree());
    for (auto& g : r.generators) {
      if (g.degree() == degree) continue;
      std::vector<Point> im(degree);
      for (std::size_t i = 0; i < degree; ++i)
        im[i] = i < g.degree() ? g[i] : static_cast<Point>(i);
      g = Permutation(std::move(im));
    }
  }
  return r;
}

// Canonical re-serialization; parse(serialize(r)) == r.
inline std::string serialize_cycles(Permutation const& p) {
  std::string out;
  std::vector<bool> seen(p.degree(), false);
  for (std::size_t i = 0; i < p.degree(); ++i) {
    if (seen[i] || p[i] == i) continue;
    out += "(";
    std::size_t j = i;
    bool first = true;
    do {
      seen[j] = true;
      out += (first ? "" : " ") + std::to_string(j + 1);
      first = false;
      j = p[j];
    } while (j != i);
    out += ")";
  }
  return out.empty() ? "()" : out;
}

inline std::string serialize_family(GroupRecipe const& r);

inline std::string serialize_group_spec(GroupRecipe const& r) {
  std::string out;
  if (r.kind == FamilyKind::generators) {
    for (auto const& g : r.generators) out += "gen: " + serialize_cycles(g) + "\n";
  } else {
    out += "family: " + serialize_family(r) + "\n";
  }
  if (r.cap) out += "cap: " + std::to_string(*r.cap) + "\n";
  return out;
}

inline std::string serialize_family(GroupRecipe const& r) {
  auto num = [&](std::size_t i) { return std::to_string(r.params[i]); };
  switch (r.kind) {
    case FamilyKind::cyclic: return "cyclic " + num(0);
    case FamilyKind::dihedral: return "dihedral " + num(0);
    case FamilyKind::symmetric: return "symmetric " + num(0);
    case FamilyKind::alternating: return "alternating " + num(0);
    case FamilyKind::elementary_abelian: return "elementaryAbelian " + num(0) + " " + num(1);
    case FamilyKind::quaternion: return "quaternion " + num(0);
    case FamilyKind::wreath_cyclic: return "wreathCyclic " + num(0);
    case FamilyKind::psl2: return "psl2 " + num(0);
    case FamilyKind::direct_product:
      return "directProduct [family: " + serialize_family(*r.factors[0]) + "] [family: " +
             serialize_family(*r.factors[1]) + "]";
    case FamilyKind::semidirect_file: return "semidirect " + r.file;
    case FamilyKind::generators: break;
  }
  throw std::logic_error("unserializable recipe");
}

// ---- Builders ----

struct BuiltGroup {
  GroupPtr group;
  std::shared_ptr<DirectProduct const> product;  // set for direct products
  std::shared_ptr<MaterializedSemidirect const> semidirect;
};

namespace detail {

inline std::vector<Permutation> family_generators(GroupRecipe const& r) {
  auto cycle = [](std::uint32_t n) {
    std::vector<Point> im(n);
    for (std::uint32_t i = 0; i < n; ++i) im[i] = static_cast<Point>((i + 1) % n);
    return Permutation(std::move(im));
  };
  switch (r.kind) {
    case FamilyKind::cyclic:
      return {cycle(r.params[0])};
    case FamilyKind::dihedral: {
      std::uint32_t n = r.params[0];
      std::vector<Point> refl(n);
      for (std::uint32_t i = 0; i < n; ++i) refl[i] = static_cast<Point>((n - i) % n);
      return {cycle(n), Permutation(std::move(refl))};
    }
    case FamilyKind::symmetric: {
      std::uint32_t n = r.params[0];
      if (n == 1) return {Permutation::identity(1)};
      std::vector<Point> swap01(n);
      for (std::uint32_t i = 0; i < n; ++i) swap01[i] = static_cast<Point>(i);
      swap01[0] = 1;
      swap01[1] = 0;
      return {Permutation(std::move(swap01)), cycle(n)};
    }
    case FamilyKind::alternating: {
      std::uint32_t n = r.params[0];
      std::vector<Point> three(n);
      for (std::uint32_t i = 0; i < n; ++i) three[i] = static_cast<Point>(i);
      three[0] = 1;
      three[1] = 2;
      three[2] = 0;
      if (n == 3) return {Permutation(std::move(three))};
      std::vector<Point> big(n);
      if (n % 2 == 1) {
        for (std::uint32_t i = 0; i < n; ++i) big[i] = static_cast<Point>((i + 1) % n);
      } else {
        big[0] = 0;
        for (std::uint32_t i = 1; i < n; ++i) big[i] = static_cast<Point>(i % (n - 1) + 1);
      }
      return {Permutation(std::move(three)), Permutation(std::move(big))};
    }
    case FamilyKind::elementary_abelian: {
      std::uint32_t p = r.params[0], k = r.params[1];
      std::vector<Permutation> gens;
      for (std::uint32_t b = 0; b < k; ++b) {
        std::vector<Point> im(p * k);
        for (std::uint32_t i = 0; i < p * k; ++i) im[i] = static_cast<Point>(i);
        for (std::uint32_t i = 0; i < p; ++i)
          im[b * p + i] = static_cast<Point>(b * p + (i + 1) % p);
        gens.emplace_back(std::move(im));
      }
      return gens;
    }
    case FamilyKind::quaternion:
      // left regular action on {1,-1,i,-i,j,-j,k,-k}
      return {Permutation({2, 3, 1, 0, 6, 7, 5, 4}), Permutation({4, 5, 7, 6, 1, 0, 2, 3})};
    case FamilyKind::wreath_cyclic: {
      std::uint32_t p = r.params[0];
      std::vector<Point> base(p * p), top(p * p);
      for (std::uint32_t i = 0; i < p * p; ++i) {
        base[i] = static_cast<Point>(i < p ? (i + 1) % p : i);
        top[i] = static_cast<Point>((i + p) % (p * p));
      }
      return {Permutation(std::move(base)), Permutation(std::move(top))};
    }
    default:
      throw std::logic_error("not a plain family");
  }
}

inline BuiltGroup build_semidirect_file(std::string const& path, std::uint32_t cap);

}  // namespace detail

inline BuiltGroup build_group(GroupRecipe const& r, std::uint32_t default_cap = 50'000,
                              std::uint32_t lattice_cap = 2'000) {
  std::uint32_t cap = r.cap.value_or(default_cap);
  BuiltGroup out;
  switch (r.kind) {
    case FamilyKind::generators:
      out.group = group_from_generators(r.generators, cap);
      return out;
    case FamilyKind::psl2:
      out.group = build_psl2(r.params[0], lattice_cap).group;
      return out;
    case FamilyKind::direct_product: {
      auto a = build_group(*r.factors[0], default_cap, lattice_cap);
      auto b = build_group(*r.factors[1], default_cap, lattice_cap);
      auto dp = std::make_shared<DirectProduct>(direct_product(*a.group, *b.group, cap));
      out.group = dp->group;
      // keep the factors alive alongside the product
      struct Bundle {
        BuiltGroup a, b;
        std::shared_ptr<DirectProduct> dp;
      };
      auto bundle = std::make_shared<Bundle>(Bundle{std::move(a), std::move(b), dp});
      out.product = std::shared_ptr<DirectProduct const>(bundle, bundle->dp.get());
      return out;
    }
    case FamilyKind::semidirect_file:
      return detail::build_semidirect_file(r.file, cap);
    default:
      out.group = group_from_generators(detail::family_generators(r), cap);
      return out;
  }
}

namespace detail {

// Module file: JSON with {"p": prime, "dim": d, "top": "<group spec>",
// "matrices": [[row-major residues] per generator], optional "cap"}.
inline BuiltGroup build_semidirect_file(std::string const& path, std::uint32_t cap) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open module file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (std::exception const& e) {
    throw ParseError(0, std::string("module file: ") + e.what());
  }
  if (!j.contains("p") || !j.contains("dim") || !j.contains("top") || !j.contains("matrices"))
    throw ParseError(0, "module file needs p, dim, top, matrices");
  Fel p = j["p"].get<Fel>();
  std::size_t dim = j["dim"].get<std::size_t>();
  auto top_spec = parse_group_spec(j["top"].get<std::string>());
  auto top = build_group(top_spec, cap);
  std::vector<FpMatrix> mats;
  for (auto const& row : j["matrices"]) {
    FpMatrix m(dim, dim, p);
    if (row.size() != dim * dim) throw ParseError(0, "matrix size mismatch");
    for (std::size_t i = 0; i < dim * dim; ++i) m.a[i] = row[i].get<Fel>() % p;
    mats.push_back(std::move(m));
  }
  struct Bundle {
    BuiltGroup top;
    std::shared_ptr<ModuleAction const> mod;
    SemidirectDescription desc;
    std::shared_ptr<MaterializedSemidirect> mat;
  };
  auto bundle = std::make_shared<Bundle>();
  bundle->top = std::move(top);
  bundle->mod = std::make_shared<ModuleAction const>(*bundle->top.group, p, dim, std::move(mats));
  bundle->desc.module = bundle->mod;
  bundle->desc.summands = {FpMatrix::identity(dim, p)};
  bundle->mat = std::make_shared<MaterializedSemidirect>(
      materialize_semidirect(bundle->desc, cap));
  BuiltGroup out;
  out.group = bundle->mat->group;
  out.semidirect = std::shared_ptr<MaterializedSemidirect const>(bundle, bundle->mat.get());
  return out;
}

}  // namespace detail

}  // namespace maxdim

#endif  // MAXDIM_GROUPSPEC_HPP
