// Command line surface for the maxdim workbench.
//
// Exit codes: 0 all assertions pass, 1 check failure, 2 budget/cap
// exceeded, 3 usage or parse error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "maxdim/cache.hpp"
#include "maxdim/maxdim.hpp"

namespace {

using namespace maxdim;

struct GlobalOptions {
  std::uint64_t seed = 20180129;
  std::uint64_t budget = 10'000'000;
  std::string cache_dir;
  std::string json_path;
  bool stretch = false;

  Config config() const {
    Config cfg;
    cfg.seed = seed;
    cfg.node_budget = stretch ? budget * 10 : budget;
    cfg.stretch = stretch;
    return cfg;
  }
};

// A <spec> argument is either inline text ("family: cyclic 6") or a path
// to a spec file.
std::string load_spec_text(std::string const& arg) {
  if (arg.find(':') != std::string::npos) return arg;
  std::ifstream in(arg);
  if (!in) throw ParseError(0, "spec argument is neither inline text nor a readable file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void print_result(CheckResult const& r) {
  std::string inst;
  for (auto const& i : r.instances) inst += (inst.empty() ? "" : ", ") + i;
  std::cout << "  [" << status_name(r.status) << "] " << r.check_id << " (" << inst << ")";
  if (!r.numbers.empty()) {
    std::cout << "  ";
    bool first = true;
    for (auto const& [k, v] : r.numbers) {
      std::cout << (first ? "" : " ") << k << "=" << v;
      first = false;
    }
  }
  std::cout << "\n";
  for (auto const& n : r.notes) std::cout << "      " << n << "\n";
}

std::vector<std::pair<std::string, std::string>> additivity_pairs() {
  return {
      {"S3", "Z5"},     {"S3", "S3"},    {"Z6", "Z2"},    {"D4 (order 8)", "Z3"},
      {"Q8", "S3"},     {"S4", "Z2"},    {"A4", "S3"},    {"A4", "A4"},
      {"Z2", "Z2"},     {"E9", "V4"},    {"Z10", "Z10"},  {"D6 (order 12)", "Z5"},
      {"A5", "Z2"},     {"A5", "S3"},    {"A5", "A4"},    {"A5", "Z6"},
      {"S4", "S3"},     {"S4", "A4"},    {"Z12", "S3"},   {"A5", "D5 (order 10)"},
  };
}

std::vector<Cor35Instance> cor35_instances() {
  return {
      {"F3^2 x| Z2 (negation)", 3, 2, "family: cyclic 2", {{2, 0, 0, 2}}},
      {"Z3 x| Z2 (trivial) = Z6", 3, 1, "family: cyclic 2", {{1}}},
      {"F2^2 x| Z3 (irreducible rotation)", 2, 2, "family: cyclic 3", {{0, 1, 1, 1}}},
  };
}

std::vector<CheckResult> run_verify(HarnessContext& ctx, std::string const& check_id,
                                    std::vector<std::uint32_t> const& params,
                                    std::uint32_t max_order, std::string const& s_spec,
                                    std::uint32_t p_prime) {
  std::vector<CheckResult> out;
  auto sweep_entries = [&](std::uint32_t bound, auto&& fn) {
    for (auto const& e : ctx.corpus()) {
      if (e->group(ctx.config()).order() > bound) continue;
      out.push_back(fn(*e));
    }
  };
  if (check_id == "wreath") {
    if (params.empty()) {
      out.push_back(check_wreath(ctx, 2));
      out.push_back(check_wreath(ctx, 3));
    } else {
      for (auto p : params) out.push_back(check_wreath(ctx, p));
    }
  } else if (check_id == "sandwich") {
    std::uint32_t bound = max_order ? max_order : 200;
    sweep_entries(bound, [&](CorpusEntry const& e) { return check_frattini_guard(ctx, e); });
    sweep_entries(bound, [&](CorpusEntry const& e) { return check_sandwich(ctx, e); });
  } else if (check_id == "goursat") {
    std::uint32_t bound = max_order ? max_order : 2000;
    for (auto const& e : ctx.corpus()) {
      if (!e->built(ctx.config()).product) continue;
      if (e->group(ctx.config()).order() > bound) continue;
      out.push_back(check_goursat(ctx, *e));
    }
  } else if (check_id == "psl2_square") {
    if (params.empty()) {
      out.push_back(check_psl2_square(ctx, 5));
    } else {
      for (auto p : params) out.push_back(check_psl2_square(ctx, p));
    }
  } else if (check_id == "collins") {
    if (params.empty()) {
      for (std::uint32_t p : {5u, 7u, 11u, 13u}) out.push_back(check_collins(ctx, p));
    } else {
      for (auto p : params) out.push_back(check_collins(ctx, p));
    }
  } else if (check_id == "pullback_bound") {
    out.push_back(check_prop210(ctx));
  } else if (check_id == "prop33") {
    out.push_back(check_prop33(ctx, "Z6", 3));
    out.push_back(check_prop33(ctx, "S4", 4));
    out.push_back(check_prop33(ctx, "S4", 24));
    out.push_back(check_prop33(ctx, "Z3wrZ3", 27));
  } else if (check_id == "cor35") {
    for (auto const& inst : cor35_instances()) out.push_back(check_cor35(ctx, inst));
  } else if (check_id == "thm43") {
    std::uint32_t bound = max_order ? max_order : 100;
    sweep_entries(bound, [&](CorpusEntry const& e) { return check_thm43_entry(ctx, e); });
  } else if (check_id == "nonflat") {
    out.push_back(check_nonflat(ctx, max_order ? max_order : 100));
  } else if (check_id == "additivity") {
    for (auto const& [a, b] : additivity_pairs()) out.push_back(check_additivity(ctx, a, b));
  } else if (check_id == "lemma45") {
    out.push_back(check_lemma45(ctx));
  } else if (check_id == "prop44") {
    if (!s_spec.empty()) {
      out.push_back(check_prop44(ctx, s_spec, p_prime ? p_prime : 2));
    } else {
      out.push_back(check_prop44(ctx, "family: wreathCyclic 3", 2));
      out.push_back(check_prop44(ctx, "family: elementaryAbelian 2 2", 3));
    }
  } else {
    throw CLI::ValidationError("unknown check id '" + check_id + "'");
  }
  return out;
}

int run_argv(std::vector<std::string> args, Report* replay_out = nullptr);

int do_replay(std::string const& path, GlobalOptions const& g) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "cannot open report " << path << "\n";
    return 3;
  }
  nlohmann::ordered_json j;
  try {
    in >> j;
  } catch (std::exception const& e) {
    std::cerr << "bad report: " << e.what() << "\n";
    return 3;
  }
  std::string command = j.at("command").get<std::string>();
  std::istringstream ss(command);
  std::vector<std::string> args;
  std::string tok;
  bool in_quote = false;
  std::string cur;
  while (ss) {
    char c = static_cast<char>(ss.get());
    if (!ss) break;
    if (c == '"') {
      in_quote = !in_quote;
    } else if (c == ' ' && !in_quote) {
      if (!cur.empty()) args.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) args.push_back(cur);
  if (!args.empty()) args.erase(args.begin());  // program name
  Report fresh;
  int code = run_argv(args, &fresh);
  (void)g;
  auto lhs = j.at("results");
  auto rhs = fresh.to_json().at("results");
  if (lhs == rhs) {
    std::cout << "replay: assertion outcomes identical (" << lhs.size() << " results)\n";
    return code;
  }
  std::cout << "replay: MISMATCH against stored report\n";
  return 1;
}

int run_argv(std::vector<std::string> args, Report* replay_out) {
  CLI::App app{"workbench for dimension-like invariants of finite groups"};
  app.require_subcommand(1);
  GlobalOptions g;
  if (char const* env = std::getenv("MAXDIM_CACHE_DIR")) g.cache_dir = env;
  app.add_option("--seed", g.seed, "seed for all randomized subroutines");
  app.add_option("--budget", g.budget, "node budget per invariant search");
  app.add_option("--cache-dir", g.cache_dir, "result cache directory");
  app.add_option("--json", g.json_path, "write the structured report here");
  app.add_flag("--stretch", g.stretch, "raise budgets for the stretch checks");

  std::string spec_arg, check_id, s_spec, report_path;
  std::vector<std::uint32_t> check_params;
  std::uint32_t max_order = 0, p_prime = 0, psl_p = 5;
  bool want_m = false, want_i = false, want_maxdim = false, use_goursat = false;
  bool no_cache = false;

  auto* info = app.add_subcommand("info", "order and basic structure of a group");
  info->add_option("spec", spec_arg, "group spec (inline or file)")->required();

  auto* inv = app.add_subcommand("invariants", "m(G), i(G) and MaxDim(G)");
  inv->add_option("spec", spec_arg)->required();
  inv->add_flag("--m", want_m);
  inv->add_flag("--i", want_i);
  inv->add_flag("--maxdim", want_maxdim);
  inv->add_flag("--no-cache", no_cache, "skip the result cache");

  auto* mx = app.add_subcommand("maximals", "maximal subgroup catalog");
  mx->add_option("spec", spec_arg)->required();
  mx->add_flag("--goursat", use_goursat, "require the product catalog path");

  auto* ver = app.add_subcommand("verify", "run a named check");
  ver->add_option("checkId", check_id)->required();
  ver->add_option("params", check_params, "numeric parameters (e.g. primes)");
  ver->add_option("--max-order", max_order);
  ver->add_option("--s", s_spec, "top group spec for prop44");
  ver->add_option("--p", p_prime, "prime for prop44");

  auto* con = app.add_subcommand("construct", "build and describe a construction");
  auto* con_psl = con->add_subcommand("psl2", "PSL(2,p) with its Dickson classification");
  con_psl->add_option("p", psl_p)->required();
  auto* con_p44 = con->add_subcommand("prop44", "semidirect construction with m < MaxDim");
  con_p44->add_option("--s", s_spec, "top group spec")->required();
  con_p44->add_option("--p", p_prime, "prime")->required();
  con->require_subcommand(1);

  auto* sw = app.add_subcommand("sweep", "run a per-entry check across the corpus");
  sw->add_option("--max-order", max_order)->required();
  sw->add_option("--check", check_id)->required();

  auto* rp = app.add_subcommand("replay", "re-run a stored report and compare outcomes");
  rp->add_option("report", report_path)->required();

  try {
    std::vector<char*> argv;
    std::string prog = "maxdim";
    argv.push_back(prog.data());
    for (auto& a : args) argv.push_back(a.data());
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (CLI::ParseError const& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 3;
  }

  Report report;
  {
    std::string cmd = "maxdim";
    for (auto const& a : args) {
      bool quote = a.find(' ') != std::string::npos;
      cmd += " ";
      cmd += quote ? "\"" + a + "\"" : a;
    }
    report.command = cmd;
  }
  report.config = g.config();
  HarnessContext ctx(report.config);

  try {
    if (*info) {
      auto recipe = parse_group_spec(load_spec_text(spec_arg));
      report.inputs.push_back(serialize_group_spec(recipe));
      auto built = build_group(recipe, report.config.element_cap, report.config.lattice_cap);
      auto const& gr = *built.group;
      CheckResult r;
      r.check_id = "info";
      r.instances = {serialize_group_spec(recipe)};
      r.numbers["order"] = gr.order();
      r.numbers["degree"] = gr.degree();
      r.numbers["abelian"] = is_abelian(gr);
      r.numbers["solvable"] = is_solvable(gr);
      r.numbers["nilpotent"] = is_nilpotent(gr);
      r.numbers["conjugacyClasses"] = static_cast<std::int64_t>(gr.conjugacy_classes().size());
      r.numbers["centerOrder"] = center(gr).order;
      report.results.push_back(r);
      std::cout << "group: " << r.instances[0];
      print_result(r);
    } else if (*inv) {
      if (!want_m && !want_i && !want_maxdim) want_m = want_i = want_maxdim = true;
      auto recipe = parse_group_spec(load_spec_text(spec_arg));
      auto canonical = serialize_group_spec(recipe);
      report.inputs.push_back(canonical);
      ResultCache cache(no_cache ? "" : g.cache_dir);
      auto cached = cache.lookup(canonical, report.config.node_budget);
      CheckResult r;
      r.check_id = "invariants";
      r.instances = {canonical};
      bool from_cache = false;
      if (cached && cached->contains("m") && cached->contains("i") &&
          cached->contains("maxdim")) {
        from_cache = true;
        r.numbers["m"] = (*cached)["m"].get<std::int64_t>();
        r.numbers["i"] = (*cached)["i"].get<std::int64_t>();
        r.numbers["maxdim"] = (*cached)["maxdim"].get<std::int64_t>();
        r.witness = (*cached)["witness"];
      } else {
        auto built = build_group(recipe, report.config.element_cap, report.config.lattice_cap);
        auto rk = rank_search(*built.group, report.config.node_budget);
        MaximalCatalog cat;
        if (built.product)
          cat = maximal_subgroups_of_product(*built.product, report.config.lattice_cap,
                                             report.config.node_budget, report.config.seed);
        else
          cat = maximal_subgroups(*built.group, report.config.lattice_cap, report.config.seed);
        auto md = max_dim(*built.group, cat, report.config.node_budget);
        if (!rk.exact || !md.exact) r.status = CheckStatus::cap_exceeded;
        r.numbers["m"] = rk.m;
        r.numbers["i"] = rk.i;
        r.numbers["maxdim"] = md.value;
        r.witness["mWitness"] = witness_elements(*built.group, rk.m_witness);
        r.witness["iWitness"] = witness_elements(*built.group, rk.i_witness);
        r.witness["maxdimFamily"] = witness_family(md.witness);
        if (r.status == CheckStatus::pass) {
          nlohmann::ordered_json payload;
          payload["m"] = rk.m;
          payload["i"] = rk.i;
          payload["maxdim"] = md.value;
          payload["witness"] = r.witness;
          cache.store(canonical, report.config.node_budget, std::move(payload));
        }
      }
      std::cout << "invariants for " << canonical;
      if (want_m) std::cout << "m = " << r.numbers["m"] << "\n";
      if (want_i) std::cout << "i = " << r.numbers["i"] << "\n";
      if (want_maxdim) std::cout << "MaxDim = " << r.numbers["maxdim"] << "\n";
      if (from_cache) std::cout << "(cached)\n";
      if (!want_m) r.numbers.erase("m");
      if (!want_i) r.numbers.erase("i");
      if (!want_maxdim) r.numbers.erase("maxdim");
      report.results.push_back(std::move(r));
    } else if (*mx) {
      auto recipe = parse_group_spec(load_spec_text(spec_arg));
      report.inputs.push_back(serialize_group_spec(recipe));
      auto built = build_group(recipe, report.config.element_cap, report.config.lattice_cap);
      if (use_goursat && !built.product)
        throw ParseError(0, "--goursat needs a directProduct spec");
      MaximalCatalog cat;
      if (built.product)
        cat = maximal_subgroups_of_product(*built.product, report.config.lattice_cap,
                                           report.config.node_budget, report.config.seed);
      else
        cat = maximal_subgroups(*built.group, report.config.lattice_cap, report.config.seed);
      CheckResult r;
      r.check_id = "maximals";
      r.instances = report.inputs;
      r.numbers["count"] = static_cast<std::int64_t>(cat.size());
      std::map<std::string, int> prov;
      for (auto const& e : cat.entries) {
        switch (e.provenance) {
          case MaximalProvenance::generic: ++prov["generic"]; break;
          case MaximalProvenance::standard_left: ++prov["standardLeft"]; break;
          case MaximalProvenance::standard_right: ++prov["standardRight"]; break;
          case MaximalProvenance::pullback: ++prov["pullback"]; break;
        }
      }
      std::cout << "maximal subgroups: " << cat.size() << "\n";
      for (auto const& [k, v] : prov) {
        r.numbers[k] = v;
        std::cout << "  " << k << ": " << v << "\n";
      }
      std::map<std::uint32_t, int> by_order;
      for (auto const& e : cat.entries) ++by_order[e.subgroup.order];
      for (auto const& [o, c] : by_order)
        std::cout << "  order " << o << ": " << c << " subgroup(s)\n";
      report.results.push_back(std::move(r));
    } else if (*ver) {
      report.inputs.push_back(check_id);
      report.results = run_verify(ctx, check_id, check_params, max_order, s_spec, p_prime);
      std::cout << "verify " << check_id << ":\n";
      for (auto const& r : report.results) print_result(r);
    } else if (*con) {
      if (*con_psl) {
        auto cat = build_psl2(psl_p, report.config.lattice_cap, report.config.seed);
        CheckResult r;
        r.check_id = "construct_psl2";
        r.instances = {"PSL(2," + std::to_string(psl_p) + ")"};
        r.numbers["order"] = cat.group->order();
        std::map<std::string, int> types;
        for (std::size_t i = 0; i < cat.maximals.size(); ++i)
          ++types[dickson_name(cat.types[i]) + "_order" +
                  std::to_string(cat.maximals[i].order)];
        std::cout << "PSL(2," << psl_p << "): order " << cat.group->order() << ", "
                  << cat.maximals.size() << " maximal subgroups\n";
        for (auto const& [k, v] : types) {
          r.numbers[k] = v;
          std::cout << "  " << k << ": " << v << "\n";
        }
        report.results.push_back(std::move(r));
      } else {
        report.results.push_back(check_prop44(ctx, load_spec_text(s_spec), p_prime));
        std::cout << "construct prop44:\n";
        print_result(report.results.back());
      }
    } else if (*sw) {
      report.inputs.push_back(check_id);
      report.results = run_verify(ctx, check_id, {}, max_order, "", 0);
      std::cout << "sweep " << check_id << " up to order " << max_order << ":\n";
      for (auto const& r : report.results) print_result(r);
    } else if (*rp) {
      return do_replay(report_path, g);
    }
  } catch (ParseError const& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 3;
  } catch (CapExceeded const& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return 2;
  }

  if (!g.json_path.empty()) report.write(g.json_path);
  if (replay_out) *replay_out = std::move(report);
  int code = exit_code_for(replay_out ? replay_out->results : report.results);
  if (code == 0)
    std::cout << "all assertions pass\n";
  else if (code == 1)
    std::cout << "CHECK FAILURE\n";
  else
    std::cout << "cap exceeded (best results recorded)\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    return run_argv(std::move(args));
  } catch (std::exception const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
