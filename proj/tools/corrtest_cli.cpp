// corrtest: command-line front end for sampling, testing, orbit algebra,
// enumeration, sweeps and the acceptance suite.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "corrtest/acceptance.hpp"
#include "corrtest/corrtest.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace corrtest;

namespace {

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  for (const auto& item : detail::split_list(s)) out.push_back(detail::parse_number<int>("list", item));
  return out;
}

std::vector<double> parse_double_list(const std::string& s) {
  std::vector<double> out;
  for (const auto& item : detail::split_list(s)) out.push_back(detail::parse_number<double>("list", item));
  return out;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path.string());
  out << text;
  if (!out) throw ParseError("write failed: " + path.string());
}

Permutation read_sigma(const std::string& path) { return io::read_file<Permutation>(path, io::read_permutation); }

struct ModelArgs {
  std::string model = "er";
  double rho = 0.5;
  double p = 0.5;
  double s = 0.5;

  void add(CLI::App* app) {
    app->add_option("--model", model, "gaussian or er")->check(CLI::IsMember({"gaussian", "er"}));
    app->add_option("--rho", rho, "Gaussian correlation");
    app->add_option("--p", p, "ER edge density of the parent graph");
    app->add_option("--s", s, "ER subsampling probability");
  }
};

// ---------------------------------------------------------------------------

int cmd_generate(const ModelArgs& m, int n, const std::string& hypothesis, std::uint64_t seed, std::uint64_t stream,
                 const std::string& out_dir) {
  fs::create_directories(out_dir);
  const SeedSpec spec{seed, stream};
  const bool planted = hypothesis == "planted";
  std::ostringstream a, b;
  std::optional<Permutation> pi;
  if (m.model == "gaussian") {
    const GaussianParams gp{n, m.rho};
    gp.validate();
    if (planted) {
      auto smp = sample_planted_gaussian(gp, spec);
      io::write_weighted_graph(a, smp.a);
      io::write_weighted_graph(b, smp.b);
      pi = smp.pi;
    } else {
      auto smp = sample_null_gaussian(gp, spec);
      io::write_weighted_graph(a, smp.a);
      io::write_weighted_graph(b, smp.b);
    }
  } else {
    const ErParams ep{n, m.p, m.s};
    ep.validate();
    if (planted) {
      auto smp = sample_planted_er(ep, spec);
      io::write_binary_graph(a, smp.a);
      io::write_binary_graph(b, smp.b);
      pi = smp.pi;
    } else {
      auto smp = sample_null_er(ep, spec);
      io::write_binary_graph(a, smp.a);
      io::write_binary_graph(b, smp.b);
    }
  }
  write_text(fs::path(out_dir) / "a.txt", a.str());
  write_text(fs::path(out_dir) / "b.txt", b.str());
  if (pi) {
    std::ostringstream ps;
    io::write_permutation(ps, *pi);
    write_text(fs::path(out_dir) / "pi.txt", ps.str());
  }
  std::cout << "wrote " << out_dir << (pi ? " (a.txt, b.txt, pi.txt)" : " (a.txt, b.txt)") << '\n';
  return 0;
}

int cmd_orbit(const std::string& sigma_file, int k, bool table, const std::string& backbone_file) {
  const OrbitStructure s(read_sigma(sigma_file));
  if (k <= 0) k = s.size();
  if (table || backbone_file.empty()) std::cout << orbit_table(s);
  json j;
  j["n"] = s.size();
  j["sigma"] = to_cycle_string(s.sigma());
  j["cycle_type"] = std::vector<int>(s.nodes().type.count.begin() + (s.size() > 0 ? 1 : 0), s.nodes().type.count.end());
  json census = json::object();
  for (std::size_t t = 1; t < s.census().count.size(); ++t)
    if (s.census().count[t]) census[std::to_string(t)] = s.census().count[t];
  j["census"] = census;
  j["short_orbits"] = s.short_orbit_ids(k).size();
  json orbits = json::array();
  for (std::size_t id = 0; id < s.orbits().size(); ++id) {
    const auto& c = s.orbit_class(static_cast<int>(id));
    json o;
    o["tag"] = c.tag();
    o["length"] = c.length;
    o["label"] = c.label;
    json es = json::array();
    for (const Edge& e : s.orbits()[id].edges) es.push_back({e.u + 1, e.v + 1});
    o["edges"] = es;
    orbits.push_back(o);
  }
  j["orbits"] = orbits;
  if (!backbone_file.empty()) {
    const BinaryGraph h = io::read_file<BinaryGraph>(backbone_file, io::read_binary_graph);
    const BackboneGraph g = backbone(s, h, k);
    json bb;
    json nodes = json::array();
    for (std::size_t i = 0; i < g.nodes.size(); ++i)
      nodes.push_back({{"length", g.nodes[i].length}, {"split", g.nodes[i].split},
                       {"min", i < g.orbit_min.size() ? g.orbit_min[i] + 1 : 0}});
    json edges = json::array();
    for (const GiantEdge& e : g.edges) edges.push_back({{"kind", kind_letter(e.kind)}, {"u", e.u}, {"v", e.v}, {"label", e.label}});
    bb["nodes"] = nodes;
    bb["edges"] = edges;
    bb["key"] = g.key();
    const auto pf = validate_pseudoforest(g);
    bb["pseudoforest_conditions"] = pf.ok;
    json viol = json::array();
    for (const auto& v : pf.violations) viol.push_back(v.condition + ": " + v.detail);
    bb["violations"] = viol;
    j["backbone"] = bb;
  }
  std::cout << j.dump(2) << '\n';
  return 0;
}

template <class G, class Model>
TestOutcome run_test(const std::string& stat, const G& a, const G& b, const Model& model, std::optional<double> thr,
                     double auto_thr, std::uint64_t seed) {
  if (stat == "qap-exact") return qap_exact_test(a, b, thr.value_or(auto_thr));
  if (stat == "qap-ls") return qap_local_search_test(a, b, thr.value_or(auto_thr), SeedSpec{seed, 0});
  if (stat == "lr") return TestOutcome::decide(log_likelihood_ratio_exact(a, b, model), thr.value_or(0.0));
  throw DomainError("unknown statistic " + stat);
}

int cmd_test(const ModelArgs& m, const std::string& stat, const std::string& fa, const std::string& fb,
             const std::string& threshold, std::uint64_t seed) {
  std::optional<double> thr;
  if (threshold != "auto") thr = detail::parse_number<double>("threshold", threshold);
  TestOutcome t;
  if (m.model == "gaussian") {
    if (stat == "edges") throw DomainError("the edge-count test needs the ER model");
    const auto a = io::read_file<WeightedGraph>(fa, io::read_weighted_graph);
    const auto b = io::read_file<WeightedGraph>(fb, io::read_weighted_graph);
    const double auto_thr = stat == "lr" ? 0.0 : threshold_gaussian(a.size(), m.rho);
    t = run_test(stat, a, b, GaussianModel{m.rho}, thr, auto_thr, seed);
  } else {
    const auto a = io::read_file<BinaryGraph>(fa, io::read_binary_graph);
    const auto b = io::read_file<BinaryGraph>(fb, io::read_binary_graph);
    const ErParams params{a.size(), m.p, m.s};
    if (stat == "edges") {
      t = edge_count_test(a, b, params);
      if (thr) t = TestOutcome::decide(t.statistic, *thr, Direction::Below);
    } else {
      const double auto_thr = stat == "lr" || thr ? 0.0 : threshold_er(a.size(), m.p, m.s);
      t = run_test(stat, a, b, ErModel{m.p, m.s}, thr, auto_thr, seed);
    }
  }
  std::cout << "statistic " << t.statistic << (stat == "lr" ? " (log likelihood ratio)" : "") << '\n'
            << "threshold " << t.threshold << (t.direction == Direction::Below ? " (planted if below)" : " (planted if at least)")
            << '\n'
            << "decision " << (t.decision == Decision::Planted ? "planted" : "null") << '\n';
  if (t.argmax) {
    std::cout << "argmax ";
    io::write_permutation(std::cout, *t.argmax);
  }
  return 0;
}

int cmd_gf(const std::string& sigma_file, int k, double s, bool forest) {
  const Permutation sigma = read_sigma(sigma_file);
  const OrbitStructure st(sigma);
  const double brute = evaluate_gf(gf_histogram(st, k, forest), s);
  const double bound = forest ? gf_bound_forest(st.nodes().type, k, s) : gf_bound_jk(st.nodes().type, k, s);
  std::cout << "bruteforce " << brute << "\nbound " << bound << "\nmargin " << bound - brute << '\n';
  return brute <= bound * (1.0 + 1e-12) ? 0 : 1;
}

int cmd_moments(const ModelArgs& m, int n, std::size_t mc, std::uint64_t seed) {
  const MomentModel model = m.model == "gaussian" ? MomentModel::gaussian(m.rho) : MomentModel::er(m.p, m.s);
  std::cout << std::setprecision(12);
  if (mc > 0) {
    const auto rep = second_moment_monte_carlo(n, model, mc, SeedSpec{seed, 0});
    std::cout << "model,n,samples,mean,std_error\n"
              << rep.model << ',' << n << ',' << mc << ',' << rep.monte_carlo->mean << ',' << rep.monte_carlo->std_error << '\n';
    return 0;
  }
  const auto rep = second_moment_exact(n, model);
  std::cout << "model,n,cycle_type,permutations,product,contribution\n";
  for (const auto& row : rep.table) {
    std::string ct;
    for (std::size_t i = 0; i < row.cycle_counts.size(); ++i) ct += (i ? " " : "") + std::to_string(row.cycle_counts[i]);
    std::cout << rep.model << ',' << n << ',' << ct << ',' << row.permutations << ',' << row.product << ','
              << row.contribution << '\n';
  }
  std::cout << rep.model << ',' << n << ",total,," << ',' << *rep.exact << '\n';
  return 0;
}

int cmd_enumerate(const std::string& type_spec, int k, const std::string& params_spec, bool validate, bool forest) {
  const CycleType type = CycleType::from_counts(parse_int_list(type_spec));
  ConstructionParams p = ConstructionParams::zeros(k);
  std::vector<std::string> groups;
  std::stringstream ss(params_spec);
  for (std::string g; std::getline(ss, g, '/');) groups.push_back(g);
  if (groups.size() > 4) throw ParseError("--params takes at most four groups a/b/c/d");
  std::vector<int>* dst[4] = {&p.a, &p.b, &p.c, &p.d};
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const auto vals = parse_int_list(groups[g]);
    if (static_cast<int>(vals.size()) > k) throw ParseError("parameter list longer than k");
    for (std::size_t t = 0; t < vals.size(); ++t) (*dst[g])[t + 1] = vals[t];
  }
  std::uint64_t valid = 0;
  std::map<std::string, std::uint64_t> violations;
  auto visit = [&](const Emission& e) {
    if (e.verdict) {
      if (e.verdict->ok) ++valid;
      std::set<std::string> conds;
      for (const auto& v : e.verdict->violations) conds.insert(v.condition);
      for (const auto& c : conds) ++violations[c];
    }
    return true;
  };
  const StreamOptions opt{validate};
  const std::uint64_t count = forest ? algorithm1_forests(type, p, visit, opt) : algorithm2_pseudoforests(type, p, visit, opt);
  const double bound = forest ? forest_stream_bound(type, p) : pseudoforest_stream_bound(type, p);
  std::cout << "feasible " << (feasible(type, p, forest) ? "yes" : "no") << "\nstream_length " << count << "\nbound "
            << bound << '\n';
  if (validate) {
    std::cout << "valid " << valid << '\n';
    for (const auto& [c, n] : violations) std::cout << "violating " << c << ' ' << n << '\n';
  }
  return 0;
}

int cmd_sweep(const std::string& config_file, const std::string& out_override) {
  std::ifstream in(config_file);
  if (!in) throw ParseError("cannot open " + config_file);
  SweepConfig c = parse_sweep_config(in);
  if (!out_override.empty()) c.output = out_override;
  const auto res = run_sweep(c);
  for (const auto& r : res.rows)
    if (r.failed) std::cerr << "cell n=" << r.cell.n << " test=" << r.test << " failed: " << r.failure << '\n';
  if (c.output.empty() || c.output == "-") {
    std::cout << res.csv();
  } else {
    write_text(c.output, res.csv());
  }
  return 0;
}

int cmd_tv(int n, double p, double s) {
  const ErParams params{n, p, s};
  const auto c = exact_compare_er(params);
  std::cout << std::setprecision(12) << "tv " << exact_tv_er(params) << "\nlr_error " << c.lr_error << "\nqap_min_error "
            << c.qap_min_error << "\nedge_min_error " << c.edge_min_error << "\nedge_error " << c.edge_fixed_error << '\n';
  return 0;
}

int cmd_curves(const std::string& model, int n_min, int n_max, int points, const std::string& ps) {
  const SweepModel m = model == "gaussian" ? SweepModel::Gaussian : SweepModel::Er;
  const auto rows = threshold_curves(m, log_spaced(n_min, n_max, points), parse_double_list(ps));
  std::cout << curves_csv(m, rows);
  if (m == SweepModel::Er) {
    const PStar star = p_star();
    std::cerr << "p* = " << std::setprecision(10) << star.by_root << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Correlation testing for unlabeled random graphs"};
  app.require_subcommand(1);

  ModelArgs gen_model;
  int gen_n = 10;
  std::string hypothesis = "planted", out_dir = ".";
  std::uint64_t seed = 1, stream = 0;
  auto* gen = app.add_subcommand("generate", "sample a graph pair");
  gen_model.add(gen);
  gen->add_option("--n", gen_n)->required();
  gen->add_option("--hypothesis", hypothesis)->check(CLI::IsMember({"null", "planted"}));
  gen->add_option("--seed", seed);
  gen->add_option("--stream", stream, "stream id within the seed");
  gen->add_option("--out", out_dir, "output directory");

  std::string sigma_file, backbone_file;
  int orbit_k = 0;
  bool table = false;
  auto* orbit = app.add_subcommand("orbit", "edge orbits of a permutation");
  orbit->add_option("--sigma", sigma_file, "permutation file")->required();
  orbit->add_option("--k", orbit_k, "orbit length bound (default n)");
  orbit->add_flag("--table", table, "print the orbit table");
  orbit->add_option("--backbone", backbone_file, "orbit graph file whose backbone is printed");

  ModelArgs test_model;
  std::string stat = "qap-exact", fa, fb, threshold = "auto";
  auto* test = app.add_subcommand("test", "run a detection test on a graph pair");
  test_model.add(test);
  test->add_option("--stat", stat)->check(CLI::IsMember({"qap-exact", "qap-ls", "lr", "edges"}));
  test->add_option("--a", fa)->required();
  test->add_option("--b", fb)->required();
  test->add_option("--threshold", threshold, "auto or a number");
  test->add_option("--seed", seed);

  int gf_k = 2;
  double gf_s = 0.1;
  bool gf_forest = false;
  auto* gf = app.add_subcommand("gf", "orbit pseudoforest generating function against its bound");
  gf->add_option("--sigma", sigma_file)->required();
  gf->add_option("--k", gf_k)->required();
  gf->add_option("--s", gf_s)->required();
  gf->add_flag("--forest", gf_forest);

  ModelArgs mom_model;
  int mom_n = 3;
  std::size_t mc = 0;
  auto* moments = app.add_subcommand("moments", "second moment E_Q[(P/Q)^2] by cycle type");
  mom_model.add(moments);
  moments->add_option("--n", mom_n)->required();
  moments->add_option("--mc", mc, "Monte-Carlo samples instead of exact enumeration");
  moments->add_option("--seed", seed);

  std::string type_spec, params_spec;
  int enum_k = 1;
  bool validate = false, enum_forest = false;
  auto* en = app.add_subcommand("enumerate", "run the backbone construction stream");
  en->add_option("--cycle-type", type_spec, "n_1,n_2,...")->required();
  en->add_option("--k", enum_k)->required();
  en->add_option("--params", params_spec, "a/b/c/d, each a comma list over t=1..k");
  en->add_flag("--validate", validate);
  en->add_flag("--forest", enum_forest, "forest construction instead of pseudoforest");

  std::string config_file, sweep_out;
  auto* sweep = app.add_subcommand("sweep", "Monte-Carlo error sweep to CSV");
  sweep->add_option("--config", config_file)->required();
  sweep->add_option("--out", sweep_out, "overrides the config's output");

  int tv_n = 3;
  double tv_p = 0.5, tv_s = 0.5;
  auto* tv = app.add_subcommand("tv", "exact TV(P, Q) and test errors for tiny ER");
  tv->add_option("--n", tv_n)->required();
  tv->add_option("--p", tv_p)->required();
  tv->add_option("--s", tv_s)->required();

  std::string curve_model = "gaussian", curve_ps = "0.01,0.1,0.203,0.5,0.9";
  int n_min = 10, n_max = 10000, points = 20;
  auto* curves = app.add_subcommand("curves", "detection boundary formulas");
  curves->add_option("--model", curve_model)->check(CLI::IsMember({"gaussian", "er"}));
  curves->add_option("--n-min", n_min);
  curves->add_option("--n-max", n_max);
  curves->add_option("--points", points);
  curves->add_option("--p", curve_ps, "comma list of p (ER)");

  std::vector<std::string> suites;
  std::uint64_t verify_seed = acceptance::kDefaultSeed;
  auto* verify = app.add_subcommand("verify", "run the acceptance suites");
  verify->add_option("--suite", suites, "suite name or number (repeatable)");
  verify->add_option("--seed", verify_seed);

  CLI11_PARSE(app, argc, argv);
  std::cout.imbue(std::locale::classic());
  try {
    if (*gen) return cmd_generate(gen_model, gen_n, hypothesis, seed, stream, out_dir);
    if (*orbit) return cmd_orbit(sigma_file, orbit_k, table, backbone_file);
    if (*test) return cmd_test(test_model, stat, fa, fb, threshold, seed);
    if (*gf) return cmd_gf(sigma_file, gf_k, gf_s, gf_forest);
    if (*moments) return cmd_moments(mom_model, mom_n, mc, seed);
    if (*en) return cmd_enumerate(type_spec, enum_k, params_spec, validate, enum_forest);
    if (*sweep) return cmd_sweep(config_file, sweep_out);
    if (*tv) return cmd_tv(tv_n, tv_p, tv_s);
    if (*curves) return cmd_curves(curve_model, n_min, n_max, points, curve_ps);
    if (*verify) {
      acceptance::Options opt;
      opt.seed = verify_seed;
      return acceptance::run(opt, suites, std::cout, std::cerr) ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
