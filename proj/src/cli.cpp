#include "quadwalk/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "quadwalk/constants.hpp"
#include "quadwalk/diophantine.hpp"
#include "quadwalk/walk.hpp"

namespace quadwalk::cli {

using json = nlohmann::ordered_json;

namespace {

constexpr const char* kSchemaVersion = "1";

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string rat_str(const Rat& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

json unit_json(const FundamentalUnit& fu) {
  return json{{"D", fu.D.get_str()},
              {"t0", fu.t0.get_str()},
              {"u0", fu.u0.get_str()},
              {"eps_decimal", fmt_double(fu.eps.approx())},
              {"log_eps", fmt_double(fu.log_eps.to_double())}};
}

json constant_json(const ExactConstant& c) {
  return json{{"coeff", rat_str(c.coeff)},
              {"d", c.d},
              {"eps", unit_json(c.unit)},
              {"float", fmt_double(c.approx())}};
}

Rat parse_rat(const std::string& s) {
  size_t slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(s));
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    if (den == 0) throw parse_error("zero denominator");
    return make_rat(num, den);
  } catch (const std::invalid_argument&) {
    throw parse_error("bad rational: " + s);
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

long parse_long(const std::string& s) {
  try {
    size_t pos = 0;
    long v = std::stol(s, &pos);
    if (pos != s.size()) throw parse_error("bad integer: " + s);
    return v;
  } catch (const std::exception&) {
    throw parse_error("bad integer: " + s);
  }
}

}  // namespace

QuadIrrational parse_alpha(const std::string& text) {
  if (text == "phi") return QuadIrrational::make(1, 1, 2, 5);
  if (text.rfind("sqrt", 0) == 0 && text.size() > 4) {
    long d = parse_long(text.substr(4));
    return QuadIrrational::make(0, 1, 1, d);
  }
  if (text.rfind("quad:", 0) == 0) {
    auto parts = split(text.substr(5), ',');
    if (parts.size() != 4) throw parse_error("alpha: quad:p,q,r,d expects 4 fields");
    return QuadIrrational::make(Int(parts[0]), Int(parts[1]), Int(parts[2]),
                                parse_long(parts[3]));
  }
  if (text.rfind("poly:", 0) == 0) {
    auto parts = split(text.substr(5), ',');
    if (parts.size() != 4 || (parts[3] != "+" && parts[3] != "-"))
      throw parse_error("alpha: poly:a,b,c,+|- expects 4 fields");
    return QuadIrrational::from_poly(Int(parts[0]), Int(parts[1]), Int(parts[2]),
                                     parts[3] == "+" ? +1 : -1);
  }
  throw parse_error("alpha: unrecognized spec '" + text + "'");
}

StepLaw parse_law(const std::string& text) {
  std::vector<std::pair<long, Rat>> entries;
  for (const std::string& item : split(text, ',')) {
    auto kv = split(item, ':');
    if (kv.size() != 2) throw parse_error("law: expected v:p entries");
    entries.emplace_back(parse_long(kv[0]), parse_rat(kv[1]));
  }
  return StepLaw::make(std::move(entries));
}

namespace {

int pick_threads(int opt) {
  if (opt > 0) return opt;
  if (const char* env = std::getenv("QUADWALK_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

json cf_json(const QuadIrrational& alpha, const std::string& kind) {
  json out{{"schema_version", kSchemaVersion}, {"kind", kind}};
  if (kind == "regular") {
    RegularCF cf = regular_cf(alpha);
    out["a0"] = cf.a0.get_str();
    json pre = json::array(), per = json::array();
    for (auto& x : cf.preperiod) pre.push_back(x.get_str());
    for (auto& x : cf.period) per.push_back(x.get_str());
    out["preperiod"] = pre;
    out["period"] = per;
  } else {
    BackwardCF cf = backward_cf(alpha);
    out["b0"] = cf.b0.get_str();
    json pre = json::array(), per = json::array();
    for (auto& x : cf.preperiod) pre.push_back(x.get_str());
    for (auto& x : cf.period) per.push_back(x.get_str());
    out["preperiod"] = pre;
    out["period"] = per;
    out["i0"] = cf.i0;
    out["r"] = cf.r;
  }
  return out;
}

json surd_json(const SurdValue& v) {
  return json{{"coeff", rat_str(v.coeff)},
              {"d", v.d},
              {"pi_power", v.pi_power},
              {"float", fmt_double(v.approx())}};
}

// Table 1 columns: the nine sqrt(d) entries plus the golden ratio.
json table_c1c2(std::string* csv) {
  json rows = json::array();
  std::vector<std::pair<std::string, QuadIrrational>> alphas;
  alphas.emplace_back("phi", QuadIrrational::make(1, 1, 2, 5));
  for (long d : {2L, 3L, 5L, 6L, 7L, 10L, 11L, 13L, 14L})
    alphas.emplace_back("sqrt" + std::to_string(d), QuadIrrational::make(0, 1, 1, d));
  std::ostringstream os;
  os << "alpha,c1_coeff,c2_coeff,d,t0,u0,c1_float,c2_float\n";
  for (auto& [name, alpha] : alphas) {
    auto [c1, c2] = c1_c2_exact(alpha);
    rows.push_back(json{{"alpha", name}, {"c1", constant_json(c1)}, {"c2", constant_json(c2)}});
    os << name << "," << rat_str(c1.coeff) << "," << rat_str(c2.coeff) << "," << c1.d
       << "," << c1.unit.t0.get_str() << "," << c1.unit.u0.get_str() << ","
       << fmt_double(c1.approx()) << "," << fmt_double(c2.approx()) << "\n";
  }
  if (csv) *csv = os.str();
  return json{{"schema_version", kSchemaVersion}, {"table", "c1c2"}, {"rows", rows}};
}

json table_epsilon(std::string* csv) {
  json rows = json::array();
  std::ostringstream os;
  os << "D,t0,u0,eps_decimal\n";
  for (long D : {8L, 12L, 20L, 24L, 28L, 32L, 40L, 44L, 5L, 13L, 17L, 21L, 29L, 33L, 37L}) {
    FundamentalUnit fu = pell_smallest(Int(D));
    rows.push_back(json{{"D", D},
                        {"t0", fu.t0.get_str()},
                        {"u0", fu.u0.get_str()},
                        {"eps_decimal", fmt_double(fu.eps.approx())}});
    os << D << "," << fu.t0.get_str() << "," << fu.u0.get_str() << ","
       << fmt_double(fu.eps.approx()) << "\n";
  }
  if (csv) *csv = os.str();
  return json{{"schema_version", kSchemaVersion}, {"table", "epsilon"}, {"rows", rows}};
}

json table_zeta(std::string* csv) {
  json rows = json::array();
  std::ostringstream os;
  os << "d,zeta2_coeff,zeta2_pi_power,zeta4_coeff,zeta4_pi_power\n";
  for (long d : {2L, 3L, 5L, 6L, 7L, 10L, 11L, 13L, 14L, 15L, 17L, 19L, 21L, 22L, 23L}) {
    SurdValue z2 = dedekind_special(d, 2);
    SurdValue z4 = dedekind_special(d, 4);
    rows.push_back(json{{"d", d}, {"zeta2", surd_json(z2)}, {"zeta4", surd_json(z4)}});
    os << d << "," << rat_str(z2.coeff) << "," << z2.pi_power << "," << rat_str(z4.coeff)
       << "," << z4.pi_power << "\n";
  }
  if (csv) *csv = os.str();
  return json{{"schema_version", kSchemaVersion}, {"table", "zeta"}, {"rows", rows}};
}

// Aligned text rendering of a {..., rows: [...]} payload for --format table.
std::string render_table(const json& doc) {
  if (!doc.contains("rows")) return doc.dump(2) + "\n";
  const json& rows = doc["rows"];
  if (rows.empty()) return "(empty)\n";
  std::vector<std::string> headers;
  for (auto it = rows[0].begin(); it != rows[0].end(); ++it) headers.push_back(it.key());
  auto cell = [](const json& v) -> std::string {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_object()) {
      // constants / surds: compact "coeff [float]" style
      std::string s;
      if (v.contains("coeff")) s = v["coeff"].get<std::string>();
      if (v.contains("float")) s += " [" + v["float"].get<std::string>() + "]";
      return s.empty() ? v.dump() : s;
    }
    return v.dump();
  };
  std::vector<size_t> width(headers.size());
  for (size_t c = 0; c < headers.size(); ++c) {
    width[c] = headers[c].size();
    for (const auto& row : rows) width[c] = std::max(width[c], cell(row[headers[c]]).size());
  }
  std::ostringstream os;
  for (size_t c = 0; c < headers.size(); ++c)
    os << (c ? "  " : "") << headers[c] << std::string(width[c] - headers[c].size(), ' ');
  os << "\n";
  for (const auto& row : rows) {
    for (size_t c = 0; c < headers.size(); ++c) {
      std::string s = cell(row[headers[c]]);
      os << (c ? "  " : "") << s << std::string(width[c] - s.size(), ' ');
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact convergence constants and Wasserstein walk experiments"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  std::string alpha_spec, law_spec = "-1:1/2,1:1/2", which = "c1c2", format = "json";
  std::string kind = "backward", paths = "exact", ngrid_spec = "1024:65536:x2", slope_spec;
  long D_opt = 0, kneg = 1, svalue = 2, dvalue = 2;
  long long M_opt = 1000000;
  long beck_a = 10, beck_rho = 2;
  int beck_kmax = 3, threads_opt = 0;
  long long beck_budget = 30000000;
  long trials = 100, fourier_cut = 0;
  std::uint64_t seed = 0;
  double theta = 2.0, tol = 1e-3;

  app.add_option("--format", format)->check(CLI::IsMember({"json", "csv", "table"}));
  app.add_option("--threads", threads_opt);

  auto* c_cmd = app.add_subcommand("constants", "exact c1, c2 with optional cross-paths");
  c_cmd->add_option("--alpha", alpha_spec)->required();
  c_cmd->add_option("--paths", paths)->check(CLI::IsMember({"all", "exact", "series", "special"}));
  c_cmd->add_option("--tol", tol);

  auto* z_cmd = app.add_subcommand("zeta", "zeta special values");
  auto* zd_cmd = z_cmd->add_subcommand("dedekind", "Dedekind zeta at s = 2 or 4");
  zd_cmd->add_option("--d", dvalue)->required();
  zd_cmd->add_option("--s", svalue)->check(CLI::IsMember({2, 4}));
  auto* zm_cmd = z_cmd->add_subcommand("module", "module zeta at negative -k");
  zm_cmd->add_option("--alpha", alpha_spec)->required();
  zm_cmd->add_option("--k", kneg);

  auto* p_cmd = app.add_subcommand("pell", "least totally positive unit");
  p_cmd->add_option("--D", D_opt)->required();

  auto* h_cmd = app.add_subcommand("classno", "class number and representatives");
  h_cmd->add_option("--D", D_opt)->required();

  auto* cf_cmd = app.add_subcommand("cf", "continued fraction expansions");
  cf_cmd->add_option("--alpha", alpha_spec)->required();
  cf_cmd->add_option("--kind", kind)->check(CLI::IsMember({"regular", "backward"}));

  auto* ds_cmd = app.add_subcommand("dsum", "Diophantine sums");
  ds_cmd->add_option("--alpha", alpha_spec)->required();
  ds_cmd->add_option("--theta", theta);
  ds_cmd->add_option("--M", M_opt);
  ds_cmd->add_option("--slope", slope_spec);

  auto* b_cmd = app.add_subcommand("beck", "bounded-quotient divergence demo");
  b_cmd->add_option("--a", beck_a);
  b_cmd->add_option("--rho", beck_rho);
  b_cmd->add_option("--kmax", beck_kmax);
  b_cmd->add_option("--theta", theta);
  b_cmd->add_option("--budget", beck_budget);

  auto* w_cmd = app.add_subcommand("walk", "Monte Carlo Wasserstein experiment");
  w_cmd->add_option("--alpha", alpha_spec)->required();
  w_cmd->add_option("--law", law_spec);
  w_cmd->add_option("--ngrid", ngrid_spec);
  w_cmd->add_option("--trials", trials);
  w_cmd->add_option("--seed", seed);
  w_cmd->add_option("--fourier-cut", fourier_cut);

  auto* t_cmd = app.add_subcommand("tables", "golden value tables");
  t_cmd->add_option("--which", which)->check(CLI::IsMember({"c1c2", "epsilon", "zeta"}));

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  int threads = pick_threads(threads_opt);

  try {
    json result;
    std::string csv;

    if (c_cmd->parsed()) {
      QuadIrrational alpha = parse_alpha(alpha_spec);
      auto [c1, c2] = c1_c2_exact(alpha);
      result = json{{"schema_version", kSchemaVersion},
                    {"alpha", alpha.str()},
                    {"c1", constant_json(c1)},
                    {"c2", constant_json(c2)}};
      json report = json::object();
      if (paths == "all" || paths == "series") {
        json srj = json::object();
        for (double th : {2.0, 4.0}) {
          SeriesResult sr = c_theta_series(alpha, th, tol, threads);
          double target = (th == 2.0)
                              ? 4 * std::pow(M_PI, 4) * c1.approx()
                              : 8 * std::pow(M_PI, 8) * c2.approx();
          srj["theta" + std::to_string(int(th))] =
              json{{"value", fmt_double(sr.value)},
                   {"tail_bound", fmt_double(sr.tail_bound)},
                   {"n_max", sr.n_max},
                   {"envelope_K", fmt_double(sr.envelope_K)},
                   {"exact_target", fmt_double(target)}};
        }
        report["series"] = srj;
      }
      if (paths == "all" || paths == "special") {
        auto sp = c1_c2_special_paths(alpha);
        if (sp) {
          report["special"] = json{{"path", sp->path_name()},
                                   {"c1", constant_json(sp->c1)},
                                   {"c2", constant_json(sp->c2)}};
        } else {
          report["special"] = "not-applicable";
        }
      }
      result["paths_report"] = report;
    } else if (zd_cmd->parsed()) {
      result = surd_json(dedekind_special(dvalue, static_cast<int>(svalue)));
      result["schema_version"] = kSchemaVersion;
    } else if (zm_cmd->parsed()) {
      QuadIrrational alpha = parse_alpha(alpha_spec);
      ModuleCycle cycle = module_cycle(alpha);
      Rat z = zeta_module_neg(cycle, static_cast<unsigned>(kneg));
      json terms = json::array();
      for (const Rat& t : zeta_module_neg_terms(cycle, static_cast<unsigned>(kneg)))
        terms.push_back(rat_str(t));
      result = json{{"schema_version", kSchemaVersion},
                    {"alpha", alpha.str()},
                    {"k", kneg},
                    {"value", rat_str(z)},
                    {"terms", terms}};
    } else if (p_cmd->parsed()) {
      FundamentalUnit fu = pell_smallest(Int(D_opt));
      result = unit_json(fu);
      result["schema_version"] = kSchemaVersion;
    } else if (h_cmd->parsed()) {
      ClassData cd = class_number(Int(D_opt));
      json reps = json::array();
      for (auto& Q : cd.representatives)
        reps.push_back(json::array({Q.a.get_str(), Q.b.get_str(), Q.c.get_str()}));
      result = json{{"schema_version", kSchemaVersion},
                    {"D", D_opt},
                    {"h", cd.h},
                    {"representatives", reps}};
    } else if (cf_cmd->parsed()) {
      result = cf_json(parse_alpha(alpha_spec), kind);
    } else if (ds_cmd->parsed()) {
      QuadIrrational alpha = parse_alpha(alpha_spec);
      if (!slope_spec.empty()) {
        auto parts = split(slope_spec, ',');
        if (parts.size() != 2) throw parse_error("--slope expects M1,M2");
        long long M1 = std::stoll(parts[0]), M2 = std::stoll(parts[1]);
        double s = dsum_slope(alpha, theta, M1, M2, threads);
        result = json{{"schema_version", kSchemaVersion},
                      {"theta", theta},
                      {"M1", M1},
                      {"M2", M2},
                      {"slope", fmt_double(s)}};
      } else {
        std::vector<long long> cps;
        for (long long c = 10; c < M_opt; c *= 10) cps.push_back(c);
        DSumReport rep = dsum(alpha, theta, M_opt, cps, threads);
        std::ostringstream os;
        os << "M,sum,sum_over_logM\n";
        for (auto& c : rep.checkpoints)
          os << c.M << "," << fmt_double(c.sum) << "," << fmt_double(c.ratio) << "\n";
        csv = os.str();
        json jcps = json::array();
        for (auto& c : rep.checkpoints)
          jcps.push_back(json{{"M", c.M}, {"sum", fmt_double(c.sum)}, {"ratio", fmt_double(c.ratio)}});
        result = json{{"schema_version", kSchemaVersion},
                      {"theta", theta},
                      {"M", M_opt},
                      {"sum", fmt_double(rep.sum)},
                      {"checkpoints", jcps}};
      }
    } else if (b_cmd->parsed()) {
      BeckReport rep = beck_sequence(beck_a, beck_rho, beck_kmax, theta, beck_budget, threads);
      json cps = json::array();
      std::ostringstream os;
      os << "k,J,block,q_bits,log_M,proxy_ratio,direct,ratio\n";
      for (auto& c : rep.checkpoints) {
        cps.push_back(json{{"k", c.k},
                           {"J", c.J},
                           {"block", c.even_block ? "even" : "odd"},
                           {"q", c.q.get_str()},
                           {"log_M", fmt_double(c.log_M)},
                           {"proxy_ratio", fmt_double(c.proxy_ratio)},
                           {"direct", c.direct},
                           {"ratio", c.direct ? fmt_double(c.ratio) : ""}});
        os << c.k << "," << c.J << "," << (c.even_block ? "even" : "odd") << ","
           << mpz_sizeinbase(c.q.get_mpz_t(), 2) << "," << fmt_double(c.log_M) << ","
           << fmt_double(c.proxy_ratio) << "," << (c.direct ? 1 : 0) << ","
           << (c.direct ? fmt_double(c.ratio) : "") << "\n";
      }
      csv = os.str();
      result = json{{"schema_version", kSchemaVersion},
                    {"a", rep.a},
                    {"rho", rep.rho},
                    {"k_max", rep.k_max},
                    {"theta", rep.theta},
                    {"checkpoints", cps}};
    } else if (w_cmd->parsed()) {
      QuadIrrational alpha = parse_alpha(alpha_spec);
      StepLaw law = parse_law(law_spec);
      // grid grammar: lo:hi:x<f> (geometric) or comma list
      std::vector<long> grid;
      if (ngrid_spec.find(':') != std::string::npos) {
        auto parts = split(ngrid_spec, ':');
        if (parts.size() != 3 || parts[2].empty() || parts[2][0] != 'x')
          throw parse_error("--ngrid expects lo:hi:x<factor> or a comma list");
        long lo = parse_long(parts[0]), hi = parse_long(parts[1]);
        long f = parse_long(parts[2].substr(1));
        if (lo < 1 || f < 2) throw parse_error("--ngrid: bad range");
        for (long n = lo; n <= hi; n *= f) grid.push_back(n);
      } else {
        for (auto& s : split(ngrid_spec, ',')) grid.push_back(parse_long(s));
      }
      WalkConfig cfg{law, alpha, grid, trials, seed, fourier_cut, threads};
      WalkStats stats = run_experiment(cfg);
      WalkPrediction pred = walk_prediction(law, alpha);
      std::ostringstream os;
      os << "N,mean,var,se_mean,se_var,mean_main,var_main\n";
      json per_n = json::array();
      for (auto& ps : stats.per_n) {
        auto [mm, vm] = finite_n_main_terms(law, alpha, ps.N);
        os << ps.N << "," << fmt_double(ps.mean) << "," << fmt_double(ps.var) << ","
           << fmt_double(ps.se_mean) << "," << fmt_double(ps.se_var) << ","
           << fmt_double(mm) << "," << fmt_double(vm) << "\n";
        per_n.push_back(json{{"N", ps.N},
                             {"mean", fmt_double(ps.mean)},
                             {"var", fmt_double(ps.var)},
                             {"se_mean", fmt_double(ps.se_mean)},
                             {"se_var", fmt_double(ps.se_var)},
                             {"mean_main", fmt_double(mm)},
                             {"var_main", fmt_double(vm)}});
      }
      csv = os.str();
      result = json{
          {"schema_version", kSchemaVersion},
          {"alpha", alpha.str()},
          {"L", pred.L},
          {"sigma2", fmt_double(pred.sigma2)},
          {"fit", json{{"A_E", fmt_double(stats.mean_fit.slope)},
                       {"se_A_E", fmt_double(stats.mean_fit.se_slope)},
                       {"B_E", fmt_double(stats.mean_fit.intercept)},
                       {"A_V", fmt_double(stats.var_fit.slope)},
                       {"se_A_V", fmt_double(stats.var_fit.se_slope)},
                       {"B_V", fmt_double(stats.var_fit.intercept)}}},
          {"prediction", json{{"A_E", fmt_double(pred.mean_slope)},
                              {"A_V", fmt_double(pred.var_slope)},
                              {"c1_Lalpha", constant_json(pred.c1_Lalpha)},
                              {"c2_Lalpha", constant_json(pred.c2_Lalpha)}}},
          {"per_n", per_n}};
      if (fourier_cut > 0)
        result["fourier_check"] = json{{"max_dev", fmt_double(stats.fourier_check_dev)},
                                       {"bound", fmt_double(stats.fourier_check_bound)}};
    } else if (t_cmd->parsed()) {
      if (which == "c1c2") result = table_c1c2(&csv);
      else if (which == "epsilon") result = table_epsilon(&csv);
      else result = table_zeta(&csv);
    }

    if (format == "csv" && !csv.empty()) {
      out << csv;
    } else if (format == "table") {
      out << render_table(result);
    } else {
      out << result.dump() << "\n";
    }
    return 0;
  } catch (const error& e) {
    err << "error[" << e.code() << "]: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace quadwalk::cli
