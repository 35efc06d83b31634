// command-line front end: every computation as a subcommand with
// machine-readable output

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>

#include "ordscan/densities.hpp"
#include "ordscan/galdiag.hpp"
#include "ordscan/gsp_asym.hpp"
#include "ordscan/redscan.hpp"
#include "ordscan/somos.hpp"
#include "ordscan/verify.hpp"

using namespace ordscan;
using json = nlohmann::ordered_json;

namespace {

std::string rat_str(const Rat& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

json interval_json(const DensityInterval& d) {
  return json{{"lower", rat_str(d.lower)},
              {"upper", rat_str(d.upper)},
              {"lower_decimal", rat_to_decimal(d.lower, 10)},
              {"upper_decimal", rat_to_decimal(d.upper, 10)},
              {"level", d.level}};
}

u64 parse_bound(const std::string& s) {
  double d = std::stod(s);
  if (d < 2 || d > 1e7) throw CLI::ValidationError("bound must be in [2, 1e7]");
  return (u64)(d + 0.5);
}

// validating enumeration interval for a closed form, at the largest cheap level
DensityInterval validating_interval(const std::string& family, u64 ell, const std::string& variant,
                                    const std::string& scope) {
  GroupSpec spec;
  spec.ell = ell;
  unsigned n = 1;
  if (family == "gm") {
    spec.kind = SpecKind::ScalarUnits;
    n = ell == 2 ? 6 : (ell == 3 ? 4 : 2);
  } else if (family == "gl2") {
    spec.kind = SpecKind::GL2Full;
    n = ell == 2 ? 3 : (ell == 3 ? 2 : 1);
  } else if (family == "split-torus-pair") {
    spec.kind = SpecKind::SplitTorusPair;
    n = ell == 2 ? 6 : (ell == 3 ? 4 : 2);
  } else if (family == "cm") {
    bool split = variant == "split";
    bool normalizer = scope == "normalizer";
    if (split)
      spec.kind = normalizer ? SpecKind::CartanNormalizerSplit : SpecKind::CartanSplit;
    else {
      spec.kind = normalizer ? SpecKind::CartanNormalizerNonsplit : SpecKind::CartanNonsplit;
      // a default irreducible quadratic x^2 + cx + d mod ell
      if (ell == 2) spec.cns_c = 1, spec.cns_d = 1;
      else {
        for (u64 d = 1; d < ell; ++d)
          if (quadratic_irreducible(0, d, ell)) {
            spec.cns_c = 0;
            spec.cns_d = d;
            break;
          }
      }
    }
    n = ell == 2 ? 4 : (ell == 3 ? 3 : 2);
  } else {
    throw CLI::ValidationError("unknown family: " + family);
  }
  while (spec.order_at_level(n) > 200000 && n > 1) --n;
  return density_level(spec, n);
}

int emit(const json& j, const std::string& format) {
  if (format == "json") {
    std::cout << j.dump(2) << "\n";
  } else {
    // text: flat key: value lines
    for (auto it = j.begin(); it != j.end(); ++it)
      std::cout << it.key() << ": " << (it->is_string() ? it->get<std::string>() : it->dump())
                << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ordscan: densities of primes with point order coprime to ell"};
  app.require_subcommand(1);
  std::string format = "text";
  app.add_option("--format", format, "output format: text, json or csv")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  u64 seed = 1;
  app.add_option("--seed", seed, "rng seed for monte carlo paths");
  int workers = 1;
  app.add_option("--workers", workers, "worker threads for scans and sampling")
      ->check(CLI::Range(1, 256));

  // density <family> --ell
  auto* cmd_density = app.add_subcommand("density", "closed-form density values");
  cmd_density->fallthrough();
  std::string family, variant = "split", scope = "normalizer";
  u64 ell = 2;
  cmd_density->add_option("family", family, "gm, gl2, cm or split-torus-pair")->required();
  cmd_density->add_option("--ell", ell, "the prime ell");
  cmd_density->add_option("--variant", variant, "cm only: split or inert")
      ->check(CLI::IsMember({"split", "inert"}));
  cmd_density->add_option("--scope", scope, "cm only: cartan or normalizer")
      ->check(CLI::IsMember({"cartan", "normalizer"}));

  // bounds --ell
  auto* cmd_bounds = app.add_subcommand("bounds", "general-ell GSp4 density bounds");
  cmd_bounds->fallthrough();
  cmd_bounds->add_option("--ell", ell, "the prime ell");

  // level --spec --ell --level
  auto* cmd_level = app.add_subcommand("level", "exact level-n density interval");
  cmd_level->fallthrough();
  std::string spec_text = "gl2";
  unsigned level_n = 1;
  cmd_level->add_option("--spec", spec_text, "group spec, e.g. gl2, cartan:split, gsp:2");
  cmd_level->add_option("--ell", ell, "the prime ell");
  cmd_level->add_option("--level", level_n, "level n")->check(CLI::Range(1u, 12u));

  // mc --spec --ell --level --samples
  auto* cmd_mc = app.add_subcommand("mc", "monte carlo density estimate");
  cmd_mc->fallthrough();
  u64 samples = 1000000;
  cmd_mc->add_option("--spec", spec_text, "group spec");
  cmd_mc->add_option("--ell", ell, "the prime ell");
  cmd_mc->add_option("--level", level_n, "level n")->check(CLI::Range(1u, 16u));
  cmd_mc->add_option("--samples", samples, "sample count");

  // gsp-limit --ell --order
  auto* cmd_gsp = app.add_subcommand("gsp-limit", "symplectic coefficient and limit report");
  cmd_gsp->fallthrough();
  unsigned order_g = 12;
  cmd_gsp->add_option("--ell", ell, "the prime ell");
  cmd_gsp->add_option("--order", order_g, "truncation order G")->check(CLI::Range(4u, 64u));

  // scan --example | --config, --bound
  auto* cmd_scan = app.add_subcommand("scan", "prime scan with good/total tallies");
  cmd_scan->fallthrough();
  std::string example, config_path, bound_text = "1e4";
  cmd_scan->add_option("--example", example, "one of the eight reference examples");
  cmd_scan->add_option("--config", config_path, "key = value scan configuration file");
  cmd_scan->add_option("--bound", bound_text, "largest prime bound, e.g. 1e5");

  // somos --terms | --divides | --equivalence-bound
  auto* cmd_somos = app.add_subcommand("somos", "somos-4 sequence tools");
  cmd_somos->fallthrough();
  unsigned terms_n = 0;
  u64 divides_p = 0, equiv_bound = 0;
  cmd_somos->add_option("--terms", terms_n, "print a_0..a_N");
  cmd_somos->add_option("--divides", divides_p, "does p divide some term");
  cmd_somos->add_option("--equivalence-bound", equiv_bound,
                        "check divisibility = odd order up to x");

  // diag --curve --ell --level --bound | --squares | --torsion
  auto* cmd_diag = app.add_subcommand("diag", "surjectivity diagnostics (evidence only)");
  cmd_diag->fallthrough();
  std::string curve_text, squares_text;
  unsigned torsion_m = 0;
  cmd_diag->add_option("--curve", curve_text, "weierstrass:a1,a2,a3,a4,a6");
  cmd_diag->add_option("--ell", ell, "the prime ell");
  cmd_diag->add_option("--level", level_n, "level n");
  cmd_diag->add_option("--bound", bound_text, "prime bound for the frobenius sweep");
  cmd_diag->add_option("--squares", squares_text, "comma-separated rationals to square-test");
  cmd_diag->add_option("--torsion", torsion_m, "print the order-m torsion polynomial");

  // verify-all
  auto* cmd_verify = app.add_subcommand("verify-all", "run the acceptance battery");
  cmd_verify->fallthrough();
  bool fast = false;
  u64 mc_samples = 1000000;
  cmd_verify->add_flag("--fast", fast, "smaller monte carlo sample count");
  cmd_verify->add_option("--mc-samples", mc_samples, "monte carlo samples per check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*cmd_density) {
      Rat value;
      if (family == "gm") value = gm_density(ell);
      else if (family == "gl2") value = gl2_density(ell);
      else if (family == "split-torus-pair") value = split_torus_pair_density(ell);
      else if (family == "cm")
        value = cm_density(ell, variant == "split" ? CartanShape::Split : CartanShape::Inert,
                           scope == "cartan" ? CartanScope::Cartan : CartanScope::Normalizer);
      else throw CLI::ValidationError("unknown family: " + family);
      auto vi = validating_interval(family, ell, variant, scope);
      json j{{"family", family},
             {"ell", ell},
             {"exact", rat_str(value)},
             {"decimal", rat_to_decimal(value, 10)},
             {"validating_interval", interval_json(vi)},
             {"inside_interval", vi.lower <= value && value <= vi.upper}};
      if (family == "cm") {
        j["variant"] = variant;
        j["scope"] = scope;
      }
      return emit(j, format);
    }
    if (*cmd_bounds) {
      auto b = gsp4_bounds(ell);
      json j{{"family", "gsp4-bounds"}, {"ell", ell}, {"interval", interval_json(b)}};
      if (auto t = gsp4_table_interval(ell)) j["table_interval"] = interval_json(*t);
      return emit(j, format);
    }
    if (*cmd_level) {
      GroupSpec spec = GroupSpec::parse(spec_text, ell);
      auto d = density_level(spec, level_n);
      json j{{"spec", spec.to_string()}, {"ell", ell}, {"level", level_n},
             {"interval", interval_json(d)}};
      return emit(j, format);
    }
    if (*cmd_mc) {
      GroupSpec spec = GroupSpec::parse(spec_text, ell);
      auto mc = density_mc(spec, level_n, samples, seed, workers);
      json j{{"spec", spec.to_string()},   {"ell", ell},
             {"level", level_n},           {"samples", mc.samples},
             {"mean", mc.mean},            {"half_width_99", mc.half_width_99},
             {"seed", seed}};
      return emit(j, format);
    }
    if (*cmd_gsp) {
      json coeffs = json::array(), conv = json::array(), disc = json::array();
      for (int mi = 0; mi < (ell > 2 ? 2 : 1); ++mi) {
        bool mio = mi == 0;
        auto b = b_coeffs(mio, ell, order_g);
        auto lim = b_limit(mio, ell, order_g);
        json row{{"multiplier_class", mio ? "1" : "non-identity"}, {"b", json::array()},
                 {"increments", json::array()}};
        for (const auto& q : b.coeffs) row["b"].push_back(rat_str(q));
        for (const auto& q : lim.increments) row["increments"].push_back(rat_str(q));
        row["limit_partial_sum"] = rat_str(lim.value);
        row["last_increment_abs"] = rat_str(lim.last_increment_abs);
        row["geometric_decay"] = lim.geometric_decay;
        coeffs.push_back(row);
      }
      auto rep = convolution_check(std::min(order_g, 4u), ell);
      for (const auto& r : rep.rows)
        conv.push_back(json{{"g", r.g},
                            {"m", r.m_rep},
                            {"sum", rat_str(r.sum)},
                            {"brute_force", r.brute},
                            {"pass", r.pass}});
      for (const auto& d : rep.discrepancies)
        disc.push_back(json{{"g", d.g},
                            {"m", d.m_rep},
                            {"closed_form", rat_str(d.closed_form)},
                            {"brute_force", rat_str(d.brute_force)}});
      json j{{"ell", ell},
             {"order", order_g},
             {"series", coeffs},
             {"convolution", conv},
             {"discrepancies", disc},
             {"all_convolutions_pass", rep.all_pass}};
      return emit(j, format);
    }
    if (*cmd_scan) {
      u64 bound = parse_bound(bound_text);
      ScanConfig sc;
      if (!example.empty()) {
        sc = example_scan_config(example, bound);
      } else if (!config_path.empty()) {
        // line-oriented key = value configuration
        std::ifstream in(config_path);
        if (!in) throw CLI::ValidationError("cannot open config: " + config_path);
        std::string line, cfg_s, alpha_s, excl_s, pred_s;
        u64 cfg_ell = 2;
        while (std::getline(in, line)) {
          auto hash = line.find('#');
          if (hash != std::string::npos) line = line.substr(0, hash);
          auto eq = line.find('=');
          if (eq == std::string::npos) continue;
          auto trim = [](std::string s) {
            s.erase(0, s.find_first_not_of(" \t"));
            auto e = s.find_last_not_of(" \t");
            s.erase(e == std::string::npos ? 0 : e + 1);
            return s;
          };
          std::string k = trim(line.substr(0, eq)), v = trim(line.substr(eq + 1));
          if (k == "config") cfg_s = v;
          else if (k == "alpha") alpha_s = v;
          else if (k == "ell") cfg_ell = std::stoull(v);
          else if (k == "exclusions") excl_s = v;
          else if (k == "predicted") pred_s = v;
        }
        sc.config = AlgebraicGroupConfig::parse(cfg_s);
        sc.alpha = RationalPoint::parse(alpha_s);
        sc.ell = cfg_ell;
        for (u64 b : {(u64)1000, (u64)10000, (u64)100000, (u64)1000000})
          if (b < bound) sc.bounds.push_back(b);
        sc.bounds.push_back(bound);
        if (!excl_s.empty()) {
          std::set<u64> ex;
          std::stringstream ss(excl_s);
          std::string item;
          while (std::getline(ss, item, ',')) ex.insert(std::stoull(item));
          sc.exclusions = ex;
        }
        if (!pred_s.empty()) {
          auto slash = pred_s.find('/');
          sc.predicted = slash == std::string::npos
                             ? Rat(Int(pred_s))
                             : make_rat(Int(pred_s.substr(0, slash)), Int(pred_s.substr(slash + 1)));
        }
      } else {
        throw CLI::ValidationError("scan needs --example or --config");
      }
      auto rep = run_scan(sc, workers);
      if (format == "text") {
        std::printf("%-10s %10s %10s %10s %10s\n", "x", "good", "total", "ratio", "predicted");
        for (const auto& r : rep.rows)
          std::printf("%-10llu %10llu %10llu %10s %10s\n", (unsigned long long)r.x,
                      (unsigned long long)r.good, (unsigned long long)r.total,
                      ScanReport::ratio_str(r).c_str(),
                      rep.predicted ? rat_to_decimal(*rep.predicted, 5).c_str() : "-");
        if (!example.empty()) {
          auto diffs = compare_reference(rep, example);
          std::printf("reference match: %s\n", diffs.empty() ? "exact" : "MISMATCH");
        }
        return 0;
      }
      if (format == "csv") {
        std::cout << "x,good,total,ratio,predicted\n";
        for (const auto& r : rep.rows) {
          std::cout << r.x << "," << r.good << "," << r.total << "," << ScanReport::ratio_str(r)
                    << ",";
          if (rep.predicted) std::cout << rat_to_decimal(*rep.predicted, 5);
          std::cout << "\n";
        }
        return 0;
      }
      json rows = json::array();
      for (const auto& r : rep.rows)
        rows.push_back(json{{"x", r.x},
                            {"good", r.good},
                            {"total", r.total},
                            {"ratio", ScanReport::ratio_str(r)}});
      json j{{"name", rep.name},
             {"config", rep.config_echo},
             {"alpha", rep.alpha_echo},
             {"ell", rep.ell},
             {"rows", rows},
             {"version", rep.version}};
      if (rep.predicted) j["predicted"] = rat_str(*rep.predicted);
      if (!example.empty()) {
        auto diffs = compare_reference(rep, example);
        j["matches_reference"] = diffs.empty();
      }
      return emit(j, "json");
    }
    if (*cmd_somos) {
      if (terms_n >= 3) {
        auto a = somos_terms(terms_n);
        json arr = json::array();
        for (const auto& t : a) arr.push_back(t.get_str());
        return emit(json{{"terms", arr}}, format);
      }
      if (divides_p) {
        auto r = somos_divides(divides_p);
        json j{{"p", divides_p},
               {"divides", r.has_value() ? (*r ? "true" : "false") : "undetermined"}};
        return emit(j, format);
      }
      if (equiv_bound) {
        auto rep = somos_oddorder_equivalence(equiv_bound);
        json j{{"bound", rep.bound},
               {"good", rep.good},
               {"total", rep.total},
               {"undetermined", rep.undetermined},
               {"counterexamples", rep.counterexamples}};
        return emit(j, format);
      }
      throw CLI::ValidationError("somos needs --terms, --divides or --equivalence-bound");
    }
    if (*cmd_diag) {
      if (!squares_text.empty()) {
        std::vector<Rat> vals;
        std::stringstream ss(squares_text);
        std::string item;
        while (std::getline(ss, item, ',')) {
          auto slash = item.find('/');
          vals.push_back(slash == std::string::npos
                             ? Rat(Int(item))
                             : make_rat(Int(item.substr(0, slash)), Int(item.substr(slash + 1))));
        }
        auto rep = rational_square_tests(vals);
        json rows = json::array();
        for (size_t i = 0; i < rep.values.size(); ++i)
          rows.push_back(json{{"value", rat_str(rep.values[i])}, {"square", (bool)rep.is_square[i]}});
        return emit(json{{"square_tests", rows}}, format);
      }
      if (curve_text.empty()) throw CLI::ValidationError("diag needs --curve");
      auto cfg = AlgebraicGroupConfig::parse(curve_text);
      auto* w = std::get_if<WeierstrassCfg>(&cfg.v);
      if (!w) throw CLI::ValidationError("diag works on weierstrass curves");
      if (torsion_m) {
        PolyQ t = torsion_polynomial(w->E, torsion_m);
        json arr = json::array();
        for (int i = t.deg(); i >= 0; --i) arr.push_back(rat_str(t.coeff(i)));
        return emit(json{{"torsion_m", torsion_m}, {"coefficients_high_to_low", arr}}, format);
      }
      auto rep = frobenius_statistics(w->E, ell, level_n, parse_bound(bound_text));
      const char* verdict = rep.verdict == FrobVerdict::ConsistentWithSurjective
                                ? "consistent-with-surjective"
                                : rep.verdict == FrobVerdict::Inconsistent ? "inconsistent"
                                                                           : "low-sample";
      json j{{"curve", curve_text}, {"ell", ell},
             {"level", level_n},    {"bound", parse_bound(bound_text)},
             {"samples", rep.samples}, {"tv_distance", rep.tv_distance},
             {"verdict", verdict}};
      return emit(j, format);
    }
    if (*cmd_verify) {
      VerifyOptions opt;
      opt.workers = workers;
      opt.mc_samples = fast ? std::min<u64>(mc_samples, 300000) : mc_samples;
      opt.mc_seed = seed == 1 ? opt.mc_seed : seed;
      auto results = run_verification(opt);
      bool all = true;
      for (const auto& r : results) {
        all = all && r.pass;
        std::printf("[%s] %-34s %s\n", r.pass ? "PASS" : "FAIL", r.id.c_str(), r.detail.c_str());
      }
      std::printf("reference tables: %s\n", reference_checksum().c_str());
      std::printf("%s\n", all ? "ALL CHECKS PASSED" : "SOME CHECKS FAILED");
      return all ? 0 : 1;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const UnknownReference& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
