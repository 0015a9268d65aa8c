#include "ufg/cli.hpp"

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "ufg/config.hpp"
#include "ufg/criteria.hpp"
#include "ufg/errors.hpp"
#include "ufg/group.hpp"
#include "ufg/growth.hpp"
#include "ufg/search.hpp"
#include "ufg/suites.hpp"

namespace ufg {

namespace {

using nlohmann::json;

struct Globals {
  std::string config_path;
  int threads = -1;
  std::uint64_t seed = 0;
  CLI::Option* seed_opt = nullptr;
};

Config effective_config(const Globals& g) {
  Config cfg = g.config_path.empty() ? load_default_config() : load_config(g.config_path);
  if (g.threads >= 0) cfg.threads = g.threads;
  if (g.seed_opt != nullptr && g.seed_opt->count() > 0) cfg.seed = g.seed;
  return cfg;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return json::parse(ss.str());
  } catch (const json::parse_error& e) {
    throw InvalidInput(path + ": " + e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw InvalidInput("cannot write '" + path + "'");
  f << text;
}

void emit(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

GroupDescription load_h2_group(const std::string& path) {
  GroupDescription gd = load_group_description(path);
  if (gd.model != "H2") throw InvalidInput(path + ": command needs an H2 group, got model '" + gd.model + "'");
  return gd;
}

// Certificate stored either bare or inside a free-pair report.
FreePairCertificate load_certificate(const std::string& path) {
  const json j = read_json_file(path);
  return certificate_from_json(j.contains("certificate") ? j.at("certificate") : j);
}

std::string ideal_string(const IdealPoint& p) { return p.at_infinity ? "inf" : format_double(p.re); }

int cmd_classify(const Globals& g, const std::string& file, std::ostream& out) {
  (void)effective_config(g);
  const GroupDescription gd = load_group_description(file);
  json gens = json::array();
  for (const Generator& gen : gd.generators) {
    const IsometryClass cls = classify(gen.matrix);
    json e{{"name", gen.name},
           {"matrix", gen.matrix.to_string()},
           {"class", std::string(to_string(cls))},
           {"trace", to_string(gen.matrix.trace())}};
    if (cls == IsometryClass::Hyperbolic) {
      const Axis ax = axis(gen.matrix);
      e["translation_length"] = format_double(ax.translation_length);
      e["axis"] = {{"repelling", ideal_string(ax.repelling)}, {"attracting", ideal_string(ax.attracting)}};
    } else if (cls == IsometryClass::Parabolic) {
      // the fixed point is the root of c z^2 + (d - a) z - b
      const Rational& c = gen.matrix.c();
      if (c == 0) e["fixed_point"] = "inf";
      else e["fixed_point"] = to_string(Rational((gen.matrix.a() - gen.matrix.d()) / (2 * c)));
    }
    gens.push_back(e);
  }
  emit(out, {{"model", gd.model}, {"generators", gens}});
  return kExitOk;
}

struct FreePairFlags {
  std::string file;
  double delta = 0.0;
  long long max_m = 0;
  int spectrum_len = 0;
  std::string out_path;
  std::string recheck_path;
  CLI::Option *delta_opt = nullptr, *max_m_opt = nullptr, *spectrum_opt = nullptr;
};

int cmd_free_pair(const Globals& g, const FreePairFlags& f, std::ostream& out, std::ostream& err) {
  if (!f.recheck_path.empty()) {
    const FreePairCertificate c = load_certificate(f.recheck_path);
    const bool ok = recheck(c);
    emit(out, {{"recheck", ok}, {"file", f.recheck_path}});
    if (!ok) err << "certificate does not re-verify bit-identically\n";
    return ok ? kExitOk : kExitNotFound;
  }
  if (f.file.empty()) throw InvalidInput("free-pair needs a group file (or --recheck)");
  Config cfg = effective_config(g);
  if (f.delta_opt->count() > 0) {
    if (!(f.delta > 0.0)) throw InvalidInput("--delta must be positive");
    cfg.delta = f.delta;
  }
  if (f.max_m_opt->count() > 0) {
    if (f.max_m < 1) throw InvalidInput("--max-m must be at least 1");
    cfg.search.max_m = f.max_m;
  }
  if (f.spectrum_opt->count() > 0) {
    if (f.spectrum_len < 1) throw InvalidInput("--spectrum-len must be at least 1");
    cfg.search.spectrum_len = f.spectrum_len;
  }
  const GroupDescription gd = load_h2_group(f.file);
  const GeneratingSet s(gd.generators);
  FreePairReport rep;
  try {
    rep = uniform_free_pair(s, cfg, gd.horoballs);
  } catch (const ElementaryGroup& e) {
    emit(out, {{"status", "not_found"}, {"reason", "elementary"}, {"detail", e.what()}});
    return kExitNotFound;
  } catch (const NotFound& e) {
    emit(out, {{"status", "not_found"}, {"reason", "not_found"}, {"detail", e.what()}});
    return kExitNotFound;
  }
  // Re-verify from the serialized form, exactly as a reader of the file would.
  const bool reverified = recheck(certificate_from_json(to_json(rep.certificate)));
  json j = to_json(rep, s);
  j["status"] = "certified";
  j["reverified"] = reverified;
  if (!reverified) {
    err << "internal: certificate did not re-verify\n";
    return kExitInternal;
  }
  if (f.out_path.empty()) emit(out, j);
  else write_text(f.out_path, j.dump(2) + "\n");
  return kExitOk;
}

struct GrowthFlags {
  std::string file;
  int radius = 0;
  std::string certificate;
  std::string csv;
  bool certified_pair = false;
};

int cmd_growth(const Globals& g, const GrowthFlags& f, std::ostream& out, std::ostream& err) {
  if (f.radius < 0) throw InvalidInput("--radius must be nonnegative");
  const Config cfg = effective_config(g);
  std::vector<Generator> gens;
  if (f.certified_pair) {
    if (f.certificate.empty()) throw InvalidInput("--certified-pair needs --certificate");
    const FreePairCertificate cert = load_certificate(f.certificate);
    gens = {{"g", cert.g}, {"h", cert.h}};
  } else {
    if (f.file.empty()) throw InvalidInput("growth needs a group file (or --certified-pair)");
    gens = load_h2_group(f.file).generators;
  }
  const GeneratingSet s(std::move(gens));
  EnumerationOptions opt;
  opt.threads = cfg.threads;
  opt.memory_budget = memory_budget_from_env(cfg.budget.memory_bytes);
  opt.element_bits = cfg.budget.element_bits;
  const BallCensus c = enumerate_ball(s, f.radius, opt, {});
  json j = census_to_json(c);
  bool consistent = true;
  if (!f.certificate.empty()) {
    const FreePairCertificate cert = load_certificate(f.certificate);
    if (!recheck(cert)) throw InvalidInput(f.certificate + ": certificate does not re-verify");
    // over {g, h} itself both words have length 1
    const double bound = f.certified_pair ? free_pair_growth_bound(cert, 1, 1)
                                          : free_pair_growth_bound(cert, cert.word_g.length(), cert.word_h.length());
    // |B(r)|^(1/r) bounds the growth rate from above at every radius
    const GrowthEstimate e = growth_estimate(c, true);
    for (double w : e.omega) consistent = consistent && bound <= w;
    j["free_pair_lower_bound"] = bound;
    j["bound_consistent"] = consistent;
  }
  if (!f.csv.empty()) write_text(f.csv, census_to_csv(c));
  emit(out, j);
  if (!c.complete) {
    err << "partial census: " << c.stop_reason << '\n';
    return kExitBudget;
  }
  if (!consistent) {
    err << "census contradicts the certificate's growth bound\n";
    return kExitNotFound;
  }
  return kExitOk;
}

struct VerifyFlags {
  std::string suite = "all";
  long long samples = 0;
  CLI::Option* samples_opt = nullptr;
};

int cmd_verify(const Globals& g, const VerifyFlags& f, std::ostream& out, std::ostream& err) {
  const Config cfg = effective_config(g);
  std::vector<std::string> names;
  if (f.suite == "all") names = suite_names();
  else names.push_back(f.suite);
  const bool fixed = f.samples_opt->count() > 0;
  if (fixed && f.samples < 0) throw InvalidInput("--samples must be nonnegative");
  if (fixed && f.samples == 0) err << "warning: --samples 0 draws nothing; the pass is vacuous\n";
  json suites = json::array();
  bool pass = true;
  for (const auto& name : names) {
    const SuiteReport r = run_suite(name, cfg, fixed ? f.samples : default_samples(name), cfg.seed);
    pass = pass && r.pass;
    suites.push_back(to_json(r));
  }
  emit(out, {{"delta", cfg.delta},
             {"step", cfg.step},
             {"tau", cfg.tau},
             {"seed", cfg.seed},
             {"suites", suites},
             {"pass", pass}});
  return pass ? kExitOk : kExitNotFound;
}

struct DeltaFlags {
  long long samples = 1000000;
  double radius = 10.0;
  std::string model = "H2";
};

int cmd_delta_estimate(const Globals& g, const DeltaFlags& f, std::ostream& out) {
  const Config cfg = effective_config(g);
  emit(out, to_json(estimate_delta(f.model, f.samples, f.radius, cfg.seed)));
  return kExitOk;
}

int guarded(const std::function<int()>& body, std::ostream& err) {
  try {
    return body();
  } catch (const InvalidInput& e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << '\n';
    return kExitBudget;
  } catch (const NotFound& e) {
    err << "not found: " << e.what() << '\n';
    return kExitNotFound;
  } catch (const DescentIterationLimit& e) {
    err << "not found: " << e.what() << '\n';
    return kExitNotFound;
  } catch (const PreconditionError& e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Free pairs, hyperbolicity checks and growth census for SL2(Q) groups", "ufg"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--config", g.config_path, "configuration JSON (default: the shipped calibration)");
  app.add_option("--threads", g.threads, "worker threads; 0 uses every core")->check(CLI::NonNegativeNumber);
  g.seed_opt = app.add_option("--seed", g.seed, "random seed for sampled commands");

  std::string classify_file;
  auto* classify_cmd = app.add_subcommand("classify", "classify each generator");
  classify_cmd->add_option("group_file", classify_file)->required();

  FreePairFlags fp;
  auto* fp_cmd = app.add_subcommand("free-pair", "search for and certify a free pair");
  fp_cmd->add_option("group_file", fp.file);
  fp.delta_opt = fp_cmd->add_option("--delta", fp.delta, "hyperbolicity constant");
  fp.max_m_opt = fp_cmd->add_option("--max-m", fp.max_m, "largest power tried");
  fp.spectrum_opt = fp_cmd->add_option("--spectrum-len", fp.spectrum_len, "word length for the translation spectrum");
  fp_cmd->add_option("--out", fp.out_path, "write the report here instead of stdout");
  fp_cmd->add_option("--recheck", fp.recheck_path, "re-verify a stored certificate and exit");

  GrowthFlags gr;
  auto* gr_cmd = app.add_subcommand("growth", "exact census of the Cayley ball");
  gr_cmd->add_option("group_file", gr.file);
  gr_cmd->add_option("--radius", gr.radius, "ball radius")->required();
  gr_cmd->add_option("--certificate", gr.certificate, "free-pair certificate for the lower bound");
  gr_cmd->add_option("--csv", gr.csv, "also write the census as CSV");
  gr_cmd->add_flag("--certified-pair", gr.certified_pair, "census the pair {g, h} of --certificate itself");

  VerifyFlags vf;
  auto* vf_cmd = app.add_subcommand("verify", "randomized inequality suites");
  std::vector<std::string> choices{"all"};
  for (const auto& n : suite_names()) choices.push_back(n);
  vf_cmd->add_option("--suite", vf.suite, "suite name")->check(CLI::IsMember(choices));
  vf.samples_opt = vf_cmd->add_option("--samples", vf.samples, "samples per check (default: per suite)");

  DeltaFlags df;
  auto* df_cmd = app.add_subcommand("delta-estimate", "Monte-Carlo estimate of the hyperbolicity constant");
  df_cmd->add_option("--samples", df.samples, "quadruples drawn");
  df_cmd->add_option("--radius", df.radius, "ball radius");
  df_cmd->add_option("--model", df.model, "H2 or tree:k");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kExitInvalid;
  }

  if (*classify_cmd) return guarded([&] { return cmd_classify(g, classify_file, out); }, err);
  if (*fp_cmd) return guarded([&] { return cmd_free_pair(g, fp, out, err); }, err);
  if (*gr_cmd) return guarded([&] { return cmd_growth(g, gr, out, err); }, err);
  if (*vf_cmd) return guarded([&] { return cmd_verify(g, vf, out, err); }, err);
  return guarded([&] { return cmd_delta_estimate(g, df, out); }, err);
}

}  // namespace ufg
