#include "abc/cli.hpp"

#include "abc/ball.hpp"
#include "abc/conjugacy.hpp"
#include "abc/folner.hpp"
#include "abc/ratios.hpp"
#include "abc/spectral.hpp"
#include "abc/word.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace abc {

namespace {

const std::vector<std::string> kSubcommands = {"enumerate", "ratio", "conjtest", "folner", "spectral", "rewrite"};

void build_app(CLI::App& app, RunConfig& cfg) {
  app.add_option("command", cfg.subcommand, "enumerate | ratio | conjtest | folner | spectral | rewrite")
      ->required()
      ->check(CLI::IsMember(kSubcommands));
  app.add_option("--group", cfg.group, "lamplighter:<m> | bs:<k> | matrix:<json file>");
  app.add_option("--radius", cfg.radius, "ball radius");
  app.add_option("--f", cfg.f, "growth function: sqrt | log2 | const:<c>");
  app.add_option("--out", cfg.out, "output file (default stdout)");
  app.add_option("--cache", cfg.cache, "ball index cache file");
  app.add_option("--oracle-radius", cfg.oracle_radius, "conjugator radius for conjtest (default 2 * radius)");
  app.add_option("--k", cfg.k, "BS(1,k) base for folner");
  app.add_option("--n", cfg.n, "Folner box parameter");
  app.add_option("--matrix", cfg.matrix, "matrix JSON file for spectral");
  app.add_option("--emit", cfg.emit, "folner output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--word", cfg.word, "word for rewrite, e.g. \"g0 t g0 T\"");
  app.add_option("--element-cap", cfg.element_cap, "maximum number of enumerated elements");
  app.add_option("--n1-cap", cfg.n1_cap, "maximum number of N1 values tried by the separating translate");
  app.add_option("--orbit-bound", cfg.orbit_bound, "I_max for matrix t-exponent-0 keys");
}

struct Output {
  explicit Output(const std::string& path, std::ostream& fallback) : out(&fallback) {
    if (!path.empty()) {
      file.open(path, std::ios::binary);
      if (!file) throw Error("cannot write " + path);
      out = &file;
    }
  }
  std::ofstream file;
  std::ostream* out;
};

std::int64_t parse_int(const std::string& text, const std::string& what) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size())
    throw Error("bad " + what + " '" + text + "'");
  return v;
}

BallIndex obtain_ball(const RunConfig& cfg, const GroupContext& ctx, std::size_t radius) {
  if (!cfg.cache.empty() && std::filesystem::exists(cfg.cache)) {
    BallIndex cached = load_ball(cfg.cache);
    if (cached.context().serialize() != ctx.serialize())
      throw Error("cache " + cfg.cache + " holds a ball of " + cached.context().descriptor() + ", not " +
                  ctx.descriptor());
    if (cached.radius() >= radius) return radius == cached.radius() ? cached : truncate_ball(cached, radius);
  }
  EnumerateOptions opts;
  opts.element_cap = cfg.element_cap;
  BallIndex ball = enumerate_ball(ctx, radius, opts);
  if (!cfg.cache.empty()) save_ball(ball, cfg.cache);
  return ball;
}

GroupContext require_group(const RunConfig& cfg) {
  if (cfg.group.empty()) throw Error(cfg.subcommand + " needs --group");
  return parse_group_descriptor(cfg.group);
}

KeyOptions key_options(const RunConfig& cfg) {
  if (cfg.orbit_bound < 1) throw Error("--orbit-bound must be positive");
  KeyOptions o;
  o.orbit_bound = cfg.orbit_bound;
  return o;
}

std::string rational_str(const Rational& q) {
  std::ostringstream s;
  s << q;
  return s.str();
}

int cmd_enumerate(const RunConfig& cfg, std::ostream& stdout_) {
  const GroupContext ctx = require_group(cfg);
  const BallIndex ball = obtain_ball(cfg, ctx, cfg.radius);
  Output o(cfg.out, stdout_);
  *o.out << "r,sphere,ball\n";
  for (std::size_t r = 0; r <= ball.radius(); ++r) *o.out << r << ',' << ball.sphere_size(r) << ',' << ball.ball_size(r) << '\n';
  return 0;
}

int cmd_ratio(const RunConfig& cfg, std::ostream& stdout_, std::ostream& err) {
  const GroupContext ctx = require_group(cfg);
  const GrowthFunction f = GrowthFunction::parse(cfg.f);
  const ConjugacyKeyer keyer(ctx, key_options(cfg));
  const BallIndex ball = obtain_ball(cfg, ctx, cfg.radius);
  const RatioTable table = ratio_table(ball, keyer, f);
  {
    Output o(cfg.out, stdout_);
    *o.out << ratio_csv(table);
  }
  if (cfg.out.empty()) return 0;
  try {
    const DecayFit fit = decay_fit(table);
    const std::string gp = std::filesystem::path(cfg.out).replace_extension(".gp").string();
    Output o(gp, stdout_);
    *o.out << gnuplot_script(table, fit, std::filesystem::path(cfg.out).filename().string());
  } catch (const CapExceeded&) {
    throw;
  } catch (const Error& e) {
    err << "no gnuplot script: " << e.what() << '\n';
  }
  return 0;
}

int cmd_conjtest(const RunConfig& cfg, std::ostream& stdout_) {
  const GroupContext ctx = require_group(cfg);
  const ConjugacyKeyer keyer(ctx, key_options(cfg));
  const std::size_t rc = cfg.oracle_radius == 0 ? 2 * cfg.radius : cfg.oracle_radius;
  const BallIndex ball = obtain_ball(cfg, ctx, std::max(cfg.radius, rc));
  const Partition keys = key_partition(ball, cfg.radius, keyer);
  const Partition oracle = brute_force_partition(ball, cfg.radius, rc);
  const PartitionComparison cmp = compare_partitions(keys, oracle);

  nlohmann::ordered_json j;
  j["group"] = ctx.descriptor();
  j["radius"] = cfg.radius;
  j["oracle_radius"] = rc;
  j["elements"] = ball.ball_size(cfg.radius);
  j["classes_by_key"] = cmp.key_classes;
  j["classes_by_oracle"] = cmp.oracle_classes;
  j["split_count"] = cmp.split_count;
  j["unmerged_count"] = cmp.unmerged_count;
  // Up to PartitionComparison::kSampleLimit pairs of each kind.
  nlohmann::ordered_json mismatches = nlohmann::ordered_json::array();
  auto add = [&](const char* kind, const auto& pairs) {
    for (auto [a, b] : pairs)
      mismatches.push_back({{"kind", kind},
                            {"representative", ctx.format(ball.entry(a).element)},
                            {"element", ctx.format(ball.entry(b).element)}});
  };
  add("split", cmp.split_samples);
  add("unmerged", cmp.unmerged_samples);
  j["mismatches"] = mismatches;
  Output o(cfg.out, stdout_);
  *o.out << j.dump(2) << '\n';
  return cmp.agree() ? 0 : 1;
}

int cmd_folner(const RunConfig& cfg, std::ostream& stdout_) {
  if (cfg.k < 2) throw Error("--k must be at least 2");
  if (cfg.n < 1) throw Error("--n must be at least 1");
  const GroupContext ctx = bs_context(cfg.k);
  const ConjugacyKeyer keyer(ctx);
  const SeparationReport rep = separation_experiment(keyer, cfg.n, cfg.element_cap, cfg.n1_cap);
  Output o(cfg.out, stdout_);
  if (cfg.emit == "csv") {
    *o.out << "k,n,F_size,translated_size,classes,ratio,N1,N2,L";
    for (const auto& d : rep.right_defects) *o.out << ",right_defect_" << d.generator;
    *o.out << ",left_defect_t\n";
    *o.out << rep.k << ',' << rep.n << ',' << rep.f_size << ',' << rep.translated_size << ',' << rep.classes << ','
           << rational_str(rep.ratio) << ',' << rep.translate.n1 << ',' << rep.translate.n2 << ','
           << to_string(rep.translate.l);
    for (const auto& d : rep.right_defects) *o.out << ',' << rational_str(d.right);
    *o.out << ',' << rational_str(rep.left_defect_t) << '\n';
    return 0;
  }
  nlohmann::ordered_json j;
  j["k"] = rep.k;
  j["n"] = rep.n;
  j["g"] = ctx.format(rep.translate.g);
  j["N1"] = rep.translate.n1;
  j["N2"] = rep.translate.n2;
  j["L"] = to_string(rep.translate.l);
  j["F_size"] = rep.f_size;
  j["translated_size"] = rep.translated_size;
  j["classes"] = rep.classes;
  j["ratio"] = rational_str(rep.ratio);
  j["classes_equal_size"] = rep.classes == rep.f_size && rep.translated_size == rep.f_size;
  nlohmann::ordered_json defects;
  for (const auto& d : rep.right_defects) defects[d.generator] = rational_str(d.right);
  j["right_defects"] = defects;
  j["left_defect_t"] = rational_str(rep.left_defect_t);
  *o.out << j.dump(2) << '\n';
  return 0;
}

int cmd_spectral(const RunConfig& cfg, std::ostream& stdout_) {
  GroupContext ctx = !cfg.matrix.empty() ? make_context(matrix_spec_from_file(cfg.matrix)) : require_group(cfg);
  if (ctx.family() != Family::matrix) throw Error("spectral needs a matrix group (--matrix or --group matrix:<file>)");
  const BallIndex ball = obtain_ball(cfg, ctx, cfg.radius);
  Output o(cfg.out, stdout_);
  *o.out << "r,ball,p_count,eps_max_num,eps_max_den\n";
  for (const auto& row : spectral_table(ball))
    *o.out << row.r << ',' << row.ball << ',' << row.p_count << ',' << numerator(row.eps_max) << ','
           << denominator(row.eps_max) << '\n';
  return 0;
}

int cmd_rewrite(const RunConfig& cfg, std::ostream& stdout_) {
  const GroupContext ctx = require_group(cfg);
  const Word w = parse_word(ctx, cfg.word);
  const Element value = evaluate(ctx, w);
  nlohmann::ordered_json j;
  j["word"] = format_word(w);
  j["length"] = w.size();
  j["value"] = ctx.format(value);
  j["t_exponent"] = value.texp;
  const Word wp = rewrite_to_wprime_any(ctx, w);
  j["wprime"] = format_word(wp);
  j["wprime_length"] = wp.size();
  if (value.texp > 0) {
    const ConjugacyReduction red = reduce_conjugacy_geodesic(wp);
    j["cm"] = format_word(red.word);
    j["cm_length"] = red.word.size();
    j["cm_steps"] = red.steps;
    j["cm_value"] = ctx.format(evaluate(ctx, red.word));
  }
  Output o(cfg.out, stdout_);
  *o.out << j.dump(2) << '\n';
  return 0;
}

}  // namespace

RunConfig parse_run_config(const std::vector<std::string>& args) {
  RunConfig cfg;
  CLI::App app{"abelian-by-cyclic group experiments", "abc"};
  build_app(app, cfg);
  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    throw Error(e.what());
  }
  return cfg;
}

std::vector<std::string> format_run_config(const RunConfig& cfg) {
  std::vector<std::string> a{cfg.subcommand};
  auto opt = [&](const char* name, const std::string& v) {
    if (v.empty()) return;
    a.push_back(name);
    a.push_back(v);
  };
  opt("--group", cfg.group);
  opt("--radius", std::to_string(cfg.radius));
  opt("--f", cfg.f);
  opt("--out", cfg.out);
  opt("--cache", cfg.cache);
  opt("--oracle-radius", std::to_string(cfg.oracle_radius));
  opt("--k", std::to_string(cfg.k));
  opt("--n", std::to_string(cfg.n));
  opt("--matrix", cfg.matrix);
  opt("--emit", cfg.emit);
  opt("--word", cfg.word);
  opt("--element-cap", std::to_string(cfg.element_cap));
  opt("--n1-cap", std::to_string(cfg.n1_cap));
  opt("--orbit-bound", std::to_string(cfg.orbit_bound));
  return a;
}

GroupContext parse_group_descriptor(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw Error("bad group descriptor '" + text + "' (expected family:parameter)");
  const std::string family = text.substr(0, colon), param = text.substr(colon + 1);
  if (family == "lamplighter") return lamplighter_context(parse_int(param, "lamp modulus"));
  if (family == "bs") return bs_context(parse_int(param, "BS base"));
  if (family == "matrix") return make_context(matrix_spec_from_file(param));
  throw Error("unknown group family '" + family + "'");
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  if (args.empty() || std::find_if(args.begin(), args.end(), [](const std::string& a) {
                        return a == "-h" || a == "--help";
                      }) != args.end()) {
    RunConfig cfg;
    CLI::App app{"abelian-by-cyclic group experiments", "abc"};
    build_app(app, cfg);
    (args.empty() ? err : out) << app.help();
    return args.empty() ? 1 : 0;
  }
  try {
    const RunConfig cfg = parse_run_config(args);
    if (cfg.subcommand == "enumerate") return cmd_enumerate(cfg, out);
    if (cfg.subcommand == "ratio") return cmd_ratio(cfg, out, err);
    if (cfg.subcommand == "conjtest") return cmd_conjtest(cfg, out);
    if (cfg.subcommand == "folner") return cmd_folner(cfg, out);
    if (cfg.subcommand == "spectral") return cmd_spectral(cfg, out);
    return cmd_rewrite(cfg, out);
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::bad_alloc&) {
    err << "error: out of memory\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace abc
