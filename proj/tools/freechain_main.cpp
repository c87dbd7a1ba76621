// Command-line front end: build the subgroup chain, verify the freeness
// certificates, and export CSV/JSON/DOT reports.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "freechain/analysis.hpp"
#include "freechain/chain.hpp"
#include "freechain/classes.hpp"
#include "freechain/primes.hpp"

namespace {

using freechain::Alphabet;
using freechain::ChainConfig;
using freechain::ChainContext;
using freechain::Int;
using freechain::Rat;
using freechain::Word;
using ordered_json = nlohmann::ordered_json;

struct CommonOpts {
  int rank = 2;
  std::string alpha = "1/2";
  int levels = 2;
  std::size_t cap = 5'000'000;
  std::string config_path;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--d", opts.rank, "free group rank (>= 2)");
  cmd->add_option("--alpha", opts.alpha, "lower bound as num/den, in (0,1)");
  cmd->add_option("--levels", opts.levels, "chain levels to build");
  cmd->add_option("--cap", opts.cap, "orbit state-count cap");
  cmd->add_option("--config", opts.config_path,
                  "key = value file; flags override file entries");
}

// Simple key = value configuration, applied only where no flag was given.
void apply_config(CLI::App* cmd, const CommonOpts& opts) {
  if (opts.config_path.empty()) return;
  std::ifstream in(opts.config_path);
  if (!in) throw std::runtime_error("cannot read config: " + opts.config_path);
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      auto b = s.find_first_not_of(" \t\r");
      auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::string key = "--" + trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    CLI::Option* opt = cmd->get_option_no_throw(key);
    if (opt != nullptr && opt->count() == 0 && !value.empty()) {
      opt->add_result(value);
      opt->run_callback();
    }
  }
}

// min_levels lets level-addressed subcommands deepen the build as needed;
// the user-supplied level count itself must still be positive.
ChainContext make_chain(const CommonOpts& opts, std::optional<int> min_levels = {}) {
  if (opts.levels < 1) throw std::runtime_error("--levels must be at least 1");
  if (opts.rank < 2) throw std::runtime_error("--d must be at least 2");
  ChainConfig cfg;
  cfg.rank = opts.rank;
  cfg.alpha = freechain::parse_rational(opts.alpha);
  cfg.levels = std::max(opts.levels, min_levels.value_or(1));
  cfg.state_cap = opts.cap;
  return ChainContext(cfg);
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write: " + path);
  out << content;
}

std::string state_text(const ChainContext& ctx, const freechain::ProductState& s) {
  std::string out = "(";
  for (std::size_t i = 0; i < s.coords.size(); ++i) {
    if (i) out += ',';
    out += ctx.component(static_cast<int>(i) + 1).vertex_name(s.coords[i]);
  }
  return out + ")";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"chains of finite-index subgroups of free groups from labeled "
               "graphs, with boundary-action diagnostics"};
  app.require_subcommand(1);

  // classes
  auto* classes_cmd = app.add_subcommand(
      "classes", "list conjugacy-class representatives starting with a");
  CommonOpts classes_opts;
  int classes_count = 10;
  add_common(classes_cmd, classes_opts);
  classes_cmd->add_option("--count", classes_count, "representatives to list");

  // primes
  auto* primes_cmd =
      app.add_subcommand("primes", "choose the prime sequence for alpha");
  CommonOpts primes_opts;
  int primes_count = 5;
  add_common(primes_cmd, primes_opts);
  primes_cmd->add_option("--count", primes_count, "primes to choose");

  // build
  auto* build_cmd =
      app.add_subcommand("build", "build the chain and print a summary");
  CommonOpts build_opts;
  std::string build_out;
  add_common(build_cmd, build_opts);
  build_cmd->add_option("--out", build_out, "write JSON summary here");

  // fixr
  auto* fixr_cmd = app.add_subcommand(
      "fixr", "CSV of exact fixed-point ratios for a word across levels");
  CommonOpts fixr_opts;
  std::string fixr_word = "a";
  std::string fixr_out;
  add_common(fixr_cmd, fixr_opts);
  fixr_cmd->add_option("--word", fixr_word, "word in the text grammar");
  fixr_cmd->add_option("--out", fixr_out, "write CSV here");

  // verify
  auto* verify_cmd = app.add_subcommand(
      "verify", "alpha bound, faithfulness and intersection certificates");
  CommonOpts verify_opts;
  int verify_faithful_len = 3;
  int verify_intersection_len = 6;
  std::vector<std::string> verify_words;
  std::string verify_out;
  add_common(verify_cmd, verify_opts);
  verify_cmd->add_option("--faithful-len", verify_faithful_len,
                         "word length bound for the faithfulness scan");
  verify_cmd->add_option("--intersection-len", verify_intersection_len,
                         "word length bound for the intersection scan");
  verify_cmd->add_option("--word", verify_words, "extra fixr profile words");
  verify_cmd->add_option("--out", verify_out, "write JSON report here");

  // schreier
  auto* schreier_cmd =
      app.add_subcommand("schreier", "DOT export of a Schreier graph or ball");
  CommonOpts schreier_opts;
  int schreier_level = 1;
  int schreier_radius = 2;
  std::string schreier_dot;
  std::optional<std::uint32_t> schreier_center;
  add_common(schreier_cmd, schreier_opts);
  schreier_cmd->add_option("--level", schreier_level, "orbit level");
  schreier_cmd->add_option("--dot", schreier_dot, "output DOT path")->required();
  schreier_cmd->add_option("--center", schreier_center,
                           "orbit index; export only its ball");
  schreier_cmd->add_option("--radius", schreier_radius, "ball radius");

  // trace
  auto* trace_cmd = app.add_subcommand(
      "trace", "follow a word edge-by-edge through one component graph");
  CommonOpts trace_opts;
  int trace_component = 1;
  std::string trace_start = "x1";
  std::string trace_word_text;
  add_common(trace_cmd, trace_opts);
  trace_cmd->add_option("--component", trace_component, "component index i");
  trace_cmd->add_option("--start", trace_start, "vertex name (x1, y1_3, z1_1)");
  trace_cmd->add_option("--word", trace_word_text, "word to trace")->required();

  // freepoint
  auto* freepoint_cmd = app.add_subcommand(
      "freepoint", "orbit states with no short stabilizer word");
  CommonOpts freepoint_opts;
  int freepoint_level = 1;
  int freepoint_maxlen = 6;
  add_common(freepoint_cmd, freepoint_opts);
  freepoint_cmd->add_option("--level", freepoint_level, "orbit level");
  freepoint_cmd->add_option("--max-len", freepoint_maxlen,
                            "stabilizer word length bound");

  // gns
  auto* gns_cmd = app.add_subcommand(
      "gns", "local contrast: looped ball vs most tree-like ball");
  CommonOpts gns_opts;
  int gns_level = 2;
  int gns_radius = 1;
  std::string gns_prefix;
  add_common(gns_cmd, gns_opts);
  gns_cmd->add_option("--level", gns_level, "orbit level");
  gns_cmd->add_option("--radius", gns_radius, "ball radius");
  gns_cmd->add_option("--dot-prefix", gns_prefix, "write <prefix>looped.dot "
                      "and <prefix>treelike.dot");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }

  try {
    if (*classes_cmd) {
      apply_config(classes_cmd, classes_opts);
      Alphabet ab(classes_opts.rank);
      freechain::ClassList cl = freechain::enumerate_a_class_reps(ab, classes_count);
      for (int i = 0; i < cl.count(); ++i) {
        std::cout << (i + 1) << ' ' << freechain::print_word(cl.reps[i], ab)
                  << ' ' << cl.lengths[i] << '\n';
      }
      return 0;
    }

    if (*primes_cmd) {
      apply_config(primes_cmd, primes_opts);
      Alphabet ab(primes_opts.rank);
      freechain::ClassList cl = freechain::enumerate_a_class_reps(ab, primes_count);
      freechain::PrimePlan plan =
          freechain::choose_primes(freechain::parse_rational(primes_opts.alpha),
                                   cl.lengths);
      for (int i = 0; i < plan.count(); ++i) {
        std::cout << (i + 1) << ' ' << plan.primes[i] << ' ' << plan.lengths[i]
                  << ' ' << (plan.primes[i] - 1) << '/'
                  << (plan.primes[i] + plan.lengths[i]) << ' '
                  << freechain::rational_to_string(plan.partial_products[i])
                  << '\n';
      }
      return 0;
    }

    if (*build_cmd) {
      apply_config(build_cmd, build_opts);
      ChainContext ctx = make_chain(build_opts);
      ordered_json doc;
      doc["rank"] = ctx.alphabet().rank();
      doc["alpha"] = freechain::rational_to_string(ctx.alpha());
      doc["levels"] = ordered_json::array();
      for (int n = 1; n <= ctx.levels(); ++n) {
        const auto& comp = ctx.component(n);
        ordered_json entry;
        entry["level"] = n;
        entry["word"] = freechain::print_word(comp.word(), ctx.alphabet());
        entry["length"] = static_cast<int>(comp.word().size());
        entry["prime"] = comp.prime();
        entry["vertices"] = comp.graph().vertex_count();
        entry["orbit"] = static_cast<std::int64_t>(ctx.orbit(n).size());
        doc["levels"].push_back(std::move(entry));
      }
      write_output(build_out, doc.dump(2) + "\n");
      return 0;
    }

    if (*fixr_cmd) {
      apply_config(fixr_cmd, fixr_opts);
      ChainContext ctx = make_chain(fixr_opts);
      Word w = freechain::parse_word(fixr_word, ctx.alphabet());
      std::ostringstream csv;
      freechain::write_fixr_csv(csv, ctx, w, ctx.levels());
      write_output(fixr_out, csv.str());
      return 0;
    }

    if (*verify_cmd) {
      apply_config(verify_cmd, verify_opts);
      ChainContext ctx = make_chain(verify_opts);
      freechain::VerifyOptions vo;
      vo.levels = ctx.levels();
      vo.faithful_len = verify_faithful_len;
      vo.intersection_len = verify_intersection_len;
      for (const std::string& text : verify_words) {
        vo.extra_fixr_words.push_back(freechain::parse_word(text, ctx.alphabet()));
      }
      freechain::VerifyOutcome outcome = freechain::run_verification(ctx, vo);
      write_output(verify_out, outcome.json);
      return outcome.all_certificates ? 0 : 1;
    }

    if (*schreier_cmd) {
      apply_config(schreier_cmd, schreier_opts);
      ChainContext ctx = make_chain(schreier_opts, schreier_level);
      std::string dot;
      if (schreier_center) {
        freechain::BallSignature ball = freechain::schreier_ball(
            ctx, schreier_level, *schreier_center, schreier_radius);
        dot = freechain::ball_to_dot(ball, ctx);
      } else {
        dot = freechain::schreier_to_dot(ctx, schreier_level);
      }
      write_output(schreier_dot, dot);
      return 0;
    }

    if (*trace_cmd) {
      apply_config(trace_cmd, trace_opts);
      ChainContext ctx = make_chain(trace_opts, trace_component);
      const auto& comp = ctx.component(trace_component);
      auto start = comp.parse_vertex(trace_start);
      if (!start)
        throw std::runtime_error("unknown vertex '" + trace_start +
                                 "' in component " + std::to_string(trace_component));
      Word w = freechain::parse_word(trace_word_text, ctx.alphabet());
      auto end = freechain::trace_word(comp.graph(), *start, w);
      std::cout << (end ? comp.vertex_name(*end) : std::string("undefined"))
                << '\n';
      return 0;
    }

    if (*freepoint_cmd) {
      apply_config(freepoint_cmd, freepoint_opts);
      ChainContext ctx = make_chain(freepoint_opts, freepoint_level);
      auto states = freechain::free_point_search(ctx, freepoint_level,
                                                 freepoint_maxlen);
      if (states.empty()) {
        std::cout << "none up to length " << freepoint_maxlen << '\n';
      } else {
        for (std::uint32_t idx : states) {
          std::cout << idx << ' '
                    << state_text(ctx, ctx.orbit(freepoint_level).state_tuple(idx))
                    << '\n';
        }
      }
      return 0;
    }

    if (*gns_cmd) {
      apply_config(gns_cmd, gns_opts);
      ChainContext ctx = make_chain(gns_opts, gns_level);
      freechain::GnsWitness witness =
          freechain::gns_witness(ctx, gns_level, gns_radius);
      std::cout << "looped_fraction "
                << freechain::rational_to_string(witness.looped_fraction) << '\n'
                << "looped_center " << witness.looped_ball.center << '\n'
                << "tree_like_center " << witness.most_tree_like_ball.center
                << " is_tree "
                << (witness.most_tree_like_ball.is_tree ? "true" : "false")
                << '\n'
                << "balls_isomorphic "
                << (freechain::balls_isomorphic(witness.looped_ball,
                                                witness.most_tree_like_ball)
                        ? "true"
                        : "false")
                << '\n';
      if (!gns_prefix.empty()) {
        write_output(gns_prefix + "looped.dot",
                     freechain::ball_to_dot(witness.looped_ball, ctx, "looped"));
        write_output(gns_prefix + "treelike.dot",
                     freechain::ball_to_dot(witness.most_tree_like_ball, ctx,
                                            "treelike"));
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
