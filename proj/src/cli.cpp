#include "wreath/cli.hpp"

#include <omp.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <exception>
#include <optional>
#include <vector>

#include "wreath/biword.hpp"
#include "wreath/encode.hpp"
#include "wreath/identities.hpp"
#include "wreath/parabolic.hpp"
#include "wreath/parallel.hpp"

namespace wreath::cli {

namespace {

struct Options {
  bool json = false;
  std::uint64_t max_elements = kDefaultMaxElements;
  std::size_t max_terms = kDefaultMaxTerms;
  std::uint32_t r = 1;
  std::uint32_t n = 3;
  std::string window;
  std::string f;
  std::string g;
  std::string partition;
  std::string J;
  std::string identity;
  bool all = false;
  std::optional<std::uint32_t> tmax, t1max, t2max, ucap, pcap, qcap;
};

std::string set_text(const std::vector<std::uint32_t>& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out + "}";
}

nlohmann::json stats_json(const ColoredPermutation& g) {
  const auto s = statistics(g);
  return {{"window", g.to_string()}, {"r", g.r()},           {"n", g.n()},
          {"inv", s.inv},            {"length", s.length},   {"des_set", s.des_set},
          {"des", s.des},            {"maj", s.maj},         {"fmaj", s.fmaj},
          {"col", s.col},            {"col_vector", s.col_vector}};
}

void print_stats(const ColoredPermutation& g, std::ostream& out) {
  const auto s = statistics(g);
  std::string colors;
  for (std::size_t i = 0; i < s.col_vector.size(); ++i) {
    colors += (i ? "," : "") + std::to_string(s.col_vector[i]);
  }
  out << "window: " << g.to_string() << "\n"
      << "inv: " << s.inv << "\n"
      << "length: " << s.length << "\n"
      << "des_set: " << set_text(s.des_set) << "\n"
      << "des: " << s.des << "\n"
      << "maj: " << s.maj << "\n"
      << "fmaj: " << s.fmaj << "\n"
      << "col: " << s.col << "\n"
      << "col_vector: (" << colors << ")\n";
}

VerifyParams verify_params(const Options& o) {
  VerifyParams p;
  p.r = o.r;
  p.n = o.n;
  p.tmax = o.tmax;
  p.t1max = o.t1max;
  p.t2max = o.t2max;
  p.ucap = o.ucap;
  p.pcap = o.pcap;
  p.qcap = o.qcap;
  p.max_elements = o.max_elements;
  p.max_terms = o.max_terms;
  return p;
}

struct Outcome {
  std::optional<VerificationReport> report;
  int code = kOk;
  std::string error;
};

Outcome run_one(std::string_view name, const VerifyParams& params) {
  Outcome o;
  try {
    o.report = verify_identity(name, params);
    o.code = o.report->pass ? kOk : kFailure;
  } catch (const BudgetExceeded& e) {
    o.code = kUsage;
    o.error = e.what();
  } catch (const std::exception& e) {
    o.code = kFailure;
    o.error = e.what();
  }
  return o;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.all == !o.identity.empty()) {
    err << "verify: give exactly one of --identity NAME or --all\n";
    return kUsage;
  }
  if (!o.all && !is_known_identity(o.identity)) {
    err << "verify: unknown identity '" << o.identity << "'; known:";
    for (const auto& e : catalog()) err << " " << e.name;
    err << "\n";
    return kUsage;
  }
  const VerifyParams params = verify_params(o);
  std::vector<std::string_view> names;
  if (o.all) {
    for (const auto& e : catalog()) names.push_back(e.name);
  } else {
    names.push_back(o.identity);
  }
  std::vector<Outcome> outcomes(names.size());
  const int threads = o.all ? parallel::thread_count() : 1;
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (std::size_t i = 0; i < names.size(); ++i) outcomes[i] = run_one(names[i], params);

  bool failed = false;
  bool budget = false;
  nlohmann::json reports = nlohmann::json::array();
  for (std::size_t i = 0; i < names.size(); ++i) {
    const auto& oc = outcomes[i];
    if (oc.report) {
      if (o.json) {
        reports.push_back(oc.report->to_json());
      } else {
        out << oc.report->to_text() << "\n";
      }
    } else {
      err << "error: " << names[i] << ": " << oc.error << "\n";
      if (o.json) reports.push_back({{"identity", names[i]}, {"error", oc.error}});
    }
    failed |= oc.code == kFailure;
    budget |= oc.code == kUsage;
  }
  if (o.json) out << (o.all ? reports.dump(2) : reports[0].dump(2)) << "\n";
  return failed ? kFailure : budget ? kUsage : kOk;
}

int cmd_selftest(const Options& o, std::ostream& out) {
  bool ok = true;
  nlohmann::json results = nlohmann::json::array();
  for (const auto& r : harness_self_test()) {
    const bool good = r.detected && r.localized;
    ok &= good;
    const std::string side = r.side == Corruption::Side::lhs ? "lhs" : "rhs";
    if (o.json) {
      results.push_back({{"identity", r.identity}, {"side", side}, {"detected", r.detected},
                         {"localized", r.localized}, {"report", r.detail}});
    } else {
      out << (good ? "PASS " : "FAIL ") << "corrupted " << side << " of " << r.identity << ": "
          << (r.detected ? "detected" : "not detected") << ", "
          << (r.localized ? "localized" : "not localized") << "\n";
    }
  }
  if (o.json) out << results.dump(2) << "\n";
  return ok ? kOk : kFailure;
}

}  // namespace

int run_command(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Colored permutation groups G(r,n): statistics, encodings and identity checks",
               "wreath"};
  app.require_subcommand(1);
  Options o;
  app.add_flag("--json", o.json, "JSON output");
  app.add_option("--max-elements", o.max_elements, "Budget for enumerated group elements")
      ->check(CLI::PositiveNumber);
  app.add_option("--max-terms", o.max_terms, "Budget for polynomial terms")
      ->check(CLI::PositiveNumber);

  auto add_r = [&](CLI::App* sub) {
    return sub->add_option("--r", o.r, "Number of colors")->check(CLI::PositiveNumber);
  };

  auto* stats_cmd = app.add_subcommand("stats", "Statistics of one element");
  add_r(stats_cmd)->required();
  stats_cmd->add_option("--window", o.window, "Window notation, e.g. [4^1,3,2^4,1^2]")->required();

  auto* table_cmd = app.add_subcommand("table", "Statistics of every element of G(r,n)");
  add_r(table_cmd)->required();
  table_cmd->add_option("--n", o.n, "Rank")->required();

  auto* encode_cmd = app.add_subcommand("encode", "f -> (pi(f), lambda(f))");
  add_r(encode_cmd)->required();
  encode_cmd->add_option("--f", o.f, "Colored sequence, e.g. 4^2,4^1,1")->required();

  auto* decode_cmd = app.add_subcommand("decode", "(gamma, lambda) -> f");
  add_r(decode_cmd)->required();
  decode_cmd->add_option("--window", o.window, "Window notation of gamma")->required();
  decode_cmd->add_option("--partition", o.partition, "Nondecreasing parts, e.g. 0,2,2")->required();

  auto* decompose_cmd = app.add_subcommand("decompose", "gamma = tau * delta for a generator set J");
  add_r(decompose_cmd)->required();
  decompose_cmd->add_option("--window", o.window, "Window notation of gamma")->required();
  decompose_cmd->add_option("--J", o.J, "Generator indices in [0,n-1], e.g. 1,2,4")->required();

  auto* biword_cmd = app.add_subcommand("biword", "Colored biword (g over f) -> (gamma, lambda, mu)");
  add_r(biword_cmd)->required();
  biword_cmd->add_option("--g", o.g, "Top row, nondecreasing")->required();
  biword_cmd->add_option("--f", o.f, "Bottom row, colored sequence")->required();

  auto* verify_cmd = app.add_subcommand("verify", "Check catalog identities against enumeration");
  add_r(verify_cmd);
  verify_cmd->add_option("--n", o.n, "Rank");
  verify_cmd->add_option("--identity", o.identity, "Catalog entry");
  verify_cmd->add_flag("--all", o.all, "Run the whole catalog");
  verify_cmd->add_option("--tmax", o.tmax, "t cap (or value cap for sequence checks)");
  verify_cmd->add_option("--t1max", o.t1max, "t1 cap (biword f cap)");
  verify_cmd->add_option("--t2max", o.t2max, "t2 cap (biword g cap)");
  verify_cmd->add_option("--ucap", o.ucap, "u cap for series identities");
  verify_cmd->add_option("--pcap", o.pcap, "p cap");
  verify_cmd->add_option("--qcap", o.qcap, "q cap (q1 and q2 for adin_roichman)");

  auto* selftest_cmd = app.add_subcommand("selftest", "Corrupt coefficients and check detection");

  for (auto* sub : app.get_subcommands([](const CLI::App*) { return true; })) sub->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (stats_cmd->parsed()) {
      const auto g = ColoredPermutation::parse(o.window, o.r);
      if (o.json) {
        out << stats_json(g).dump(2) << "\n";
      } else {
        print_stats(g, out);
      }
      return kOk;
    }
    if (table_cmd->parsed()) {
      const GroupEnumeration group(o.r, o.n, o.max_elements);
      nlohmann::json rows = nlohmann::json::array();
      if (!o.json) out << "window inv length des maj fmaj col\n";
      group.for_each([&](const ColoredPermutation& g) {
        if (o.json) {
          rows.push_back(stats_json(g));
          return;
        }
        const auto s = statistics(g);
        out << g.to_string() << " " << s.inv << " " << s.length << " " << s.des << " " << s.maj
            << " " << s.fmaj << " " << s.col << "\n";
      });
      if (o.json) out << rows.dump(2) << "\n";
      return kOk;
    }
    if (encode_cmd->parsed()) {
      const auto f = ColoredSequence::parse(o.f, o.r);
      const auto g = pi_of(f);
      const auto lam = lambda_of(f);
      if (o.json) {
        out << nlohmann::json{{"gamma", g.to_string()}, {"lambda", lam.to_string()}}.dump(2)
            << "\n";
      } else {
        out << g.to_string() << "\n" << lam.to_string() << "\n";
      }
      return kOk;
    }
    if (decode_cmd->parsed()) {
      const auto g = ColoredPermutation::parse(o.window, o.r);
      const auto lam = Partition::parse(o.partition);
      if (lam.size() != g.n()) throw InvalidInput("partition length differs from the rank of gamma");
      const auto f = sequence_from(g, lam);
      if (o.json) {
        out << nlohmann::json{{"f", f.to_string()}}.dump(2) << "\n";
      } else {
        out << f.to_string() << "\n";
      }
      return kOk;
    }
    if (decompose_cmd->parsed()) {
      const auto g = ColoredPermutation::parse(o.window, o.r);
      const DescentClass J(o.r, g.n(), parse_index_set(o.J, g.n()));
      const auto [tau, delta] = decompose(g, J);
      if (o.json) {
        out << nlohmann::json{{"tau", tau.to_string()}, {"delta", delta.to_string()}}.dump(2)
            << "\n";
      } else {
        out << tau.to_string() << "\n" << delta.to_string() << "\n";
      }
      return kOk;
    }
    if (biword_cmd->parsed()) {
      const auto g = Partition::parse(o.g);
      const auto f = ColoredSequence::parse(o.f, o.r);
      if (g.size() != f.n()) throw InvalidInput("g and f have different lengths");
      const auto t = to_triple(Biword{g, f});
      if (o.json) {
        out << nlohmann::json{{"gamma", t.gamma.to_string()},
                              {"lambda", t.lam.to_string()},
                              {"mu", t.mu.to_string()}}
                   .dump(2)
            << "\n";
      } else {
        out << t.gamma.to_string() << "\n" << t.lam.to_string() << "\n" << t.mu.to_string() << "\n";
      }
      return kOk;
    }
    if (verify_cmd->parsed()) return cmd_verify(o, out, err);
    if (selftest_cmd->parsed()) return cmd_selftest(o, out);
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kUsage;
}

}  // namespace wreath::cli
