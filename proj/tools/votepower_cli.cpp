// votepower: power indices for weighted voting games, with a bundled
// reconstruction of the 1990-2017 binomial-era Chilean Senate.
//
// Exit codes: 0 success; 2 usage or input parse error; 3 game validation
// error; 4 dataset load/validation error; 5 reproduction claim failed;
// 6 reproduction claim indeterminate.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "votepower/coalitions.hpp"
#include "votepower/errors.hpp"
#include "votepower/game.hpp"
#include "votepower/indices.hpp"
#include "votepower/reproduce.hpp"
#include "votepower/senate.hpp"
#include "votepower/stats.hpp"

namespace vp = votepower;
using nlohmann::ordered_json;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitGameInvalid = 3;
constexpr int kExitDataset = 4;

struct GlobalOptions {
  std::string format;  // "", "json" or "csv"; empty means per-command default
  int precision = 6;
  bool strict_events = false;
};

struct DatasetOptions {
  std::string seats_path;
  std::string parties_path;
  std::string events_path;
};

void add_dataset_options(CLI::App* cmd, DatasetOptions& opts) {
  cmd->add_option("--seats", opts.seats_path, "Seat table CSV (default: bundled)");
  cmd->add_option("--parties", opts.parties_path, "Party metadata CSV (default: bundled)");
  cmd->add_option("--events", opts.events_path, "Change events CSV (default: bundled)");
}

/// Escapes a vp::Error into a CLI exit code without unwinding main's stack.
struct ExitWith {
  int code;
};

vp::SenateDataset load_dataset(const DatasetOptions& opts, const GlobalOptions& global) {
  try {
    const bool any = !opts.seats_path.empty() || !opts.parties_path.empty() ||
                     !opts.events_path.empty();
    if (!any) return vp::SenateDataset::bundled(global.strict_events);
    if (opts.seats_path.empty() || opts.parties_path.empty() || opts.events_path.empty())
      vp::raise(vp::Errc::ParseError,
                "either give all of --seats/--parties/--events or none");
    return vp::SenateDataset::load_files(opts.seats_path, opts.parties_path,
                                         opts.events_path, global.strict_events);
  } catch (const vp::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    throw ExitWith{kExitDataset};
  }
}

/// Runs `parse` and maps any vp::Error to a usage exit (2).
template <typename F>
auto parse_args_or_usage(F&& parse) {
  try {
    return parse();
  } catch (const vp::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    throw ExitWith{kExitUsage};
  }
}

void print_warnings(const vp::SenateDataset& ds) {
  for (const auto& w : ds.warnings()) std::cerr << "warning: " << w << "\n";
}

std::string format_double(double value, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, value);
  return buf;
}

std::string csv_quote(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

// ---------------------------------------------------------------- quota ---
int run_quota(long long seats, const std::string& law_name) {
  const auto quota = parse_args_or_usage(
      [&] { return vp::quota_for(vp::parse_law(law_name), seats); });
  std::cout << quota << "\n";
  return 0;
}

// -------------------------------------------------------------- compute ---
int run_compute(const std::string& literal, std::vector<std::string> index_names,
                const std::vector<std::string>& labels, const GlobalOptions& global) {
  vp::WeightedVotingGame game = [&] {
    try {
      return vp::WeightedVotingGame::parse(literal, labels);
    } catch (const vp::Error& e) {
      std::cerr << "error: " << e.what() << "\n";
      // malformed literal is a usage error; a parsed game that violates an
      // invariant exits 3 with the invariant named
      throw ExitWith{e.code() == vp::Errc::ParseError ? kExitUsage : kExitGameInvalid};
    }
  }();

  if (index_names.empty())
    for (vp::IndexKind kind : vp::kAllIndices)
      index_names.emplace_back(vp::index_id(kind));

  std::vector<vp::PowerVector> results;
  for (const auto& name : index_names)
    results.push_back(vp::compute_index(
        game, parse_args_or_usage([&] { return vp::parse_index(name); })));

  const std::string format = global.format.empty() ? "json" : global.format;
  if (format == "json") {
    ordered_json out;
    out["game"] = game.literal();
    auto arr = ordered_json::array();
    for (const auto& pv : results) {
      auto block = ordered_json::parse(vp::power_vector_to_json(pv, global.precision));
      block["ranking"] = vp::rank_players(pv).groups;
      arr.push_back(std::move(block));
    }
    out["indices"] = std::move(arr);
    // "practically the same" is not an identity, so rank agreement of the
    // two minimal-winning-coalition indices is reported, never asserted
    const vp::PowerVector* dp = nullptr;
    const vp::PowerVector* hp = nullptr;
    for (const auto& pv : results) {
      if (pv.index == vp::IndexKind::DeeganPackel) dp = &pv;
      if (pv.index == vp::IndexKind::HollerPackel) hp = &pv;
    }
    if (dp && hp)
      out["dp_hp_rank_agreement"] = vp::rank_players(*dp) == vp::rank_players(*hp);
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "game,index,position,label,rational,decimal\n";
    for (const auto& pv : results)
      for (size_t v = 0; v < pv.values.size(); ++v)
        std::cout << csv_quote(game.literal()) << ',' << vp::index_id(pv.index) << ',' << v
                  << ',' << csv_quote(game.label_of(static_cast<int>(v))) << ','
                  << vp::to_fraction_string(pv.values[v]) << ','
                  << vp::to_decimal_string(pv.values[v], global.precision) << "\n";
  }
  return 0;
}

// ------------------------------------------------------------- timeline ---
int run_timeline(const DatasetOptions& data, const std::string& index_name,
                 const std::string& law_name, const std::string& level_name,
                 const GlobalOptions& global) {
  const auto [index, law, level] = parse_args_or_usage([&] {
    return std::tuple{vp::parse_index(index_name), vp::parse_law(law_name),
                      vp::parse_level(level_name)};
  });

  const vp::SenateDataset ds = load_dataset(data, global);
  print_warnings(ds);

  // exact per-cell values: recompute the index per record so the rational
  // rendering does not round-trip through doubles
  struct Row {
    std::string start, end, label, decimal, rational;
  };
  std::vector<Row> rows;
  for (int r = 0; r < static_cast<int>(ds.records().size()); ++r) {
    const auto& rec = ds.records()[static_cast<size_t>(r)];
    const auto game = level == vp::Level::Party ? ds.party_game(r, law)
                                                : ds.coalition_game(r, law);
    const vp::PowerVector pv = vp::compute_index(game, index);
    for (size_t v = 0; v < pv.values.size(); ++v)
      rows.push_back({rec.start.str(), rec.end.str(), game.label_of(static_cast<int>(v)),
                      vp::to_decimal_string(pv.values[v], global.precision),
                      vp::to_fraction_string(pv.values[v])});
  }

  const std::string format = global.format.empty() ? "csv" : global.format;
  if (format == "csv") {
    std::cout << "subperiod_start,subperiod_end,voter_label,value_decimal,value_rational\n";
    for (const auto& row : rows)
      std::cout << row.start << ',' << row.end << ',' << csv_quote(row.label) << ','
                << row.decimal << ',' << row.rational << "\n";
  } else {
    auto arr = ordered_json::array();
    for (const auto& row : rows) {
      ordered_json j;
      j["subperiod_start"] = row.start;
      j["subperiod_end"] = row.end;
      j["voter_label"] = row.label;
      j["value_decimal"] = row.decimal;
      j["value_rational"] = row.rational;
      arr.push_back(std::move(j));
    }
    std::cout << arr.dump(2) << "\n";
  }
  return 0;
}

// ------------------------------------------------------------ correlate ---
int run_correlate(const DatasetOptions& data, const std::string& index_name,
                  std::vector<std::string> law_names, const std::string& between,
                  const std::string& party, const std::string& method_name, double alpha,
                  bool include_all, bool exact_pvalues, const GlobalOptions& global) {
  const auto [index, method, laws] = parse_args_or_usage([&] {
    if (between != "parties" && between != "quorums")
      vp::raise(vp::Errc::ParseError, "--between must be 'parties' or 'quorums'");
    if (between == "quorums" && party.empty())
      vp::raise(vp::Errc::ParseError, "--between quorums requires --party");
    std::vector<vp::LawType> parsed;
    if (law_names.empty())
      parsed.assign(vp::kAllLaws.begin(), vp::kAllLaws.end());
    else
      for (const auto& name : law_names) parsed.push_back(vp::parse_law(name));
    return std::tuple{vp::parse_index(index_name), vp::parse_method(method_name), parsed};
  });
  const vp::PValueMethod pvalues = exact_pvalues ? vp::PValueMethod::ExactPermutation
                                                 : vp::PValueMethod::Approximate;

  const vp::SenateDataset ds = load_dataset(data, global);
  print_warnings(ds);

  struct Row {
    std::string context, a, b;
    vp::CorrelationResult r;
  };
  std::vector<Row> rows;
  try {
    if (between == "parties") {
      for (const vp::LawType law : laws)
        for (const auto& pc : ds.correlate_parties(index, law, method, alpha, pvalues))
          rows.push_back({std::string(vp::law_id(law)), pc.a, pc.b, pc.result});
    } else {
      for (const auto& pc : ds.correlate_quorums(index, party, method, alpha, pvalues))
        rows.push_back({party, pc.a, pc.b, pc.result});
    }
  } catch (const vp::Error& e) {
    // unknown party or an infeasible --exact request
    std::cerr << "error: " << e.what() << "\n";
    throw ExitWith{kExitUsage};
  }

  // the default view keeps only statistically significant pairs
  if (!include_all) {
    std::erase_if(rows, [](const Row& row) { return !row.r.significant; });
  }

  const char* context_header = between == "parties" ? "law" : "party";
  const std::string format = global.format.empty() ? "csv" : global.format;
  if (format == "csv") {
    std::cout << context_header
              << ",row,column,method,coefficient,p_value,significant,level,zero_variance\n";
    for (const auto& row : rows) {
      std::cout << row.context << ',' << row.a << ',' << row.b << ','
                << vp::method_id(row.r.method) << ',';
      if (row.r.zero_variance)
        std::cout << ",,false,,true\n";
      else
        std::cout << format_double(row.r.coefficient, global.precision) << ','
                  << format_double(row.r.p_value, global.precision) << ','
                  << (row.r.significant ? "true" : "false") << ','
                  << vp::level_label(*row.r.level) << ",false\n";
    }
  } else {
    auto arr = ordered_json::array();
    for (const auto& row : rows) {
      ordered_json j;
      j[context_header] = row.context;
      j["row"] = row.a;
      j["column"] = row.b;
      j["method"] = std::string(vp::method_id(row.r.method));
      if (row.r.zero_variance) {
        j["coefficient"] = nullptr;
        j["p_value"] = nullptr;
      } else {
        j["coefficient"] = row.r.coefficient;
        j["p_value"] = row.r.p_value;
      }
      j["significant"] = row.r.significant;
      j["level"] = row.r.level ? ordered_json(std::string(vp::level_label(*row.r.level)))
                               : ordered_json(nullptr);
      j["zero_variance"] = row.r.zero_variance;
      arr.push_back(std::move(j));
    }
    std::cout << arr.dump(2) << "\n";
  }
  return 0;
}

// ------------------------------------------------------------ reproduce ---
int run_reproduce(const DatasetOptions& data, const std::string& report_path,
                  const GlobalOptions& global) {
  const vp::SenateDataset ds = load_dataset(data, global);
  print_warnings(ds);

  const auto claims = vp::evaluate_claims(ds);
  const std::string json = vp::claims_to_json(claims);

  if (!report_path.empty()) {
    std::ofstream out(report_path);
    if (!out) vp::raise(vp::Errc::ParseError, "cannot write '" + report_path + "'");
    out << json << "\n";
  }

  const std::string format = global.format.empty() ? "" : global.format;
  if (format == "json") {
    std::cout << json << "\n";
  } else {
    int pass = 0, fail = 0, indeterminate = 0;
    for (const auto& c : claims) {
      const char* tag = c.outcome == vp::ClaimOutcome::Pass ? "PASS"
                        : c.outcome == vp::ClaimOutcome::Fail ? "FAIL"
                                                              : "INDETERMINATE";
      (c.outcome == vp::ClaimOutcome::Pass ? pass
       : c.outcome == vp::ClaimOutcome::Fail ? fail
                                             : indeterminate) += 1;
      std::cout << "[" << tag << "] " << c.claim_id << ": expected " << c.expected
                << " (" << c.rule << "); got " << c.actual << "\n";
    }
    std::cout << pass << " passed, " << fail << " failed, " << indeterminate
              << " indeterminate\n";
  }
  return vp::claims_exit_code(claims);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Power indices for weighted voting games and the binomial-era Senate"};
  app.require_subcommand(1);

  GlobalOptions global;
  app.add_option("--format", global.format, "Output format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--precision", global.precision, "Decimal digits in rendered values")
      ->check(CLI::Range(0, 50));
  app.add_flag("--strict-events", global.strict_events,
               "Treat event reconciliation problems as errors");

  // quota
  auto* quota_cmd = app.add_subcommand("quota", "Quota for a seat count under a law type");
  quota_cmd->fallthrough();
  long long quota_seats = 0;
  std::string quota_law;
  quota_cmd->add_option("--seats", quota_seats, "Seats in exercise")->required();
  quota_cmd->add_option("--law", quota_law,
                        "reform23 | reform35 | interpretation | organic | qualified")
      ->required();

  // compute
  auto* compute_cmd = app.add_subcommand("compute", "Power indices of one game literal");
  compute_cmd->fallthrough();
  std::string compute_game;
  std::vector<std::string> compute_indices;
  std::string compute_labels;
  compute_cmd->add_option("--game", compute_game, "Game literal \"q;w1,w2,...\"")->required();
  compute_cmd->add_option("--index", compute_indices,
                          "Indices to compute (ss, banzhaf, dp, hp, johnston); default all")
      ->delimiter(',');
  compute_cmd->add_option("--labels", compute_labels, "Comma-separated voter labels");

  // timeline
  auto* timeline_cmd =
      app.add_subcommand("timeline", "Per-voter index series over all subperiods");
  timeline_cmd->fallthrough();
  DatasetOptions timeline_data;
  std::string timeline_index = "ss", timeline_law = "qualified", timeline_level = "party";
  add_dataset_options(timeline_cmd, timeline_data);
  timeline_cmd->add_option("--index", timeline_index, "Power index (default ss)");
  timeline_cmd->add_option("--law", timeline_law, "Law type (default qualified)");
  timeline_cmd->add_option("--level", timeline_level, "party | coalition (default party)");

  // correlate
  auto* correlate_cmd =
      app.add_subcommand("correlate", "Rank correlations between power series");
  correlate_cmd->fallthrough();
  DatasetOptions correlate_data;
  std::string correlate_index = "ss", correlate_between = "parties", correlate_party;
  std::string correlate_method = "kendall";
  std::vector<std::string> correlate_laws;
  double correlate_alpha = 0.05;
  bool correlate_all = false, correlate_exact = false;
  add_dataset_options(correlate_cmd, correlate_data);
  correlate_cmd->add_option("--index", correlate_index, "Power index (default ss)");
  correlate_cmd->add_option("--law", correlate_laws,
                            "Law types for --between parties (default: all four)")
      ->delimiter(',');
  correlate_cmd->add_option("--between", correlate_between, "parties | quorums");
  correlate_cmd->add_option("--party", correlate_party,
                            "Party abbreviation for --between quorums");
  correlate_cmd->add_option("--method", correlate_method, "spearman | kendall");
  correlate_cmd->add_option("--alpha", correlate_alpha, "Significance cutoff (default 0.05)");
  correlate_cmd->add_flag("--all", correlate_all,
                          "Keep statistically insignificant pairs (flagged)");
  correlate_cmd->add_flag("--exact", correlate_exact,
                          "Exact permutation p-values (n <= 10)");

  // reproduce
  auto* reproduce_cmd =
      app.add_subcommand("reproduce", "Evaluate the embedded reference-value claims");
  reproduce_cmd->fallthrough();
  DatasetOptions reproduce_data;
  std::string reproduce_out;
  add_dataset_options(reproduce_cmd, reproduce_data);
  reproduce_cmd->add_option("--out", reproduce_out, "Write the JSON report to this path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*quota_cmd) return run_quota(quota_seats, quota_law);
    if (*compute_cmd) {
      std::vector<std::string> labels;
      if (!compute_labels.empty()) {
        std::string_view rest = compute_labels;
        while (true) {
          const auto comma = rest.find(',');
          labels.emplace_back(rest.substr(0, comma));
          if (comma == std::string_view::npos) break;
          rest = rest.substr(comma + 1);
        }
      }
      return run_compute(compute_game, compute_indices, labels, global);
    }
    if (*timeline_cmd)
      return run_timeline(timeline_data, timeline_index, timeline_law, timeline_level, global);
    if (*correlate_cmd)
      return run_correlate(correlate_data, correlate_index, correlate_laws, correlate_between,
                           correlate_party, correlate_method, correlate_alpha, correlate_all,
                           correlate_exact, global);
    if (*reproduce_cmd) return run_reproduce(reproduce_data, reproduce_out, global);
  } catch (const ExitWith& exit_with) {
    return exit_with.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
