// Copyright 2026 The psi Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// psi: team-chat psychological-safety indicator pipeline.
//   psi compute          ingest chat data and write the indicator series
//   psi heatmap          render per-indicator SVG heatmaps from a series
//   psi synth            generate a deterministic synthetic corpus
//   psi indicator-table  dump the indicator catalog as JSON

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "psi/indicators.hpp"
#include "psi/ingest.hpp"
#include "psi/lexicon.hpp"
#include "psi/reporting.hpp"
#include "psi/synth.hpp"
#include "psi/types.hpp"

namespace fs = std::filesystem;

namespace {

struct TeamInput {
  std::string team_id;
  std::vector<psi::Message> messages;
  int raw_count = 0;
  int dropped_system = 0;
};

std::vector<TeamInput> load_message_inputs(const fs::path& path) {
  std::vector<TeamInput> teams;
  if (fs::is_directory(path)) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(path)) {
      if (entry.is_regular_file() && entry.path().extension() == ".jsonl") {
        files.push_back(entry.path());
      }
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) {
      throw psi::ParseError("no .jsonl files under " + path.string());
    }
    for (const fs::path& f : files) {
      TeamInput t;
      t.team_id = f.stem().string();
      t.messages = psi::parse_normalized(f);
      t.raw_count = static_cast<int>(t.messages.size());
      teams.push_back(std::move(t));
    }
  } else {
    TeamInput t;
    t.team_id = path.stem().string();
    t.messages = psi::parse_normalized(path);
    t.raw_count = static_cast<int>(t.messages.size());
    teams.push_back(std::move(t));
  }
  return teams;
}

std::vector<TeamInput> load_export_inputs(const fs::path& path) {
  std::vector<TeamInput> teams;
  auto load_one = [](const fs::path& root) {
    TeamInput t;
    t.team_id = root.filename().string();
    psi::ParsedExport parsed = psi::parse_export(root);
    t.messages = std::move(parsed.messages);
    t.raw_count = parsed.raw_count;
    t.dropped_system = parsed.dropped_system;
    return t;
  };
  if (fs::exists(path / "users.json")) {
    teams.push_back(load_one(path));
    return teams;
  }
  std::vector<fs::path> roots;
  for (const auto& entry : fs::directory_iterator(path)) {
    if (entry.is_directory() && fs::exists(entry.path() / "users.json")) {
      roots.push_back(entry.path());
    }
  }
  std::sort(roots.begin(), roots.end());
  if (roots.empty()) {
    throw psi::ParseError("no export root (users.json) found under " + path.string());
  }
  for (const fs::path& root : roots) teams.push_back(load_one(root));
  return teams;
}

int run_compute(const std::string& export_path, const std::string& messages_path,
                const std::string& lexicon_path, const std::string& roles_path,
                const std::string& exclude_path, int window_days, const std::string& out_path,
                const std::string& format) {
  const psi::Lexicon lexicon = psi::Lexicon::load(lexicon_path);
  for (const std::string& w : lexicon.warnings()) std::cerr << "lexicon: " << w << "\n";

  const std::vector<psi::RosterEntry> roles = psi::load_roles(roles_path);
  std::set<std::string> excluded;
  if (!exclude_path.empty()) excluded = psi::load_exclusions(exclude_path);

  std::vector<TeamInput> inputs = !messages_path.empty()
                                      ? load_message_inputs(messages_path)
                                      : load_export_inputs(export_path);

  std::vector<psi::TeamCorpus> corpora;
  for (TeamInput& input : inputs) {
    const int before = static_cast<int>(input.messages.size());
    psi::ExclusionResult filtered = psi::apply_exclusions(std::move(input.messages), excluded);
    std::vector<psi::Teammate> roster = psi::roster_for_team(roles, input.team_id, excluded);
    if (roster.empty()) {
      throw psi::ValidationError("roles file has no entries for team " + input.team_id);
    }
    psi::CorpusStats stats;
    psi::TeamCorpus corpus = psi::build_corpus(std::move(filtered.messages), std::move(roster),
                                               input.team_id, &stats);
    std::cerr << "team " << corpus.team_id << ": " << before << " messages, "
              << filtered.removed << " excluded, " << stats.duplicates_removed
              << " duplicates, " << corpus.messages.size() << " kept";
    if (input.dropped_system > 0) {
      std::cerr << " (" << input.dropped_system << " system messages dropped at parse)";
    }
    std::cerr << "\n";
    if (corpus.messages.empty()) {
      std::cerr << "warning: team " << corpus.team_id << " has no messages left\n";
    }
    corpora.push_back(std::move(corpus));
  }

  psi::ComputeOptions options;
  options.window_days = window_days;
  psi::ComputeDiagnostics diagnostics;
  psi::IndicatorSeries series = psi::compute_all(corpora, lexicon, options, &diagnostics);
  psi::flag_low_quantile(series, 0.025);

  if (format == "jsonl") {
    psi::write_series_jsonl(series, out_path);
  } else {
    psi::write_series_csv(series, out_path);
  }

  for (const auto& [indicator, missing] : diagnostics.missing_by_indicator) {
    std::cerr << "missing " << indicator << ": " << missing << "\n";
  }
  for (const std::string& name : diagnostics.degenerate_components) {
    std::cerr << "note: component '" << name << "' had no defined values; standardized to 0\n";
  }
  std::cerr << "wrote " << out_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"psi: psychological-safety indicators from team chat logs"};
  app.require_subcommand(1);

  // compute
  auto* compute = app.add_subcommand("compute", "ingest chat data and write the series");
  std::string export_path, messages_path, lexicon_path, roles_path, exclude_path;
  std::string out_path, format = "csv";
  int window_days = 7;
  auto* export_opt =
      compute->add_option("--export", export_path, "chat export directory (or directory of them)")
          ->check(CLI::ExistingDirectory);
  auto* messages_opt =
      compute->add_option("--messages", messages_path,
                          "normalized .jsonl file (or directory of per-team files)")
          ->check(CLI::ExistingPath);
  export_opt->excludes(messages_opt);
  messages_opt->excludes(export_opt);
  compute->add_option("--lexicon", lexicon_path, "category dictionary file")
      ->required()
      ->check(CLI::ExistingFile);
  compute->add_option("--roles", roles_path, "roster CSV: user_id,role[,team_id]")
      ->required()
      ->check(CLI::ExistingFile);
  compute->add_option("--exclude", exclude_path, "user ids to exclude, one per line")
      ->check(CLI::ExistingFile);
  compute->add_option("--window-days", window_days, "trailing window length")
      ->check(CLI::Range(1, 366));
  compute->add_option("--out", out_path, "series output path")->required();
  compute->add_option("--format", format, "csv or jsonl")
      ->check(CLI::IsMember({"csv", "jsonl"}));

  // heatmap
  auto* heatmap = app.add_subcommand("heatmap", "render per-indicator SVG heatmaps");
  std::string series_path, heatmap_dir;
  double flag_quantile = 0.025;
  heatmap->add_option("--series", series_path, "series file (csv or jsonl)")
      ->required()
      ->check(CLI::ExistingFile);
  heatmap->add_option("--out-dir", heatmap_dir, "output directory")->required();
  heatmap->add_option("--flag-quantile", flag_quantile, "low-quantile flag threshold")
      ->check(CLI::Range(0.0, 1.0));

  // synth
  auto* synth = app.add_subcommand("synth", "generate a deterministic synthetic corpus");
  std::string profile_path, synth_dir, start_date;
  psi::SynthProfile knobs;
  double skew = 0.0, latency = 1800.0, thread_prob = 0.25, msgs_week = 33.0;
  auto* profile_opt = synth->add_option("--profile", profile_path, "profile JSON")
                          ->check(CLI::ExistingFile);
  synth->add_option("--out-dir", synth_dir, "output directory")->required();
  std::vector<CLI::Option*> knob_opts = {
      synth->add_option("--seed", knobs.seed, "rng seed"),
      synth->add_option("--teams", knobs.teams, "team count")->check(CLI::Range(1, 1000)),
      synth->add_option("--members", knobs.members_per_team, "members per team"),
      synth->add_option("--days", knobs.days, "corpus length in days"),
      synth->add_option("--msgs-per-member-week", msgs_week, "weekly volume per member"),
      synth->add_option("--skew", skew, "participation skew in [0,1]"),
      synth->add_option("--latency", latency, "mean reply latency in seconds"),
      synth->add_option("--thread-prob", thread_prob, "thread probability in [0,1]"),
      synth->add_option("--tokens-per-message", knobs.tokens_per_message, "message length"),
      synth->add_option("--start-date", start_date, "first day, YYYY-MM-DD"),
  };
  for (CLI::Option* opt : knob_opts) profile_opt->excludes(opt);

  // indicator-table
  auto* table = app.add_subcommand("indicator-table", "dump the indicator catalog as JSON");
  std::string table_out;
  table->add_option("--out", table_out, "output path (stdout when omitted)");

  try {
    app.parse(argc, argv);

    if (compute->parsed()) {
      if (export_path.empty() && messages_path.empty()) {
        throw psi::ValidationError("one of --export or --messages is required");
      }
      return run_compute(export_path, messages_path, lexicon_path, roles_path, exclude_path,
                         window_days, out_path, format);
    }
    if (heatmap->parsed()) {
      psi::IndicatorSeries series = psi::read_series(series_path);
      if (series.scores.empty()) {
        throw psi::ParseError("series file has no data rows: " + series_path);
      }
      psi::flag_low_quantile(series, flag_quantile);
      psi::render_heatmaps(series, heatmap_dir);
      std::cerr << "wrote heatmaps to " << heatmap_dir << "\n";
      return 0;
    }
    if (synth->parsed()) {
      psi::SynthProfile profile;
      if (!profile_path.empty()) {
        profile = psi::SynthProfile::from_json_file(profile_path);
      } else {
        profile = knobs;
        profile.msgs_per_member_per_week = {msgs_week};
        profile.participation_skew = {skew};
        profile.reply_latency_mean = {latency};
        profile.thread_probability = {thread_prob};
        profile.category_rates = psi::default_category_rates();
        if (!start_date.empty()) profile.start_day = psi::parse_date(start_date);
        profile.validate();
      }
      psi::generate_corpus(profile, synth_dir);
      std::cerr << "wrote corpus to " << synth_dir << "\n";
      return 0;
    }
    if (table->parsed()) {
      const std::string json = psi::indicator_table_json();
      if (table_out.empty()) {
        std::cout << json;
      } else {
        std::ofstream out(table_out, std::ios::binary);
        if (!out) throw psi::ValidationError("cannot write " + table_out);
        out << json;
      }
      return 0;
    }
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    std::cerr << "run with --help for usage\n";
    return 1;
  } catch (const psi::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const psi::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
