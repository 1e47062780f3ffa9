#include "corename/cli.hpp"

#include <filesystem>
#include <iostream>
#include <map>
#include <memory>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "corename/analytics.hpp"
#include "corename/error.hpp"
#include "corename/facts_io.hpp"
#include "corename/grouping.hpp"
#include "corename/io.hpp"
#include "corename/mining.hpp"
#include "corename/parallel.hpp"
#include "corename/recommend.hpp"
#include "corename/report.hpp"

namespace corename {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Options {
  std::string config;
  int workers = 0;
  std::string lemmas;

  // mine
  std::string repo;
  std::string records;
  std::string range = "HEAD";
  std::string detector = "naive";
  std::string facts_out;

  // shared
  std::string out;
  std::string mode;
  bool plots = false;

  // group / analyze
  std::vector<std::string> renames;
  std::string sets;
  std::vector<std::string> facts_dirs;
  std::string scope = "snapshot";
  std::vector<std::string> filters;

  // facts / recommend
  std::string src;
  std::string facts;
  std::string old_name;
  std::string new_name;
  std::string kind;
  std::string file;
  std::string profile;
  std::optional<double> min_score;
  std::string format = "text";

  // report
  std::string in;
};

class Usage : public Error {
 public:
  explicit Usage(const std::string& msg) : Error(ErrorKind::Usage, msg) {}
};

const ExceptionTable& lemma_table(const Options& o) {
  static std::unique_ptr<ExceptionTable> loaded;
  if (o.lemmas.empty()) return ExceptionTable::bundled();
  if (!loaded) loaded = std::make_unique<ExceptionTable>(ExceptionTable::load(o.lemmas));
  return *loaded;
}

Mode parse_mode(const std::string& text) {
  try {
    return mode_from_string(text);
  } catch (const Error&) {
    throw Usage("unknown mode '" + text + "' (expected raw or lemma)");
  }
}

// ---- config file -----------------------------------------------------------------

void apply_config(CLI::App& app, const std::string& path) {
  json doc;
  try {
    doc = json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, "config '" + path + "': " + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorKind::ParseError, "config '" + path + "' must be an object");
  auto apply = [&](CLI::App& target, const json& values) {
    for (const auto& [key, value] : values.items()) {
      if (value.is_object()) continue;
      CLI::Option* opt = nullptr;
      try {
        opt = target.get_option("--" + key);
      } catch (const CLI::OptionNotFound&) {
        if (&target != &app) {
          try {
            opt = app.get_option("--" + key);
          } catch (const CLI::OptionNotFound&) {
          }
        }
      }
      if (!opt) throw Usage("config key '" + key + "' is not an option of '" + target.get_name() + "'");
      opt->clear();
      auto add = [&](const json& v) {
        if (v.is_string()) opt->add_result(v.get<std::string>());
        else if (v.is_boolean()) opt->add_result(v.get<bool>() ? "true" : "false");
        else opt->add_result(v.dump());
      };
      if (value.is_array()) {
        for (const auto& v : value) add(v);
      } else {
        add(value);
      }
      opt->run_callback();
    }
  };
  for (auto* sub : app.get_subcommands()) {
    json flat = json::object();
    for (const auto& [key, value] : doc.items()) {
      if (!value.is_object()) flat[key] = value;
    }
    // Top-level keys apply to whichever subcommand runs unless it lacks the option.
    for (const auto& [key, value] : flat.items()) {
      bool known = true;
      try {
        sub->get_option("--" + key);
      } catch (const CLI::OptionNotFound&) {
        try {
          app.get_option("--" + key);
        } catch (const CLI::OptionNotFound&) {
          known = false;
        }
      }
      if (!known) flat.erase(key);
    }
    apply(*sub, flat);
    if (doc.contains(sub->get_name()) && doc[sub->get_name()].is_object()) apply(*sub, doc[sub->get_name()]);
  }
}

// ---- mine ------------------------------------------------------------------------

bool looks_like_refactoringminer(const std::string& text, json& doc) {
  auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos || text[first] != '{') return false;
  try {
    doc = json::parse(text);
  } catch (const json::exception&) {
    return false;
  }
  return doc.is_object() && doc.contains("commits");
}

int cmd_mine(const Options& o, std::ostream& err) {
  if (o.repo.empty() == o.records.empty()) throw Usage("mine needs exactly one of --repo or --records");
  if (o.detector != "naive") throw Usage("unknown detector '" + o.detector + "' (only 'naive' is built in)");
  std::vector<RenameRecord> records;
  if (!o.records.empty()) {
    const std::string text = read_file(o.records);
    json doc;
    if (looks_like_refactoringminer(text, doc)) {
      records = convert_refactoringminer(doc);
    } else {
      std::istringstream in(text);
      records = load_rename_records(in);
    }
    if (!o.facts_out.empty()) err << "corename: warning: --facts-out needs --repo; ignored\n";
  } else {
    std::set<std::string> with_renames;
    std::map<std::string, std::string> parent_of;
    for (const auto& commit : walk_history(o.repo, o.range)) {
      parent_of[commit.commit] = commit.parent;
      for (const auto& f : commit.files) {
        if (!f.before || !f.after) continue;
        auto before = extract_file_facts({f.old_path, *f.before});
        auto after = extract_file_facts({f.new_path, *f.after});
        for (const auto* facts : {&before, &after}) {
          for (const auto& s : facts->skipped) {
            err << "corename: warning: " << commit.commit << ": skipped " << s.file << ": " << s.reason << '\n';
          }
        }
        auto found = detect_renames(before, after, commit.commit, f.new_path);
        if (!found.empty()) with_renames.insert(commit.commit);
        records.insert(records.end(), found.begin(), found.end());
      }
    }
    if (!o.facts_out.empty()) {
      for (const auto& commit : with_renames) {
        const std::string& parent = parent_of[commit];
        if (parent.empty()) continue;
        auto facts = extract_facts(snapshot_sources(o.repo, parent));
        write_file_atomic((fs::path(o.facts_out) / (commit + ".json")).string(), facts_to_json(facts).dump() + "\n");
      }
    }
  }
  std::ostringstream out;
  write_rename_records(out, records);
  write_file_atomic(o.out, out.str());
  return 0;
}

// ---- group -------------------------------------------------------------------------

int cmd_group(const Options& o) {
  if (o.renames.size() != 1) throw Usage("group needs exactly one --renames file");
  const Mode mode = parse_mode(o.mode.empty() ? "lemma" : o.mode);
  auto records = load_rename_records_file(o.renames.front());
  compute_chunks(records, mode, lemma_table(o));
  std::ostringstream out;
  write_rename_sets(out, build_rename_sets(records, mode));
  write_file_atomic(o.out, out.str());
  return 0;
}

// ---- facts -------------------------------------------------------------------------

int cmd_facts(const Options& o, std::ostream& err) {
  auto facts = extract_facts(read_source_dir(o.src));
  for (const auto& s : facts.skipped) err << "corename: warning: skipped " << s.file << ": " << s.reason << '\n';
  write_file_atomic(o.out, facts_to_json(facts).dump() + "\n");
  return 0;
}

CodeFacts load_facts_path(const fs::path& path) {
  if (fs::is_directory(path)) return extract_facts(read_source_dir(path.string()));
  try {
    return facts_from_json(json::parse(read_file(path.string())));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, "facts '" + path.string() + "': " + e.what());
  }
}

// ---- analyze -----------------------------------------------------------------------

// Facts for the commits of one repository, loaded up front so lookups are
// read-only during the parallel counting.
class FactsStore {
 public:
  FactsStore(const std::string& dir, const std::vector<RenameRecord>& records, bool touched) {
    if (dir.empty()) return;
    std::map<std::string, std::set<std::string>> files;
    for (const auto& r : records) files[r.commit].insert(r.file);
    for (const auto& [commit, touched_files] : files) {
      auto path = resolve(dir, commit);
      if (!path) continue;
      const CodeFacts& facts = load(*path);
      if (touched) {
        detectors_[commit] = std::make_shared<RelationshipDetector>(facts.restricted_to(touched_files));
      } else {
        auto& shared = by_path_[*path];
        if (!shared) shared = std::make_shared<RelationshipDetector>(facts);
        detectors_[commit] = shared;
      }
    }
  }

  FactsLookup lookup() const {
    return [this](const std::string& commit) -> const RelationshipDetector* {
      auto it = detectors_.find(commit);
      return it == detectors_.end() ? nullptr : it->second.get();
    };
  }

  bool empty() const { return detectors_.empty(); }

 private:
  static std::optional<std::string> resolve(const std::string& dir, const std::string& commit) {
    for (const auto& name : {commit + ".json", commit, std::string("default.json"), std::string("default")}) {
      fs::path p = fs::path(dir) / name;
      if (fs::exists(p)) return p.string();
    }
    return std::nullopt;
  }

  const CodeFacts& load(const std::string& path) {
    auto& slot = facts_[path];
    if (!slot) slot = std::make_unique<CodeFacts>(load_facts_path(path));
    return *slot;
  }

  std::map<std::string, std::unique_ptr<CodeFacts>> facts_;
  std::map<std::string, std::shared_ptr<RelationshipDetector>> by_path_;
  std::map<std::string, std::shared_ptr<RelationshipDetector>> detectors_;
};

int cmd_analyze(const Options& o, std::ostream& err) {
  if (o.renames.empty()) throw Usage("analyze needs at least one --renames file");
  if (!o.sets.empty() && o.renames.size() != 1) throw Usage("--sets needs exactly one --renames file");
  if (o.facts_dirs.size() > 1 && o.facts_dirs.size() != o.renames.size()) {
    throw Usage("give one --facts-dir, or one per --renames file");
  }
  if (o.scope != "snapshot" && o.scope != "touched") throw Usage("--scope must be snapshot or touched");
  if (!o.mode.empty() && parse_mode(o.mode) != Mode::Raw && !o.sets.empty()) {
    throw Usage("--sets must hold raw-mode sets");
  }
  std::set<IdentifierKind> filters;
  for (const auto& f : o.filters) {
    try {
      filters.insert(identifier_kind_from_string(f));
    } catch (const Error&) {
      throw Usage("unknown --filter kind '" + f + "'");
    }
  }

  std::vector<RepoStats> repos;
  std::set<std::string> names;
  for (std::size_t i = 0; i < o.renames.size(); ++i) {
    auto records = load_rename_records_file(o.renames[i]);
    std::string name = fs::path(o.renames[i]).stem().string();
    if (!names.insert(name).second) name += "#" + std::to_string(i);
    names.insert(name);
    const std::string dir = o.facts_dirs.empty() ? "" : o.facts_dirs[o.facts_dirs.size() == 1 ? 0 : i];
    FactsStore store(dir, records, o.scope == "touched");
    if (store.empty()) err << "corename: warning: no facts for " << name << "; relationship rates are NoData\n";
    std::optional<RenameSetCollection> sets;
    if (!o.sets.empty()) {
      std::istringstream in(read_file(o.sets));
      sets = load_rename_sets(in, Mode::Raw, records.size());
    }
    RepoStats stats = analyze_repository(name, std::move(records), store.lookup(), sets, lemma_table(o));
    if (!filters.empty()) {
      std::erase_if(stats.filtered_rates, [&](const auto& kv) { return !filters.contains(kv.first); });
      std::erase_if(stats.difference_filtered, [&](const auto& kv) { return !filters.contains(kv.first); });
    }
    repos.push_back(std::move(stats));
  }
  emit_report(repos, o.out, o.plots);
  return 0;
}

// ---- recommend ---------------------------------------------------------------------

int cmd_recommend(const Options& o, std::ostream& out) {
  if (o.src.empty() == o.facts.empty()) throw Usage("recommend needs exactly one of --src or --facts");
  if (o.format != "text" && o.format != "json") throw Usage("--format must be text or json");
  RenameRecord trigger;
  try {
    trigger.kind = identifier_kind_from_string(o.kind);
  } catch (const Error&) {
    throw Usage("unknown --kind '" + o.kind + "'");
  }
  trigger.old_name = o.old_name;
  trigger.new_name = o.new_name;
  trigger.file = o.file;
  try {
    split_identifier(trigger.old_name);
    split_identifier(trigger.new_name);
  } catch (const Error& e) {
    throw Usage(e.what());
  }
  if (trigger.old_name == trigger.new_name) throw Usage("--old and --new are identical");
  const Mode mode = parse_mode(o.mode.empty() ? "lemma" : o.mode);
  const CodeFacts facts = load_facts_path(o.src.empty() ? o.facts : o.src);
  const PriorProfile profile =
      o.profile.empty() ? PriorProfile::bundled() : PriorProfile::from_json(json::parse(read_file(o.profile)));
  if (!profile.weights.contains(trigger.kind)) {
    throw Error(ErrorKind::NoData, "profile has no weights for " + std::string(to_string(trigger.kind)));
  }
  auto ranked = rank_candidates(generate_candidates(trigger, facts, mode, lemma_table(o)), profile, trigger.kind,
                                o.min_score);
  std::ostringstream text;
  if (o.format == "json") {
    json list = json::array();
    for (const auto& c : ranked) {
      json rels = json::array();
      for (auto k : c.relationships.kinds()) rels.push_back(to_string(k));
      list.push_back({{"name", c.name},
                      {"kind", to_string(c.kind)},
                      {"file", c.file},
                      {"container", c.container},
                      {"proposed", c.proposed_name},
                      {"relationships", std::move(rels)},
                      {"score", c.score}});
    }
    json doc = {{"trigger", {{"old", trigger.old_name}, {"new", trigger.new_name}, {"kind", to_string(trigger.kind)}}},
                {"candidates", std::move(list)}};
    text << doc.dump(2) << '\n';
  } else {
    for (const auto& c : ranked) {
      text << json(c.score).dump() << '\t' << to_string(c.kind) << '\t' << c.name << " -> " << c.proposed_name << '\t';
      bool first = true;
      for (auto k : c.relationships.kinds()) {
        text << (first ? "" : ",") << to_string(k);
        first = false;
      }
      if (first) text << '-';
      text << '\t' << c.file << '\t' << c.container << '\n';
    }
  }
  if (o.out.empty()) out << text.str();
  else write_file_atomic(o.out, text.str());
  return 0;
}

// ---- report ------------------------------------------------------------------------

int cmd_report(const Options& o) {
  json doc;
  try {
    doc = json::parse(read_file(o.in));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, "report '" + o.in + "': " + e.what());
  }
  emit_report(report_from_json(doc), o.out, o.plots);
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Mine co-renamed identifiers, analyze their relationships and recommend co-renames", "corename"};
  app.require_subcommand(1);
  app.add_option("--config", o.config, "JSON file whose keys override command-line options");
  app.add_option("--workers", o.workers, "Worker threads (default: CORENAME_WORKERS or all cores)")
      ->check(CLI::PositiveNumber);

  auto* mine = app.add_subcommand("mine", "Extract rename records");
  mine->add_option("--repo", o.repo, "Git repository to walk");
  mine->add_option("--records", o.records, "Rename records (JSONL) or RefactoringMiner JSON to ingest");
  mine->add_option("--range", o.range, "Revision range (default HEAD)");
  mine->add_option("--detector", o.detector, "Built-in detector (naive)");
  mine->add_option("--facts-out", o.facts_out, "Write parent-snapshot facts per renaming commit here");
  mine->add_option("--out", o.out, "Output renames.jsonl")->required();

  auto* group = app.add_subcommand("group", "Build meaningful rename sets");
  group->add_option("--renames", o.renames, "Rename records (JSONL)")->required();
  group->add_option("--mode", o.mode, "raw or lemma (default lemma)");
  group->add_option("--lemmas", o.lemmas, "Lemmatizer exception table");
  group->add_option("--out", o.out, "Output sets.jsonl")->required();

  auto* facts = app.add_subcommand("facts", "Extract code facts from sources");
  facts->add_option("--src", o.src, "Source directory")->required();
  facts->add_option("--out", o.out, "Output facts.json")->required();

  auto* analyze = app.add_subcommand("analyze", "Compute co-renaming statistics");
  analyze->add_option("--renames", o.renames, "Rename records per repository (repeatable)")->required();
  analyze->add_option("--sets", o.sets, "Raw-mode sets.jsonl replacing the built collection");
  analyze->add_option("--facts-dir", o.facts_dirs,
                      "Directory of <commit>.json, <commit>/, default.json or default/ facts (repeatable)");
  analyze->add_option("--scope", o.scope, "snapshot (whole facts) or touched (files of the commit's renames)");
  analyze->add_option("--filter", o.filters, "Identifier kinds reported in filtered rates (default all)");
  analyze->add_option("--mode", o.mode, "Mode of --sets (raw)");
  analyze->add_option("--lemmas", o.lemmas, "Lemmatizer exception table");
  analyze->add_flag("--plots", o.plots, "Also write SVG charts");
  analyze->add_option("--out", o.out, "Output directory")->required();

  auto* recommend = app.add_subcommand("recommend", "Rank co-rename candidates for a rename");
  recommend->add_option("--src", o.src, "Source directory of the current snapshot");
  recommend->add_option("--facts", o.facts, "Facts JSON instead of --src");
  recommend->add_option("--old", o.old_name, "Old identifier")->required();
  recommend->add_option("--new", o.new_name, "New identifier")->required();
  recommend->add_option("--kind", o.kind, "Class, Method, Attribute, Parameter or Variable")->required();
  recommend->add_option("--file", o.file, "File of the renamed identifier");
  recommend->add_option("--profile", o.profile, "Prior profile JSON (default: bundled)");
  recommend->add_option("--min-score", o.min_score, "Drop candidates scoring below this");
  recommend->add_option("--format", o.format, "text or json");
  recommend->add_option("--mode", o.mode, "raw or lemma (default lemma)");
  recommend->add_option("--lemmas", o.lemmas, "Lemmatizer exception table");
  recommend->add_option("--out", o.out, "Write here instead of standard output");

  auto* report = app.add_subcommand("report", "Re-emit tables and charts from report.json");
  report->add_option("--in", o.in, "report.json")->required();
  report->add_option("--out", o.out, "Output directory")->required();
  report->add_flag("--plots", o.plots, "Also write SVG charts");

  try {
    std::vector<std::string> args;
    for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
    app.parse(std::move(args));
    if (!o.config.empty()) apply_config(app, o.config);
    if (o.workers > 0) set_worker_count(o.workers);

    auto* sub = app.get_subcommands().front();
    if (sub == mine) return cmd_mine(o, err);
    if (sub == group) return cmd_group(o);
    if (sub == facts) return cmd_facts(o, err);
    if (sub == analyze) return cmd_analyze(o, err);
    if (sub == recommend) return cmd_recommend(o, out);
    if (sub == report) return cmd_report(o);
    return 1;
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "corename: usage error: " << e.what() << "\n\n" << app.help();
    return 1;
  } catch (const Error& e) {
    err << "corename: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return e.kind() == ErrorKind::Usage ? 1 : 2;
  } catch (const std::exception& e) {
    err << "corename: error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace corename
