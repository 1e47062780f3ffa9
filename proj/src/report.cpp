#include "corename/report.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <sstream>

#include "corename/error.hpp"
#include "corename/io.hpp"

namespace corename {

using nlohmann::json;

namespace {

const json kNoData = "NoData";

template <typename K>
json rate_map_json(const std::map<K, double>& rates) {
  json out = json::object();
  for (const auto& [k, v] : rates) out[std::string(to_string(k))] = v;
  return out;
}

template <typename K>
json maybe_rates_json(const Maybe<std::map<K, double>>& rates) {
  return rates ? rate_map_json(*rates) : kNoData;
}

json maybe_number(const Maybe<double>& v) { return v ? json(*v) : kNoData; }

json filtered_json(const std::map<IdentifierKind, Maybe<RelationshipRates>>& rates) {
  json out = json::object();
  for (const auto& [k, v] : rates) out[std::string(to_string(k))] = maybe_rates_json(v);
  return out;
}

json repo_json(const RepoStats& s) {
  json hist = json::array();
  for (const auto& row : s.size_histogram) {
    hist.push_back({{"n", row.n}, {"m", row.m}, {"members", row.members}, {"cumulative", row.cumulative}});
  }
  json chunks = json::object();
  for (const auto& [mode, rates] : s.chunk_type_rates) chunks[std::string(to_string(mode))] = maybe_rates_json(rates);
  return {{"repo", s.repo},
          {"records", s.records},
          {"co_rename_rate", maybe_number(s.co_rename_rate)},
          {"raw_sets", s.raw_sets},
          {"size_histogram", std::move(hist)},
          {"relationship_rates", maybe_rates_json(s.relationship_rates)},
          {"filtered_rates", filtered_json(s.filtered_rates)},
          {"chunk_type_rates", std::move(chunks)},
          {"inflection",
           {{"raw_rate", maybe_number(s.co_rename_rate)},
            {"lemma_rate", maybe_number(s.lemma_co_rename_rate)},
            {"raw_sets", s.raw_sets},
            {"lemma_sets", s.lemma_sets},
            {"difference_sets", s.difference_sets},
            {"difference_rates", maybe_rates_json(s.difference_rates)},
            {"difference_filtered", filtered_json(s.difference_filtered)}}}};
}

bool is_nodata(const json& j) { return j.is_string() && j.get<std::string>() == "NoData"; }

Maybe<double> number_from(const json& j) {
  if (is_nodata(j)) return std::nullopt;
  return j.get<double>();
}

ChunkKind chunk_kind_from_string(const std::string& text) {
  for (auto k : kAllChunkKinds) {
    if (to_string(k) == text) return k;
  }
  throw Error(ErrorKind::ParseError, "unknown chunk kind '" + text + "'");
}

Maybe<RelationshipRates> relationship_rates_from(const json& j) {
  if (is_nodata(j)) return std::nullopt;
  RelationshipRates rates;
  for (const auto& [k, v] : j.items()) rates[relationship_kind_from_string(k)] = v.get<double>();
  return rates;
}

std::map<IdentifierKind, Maybe<RelationshipRates>> filtered_from(const json& j) {
  std::map<IdentifierKind, Maybe<RelationshipRates>> out;
  for (const auto& [k, v] : j.items()) out[identifier_kind_from_string(k)] = relationship_rates_from(v);
  return out;
}

RepoStats repo_from(const json& j) {
  RepoStats s;
  s.repo = j.at("repo").get<std::string>();
  s.records = j.at("records").get<std::size_t>();
  s.co_rename_rate = number_from(j.at("co_rename_rate"));
  s.raw_sets = j.at("raw_sets").get<std::size_t>();
  for (const auto& row : j.at("size_histogram")) {
    s.size_histogram.push_back({row.at("n").get<std::size_t>(), row.at("m").get<std::size_t>(),
                                row.at("members").get<std::size_t>(), row.at("cumulative").get<double>()});
  }
  s.relationship_rates = relationship_rates_from(j.at("relationship_rates"));
  s.filtered_rates = filtered_from(j.at("filtered_rates"));
  for (const auto& [mode, rates] : j.at("chunk_type_rates").items()) {
    Maybe<ChunkRates> parsed;
    if (!is_nodata(rates)) {
      ChunkRates r;
      for (const auto& [k, v] : rates.items()) r[chunk_kind_from_string(k)] = v.get<double>();
      parsed = std::move(r);
    }
    s.chunk_type_rates[mode_from_string(mode)] = std::move(parsed);
  }
  const json& inf = j.at("inflection");
  s.lemma_co_rename_rate = number_from(inf.at("lemma_rate"));
  s.lemma_sets = inf.at("lemma_sets").get<std::size_t>();
  s.difference_sets = inf.at("difference_sets").get<std::size_t>();
  s.difference_rates = relationship_rates_from(inf.at("difference_rates"));
  s.difference_filtered = filtered_from(inf.at("difference_filtered"));
  return s;
}

struct Distribution {
  std::size_t n = 0;
  double mean = 0, median = 0, min = 0, max = 0;
};

Maybe<Distribution> distribution(std::vector<double> values) {
  if (values.empty()) return std::nullopt;
  std::sort(values.begin(), values.end());
  Distribution d;
  d.n = values.size();
  double sum = 0;
  for (double v : values) sum += v;
  d.mean = sum / static_cast<double>(values.size());
  const std::size_t mid = values.size() / 2;
  d.median = values.size() % 2 ? values[mid] : (values[mid - 1] + values[mid]) / 2;
  d.min = values.front();
  d.max = values.back();
  return d;
}

// metric name -> values over repositories with data, in a fixed metric order.
std::vector<std::pair<std::string, std::vector<double>>> summary_metrics(const std::vector<RepoStats>& repos) {
  std::vector<std::pair<std::string, std::vector<double>>> metrics;
  auto add = [&](const std::string& name, auto&& get) {
    std::vector<double> values;
    for (const auto& s : repos) {
      if (auto v = get(s)) values.push_back(*v);
    }
    metrics.emplace_back(name, std::move(values));
  };
  add("co_rename_rate.raw", [](const RepoStats& s) { return s.co_rename_rate; });
  add("co_rename_rate.lemma", [](const RepoStats& s) { return s.lemma_co_rename_rate; });
  auto rel = [&](const std::string& prefix, auto&& pick) {
    for (auto kind : kAllRelationshipKinds) {
      add(prefix + "." + std::string(to_string(kind)), [&](const RepoStats& s) -> Maybe<double> {
        const Maybe<RelationshipRates>& rates = pick(s);
        if (!rates) return std::nullopt;
        return rates->at(kind);
      });
    }
  };
  rel("relationship_rate.All", [](const RepoStats& s) -> const Maybe<RelationshipRates>& { return s.relationship_rates; });
  for (auto ik : kAllIdentifierKinds) {
    rel("relationship_rate." + std::string(to_string(ik)),
        [ik](const RepoStats& s) -> const Maybe<RelationshipRates>& { return s.filtered_rates.at(ik); });
  }
  rel("difference_rate.All", [](const RepoStats& s) -> const Maybe<RelationshipRates>& { return s.difference_rates; });
  for (auto ik : kAllIdentifierKinds) {
    rel("difference_rate." + std::string(to_string(ik)),
        [ik](const RepoStats& s) -> const Maybe<RelationshipRates>& { return s.difference_filtered.at(ik); });
  }
  for (auto mode : {Mode::Raw, Mode::Lemma}) {
    for (auto ck : kAllChunkKinds) {
      add("chunk_rate." + std::string(to_string(mode)) + "." + std::string(to_string(ck)),
          [&](const RepoStats& s) -> Maybe<double> {
            auto it = s.chunk_type_rates.find(mode);
            if (it == s.chunk_type_rates.end() || !it->second) return std::nullopt;
            return it->second->at(ck);
          });
    }
  }
  return metrics;
}

std::string num(double v) { return json(v).dump(); }

std::string maybe_num(const Maybe<double>& v) { return v ? num(*v) : "NoData"; }

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  return out + "\"";
}

// ---- SVG ----------------------------------------------------------------------------

std::string svg_header(int w, int h, const std::string& title) {
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
      << "\" font-family=\"sans-serif\" font-size=\"11\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << w / 2 << "\" y=\"18\" text-anchor=\"middle\" font-size=\"13\">" << title << "</text>\n";
  return out.str();
}

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(2);
  out << std::fixed << v;
  return out.str();
}

// Box plots of rate distributions, one box per label.
std::string box_plot_svg(const std::string& title, const std::vector<std::pair<std::string, std::vector<double>>>& series) {
  const int left = 50, top = 30, plot_h = 260, box_w = 36, gap = 14;
  const int width = left + static_cast<int>(series.size()) * (box_w + gap) + 20;
  const int height = top + plot_h + 90;
  auto y = [&](double v) { return top + plot_h - v * plot_h; };
  std::ostringstream out;
  out << svg_header(width, height, title);
  for (double t = 0; t <= 1.0001; t += 0.25) {
    out << "<line x1=\"" << left << "\" x2=\"" << width - 10 << "\" y1=\"" << fmt(y(t)) << "\" y2=\"" << fmt(y(t))
        << "\" stroke=\"#ddd\"/>\n"
        << "<text x=\"" << left - 6 << "\" y=\"" << fmt(y(t) + 4) << "\" text-anchor=\"end\">" << fmt(t) << "</text>\n";
  }
  for (std::size_t i = 0; i < series.size(); ++i) {
    const int x = left + gap / 2 + static_cast<int>(i) * (box_w + gap);
    const double cx = x + box_w / 2.0;
    auto values = series[i].second;
    if (!values.empty()) {
      std::sort(values.begin(), values.end());
      auto q = [&](double p) {
        double pos = p * static_cast<double>(values.size() - 1);
        auto lo = static_cast<std::size_t>(std::floor(pos));
        auto hi = static_cast<std::size_t>(std::ceil(pos));
        return values[lo] + (values[hi] - values[lo]) * (pos - static_cast<double>(lo));
      };
      double mean = 0;
      for (double v : values) mean += v;
      mean /= static_cast<double>(values.size());
      out << "<line x1=\"" << fmt(cx) << "\" x2=\"" << fmt(cx) << "\" y1=\"" << fmt(y(values.front()))
          << "\" y2=\"" << fmt(y(values.back())) << "\" stroke=\"black\"/>\n"
          << "<rect x=\"" << x << "\" y=\"" << fmt(y(q(0.75))) << "\" width=\"" << box_w << "\" height=\""
          << fmt(std::max(1.0, y(q(0.25)) - y(q(0.75)))) << "\" fill=\"#9cc3e6\" stroke=\"black\"/>\n"
          << "<line x1=\"" << x << "\" x2=\"" << x + box_w << "\" y1=\"" << fmt(y(q(0.5))) << "\" y2=\""
          << fmt(y(q(0.5))) << "\" stroke=\"black\" stroke-width=\"2\"/>\n"
          << "<circle cx=\"" << fmt(cx) << "\" cy=\"" << fmt(y(mean)) << "\" r=\"3\" fill=\"red\"/>\n";
    }
    out << "<text transform=\"translate(" << fmt(cx + 4) << "," << top + plot_h + 8
        << ") rotate(60)\">" << series[i].first << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

// Cumulative share of co-renaming members by set size, one step line per repository.
std::string cumulative_svg(const std::vector<RepoStats>& repos) {
  std::size_t max_n = 2;
  for (const auto& s : repos) {
    for (const auto& row : s.size_histogram) max_n = std::max(max_n, row.n);
  }
  const int left = 50, top = 30, plot_w = 420, plot_h = 260;
  auto x = [&](double n) { return left + (n - 2) / std::max<double>(1, static_cast<double>(max_n) - 2) * plot_w; };
  auto y = [&](double v) { return top + plot_h - v * plot_h; };
  std::ostringstream out;
  out << svg_header(left + plot_w + 30, top + plot_h + 50, "Cumulative share of co-renamings by set size");
  out << "<line x1=\"" << left << "\" x2=\"" << left + plot_w << "\" y1=\"" << top + plot_h << "\" y2=\""
      << top + plot_h << "\" stroke=\"black\"/>\n"
      << "<line x1=\"" << left << "\" x2=\"" << left << "\" y1=\"" << top << "\" y2=\"" << top + plot_h
      << "\" stroke=\"black\"/>\n"
      << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << top + plot_h + 35
      << "\" text-anchor=\"middle\">set size n (2.." << max_n << ")</text>\n";
  for (const auto& s : repos) {
    if (s.size_histogram.empty()) continue;
    out << "<polyline fill=\"none\" stroke=\"#1f77b4\" points=\"" << fmt(x(2)) << "," << fmt(y(0));
    for (const auto& row : s.size_histogram) {
      out << " " << fmt(x(static_cast<double>(row.n))) << "," << fmt(y(row.cumulative));
    }
    out << "\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace

json report_to_json(const std::vector<RepoStats>& repos) {
  json doc;
  json list = json::array();
  for (const auto& s : repos) list.push_back(repo_json(s));
  doc["repos"] = std::move(list);
  json summary = json::object();
  for (const auto& [name, values] : summary_metrics(repos)) {
    auto d = distribution(values);
    summary[name] = d ? json{{"n", d->n}, {"mean", d->mean}, {"median", d->median}, {"min", d->min}, {"max", d->max}}
                      : kNoData;
  }
  doc["summary"] = std::move(summary);
  return doc;
}

std::vector<RepoStats> report_from_json(const json& doc) {
  try {
    std::vector<RepoStats> repos;
    for (const auto& r : doc.at("repos")) repos.push_back(repo_from(r));
    return repos;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("malformed report: ") + e.what());
  }
}

void emit_report(const std::vector<RepoStats>& repos, const std::string& out_dir, bool plots) {
  namespace fs = std::filesystem;
  auto path = [&](const char* name) { return (fs::path(out_dir) / name).string(); };
  write_file_atomic(path("report.json"), report_to_json(repos).dump(2) + "\n");

  std::ostringstream co;
  co << "repo,records,raw_sets,raw_rate,lemma_sets,lemma_rate,difference_sets\n";
  for (const auto& s : repos) {
    co << csv_field(s.repo) << ',' << s.records << ',' << s.raw_sets << ',' << maybe_num(s.co_rename_rate) << ','
       << s.lemma_sets << ',' << maybe_num(s.lemma_co_rename_rate) << ',' << s.difference_sets << '\n';
  }
  write_file_atomic(path("co_rename.csv"), co.str());

  std::ostringstream sizes;
  sizes << "repo,n,m,members,cumulative_rate\n";
  for (const auto& s : repos) {
    for (const auto& row : s.size_histogram) {
      sizes << csv_field(s.repo) << ',' << row.n << ',' << row.m << ',' << row.members << ',' << num(row.cumulative)
            << '\n';
    }
  }
  write_file_atomic(path("size_distribution.csv"), sizes.str());

  std::ostringstream rel;
  rel << "repo,scope,filter,relationship,rate\n";
  auto rel_rows = [&](const RepoStats& s, const char* scope, const std::string& filter,
                      const Maybe<RelationshipRates>& rates) {
    for (auto kind : kAllRelationshipKinds) {
      rel << csv_field(s.repo) << ',' << scope << ',' << filter << ',' << to_string(kind) << ','
          << (rates ? num(rates->at(kind)) : "NoData") << '\n';
    }
  };
  for (const auto& s : repos) {
    rel_rows(s, "all", "All", s.relationship_rates);
    for (const auto& [k, rates] : s.filtered_rates) rel_rows(s, "all", std::string(to_string(k)), rates);
    rel_rows(s, "difference", "All", s.difference_rates);
    for (const auto& [k, rates] : s.difference_filtered) rel_rows(s, "difference", std::string(to_string(k)), rates);
  }
  write_file_atomic(path("relationship_rates.csv"), rel.str());

  std::ostringstream chunks;
  chunks << "repo,mode,chunk,rate\n";
  for (const auto& s : repos) {
    for (const auto& [mode, rates] : s.chunk_type_rates) {
      for (auto kind : kAllChunkKinds) {
        chunks << csv_field(s.repo) << ',' << to_string(mode) << ',' << to_string(kind) << ','
               << (rates ? num(rates->at(kind)) : "NoData") << '\n';
      }
    }
  }
  write_file_atomic(path("chunk_types.csv"), chunks.str());

  std::ostringstream summary;
  summary << "metric,n,mean,median,min,max\n";
  const auto metrics = summary_metrics(repos);
  for (const auto& [name, values] : metrics) {
    auto d = distribution(values);
    summary << name << ',';
    if (d) summary << d->n << ',' << num(d->mean) << ',' << num(d->median) << ',' << num(d->min) << ',' << num(d->max);
    else summary << "0,NoData,NoData,NoData,NoData";
    summary << '\n';
  }
  write_file_atomic(path("summary.csv"), summary.str());

  if (!plots) return;
  auto pick = [&](const std::string& prefix) {
    std::vector<std::pair<std::string, std::vector<double>>> series;
    for (const auto& [name, values] : metrics) {
      if (name.rfind(prefix, 0) == 0) series.emplace_back(name.substr(prefix.size()), values);
    }
    return series;
  };
  write_file_atomic(path("size_distribution.svg"), cumulative_svg(repos));
  write_file_atomic(path("relationship_rates.svg"),
                    box_plot_svg("Rate of relationships", pick("relationship_rate.All.")));
  for (auto ik : kAllIdentifierKinds) {
    const std::string kind(to_string(ik));
    write_file_atomic(path(("relationship_rates_" + kind + ".svg").c_str()),
                      box_plot_svg("Rate of relationships (" + kind + ")", pick("relationship_rate." + kind + ".")));
  }
  auto co_series = pick("co_rename_rate.");
  write_file_atomic(path("co_rename.svg"), box_plot_svg("Rate of co-renamings", co_series));
  auto chunk_series = pick("chunk_rate.");
  write_file_atomic(path("chunk_types.svg"), box_plot_svg("Rate of operational chunks", chunk_series));
  write_file_atomic(path("difference_rates.svg"),
                    box_plot_svg("Rate of relationships in sets created by ignoring inflection",
                                 pick("difference_rate.All.")));
}

}  // namespace corename
