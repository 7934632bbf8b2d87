#include "confrec/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ostream.h>
#include <fmt/ranges.h>
#include "json.hpp"

#include "confrec/error.hpp"

namespace confrec {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

// A CSV body: header check, then one callback per non-blank data line.
// `record` counts data lines from 1.
template <typename F>
void read_csv(std::istream& in, std::string_view header, std::size_t field_count, F on_row) {
  std::string raw;
  std::size_t line = 0;
  std::size_t record = 0;
  bool saw_header = false;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view text = trim(raw);
    if (line == 1 && text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
    if (text.empty()) continue;
    if (!saw_header) {
      if (text != header) throw ParseError(line, fmt::format("line {}: expected header '{}'", line, header));
      saw_header = true;
      continue;
    }
    ++record;
    auto fields = split_fields(text);
    if (fields.size() != field_count) {
      throw ParseError(line, fmt::format("line {} (record {}): expected {} fields, got {}", line, record, field_count,
                                         fields.size()));
    }
    on_row(line, record, fields);
  }
}

template <typename T>
bool parse_number(std::string_view s, T& out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

std::string where(std::size_t line, std::size_t record) { return fmt::format("line {} (record {})", line, record); }

}  // namespace

std::vector<ContactRecord> load_contacts(std::istream& in) {
  std::vector<ContactRecord> out;
  std::set<std::tuple<std::string, std::string, Epoch>> seen;
  read_csv(in, kContactsHeader, 5, [&](std::size_t line, std::size_t record, const auto& f) {
    ContactRecord c;
    c.a = std::string(f[0]);
    c.b = std::string(f[1]);
    if (c.a.empty() || c.b.empty()) throw ParseError(line, fmt::format("{}: empty participant id", where(line, record)));
    if (c.a == c.b) throw ParseError(line, fmt::format("{}: participant '{}' paired with itself", where(line, record), c.a));
    auto epoch = parse_epoch(f[2]);
    if (!epoch) throw ParseError(line, fmt::format("{}: unknown epoch '{}'", where(line, record), f[2]));
    c.epoch = *epoch;
    if (!parse_number(f[3], c.duration_minutes) || !std::isfinite(c.duration_minutes)) {
      throw ParseError(line, fmt::format("{}: bad duration '{}'", where(line, record), f[3]));
    }
    if (!parse_number(f[4], c.frequency)) {
      throw ParseError(line, fmt::format("{}: bad frequency '{}'", where(line, record), f[4]));
    }
    if (c.duration_minutes < 0.0 || c.frequency < 0) {
      throw ParseError(line, fmt::format("{}: negative value", where(line, record)));
    }
    if (c.frequency == 0 && c.duration_minutes > 0.0) {
      throw ParseError(line, fmt::format("{}: positive duration with zero frequency", where(line, record)));
    }
    auto [lo, hi] = canonical_pair(c.a, c.b);
    if (!seen.emplace(lo, hi, c.epoch).second) {
      throw ParseError(line, fmt::format("{}: duplicate contact record for {}-{} ({})", where(line, record), lo, hi,
                                         to_string(c.epoch)));
    }
    out.push_back(std::move(c));
  });
  return out;
}

std::map<ParticipantId, PersonalityVector> load_personality(std::istream& in) {
  std::map<ParticipantId, PersonalityVector> out;
  read_csv(in, kProfilesHeader, 1 + kTraitCount, [&](std::size_t line, std::size_t record, const auto& f) {
    std::string id(f[0]);
    if (id.empty()) throw ParseError(line, fmt::format("{}: empty participant id", where(line, record)));
    PersonalityVector p;
    for (std::size_t k = 0; k < kTraitCount; ++k) {
      if (!parse_number(f[k + 1], p.ratings[k])) {
        throw ParseError(line, fmt::format("{}: bad rating '{}'", where(line, record), f[k + 1]));
      }
      if (p.ratings[k] < kRatingMin || p.ratings[k] > kRatingMax) {
        throw ParseError(line, fmt::format("{}: rating out of range ({} = {})", where(line, record),
                                           trait_name(kAllTraits[k]), p.ratings[k]));
      }
    }
    if (!out.emplace(id, p).second) {
      throw ParseError(line, fmt::format("{}: duplicate participant '{}'", where(line, record), id));
    }
  });
  return out;
}

void write_contacts(std::ostream& out, std::span<const ContactRecord> contacts) {
  out << kContactsHeader << '\n';
  for (const auto& c : contacts) {
    fmt::print(out, "{},{},{},{},{}\n", c.a, c.b, to_string(c.epoch), c.duration_minutes, c.frequency);
  }
}

void write_profiles(std::ostream& out, const std::map<ParticipantId, PersonalityVector>& profiles) {
  out << kProfilesHeader << '\n';
  for (const auto& [id, p] : profiles) {
    fmt::print(out, "{},{}\n", id, fmt::join(p.ratings, ","));
  }
}

Dataset load_dataset(const std::filesystem::path& contacts, const std::filesystem::path& profiles,
                     const ConferenceConfig& config) {
  auto open = [](const std::filesystem::path& p) {
    std::ifstream in(p);
    if (!in) throw Error(fmt::format("cannot open '{}'", p.string()));
    return in;
  };
  Dataset d;
  d.config = config;
  {
    auto in = open(profiles);
    try {
      d.profiles = load_personality(in);
    } catch (const ParseError& e) {
      throw ParseError(e.line(), fmt::format("{}: {}", profiles.string(), e.what()));
    }
  }
  {
    auto in = open(contacts);
    try {
      d.contacts = load_contacts(in);
    } catch (const ParseError& e) {
      throw ParseError(e.line(), fmt::format("{}: {}", contacts.string(), e.what()));
    }
  }
  for (const auto& [id, p] : d.profiles) d.participants.push_back(id);
  return d;
}

std::optional<ReportFormat> parse_report_format(std::string_view token) {
  if (token == "csv") return ReportFormat::csv;
  if (token == "json") return ReportFormat::json;
  return std::nullopt;
}

void export_report(const MetricsReport& report, ReportFormat format, std::ostream& out) {
  if (format == ReportFormat::csv) {
    out << kReportHeader << '\n';
    for (const auto& r : report.rows) {
      fmt::print(out, "{},{},{:.1f},{:.6f},{:.6f},{:.6f},{}/{}\n", to_string(r.method), r.beta, r.bucket_tenths / 10.0,
                 r.accuracy, r.mae, r.nmae, r.successful_count, r.recommendation_count);
    }
    return;
  }
  nlohmann::ordered_json j;
  j["criteria"] = {{"mode", to_string(report.criteria.mode)}, {"tau", report.criteria.tau}};
  j["split"] = {{"train_ratio", report.split.train_ratio}, {"seed", report.split.seed}};
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& r : report.rows) {
    j["rows"].push_back({{"method", to_string(r.method)},
                         {"beta", r.beta},
                         {"bucket", r.bucket_tenths / 10.0},
                         {"accuracy", r.accuracy},
                         {"mae", r.mae},
                         {"nmae", r.nmae},
                         {"recommendation_count", r.recommendation_count},
                         {"successful_count", r.successful_count}});
  }
  j["notes"] = report.notes;
  out << j.dump(2) << '\n';
}

std::string export_report(const MetricsReport& report, ReportFormat format) {
  std::ostringstream out;
  export_report(report, format, out);
  return out.str();
}

namespace {

Method method_or_throw(std::string_view token, std::size_t line) {
  auto m = parse_method(token);
  if (!m) throw ParseError(line, fmt::format("line {}: unknown method '{}'", line, token));
  return *m;
}

}  // namespace

MetricsReport read_report(std::istream& in, ReportFormat format) {
  MetricsReport report;
  if (format == ReportFormat::csv) {
    read_csv(in, kReportHeader, 7, [&](std::size_t line, std::size_t record, const auto& f) {
      MetricsRow r;
      r.method = method_or_throw(f[0], line);
      double bucket = 0.0;
      const auto slash = f[6].find('/');
      if (!parse_number(f[1], r.beta) || !parse_number(f[2], bucket) || !parse_number(f[3], r.accuracy) ||
          !parse_number(f[4], r.mae) || !parse_number(f[5], r.nmae) || slash == std::string_view::npos ||
          !parse_number(f[6].substr(0, slash), r.successful_count) ||
          !parse_number(f[6].substr(slash + 1), r.recommendation_count)) {
        throw ParseError(line, fmt::format("{}: malformed report row", where(line, record)));
      }
      r.bucket_tenths = static_cast<int>(std::lround(bucket * 10.0));
      report.rows.push_back(r);
    });
    return report;
  }
  nlohmann::json j;
  try {
    in >> j;
    report.criteria.mode = parse_relevance_mode(j.at("criteria").at("mode").get<std::string>()).value();
    report.criteria.tau = j.at("criteria").at("tau").get<double>();
    report.split.train_ratio = j.at("split").at("train_ratio").get<double>();
    report.split.seed = j.at("split").at("seed").get<std::uint64_t>();
    for (const auto& row : j.at("rows")) {
      MetricsRow r;
      r.method = method_or_throw(row.at("method").get<std::string>(), 0);
      r.beta = row.at("beta").get<double>();
      r.bucket_tenths = static_cast<int>(std::lround(row.at("bucket").get<double>() * 10.0));
      r.accuracy = row.at("accuracy").get<double>();
      r.mae = row.at("mae").get<double>();
      r.nmae = row.at("nmae").get<double>();
      r.recommendation_count = row.at("recommendation_count").get<std::size_t>();
      r.successful_count = row.at("successful_count").get<std::size_t>();
      report.rows.push_back(r);
    }
    report.notes = j.at("notes").get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, fmt::format("malformed JSON report: {}", e.what()));
  } catch (const std::bad_optional_access&) {
    throw ParseError(0, "malformed JSON report: unknown relevance mode");
  }
  return report;
}

void write_recommendations(std::ostream& out, std::span<const Recommendation> recs) {
  auto component = [](const std::optional<double>& v) { return v ? fmt::format("{:.6f}", *v) : std::string(); };
  out << kRecommendationsHeader << '\n';
  for (const auto& r : recs) {
    fmt::print(out, "{},{},{:.6f},{},{},{:.1f}\n", r.for_participant, r.suggested, r.merged_score,
               component(r.tie_component), component(r.personality_component), r.bucket());
  }
}

void write_series(std::ostream& out, const MetricsReport& report) {
  std::vector<Method> methods;
  std::map<std::pair<double, int>, std::map<Method, const MetricsRow*>> grid;
  for (const auto& r : report.rows) {
    if (std::find(methods.begin(), methods.end(), r.method) == methods.end()) methods.push_back(r.method);
    grid[{r.beta, r.bucket_tenths}][r.method] = &r;
  }
  out << "beta,bucket";
  for (Method m : methods) fmt::print(out, ",{}_accuracy", to_string(m));
  for (Method m : methods) fmt::print(out, ",{}_mae", to_string(m));
  out << '\n';
  for (const auto& [key, cells] : grid) {
    fmt::print(out, "{},{:.1f}", key.first, key.second / 10.0);
    for (int pass = 0; pass < 2; ++pass) {
      for (Method m : methods) {
        auto it = cells.find(m);
        if (it == cells.end()) {
          out << ',';
        } else {
          fmt::print(out, ",{:.6f}", pass == 0 ? it->second->accuracy : it->second->mae);
        }
      }
    }
    out << '\n';
  }
}

}  // namespace confrec
