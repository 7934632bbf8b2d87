#include "confrec/error.hpp"
#include "confrec/model.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include <fmt/format.h>

namespace confrec {

std::string_view trait_name(Trait t) {
  switch (t) {
    case Trait::openness: return "openness";
    case Trait::extroversion: return "extroversion";
    case Trait::agreeableness: return "agreeableness";
    case Trait::conscientiousness: return "conscientiousness";
    case Trait::neuroticism: return "neuroticism";
  }
  return "unknown";
}

bool PersonalityVector::valid() const {
  return std::all_of(ratings.begin(), ratings.end(),
                     [](int r) { return r >= kRatingMin && r <= kRatingMax; });
}

std::string_view to_string(Epoch e) { return e == Epoch::past ? "past" : "present"; }

std::optional<Epoch> parse_epoch(std::string_view token) {
  if (token == "past") return Epoch::past;
  if (token == "present") return Epoch::present;
  return std::nullopt;
}

std::string_view to_string(NormalizationMode m) {
  return m == NormalizationMode::raw_sum ? "raw_sum" : "minmax";
}

std::optional<NormalizationMode> parse_normalization_mode(std::string_view token) {
  if (token == "raw_sum") return NormalizationMode::raw_sum;
  if (token == "minmax") return NormalizationMode::minmax;
  return std::nullopt;
}

std::pair<ParticipantId, ParticipantId> canonical_pair(const ParticipantId& a, const ParticipantId& b) {
  return a < b ? std::pair{a, b} : std::pair{b, a};
}

std::vector<Violation> validate_dataset(const Dataset& d) {
  std::vector<Violation> out;
  auto add = [&out](std::string subject, std::string rule, std::string detail) {
    out.push_back({std::move(subject), std::move(rule), std::move(detail)});
  };

  std::set<ParticipantId> known;
  std::set<ParticipantId> reported_dupes;
  for (const auto& id : d.participants) {
    if (id.empty()) {
      add("participant ''", "non-empty id", "participant id is empty");
      continue;
    }
    if (!known.insert(id).second && reported_dupes.insert(id).second) {
      add(fmt::format("participant '{}'", id), "unique id", "participant listed more than once");
    }
  }

  for (const auto& id : known) {
    auto it = d.profiles.find(id);
    if (it == d.profiles.end()) {
      add(fmt::format("participant '{}'", id), "has profile", "no personality profile");
      continue;
    }
    for (Trait t : kAllTraits) {
      int r = it->second[t];
      if (r < kRatingMin || r > kRatingMax) {
        add(fmt::format("profile '{}'", id), fmt::format("{} rating in [1,5]", trait_name(t)),
            fmt::format("{} rating {} out of range", trait_name(t), r));
      }
    }
  }
  for (const auto& [id, profile] : d.profiles) {
    if (!known.contains(id)) {
      add(fmt::format("profile '{}'", id), "known participant", fmt::format("unknown participant '{}'", id));
    }
  }

  std::map<std::tuple<ParticipantId, ParticipantId, Epoch>, std::size_t> seen;
  for (const auto& c : d.contacts) {
    auto [lo, hi] = canonical_pair(c.a, c.b);
    std::string subject = fmt::format("contact {}-{} {}", lo, hi, to_string(c.epoch));
    if (c.a == c.b) add(subject, "distinct pair members", "participant paired with itself");
    for (const auto& id : {lo, hi}) {
      if (!known.contains(id)) add(subject, "known participant", fmt::format("unknown participant '{}'", id));
    }
    if (!(c.duration_minutes >= 0.0)) add(subject, "duration >= 0", fmt::format("duration {}", c.duration_minutes));
    if (c.frequency < 0) add(subject, "frequency >= 0", fmt::format("frequency {}", c.frequency));
    if (c.frequency == 0 && c.duration_minutes > 0.0) {
      add(subject, "zero frequency implies zero duration", fmt::format("duration {} with frequency 0", c.duration_minutes));
    }
    if (++seen[{lo, hi, c.epoch}] == 2) add(subject, "one record per pair and epoch", "duplicate contact record");
  }

  const auto& cfg = d.config;
  if (!(cfg.total_time_minutes > 0.0)) {
    add("config", "total time > 0", fmt::format("total_time_minutes {}", cfg.total_time_minutes));
  }
  if (!(cfg.beta >= 0.0 && cfg.beta <= 1.0)) add("config", "beta in [0,1]", fmt::format("beta {}", cfg.beta));
  if (cfg.top_n && *cfg.top_n == 0) add("config", "top_n positive", "top_n 0");

  std::sort(out.begin(), out.end());
  return out;
}

void require_valid(const Dataset& d) {
  auto violations = validate_dataset(d);
  if (violations.empty()) return;
  std::string msg = fmt::format("dataset has {} violation(s):", violations.size());
  for (const auto& v : violations) msg += fmt::format("\n  {}: {} ({})", v.subject, v.detail, v.rule);
  throw Error(msg);
}

ParticipantIndex::ParticipantIndex(std::vector<ParticipantId> ids) : ids_(std::move(ids)) {
  std::sort(ids_.begin(), ids_.end());
  ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
}

std::optional<std::size_t> ParticipantIndex::find(std::string_view id) const {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
  if (it == ids_.end() || *it != id) return std::nullopt;
  return static_cast<std::size_t>(it - ids_.begin());
}

std::size_t ParticipantIndex::at(std::string_view id) const {
  auto pos = find(id);
  if (!pos) throw Error(fmt::format("unknown participant '{}'", id));
  return *pos;
}

std::size_t ParticipantIndex::pair_slot(std::size_t i, std::size_t j) const {
  if (i > j) std::swap(i, j);
  const std::size_t n = ids_.size();
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

std::pair<std::size_t, std::size_t> ParticipantIndex::pair_at(std::size_t slot) const {
  const std::size_t n = ids_.size();
  std::size_t i = 0;
  while (slot >= n - i - 1) {
    slot -= n - i - 1;
    ++i;
  }
  return {i, i + 1 + slot};
}

ParticipantIndex make_index(const Dataset& d) { return ParticipantIndex(d.participants); }

std::vector<std::pair<ParticipantId, ParticipantId>> pair_index(const Dataset& d) {
  ParticipantIndex index = make_index(d);
  if (index.size() < 2) throw Error("insufficient participants");
  std::vector<std::pair<ParticipantId, ParticipantId>> pairs;
  pairs.reserve(index.pair_count());
  for (std::size_t i = 0; i < index.size(); ++i) {
    for (std::size_t j = i + 1; j < index.size(); ++j) pairs.emplace_back(index.id(i), index.id(j));
  }
  return pairs;
}

PairScoreMatrix::PairScoreMatrix(ParticipantIndex index, double fill)
    : index_(std::move(index)), values_(index_.pair_count(), fill) {}

}  // namespace confrec
