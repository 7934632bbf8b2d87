#include "confrec/synthetic.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

#include <fmt/format.h>

#include "confrec/error.hpp"
#include "confrec/random.hpp"

namespace confrec {
namespace {

constexpr std::size_t kReferenceCohort = 77;
constexpr int kBinWidth = 5;
constexpr std::size_t kPastPinnedCount = 44;    // records at 5 minutes, past epoch
constexpr std::size_t kPresentPinnedCount = 27; // records at 80 minutes, present epoch

std::size_t total(const Histogram& h) {
  return std::accumulate(h.begin(), h.end(), std::size_t{0}, [](std::size_t s, const auto& kv) { return s + kv.second; });
}

// Largest-remainder apportionment of `target` over `weights`; ties go to the
// lower index.
template <std::size_t N>
std::array<std::size_t, N> apportion(const std::array<std::size_t, N>& weights, std::size_t target) {
  const std::size_t sum = std::accumulate(weights.begin(), weights.end(), std::size_t{0});
  std::array<std::size_t, N> out{};
  std::array<std::size_t, N> remainder{};
  std::size_t assigned = 0;
  for (std::size_t k = 0; k < N; ++k) {
    out[k] = weights[k] * target / sum;
    remainder[k] = weights[k] * target % sum;
    assigned += out[k];
  }
  std::array<std::size_t, N> order{};
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
  for (std::size_t k = 0; assigned < target; ++k, ++assigned) ++out[order[k % N]];
  return out;
}

// `records` records: `pinned` of them at `pinned_minutes`, the rest spread
// evenly over the other 5-minute bins up to `max_minutes`, lowest bins first.
Histogram default_durations(std::size_t records, std::size_t pinned, int pinned_minutes, int max_minutes) {
  Histogram h;
  std::vector<int> others;
  for (int m = kBinWidth; m <= max_minutes; m += kBinWidth) {
    if (m != pinned_minutes) others.push_back(m);
  }
  pinned = std::min(pinned, records);
  if (pinned > 0) h[pinned_minutes] = pinned;
  const std::size_t rest = records - pinned;
  for (std::size_t k = 0; k < others.size(); ++k) {
    const std::size_t count = rest / others.size() + (k < rest % others.size() ? 1 : 0);
    if (count > 0) h[others[k]] = count;
  }
  return h;
}

std::vector<int> expand(const Histogram& h) {
  std::vector<int> out;
  for (const auto& [value, count] : h) out.insert(out.end(), count, value);
  return out;
}

std::string participant_id(std::size_t i, std::size_t n) {
  const std::size_t width = std::max<std::size_t>(2, fmt::formatted_size("{}", n));
  return fmt::format("P{:0{}}", i + 1, width);
}

void check_histogram(const Histogram& h, std::string_view name, int lo, int hi) {
  for (const auto& [value, count] : h) {
    if (value < lo || value > hi) {
      throw Error(fmt::format("{} histogram value {} outside [{}, {}]", name, value, lo, hi));
    }
  }
}

}  // namespace

TraitCounts reference_trait_counts() {
  return {{
      {9, 13, 27, 16, 12},   // openness
      {8, 14, 17, 19, 19},   // extroversion
      {12, 18, 14, 18, 15},  // agreeableness
      {10, 12, 23, 19, 13},  // conscientiousness
      {13, 18, 16, 19, 11},  // neuroticism
  }};
}

SynthesisParams SynthesisParams::defaults(std::size_t n, std::uint64_t seed) {
  SynthesisParams p;
  p.n_participants = n;
  p.seed = seed;
  const TraitCounts reference = reference_trait_counts();
  for (std::size_t t = 0; t < kTraitCount; ++t) p.personality_counts[t] = apportion(reference[t], n);

  const std::size_t pairs = n < 2 ? 0 : n * (n - 1) / 2;
  const std::size_t records = std::min(n, pairs);
  auto scaled = [&](std::size_t pinned) {
    return static_cast<std::size_t>((pinned * records * 2 + kReferenceCohort) / (2 * kReferenceCohort));
  };
  p.past_durations = default_durations(records, scaled(kPastPinnedCount), kBinWidth, p.max_duration_minutes);
  p.present_durations =
      default_durations(records, scaled(kPresentPinnedCount), p.max_duration_minutes, p.max_duration_minutes);
  return p;
}

Dataset generate_synthetic(const SynthesisParams& p) {
  const std::size_t n = p.n_participants;
  if (n == 0) throw Error("synthetic dataset needs at least one participant");
  if (p.max_frequency < 1) throw Error("max_frequency must be at least 1");
  if (!(p.total_time_minutes > 0.0)) throw Error("total time must be positive");
  for (std::size_t t = 0; t < kTraitCount; ++t) {
    const auto& row = p.personality_counts[t];
    const std::size_t sum = std::accumulate(row.begin(), row.end(), std::size_t{0});
    if (sum != n) {
      throw Error(fmt::format("{} rating counts sum to {}, expected {}", trait_name(kAllTraits[t]), sum, n));
    }
  }
  const std::size_t pairs = n < 2 ? 0 : n * (n - 1) / 2;
  struct EpochSpec {
    Epoch epoch;
    const Histogram* durations;
    const Histogram* frequencies;
  };
  const std::array<EpochSpec, 2> epochs{{{Epoch::past, &p.past_durations, &p.past_frequencies},
                                         {Epoch::present, &p.present_durations, &p.present_frequencies}}};
  for (const auto& e : epochs) {
    const std::string name = fmt::format("{} duration", to_string(e.epoch));
    check_histogram(*e.durations, name, 1, p.max_duration_minutes);
    check_histogram(*e.frequencies, fmt::format("{} frequency", to_string(e.epoch)), 1, p.max_frequency);
    const std::size_t records = total(*e.durations);
    if (records > n) throw Error(fmt::format("{} histogram total {} exceeds {} participants", name, records, n));
    if (records > pairs) throw Error(fmt::format("{} histogram total {} exceeds {} pairs", name, records, pairs));
    if (!e.frequencies->empty() && total(*e.frequencies) != records) {
      throw Error(fmt::format("{} frequency histogram total {} does not match {} duration records",
                              to_string(e.epoch), total(*e.frequencies), records));
    }
  }

  Rng rng(p.seed);
  Dataset d;
  d.config.total_time_minutes = p.total_time_minutes;
  for (std::size_t i = 0; i < n; ++i) d.participants.push_back(participant_id(i, n));

  std::vector<PersonalityVector> profiles(n);
  for (std::size_t t = 0; t < kTraitCount; ++t) {
    std::vector<int> ratings;
    for (int r = kRatingMin; r <= kRatingMax; ++r) {
      ratings.insert(ratings.end(), p.personality_counts[t][static_cast<std::size_t>(r - kRatingMin)], r);
    }
    shuffle(std::span(ratings), rng);
    for (std::size_t i = 0; i < n; ++i) profiles[i].ratings[t] = ratings[i];
  }
  for (std::size_t i = 0; i < n; ++i) d.profiles.emplace(d.participants[i], profiles[i]);

  const ParticipantIndex index(d.participants);
  for (const auto& e : epochs) {
    std::vector<int> durations = expand(*e.durations);
    shuffle(std::span(durations), rng);
    std::vector<int> frequencies = expand(*e.frequencies);
    if (frequencies.empty()) {
      for (std::size_t k = 0; k < durations.size(); ++k) {
        frequencies.push_back(1 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(p.max_frequency))));
      }
    } else {
      shuffle(std::span(frequencies), rng);
    }
    // Partial Fisher-Yates: the first `records` slots are a uniform sample.
    std::vector<std::size_t> slots(pairs);
    std::iota(slots.begin(), slots.end(), std::size_t{0});
    for (std::size_t k = 0; k < durations.size(); ++k) {
      std::swap(slots[k], slots[k + uniform_below(rng, pairs - k)]);
      auto [i, j] = index.pair_at(slots[k]);
      d.contacts.push_back({index.id(i), index.id(j), e.epoch, static_cast<double>(durations[k]), frequencies[k]});
    }
  }
  std::sort(d.contacts.begin(), d.contacts.end(), [](const ContactRecord& x, const ContactRecord& y) {
    return std::tie(x.a, x.b, x.epoch) < std::tie(y.a, y.b, y.epoch);
  });
  return d;
}

TraitCounts trait_counts(const Dataset& d) {
  TraitCounts out{};
  for (const auto& [id, p] : d.profiles) {
    for (std::size_t t = 0; t < kTraitCount; ++t) {
      const int r = p.ratings[t];
      if (r >= kRatingMin && r <= kRatingMax) ++out[t][static_cast<std::size_t>(r - kRatingMin)];
    }
  }
  return out;
}

Histogram duration_histogram(const Dataset& d, Epoch epoch) {
  Histogram h;
  for (const auto& c : d.contacts) {
    if (c.epoch == epoch) ++h[static_cast<int>(std::lround(c.duration_minutes))];
  }
  return h;
}

Histogram frequency_histogram(const Dataset& d, Epoch epoch) {
  Histogram h;
  for (const auto& c : d.contacts) {
    if (c.epoch == epoch) ++h[static_cast<int>(c.frequency)];
  }
  return h;
}

std::string marginal_summary(const Dataset& d) {
  std::string out = fmt::format("participants: {}\n", d.participants.size());
  out += fmt::format("{:<18}{:>5}{:>5}{:>5}{:>5}{:>5}\n", "trait", 1, 2, 3, 4, 5);
  const TraitCounts counts = trait_counts(d);
  for (std::size_t t = 0; t < kTraitCount; ++t) {
    out += fmt::format("{:<18}", trait_name(kAllTraits[t]));
    for (std::size_t r : counts[t]) out += fmt::format("{:>5}", r);
    out += '\n';
  }
  for (Epoch e : {Epoch::past, Epoch::present}) {
    const Histogram h = duration_histogram(d, e);
    out += fmt::format("{} durations ({} records):", to_string(e), total(h));
    for (const auto& [minutes, count] : h) out += fmt::format(" {}m:{}", minutes, count);
    out += '\n';
  }
  return out;
}

}  // namespace confrec
