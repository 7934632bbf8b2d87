#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace confrec {

using ParticipantId = std::string;

inline constexpr std::size_t kTraitCount = 5;
inline constexpr int kRatingMin = 1;
inline constexpr int kRatingMax = 5;

enum class Trait : std::size_t {
  openness,
  extroversion,
  agreeableness,
  conscientiousness,
  neuroticism,
};

std::string_view trait_name(Trait t);
inline constexpr std::array<Trait, kTraitCount> kAllTraits = {
    Trait::openness, Trait::extroversion, Trait::agreeableness,
    Trait::conscientiousness, Trait::neuroticism};

/// Big-Five ratings of one participant, each in [1, 5].
struct PersonalityVector {
  std::array<int, kTraitCount> ratings{};

  int operator[](Trait t) const { return ratings[static_cast<std::size_t>(t)]; }
  bool valid() const;
  friend bool operator==(const PersonalityVector&, const PersonalityVector&) = default;
};

enum class Epoch { past, present };

std::string_view to_string(Epoch e);
std::optional<Epoch> parse_epoch(std::string_view token);

/// One unordered pair's contact totals within one epoch.
struct ContactRecord {
  ParticipantId a;
  ParticipantId b;
  Epoch epoch = Epoch::present;
  double duration_minutes = 0.0;
  std::int64_t frequency = 0;

  friend bool operator==(const ContactRecord&, const ContactRecord&) = default;
};

enum class NormalizationMode { raw_sum, minmax };

std::string_view to_string(NormalizationMode m);
std::optional<NormalizationMode> parse_normalization_mode(std::string_view token);

/// What to do with a raw tie above 1.
enum class OverflowPolicy { strict, lenient };

struct ConferenceConfig {
  double total_time_minutes = 720.0;
  double beta = 0.1;
  double gamma = 0.8;
  NormalizationMode mode = NormalizationMode::minmax;
  std::optional<std::size_t> top_n;
  OverflowPolicy overflow = OverflowPolicy::strict;
};

struct Dataset {
  std::vector<ParticipantId> participants;
  std::map<ParticipantId, PersonalityVector> profiles;
  std::vector<ContactRecord> contacts;
  ConferenceConfig config;
};

/// One broken invariant. `subject` names the offending record, `rule` the
/// invariant it violates.
struct Violation {
  std::string subject;
  std::string rule;
  std::string detail;

  friend auto operator<=>(const Violation&, const Violation&) = default;
};

/// Checks every dataset invariant. The result is sorted, so it does not
/// depend on the order of records in the input.
std::vector<Violation> validate_dataset(const Dataset& d);

/// Throws Error listing the violations when the dataset is not valid.
void require_valid(const Dataset& d);

/// Participant ids in lexicographic order with O(log n) lookup. This is the
/// row/column order of every PairScoreMatrix.
class ParticipantIndex {
 public:
  ParticipantIndex() = default;
  explicit ParticipantIndex(std::vector<ParticipantId> ids);

  std::size_t size() const { return ids_.size(); }
  const ParticipantId& id(std::size_t i) const { return ids_[i]; }
  const std::vector<ParticipantId>& ids() const { return ids_; }
  std::optional<std::size_t> find(std::string_view id) const;
  std::size_t at(std::string_view id) const;

  std::size_t pair_count() const { return ids_.size() < 2 ? 0 : ids_.size() * (ids_.size() - 1) / 2; }

  /// Position of the unordered pair {i, j}, i != j, in lexicographic pair order.
  std::size_t pair_slot(std::size_t i, std::size_t j) const;
  std::pair<std::size_t, std::size_t> pair_at(std::size_t slot) const;

  friend bool operator==(const ParticipantIndex&, const ParticipantIndex&) = default;

 private:
  std::vector<ParticipantId> ids_;
};

ParticipantIndex make_index(const Dataset& d);

/// All unordered distinct pairs, lexicographic by id. Throws when fewer than
/// two participants exist.
std::vector<std::pair<ParticipantId, ParticipantId>> pair_index(const Dataset& d);

/// Symmetric participant x participant scores with no diagonal. Only the
/// strict upper triangle is stored, row-major, which is exactly pair_index
/// order; symmetry holds by construction.
class PairScoreMatrix {
 public:
  PairScoreMatrix() = default;
  explicit PairScoreMatrix(ParticipantIndex index, double fill = 0.0);

  const ParticipantIndex& index() const { return index_; }
  std::size_t size() const { return index_.size(); }

  double at(std::size_t i, std::size_t j) const { return values_[index_.pair_slot(i, j)]; }
  double at(std::string_view a, std::string_view b) const { return at(index_.at(a), index_.at(b)); }
  void set(std::size_t i, std::size_t j, double v) { values_[index_.pair_slot(i, j)] = v; }

  std::span<double> packed() { return values_; }
  std::span<const double> packed() const { return values_; }

  friend bool operator==(const PairScoreMatrix&, const PairScoreMatrix&) = default;

 private:
  ParticipantIndex index_;
  std::vector<double> values_;
};

/// Canonical key for an unordered pair: the two ids in ascending order.
std::pair<ParticipantId, ParticipantId> canonical_pair(const ParticipantId& a, const ParticipantId& b);

}  // namespace confrec
