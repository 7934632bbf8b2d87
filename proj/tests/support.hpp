#pragma once

// Fixtures and test-only oracles. The oracles recompute quantities straight
// from their definitions and share no code with the library's kernels.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <unistd.h>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "confrec/hybrid.hpp"
#include "confrec/model.hpp"

namespace confrec::testing {

inline PersonalityVector pv(int o, int e, int a, int c, int n) { return PersonalityVector{{o, e, a, c, n}}; }

inline Dataset make_dataset(std::vector<std::pair<ParticipantId, PersonalityVector>> people,
                            std::vector<ContactRecord> contacts = {}) {
  Dataset d;
  for (auto& [id, p] : people) {
    d.participants.push_back(id);
    d.profiles[id] = p;
  }
  d.contacts = std::move(contacts);
  return d;
}

inline PersonalityVector random_profile(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> rating(1, 5);
  PersonalityVector p;
  for (auto& r : p.ratings) r = rating(rng);
  return p;
}

/// Participants "U00".."U<n-1>" with random profiles and random contacts in
/// both epochs on roughly `density` of the pairs.
inline Dataset random_dataset(std::size_t n, std::uint64_t seed, double density = 0.3) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> freq(1, 7);
  std::uniform_int_distribution<int> minutes(1, 16);
  std::vector<std::pair<ParticipantId, PersonalityVector>> people;
  for (std::size_t i = 0; i < n; ++i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "U%02zu", i);
    people.emplace_back(buf, random_profile(rng));
  }
  std::vector<ContactRecord> contacts;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (Epoch e : {Epoch::past, Epoch::present}) {
        if (unit(rng) < density) {
          contacts.push_back({people[i].first, people[j].first, e, 5.0 * minutes(rng), freq(rng)});
        }
      }
    }
  }
  return make_dataset(std::move(people), std::move(contacts));
}

/// Pearson correlation from its definition, in long double.
inline double oracle_pearson(const PersonalityVector& a, const PersonalityVector& b) {
  long double ma = 0, mb = 0;
  for (std::size_t k = 0; k < kTraitCount; ++k) {
    ma += a.ratings[k];
    mb += b.ratings[k];
  }
  ma /= kTraitCount;
  mb /= kTraitCount;
  long double num = 0, da = 0, db = 0;
  for (std::size_t k = 0; k < kTraitCount; ++k) {
    num += (a.ratings[k] - ma) * (b.ratings[k] - mb);
    da += (a.ratings[k] - ma) * (a.ratings[k] - ma);
    db += (b.ratings[k] - mb) * (b.ratings[k] - mb);
  }
  if (da == 0 || db == 0) return 0.0;
  return static_cast<double>(num / (std::sqrt(da) * std::sqrt(db)));
}

/// Threshold/top-n enumeration: every ordered pair checked independently,
/// then a full sort by (for asc, score desc, partner asc).
inline std::vector<std::tuple<std::string, std::string, double>> oracle_recommend(
    const std::vector<std::string>& ids, const std::function<double(std::size_t, std::size_t)>& score, double gamma,
    std::optional<std::size_t> top_n) {
  std::vector<std::tuple<std::string, std::string, double>> all;
  for (std::size_t a = 0; a < ids.size(); ++a) {
    for (std::size_t b = 0; b < ids.size(); ++b) {
      if (a != b && score(a, b) >= gamma) all.emplace_back(ids[a], ids[b], score(a, b));
    }
  }
  std::sort(all.begin(), all.end(), [](const auto& x, const auto& y) {
    if (std::get<0>(x) != std::get<0>(y)) return std::get<0>(x) < std::get<0>(y);
    if (std::get<2>(x) != std::get<2>(y)) return std::get<2>(x) > std::get<2>(y);
    return std::get<1>(x) < std::get<1>(y);
  });
  if (!top_n) return all;
  std::vector<std::tuple<std::string, std::string, double>> kept;
  std::size_t run = 0;
  for (std::size_t k = 0; k < all.size(); ++k) {
    run = (k > 0 && std::get<0>(all[k]) == std::get<0>(all[k - 1])) ? run + 1 : 0;
    if (run < *top_n) kept.push_back(all[k]);
  }
  return kept;
}

inline std::vector<std::tuple<std::string, std::string, double>> as_tuples(const std::vector<Recommendation>& recs) {
  std::vector<std::tuple<std::string, std::string, double>> out;
  for (const auto& r : recs) out.emplace_back(r.for_participant, r.suggested, r.merged_score);
  return out;
}

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("confrec_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline void write_file(const std::filesystem::path& p, const std::string& body) {
  std::ofstream out(p, std::ios::binary);
  out << body;
}

}  // namespace confrec::testing
