#pragma once

// File formats.
//
//   contacts.csv  participant_a,participant_b,epoch,duration_minutes,frequency
//   profiles.csv  participant_id,openness,extroversion,agreeableness,conscientiousness,neuroticism
//   report.csv    method,beta,bucket,accuracy,mae,nmae,counts   (counts = successful/total)
//   recommendations.csv  for,suggested,score,tie,personality,bucket
//
// UTF-8, comma separated, no quoting, header row required. A completely
// empty input is read as zero records.

#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "confrec/evaluation.hpp"
#include "confrec/hybrid.hpp"
#include "confrec/model.hpp"

namespace confrec {

inline constexpr std::string_view kContactsHeader = "participant_a,participant_b,epoch,duration_minutes,frequency";
inline constexpr std::string_view kProfilesHeader =
    "participant_id,openness,extroversion,agreeableness,conscientiousness,neuroticism";
inline constexpr std::string_view kReportHeader = "method,beta,bucket,accuracy,mae,nmae,counts";
inline constexpr std::string_view kRecommendationsHeader = "for,suggested,score,tie,personality,bucket";

/// Throws ParseError naming the line for malformed rows, unknown epochs,
/// negative values, self pairs and duplicate (pair, epoch) records.
std::vector<ContactRecord> load_contacts(std::istream& in);

/// Throws ParseError for ratings outside [1, 5] and duplicate ids.
std::map<ParticipantId, PersonalityVector> load_personality(std::istream& in);

void write_contacts(std::ostream& out, std::span<const ContactRecord> contacts);
void write_profiles(std::ostream& out, const std::map<ParticipantId, PersonalityVector>& profiles);

/// Participants are the profile ids. Contacts naming anyone else are kept
/// so validate_dataset can report them.
Dataset load_dataset(const std::filesystem::path& contacts, const std::filesystem::path& profiles,
                     const ConferenceConfig& config = {});

enum class ReportFormat { csv, json };

std::optional<ReportFormat> parse_report_format(std::string_view token);

void export_report(const MetricsReport& report, ReportFormat format, std::ostream& out);
std::string export_report(const MetricsReport& report, ReportFormat format);

/// Inverse of export_report. CSV carries rows only; criteria and split keep
/// their defaults.
MetricsReport read_report(std::istream& in, ReportFormat format);

void write_recommendations(std::ostream& out, std::span<const Recommendation> recs);

/// Per-bucket accuracy and MAE with one column pair per method, one line per
/// (beta, bucket): the series behind accuracy/MAE-vs-coefficient plots.
void write_series(std::ostream& out, const MetricsReport& report);

}  // namespace confrec
