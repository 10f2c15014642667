#pragma once

// Roll-call vote records: loading, validation and slicing.

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace votenet {

enum class VoteValue : unsigned char {
    For,
    Against,
    Abstain,
    Absent,
    DidNotVote,
    DocumentedAbsence,
};

inline constexpr VoteValue kAllVoteValues[] = {
    VoteValue::For,    VoteValue::Against,    VoteValue::Abstain,
    VoteValue::Absent, VoteValue::DidNotVote, VoteValue::DocumentedAbsence,
};

// True for the three non-voting variants.
constexpr bool is_absence(VoteValue v) {
    return v == VoteValue::Absent || v == VoteValue::DidNotVote ||
           v == VoteValue::DocumentedAbsence;
}

// Canonical file token (FOR, AGAINST, ...).
std::string_view to_token(VoteValue v);
// Case-insensitive; std::nullopt for unknown tokens.
std::optional<VoteValue> parse_vote_token(std::string_view token);

using Date = std::chrono::year_month_day;

// Parses a strict YYYY-MM-DD calendar date.
std::optional<Date> parse_date(std::string_view text);
std::string format_date(Date d);

struct DocumentRecord {
    std::string doc_id;
    std::string policy;
    Date date;

    bool operator==(const DocumentRecord&) const = default;
};

struct MemberRecord {
    std::string mep_id;
    std::string name;
    std::string country;
    std::string group;

    bool operator==(const MemberRecord&) const = default;
};

class VoteDataset {
public:
    VoteDataset() = default;
    // Every cell starts as Absent. Throws InputError on duplicate ids.
    VoteDataset(std::vector<DocumentRecord> documents, std::vector<MemberRecord> members);

    const std::vector<DocumentRecord>& documents() const { return documents_; }
    const std::vector<MemberRecord>& members() const { return members_; }
    std::size_t member_count() const { return members_.size(); }
    std::size_t document_count() const { return documents_.size(); }

    VoteValue vote(std::size_t member, std::size_t document) const {
        return votes_[member * documents_.size() + document];
    }
    void set_vote(std::size_t member, std::size_t document, VoteValue v) {
        votes_[member * documents_.size() + document] = v;
    }

    std::optional<std::size_t> member_index(std::string_view mep_id) const;
    std::optional<std::size_t> document_index(std::string_view doc_id) const;

    // Distinct policy labels in first-appearance order.
    std::vector<std::string> policies() const;

    bool operator==(const VoteDataset&) const = default;

private:
    std::vector<DocumentRecord> documents_;
    std::vector<MemberRecord> members_;
    std::vector<VoteValue> votes_;  // row-major, members x documents
};

// Inclusive on both ends; either bound may be open.
struct DatePeriod {
    std::optional<Date> from;
    std::optional<Date> to;
};

VoteDataset load_dataset(const std::filesystem::path& documents_path,
                         const std::filesystem::path& members_path,
                         const std::filesystem::path& votes_path);

// Writes every cell, including absences, so loading the result reproduces `ds`.
void save_dataset(const VoteDataset& ds, const std::filesystem::path& documents_path,
                  const std::filesystem::path& members_path,
                  const std::filesystem::path& votes_path);

// Keeps documents matching both predicates, preserving order. Members are
// untouched. Throws InputError for an unknown policy or a reversed period and
// InsufficientDocuments when fewer than two documents survive.
VoteDataset filter_dataset(const VoteDataset& ds, const std::optional<std::string>& policy,
                           const std::optional<DatePeriod>& period);

}  // namespace votenet
