#include "votenet/vote_data.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <unordered_map>
#include <unordered_set>

#include "csv.hpp"
#include "votenet/error.hpp"

namespace votenet {

namespace {

constexpr std::string_view kTokens[] = {"FOR",    "AGAINST",      "ABSTAIN",
                                        "ABSENT", "DID_NOT_VOTE", "DOCUMENTED_ABSENCE"};

std::string upper(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return out;
}

}  // namespace

std::string_view to_token(VoteValue v) { return kTokens[static_cast<int>(v)]; }

std::optional<VoteValue> parse_vote_token(std::string_view token) {
    const std::string u = upper(token);
    for (std::size_t i = 0; i < std::size(kTokens); ++i)
        if (u == kTokens[i]) return static_cast<VoteValue>(i);
    return std::nullopt;
}

std::optional<Date> parse_date(std::string_view text) {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
    int y = 0;
    unsigned m = 0, d = 0;
    auto num = [&](std::size_t pos, std::size_t len, auto& out) {
        const char* b = text.data() + pos;
        auto [p, ec] = std::from_chars(b, b + len, out);
        return ec == std::errc() && p == b + len;
    };
    if (!num(0, 4, y) || !num(5, 2, m) || !num(8, 2, d)) return std::nullopt;
    const Date date{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
    if (!date.ok()) return std::nullopt;
    return date;
}

std::string format_date(Date d) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(d.year()),
                  static_cast<unsigned>(d.month()), static_cast<unsigned>(d.day()));
    return buf;
}

VoteDataset::VoteDataset(std::vector<DocumentRecord> documents, std::vector<MemberRecord> members)
    : documents_(std::move(documents)), members_(std::move(members)) {
    std::unordered_set<std::string> seen;
    for (const auto& d : documents_)
        if (!seen.insert(d.doc_id).second) throw InputError("duplicate doc_id '" + d.doc_id + "'");
    seen.clear();
    for (const auto& m : members_)
        if (!seen.insert(m.mep_id).second) throw InputError("duplicate mep_id '" + m.mep_id + "'");
    votes_.assign(members_.size() * documents_.size(), VoteValue::Absent);
}

std::optional<std::size_t> VoteDataset::member_index(std::string_view mep_id) const {
    for (std::size_t i = 0; i < members_.size(); ++i)
        if (members_[i].mep_id == mep_id) return i;
    return std::nullopt;
}

std::optional<std::size_t> VoteDataset::document_index(std::string_view doc_id) const {
    for (std::size_t i = 0; i < documents_.size(); ++i)
        if (documents_[i].doc_id == doc_id) return i;
    return std::nullopt;
}

std::vector<std::string> VoteDataset::policies() const {
    std::vector<std::string> out;
    for (const auto& d : documents_)
        if (std::find(out.begin(), out.end(), d.policy) == out.end()) out.push_back(d.policy);
    return out;
}

VoteDataset load_dataset(const std::filesystem::path& documents_path,
                         const std::filesystem::path& members_path,
                         const std::filesystem::path& votes_path) {
    const auto docs_csv = csv::read_file(documents_path);
    csv::require_header(docs_csv, {"doc_id", "policy", "date"});
    std::vector<DocumentRecord> documents;
    std::unordered_set<std::string> doc_ids;
    for (const auto& row : docs_csv.rows) {
        csv::require_arity(docs_csv, row, 3);
        if (row.fields[0].empty()) csv::fail_at(docs_csv, row.line, 1, "empty doc_id");
        if (!doc_ids.insert(row.fields[0]).second)
            csv::fail_at(docs_csv, row.line, 1, "duplicate doc_id '" + row.fields[0] + "'");
        const auto date = parse_date(row.fields[2]);
        if (!date) csv::fail_at(docs_csv, row.line, 3, "invalid date '" + row.fields[2] + "'");
        documents.push_back({row.fields[0], row.fields[1], *date});
    }

    const auto members_csv = csv::read_file(members_path);
    csv::require_header(members_csv, {"mep_id", "name", "country", "group"});
    std::vector<MemberRecord> members;
    std::unordered_set<std::string> mep_ids;
    for (const auto& row : members_csv.rows) {
        csv::require_arity(members_csv, row, 4);
        if (row.fields[0].empty()) csv::fail_at(members_csv, row.line, 1, "empty mep_id");
        if (!mep_ids.insert(row.fields[0]).second)
            csv::fail_at(members_csv, row.line, 1, "duplicate mep_id '" + row.fields[0] + "'");
        members.push_back({row.fields[0], row.fields[1], row.fields[2], row.fields[3]});
    }

    VoteDataset ds(std::move(documents), std::move(members));
    std::unordered_map<std::string, std::size_t> doc_index, member_index;
    for (std::size_t i = 0; i < ds.document_count(); ++i) doc_index[ds.documents()[i].doc_id] = i;
    for (std::size_t i = 0; i < ds.member_count(); ++i) member_index[ds.members()[i].mep_id] = i;

    const auto votes_csv = csv::read_file(votes_path);
    csv::require_header(votes_csv, {"doc_id", "mep_id", "vote"});
    std::vector<bool> filled(ds.member_count() * ds.document_count(), false);
    for (const auto& row : votes_csv.rows) {
        csv::require_arity(votes_csv, row, 3);
        const auto d = doc_index.find(row.fields[0]);
        if (d == doc_index.end())
            csv::fail_at(votes_csv, row.line, 1, "unknown doc_id '" + row.fields[0] + "'");
        const auto m = member_index.find(row.fields[1]);
        if (m == member_index.end())
            csv::fail_at(votes_csv, row.line, 2, "unknown mep_id '" + row.fields[1] + "'");
        const auto v = parse_vote_token(row.fields[2]);
        if (!v)
            csv::fail_at(votes_csv, row.line, 3,
                         "unknown vote token '" + row.fields[2] +
                             "' (accepted: FOR, AGAINST, ABSTAIN, ABSENT, DID_NOT_VOTE, "
                             "DOCUMENTED_ABSENCE)");
        const std::size_t cell = m->second * ds.document_count() + d->second;
        if (filled[cell])
            csv::fail_at(votes_csv, row.line, 1,
                         "duplicate vote for (" + row.fields[0] + ", " + row.fields[1] + ")");
        filled[cell] = true;
        ds.set_vote(m->second, d->second, *v);
    }
    return ds;
}

void save_dataset(const VoteDataset& ds, const std::filesystem::path& documents_path,
                  const std::filesystem::path& members_path,
                  const std::filesystem::path& votes_path) {
    {
        auto out = csv::open_out(documents_path);
        out << "doc_id,policy,date\n";
        for (const auto& d : ds.documents())
            out << csv::quote(d.doc_id) << ',' << csv::quote(d.policy) << ','
                << format_date(d.date) << '\n';
    }
    {
        auto out = csv::open_out(members_path);
        out << "mep_id,name,country,group\n";
        for (const auto& m : ds.members())
            out << csv::quote(m.mep_id) << ',' << csv::quote(m.name) << ','
                << csv::quote(m.country) << ',' << csv::quote(m.group) << '\n';
    }
    auto out = csv::open_out(votes_path);
    out << "doc_id,mep_id,vote\n";
    for (std::size_t d = 0; d < ds.document_count(); ++d)
        for (std::size_t m = 0; m < ds.member_count(); ++m)
            out << csv::quote(ds.documents()[d].doc_id) << ','
                << csv::quote(ds.members()[m].mep_id) << ',' << to_token(ds.vote(m, d)) << '\n';
}

VoteDataset filter_dataset(const VoteDataset& ds, const std::optional<std::string>& policy,
                           const std::optional<DatePeriod>& period) {
    if (policy) {
        const auto vocab = ds.policies();
        if (std::find(vocab.begin(), vocab.end(), *policy) == vocab.end())
            throw InputError("unknown policy '" + *policy + "'");
    }
    if (period && period->from && period->to && *period->to < *period->from)
        throw InputError("period end " + format_date(*period->to) + " precedes start " +
                         format_date(*period->from));

    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < ds.document_count(); ++i) {
        const auto& doc = ds.documents()[i];
        if (policy && doc.policy != *policy) continue;
        if (period && period->from && doc.date < *period->from) continue;
        if (period && period->to && doc.date > *period->to) continue;
        kept.push_back(i);
    }
    if (kept.size() < 2)
        throw InsufficientDocuments(std::to_string(kept.size()) + " document(s) match the filter");

    std::vector<DocumentRecord> docs;
    docs.reserve(kept.size());
    for (auto i : kept) docs.push_back(ds.documents()[i]);
    VoteDataset out(std::move(docs), ds.members());
    for (std::size_t m = 0; m < ds.member_count(); ++m)
        for (std::size_t j = 0; j < kept.size(); ++j) out.set_vote(m, j, ds.vote(m, kept[j]));
    return out;
}

}  // namespace votenet
