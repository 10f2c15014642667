#pragma once

// Document-wise agreement scores and the averaged member x member agreement matrix.

#include <array>
#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "votenet/vote_data.hpp"

namespace votenet {

// Symmetric 3x3 score table over the expressed votes, indexed For, Abstain, Against.
class WeightTable {
public:
    using Matrix = std::array<std::array<double, 3>, 3>;

    // Abstention counts as half an agreement with anything (+0.5).
    static WeightTable half_agreement();
    // Abstention is an absence of opinion: 0 against For/Against, +1 with another Abstain.
    static WeightTable neutral_abstain();
    // half_agreement with the For/Against-vs-Abstain cells flipped to -0.5.
    static WeightTable half_disagreement();
    // Throws InputError unless symmetric with entries in [-1, +1].
    static WeightTable custom(const Matrix& entries, std::string name = "custom");
    // Three rows of three comma-separated numbers, order For, Abstain, Against.
    static WeightTable load(const std::filesystem::path& path);
    // "half", "neutral", "half-disagreement" or "custom:<path>".
    static WeightTable from_name(std::string_view spec);

    // Entry for two expressed votes. Throws std::invalid_argument for absences.
    double entry(VoteValue a, VoteValue b) const;
    const Matrix& entries() const { return entries_; }
    const std::string& name() const { return name_; }

private:
    WeightTable(const Matrix& entries, std::string name) : entries_(entries), name_(std::move(name)) {}
    Matrix entries_;
    std::string name_;
};

// 0 whenever either member did not vote, otherwise the table entry.
double score_pair(VoteValue u, VoteValue v, const WeightTable& table);

enum class AgreementDenominator {
    AllDocuments,  // average over every document, absences scoring 0 (default)
    BothCast,      // average only over documents where both members voted
};

class AgreementMatrix {
public:
    AgreementMatrix(std::vector<std::string> members, std::size_t doc_count);

    const std::vector<std::string>& members() const { return members_; }
    std::size_t size() const { return members_.size(); }
    std::size_t doc_count() const { return doc_count_; }

    double at(std::size_t u, std::size_t v) const { return values_[u * size() + v]; }
    // Writes both (u,v) and (v,u).
    void set(std::size_t u, std::size_t v, double value);

    bool operator==(const AgreementMatrix&) const = default;

private:
    std::vector<std::string> members_;
    std::vector<double> values_;
    std::size_t doc_count_;
};

// Throws InsufficientDocuments for < 2 documents and InputError for < 2 members.
AgreementMatrix agreement_matrix(const VoteDataset& ds, const WeightTable& table,
                                 AgreementDenominator denominator = AgreementDenominator::AllDocuments);

struct HistogramBin {
    double lower;
    std::size_t count;
};

// Counts the strict upper triangle. Bins start at -1 and step by bin_width;
// the last bin is closed at +1.
std::vector<HistogramBin> agreement_histogram(const AgreementMatrix& m, double bin_width);

// CSV with a header row and column of member ids, 6 decimals.
void write_agreement_csv(const AgreementMatrix& m, const std::filesystem::path& path);
AgreementMatrix read_agreement_csv(const std::filesystem::path& path);

void write_histogram_csv(const std::vector<HistogramBin>& bins, const std::filesystem::path& path);

}  // namespace votenet
