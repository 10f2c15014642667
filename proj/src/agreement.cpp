#include "votenet/agreement.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "csv.hpp"
#include "votenet/error.hpp"

namespace votenet {

namespace {

int expressed_index(VoteValue v) {
    switch (v) {
        case VoteValue::For: return 0;
        case VoteValue::Abstain: return 1;
        case VoteValue::Against: return 2;
        default: throw std::invalid_argument("not an expressed vote");
    }
}

}  // namespace

WeightTable WeightTable::half_agreement() {
    return WeightTable({{{+1.0, +0.5, -1.0}, {+0.5, +0.5, +0.5}, {-1.0, +0.5, +1.0}}}, "half");
}

WeightTable WeightTable::neutral_abstain() {
    return WeightTable({{{+1.0, 0.0, -1.0}, {0.0, +1.0, 0.0}, {-1.0, 0.0, +1.0}}}, "neutral");
}

WeightTable WeightTable::half_disagreement() {
    return WeightTable({{{+1.0, -0.5, -1.0}, {-0.5, +0.5, -0.5}, {-1.0, -0.5, +1.0}}},
                       "half-disagreement");
}

WeightTable WeightTable::custom(const Matrix& entries, std::string name) {
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            if (!(entries[i][j] >= -1.0 && entries[i][j] <= 1.0))
                throw InputError("weight table entry outside [-1, +1]");
            if (entries[i][j] != entries[j][i]) throw InputError("weight table is not symmetric");
        }
    return WeightTable(entries, std::move(name));
}

WeightTable WeightTable::from_name(std::string_view spec) {
    if (spec == "half") return half_agreement();
    if (spec == "neutral") return neutral_abstain();
    if (spec == "half-disagreement") return half_disagreement();
    if (spec.starts_with("custom:") && spec.size() > 7) return load(std::filesystem::path(spec.substr(7)));
    throw InputError("unknown weight table '" + std::string(spec) +
                     "' (expected half, neutral, half-disagreement or custom:<file>)");
}

WeightTable WeightTable::load(const std::filesystem::path& path) {
    // No header here: the first row is data, so read it back out of the header slot.
    auto t = csv::read_file(path);
    std::vector<csv::Row> rows;
    rows.push_back(csv::Row{1, t.header});
    for (auto& r : t.rows) rows.push_back(std::move(r));
    if (rows.size() != 3) throw InputError(t.path + ": weight table needs exactly 3 rows");
    Matrix m{};
    for (std::size_t i = 0; i < 3; ++i) {
        csv::require_arity(t, rows[i], 3);
        for (std::size_t j = 0; j < 3; ++j) m[i][j] = csv::parse_double(t, rows[i], j);
    }
    return custom(m, "custom:" + path.filename().string());
}

double WeightTable::entry(VoteValue a, VoteValue b) const {
    return entries_[expressed_index(a)][expressed_index(b)];
}

double score_pair(VoteValue u, VoteValue v, const WeightTable& table) {
    if (is_absence(u) || is_absence(v)) return 0.0;
    return table.entry(u, v);
}

AgreementMatrix::AgreementMatrix(std::vector<std::string> members, std::size_t doc_count)
    : members_(std::move(members)), values_(members_.size() * members_.size(), 0.0),
      doc_count_(doc_count) {}

void AgreementMatrix::set(std::size_t u, std::size_t v, double value) {
    values_[u * size() + v] = value;
    values_[v * size() + u] = value;
}

AgreementMatrix agreement_matrix(const VoteDataset& ds, const WeightTable& table,
                                 AgreementDenominator denominator) {
    const std::size_t docs = ds.document_count();
    const std::size_t n = ds.member_count();
    if (docs < 2) throw InsufficientDocuments(std::to_string(docs) + " document(s) in dataset");
    if (n < 2) throw InputError("agreement matrix needs at least 2 members");

    std::vector<std::string> ids;
    ids.reserve(n);
    for (const auto& m : ds.members()) ids.push_back(m.mep_id);
    AgreementMatrix out(std::move(ids), docs);

    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v) {
            double sum = 0.0;
            std::size_t both_cast = 0;
            for (std::size_t d = 0; d < docs; ++d) {
                const VoteValue a = ds.vote(u, d), b = ds.vote(v, d);
                if (!is_absence(a) && !is_absence(b)) ++both_cast;
                sum += score_pair(a, b, table);
            }
            const std::size_t denom =
                denominator == AgreementDenominator::AllDocuments ? docs : both_cast;
            out.set(u, v, denom == 0 ? 0.0 : sum / static_cast<double>(denom));
        }
    return out;
}

std::vector<HistogramBin> agreement_histogram(const AgreementMatrix& m, double bin_width) {
    if (!(bin_width > 0.0 && bin_width <= 2.0))
        throw InputError("bin width must lie in (0, 2]");
    const auto bins = static_cast<std::size_t>(std::ceil(2.0 / bin_width - 1e-9));
    std::vector<HistogramBin> out(bins);
    for (std::size_t i = 0; i < bins; ++i) out[i] = {-1.0 + static_cast<double>(i) * bin_width, 0};
    for (std::size_t u = 0; u < m.size(); ++u)
        for (std::size_t v = u + 1; v < m.size(); ++v) {
            const double x = m.at(u, v);
            auto idx = static_cast<long long>(std::floor((x + 1.0) / bin_width + 1e-12));
            idx = std::clamp<long long>(idx, 0, static_cast<long long>(bins) - 1);
            ++out[static_cast<std::size_t>(idx)].count;
        }
    return out;
}

void write_agreement_csv(const AgreementMatrix& m, const std::filesystem::path& path) {
    auto out = csv::open_out(path);
    out << "mep_id";
    for (const auto& id : m.members()) out << ',' << csv::quote(id);
    out << '\n';
    char buf[32];
    for (std::size_t u = 0; u < m.size(); ++u) {
        out << csv::quote(m.members()[u]);
        for (std::size_t v = 0; v < m.size(); ++v) {
            std::snprintf(buf, sizeof buf, "%.6f", u == v ? 0.0 : m.at(u, v));
            out << ',' << buf;
        }
        out << '\n';
    }
}

AgreementMatrix read_agreement_csv(const std::filesystem::path& path) {
    const auto t = csv::read_file(path);
    if (t.header.empty() || t.header[0] != "mep_id")
        throw InputError(t.path + ":1: expected header starting with 'mep_id'");
    std::vector<std::string> ids(t.header.begin() + 1, t.header.end());
    const std::size_t n = ids.size();
    if (t.rows.size() != n) throw InputError(t.path + ": matrix is not square");
    AgreementMatrix m(ids, 0);
    for (std::size_t u = 0; u < n; ++u) {
        const auto& row = t.rows[u];
        csv::require_arity(t, row, n + 1);
        if (row.fields[0] != ids[u]) csv::fail_at(t, row.line, 1, "row id does not match header");
        for (std::size_t v = 0; v < n; ++v) {
            const double x = csv::parse_double(t, row, v + 1);
            if (x < -1.0 || x > 1.0) csv::fail_at(t, row.line, v + 2, "value outside [-1, +1]");
            if (v < u && x != m.at(u, v)) csv::fail_at(t, row.line, v + 2, "matrix is not symmetric");
            if (v > u) m.set(u, v, x);
        }
    }
    return m;
}

void write_histogram_csv(const std::vector<HistogramBin>& bins, const std::filesystem::path& path) {
    auto out = csv::open_out(path);
    out << "bin_lower,count\n";
    char buf[32];
    for (const auto& b : bins) {
        std::snprintf(buf, sizeof buf, "%.6f", b.lower);
        out << buf << ',' << b.count << '\n';
    }
}

}  // namespace votenet
