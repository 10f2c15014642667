#include "csv.hpp"

#include <charconv>
#include <sstream>

#include "votenet/error.hpp"

namespace votenet::csv {

namespace {

std::string trim(std::string s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

}  // namespace

Table read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();

    Table t;
    t.path = path.string();
    std::vector<std::string> fields;
    std::string field;
    bool in_quotes = false;
    bool quoted = false;
    std::size_t line = 1;
    std::size_t row_line = 1;

    auto end_field = [&] {
        fields.push_back(quoted ? field : trim(field));
        field.clear();
        quoted = false;
    };
    auto end_row = [&] {
        end_field();
        const bool blank = fields.size() == 1 && fields[0].empty();
        if (!blank) {
            if (t.header.empty() && t.rows.empty())
                t.header = std::move(fields);
            else
                t.rows.push_back(Row{row_line, std::move(fields)});
        }
        fields.clear();
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                if (c == '\n') ++line;
                field.push_back(c);
            }
            continue;
        }
        switch (c) {
            case '"':
                in_quotes = true;
                quoted = true;
                break;
            case ',':
                end_field();
                break;
            case '\r':
                break;
            case '\n':
                end_row();
                ++line;
                row_line = line;
                break;
            default:
                field.push_back(c);
        }
    }
    if (in_quotes) fail_at(t, row_line, fields.size() + 1, "unterminated quoted field");
    if (!field.empty() || !fields.empty()) end_row();
    if (t.header.empty()) throw InputError(t.path + ": empty file (missing header)");
    return t;
}

void require_header(const Table& t, const std::vector<std::string>& expected) {
    if (t.header == expected) return;
    std::string want;
    for (const auto& h : expected) want += (want.empty() ? "" : ",") + h;
    throw InputError(t.path + ":1: expected header '" + want + "'");
}

void fail_at(const Table& t, std::size_t line, std::size_t column, const std::string& what) {
    throw InputError(t.path + ":" + std::to_string(line) + ": column " + std::to_string(column) +
                     ": " + what);
}

void require_arity(const Table& t, const Row& row, std::size_t n) {
    if (row.fields.size() != n)
        fail_at(t, row.line, std::min(row.fields.size(), n) + 1,
                "expected " + std::to_string(n) + " fields, found " +
                    std::to_string(row.fields.size()));
}

std::string quote(std::string_view field) {
    if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

double parse_double(const Table& t, const Row& row, std::size_t column) {
    const std::string& s = row.fields.at(column);
    double v = 0.0;
    const auto* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || ptr != end || s.empty())
        fail_at(t, row.line, column + 1, "not a number: '" + s + "'");
    return v;
}

long long parse_int(const Table& t, const Row& row, std::size_t column) {
    const std::string& s = row.fields.at(column);
    long long v = 0;
    const auto* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || ptr != end || s.empty())
        fail_at(t, row.line, column + 1, "not an integer: '" + s + "'");
    return v;
}

std::string format_exact(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path.string());
    out.precision(17);
    return out;
}

}  // namespace votenet::csv
