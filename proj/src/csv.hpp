#pragma once

// Minimal RFC-4180-ish CSV reading/writing shared by the file formats.

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

namespace votenet::csv {

struct Row {
    std::size_t line = 0;  // 1-based line number in the file
    std::vector<std::string> fields;
};

struct Table {
    std::string path;
    std::vector<std::string> header;
    std::vector<Row> rows;
};

// Reads a whole CSV file. Blank lines are skipped. Throws InputError on
// unreadable files or unterminated quotes.
Table read_file(const std::filesystem::path& path);

// Throws InputError unless the header matches `expected` exactly (after trimming).
void require_header(const Table& t, const std::vector<std::string>& expected);

// Throws InputError naming file, line and column when `row` has the wrong arity.
void require_arity(const Table& t, const Row& row, std::size_t n);

[[noreturn]] void fail_at(const Table& t, std::size_t line, std::size_t column,
                          const std::string& what);

std::string quote(std::string_view field);

double parse_double(const Table& t, const Row& row, std::size_t column);
long long parse_int(const Table& t, const Row& row, std::size_t column);

// Shortest representation that reads back to the same double.
std::string format_exact(double v);

std::ofstream open_out(const std::filesystem::path& path);

}  // namespace votenet::csv
