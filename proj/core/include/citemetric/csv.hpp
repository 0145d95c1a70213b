#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

namespace citemetric::csv {

// Minimal CSV reader: comma separated, UTF-8 passthrough, accepts \n and
// \r\n line endings, double-quoted fields with "" escapes. Quoted fields
// may contain separators and newlines.
//
// Rows are streamed to `on_row(line_no, fields)` where line_no is the
// 1-based physical line the row started on. The first row is the header.
void read_file(const std::filesystem::path& path,
               const std::function<void(std::size_t, const std::vector<std::string>&)>& on_row);

// Parses one CSV document from memory; same dialect as read_file.
std::vector<std::pair<std::size_t, std::vector<std::string>>> parse(const std::string& text);

// Quotes a field if it contains a separator, quote or newline.
std::string escape(const std::string& field);

// Joins fields into one CSV record (no trailing newline).
std::string join(const std::vector<std::string>& fields);

// Fixed-point formatting used by every CSV export: 6 decimal places.
std::string format_real(double value);

// Strict integer parse of a whole field (no sign for unsigned variants,
// no trailing junk). Throws std::invalid_argument on failure; callers
// wrap this into MalformedRow with file/line context.
std::int64_t parse_int(const std::string& field);
std::uint64_t parse_uint(const std::string& field);
double parse_real(const std::string& field);

}  // namespace citemetric::csv
