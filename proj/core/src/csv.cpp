#include "citemetric/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "citemetric/errors.hpp"

namespace citemetric::csv {

namespace {

// State machine over the raw text. Emits one row per record; handles
// quoted fields spanning newlines and CRLF endings.
void parse_text(const std::string& text,
                const std::function<void(std::size_t, const std::vector<std::string>&)>& on_row) {
    std::vector<std::string> fields;
    std::string field;
    bool in_quotes = false;
    bool row_started = false;
    std::size_t line = 1;
    std::size_t row_line = 1;

    auto end_field = [&] {
        fields.push_back(std::move(field));
        field.clear();
    };
    auto end_row = [&] {
        end_field();
        on_row(row_line, fields);
        fields.clear();
        row_started = false;
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (!row_started) {
            row_started = true;
            row_line = line;
        }
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                if (c == '\n') ++line;
                field += c;
            }
            continue;
        }
        switch (c) {
            case '"':
                in_quotes = true;
                break;
            case ',':
                end_field();
                break;
            case '\r':
                if (i + 1 < text.size() && text[i + 1] == '\n') {
                    ++i;
                }
                ++line;
                end_row();
                break;
            case '\n':
                ++line;
                end_row();
                break;
            default:
                field += c;
        }
    }
    if (in_quotes) {
        throw Error("unterminated quoted field at end of CSV input");
    }
    // Final record without trailing newline.
    if (row_started || !field.empty()) {
        end_row();
    }
}

}  // namespace

void read_file(const std::filesystem::path& path,
               const std::function<void(std::size_t, const std::vector<std::string>&)>& on_row) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoFailure(path.string(), "cannot open for reading");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) {
        throw IoFailure(path.string(), "read error");
    }
    parse_text(buf.str(), on_row);
}

std::vector<std::pair<std::size_t, std::vector<std::string>>> parse(const std::string& text) {
    std::vector<std::pair<std::size_t, std::vector<std::string>>> rows;
    parse_text(text, [&](std::size_t line, const std::vector<std::string>& fields) {
        rows.emplace_back(line, fields);
    });
    return rows;
}

std::string escape(const std::string& field) {
    const bool needs_quotes =
        field.find_first_of(",\"\r\n") != std::string::npos;
    if (!needs_quotes) {
        return field;
    }
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string join(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ',';
        out += escape(fields[i]);
    }
    return out;
}

std::string format_real(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", value);
    return buf;
}

std::int64_t parse_int(const std::string& field) {
    std::int64_t value = 0;
    const char* begin = field.data();
    const char* end = begin + field.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end || field.empty()) {
        throw std::invalid_argument("not an integer: '" + field + "'");
    }
    return value;
}

std::uint64_t parse_uint(const std::string& field) {
    std::uint64_t value = 0;
    const char* begin = field.data();
    const char* end = begin + field.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end || field.empty()) {
        throw std::invalid_argument("not a non-negative integer: '" + field + "'");
    }
    return value;
}

double parse_real(const std::string& field) {
    double value = 0.0;
    const char* begin = field.data();
    const char* end = begin + field.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end || field.empty()) {
        throw std::invalid_argument("not a real number: '" + field + "'");
    }
    return value;
}

}  // namespace citemetric::csv
