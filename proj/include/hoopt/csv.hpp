#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hoopt::csv {

/// Shortest round-trip decimal form of a double (std::to_chars).
std::string fmt(double v);
std::string fmt(std::uint64_t v);
std::string fmt(int v);

/// Split one CSV line on commas. No quoting; all our fields are plain tokens.
std::vector<std::string> split(const std::string& line);

double parse_double(const std::string& tok, int line_no);
std::uint64_t parse_u64(const std::string& tok, int line_no);
int parse_int(const std::string& tok, int line_no);

/// Write `content` to `path` atomically (temp file + rename).
void write_file_atomic(const std::string& path, const std::string& content);

/// Read an entire file; throws MissingInputError when absent.
std::string read_file(const std::string& path);

}  // namespace hoopt::csv
