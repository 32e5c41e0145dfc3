#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace hyperqaoa {

// "key = value" lines; '#' starts a comment; blank lines are ignored.
struct KeyValue {
  std::string key;
  std::string value;
  std::size_t line = 0;
};

std::vector<KeyValue> parse_key_values(std::string_view text);

std::string read_text_file(const std::string &path);
void write_text_file(const std::string &path, std::string_view contents);

double parse_double(std::string_view token);
std::int64_t parse_int(std::string_view token);
std::uint64_t parse_uint64(std::string_view token);
bool parse_bool(std::string_view token);

// Comma-separated list; an empty string yields an empty list.
std::vector<double> parse_double_list(std::string_view token);
std::vector<std::int64_t> parse_int_list(std::string_view token);
std::vector<std::string> split_list(std::string_view token, char sep = ',');

std::string join_doubles(const std::vector<double> &values, char sep);

std::string_view trim(std::string_view s);

} // namespace hyperqaoa
