#include "hyperqaoa/config.hpp"

#include "hyperqaoa/error.hpp"
#include "hyperqaoa/hypergraph.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace hyperqaoa {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos)
    return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<KeyValue> parse_key_values(std::string_view text) {
  std::vector<KeyValue> out;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty())
      continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ParseError("line " + std::to_string(line_no) +
                       ": expected 'key = value'");
    KeyValue kv{std::string(trim(line.substr(0, eq))),
                std::string(trim(line.substr(eq + 1))), line_no};
    if (kv.key.empty())
      throw ParseError("line " + std::to_string(line_no) + ": empty key");
    out.push_back(std::move(kv));
  }
  return out;
}

std::string read_text_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string &path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw Error("cannot write " + path);
  out << contents;
}

namespace {

template <class T> T from_token(std::string_view token, const char *what) {
  token = trim(token);
  T value{};
  auto res = std::from_chars(token.data(), token.data() + token.size(), value);
  if (res.ec != std::errc{} || res.ptr != token.data() + token.size() ||
      token.empty())
    throw ParseError(std::string("expected ") + what + ", got '" +
                     std::string(token) + "'");
  return value;
}

} // namespace

double parse_double(std::string_view token) {
  return from_token<double>(token, "a real number");
}

std::int64_t parse_int(std::string_view token) {
  return from_token<std::int64_t>(token, "an integer");
}

std::uint64_t parse_uint64(std::string_view token) {
  return from_token<std::uint64_t>(token, "an unsigned integer");
}

bool parse_bool(std::string_view token) {
  token = trim(token);
  if (token == "true" || token == "1" || token == "yes")
    return true;
  if (token == "false" || token == "0" || token == "no")
    return false;
  throw ParseError("expected a boolean, got '" + std::string(token) + "'");
}

std::vector<std::string> split_list(std::string_view token, char sep) {
  std::vector<std::string> out;
  token = trim(token);
  if (token.empty())
    return out;
  std::size_t start = 0;
  while (true) {
    const auto pos = token.find(sep, start);
    out.emplace_back(trim(token.substr(start, pos - start)));
    if (pos == std::string_view::npos)
      break;
    start = pos + 1;
  }
  return out;
}

std::vector<double> parse_double_list(std::string_view token) {
  std::vector<double> out;
  for (const auto &t : split_list(token))
    out.push_back(parse_double(t));
  return out;
}

std::vector<std::int64_t> parse_int_list(std::string_view token) {
  std::vector<std::int64_t> out;
  for (const auto &t : split_list(token))
    out.push_back(parse_int(t));
  return out;
}

std::string join_doubles(const std::vector<double> &values, char sep) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i)
      out += sep;
    out += format_double(values[i]);
  }
  return out;
}

} // namespace hyperqaoa
