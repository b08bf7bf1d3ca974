#pragma once

// Line-oriented helpers shared by the record parsers.

#include <string>
#include <string_view>
#include <vector>

namespace aspectminer::textio {

/// Reads a whole file; throws Error(InvalidArgument) when it cannot be opened.
std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

std::vector<std::string_view> split(std::string_view s, char sep);

/// Splits a comma list; "-" denotes the empty list.
std::vector<std::string> split_list(std::string_view s);
std::string join(const std::vector<std::string>& items, std::string_view sep);

/// Iterates over records: strips CR, skips blank lines and `#` comments.
/// The callback receives the 1-based line number and the tab-split fields.
template <typename Fn>
void for_each_record(std::string_view text, Fn&& fn) {
  std::size_t lineNo = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    ++lineNo;
    pos = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    auto first = line.find_first_not_of(" \t");
    if (first == std::string_view::npos || line[first] == '#') {
      if (end == text.size()) break;
      continue;
    }
    fn(lineNo, split(line, '\t'));
    if (end == text.size()) break;
  }
}

/// Nonempty and free of whitespace.
bool valid_identifier(std::string_view id);

}  // namespace aspectminer::textio
