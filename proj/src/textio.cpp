#include "aspectminer/textio.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "aspectminer/error.hpp"

namespace aspectminer::textio {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::InvalidArgument, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::InvalidArgument, "cannot write " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    auto next = s.find(sep, pos);
    if (next == std::string_view::npos) {
      out.push_back(s.substr(pos));
      break;
    }
    out.push_back(s.substr(pos, next - pos));
    pos = next + 1;
  }
  return out;
}

std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  if (s == "-" || s.empty()) return out;
  for (auto part : split(s, ',')) out.emplace_back(part);
  return out;
}

std::string join(const std::vector<std::string>& items, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

bool valid_identifier(std::string_view id) {
  if (id.empty()) return false;
  for (unsigned char c : id)
    if (std::isspace(c)) return false;
  return true;
}

}  // namespace aspectminer::textio
