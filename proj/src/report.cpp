#include "mva/report.hpp"

#include <fstream>
#include <sstream>

#include "mva/scalar.hpp"

namespace mva {

void Report::section(const std::string& name) { lines_.push_back({true, name, ""}); }

void Report::kv(const std::string& key, const std::string& value) {
  lines_.push_back({false, key, value});
}

void Report::kv(const std::string& key, long long value) { kv(key, std::to_string(value)); }

std::string Report::text() const {
  std::string out;
  for (const auto& l : lines_) {
    if (l.is_section) {
      out += "[" + l.a + "]\n";
    } else {
      out += l.a + " = " + l.b + "\n";
    }
  }
  return out;
}

std::uint64_t Report::fnv1a() const {
  std::uint64_t h = 14695981039346656037ull;
  for (char c : text()) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  return h;
}

std::string read_text_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw error(errc::usage, "Usage: cannot read " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw error(errc::usage, "Usage: cannot write " + path);
  f << text;
}

std::map<std::string, std::string> parse_config(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.erase(s.begin());
      while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.pop_back();
      return s;
    };
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (!key.empty()) out[key] = value;
  }
  return out;
}

}  // namespace mva
