#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace mva {

// Structured text report: INI-style sections of key = value lines, emitted
// exactly in insertion order.  No floating point ever enters a report and
// every producer writes in a fixed order, so identical runs are
// byte-identical.
class Report {
public:
  void section(const std::string& name);
  void kv(const std::string& key, const std::string& value);
  void kv(const std::string& key, long long value);
  std::string text() const;
  std::uint64_t fnv1a() const;  // hash of text(), for determinism checks

private:
  struct Line {
    bool is_section;
    std::string a, b;
  };
  std::vector<Line> lines_;
};

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// key = value lines; '#' starts a comment; later keys override earlier.
std::map<std::string, std::string> parse_config(const std::string& text);

}  // namespace mva
