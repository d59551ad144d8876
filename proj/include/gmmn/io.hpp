#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gmmn/geometry.hpp"

namespace gmmn {

/// Malformed instance or network text. `line()` is 1-based, 0 when not tied to a line.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

inline constexpr const char* kInstanceHeader = "gmmn-instance v1";
inline constexpr const char* kNetworkHeader = "gmmn-network v1";

struct InstanceFile {
  Instance instance;
  std::optional<std::uint64_t> seed;
  std::string provenance;
  /// Degenerate pairs dropped while reading, one message each.
  std::vector<std::string> warnings;

  friend bool operator==(const InstanceFile& a, const InstanceFile& b) {
    return a.instance == b.instance && a.seed == b.seed && a.provenance == b.provenance;
  }
};

void write_instance(std::ostream& os, const InstanceFile& file);
std::string format_instance(const InstanceFile& file);
InstanceFile read_instance(std::istream& is);
InstanceFile parse_instance(const std::string& text);

void write_network(std::ostream& os, const RectilinearNetwork& net, int dim);
std::string format_network(const RectilinearNetwork& net, int dim);

struct NetworkFile {
  int dim = 2;
  RectilinearNetwork network;
};
/// Checks the segment invariants and that the stated length matches the union length.
NetworkFile read_network(std::istream& is);
NetworkFile parse_network(const std::string& text);

/// Whole file as a string; throws std::runtime_error when it cannot be opened.
std::string read_file(const std::string& path);
/// Throws std::runtime_error when the file cannot be written.
void write_file(const std::string& path, const std::string& contents);

/// `%.12g` rendering of an exact value, for summaries only.
std::string approx(const Rational& r);

}  // namespace gmmn
