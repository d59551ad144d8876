#include "gmmn/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace gmmn {

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

namespace {

// Line reader that skips blanks and '#' comments and tracks line numbers.
class LineReader {
 public:
  explicit LineReader(std::istream& is) : is_(is) {}

  bool next(std::string& out) {
    std::string raw;
    while (std::getline(is_, raw)) {
      ++line_;
      if (!raw.empty() && raw.back() == '\r') raw.pop_back();
      const auto hash = raw.find('#');
      if (hash != std::string::npos) raw.erase(hash);
      const auto first = raw.find_first_not_of(" \t");
      if (first == std::string::npos) continue;
      const auto last = raw.find_last_not_of(" \t");
      out = raw.substr(first, last - first + 1);
      return true;
    }
    return false;
  }
  std::size_t line() const { return line_; }

 private:
  std::istream& is_;
  std::size_t line_ = 0;
};

std::vector<std::string> tokens(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  for (std::string t; ss >> t;) out.push_back(t);
  return out;
}

Rational parse_number(const std::string& tok, std::size_t line) {
  try {
    return Rational::parse(tok);
  } catch (const std::exception&) {
    throw ParseError(line, "bad number '" + tok + "'");
  }
}

long long parse_count(const std::string& tok, std::size_t line, const std::string& what) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(tok, &used);
    if (used != tok.size() || v < 0) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ParseError(line, "bad " + what + " '" + tok + "'");
  }
}

std::string key_of(const std::string& line) { return line.substr(0, line.find_first_of(" \t")); }

std::string rest_of(const std::string& line) {
  const auto sp = line.find_first_of(" \t");
  if (sp == std::string::npos) return {};
  const auto start = line.find_first_not_of(" \t", sp);
  return start == std::string::npos ? std::string{} : line.substr(start);
}

void write_point(std::ostream& os, const Point& p) {
  for (int i = 0; i < p.dim(); ++i) os << ' ' << p[i];
}

}  // namespace

void write_instance(std::ostream& os, const InstanceFile& file) {
  const Instance& inst = file.instance;
  os << kInstanceHeader << '\n';
  os << "dimension " << inst.dim << '\n';
  os << "pairs " << inst.size() << '\n';
  if (file.seed) os << "seed " << *file.seed << '\n';
  if (!file.provenance.empty()) os << "provenance " << file.provenance << '\n';
  if (!inst.separators.empty()) {
    os << "separators";
    for (const auto& s : inst.separators) os << ' ' << s;
    os << '\n';
  }
  for (const auto& p : inst.pairs) {
    std::ostringstream line;
    write_point(line, p.first);
    write_point(line, p.second);
    os << line.str().substr(1) << '\n';
  }
}

std::string format_instance(const InstanceFile& file) {
  std::ostringstream os;
  write_instance(os, file);
  return os.str();
}

InstanceFile read_instance(std::istream& is) {
  LineReader reader(is);
  std::string line;
  if (!reader.next(line) || line != kInstanceHeader) {
    throw ParseError(reader.line(), std::string("expected header '") + kInstanceHeader + "'");
  }
  InstanceFile file;
  std::optional<long long> dim, count;
  bool in_body = false;
  std::size_t body_lines = 0;
  while (reader.next(line)) {
    const std::size_t ln = reader.line();
    const std::string key = key_of(line);
    if (!in_body && (key == "dimension" || key == "pairs" || key == "seed" || key == "provenance" ||
                     key == "separators")) {
      const std::string rest = rest_of(line);
      if (key == "dimension") {
        dim = parse_count(rest, ln, "dimension");
        if (*dim < 1 || *dim > 64) throw ParseError(ln, "dimension out of range");
      } else if (key == "pairs") {
        count = parse_count(rest, ln, "pair count");
      } else if (key == "seed") {
        try {
          std::size_t used = 0;
          file.seed = std::stoull(rest, &used);
          if (used != rest.size()) throw std::invalid_argument(rest);
        } catch (const std::exception&) {
          throw ParseError(ln, "bad seed '" + rest + "'");
        }
      } else if (key == "provenance") {
        file.provenance = rest;
      } else {
        for (const auto& t : tokens(rest)) file.instance.separators.push_back(parse_number(t, ln));
      }
      continue;
    }
    if (!dim || !count) throw ParseError(ln, "header needs 'dimension' and 'pairs' before the body");
    in_body = true;
    ++body_lines;
    const auto toks = tokens(line);
    const auto d = static_cast<std::size_t>(*dim);
    if (toks.size() != 2 * d) {
      throw ParseError(ln, "expected " + std::to_string(2 * d) + " coordinates, got " + std::to_string(toks.size()));
    }
    std::vector<Rational> a, b;
    for (std::size_t i = 0; i < d; ++i) {
      a.push_back(parse_number(toks[i], ln));
      b.push_back(parse_number(toks[d + i], ln));
    }
    TerminalPair pair{Point(std::move(a)), Point(std::move(b))};
    if (pair.first == pair.second) {
      file.warnings.push_back("line " + std::to_string(ln) + ": degenerate pair dropped");
      continue;
    }
    file.instance.pairs.push_back(std::move(pair));
  }
  if (!dim || !count) throw ParseError(reader.line(), "missing 'dimension' or 'pairs'");
  if (body_lines != static_cast<std::size_t>(*count)) {
    throw ParseError(reader.line(), "header says " + std::to_string(*count) + " pairs, body has " +
                                        std::to_string(body_lines));
  }
  file.instance.dim = static_cast<int>(*dim);
  if (file.instance.separators.size() > static_cast<std::size_t>(*dim)) {
    throw ParseError(0, "more separators than dimensions");
  }
  try {
    file.instance.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(0, e.what());
  }
  return file;
}

InstanceFile parse_instance(const std::string& text) {
  std::istringstream is(text);
  return read_instance(is);
}

void write_network(std::ostream& os, const RectilinearNetwork& net, int dim) {
  os << kNetworkHeader << '\n';
  os << "dimension " << dim << '\n';
  os << "segments " << net.size() << '\n';
  os << "length " << net.length() << '\n';
  for (const auto& s : net.segments()) {
    if (s.a.dim() != dim) throw std::invalid_argument("write_network: segment dimension mismatch");
    os << s.axis;
    write_point(os, s.a);
    write_point(os, s.b);
    os << '\n';
  }
}

std::string format_network(const RectilinearNetwork& net, int dim) {
  std::ostringstream os;
  write_network(os, net, dim);
  return os.str();
}

NetworkFile read_network(std::istream& is) {
  LineReader reader(is);
  std::string line;
  if (!reader.next(line) || line != kNetworkHeader) {
    throw ParseError(reader.line(), std::string("expected header '") + kNetworkHeader + "'");
  }
  std::optional<long long> dim, count;
  std::optional<Rational> stated;
  NetworkFile file;
  bool in_body = false;
  while (reader.next(line)) {
    const std::size_t ln = reader.line();
    const std::string key = key_of(line);
    if (!in_body && (key == "dimension" || key == "segments" || key == "length")) {
      const std::string rest = rest_of(line);
      if (key == "dimension") {
        dim = parse_count(rest, ln, "dimension");
        if (*dim < 1 || *dim > 64) throw ParseError(ln, "dimension out of range");
      } else if (key == "segments") {
        count = parse_count(rest, ln, "segment count");
      } else {
        stated = parse_number(rest, ln);
      }
      continue;
    }
    if (!dim || !count || !stated) throw ParseError(ln, "header needs 'dimension', 'segments' and 'length'");
    in_body = true;
    const auto toks = tokens(line);
    const auto d = static_cast<std::size_t>(*dim);
    if (toks.size() != 2 * d + 1) {
      throw ParseError(ln, "expected axis and " + std::to_string(2 * d) + " coordinates");
    }
    const long long axis = parse_count(toks[0], ln, "axis");
    if (axis >= *dim) throw ParseError(ln, "axis out of range");
    std::vector<Rational> a, b;
    for (std::size_t i = 0; i < d; ++i) {
      a.push_back(parse_number(toks[1 + i], ln));
      b.push_back(parse_number(toks[1 + d + i], ln));
    }
    Segment s{Point(std::move(a)), Point(std::move(b)), static_cast<int>(axis)};
    for (int i = 0; i < static_cast<int>(d); ++i) {
      if (i != s.axis && s.a[i] != s.b[i]) throw ParseError(ln, "segment is not parallel to its axis");
    }
    if (s.b[s.axis] < s.a[s.axis]) throw ParseError(ln, "segment endpoints out of order");
    file.network.add(std::move(s));
  }
  if (!dim || !count || !stated) throw ParseError(reader.line(), "missing header fields");
  if (file.network.size() != static_cast<std::size_t>(*count)) {
    throw ParseError(reader.line(), "header says " + std::to_string(*count) + " segments, body has " +
                                        std::to_string(file.network.size()));
  }
  const Rational actual = file.network.length();
  if (actual != *stated) {
    throw ParseError(0, "stated length " + stated->to_string() + " differs from " + actual.to_string());
  }
  file.dim = static_cast<int>(*dim);
  return file;
}

NetworkFile parse_network(const std::string& text) {
  std::istringstream is(text);
  return read_network(is);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << contents;
  if (!out.flush()) throw std::runtime_error("cannot write " + path);
}

std::string approx(const Rational& r) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", r.to_double());
  return buf;
}

}  // namespace gmmn
