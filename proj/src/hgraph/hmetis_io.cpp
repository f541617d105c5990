#include "hgraph/hmetis_io.h"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>

namespace mmhp {
namespace {

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  // Next line that is not a comment. Returns false at end of input.
  bool next(std::string& line) {
    while (std::getline(in_, line)) {
      ++line_no_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty() && line.front() == '%') continue;
      return true;
    }
    return false;
  }

  std::size_t line_no() const { return line_no_; }

 private:
  std::istream& in_;
  std::size_t line_no_ = 0;
};

std::vector<long long> parse_integers(std::string_view line, std::size_t line_no) {
  std::vector<long long> values;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    if (i == line.size()) break;
    long long value = 0;
    auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + line.size(), value);
    if (ec != std::errc() || (ptr != line.data() + line.size() && *ptr != ' ' && *ptr != '\t')) {
      throw ParseError(line_no, "expected an integer");
    }
    values.push_back(value);
    i = static_cast<std::size_t>(ptr - line.data());
  }
  return values;
}

bool is_blank(const std::string& line) {
  return line.find_first_not_of(" \t") == std::string::npos;
}

}  // namespace

Hypergraph parse_hmetis(std::istream& in) {
  LineReader reader(in);
  std::string line;
  do {
    if (!reader.next(line)) throw ParseError(reader.line_no(), "missing header");
  } while (is_blank(line));

  const auto header = parse_integers(line, reader.line_no());
  if (header.size() < 2 || header.size() > 3 || header[0] < 0 || header[1] < 0) {
    throw ParseError(reader.line_no(), "malformed header, expected `m n [fmt]`");
  }
  const long long fmt = header.size() == 3 ? header[2] : 0;
  if (fmt != 0 && fmt != 1 && fmt != 10 && fmt != 11) {
    throw ParseError(reader.line_no(), "unsupported format flag " + std::to_string(fmt));
  }
  const bool has_costs = fmt == 1 || fmt == 11;
  const bool has_weights = fmt == 10 || fmt == 11;
  const auto num_edges = static_cast<std::size_t>(header[0]);
  const auto num_nodes = static_cast<std::size_t>(header[1]);
  if (num_nodes > kInvalidNode) throw ParseError(reader.line_no(), "too many nodes");

  std::vector<std::vector<NodeID>> edges(num_edges);
  std::vector<Weight> costs;
  if (has_costs) costs.reserve(num_edges);
  std::vector<char> seen(num_nodes, 0);
  for (std::size_t e = 0; e < num_edges; ++e) {
    if (!reader.next(line)) {
      throw ParseError(reader.line_no(), "expected " + std::to_string(num_edges) +
                                             " edge lines, found " + std::to_string(e));
    }
    auto values = parse_integers(line, reader.line_no());
    std::size_t first_pin = 0;
    if (has_costs) {
      if (values.empty()) throw ParseError(reader.line_no(), "missing edge cost");
      if (values[0] < 0) throw ParseError(reader.line_no(), "negative edge cost");
      costs.push_back(values[0]);
      first_pin = 1;
    }
    if (values.size() == first_pin) throw ParseError(reader.line_no(), "empty edge");
    auto& pins = edges[e];
    pins.reserve(values.size() - first_pin);
    for (std::size_t i = first_pin; i < values.size(); ++i) {
      const long long pin = values[i];
      if (pin < 1 || static_cast<std::size_t>(pin) > num_nodes) {
        throw ParseError(reader.line_no(), "pin " + std::to_string(pin) + " out of range [1, " +
                                               std::to_string(num_nodes) + "]");
      }
      const auto v = static_cast<NodeID>(pin - 1);
      if (seen[v]) throw ParseError(reader.line_no(), "duplicate pin " + std::to_string(pin));
      seen[v] = 1;
      pins.push_back(v);
    }
    for (NodeID v : pins) seen[v] = 0;
  }

  std::vector<Weight> weights;
  if (has_weights) {
    weights.reserve(num_nodes);
    for (std::size_t v = 0; v < num_nodes; ++v) {
      if (!reader.next(line)) {
        throw ParseError(reader.line_no(), "expected " + std::to_string(num_nodes) +
                                               " node weight lines, found " + std::to_string(v));
      }
      const auto values = parse_integers(line, reader.line_no());
      if (values.size() != 1) throw ParseError(reader.line_no(), "expected one node weight");
      if (values[0] < 0) throw ParseError(reader.line_no(), "negative node weight");
      weights.push_back(values[0]);
    }
  }

  return Hypergraph(static_cast<NodeID>(num_nodes), std::move(edges), std::move(weights),
                    std::move(costs));
}

Hypergraph parse_hmetis_string(const std::string& text) {
  std::istringstream in(text);
  return parse_hmetis(in);
}

Hypergraph read_hmetis_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open hypergraph file '" + path + "'");
  return parse_hmetis(in);
}

void write_hmetis(const Hypergraph& h, std::ostream& out) {
  bool weighted_edges = false;
  bool weighted_nodes = false;
  for (EdgeID e = 0; e < h.num_edges(); ++e) weighted_edges |= h.edge_cost(e) != 1;
  for (NodeID v = 0; v < h.initial_num_nodes(); ++v) weighted_nodes |= h.node_weight(v) != 1;
  out << h.num_edges() << ' ' << h.initial_num_nodes();
  if (weighted_edges || weighted_nodes) {
    out << ' ' << (weighted_nodes ? "1" : "") << (weighted_edges ? "1" : "0");
  }
  out << '\n';
  for (EdgeID e = 0; e < h.num_edges(); ++e) {
    if (weighted_edges) out << h.edge_cost(e) << ' ';
    bool first = true;
    for (NodeID v : h.pins(e)) {
      out << (first ? "" : " ") << v + 1;
      first = false;
    }
    out << '\n';
  }
  if (weighted_nodes) {
    for (NodeID v = 0; v < h.initial_num_nodes(); ++v) out << h.node_weight(v) << '\n';
  }
}

void write_partition(const std::vector<BlockID>& blocks, std::ostream& out) {
  for (BlockID b : blocks) out << b << '\n';
}

void write_partition_file(const std::vector<BlockID>& blocks, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  write_partition(blocks, out);
  out.flush();
  if (!out) throw IoError("write to '" + path + "' failed");
}

std::vector<BlockID> read_partition(std::istream& in) {
  std::vector<BlockID> blocks;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line)) continue;
    const auto values = parse_integers(line, line_no);
    if (values.size() != 1 || values[0] < 0) throw ParseError(line_no, "expected one block id");
    blocks.push_back(static_cast<BlockID>(values[0]));
  }
  return blocks;
}

std::vector<BlockID> read_partition_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open partition file '" + path + "'");
  return read_partition(in);
}

}  // namespace mmhp
