#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "hgraph/hypergraph.h"

namespace mmhp {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// hMetis hypergraph format: header `m n [fmt]` with fmt in {0, 1, 10, 11}
// (1 = edge costs, 10 = node weights), then m edge lines with an optional
// leading cost followed by 1-indexed pins, then n node weight lines when
// fmt has the 10 flag. Lines starting with '%' are comments.
Hypergraph parse_hmetis(std::istream& in);
Hypergraph parse_hmetis_string(const std::string& text);
Hypergraph read_hmetis_file(const std::string& path);

void write_hmetis(const Hypergraph& h, std::ostream& out);

// One block id per line, node order 0..n-1.
void write_partition(const std::vector<BlockID>& blocks, std::ostream& out);
void write_partition_file(const std::vector<BlockID>& blocks, const std::string& path);
std::vector<BlockID> read_partition(std::istream& in);
std::vector<BlockID> read_partition_file(const std::string& path);

}  // namespace mmhp
