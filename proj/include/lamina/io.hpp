// io.hpp
//
// Text file formats: automorphism files (rank + basis images, optional
// inverse block), train-track files (rose shortcut or explicit graph),
// and subgroup files (one generator per line).  Parse errors carry line
// numbers.

#pragma once

#include <string>
#include <vector>

#include "lamina/automorphism.hpp"
#include "lamina/traintrack.hpp"
#include "lamina/word.hpp"

namespace lamina {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

struct AutomorphismFile {
  Basis basis;
  Automorphism map;
};

// Format:
//   # comment
//   rank 3
//   a -> ab
//   b -> ac
//   c -> a
//   inverse:
//   a -> c
//   b -> Ca
//   c -> Cb
AutomorphismFile parse_automorphism_file(const std::string& text);

struct TrainTrackFile {
  GraphMap map;
  bool rose = false;
};

// Format: `graph rose N` followed by `map a -> ab` lines, or explicit
// `vertex <name>` / `edge <e> <u> <v>` lines before the map block.
TrainTrackFile parse_traintrack_file(const std::string& text);

// One generator word per line; comments and blank lines ignored.
std::vector<ReducedWord> parse_subgroup_file(const Basis& basis, const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace lamina
