#pragma once

#include <fstream>
#include <iterator>
#include <string>

#include "weave/syntax.hpp"

namespace fixtures {

inline std::string path(const std::string& name) { return std::string(WEAVE_FIXTURES) + "/" + name; }

inline std::string read(const std::string& name) {
  std::ifstream in(path(name), std::ios::binary);
  if (!in) throw std::runtime_error("missing fixture " + name);
  return {std::istreambuf_iterator<char>(in), {}};
}

inline weave::Dialog expr(const std::string& name) { return weave::parse_expr(read(name), {}, name); }
inline weave::EnumeratedSpec episodes(const std::string& name) { return weave::parse_spec_file(read(name), name); }

}  // namespace fixtures
