#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "bipre/model.hpp"
#include "bipre/spec_format.hpp"

namespace bipre::test {

inline std::string fixture_path(const std::string& name) {
  return std::string(BIPRE_FIXTURE_DIR) + "/" + name;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline spec::SpecDocument load_document(const std::string& name) {
  auto parsed = spec::parse_spec(read_file(fixture_path(name)));
  if (!parsed.ok()) throw std::runtime_error(spec::format_errors(parsed.errors, name));
  return *parsed.document;
}

inline spec::Model load_model(const std::string& name) {
  auto built = spec::build_model(load_document(name));
  if (!built.ok()) throw std::runtime_error(spec::format_errors(built.errors, name));
  return std::move(built.model);
}

inline FinCategory terminal_category() {
  return FinCategory::build({{"*"}, {{"1*", "*", "*"}}, {{"*", "1*"}}, {{"1*", "1*", "1*"}}});
}

inline CategoryData arrow_data() {
  return {{"x", "y"},
          {{"1x", "x", "x"}, {"1y", "y", "y"}, {"f", "x", "y"}},
          {{"x", "1x"}, {"y", "1y"}},
          {{"1x", "1x", "1x"}, {"1y", "1y", "1y"}, {"f", "1x", "f"}, {"1y", "f", "f"}}};
}

inline FinCategory arrow_category() { return FinCategory::build(arrow_data()); }

}  // namespace bipre::test
