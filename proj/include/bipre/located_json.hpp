#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bipre::json {

struct Location {
  std::size_t line = 1;
  std::size_t column = 1;
  bool operator==(const Location&) const = default;
};

std::string to_string(const Location& loc);

struct ParseError {
  Location where;
  std::string message;
  bool operator==(const ParseError&) const = default;
};

/// A JSON value that remembers where it started. Objects keep member order
/// and the location of every key.
struct Value {
  enum class Kind { Null, Bool, Integer, Number, String, Array, Object };

  Kind kind = Kind::Null;
  Location where;
  bool boolean = false;
  std::int64_t integer = 0;
  double number = 0;
  std::string text;
  std::vector<Value> items;
  struct Member;
  std::vector<Member> members;

  [[nodiscard]] bool is(Kind k) const { return kind == k; }
  [[nodiscard]] const Value* get(std::string_view key) const;
};

struct Value::Member {
  std::string key;
  Location key_where;
  Value value;
};

const char* kind_name(Value::Kind k);

struct ParseResult {
  std::optional<Value> value;  // absent for empty input or unrecoverable text
  std::vector<ParseError> errors;
};

/// Strict JSON plus `//` line comments. Keeps going after an error where it
/// can, so one pass reports as many problems as possible. Duplicate keys in
/// one object are errors.
ParseResult parse(std::string_view text);

}  // namespace bipre::json
