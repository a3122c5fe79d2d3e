#include "bipre/located_json.hpp"

#include <charconv>
#include <set>

namespace bipre::json {

std::string to_string(const Location& loc) {
  return std::to_string(loc.line) + ":" + std::to_string(loc.column);
}

const Value* Value::get(std::string_view key) const {
  for (const auto& m : members) {
    if (m.key == key) return &m.value;
  }
  return nullptr;
}

const char* kind_name(Value::Kind k) {
  switch (k) {
    case Value::Kind::Null: return "null";
    case Value::Kind::Bool: return "boolean";
    case Value::Kind::Integer: return "integer";
    case Value::Kind::Number: return "number";
    case Value::Kind::String: return "string";
    case Value::Kind::Array: return "array";
    case Value::Kind::Object: return "object";
  }
  return "value";
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  ParseResult run() {
    ParseResult out;
    skip_ws();
    if (at_end()) return out;
    out.value = value(0);
    skip_ws();
    if (!at_end() && out.value) error("unexpected content after the document");
    out.errors = std::move(errors_);
    if (!out.errors.empty() && !out.value) out.value.reset();
    return out;
  }

 private:
  static constexpr int kMaxDepth = 256;

  std::string_view text_;
  std::size_t pos_ = 0;
  Location loc_;
  std::vector<ParseError> errors_;

  [[nodiscard]] bool at_end() const { return pos_ >= text_.size(); }
  [[nodiscard]] char peek() const { return at_end() ? '\0' : text_[pos_]; }

  void advance() {
    if (at_end()) return;
    const char c = text_[pos_++];
    if (c == '\n') {
      ++loc_.line;
      loc_.column = 1;
    } else if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) {
      ++loc_.column;
    }
  }

  void error(std::string message) { error_at(loc_, std::move(message)); }
  void error_at(Location where, std::string message) {
    // Unwinding from end of input repeats the same complaint once per level.
    if (!errors_.empty() && errors_.back().where == where && errors_.back().message == message) {
      return;
    }
    errors_.push_back({where, std::move(message)});
  }

  void skip_ws() {
    while (!at_end()) {
      const char c = peek();
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        advance();
      } else if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '/') {
        while (!at_end() && peek() != '\n') advance();
      } else {
        break;
      }
    }
  }

  // Skips to the next `,` or closing bracket at the current nesting level.
  void recover() {
    int depth = 0;
    while (!at_end()) {
      const char c = peek();
      if (c == '"') {
        skip_string_raw();
        continue;
      }
      if (c == '{' || c == '[') ++depth;
      if (c == '}' || c == ']') {
        if (depth == 0) return;
        --depth;
      }
      if (c == ',' && depth == 0) return;
      advance();
    }
  }

  void skip_string_raw() {
    advance();
    while (!at_end() && peek() != '"' && peek() != '\n') {
      if (peek() == '\\') advance();
      advance();
    }
    if (peek() == '"') advance();
  }

  std::optional<Value> value(int depth) {
    skip_ws();
    if (depth > kMaxDepth) {
      error("nesting too deep");
      return std::nullopt;
    }
    Value v;
    v.where = loc_;
    const char c = peek();
    if (at_end()) {
      error("unexpected end of input, expected a value");
      return std::nullopt;
    }
    if (c == '{') return object(depth);
    if (c == '[') return array(depth);
    if (c == '"') {
      auto s = string();
      if (!s) return std::nullopt;
      v.kind = Value::Kind::String;
      v.text = std::move(*s);
      return v;
    }
    if (c == '-' || (c >= '0' && c <= '9')) return number();
    struct Literal {
      std::string_view word;
      Value::Kind kind;
      bool boolean;
    };
    static constexpr Literal kLiterals[] = {{"true", Value::Kind::Bool, true},
                                            {"false", Value::Kind::Bool, false},
                                            {"null", Value::Kind::Null, false}};
    for (const auto& lit : kLiterals) {
      if (text_.substr(pos_, lit.word.size()) == lit.word) {
        for (std::size_t i = 0; i < lit.word.size(); ++i) advance();
        v.kind = lit.kind;
        v.boolean = lit.boolean;
        return v;
      }
    }
    error(std::string("unexpected character '") + c + "'");
    return std::nullopt;
  }

  std::optional<Value> object(int depth) {
    Value v;
    v.kind = Value::Kind::Object;
    v.where = loc_;
    advance();  // {
    std::set<std::string> seen;
    skip_ws();
    if (peek() == '}') {
      advance();
      return v;
    }
    while (true) {
      skip_ws();
      const Location key_where = loc_;
      if (peek() != '"') {
        error(at_end() ? "unexpected end of input inside an object" : "expected a string key");
        if (at_end()) return v;
        recover();
      } else {
        auto key = string();
        skip_ws();
        if (key && peek() == ':') {
          advance();
          auto member = value(depth + 1);
          if (member) {
            if (!seen.insert(*key).second) {
              error_at(key_where, "duplicate key \"" + *key + "\"");
            } else {
              v.members.push_back({*key, key_where, std::move(*member)});
            }
          } else {
            recover();
          }
        } else {
          if (key) error("expected ':' after key");
          recover();
        }
      }
      skip_ws();
      if (peek() == ',') {
        advance();
        skip_ws();
        if (peek() == '}') {
          error("trailing comma before '}'");
          advance();
          return v;
        }
        continue;
      }
      if (peek() == '}') {
        advance();
        return v;
      }
      if (at_end()) {
        error("unexpected end of input, expected '}'");
        return v;
      }
      error("expected ',' or '}'");
      recover();
      if (peek() == ',') {
        advance();
        continue;
      }
      if (peek() == '}' || peek() == ']') advance();
      return v;
    }
  }

  std::optional<Value> array(int depth) {
    Value v;
    v.kind = Value::Kind::Array;
    v.where = loc_;
    advance();  // [
    skip_ws();
    if (peek() == ']') {
      advance();
      return v;
    }
    while (true) {
      auto item = value(depth + 1);
      if (item) {
        v.items.push_back(std::move(*item));
      } else {
        if (at_end()) return v;
        recover();
      }
      skip_ws();
      if (peek() == ',') {
        advance();
        skip_ws();
        if (peek() == ']') {
          error("trailing comma before ']'");
          advance();
          return v;
        }
        continue;
      }
      if (peek() == ']') {
        advance();
        return v;
      }
      if (at_end()) {
        error("unexpected end of input, expected ']'");
        return v;
      }
      error("expected ',' or ']'");
      recover();
      if (peek() == ',') {
        advance();
        continue;
      }
      if (peek() == '}' || peek() == ']') advance();
      return v;
    }
  }

  static void append_utf8(std::string& out, std::uint32_t cp) {
    if (cp < 0x80) {
      out += static_cast<char>(cp);
    } else if (cp < 0x800) {
      out += static_cast<char>(0xC0 | (cp >> 6));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
      out += static_cast<char>(0xE0 | (cp >> 12));
      out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
      out += static_cast<char>(0xF0 | (cp >> 18));
      out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
      out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    }
  }

  std::optional<std::uint32_t> hex4() {
    if (pos_ + 4 > text_.size()) return std::nullopt;
    std::uint32_t cp = 0;
    for (int i = 0; i < 4; ++i) {
      const char c = peek();
      cp <<= 4;
      if (c >= '0' && c <= '9') {
        cp |= static_cast<std::uint32_t>(c - '0');
      } else if (c >= 'a' && c <= 'f') {
        cp |= static_cast<std::uint32_t>(c - 'a' + 10);
      } else if (c >= 'A' && c <= 'F') {
        cp |= static_cast<std::uint32_t>(c - 'A' + 10);
      } else {
        return std::nullopt;
      }
      advance();
    }
    return cp;
  }

  std::optional<std::string> string() {
    const Location start = loc_;
    advance();  // "
    std::string out;
    while (true) {
      if (at_end() || peek() == '\n') {
        error_at(start, "unterminated string");
        return std::nullopt;
      }
      const char c = peek();
      if (c == '"') {
        advance();
        return out;
      }
      if (static_cast<unsigned char>(c) < 0x20) {
        error("control character in string");
        advance();
        continue;
      }
      if (c != '\\') {
        out += c;
        advance();
        continue;
      }
      advance();
      const char e = peek();
      advance();
      switch (e) {
        case '"': out += '"'; break;
        case '\\': out += '\\'; break;
        case '/': out += '/'; break;
        case 'b': out += '\b'; break;
        case 'f': out += '\f'; break;
        case 'n': out += '\n'; break;
        case 'r': out += '\r'; break;
        case 't': out += '\t'; break;
        case 'u': {
          auto cp = hex4();
          if (!cp) {
            error("bad \\u escape");
            break;
          }
          if (*cp >= 0xD800 && *cp < 0xDC00 && peek() == '\\' && pos_ + 1 < text_.size() &&
              text_[pos_ + 1] == 'u') {
            advance();
            advance();
            auto lo = hex4();
            if (lo && *lo >= 0xDC00 && *lo < 0xE000) {
              *cp = 0x10000 + ((*cp - 0xD800) << 10) + (*lo - 0xDC00);
            }
          }
          append_utf8(out, *cp);
          break;
        }
        default:
          error(std::string("unknown escape '\\") + e + "'");
      }
    }
  }

  std::optional<Value> number() {
    Value v;
    v.where = loc_;
    const std::size_t start = pos_;
    bool integral = true;
    if (peek() == '-') advance();
    if (peek() == '0') {
      advance();
    } else if (peek() >= '1' && peek() <= '9') {
      while (peek() >= '0' && peek() <= '9') advance();
    } else {
      error("malformed number");
      return std::nullopt;
    }
    if (peek() == '.') {
      integral = false;
      advance();
      if (!(peek() >= '0' && peek() <= '9')) {
        error("malformed number");
        return std::nullopt;
      }
      while (peek() >= '0' && peek() <= '9') advance();
    }
    if (peek() == 'e' || peek() == 'E') {
      integral = false;
      advance();
      if (peek() == '+' || peek() == '-') advance();
      if (!(peek() >= '0' && peek() <= '9')) {
        error("malformed number");
        return std::nullopt;
      }
      while (peek() >= '0' && peek() <= '9') advance();
    }
    const std::string_view raw = text_.substr(start, pos_ - start);
    v.text = std::string(raw);
    if (integral) {
      auto [p, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), v.integer);
      if (ec == std::errc() && p == raw.data() + raw.size()) {
        v.kind = Value::Kind::Integer;
        v.number = static_cast<double>(v.integer);
        return v;
      }
    }
    v.kind = Value::Kind::Number;
    v.number = std::stod(v.text);
    return v;
  }
};

}  // namespace

ParseResult parse(std::string_view text) { return Parser(text).run(); }

}  // namespace bipre::json
