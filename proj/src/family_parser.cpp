#include <cctype>
#include <string>

#include "jacobi/errors.hpp"
#include "jacobi/io.hpp"
#include "jacobi/sequences.hpp"

namespace jacobi {

std::optional<double> FamilySpec::number(std::string_view key) const {
  for (const auto& p : params)
    if (p.key == key) {
      if (auto v = std::get_if<double>(&p.value)) return *v;
      return std::nullopt;
    }
  return std::nullopt;
}

std::optional<std::string> FamilySpec::word(std::string_view key) const {
  for (const auto& p : params)
    if (p.key == key) {
      if (auto v = std::get_if<std::string>(&p.value)) return *v;
      return std::nullopt;
    }
  return std::nullopt;
}

bool FamilySpec::has(std::string_view key) const {
  for (const auto& p : params)
    if (p.key == key) return true;
  return false;
}

namespace {

bool is_lower(char c) { return c >= 'a' && c <= 'z'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

constexpr std::string_view kFamilies[] = {"pow",     "pow-shifted", "paired", "factorial-staircase",
                                          "iterlog", "chihara",     "const",  "table",
                                          "bd"};

bool known_family(std::string_view name) {
  for (auto f : kFamilies)
    if (f == name) return true;
  return false;
}

class Parser {
public:
  explicit Parser(std::string_view text) : text_(text) {}

  FamilySpec parse() {
    if (text_.empty()) throw SpecError("empty family text", 0);
    FamilySpec spec;
    spec.family = word("family name");
    if (!known_family(spec.family)) throw SpecError("unknown family '" + spec.family + "'", 0);
    if (at_end()) return spec;
    expect(':');
    if (spec.family == "table") {
      if (at_end()) throw SpecError("table needs a file path", pos_);
      spec.params.push_back({"file", std::string(text_.substr(pos_))});
      return spec;
    }
    do {
      spec.params.push_back(param());
    } while (accept(','));
    if (!at_end()) throw SpecError(std::string("unexpected character '") + text_[pos_] + "'", pos_);
    return spec;
  }

private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (at_end()) throw SpecError(std::string("expected '") + c + "' but text ended", pos_);
      throw SpecError(std::string("expected '") + c + "'", pos_);
    }
  }

  std::string word(const char* what) {
    std::size_t start = pos_;
    if (!is_lower(peek())) throw SpecError(std::string("expected ") + what, pos_);
    while (is_lower(peek()) || is_digit(peek()) || peek() == '_' || peek() == '-') ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  std::string key() {
    std::size_t start = pos_;
    if (!is_alpha(peek())) throw SpecError("expected parameter name", pos_);
    while (is_alpha(peek()) || is_digit(peek()) || peek() == '_') ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  double number() {
    std::size_t start = pos_;
    if (peek() == '+' || peek() == '-') ++pos_;
    std::size_t digits = 0;
    while (is_digit(peek())) ++pos_, ++digits;
    if (accept('.'))
      while (is_digit(peek())) ++pos_, ++digits;
    if (digits == 0) throw SpecError("expected number", start);
    if (peek() == 'e' || peek() == 'E') {
      ++pos_;
      if (peek() == '+' || peek() == '-') ++pos_;
      if (!is_digit(peek())) throw SpecError("malformed exponent", pos_);
      while (is_digit(peek())) ++pos_;
    }
    double v = 0.0;
    if (!io::parse_number(text_.substr(start, pos_ - start), v))
      throw SpecError("number out of range", start);
    return v;
  }

  FamilyParam param() {
    FamilyParam p;
    p.key = key();
    expect('=');
    if (at_end()) throw SpecError("missing value for '" + p.key + "'", pos_);
    if (is_lower(peek())) {
      std::size_t start = pos_;
      auto w = word("value");
      if (p.key == "inner" && !known_family(w)) throw SpecError("unknown family '" + w + "'", start);
      p.value = std::move(w);
    } else
      p.value = number();
    return p;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

FamilySpec parse_family(std::string_view text) { return Parser(text).parse(); }

std::string render(const FamilySpec& spec) {
  std::string out = spec.family;
  if (spec.family == "table") {
    if (auto file = spec.word("file")) out += ":" + *file;
    return out;
  }
  for (std::size_t i = 0; i < spec.params.size(); ++i) {
    out += i == 0 ? ':' : ',';
    out += spec.params[i].key;
    out += '=';
    if (auto v = std::get_if<double>(&spec.params[i].value))
      out += io::format_shortest(*v);
    else
      out += std::get<std::string>(spec.params[i].value);
  }
  return out;
}

}  // namespace jacobi
