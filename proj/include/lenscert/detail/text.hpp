#pragma once

#include <cctype>
#include <charconv>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "lenscert/error.hpp"

namespace lenscert {

namespace detail {

class LineScanner {
 public:
  LineScanner(std::string_view line, std::size_t line_no)
      : line_(line), line_no_(line_no) {}

  void skip_space() {
    while (pos_ < line_.size() && std::isspace(static_cast<unsigned char>(line_[pos_])))
      ++pos_;
  }

  bool at_end() {
    skip_space();
    return pos_ >= line_.size();
  }

  std::size_t column() const { return pos_ + 1; }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what, line_no_, column());
  }

  void expect(std::string_view token) {
    skip_space();
    if (line_.substr(pos_, token.size()) != token)
      fail("expected '" + std::string(token) + "'");
    pos_ += token.size();
  }

  std::size_t number() {
    skip_space();
    std::size_t value = 0;
    auto begin = line_.data() + pos_;
    auto [end, ec] = std::from_chars(begin, line_.data() + line_.size(), value);
    if (ec != std::errc{} || end == begin) fail("expected a non-negative integer");
    pos_ += static_cast<std::size_t>(end - begin);
    return value;
  }

  // Identifier: [A-Za-z_][A-Za-z0-9_]*
  std::string identifier() {
    skip_space();
    std::size_t start = pos_;
    if (pos_ < line_.size() &&
        (std::isalpha(static_cast<unsigned char>(line_[pos_])) || line_[pos_] == '_')) {
      ++pos_;
      while (pos_ < line_.size() &&
             (std::isalnum(static_cast<unsigned char>(line_[pos_])) || line_[pos_] == '_'))
        ++pos_;
    }
    if (pos_ == start) fail("expected an identifier");
    return std::string(line_.substr(start, pos_ - start));
  }

  bool peek(char c) {
    skip_space();
    return pos_ < line_.size() && line_[pos_] == c;
  }

  bool accept(std::string_view token) {
    skip_space();
    if (line_.substr(pos_, token.size()) != token) return false;
    pos_ += token.size();
    return true;
  }

  long long signed_number() {
    skip_space();
    long long value = 0;
    auto begin = line_.data() + pos_;
    auto [end, ec] = std::from_chars(begin, line_.data() + line_.size(), value);
    if (ec != std::errc{} || end == begin) fail("expected an integer");
    pos_ += static_cast<std::size_t>(end - begin);
    return value;
  }

  std::string_view rest() {
    skip_space();
    return line_.substr(pos_);
  }

  std::size_t line_number() const { return line_no_; }

  // Up to `count` non-space characters, whitespace between them ignored.
  std::string chars(std::size_t count) {
    std::string out;
    while (out.size() < count) {
      skip_space();
      if (pos_ >= line_.size()) break;
      out.push_back(line_[pos_++]);
    }
    return out;
  }

 private:
  std::string_view line_;
  std::size_t line_no_;
  std::size_t pos_ = 0;
};

inline std::string_view strip_comment(std::string_view line) {
  auto hash = line.find('#');
  return hash == std::string_view::npos ? line : line.substr(0, hash);
}


// Splits text into numbered, comment-stripped, non-blank lines.
class Lines {
 public:
  explicit Lines(std::string_view text) {
    std::size_t start = 0;
    std::size_t no = 0;
    while (start <= text.size()) {
      auto nl = text.find('\n', start);
      auto raw = text.substr(start, nl == std::string_view::npos ? text.size() - start
                                                                  : nl - start);
      start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
      ++no;
      auto body = strip_comment(raw);
      bool blank = true;
      for (char c : body)
        if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
      if (!blank) lines_.push_back({body, no});
    }
  }

  bool done() const { return next_ >= lines_.size(); }

  LineScanner next(const char* what) {
    if (done())
      throw ParseError(std::string("unexpected end of input, expected ") + what,
                       lines_.empty() ? 0 : lines_.back().second + 1, 1);
    auto [body, no] = lines_[next_++];
    return LineScanner(body, no);
  }

  LineScanner peek() const {
    auto [body, no] = lines_[next_];
    return LineScanner(body, no);
  }

 private:
  std::vector<std::pair<std::string_view, std::size_t>> lines_;
  std::size_t next_ = 0;
};

}  // namespace detail

}  // namespace lenscert
