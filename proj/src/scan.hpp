#pragma once

#include <cctype>
#include <string>

#include "recmon/errors.hpp"

namespace recmon::detail {

/* Cursor over an input string, shared by the formula, monitor, trace, and
 * LTL parsers. Offsets reported in SyntaxError are byte offsets into the
 * original text. */
class Scanner {
 public:
  explicit Scanner(std::string text) : text_(std::move(text)) {}

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  // Peeks past the current char without consuming anything (no ws skip after it).
  char peek2() {
    skip_ws();
    return pos_ + 1 < text_.size() ? text_[pos_ + 1] : '\0';
  }

  size_t pos() {
    skip_ws();
    return pos_;
  }

  bool try_eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c, const std::string& what) {
    if (!try_eat(c)) throw SyntaxError("expected '" + std::string(1, c) + "' " + what, pos());
  }

  // Longest [A-Za-z][A-Za-z0-9_]* run; empty if next char is not a letter.
  std::string try_word() {
    skip_ws();
    size_t start = pos_;
    if (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
      while (pos_ < text_.size()) {
        unsigned char c = static_cast<unsigned char>(text_[pos_]);
        if (std::isalnum(c) || c == '_') ++pos_;
        else break;
      }
    }
    return text_.substr(start, pos_ - start);
  }

  // Restores the cursor to just before the last try_word result.
  void put_back(const std::string& word) { pos_ -= word.size(); }

  void expect_end(const std::string& what) {
    if (!at_end()) throw SyntaxError("unexpected trailing input in " + what, pos());
  }

 private:
  std::string text_;
  size_t pos_ = 0;
};

}  // namespace recmon::detail
