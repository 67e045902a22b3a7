// Shared tokenizer for the theory, world, and profile formats.

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "mebn/diagnostics.hpp"

namespace mebn::detail {

enum class TokKind {
  Ident,
  Number,
  LBrace,
  RBrace,
  LParen,
  RParen,
  Comma,
  Semicolon,
  Colon,
  Assign,  // =
  Equals,  // ==
  Arrow,   // ->
  End,
  Bad,
};

struct Token {
  TokKind kind = TokKind::End;
  std::string text;
  SourceSpan span;
};

class Lexer {
 public:
  Lexer(std::string_view text, std::string_view filename)
      : text_(text), file_(filename) {}

  // Tokenizes the whole input. A Bad token (at most one, terminating the
  // stream) carries the offending character.
  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_ws_and_comments();
      SourceSpan span{std::string(file_), line_, col_};
      if (pos_ >= text_.size()) {
        out.push_back({TokKind::End, "", span});
        return out;
      }
      char c = text_[pos_];
      if (is_ident_start(c)) {
        size_t start = pos_;
        while (pos_ < text_.size() && is_ident_char(text_[pos_])) advance();
        out.push_back({TokKind::Ident, std::string(text_.substr(start, pos_ - start)), span});
        continue;
      }
      if ((c >= '0' && c <= '9') || c == '.' ||
          ((c == '-' || c == '+') && pos_ + 1 < text_.size() && is_num_start(text_[pos_ + 1]))) {
        // "->" must win over a negative-number reading of '-'.
        if (c == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
          advance();
          advance();
          out.push_back({TokKind::Arrow, "->", span});
          continue;
        }
        size_t start = pos_;
        if (c == '-' || c == '+') advance();
        while (pos_ < text_.size() && is_num_char(text_[pos_])) advance();
        out.push_back({TokKind::Number, std::string(text_.substr(start, pos_ - start)), span});
        continue;
      }
      switch (c) {
        case '{': advance(); out.push_back({TokKind::LBrace, "{", span}); continue;
        case '}': advance(); out.push_back({TokKind::RBrace, "}", span}); continue;
        case '(': advance(); out.push_back({TokKind::LParen, "(", span}); continue;
        case ')': advance(); out.push_back({TokKind::RParen, ")", span}); continue;
        case ',': advance(); out.push_back({TokKind::Comma, ",", span}); continue;
        case ';': advance(); out.push_back({TokKind::Semicolon, ";", span}); continue;
        case ':': advance(); out.push_back({TokKind::Colon, ":", span}); continue;
        case '=':
          advance();
          if (pos_ < text_.size() && text_[pos_] == '=') {
            advance();
            out.push_back({TokKind::Equals, "==", span});
          } else {
            out.push_back({TokKind::Assign, "=", span});
          }
          continue;
        case '-':
          if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
            advance();
            advance();
            out.push_back({TokKind::Arrow, "->", span});
            continue;
          }
          break;
        default: break;
      }
      out.push_back({TokKind::Bad, std::string(1, c), span});
      return out;
    }
  }

 private:
  static bool is_ident_start(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
  }
  static bool is_ident_char(char c) {
    return is_ident_start(c) || (c >= '0' && c <= '9') || c == '_';
  }
  static bool is_num_start(char c) { return (c >= '0' && c <= '9') || c == '.'; }
  static bool is_num_char(char c) {
    return (c >= '0' && c <= '9') || c == '.' || c == 'e' || c == 'E' || c == '-' || c == '+';
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_ws_and_comments() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '/') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else {
        return;
      }
    }
  }

  std::string_view text_;
  std::string_view file_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

}  // namespace mebn::detail
