#include "forcelab/sexpr.hpp"

#include "forcelab/error.hpp"

namespace forcelab {

namespace {

bool is_delimiter(char c) {
  return c == '(' || c == ')' || c == ';' || c == '"' || c == ' ' || c == '\t' || c == '\n' || c == '\r';
}

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  std::vector<SExpr> all() {
    std::vector<SExpr> out;
    skip();
    while (pos_ < text_.size()) {
      out.push_back(expr());
      skip();
    }
    return out;
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        advance();
      } else {
        return;
      }
    }
  }

  SExpr expr() {
    SExpr e;
    e.line = line_;
    e.column = column_;
    char c = text_[pos_];
    if (c == ')') throw ParseError("unexpected ')'", line_, column_);
    if (c == '(') {
      e.list = true;
      advance();
      skip();
      while (true) {
        if (pos_ >= text_.size()) throw ParseError("unclosed '('", e.line, e.column);
        if (text_[pos_] == ')') break;
        e.items.push_back(expr());
        skip();
      }
      advance();
      return e;
    }
    if (c == '"') {
      advance();
      while (true) {
        if (pos_ >= text_.size()) throw ParseError("unterminated string", e.line, e.column);
        char d = text_[pos_];
        if (d == '"') break;
        if (d == '\\') {
          advance();
          if (pos_ >= text_.size()) throw ParseError("unterminated string", e.line, e.column);
          d = text_[pos_];
          if (d != '"' && d != '\\') throw ParseError("unknown escape", line_, column_);
        }
        e.atom.push_back(d);
        advance();
      }
      advance();
      return e;
    }
    while (pos_ < text_.size() && !is_delimiter(text_[pos_])) {
      e.atom.push_back(text_[pos_]);
      advance();
    }
    return e;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

}  // namespace

std::vector<SExpr> parse_sexprs(std::string_view text) { return Reader(text).all(); }

std::string to_string(const SExpr& e) {
  if (e.list) {
    std::string out = "(";
    for (std::size_t i = 0; i < e.items.size(); ++i) {
      if (i > 0) out += ' ';
      out += to_string(e.items[i]);
    }
    return out + ")";
  }
  bool plain = !e.atom.empty();
  for (char c : e.atom) plain = plain && !is_delimiter(c);
  if (plain) return e.atom;
  std::string out = "\"";
  for (char c : e.atom) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace forcelab
