#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace forcelab {

// Atom or parenthesized list; positions are 1-based. Quoted atoms keep their
// unescaped text and are otherwise atoms like any other.
struct SExpr {
  bool list = false;
  std::string atom;
  std::vector<SExpr> items;
  std::size_t line = 0;
  std::size_t column = 0;

  static SExpr make_atom(std::string text) {
    SExpr e;
    e.atom = std::move(text);
    return e;
  }
  static SExpr make_list(std::vector<SExpr> items) {
    SExpr e;
    e.list = true;
    e.items = std::move(items);
    return e;
  }

  bool is_atom() const { return !list; }
  // A list whose first item is the atom `head`.
  bool is_form(std::string_view head) const {
    return list && !items.empty() && items[0].is_atom() && items[0].atom == head;
  }

  // Structural equality, ignoring positions.
  friend bool operator==(const SExpr& a, const SExpr& b) {
    return a.list == b.list && a.atom == b.atom && a.items == b.items;
  }
};

// Top-level expressions; `;` starts a comment running to the end of the line.
// Throws ParseError with the position of the offending character.
std::vector<SExpr> parse_sexprs(std::string_view text);

// Single-line form with single spaces; atoms are quoted when they would not
// read back as one atom.
std::string to_string(const SExpr& e);

}  // namespace forcelab
