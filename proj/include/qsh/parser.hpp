#pragma once

#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "qsh/diamond.hpp"
#include "qsh/product.hpp"

namespace qsh {

/// Expression syntax tree.
///
///   sum     := ['+'|'-'] product (('+'|'-') product)*
///   product := term ('*' term)*              '*' is the stuffle product
///   term    := factor+                       juxtaposition is concatenation
///   factor  := rational | 'h' ['^' int] | word | '(' sum ')' | name '(' sum (',' sum)* ')'
///   word    := letter+                       letter := [abcxy] | ('z'|'e') digits
///
/// Indexed letters must be followed by whitespace or punctuation.
struct Expr {
  enum class Kind { word, scalar, sum, concat, call };

  Kind kind = Kind::scalar;
  std::size_t offset = 0;
  AlphabetRef alphabet;        // word
  Word word;                   // word
  Laurent scalar;              // scalar
  std::string name;            // call
  std::vector<Expr> children;  // sum, concat, call
  std::vector<int> signs;      // sum: +1 or -1 per child
};

/// Functions accepted in call position, with their arity.
inline const std::map<std::string, int, std::less<>>& expression_functions() {
  static const std::map<std::string, int, std::less<>> fns{
      {"tau", 1},      {"sigma", 1}, {"stuffle", 2}, {"shuffle", 2}, {"qstuffle", 2}, {"qshuffle", 2},
      {"shsh", 2},     {"ex3", 2},   {"ex4", 2},     {"ds", 2},      {"D", 2}};
  return fns;
}

namespace detail {

inline bool builtin_alphabet(const AlphabetRef& a) {
  return is_xy(a) || is_ab(a) || is_z(a) || is_e(a) || same_alphabet(a, alphabets::abc());
}

class Parser {
 public:
  Parser(std::string_view text, AlphabetRef user) : s_(text), user_(std::move(user)) {
    if (user_ && builtin_alphabet(user_)) user_ = nullptr;
  }

  Expr parse_all() {
    skip();
    if (at_end()) fail("empty expression", {"term"});
    Expr e = sum();
    skip();
    if (!at_end()) fail(std::string("unexpected '") + s_[pos_] + "'", {"+", "-", "*", "end of input"});
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg, std::vector<std::string> expected, std::optional<std::size_t> at = {}) {
    const std::size_t off = at.value_or(pos_);
    throw parse_error(msg + " at offset " + std::to_string(off), off, std::move(expected));
  }

  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return at_end() ? '\0' : s_[pos_]; }
  void skip() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  Expr sum() {
    Expr out;
    out.kind = Expr::Kind::sum;
    out.offset = pos_;
    int sign = 1;
    skip();
    if (peek() == '+' || peek() == '-') {
      sign = peek() == '-' ? -1 : 1;
      ++pos_;
    }
    out.children.push_back(product());
    out.signs.push_back(sign);
    for (;;) {
      skip();
      if (peek() != '+' && peek() != '-') break;
      out.signs.push_back(peek() == '-' ? -1 : 1);
      ++pos_;
      out.children.push_back(product());
    }
    if (out.children.size() == 1 && out.signs.front() == 1) return std::move(out.children.front());
    return out;
  }

  Expr product() {
    Expr left = term();
    for (;;) {
      skip();
      if (peek() != '*') break;
      const std::size_t at = pos_++;
      Expr right = term();
      Expr call;
      call.kind = Expr::Kind::call;
      call.offset = at;
      call.name = "stuffle";
      call.children.push_back(std::move(left));
      call.children.push_back(std::move(right));
      left = std::move(call);
    }
    return left;
  }

  bool starts_factor() const {
    const char c = peek();
    return std::isdigit(static_cast<unsigned char>(c)) || c == '(' || std::isalpha(static_cast<unsigned char>(c));
  }

  Expr term() {
    skip();
    Expr out;
    out.kind = Expr::Kind::concat;
    out.offset = pos_;
    while (starts_factor()) {
      out.children.push_back(factor());
      skip();
    }
    if (out.children.empty()) fail("expected a term", {"rational", "h", "letter", "(", "function"});
    if (out.children.size() == 1) return std::move(out.children.front());
    return out;
  }

  long integer(bool allow_sign) {
    const std::size_t start = pos_;
    if (allow_sign && peek() == '-') ++pos_;
    const std::size_t digits = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (pos_ == digits) fail("expected an integer", {"integer"});
    const std::string text(s_.substr(start, pos_ - start));
    if (text.size() > 9) fail("integer too large", {"integer"}, start);
    return std::stol(text);
  }

  Expr factor() {
    const std::size_t start = pos_;
    const char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      if (peek() == '/') {
        ++pos_;
        const std::size_t den = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (pos_ == den) fail("expected a denominator", {"digits"});
      }
      Expr e;
      e.offset = start;
      try {
        e.scalar = Laurent(parse_rational(s_.substr(start, pos_ - start)));
      } catch (const std::exception& ex) {
        fail(ex.what(), {"rational"}, start);
      }
      return e;
    }
    if (c == '(') {
      ++pos_;
      Expr e = sum();
      skip();
      if (peek() != ')') fail("expected ')'", {")"});
      ++pos_;
      return e;
    }
    std::size_t end = pos_;
    while (end < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[end])) || s_[end] == '_')) ++end;
    const std::string_view ident = s_.substr(start, end - start);
    if (ident == "h") {
      pos_ = end;
      long k = 1;
      skip();
      if (peek() == '^') {
        ++pos_;
        skip();
        k = integer(true);
      }
      Expr e;
      e.offset = start;
      e.scalar = Laurent::hbar(static_cast<int>(k));
      return e;
    }
    std::size_t after = end;
    while (after < s_.size() && std::isspace(static_cast<unsigned char>(s_[after]))) ++after;
    const bool call_syntax = after < s_.size() && s_[after] == '(';
    auto fn = expression_functions().find(ident);
    if (call_syntax && fn != expression_functions().end()) {
      pos_ = after + 1;
      Expr e;
      e.kind = Expr::Kind::call;
      e.offset = start;
      e.name = std::string(ident);
      for (;;) {
        e.children.push_back(sum());
        skip();
        if (peek() == ',') {
          ++pos_;
          continue;
        }
        if (peek() == ')') {
          ++pos_;
          break;
        }
        fail("expected ',' or ')'", {",", ")"});
      }
      if (static_cast<int>(e.children.size()) != fn->second)
        fail(e.name + " takes " + std::to_string(fn->second) + " argument(s), got " + std::to_string(e.children.size()),
             {}, start);
      return e;
    }
    return user_ ? user_word(start, end, call_syntax) : builtin_word(start, end, call_syntax);
  }

  // Letters of the built-in alphabets inside one identifier run.
  Expr builtin_word(std::size_t start, std::size_t end, bool call_syntax) {
    std::vector<Letter> letters;
    AlphabetRef alphabet;
    auto join = [&](const AlphabetRef& a, std::size_t at) {
      if (!alphabet) {
        alphabet = a;
      } else if (!same_alphabet(alphabet, a)) {
        const bool abc_mix = (is_ab(alphabet) && same_alphabet(a, alphabets::abc())) ||
                             (same_alphabet(alphabet, alphabets::abc()) && is_ab(a));
        if (!abc_mix) fail("letters of different alphabets in one word", {}, at);
        alphabet = alphabets::abc();
      }
    };
    std::size_t i = start;
    while (i < end) {
      const char ch = s_[i];
      if (ch == 'x' || ch == 'y') {
        join(alphabets::xy(), i);
        letters.push_back(Letter{ch == 'x' ? 0 : 1});
        ++i;
      } else if (ch == 'a' || ch == 'b' || ch == 'c') {
        join(ch == 'c' ? alphabets::abc() : alphabets::ab(), i);
        letters.push_back(Letter{ch - 'a'});
        ++i;
      } else if (ch == 'z' || ch == 'e') {
        const std::size_t at = i++;
        const auto& a = ch == 'z' ? alphabets::z() : alphabets::e();
        join(a, at);
        if (i == end && i < s_.size() && s_[i] == '-' && i + 1 < s_.size() &&
            std::isdigit(static_cast<unsigned char>(s_[i + 1]))) {
          std::size_t j = i + 1;
          while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
          fail("index " + std::string(s_.substr(i, j - i)) + " out of domain for " + ch, {"index >= " + std::to_string(a->min_index())}, at);
        }
        const std::size_t d = i;
        while (i < end && std::isdigit(static_cast<unsigned char>(s_[i]))) ++i;
        if (i == d) fail(std::string("expected an index after '") + ch + "'", {"digits"}, i);
        if (i - d > 9) fail("index too large", {}, d);
        const int k = std::stoi(std::string(s_.substr(d, i - d)));
        if (k < a->min_index())
          fail("index " + std::to_string(k) + " out of domain for " + ch, {"index >= " + std::to_string(a->min_index())}, at);
        if (i < end) fail("expected whitespace after indexed letter", {"whitespace"}, i);
        letters.push_back(Letter{k});
      } else {
        if (call_syntax) fail("unknown function '" + std::string(s_.substr(start, end - start)) + "'", function_names(), start);
        fail(std::string("unknown letter '") + ch + "'", {"a", "b", "c", "x", "y", "z<k>", "e<k>", "h"}, i);
      }
    }
    pos_ = end;
    Expr e;
    e.kind = Expr::Kind::word;
    e.offset = start;
    e.alphabet = alphabet;
    e.word = Word(std::move(letters));
    return e;
  }

  // Greedy longest-match of the user alphabet's symbols.
  Expr user_word(std::size_t start, std::size_t end, bool call_syntax) {
    std::vector<Letter> letters;
    std::size_t i = start;
    while (i < end) {
      std::optional<Letter> best;
      std::size_t best_len = 0;
      for (const auto& l : user_->letters(0)) {
        const std::string sym = user_->symbol(l);
        if (sym.size() > best_len && s_.substr(i, sym.size()) == sym && i + sym.size() <= end) {
          best = l;
          best_len = sym.size();
        }
      }
      if (!best) {
        if (call_syntax) fail("unknown function '" + std::string(s_.substr(start, end - start)) + "'", function_names(), start);
        fail("unknown letter in alphabet " + user_->name(), user_->symbols(), i);
      }
      letters.push_back(*best);
      i += best_len;
    }
    pos_ = end;
    Expr e;
    e.kind = Expr::Kind::word;
    e.offset = start;
    e.alphabet = user_;
    e.word = Word(std::move(letters));
    return e;
  }

  static std::vector<std::string> function_names() {
    std::vector<std::string> out;
    for (const auto& [n, a] : expression_functions()) out.push_back(n);
    return out;
  }

  std::string_view s_;
  AlphabetRef user_;
  std::size_t pos_ = 0;
};

// Either a constant (no alphabet yet) or a polynomial.
struct Value {
  std::optional<NCPoly> poly;
  Laurent scalar;
};

inline NCPoly promote(const NCPoly& p, const AlphabetRef& target) {
  if (same_alphabet(p.alphabet(), target)) return p;
  if (same_alphabet(target, alphabets::abc())) {
    NCPoly ab = to_letter_form(p);
    require_same_alphabet(ab.alphabet(), alphabets::ab());
    NCPoly out(target);
    for (const auto& [w, c] : ab.terms()) out.add_term(w, c);
    return out;
  }
  return convert(p, target);
}

// Common alphabet for combining two polynomials.
inline AlphabetRef common_alphabet(const AlphabetRef& a, const AlphabetRef& b) {
  if (same_alphabet(a, b)) return a;
  const auto& abc = alphabets::abc();
  auto family = [&](const AlphabetRef& x) {
    if (is_xy(x) || is_z(x)) return 0;
    if (is_ab(x) || is_e(x) || same_alphabet(x, abc)) return 1;
    return 2;
  };
  if (family(a) != family(b) || family(a) == 2) throw alphabet_mismatch("cannot combine alphabets " + a->name() + " and " + b->name());
  if (same_alphabet(a, abc) || same_alphabet(b, abc)) return abc;
  return family(a) == 0 ? alphabets::xy() : alphabets::ab();
}

inline NCPoly as_poly(const Value& v, const AlphabetRef& a) {
  if (v.poly) return promote(*v.poly, a);
  return NCPoly(a, Word{}, v.scalar);
}

inline Value eval(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::word:
      return Value{NCPoly(e.alphabet, e.word), Laurent()};
    case Expr::Kind::scalar:
      return Value{std::nullopt, e.scalar};
    case Expr::Kind::sum: {
      Value acc{std::nullopt, Laurent()};
      for (std::size_t i = 0; i < e.children.size(); ++i) {
        Value v = eval(e.children[i]);
        const Laurent s(e.signs[i]);
        if (!acc.poly && !v.poly) {
          acc.scalar += s * v.scalar;
        } else {
          const AlphabetRef a = acc.poly && v.poly ? common_alphabet(acc.poly->alphabet(), v.poly->alphabet())
                                                   : (acc.poly ? acc.poly->alphabet() : v.poly->alphabet());
          NCPoly p = as_poly(acc, a);
          p.add_scaled(as_poly(v, a), s);
          acc = Value{std::move(p), Laurent()};
        }
      }
      return acc;
    }
    case Expr::Kind::concat: {
      Value acc{std::nullopt, Laurent(1)};
      for (const auto& c : e.children) {
        Value v = eval(c);
        if (!v.poly) {
          if (acc.poly) *acc.poly *= v.scalar;
          else acc.scalar *= v.scalar;
        } else if (!acc.poly) {
          acc = Value{acc.scalar * *v.poly, Laurent()};
        } else {
          const AlphabetRef a = common_alphabet(acc.poly->alphabet(), v.poly->alphabet());
          acc = Value{nc_mul(promote(*acc.poly, a), promote(*v.poly, a)), Laurent()};
        }
      }
      return acc;
    }
    case Expr::Kind::call: {
      std::vector<Value> args;
      for (const auto& c : e.children) args.push_back(eval(c));
      if (e.name == "tau" || e.name == "sigma") {
        if (!args[0].poly) {
          if (e.name == "tau" && !args[0].scalar.is_rational()) throw std::domain_error("tau needs rational coefficients");
          return args[0];
        }
        return Value{e.name == "tau" ? tau(*args[0].poly) : sigma(*args[0].poly), Laurent()};
      }
      if (!args[0].poly && !args[1].poly) {
        if (e.name == "ds" || e.name == "D") return Value{std::nullopt, Laurent()};
        return Value{std::nullopt, args[0].scalar * args[1].scalar};
      }
      if (e.name == "ds" || e.name == "D") {
        const AlphabetRef& a = args[0].poly ? args[0].poly->alphabet() : args[1].poly->alphabet();
        NCPoly u = as_poly(args[0], a), v = as_poly(args[1], a);
        return Value{e.name == "ds" ? ds(u, v) : dpart(u, v), Laurent()};
      }
      const ProductHandle& h = builtin_handle(e.name);
      const AlphabetRef& first = args[0].poly ? args[0].poly->alphabet() : args[1].poly->alphabet();
      if (e.name == "ex3" || e.name == "ex4") {
        NCPoly out = gqsh(h, as_poly(args[0], h.alphabet()), as_poly(args[1], h.alphabet()));
        return Value{std::move(out), Laurent()};
      }
      // Constants act as multiples of 1 in the first operand's alphabet.
      NCPoly u = as_poly(args[0], first), v = as_poly(args[1], first);
      return Value{named_product(e.name, u, v), Laurent()};
    }
  }
  return {};
}

}  // namespace detail

/// Parses an expression. `user` is a custom finite alphabet whose symbols
/// replace the built-in letters.
inline Expr parse(std::string_view text, AlphabetRef user = nullptr) {
  return detail::Parser(text, std::move(user)).parse_all();
}

/// Evaluates an expression; a constant result becomes a multiple of 1 over
/// `context`.
inline NCPoly evaluate(const Expr& e, const AlphabetRef& context = nullptr) {
  detail::Value v = detail::eval(e);
  if (v.poly) return *v.poly;
  if (!context) throw std::invalid_argument("constant expression needs an alphabet");
  return NCPoly(context, Word{}, v.scalar);
}

inline NCPoly parse_poly(std::string_view text, const AlphabetRef& context = nullptr, AlphabetRef user = nullptr) {
  return evaluate(parse(text, std::move(user)), context);
}

/// Reads a rule description:
///
///   # comment
///   name: my-rule                  (optional)
///   alphabet: a b                  (symbols, or XY / AB / ABC)
///   a a -> h a
///   a b -> -ab
///   ...
///
/// Every ordered letter pair needs exactly one line.
inline DiamondRule parse_rule(std::string_view text, std::string default_name = "user") {
  std::string name = std::move(default_name);
  AlphabetRef alphabet;
  DiamondRule::Table table;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t offset = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return std::string();
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    const std::size_t line_offset = offset;
    offset += line.size() + 1;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.rfind("name:", 0) == 0) {
      name = trim(line.substr(5));
      continue;
    }
    if (line.rfind("alphabet:", 0) == 0) {
      std::istringstream syms(line.substr(9));
      std::vector<std::string> symbols;
      for (std::string s; syms >> s;) symbols.push_back(s);
      if (symbols.size() == 1) {
        try {
          alphabet = alphabets::by_name(symbols.front());
          continue;
        } catch (const unknown_name&) {
        }
      }
      for (const auto& builtin : {alphabets::xy(), alphabets::ab(), alphabets::abc()})
        if (builtin->symbols() == symbols) alphabet = builtin;
      if (!alphabet) {
        std::string label = "{";
        for (std::size_t i = 0; i < symbols.size(); ++i) label += (i ? "," : "") + symbols[i];
        alphabet = Alphabet::make_finite(label + "}", symbols);
      }
      if (alphabet->is_indexed()) throw parse_error("rule alphabet must be finite", line_offset, {"symbols"});
      continue;
    }
    if (!alphabet) throw parse_error("rule entry before 'alphabet:' header", line_offset, {"alphabet:"});
    const auto arrow = line.find("->");
    if (arrow == std::string::npos) throw parse_error("expected 'x y -> expression'", line_offset, {"->"});
    std::istringstream lhs(line.substr(0, arrow));
    std::string x, y, extra;
    if (!(lhs >> x >> y) || (lhs >> extra)) throw parse_error("expected two letters before '->'", line_offset, alphabet->symbols());
    auto lx = alphabet->find(x), ly = alphabet->find(y);
    if (!lx || !ly) throw parse_error("unknown letter in rule entry", line_offset, alphabet->symbols());
    NCPoly value(alphabet);
    try {
      value = detail::promote(parse_poly(line.substr(arrow + 2), alphabet, alphabet), alphabet);
    } catch (const parse_error& e) {
      throw parse_error(e.what(), line_offset + arrow + 2 + e.offset(), e.expected());
    }
    if (!table.emplace(std::make_pair(*lx, *ly), value).second)
      throw parse_error("duplicate entry for (" + x + ", " + y + ")", line_offset, {});
  }
  if (!alphabet) throw parse_error("missing 'alphabet:' header", 0, {"alphabet:"});
  return DiamondRule::from_table(std::move(name), alphabet, std::move(table));
}

}  // namespace qsh
