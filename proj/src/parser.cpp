#include "cnetkat/parser.hpp"

#include <cctype>

#include "cnetkat/errors.hpp"

namespace cnetkat {

namespace {

enum class Tok {
  End,
  Ident,    // identifiers and values (alphanumeric, underscore)
  Semi,     // ;
  Plus,     // +
  Par,      // ||
  Star,     // *
  LParen,
  RParen,
  LBrace,
  RBrace,
  LBracket,
  RBracket,
  Comma,
  Eq,       // =
  Arrow,    // <-
  ObsAnd,   // conjunction of observations
  ObsOr,    // disjunction of observations
  ObsNot,   // pseudocomplement
};

struct Token {
  Tok kind;
  std::string text;
  int line;
  int col;
};

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) { advance(); }

  const Token& peek() const { return cur_; }
  Token next() {
    Token t = cur_;
    advance();
    return t;
  }

 private:
  void advance() {
    skip_space();
    cur_.line = line_;
    cur_.col = col_;
    if (pos_ >= src_.size()) {
      cur_.kind = Tok::End;
      cur_.text.clear();
      return;
    }
    char c = src_[pos_];
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
              src_[pos_] == '_')) {
        step();
      }
      cur_.kind = Tok::Ident;
      cur_.text = src_.substr(start, pos_ - start);
      return;
    }
    auto two = [&](char a, char b) {
      return c == a && pos_ + 1 < src_.size() && src_[pos_ + 1] == b;
    };
    if (two('|', '|')) {
      step();
      step();
      cur_.kind = Tok::Par;
      cur_.text = "||";
      return;
    }
    if (two('<', '-')) {
      step();
      step();
      cur_.kind = Tok::Arrow;
      cur_.text = "<-";
      return;
    }
    if (two('/', '\\')) {
      step();
      step();
      cur_.kind = Tok::ObsAnd;
      cur_.text = "/\\";
      return;
    }
    if (two('\\', '/')) {
      step();
      step();
      cur_.kind = Tok::ObsOr;
      cur_.text = "\\/";
      return;
    }
    step();
    switch (c) {
      case ';': cur_.kind = Tok::Semi; break;
      case '+': cur_.kind = Tok::Plus; break;
      case '*': cur_.kind = Tok::Star; break;
      case '(': cur_.kind = Tok::LParen; break;
      case ')': cur_.kind = Tok::RParen; break;
      case '{': cur_.kind = Tok::LBrace; break;
      case '}': cur_.kind = Tok::RBrace; break;
      case '[': cur_.kind = Tok::LBracket; break;
      case ']': cur_.kind = Tok::RBracket; break;
      case ',': cur_.kind = Tok::Comma; break;
      case '=': cur_.kind = Tok::Eq; break;
      case '~': cur_.kind = Tok::ObsNot; break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'",
                         cur_.line, cur_.col);
    }
    cur_.text = std::string(1, c);
  }

  void skip_space() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '#' || (c == '/' && pos_ + 1 < src_.size() &&
                       src_[pos_ + 1] == '/')) {
        while (pos_ < src_.size() && src_[pos_] != '\n') step();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        step();
      } else {
        break;
      }
    }
  }

  void step() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  const std::string& src_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  Token cur_;
};

bool is_decl_keyword(const Token& t) {
  return t.kind == Tok::Ident &&
         (t.text == "fields" || t.text == "vars" || t.text == "values");
}

class Parser {
 public:
  Parser(const std::string& src, const Universe& u) : lex_(src), u_(u) {}

  void skip_header() {
    while (is_decl_keyword(lex_.peek())) {
      Token kw = lex_.next();
      if (kw.text == "values") {
        expect_ident();
        expect(Tok::Eq, "'='");
        expect(Tok::LBrace, "'{'");
        while (lex_.peek().kind != Tok::RBrace) {
          expect_ident();
          if (lex_.peek().kind == Tok::Comma) lex_.next();
        }
        expect(Tok::RBrace, "'}'");
      } else {
        expect_ident();
        while (lex_.peek().kind == Tok::Comma) {
          lex_.next();
          expect_ident();
        }
      }
      expect(Tok::Semi, "';'");
    }
  }

  ProgPtr parse_program() {
    ProgPtr p = parse_choice();
    const Token& t = lex_.peek();
    if (t.kind != Tok::End) {
      throw ParseError("unexpected token '" + t.text + "'", t.line, t.col);
    }
    return p;
  }

  PacketSet parse_packet_set_only() {
    PacketSet a = parse_packet_literal();
    const Token& t = lex_.peek();
    if (t.kind != Tok::End) {
      throw ParseError("unexpected token '" + t.text + "'", t.line, t.col);
    }
    return a;
  }

 private:
  Token expect(Tok kind, const std::string& what) {
    const Token& t = lex_.peek();
    if (t.kind != kind) {
      throw ParseError("expected " + what + " but found '" + t.text + "'",
                       t.line, t.col);
    }
    return lex_.next();
  }

  Token expect_ident() {
    const Token& t = lex_.peek();
    if (t.kind != Tok::Ident) {
      throw ParseError("expected an identifier but found '" + t.text + "'",
                       t.line, t.col);
    }
    return lex_.next();
  }

  ProgPtr parse_choice() {
    ProgPtr p = parse_parallel();
    while (lex_.peek().kind == Tok::Plus) {
      lex_.next();
      p = Program::plus(p, parse_parallel());
    }
    return p;
  }

  ProgPtr parse_parallel() {
    ProgPtr p = parse_seq();
    while (lex_.peek().kind == Tok::Par) {
      lex_.next();
      p = Program::par(p, parse_seq());
    }
    return p;
  }

  ProgPtr parse_seq() {
    ProgPtr p = parse_postfix();
    while (lex_.peek().kind == Tok::Semi) {
      lex_.next();
      p = Program::seq(p, parse_postfix());
    }
    return p;
  }

  ProgPtr parse_postfix() {
    ProgPtr p = parse_bool_or();
    while (lex_.peek().kind == Tok::Star) {
      lex_.next();
      p = Program::star(p);
    }
    return p;
  }

  PredPtr as_pred(const ProgPtr& p, const Token& at, const char* op) {
    if (p->kind != Program::Kind::Pred) {
      throw ParseError(std::string("operand of '") + op +
                           "' is not a packet predicate",
                       at.line, at.col);
    }
    return p->pred;
  }

  ObsPtr as_obs(const ProgPtr& p, const Token& at, const char* op) {
    if (p->kind != Program::Kind::Obs) {
      throw ParseError(std::string("operand of '") + op +
                           "' is not a state observation",
                       at.line, at.col);
    }
    return p->obs;
  }

  ProgPtr parse_bool_or() {
    ProgPtr p = parse_bool_and();
    while (true) {
      const Token& t = lex_.peek();
      if (t.kind == Tok::Ident && t.text == "or") {
        Token at = lex_.next();
        ProgPtr q = parse_bool_and();
        p = Program::mk_pred(
            Predicate::por(as_pred(p, at, "or"), as_pred(q, at, "or")));
      } else if (t.kind == Tok::ObsOr) {
        Token at = lex_.next();
        ProgPtr q = parse_bool_and();
        p = Program::mk_obs(
            Observation::oor(as_obs(p, at, "\\/"), as_obs(q, at, "\\/")));
      } else {
        break;
      }
    }
    return p;
  }

  ProgPtr parse_bool_and() {
    ProgPtr p = parse_bool_neg();
    while (true) {
      const Token& t = lex_.peek();
      if (t.kind == Tok::Ident && t.text == "and") {
        Token at = lex_.next();
        ProgPtr q = parse_bool_neg();
        p = Program::mk_pred(
            Predicate::pand(as_pred(p, at, "and"), as_pred(q, at, "and")));
      } else if (t.kind == Tok::ObsAnd) {
        Token at = lex_.next();
        ProgPtr q = parse_bool_neg();
        p = Program::mk_obs(
            Observation::oand(as_obs(p, at, "/\\"), as_obs(q, at, "/\\")));
      } else {
        break;
      }
    }
    return p;
  }

  ProgPtr parse_bool_neg() {
    const Token& t = lex_.peek();
    if (t.kind == Tok::Ident && t.text == "not") {
      Token at = lex_.next();
      ProgPtr p = parse_bool_neg();
      return Program::mk_pred(Predicate::pnot(as_pred(p, at, "not")));
    }
    if (t.kind == Tok::ObsNot) {
      Token at = lex_.next();
      ProgPtr p = parse_bool_neg();
      return Program::mk_obs(Observation::complement(as_obs(p, at, "~")));
    }
    return parse_atom();
  }

  ProgPtr parse_atom() {
    const Token& t = lex_.peek();
    if (t.kind == Tok::LParen) {
      lex_.next();
      ProgPtr p = parse_choice();
      expect(Tok::RParen, "')'");
      return p;
    }
    if (t.kind == Tok::LBrace) {
      return Program::packet_lit(parse_packet_literal());
    }
    if (t.kind != Tok::Ident) {
      throw ParseError("expected a program but found '" + t.text + "'", t.line,
                       t.col);
    }
    Token id = lex_.next();
    if (id.text == "abort") return Program::mk_abort();
    if (id.text == "skip") return Program::mk_skip();
    if (id.text == "dup") return Program::mk_dup();
    if (id.text == "drop") return Program::mk_pred(Predicate::mk_false());
    if (id.text == "pass") return Program::mk_pred(Predicate::mk_true());
    if (id.text == "top") return Program::mk_obs(Observation::mk_top());
    if (id.text == "bot") return Program::mk_obs(Observation::mk_bot());

    auto f = u_.field_index(id.text);
    auto v = u_.var_index(id.text);
    const Token& op = lex_.peek();
    if (op.kind == Tok::Eq) {
      lex_.next();
      Token val = expect_ident();
      if (f) {
        auto n = u_.field_value_index(*f, val.text);
        if (!n) {
          throw ParseError("value '" + val.text +
                               "' not in range of field '" + id.text + "'",
                           val.line, val.col);
        }
        return Program::mk_pred(Predicate::test(*f, *n));
      }
      if (v) {
        auto n = u_.var_value_index(*v, val.text);
        if (!n) {
          throw ParseError("value '" + val.text +
                               "' not in range of variable '" + id.text + "'",
                           val.line, val.col);
        }
        return Program::mk_obs(Observation::test(*v, *n));
      }
      throw ParseError("undeclared identifier '" + id.text +
                           "' (neither a field nor a variable)",
                       id.line, id.col);
    }
    if (op.kind == Tok::Arrow) {
      lex_.next();
      Token val = expect_ident();
      if (f) {
        auto n = u_.field_value_index(*f, val.text);
        if (!n) {
          throw ParseError("value '" + val.text +
                               "' not in range of field '" + id.text + "'",
                           val.line, val.col);
        }
        return Program::field_mod(*f, *n);
      }
      if (v) {
        auto src = u_.var_index(val.text);
        auto n = u_.var_value_index(*v, val.text);
        if (src && n) {
          throw ParseError("ambiguous token '" + val.text +
                               "': both a variable and a value of '" +
                               id.text + "'",
                           val.line, val.col);
        }
        if (src) {
          StateAction e;
          e.var = *v;
          e.is_copy = true;
          e.src_var = *src;
          return Program::state_mod(e);
        }
        if (n) {
          StateAction e;
          e.var = *v;
          e.is_copy = false;
          e.value = *n;
          return Program::state_mod(e);
        }
        throw ParseError("token '" + val.text +
                             "' is neither a value of variable '" + id.text +
                             "' nor a declared variable",
                         val.line, val.col);
      }
      throw ParseError("undeclared identifier '" + id.text +
                           "' (neither a field nor a variable)",
                       id.line, id.col);
    }
    throw ParseError("identifier '" + id.text +
                         "' must be followed by '=' or '<-'",
                     id.line, id.col);
  }

  PacketSet parse_packet_literal() {
    expect(Tok::LBrace, "'{'");
    PacketSet out;
    while (lex_.peek().kind != Tok::RBrace) {
      out.insert(parse_packet());
      if (lex_.peek().kind == Tok::Comma) lex_.next();
    }
    expect(Tok::RBrace, "'}'");
    return out;
  }

  Packet parse_packet() {
    Token open = expect(Tok::LBracket, "'['");
    Packet pk;
    pk.values.assign(u_.field_count(), 0);
    std::vector<bool> seen(u_.field_count(), false);
    while (lex_.peek().kind != Tok::RBracket) {
      Token id = expect_ident();
      auto f = u_.field_index(id.text);
      if (!f) {
        throw ParseError("undeclared field '" + id.text +
                             "' in packet literal",
                         id.line, id.col);
      }
      expect(Tok::Eq, "'='");
      Token val = expect_ident();
      auto n = u_.field_value_index(*f, val.text);
      if (!n) {
        throw ParseError("value '" + val.text + "' not in range of field '" +
                             id.text + "'",
                         val.line, val.col);
      }
      pk.values[*f] = static_cast<uint8_t>(*n);
      seen[*f] = true;
      if (lex_.peek().kind == Tok::Comma) lex_.next();
    }
    expect(Tok::RBracket, "']'");
    for (int f = 0; f < u_.field_count(); ++f) {
      if (!seen[f]) {
        throw ParseError("packet literal misses field '" + u_.field_name(f) +
                             "'",
                         open.line, open.col);
      }
    }
    return pk;
  }

  Lexer lex_;
  const Universe& u_;
};

}  // namespace

Universe parse_universe(const std::string& source) {
  Lexer lex(source);
  std::vector<std::string> fields, vars;
  std::vector<std::pair<std::string, std::vector<std::string>>> values;
  while (is_decl_keyword(lex.peek())) {
    Token kw = lex.next();
    auto expect = [&](Tok kind, const std::string& what) {
      const Token& t = lex.peek();
      if (t.kind != kind) {
        throw ParseError("expected " + what + " but found '" + t.text + "'",
                         t.line, t.col);
      }
      return lex.next();
    };
    if (kw.text == "values") {
      Token name = expect(Tok::Ident, "an identifier");
      expect(Tok::Eq, "'='");
      expect(Tok::LBrace, "'{'");
      std::vector<std::string> vals;
      while (lex.peek().kind != Tok::RBrace) {
        vals.push_back(expect(Tok::Ident, "a value").text);
        if (lex.peek().kind == Tok::Comma) lex.next();
      }
      expect(Tok::RBrace, "'}'");
      expect(Tok::Semi, "';'");
      values.emplace_back(name.text, std::move(vals));
    } else {
      bool is_fields = (kw.text == "fields");
      while (true) {
        Token name = expect(Tok::Ident, "an identifier");
        (is_fields ? fields : vars).push_back(name.text);
        if (lex.peek().kind == Tok::Comma) {
          lex.next();
          continue;
        }
        break;
      }
      expect(Tok::Semi, "';'");
    }
  }
  Universe u;
  auto values_for = [&](const std::string& name) {
    for (auto& [n, vals] : values) {
      if (n == name) return vals;
    }
    throw ContractError("no value declaration for '" + name + "'");
  };
  for (const auto& f : fields) u.add_field(f, values_for(f));
  for (const auto& v : vars) u.add_var(v, values_for(v));
  return u;
}

ProgPtr parse(const std::string& source, const Universe& universe) {
  Parser p(source, universe);
  p.skip_header();
  return p.parse_program();
}

ParsedFile parse_file_text(const std::string& source) {
  ParsedFile out;
  out.universe = parse_universe(source);
  out.program = parse(source, out.universe);
  return out;
}

PacketSet parse_packet_set(const std::string& text, const Universe& universe) {
  Parser p(text, universe);
  return p.parse_packet_set_only();
}

}  // namespace cnetkat
