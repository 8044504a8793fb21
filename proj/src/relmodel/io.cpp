#include "schemaind/io.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>
#include <tuple>
#include <unordered_map>

#include "schemaind/errors.hpp"

namespace schemaind {
namespace {

enum class Tok { Ident, Quoted, Punct, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int line = 1;
  int column = 1;
};

// Tokenizer shared by every text format. `#` starts a comment to end of line.
class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_space();
    Token tok;
    tok.line = line_;
    tok.column = column_;
    if (pos_ >= text_.size()) return tok;
    char c = text_[pos_];
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
      tok.kind = Tok::Ident;
      while (pos_ < text_.size()) {
        char d = text_[pos_];
        bool ident = std::isalnum(static_cast<unsigned char>(d)) || d == '_';
        bool decimal = d == '.' && pos_ + 1 < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])) &&
                       !tok.text.empty() && std::isdigit(static_cast<unsigned char>(tok.text.back()));
        if (!ident && !decimal) break;
        tok.text += d;
        advance();
      }
      return tok;
    }
    if (c == '\'') {
      tok.kind = Tok::Quoted;
      advance();
      while (true) {
        if (pos_ >= text_.size()) throw ParseError("unterminated quoted constant", tok.line, tok.column);
        char d = text_[pos_];
        if (d == '\\' && pos_ + 1 < text_.size()) {
          advance();
          tok.text += text_[pos_];
          advance();
          continue;
        }
        advance();
        if (d == '\'') break;
        tok.text += d;
      }
      return tok;
    }
    tok.kind = Tok::Punct;
    static const char* two[] = {":-", "<-", "->", "<=", ".."};
    for (const char* p : two) {
      if (text_.substr(pos_, 2) == p) {
        tok.text = p;
        advance();
        advance();
        return tok;
      }
    }
    tok.text = std::string(1, c);
    advance();
    return tok;
  }

  Token peek() {
    auto save = std::tuple(pos_, line_, column_);
    Token t = next();
    std::tie(pos_, line_, column_) = save;
    return t;
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

  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#' || c == '%') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

[[noreturn]] void fail(const Token& t, const std::string& msg) { throw ParseError(msg, t.line, t.column); }

void expect(Lexer& lex, const std::string& punct) {
  Token t = lex.next();
  if (t.kind != Tok::Punct || t.text != punct)
    fail(t, "expected '" + punct + "' but found '" + (t.kind == Tok::End ? std::string("end of input") : t.text) + "'");
}

std::string ident(Lexer& lex, const std::string& what) {
  Token t = lex.next();
  if (t.kind != Tok::Ident) fail(t, "expected " + what);
  return t.text;
}

std::vector<std::string> ident_list(Lexer& lex, const std::string& closing) {
  std::vector<std::string> out;
  out.push_back(ident(lex, "attribute name"));
  while (true) {
    Token t = lex.peek();
    if (t.kind == Tok::Punct && t.text == ",") {
      lex.next();
      out.push_back(ident(lex, "attribute name"));
    } else {
      break;
    }
  }
  if (!closing.empty()) expect(lex, closing);
  return out;
}

// Attribute list terminated by end of line content (for FDs): reads until a
// token that is not an identifier/comma, leaving it unread.
std::vector<std::string> bare_list(Lexer& lex) {
  std::vector<std::string> out;
  out.push_back(ident(lex, "attribute name"));
  while (true) {
    Token t = lex.peek();
    if (t.kind == Tok::Punct && t.text == ",") {
      lex.next();
      out.push_back(ident(lex, "attribute name"));
    } else {
      return out;
    }
  }
}

struct ClauseReader {
  Lexer& lex;
  bool variables_allowed;
  std::unordered_map<std::string, VarId> vars;

  Term term() {
    Token t = lex.next();
    if (t.kind == Tok::Quoted) return Term::constant(t.text);
    if (t.kind != Tok::Ident) fail(t, "expected a term");
    bool var = variables_allowed && (std::isupper(static_cast<unsigned char>(t.text[0])) || t.text[0] == '_');
    if (!var) return Term::constant(t.text);
    auto [it, inserted] = vars.emplace(t.text, static_cast<VarId>(vars.size() + 1));
    return Term::variable(it->second);
  }

  Atom atom() {
    Token name = lex.next();
    if (name.kind != Tok::Ident && name.kind != Tok::Quoted) fail(name, "expected a predicate name");
    expect(lex, "(");
    std::vector<Term> args;
    Token t = lex.peek();
    if (!(t.kind == Tok::Punct && t.text == ")")) {
      args.push_back(term());
      while (true) {
        Token sep = lex.peek();
        if (sep.kind == Tok::Punct && sep.text == ",") {
          lex.next();
          args.push_back(term());
        } else {
          break;
        }
      }
    }
    expect(lex, ")");
    if (args.empty()) fail(name, "atom " + name.text + " has no arguments");
    return Atom(name.text, std::move(args));
  }

  OrderedClause clause() {
    OrderedClause c;
    c.head = atom();
    Token t = lex.next();
    if (t.kind == Tok::Punct && t.text == ".") return c;
    if (t.kind == Tok::End) return c;
    if (!(t.kind == Tok::Punct && (t.text == ":-" || t.text == "<-"))) fail(t, "expected ':-' or '.'");
    Token first = lex.peek();
    if (first.kind == Tok::Ident && first.text == "true") {
      lex.next();
    } else {
      c.body.push_back(atom());
      while (true) {
        Token sep = lex.peek();
        if (sep.kind == Tok::Punct && sep.text == ",") {
          lex.next();
          c.body.push_back(atom());
        } else {
          break;
        }
      }
    }
    Token end = lex.next();
    if (end.kind != Tok::End && !(end.kind == Tok::Punct && end.text == ".")) fail(end, "expected '.' after clause");
    return c;
  }
};

Tuple ground_tuple(const Atom& a) {
  Tuple t;
  for (Term x : a.args) t.push_back(x.id);
  return t;
}

}  // namespace

Schema parse_schema(std::string_view text) {
  std::vector<RelationDecl> relations;
  std::vector<FD> fds;
  std::vector<IND> inds;
  Lexer lex(text);
  while (true) {
    Token kw = lex.next();
    if (kw.kind == Tok::End) break;
    if (kw.kind != Tok::Ident) fail(kw, "expected 'relation', 'fd' or 'ind'");
    if (kw.text == "relation") {
      RelationDecl r;
      r.name = ident(lex, "relation name");
      expect(lex, "(");
      r.attributes = ident_list(lex, ")");
      relations.push_back(std::move(r));
    } else if (kw.text == "fd") {
      FD fd;
      fd.relation = ident(lex, "relation name");
      expect(lex, ":");
      fd.lhs = bare_list(lex);
      expect(lex, "->");
      fd.rhs = bare_list(lex);
      fds.push_back(std::move(fd));
    } else if (kw.text == "ind") {
      IND ind;
      ind.lhs_relation = ident(lex, "relation name");
      expect(lex, "[");
      ind.lhs_attributes = ident_list(lex, "]");
      Token op = lex.next();
      if (op.kind != Tok::Punct || (op.text != "=" && op.text != "<=")) fail(op, "expected '=' or '<='");
      ind.equality = op.text == "=";
      ind.rhs_relation = ident(lex, "relation name");
      expect(lex, "[");
      ind.rhs_attributes = ident_list(lex, "]");
      inds.push_back(std::move(ind));
    } else {
      fail(kw, "unknown declaration '" + kw.text + "'");
    }
  }
  return Schema(std::move(relations), std::move(fds), std::move(inds));
}

Instance parse_facts(std::string_view text, std::shared_ptr<const Schema> schema) {
  Instance::RawData data;
  Lexer lex(text);
  ClauseReader reader{lex, false, {}};
  while (lex.peek().kind != Tok::End) {
    Token start = lex.peek();
    Atom a = reader.atom();
    expect(lex, ".");
    const auto* rel = schema->find(a.name());
    if (!rel) fail(start, "unknown relation " + a.name());
    if (rel->arity() != a.arity())
      fail(start, "arity mismatch for " + a.name() + ": expected " + std::to_string(rel->arity()));
    data[a.name()].push_back(ground_tuple(a));
  }
  return Instance(std::move(schema), data);
}

ExampleSet parse_examples(std::string_view text) {
  ExampleSet ex;
  bool have_target = false;
  Lexer lex(text);
  ClauseReader reader{lex, false, {}};
  std::set<Atom> pos, neg;
  while (true) {
    Token sign = lex.next();
    if (sign.kind == Tok::End) break;
    if (sign.kind != Tok::Punct || (sign.text != "+" && sign.text != "-")) fail(sign, "expected '+' or '-'");
    Atom a = reader.atom();
    expect(lex, ".");
    if (!have_target) {
      ex.target = a.predicate;
      ex.arity = a.arity();
      have_target = true;
    } else if (a.predicate != ex.target || a.arity() != ex.arity) {
      fail(sign, "examples must share one target predicate and arity");
    }
    auto& mine = sign.text == "+" ? pos : neg;
    auto& other = sign.text == "+" ? neg : pos;
    if (other.count(a)) fail(sign, "example " + to_string(a) + " is both positive and negative");
    if (!mine.insert(a).second) continue;
    (sign.text == "+" ? ex.positives : ex.negatives).push_back(a);
  }
  return ex;
}

OrderedClause parse_clause(std::string_view text) {
  Lexer lex(text);
  ClauseReader reader{lex, true, {}};
  OrderedClause c = reader.clause();
  Token rest = lex.next();
  if (rest.kind != Tok::End) fail(rest, "trailing input after clause");
  return c;
}

HornDefinition parse_definition(std::string_view text) {
  HornDefinition def;
  Lexer lex(text);
  while (lex.peek().kind != Tok::End) {
    ClauseReader reader{lex, true, {}};
    OrderedClause c = reader.clause();
    if (!def.clauses.empty() &&
        (c.head.predicate != def.clauses[0].head.predicate || c.head.arity() != def.clauses[0].head.arity()))
      throw ConfigError("definition clauses must share one head predicate");
    def.clauses.push_back(std::move(c));
  }
  return def;
}

Atom parse_ground_atom(std::string_view text) {
  Lexer lex(text);
  ClauseReader reader{lex, false, {}};
  Atom a = reader.atom();
  Token t = lex.next();
  if (t.kind == Tok::Punct && t.text == ".") t = lex.next();
  if (t.kind != Tok::End) fail(t, "trailing input after atom");
  return a;
}

std::string facts_text(const Instance& instance) {
  std::string out;
  for (const auto& a : instance.facts()) out += fact_string(a) + "\n";
  return out;
}

std::string examples_text(const ExampleSet& examples) {
  std::string out;
  for (const auto& a : examples.positives) out += "+ " + fact_string(a) + "\n";
  for (const auto& a : examples.negatives) out += "- " + fact_string(a) + "\n";
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path);
  out << content;
}

}  // namespace schemaind
