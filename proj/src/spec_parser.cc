// Copyright 2026 The sdrgrid Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Lexer and recursive-descent parser for the .topic format. Newlines end
// declarations; they are insignificant inside parentheses, inside relation
// blocks between items, and after `and`, `or` and commas.

#include <cctype>
#include <map>

#include "sdrgrid/topic_spec.h"

namespace sdrgrid {
namespace {

enum class Tok { kIdent, kString, kInt, kPunct, kNewline, kEnd };

struct Token {
  Tok kind = Tok::kEnd;
  std::string text;
  SourceLocation loc;
};

bool valid_utf8(std::string_view text, SourceLocation& where) {
  int line = 1;
  int col = 1;
  for (std::size_t i = 0; i < text.size();) {
    auto c = static_cast<unsigned char>(text[i]);
    std::size_t len = 1;
    if (c >= 0x80) {
      if ((c & 0xE0) == 0xC0) len = 2;
      else if ((c & 0xF0) == 0xE0) len = 3;
      else if ((c & 0xF8) == 0xF0) len = 4;
      else len = 0;
      if (len == 0 || i + len > text.size()) {
        where = {line, col};
        return false;
      }
      for (std::size_t k = 1; k < len; ++k) {
        if ((static_cast<unsigned char>(text[i + k]) & 0xC0) != 0x80) {
          where = {line, col};
          return false;
        }
      }
    }
    if (c == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    i += len;
  }
  return true;
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> tokens;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      SourceLocation loc{line_, col_};
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (c == '\n') {
        tokens.push_back({Tok::kNewline, "\n", loc});
        advance();
      } else if (c == ' ' || c == '\t' || c == '\r') {
        advance();
      } else if (c == '"') {
        tokens.push_back({Tok::kString, read_string(), loc});
      } else if (std::isdigit(static_cast<unsigned char>(c)) ||
                 (c == '-' && pos_ + 1 < text_.size() &&
                  std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))) {
        std::string digits(1, c);
        advance();
        while (pos_ < text_.size() &&
               std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
          digits += text_[pos_];
          advance();
        }
        tokens.push_back({Tok::kInt, digits, loc});
      } else if (auto alias = unicode_operator()) {
        tokens.push_back({alias->first, alias->second, loc});
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' ||
                 static_cast<unsigned char>(c) >= 0x80) {
        std::string ident;
        while (pos_ < text_.size()) {
          auto u = static_cast<unsigned char>(text_[pos_]);
          if (!(std::isalnum(u) || u == '_' || u >= 0x80)) break;
          if (u >= 0x80 && unicode_operator(false)) break;
          ident += text_[pos_];
          advance();
        }
        tokens.push_back({Tok::kIdent, ident, loc});
      } else if (c == '!' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '=') {
        tokens.push_back({Tok::kPunct, "!=", loc});
        advance();
        advance();
      } else if (std::string_view("(){},:=<>.|").find(c) != std::string_view::npos) {
        tokens.push_back({Tok::kPunct, std::string(1, c), loc});
        advance();
      } else {
        throw ParseError(std::string("syntax error: unexpected character '") + c +
                             "'",
                         loc);
      }
    }
    tokens.push_back({Tok::kNewline, "\n", {line_, col_}});
    tokens.push_back({Tok::kEnd, "", {line_, col_}});
    return tokens;
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else if ((static_cast<unsigned char>(text_[pos_]) & 0xC0) != 0x80) {
      ++col_;
    }
    ++pos_;
  }

  // Recognizes the mathematical spellings of and/or/not-equal.
  std::optional<std::pair<Tok, std::string>> unicode_operator(bool consume = true) {
    static const std::pair<std::string_view, std::pair<Tok, std::string_view>>
        kAliases[] = {{"\xE2\x88\xA7", {Tok::kIdent, "and"}},
                      {"\xE2\x88\xA8", {Tok::kIdent, "or"}},
                      {"\xE2\x89\xA0", {Tok::kPunct, "!="}}};
    for (const auto& [spelling, token] : kAliases) {
      if (text_.substr(pos_, spelling.size()) == spelling) {
        if (consume) {
          for (std::size_t i = 0; i < spelling.size(); ++i) advance();
        }
        return std::make_pair(token.first, std::string(token.second));
      }
    }
    return std::nullopt;
  }

  std::string read_string() {
    SourceLocation start{line_, col_};
    advance();  // opening quote
    std::string out;
    while (pos_ < text_.size() && text_[pos_] != '"') {
      if (text_[pos_] == '\n') break;
      if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) advance();
      out += text_[pos_];
      advance();
    }
    if (pos_ >= text_.size() || text_[pos_] != '"') {
      throw ParseError("syntax error: unterminated string", start);
    }
    advance();
    return out;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

enum class Section { kNone, kOntology, kMessages, kRelations, kConfig };

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  TopicSpec run() {
    skip_newlines();
    while (peek().kind != Tok::kEnd) {
      const Token& head = peek();
      if (is_keyword("TOPIC")) {
        next();
        spec_.name = expect_ident("topic name").text;
        end_of_line();
      } else if (is_keyword("ONTOLOGY")) {
        section_header(Section::kOntology);
      } else if (is_keyword("MESSAGES")) {
        section_header(Section::kMessages);
      } else if (is_keyword("RELATIONS")) {
        section_header(Section::kRelations);
      } else if (is_keyword("CONFIG")) {
        section_header(Section::kConfig);
      } else {
        switch (section_) {
          case Section::kOntology: ontology_decl(); break;
          case Section::kMessages: message_decl(); break;
          case Section::kRelations: relation_decl(); break;
          case Section::kConfig: config_decl(); break;
          case Section::kNone:
            throw ParseError("syntax error: expected a section keyword, found '" +
                                 head.text + "'",
                             head.loc);
        }
      }
      skip_newlines();
    }
    return std::move(spec_);
  }

  const std::map<std::string, SourceLocation>& locations() const {
    return locations_;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = std::min(index_ + ahead, tokens_.size() - 1);
    return tokens_[i];
  }
  const Token& next() {
    const Token& t = tokens_[index_];
    if (index_ + 1 < tokens_.size()) ++index_;
    return t;
  }
  bool is_keyword(std::string_view word) const {
    return peek().kind == Tok::kIdent && peek().text == word;
  }
  bool is_punct(std::string_view p) const {
    return peek().kind == Tok::kPunct && peek().text == p;
  }
  [[noreturn]] void fail(std::string_view expected) const {
    const Token& t = peek();
    std::string found = t.kind == Tok::kNewline ? "end of line"
                        : t.kind == Tok::kEnd   ? "end of input"
                                                : "'" + t.text + "'";
    throw ParseError("syntax error: expected " + std::string(expected) +
                         ", found " + found,
                     t.loc);
  }
  void skip_newlines() {
    while (peek().kind == Tok::kNewline) next();
  }
  void end_of_line() {
    if (peek().kind != Tok::kNewline) fail("end of line");
    skip_newlines();
  }
  const Token& expect_ident(std::string_view what) {
    if (peek().kind != Tok::kIdent) fail(what);
    return next();
  }
  void expect_punct(std::string_view p) {
    if (!is_punct(p)) fail("'" + std::string(p) + "'");
    next();
  }
  const Token& expect_name(std::string_view what) {
    if (peek().kind != Tok::kIdent && peek().kind != Tok::kString) fail(what);
    return next();
  }
  std::int64_t expect_int(std::string_view what) {
    if (peek().kind != Tok::kInt) fail(what);
    const Token& t = next();
    try {
      return std::stoll(t.text);
    } catch (const std::out_of_range&) {
      throw ParseError("integer out of range: " + t.text, t.loc);
    }
  }
  void remember(const std::string& subject, SourceLocation loc) {
    locations_.emplace(subject, loc);
  }
  [[noreturn]] void duplicate(const std::string& name, SourceLocation loc) {
    throw ParseError("duplicate declaration: " + name, loc);
  }

  void section_header(Section section) {
    next();
    section_ = section;
    end_of_line();
  }

  void ontology_decl() {
    const Token& head = peek();
    if (is_keyword("CONCEPT")) {
      next();
      const Token& name = expect_ident("concept name");
      ConceptDecl decl{name.text, std::nullopt};
      if (is_punct(":")) {
        next();
        decl.parent = expect_ident("parent concept").text;
      }
      remember(decl.name, name.loc);
      spec_.ontology.concepts.push_back(std::move(decl));
    } else if (is_keyword("INSTANCE")) {
      next();
      const Token& id = expect_name("instance id");
      expect_punct(":");
      std::string concept_name = expect_ident("concept name").text;
      if (!spec_.ontology.instances.emplace(id.text, concept_name).second) {
        duplicate(id.text, id.loc);
      }
      remember(id.text, id.loc);
    } else if (is_keyword("SCALE")) {
      next();
      const Token& name = expect_ident("concept name");
      expect_punct(":");
      std::vector<std::string> values{expect_name("scale value").text};
      while (is_punct("<")) {
        next();
        values.push_back(expect_name("scale value").text);
      }
      if (!spec_.ontology.ordered_scales.emplace(name.text, std::move(values))
               .second) {
        duplicate("SCALE " + name.text, name.loc);
      }
      remember(name.text, name.loc);
    } else {
      throw ParseError("syntax error: expected CONCEPT, INSTANCE or SCALE, found '" +
                           head.text + "'",
                       head.loc);
    }
    end_of_line();
  }

  void message_decl() {
    const Token& name = expect_ident("message type name");
    MessageSchema schema{name.text, {}};
    expect_punct("(");
    skip_newlines();
    while (!is_punct(")")) {
      ArgSpec arg;
      arg.name = expect_ident("argument name").text;
      expect_punct(":");
      arg.allowed.insert(expect_ident("concept name").text);
      while (is_keyword("or") || is_punct("|")) {
        next();
        skip_newlines();
        arg.allowed.insert(expect_ident("concept name").text);
      }
      schema.args.push_back(std::move(arg));
      skip_newlines();
      if (is_punct(",")) {
        next();
        skip_newlines();
      } else if (!is_punct(")")) {
        fail("',' or ')'");
      }
    }
    next();
    if (!spec_.schemas.emplace(schema.name, schema).second) {
      duplicate(schema.name, name.loc);
    }
    remember(schema.name, name.loc);
    end_of_line();
  }

  Operand operand() {
    if (peek().kind == Tok::kInt && peek(1).kind == Tok::kPunct &&
        peek(1).text == ".") {
      const Token& side = next();
      if (side.text != "1" && side.text != "2") {
        throw ParseError("syntax error: argument side must be 1 or 2", side.loc);
      }
      next();
      ArgRef ref{side.text == "1" ? Side::kFirst : Side::kSecond,
                 expect_ident("argument name").text};
      return ref;
    }
    if (peek().kind == Tok::kIdent || peek().kind == Tok::kString ||
        peek().kind == Tok::kInt) {
      return Literal{next().text};
    }
    fail("operand");
  }

  CompareOp compare_op() {
    static const std::map<std::string, CompareOp> kOps = {
        {"=", CompareOp::kEq}, {"!=", CompareOp::kNeq}, {"<", CompareOp::kLt},
        {">", CompareOp::kGt}};
    if (peek().kind == Tok::kPunct) {
      auto it = kOps.find(peek().text);
      if (it != kOps.end()) {
        next();
        return it->second;
      }
    }
    if (is_keyword("isa")) {
      next();
      return CompareOp::kSubsumes;
    }
    fail("comparison operator");
  }

  Constraint constraint() {
    Constraint out;
    if (is_keyword("true")) {
      next();
      return out;
    }
    while (true) {
      Atom atom;
      atom.lhs = operand();
      atom.op = compare_op();
      atom.rhs = operand();
      out.atoms.push_back(std::move(atom));
      if (!is_keyword("and")) break;
      next();
      skip_newlines();
    }
    return out;
  }

  void relation_decl() {
    if (!is_keyword("RELATION")) fail("RELATION");
    next();
    const Token& name = expect_ident("relation name");
    RelationSchema rel;
    rel.name = name.text;
    expect_punct(":");
    const Token& type = expect_ident("Synchronic or Diachronic");
    auto parsed = parse_relation_type(type.text);
    if (!parsed) {
      throw ParseError("syntax error: expected Synchronic or Diachronic, found '" +
                           type.text + "'",
                       type.loc);
    }
    rel.type = *parsed;
    expect_punct("{");
    skip_newlines();
    bool have_pairs = false;
    bool have_constraint = false;
    while (!is_punct("}")) {
      const Token& key = expect_ident("pairs or constraint");
      expect_punct(":");
      if (key.text == "pairs") {
        if (have_pairs) duplicate("pairs", key.loc);
        have_pairs = true;
        while (true) {
          expect_punct("(");
          std::string a = expect_ident("message type").text;
          expect_punct(",");
          std::string b = expect_ident("message type").text;
          expect_punct(")");
          rel.pairs.emplace(a, b);
          if (!is_punct(",")) break;
          next();
          skip_newlines();
        }
      } else if (key.text == "constraint") {
        if (have_constraint) duplicate("constraint", key.loc);
        have_constraint = true;
        rel.constraint = constraint();
      } else {
        throw ParseError("syntax error: expected pairs or constraint, found '" +
                             key.text + "'",
                         key.loc);
      }
      end_of_line();
    }
    next();
    if (!have_pairs) {
      throw ParseError("relation " + rel.name + " has no pairs", name.loc);
    }
    remember(rel.name, name.loc);
    spec_.relations.push_back(std::move(rel));
    end_of_line();
  }

  void config_decl() {
    const Token& key = expect_ident("configuration key");
    expect_punct("=");
    if (!config_keys_.insert(key.text).second) duplicate(key.text, key.loc);
    remember(key.text, key.loc);
    TopicConfig& config = spec_.config;
    if (key.text == "time_unit") {
      config.time_unit_minutes = expect_int("minutes");
    } else if (key.text == "sync_window") {
      config.sync_window_minutes = expect_int("minutes");
    } else if (key.text == "diachronic") {
      if (is_keyword("unbounded")) {
        next();
        config.diachronic_policy = DiachronicPolicy::unbounded();
      } else if (is_keyword("exact")) {
        next();
        config.diachronic_policy = DiachronicPolicy::exact(expect_int("distance"));
      } else {
        fail("unbounded or exact");
      }
    } else if (key.text == "planner") {
      const Token& mode = expect_ident("linear or nonlinear");
      auto parsed = parse_planner_mode(mode.text);
      if (!parsed) fail("linear or nonlinear");
      config.planner_mode = *parsed;
    } else {
      throw ParseError("unknown configuration key: " + key.text, key.loc);
    }
    end_of_line();
  }

  std::vector<Token> tokens_;
  std::size_t index_ = 0;
  Section section_ = Section::kNone;
  TopicSpec spec_;
  std::set<std::string> config_keys_;
  std::map<std::string, SourceLocation> locations_;
};

}  // namespace

TopicSpec parse_topic_spec(std::string_view text,
                           std::vector<Diagnostic>* warnings) {
  SourceLocation bad;
  if (!valid_utf8(text, bad)) throw ParseError("invalid UTF-8", bad);
  Parser parser(Lexer(text).run());
  TopicSpec spec = parser.run();

  std::vector<Diagnostic> diagnostics = validate_topic_spec(spec);
  for (Diagnostic& d : diagnostics) {
    auto it = parser.locations().find(d.subject);
    if (it != parser.locations().end()) d.location = it->second;
  }
  for (const Diagnostic& d : diagnostics) {
    if (d.is_error()) throw ParseError(d.message, d.location);
  }
  if (warnings != nullptr) {
    warnings->insert(warnings->end(), diagnostics.begin(), diagnostics.end());
  }
  return spec;
}

}  // namespace sdrgrid
