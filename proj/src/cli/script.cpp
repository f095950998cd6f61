#include "koszul/cli/script.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>

#include "koszul/free_algebra.hpp"

namespace koszul::cli {

const Arg* Call::find(std::string_view key) const {
  for (const auto& a : args)
    if (a.key == key) return &a;
  return nullptr;
}

std::vector<const Arg*> Call::positional() const {
  std::vector<const Arg*> out;
  for (const auto& a : args)
    if (a.key.empty()) out.push_back(&a);
  return out;
}

namespace {

// ---- lexer ----

struct Token {
  enum class Kind { ident, integer, string, punct, end };
  Kind kind = Kind::end;
  std::string text;  // identifier, digits, string contents or the punctuation char
  long long value = 0;
  Pos pos;
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case Token::Kind::ident: return "identifier '" + t.text + "'";
    case Token::Kind::integer: return "integer " + t.text;
    case Token::Kind::string: return "string";
    case Token::Kind::punct: return "'" + t.text + "'";
    case Token::Kind::end: return "end of input";
  }
  return "?";
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : s_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip();
      Token t;
      t.pos = {line_, col_};
      if (i_ >= s_.size()) {
        out.push_back(t);
        return out;
      }
      char c = s_[i_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        t.kind = Token::Kind::ident;
        while (i_ < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_'))
          t.text += advance();
      } else if (std::isdigit(static_cast<unsigned char>(c)) ||
                 (c == '-' && i_ + 1 < s_.size() &&
                  std::isdigit(static_cast<unsigned char>(s_[i_ + 1])))) {
        t.kind = Token::Kind::integer;
        t.text += advance();
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_])))
          t.text += advance();
        if (t.text.size() > 18) throw ParseError(t.pos.line, t.pos.column, "integer too large");
        t.value = std::stoll(t.text);
      } else if (c == '"') {
        t.kind = Token::Kind::string;
        advance();
        while (true) {
          if (i_ >= s_.size() || s_[i_] == '\n')
            throw ParseError(t.pos.line, t.pos.column, "unterminated string");
          char d = advance();
          if (d == '"') break;
          if (d == '\\') {
            if (i_ >= s_.size()) throw ParseError(line_, col_, "unterminated string");
            char e = advance();
            if (e == 'n') e = '\n';
            else if (e != '"' && e != '\\')
              throw ParseError(line_, col_ - 1, std::string("unknown escape '\\") + e + "'");
            d = e;
          }
          t.text += d;
        }
      } else if (std::string_view("{}[]()=;,").find(c) != std::string_view::npos) {
        t.kind = Token::Kind::punct;
        t.text = std::string(1, advance());
      } else {
        throw ParseError(t.pos.line, t.pos.column, std::string("unexpected character '") + c + "'");
      }
      out.push_back(std::move(t));
    }
  }

 private:
  char advance() {
    char c = s_[i_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }
  void skip() {
    while (i_ < s_.size()) {
      char c = s_[i_];
      if (c == '#') {
        while (i_ < s_.size() && s_[i_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  std::string_view s_;
  std::size_t i_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

// ---- parser ----

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : t_(std::move(toks)) {}

  Script script() {
    Script s;
    while (peek().kind != Token::Kind::end) {
      s.statements.push_back(statement());
      if (is_punct(";")) next();
    }
    return s;
  }

 private:
  const Token& peek(std::size_t k = 0) const { return t_[std::min(i_ + k, t_.size() - 1)]; }
  const Token& next() { return t_[std::min(i_++, t_.size() - 1)]; }
  bool is_punct(std::string_view p, std::size_t k = 0) const {
    return peek(k).kind == Token::Kind::punct && peek(k).text == p;
  }
  bool is_word(std::string_view w) const {
    return peek().kind == Token::Kind::ident && peek().text == w;
  }

  [[noreturn]] void fail(const std::vector<std::string>& expected) const {
    std::string msg = "expected ";
    if (expected.size() > 1) msg += "one of ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i) msg += ", ";
      msg += expected[i];
    }
    msg += "; got " + describe(peek());
    throw ParseError(peek().pos.line, peek().pos.column, msg);
  }

  void expect_punct(std::string_view p) {
    if (!is_punct(p)) fail({"'" + std::string(p) + "'"});
    next();
  }
  void expect_word(std::string_view w) {
    if (!is_word(w)) fail({"'" + std::string(w) + "'"});
    next();
  }
  std::string ident() {
    if (peek().kind != Token::Kind::ident) fail({"identifier"});
    return next().text;
  }

  Statement statement() {
    Statement st;
    st.pos = peek().pos;
    if (is_word("algebra") && peek(1).kind == Token::Kind::ident) {
      st.kind = Statement::Kind::define_algebra;
      next();
      algebra_block(st);
      return st;
    }
    if (is_word("check") && peek(1).kind == Token::Kind::ident) {
      next();
      st.kind = Statement::Kind::check;
      st.call = call();
      return st;
    }
    if (is_word("emit") && peek(1).kind == Token::Kind::ident) {
      next();
      st.kind = Statement::Kind::emit;
      st.call = call();
      return st;
    }
    if (peek().kind == Token::Kind::ident) {
      st.name = next().text;
      expect_punct("=");
      st.call = call();
      st.kind = is_preset_name(st.call.name) ? Statement::Kind::define_preset
                                             : Statement::Kind::build;
      return st;
    }
    fail({"'algebra'", "'check'", "'emit'", "identifier"});
  }

  void algebra_block(Statement& st) {
    st.name = ident();
    expect_punct("{");
    expect_word("p");
    expect_punct("=");
    if (peek().kind != Token::Kind::integer) fail({"integer"});
    st.p = next().value;
    expect_punct(";");
    expect_word("generators");
    expect_punct("=");
    expect_punct("[");
    if (!is_punct("]")) {
      st.generators.push_back(ident());
      while (is_punct(",")) {
        next();
        st.generators.push_back(ident());
      }
    }
    expect_punct("]");
    expect_punct(";");
    expect_word("relations");
    expect_punct("=");
    expect_punct("[");
    if (!is_punct("]")) {
      while (true) {
        if (peek().kind != Token::Kind::string) fail({"string"});
        st.relation_pos.push_back(peek().pos);
        st.relations.push_back(next().text);
        if (!is_punct(",")) break;
        next();
      }
    }
    expect_punct("]");
    if (is_punct(";")) next();
    expect_punct("}");
  }

  Call call() {
    Call c;
    c.pos = peek().pos;
    c.name = ident();
    expect_punct("(");
    if (!is_punct(")")) {
      while (true) {
        Arg a;
        a.pos = peek().pos;
        if (peek().kind == Token::Kind::ident && is_punct("=", 1)) {
          a.key = next().text;
          next();
        }
        a.value = value();
        c.args.push_back(std::move(a));
        if (!is_punct(",")) break;
        next();
      }
    }
    if (!is_punct(")")) fail({"','", "')'"});
    next();
    return c;
  }

  Value value() {
    Value v;
    v.pos = peek().pos;
    const Token& t = peek();
    if (t.kind == Token::Kind::integer) {
      v.kind = Value::Kind::integer;
      v.integer = next().value;
    } else if (t.kind == Token::Kind::string) {
      v.kind = Value::Kind::string;
      v.text = next().text;
    } else if (t.kind == Token::Kind::ident) {
      if (is_punct("(", 1)) {
        v.kind = Value::Kind::call;
        v.call = std::make_shared<Call>(call());
      } else {
        v.kind = Value::Kind::identifier;
        v.text = next().text;
      }
    } else if (is_punct("[")) {
      next();
      v.kind = Value::Kind::list;
      if (!is_punct("]")) {
        while (true) {
          v.items.push_back(value());
          if (!is_punct(",")) break;
          next();
        }
      }
      if (!is_punct("]")) fail({"','", "']'"});
      next();
    } else {
      fail({"integer", "string", "identifier", "'['"});
    }
    return v;
  }

  std::vector<Token> t_;
  std::size_t i_ = 0;
};

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out + "\"";
}

}  // namespace

Script parse(std::string_view text) { return Parser(Lexer(text).run()).script(); }

std::string serialize(const Value& v) {
  switch (v.kind) {
    case Value::Kind::integer: return std::to_string(v.integer);
    case Value::Kind::identifier: return v.text;
    case Value::Kind::string: return quote(v.text);
    case Value::Kind::call: return serialize(*v.call);
    case Value::Kind::list: {
      std::string out = "[";
      for (std::size_t i = 0; i < v.items.size(); ++i) {
        if (i) out += ", ";
        out += serialize(v.items[i]);
      }
      return out + "]";
    }
  }
  return "";
}

std::string serialize(const Call& c) {
  std::string out = c.name + "(";
  for (std::size_t i = 0; i < c.args.size(); ++i) {
    if (i) out += ", ";
    if (!c.args[i].key.empty()) out += c.args[i].key + "=";
    out += serialize(c.args[i].value);
  }
  return out + ")";
}

std::string serialize(const Script& s) {
  std::string out;
  for (const auto& st : s.statements) {
    switch (st.kind) {
      case Statement::Kind::define_algebra: {
        out += "algebra " + st.name + " {\n  p = " + std::to_string(st.p) + ";\n  generators = [";
        for (std::size_t i = 0; i < st.generators.size(); ++i)
          out += (i ? ", " : "") + st.generators[i];
        out += "];\n  relations = [";
        for (std::size_t i = 0; i < st.relations.size(); ++i)
          out += (i ? ", " : "") + quote(st.relations[i]);
        out += "];\n}\n";
        break;
      }
      case Statement::Kind::define_preset:
      case Statement::Kind::build:
        out += st.name + " = " + serialize(st.call) + "\n";
        break;
      case Statement::Kind::check:
        out += "check " + serialize(st.call) + "\n";
        break;
      case Statement::Kind::emit:
        out += "emit " + serialize(st.call) + "\n";
        break;
    }
  }
  return out;
}

// ---- validation ----

namespace {

enum class Ty { integer, word, string, words, strings, family, algebra_or_call, twist };

struct Signature {
  std::size_t algebras = 0;  // positional algebra arguments
  std::map<std::string, Ty> keys;
  std::set<std::string> required;
};

const std::map<std::string, Signature>& presets() {
  static const std::map<std::string, Signature> m{
      {"free", {0, {{"d", Ty::integer}, {"p", Ty::integer}}, {"d", "p"}}},
      {"demushkin",
       {0, {{"case", Ty::integer}, {"k", Ty::integer}, {"p", Ty::integer}}, {"case", "k"}}},
      {"c2", {0, {}, {}}},
      {"poly_t", {0, {{"p", Ty::integer}}, {}}},
      {"t_mod_t2", {0, {}, {}}},
      {"superpythagorean", {0, {{"d", Ty::integer}}, {"d"}}},
      {"rigid_level2", {0, {{"d", Ty::integer}}, {"d"}}},
      {"exterior", {0, {{"m", Ty::integer}, {"p", Ty::integer}}, {"m"}}},
  };
  return m;
}

const std::map<std::string, Signature>& constructions() {
  static const std::map<std::string, Signature> m{
      {"direct_sum", {2, {}, {}}},
      {"skew_tensor", {2, {}, {}}},
      {"opposite", {1, {}, {}}},
      {"twisted_extension",
       {1, {{"t", Ty::twist}, {"m", Ty::integer}, {"names", Ty::words}}, {"m"}}},
  };
  return m;
}

const std::map<std::string, Signature>& checks() {
  static const std::map<std::string, Signature> m{
      {"realize", {1, {{"degree", Ty::integer}}, {}}},
      {"hilbert", {1, {{"degree", Ty::integer}}, {}}},
      {"pbw", {1, {{"order", Ty::words}, {"degree", Ty::integer}, {"vertex_cap", Ty::integer}}, {}}},
      {"universal_koszul", {1, {{"degree", Ty::integer}, {"side", Ty::word}}, {}}},
      {"strong_koszul",
       {1, {{"basis", Ty::strings}, {"degree", Ty::integer}, {"side", Ty::word}}, {"basis"}}},
      {"strong_koszul_search", {1, {{"degree", Ty::integer}, {"side", Ty::word}}, {}}},
      {"betti",
       {1,
        {{"module", Ty::word}, {"gens", Ty::strings}, {"side", Ty::word}, {"i", Ty::integer},
         {"j", Ty::integer}},
        {}}},
      {"linear",
       {1,
        {{"module", Ty::word}, {"gens", Ty::strings}, {"side", Ty::word}, {"i", Ty::integer},
         {"j", Ty::integer}},
        {}}},
      {"colon",
       {1,
        {{"ideal", Ty::strings}, {"x", Ty::string}, {"side", Ty::word}, {"degree", Ty::integer}},
        {"x"}}},
      {"filtration",
       {1, {{"family", Ty::family}, {"side", Ty::word}, {"degree", Ty::integer}}, {"family"}}},
      {"flag",
       {1, {{"basis", Ty::strings}, {"side", Ty::word}, {"i", Ty::integer}, {"j", Ty::integer}},
        {}}},
      {"twisted_filtration",
       {1,
        {{"family", Ty::family}, {"t", Ty::twist}, {"m", Ty::integer}, {"degree", Ty::integer}},
        {"family", "m"}}},
      {"direct_sum_filtration",
       {2, {{"family_a", Ty::family}, {"family_b", Ty::family}, {"degree", Ty::integer}},
        {"family_a", "family_b"}}},
      {"all", {1, {}, {}}},
  };
  return m;
}

const std::map<std::string, Signature>& emits() {
  static const std::map<std::string, Signature> m{
      {"json", {0, {{"path", Ty::string}}, {"path"}}},
      {"dot", {1, {{"dir", Ty::string}}, {}}},
  };
  return m;
}

const std::map<std::string, std::set<std::string>>& word_choices() {
  static const std::map<std::string, std::set<std::string>> m{
      {"side", {"left", "right"}},
      {"module", {"K", "A_plus", "ideal", "quotient"}},
  };
  return m;
}

bool type_ok(const Value& v, Ty ty) {
  auto all_of_kind = [](const Value& l, Value::Kind k) {
    return l.kind == Value::Kind::list &&
           std::all_of(l.items.begin(), l.items.end(), [&](const Value& x) { return x.kind == k; });
  };
  switch (ty) {
    case Ty::integer: return v.kind == Value::Kind::integer;
    case Ty::word: return v.kind == Value::Kind::identifier;
    case Ty::string: return v.kind == Value::Kind::string;
    case Ty::words: return all_of_kind(v, Value::Kind::identifier);
    case Ty::strings: return all_of_kind(v, Value::Kind::string);
    case Ty::family:
      if (v.kind == Value::Kind::identifier) return v.text == "all";
      return v.kind == Value::Kind::list &&
             std::all_of(v.items.begin(), v.items.end(),
                         [&](const Value& x) { return all_of_kind(x, Value::Kind::string); });
    case Ty::algebra_or_call:
      return v.kind == Value::Kind::identifier || v.kind == Value::Kind::call;
    case Ty::twist:
      return v.kind == Value::Kind::string ||
             (v.kind == Value::Kind::identifier && (v.text == "designated" || v.text == "zero"));
  }
  return false;
}

std::string type_name(Ty ty) {
  switch (ty) {
    case Ty::integer: return "an integer";
    case Ty::word: return "a bare word";
    case Ty::string: return "a string";
    case Ty::words: return "a list of names";
    case Ty::strings: return "a list of strings";
    case Ty::family: return "'all' or a list of string lists";
    case Ty::algebra_or_call: return "an algebra";
    case Ty::twist: return "'designated', 'zero' or a string";
  }
  return "?";
}

class Validator {
 public:
  void run(const Script& s) {
    for (const auto& st : s.statements) statement(st);
  }

 private:
  void define(const std::string& name, Pos pos) {
    if (!defined_.insert(name).second)
      throw SemanticError("duplicate_name", pos, "'" + name + "' is already defined");
  }

  void statement(const Statement& st) {
    switch (st.kind) {
      case Statement::Kind::define_algebra:
        algebra(st);
        define(st.name, st.pos);
        return;
      case Statement::Kind::define_preset:
      case Statement::Kind::build:
        construct(st.call);
        define(st.name, st.pos);
        return;
      case Statement::Kind::check: {
        auto it = checks().find(st.call.name);
        if (it == checks().end())
          throw SemanticError("unknown_check", st.call.pos, "no check named '" + st.call.name + "'");
        call(st.call, it->second, false);
        return;
      }
      case Statement::Kind::emit: {
        auto it = emits().find(st.call.name);
        if (it == emits().end())
          throw SemanticError("unknown_target", st.call.pos,
                              "no emit target named '" + st.call.name + "'");
        call(st.call, it->second, false);
        return;
      }
    }
  }

  void algebra(const Statement& st) {
    PrimeField f;
    try {
      if (st.p < 2 || st.p > 0x7fffffff) throw Error(ErrorCode::invalid_params, "");
      f = PrimeField(static_cast<std::uint32_t>(st.p));
    } catch (const Error&) {
      throw SemanticError("bad_field", st.pos, std::to_string(st.p) + " is not a supported prime");
    }
    std::set<std::string> names;
    for (const auto& g : st.generators)
      if (!names.insert(g).second)
        throw SemanticError("duplicate_generator", st.pos, "generator '" + g + "' repeated");
    for (std::size_t i = 0; i < st.relations.size(); ++i) {
      const Pos at = st.relation_pos[i];
      NcPoly q;
      try {
        q = parse_relation(st.relations[i], st.generators, f);
      } catch (const ParseError& e) {
        // column inside the string literal, past the opening quote
        throw ParseError(at.line, at.column + e.column(), e.detail());
      }
      if (!q.homogeneous_of_degree(2))
        throw SemanticError("non_quadratic", at,
                            "relation \"" + st.relations[i] + "\" is not quadratic");
    }
  }

  void construct(const Call& c) {
    if (auto it = presets().find(c.name); it != presets().end()) {
      call(c, it->second, true);
      return;
    }
    if (auto it = constructions().find(c.name); it != constructions().end()) {
      call(c, it->second, true);
      return;
    }
    throw SemanticError("unknown_constructor", c.pos, "no constructor named '" + c.name + "'");
  }

  void call(const Call& c, const Signature& sig, bool nested_ok) {
    auto pos = c.positional();
    if (pos.size() != sig.algebras)
      throw SemanticError("wrong_arity", c.pos,
                          c.name + " takes " + std::to_string(sig.algebras) +
                              " positional argument(s), got " + std::to_string(pos.size()));
    for (const Arg* a : pos) {
      if (a->value.kind == Value::Kind::identifier) {
        if (!defined_.count(a->value.text))
          throw SemanticError("unknown_name", a->pos, "'" + a->value.text + "' is not defined");
      } else if (nested_ok && a->value.kind == Value::Kind::call) {
        construct(*a->value.call);
      } else {
        throw SemanticError("bad_argument", a->pos, "expected an algebra name");
      }
    }
    std::set<std::string> seen;
    for (const auto& a : c.args) {
      if (a.key.empty()) continue;
      if (!seen.insert(a.key).second)
        throw SemanticError("duplicate_argument", a.pos, "'" + a.key + "' given twice");
      if (a.key == "note" && a.value.kind == Value::Kind::string) continue;
      auto it = sig.keys.find(a.key);
      if (it == sig.keys.end())
        throw SemanticError("unknown_argument", a.pos, c.name + " has no argument '" + a.key + "'");
      if (!type_ok(a.value, it->second))
        throw SemanticError("bad_argument", a.value.pos,
                            "'" + a.key + "' must be " + type_name(it->second));
      if (auto w = word_choices().find(a.key);
          w != word_choices().end() && !w->second.count(a.value.text))
        throw SemanticError("bad_argument", a.value.pos,
                            "'" + a.value.text + "' is not a valid " + a.key);
      if (it->second == Ty::integer && a.value.integer < 0)
        throw SemanticError("bad_argument", a.value.pos, "'" + a.key + "' must be >= 0");
    }
    for (const auto& r : sig.required)
      if (!seen.count(r))
        throw SemanticError("missing_argument", c.pos, c.name + " needs '" + r + "'");
  }

  std::set<std::string> defined_;
};

}  // namespace

bool is_preset_name(std::string_view name) { return presets().count(std::string(name)) > 0; }
bool is_construction_name(std::string_view name) {
  return constructions().count(std::string(name)) > 0;
}
bool is_check_name(std::string_view name) { return checks().count(std::string(name)) > 0; }

void validate(const Script& s) { Validator().run(s); }

}  // namespace koszul::cli
