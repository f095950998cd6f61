#pragma once

// The koszul-lab script language: algebra blocks, constructor assignments,
// checks and emit statements. Parsing is purely syntactic; `validate` does
// the name and arity checks before anything runs.

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "koszul/error.hpp"

namespace koszul::cli {

struct Pos {
  std::size_t line = 1;
  std::size_t column = 1;
};

struct Call;

struct Value {
  enum class Kind { integer, identifier, string, list, call };

  Kind kind = Kind::integer;
  long long integer = 0;
  std::string text;           // identifier or string contents
  std::vector<Value> items;   // list
  std::shared_ptr<Call> call;
  Pos pos;
};

struct Arg {
  std::string key;  // empty for positional arguments
  Value value;
  Pos pos;
};

struct Call {
  std::string name;
  std::vector<Arg> args;
  Pos pos;

  const Arg* find(std::string_view key) const;
  /// Positional arguments in order.
  std::vector<const Arg*> positional() const;
};

struct Statement {
  enum class Kind { define_algebra, define_preset, build, check, emit };

  Kind kind = Kind::check;
  Pos pos;
  std::string name;  // defined name (algebra / assignment)

  // algebra blocks
  long long p = 0;
  std::vector<std::string> generators;
  std::vector<std::string> relations;
  std::vector<Pos> relation_pos;

  // assignments, checks and emits
  Call call;
};

struct Script {
  std::vector<Statement> statements;
};

/// Semantic problems found before running; `kind` is a stable short code.
class SemanticError : public Error {
 public:
  SemanticError(std::string kind, Pos pos, const std::string& message)
      : Error(ErrorCode::semantic_error, std::to_string(pos.line) + ":" +
                                             std::to_string(pos.column) + ": " + kind + ": " +
                                             message),
        kind_(std::move(kind)),
        pos_(pos),
        detail_(message) {}

  const std::string& kind() const noexcept { return kind_; }
  Pos pos() const noexcept { return pos_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::string kind_;
  Pos pos_;
  std::string detail_;
};

/// Throws ParseError (line:col, expected tokens) on bad syntax.
Script parse(std::string_view text);

/// Canonical text; parse(serialize(s)) serializes back to the same text.
std::string serialize(const Script& s);
std::string serialize(const Value& v);
std::string serialize(const Call& c);

bool is_preset_name(std::string_view name);
bool is_construction_name(std::string_view name);
bool is_check_name(std::string_view name);

/// Names defined before use, one definition per name, known constructors,
/// checks and keys, well-formed quadratic relations.
void validate(const Script& s);

}  // namespace koszul::cli
