// Scalar arithmetic expressions over a declared list of variables.
//
// Grammar (highest precedence first):
//   primary := number | 'pi' | name | func '(' args ')' | '(' expr ')'
//   power   := primary [ '^' unary ]          right-associative
//   unary   := ('-' | '+') unary | power
//   term    := unary { ('*' | '/') unary }
//   expr    := term { ('+' | '-') term }
// Functions: abs sqrt exp log sin cos tan atan (one argument), min max (two).
#ifndef ENVMIN_EXPR_HPP
#define ENVMIN_EXPR_HPP

#include "envmin/types.hpp"

#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace envmin {

/// Thrown by parse(); carries the 0-based character offset of the problem.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Thrown by evaluate() on domain errors and non-finite results.
class EvalError : public Error {
 public:
  using Error::Error;
};

namespace detail {
struct Node;
}

/// Immutable parsed expression. Copies share the tree, so they are cheap and
/// safe to evaluate from several threads.
class Expression {
 public:
  Expression() = default;

  /// values[i] is bound to variables()[i].
  double evaluate(std::span<const double> values) const;
  double evaluate(const std::map<std::string, double>& bindings) const;

  const std::vector<std::string>& variables() const { return variables_; }
  bool uses(std::string_view name) const;
  bool empty() const { return root_ == nullptr; }

  /// Re-parseable text with the minimum parentheses needed to keep the tree.
  std::string to_string() const;

  /// Structural equality of the trees (variables compared by name).
  friend bool operator==(const Expression& a, const Expression& b);

 private:
  friend Expression parse(std::string_view, std::vector<std::string>);
  std::shared_ptr<const detail::Node> root_;
  std::vector<std::string> variables_;
};

/// Parses `source`; any identifier that is not in `variables`, a whitelisted
/// function or `pi` is rejected.
Expression parse(std::string_view source, std::vector<std::string> variables);

/// The variable list used by problem files: x1, x2, x3 and lambda.
std::vector<std::string> problem_variables();

}  // namespace envmin

#endif  // ENVMIN_EXPR_HPP
