#include "envmin/expr.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>

namespace envmin {

ParseError::ParseError(const std::string& what, std::size_t position)
    : Error(fmt::format("{} at position {}", what, position)), position_(position) {}

namespace detail {

enum class Op { Number, Variable, Neg, Add, Sub, Mul, Div, Pow, Call };
enum class Fn { Abs, Sqrt, Exp, Log, Sin, Cos, Tan, Atan, Min, Max };

struct Node {
  Op op = Op::Number;
  double value = 0.0;
  int slot = -1;
  Fn fn = Fn::Abs;
  std::vector<std::unique_ptr<Node>> args;
};

namespace {

struct FnInfo {
  std::string_view name;
  Fn fn;
  int arity;
};

constexpr std::array<FnInfo, 10> kFunctions{{
    {"abs", Fn::Abs, 1},
    {"sqrt", Fn::Sqrt, 1},
    {"exp", Fn::Exp, 1},
    {"log", Fn::Log, 1},
    {"sin", Fn::Sin, 1},
    {"cos", Fn::Cos, 1},
    {"tan", Fn::Tan, 1},
    {"atan", Fn::Atan, 1},
    {"min", Fn::Min, 2},
    {"max", Fn::Max, 2},
}};

std::string_view fn_name(Fn fn) {
  for (const auto& f : kFunctions)
    if (f.fn == fn) return f.name;
  return "?";
}

class Parser {
 public:
  Parser(std::string_view src, const std::vector<std::string>& vars) : src_(src), vars_(vars) {}

  std::unique_ptr<Node> run() {
    skip();
    if (pos_ >= src_.size()) throw ParseError("empty expression", pos_);
    auto node = expr();
    skip();
    if (pos_ < src_.size()) throw ParseError(fmt::format("unexpected '{}'", src_[pos_]), pos_);
    return node;
  }

 private:
  std::string_view src_;
  const std::vector<std::string>& vars_;
  std::size_t pos_ = 0;

  void skip() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c)) {
      if (pos_ >= src_.size()) throw ParseError(fmt::format("expected '{}' before end of input", c), pos_);
      throw ParseError(fmt::format("expected '{}' but found '{}'", c, src_[pos_]), pos_);
    }
  }

  static std::unique_ptr<Node> binary(Op op, std::unique_ptr<Node> l, std::unique_ptr<Node> r) {
    auto n = std::make_unique<Node>();
    n->op = op;
    n->args.push_back(std::move(l));
    n->args.push_back(std::move(r));
    return n;
  }

  std::unique_ptr<Node> expr() {
    auto left = term();
    for (;;) {
      if (eat('+'))
        left = binary(Op::Add, std::move(left), term());
      else if (eat('-'))
        left = binary(Op::Sub, std::move(left), term());
      else
        return left;
    }
  }

  std::unique_ptr<Node> term() {
    auto left = unary();
    for (;;) {
      if (eat('*'))
        left = binary(Op::Mul, std::move(left), unary());
      else if (eat('/'))
        left = binary(Op::Div, std::move(left), unary());
      else
        return left;
    }
  }

  std::unique_ptr<Node> unary() {
    if (eat('-')) {
      auto n = std::make_unique<Node>();
      n->op = Op::Neg;
      n->args.push_back(unary());
      return n;
    }
    if (eat('+')) return unary();
    return power();
  }

  std::unique_ptr<Node> power() {
    auto base = primary();
    if (eat('^')) return binary(Op::Pow, std::move(base), unary());
    return base;
  }

  std::unique_ptr<Node> primary() {
    skip();
    if (pos_ >= src_.size()) throw ParseError("unexpected end of input", pos_);
    const char c = src_[pos_];
    if (eat('(')) {
      auto inner = expr();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    throw ParseError(fmt::format("unexpected '{}'", c), pos_);
  }

  std::unique_ptr<Node> number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    };
    digits();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      digits();
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t save = pos_++;
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
      if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
        digits();
      else
        pos_ = save;
    }
    auto n = std::make_unique<Node>();
    n->op = Op::Number;
    const auto text = src_.substr(start, pos_ - start);
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), n->value);
    if (ec != std::errc() || ptr != text.data() + text.size())
      throw ParseError(fmt::format("malformed number '{}'", text), start);
    return n;
  }

  std::unique_ptr<Node> identifier() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
      ++pos_;
    const auto name = src_.substr(start, pos_ - start);

    skip();
    if (pos_ < src_.size() && src_[pos_] == '(') {
      auto it = std::find_if(kFunctions.begin(), kFunctions.end(),
                             [&](const FnInfo& f) { return f.name == name; });
      if (it == kFunctions.end()) throw ParseError(fmt::format("unknown function '{}'", name), start);
      ++pos_;
      auto n = std::make_unique<Node>();
      n->op = Op::Call;
      n->fn = it->fn;
      if (!eat(')')) {
        do n->args.push_back(expr());
        while (eat(','));
        expect(')');
      }
      if (static_cast<int>(n->args.size()) != it->arity)
        throw ParseError(fmt::format("'{}' takes {} argument(s), got {}", name, it->arity, n->args.size()),
                         start);
      return n;
    }

    auto n = std::make_unique<Node>();
    if (name == "pi") {
      n->op = Op::Number;
      n->value = M_PI;
      return n;
    }
    auto it = std::find(vars_.begin(), vars_.end(), name);
    if (it == vars_.end()) {
      const bool is_fn = std::any_of(kFunctions.begin(), kFunctions.end(),
                                     [&](const FnInfo& f) { return f.name == name; });
      if (is_fn) throw ParseError(fmt::format("function '{}' used without arguments", name), start);
      throw ParseError(fmt::format("unknown identifier '{}'", name), start);
    }
    n->op = Op::Variable;
    n->slot = static_cast<int>(it - vars_.begin());
    return n;
  }
};

double checked(double v, const char* what) {
  if (!std::isfinite(v)) throw EvalError(fmt::format("non-finite result in {}", what));
  return v;
}

double eval(const Node& n, std::span<const double> x) {
  switch (n.op) {
    case Op::Number:
      return n.value;
    case Op::Variable:
      return x[static_cast<std::size_t>(n.slot)];
    case Op::Neg:
      return -eval(*n.args[0], x);
    case Op::Add:
      return checked(eval(*n.args[0], x) + eval(*n.args[1], x), "addition");
    case Op::Sub:
      return checked(eval(*n.args[0], x) - eval(*n.args[1], x), "subtraction");
    case Op::Mul:
      return checked(eval(*n.args[0], x) * eval(*n.args[1], x), "multiplication");
    case Op::Div: {
      const double den = eval(*n.args[1], x);
      if (den == 0.0) throw EvalError("division by zero");
      return checked(eval(*n.args[0], x) / den, "division");
    }
    case Op::Pow: {
      const double b = eval(*n.args[0], x);
      const double e = eval(*n.args[1], x);
      if (b < 0.0 && e != std::trunc(e)) throw EvalError("negative base with non-integer exponent");
      if (b == 0.0 && e < 0.0) throw EvalError("zero raised to a negative power");
      return checked(std::pow(b, e), "power");
    }
    case Op::Call:
      break;
  }
  const double a = eval(*n.args[0], x);
  switch (n.fn) {
    case Fn::Abs:
      return std::abs(a);
    case Fn::Sqrt:
      if (a < 0.0) throw EvalError("sqrt of a negative number");
      return std::sqrt(a);
    case Fn::Exp:
      return checked(std::exp(a), "exp");
    case Fn::Log:
      if (a <= 0.0) throw EvalError("log of a non-positive number");
      return std::log(a);
    case Fn::Sin:
      return std::sin(a);
    case Fn::Cos:
      return std::cos(a);
    case Fn::Tan:
      return checked(std::tan(a), "tan");
    case Fn::Atan:
      return std::atan(a);
    case Fn::Min:
      return std::min(a, eval(*n.args[1], x));
    case Fn::Max:
      return std::max(a, eval(*n.args[1], x));
  }
  return a;
}

// Binding strength used by the printer; atoms and calls bind tightest.
int precedence(const Node& n) {
  switch (n.op) {
    case Op::Add:
    case Op::Sub:
      return 1;
    case Op::Mul:
    case Op::Div:
      return 2;
    case Op::Neg:
      return 3;
    case Op::Pow:
      return 4;
    default:
      return 5;
  }
}

void print(const Node& n, const std::vector<std::string>& vars, std::string& out) {
  auto child = [&](const Node& c, bool parens) {
    if (parens) out += '(';
    print(c, vars, out);
    if (parens) out += ')';
  };
  switch (n.op) {
    case Op::Number:
      out += fmt::format("{}", n.value);
      return;
    case Op::Variable:
      out += vars[static_cast<std::size_t>(n.slot)];
      return;
    case Op::Neg:
      out += '-';
      child(*n.args[0], precedence(*n.args[0]) < precedence(n));
      return;
    case Op::Pow:
      // base binds tighter than unary minus; exponent is parsed as a unary
      child(*n.args[0], precedence(*n.args[0]) <= precedence(n));
      out += '^';
      child(*n.args[1], precedence(*n.args[1]) < 3);
      return;
    case Op::Call:
      out += fn_name(n.fn);
      out += '(';
      for (std::size_t i = 0; i < n.args.size(); ++i) {
        if (i) out += ", ";
        print(*n.args[i], vars, out);
      }
      out += ')';
      return;
    default:
      break;
  }
  static constexpr std::array<const char*, 4> sym{" + ", " - ", " * ", " / "};
  const int p = precedence(n);
  child(*n.args[0], precedence(*n.args[0]) < p);
  out += sym[static_cast<std::size_t>(n.op) - static_cast<std::size_t>(Op::Add)];
  child(*n.args[1], precedence(*n.args[1]) <= p);
}

bool same(const Node& a, const std::vector<std::string>& va, const Node& b,
          const std::vector<std::string>& vb) {
  if (a.op != b.op || a.args.size() != b.args.size()) return false;
  switch (a.op) {
    case Op::Number:
      if (a.value != b.value) return false;
      break;
    case Op::Variable:
      if (va[static_cast<std::size_t>(a.slot)] != vb[static_cast<std::size_t>(b.slot)]) return false;
      break;
    case Op::Call:
      if (a.fn != b.fn) return false;
      break;
    default:
      break;
  }
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!same(*a.args[i], va, *b.args[i], vb)) return false;
  return true;
}

bool uses_slot(const Node& n, int slot) {
  if (n.op == Op::Variable) return n.slot == slot;
  return std::any_of(n.args.begin(), n.args.end(), [&](const auto& c) { return uses_slot(*c, slot); });
}

}  // namespace
}  // namespace detail

Expression parse(std::string_view source, std::vector<std::string> variables) {
  Expression e;
  detail::Parser p(source, variables);
  e.root_ = p.run();
  e.variables_ = std::move(variables);
  return e;
}

std::vector<std::string> problem_variables() { return {"x1", "x2", "x3", "lambda"}; }

double Expression::evaluate(std::span<const double> values) const {
  if (!root_) throw EvalError("evaluating an empty expression");
  if (values.size() < variables_.size()) throw EvalError("too few values for the declared variables");
  return detail::checked(detail::eval(*root_, values), "expression");
}

double Expression::evaluate(const std::map<std::string, double>& bindings) const {
  std::vector<double> values(variables_.size(), 0.0);
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    auto it = bindings.find(variables_[i]);
    if (it != bindings.end()) {
      values[i] = it->second;
    } else if (root_ && detail::uses_slot(*root_, static_cast<int>(i))) {
      throw EvalError(fmt::format("unbound variable '{}'", variables_[i]));
    }
  }
  return evaluate(values);
}

bool Expression::uses(std::string_view name) const {
  auto it = std::find(variables_.begin(), variables_.end(), name);
  return root_ && it != variables_.end() && detail::uses_slot(*root_, static_cast<int>(it - variables_.begin()));
}

std::string Expression::to_string() const {
  std::string out;
  if (root_) detail::print(*root_, variables_, out);
  return out;
}

bool operator==(const Expression& a, const Expression& b) {
  if (!a.root_ || !b.root_) return a.root_ == b.root_;
  return detail::same(*a.root_, a.variables_, *b.root_, b.variables_);
}

}  // namespace envmin
