#pragma once

// A small expression language for right-hand sides f(t, x).
//
//   expr     := term   (('+' | '-') term)*
//   term     := unary  (('*' | '/') unary)*
//   unary    := '-' unary | power
//   power    := primary ('^' unary)?          right associative
//   primary  := number | 't' | 'x' digits | '(' expr ')'
//
// Precedence: ^ binds tighter than unary minus, which binds tighter than
// * and /, which bind tighter than + and -. Exponents must fold to a
// nonnegative integer constant ("x1^3", "2^3^2"); variables are x1..xn.

#include <cstddef>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hfrac/solver.hpp"

namespace hfrac::dsl {

enum class NodeKind { Literal, Time, Variable, Neg, Add, Sub, Mul, Div, Pow };

struct Node {
    NodeKind kind = NodeKind::Literal;
    double value = 0.0;  // Literal
    unsigned index = 0;  // Variable: 0-based component; Pow: exponent
    int lhs = -1;        // child (Neg, Pow base, binary left)
    int rhs = -1;        // binary right
};

/// Immutable expression tree stored as a node arena.
class Expr {
public:
    Expr(std::vector<Node> nodes, int root, std::size_t dim);

    [[nodiscard]] const Node& node(int i) const { return nodes_.at(static_cast<std::size_t>(i)); }
    [[nodiscard]] int root() const noexcept { return root_; }
    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
    [[nodiscard]] std::size_t depth() const;
    [[nodiscard]] bool uses_time() const;

    /// Structural equality (same shape, same literals bit for bit).
    friend bool operator==(const Expr& a, const Expr& b);

private:
    std::vector<Node> nodes_;
    int root_;
    std::size_t dim_;
};

inline constexpr std::size_t max_tree_depth = 64;

class ParseError : public std::runtime_error {
public:
    enum class Kind { Syntax, UnknownVariable, ExponentNotInteger, TooDeep };

    ParseError(Kind kind, std::size_t offset, const std::string& what);

    [[nodiscard]] Kind kind() const noexcept { return kind_; }
    /// Byte offset into the source where the problem was found.
    [[nodiscard]] std::size_t offset() const noexcept { return offset_; }

private:
    Kind kind_;
    std::size_t offset_;
};

[[nodiscard]] Expr parse(std::string_view src, std::size_t dim);

/// Throws EvalError on division by zero.
[[nodiscard]] double evaluate(const Expr& e, double t, std::span<const double> x);

/// base^exp by repeated squaring. Built-in systems use the same routine so
/// their hard-coded and parsed forms agree bit for bit.
[[nodiscard]] double ipow(double base, unsigned exp) noexcept;

/// Fully parenthesized source text; parse(to_string(e)) == e.
[[nodiscard]] std::string to_string(const Expr& e);

/// Constructor-style dump, e.g. "Neg(Pow(x1,3))".
[[nodiscard]] std::string to_debug_string(const Expr& e);

// =============================================================================
// System definition files
// =============================================================================
//
//   # comment
//   kind = caputo | rl
//   nu   = 0.5
//   h    = 1          (default 1)
//   a    = 0          (default 0)
//   x0   = 0.1, 0.2   (fixes the dimension)
//   f1   = -x1
//   f2   = -x2

struct SystemFileError : std::invalid_argument {
    SystemFileError(std::size_t line, const std::string& what)
        : std::invalid_argument("line " + std::to_string(line) + ": " + what), line(line) {}
    std::size_t line;
};

struct ParsedSystem {
    SystemDef system;
    std::vector<Expr> rhs;
};

[[nodiscard]] ParsedSystem parse_system(std::string_view text, std::string name = "custom");
[[nodiscard]] ParsedSystem load_system_file(const std::filesystem::path& path);

/// Right-hand side backed by parsed component expressions.
[[nodiscard]] Rhs make_rhs(std::vector<Expr> components);

} // namespace hfrac::dsl
