#include "hfrac/sysdsl.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <sstream>

#include "hfrac/error.hpp"
#include "hfrac/grid.hpp"

namespace hfrac::dsl {

// =============================================================================
// Expr
// =============================================================================

Expr::Expr(std::vector<Node> nodes, int root, std::size_t dim) : nodes_(std::move(nodes)), root_(root), dim_(dim) {
    if (root_ < 0 || static_cast<std::size_t>(root_) >= nodes_.size())
        throw std::invalid_argument("Expr: root index out of range");
}

std::size_t Expr::depth() const {
    std::function<std::size_t(int)> rec = [&](int i) -> std::size_t {
        const Node& n = node(i);
        std::size_t d = 0;
        if (n.lhs >= 0)
            d = std::max(d, rec(n.lhs));
        if (n.rhs >= 0)
            d = std::max(d, rec(n.rhs));
        return d + 1;
    };
    return rec(root_);
}

bool Expr::uses_time() const {
    return std::any_of(nodes_.begin(), nodes_.end(), [](const Node& n) { return n.kind == NodeKind::Time; });
}

bool operator==(const Expr& a, const Expr& b) {
    std::function<bool(int, int)> same = [&](int i, int j) -> bool {
        if ((i < 0) != (j < 0))
            return false;
        if (i < 0)
            return true;
        const Node& x = a.node(i);
        const Node& y = b.node(j);
        if (x.kind != y.kind)
            return false;
        if (x.kind == NodeKind::Literal && !(x.value == y.value && std::signbit(x.value) == std::signbit(y.value)))
            return false;
        if ((x.kind == NodeKind::Variable || x.kind == NodeKind::Pow) && x.index != y.index)
            return false;
        return same(x.lhs, y.lhs) && same(x.rhs, y.rhs);
    };
    return a.dim() == b.dim() && same(a.root(), b.root());
}

ParseError::ParseError(Kind kind, std::size_t offset, const std::string& what)
    : std::runtime_error(what + " at offset " + std::to_string(offset)), kind_(kind), offset_(offset) {}

double ipow(double base, unsigned exp) noexcept {
    double result = 1.0;
    while (exp != 0) {
        if (exp & 1u)
            result *= base;
        exp >>= 1u;
        if (exp != 0)
            base *= base;
    }
    return result;
}

// =============================================================================
// Parser
// =============================================================================

namespace {

constexpr std::size_t max_recursion = 256;
constexpr unsigned max_exponent = 4096;

class Parser {
public:
    Parser(std::string_view src, std::size_t dim) : src_(src), dim_(dim) {}

    Expr run() {
        skip_ws();
        if (pos_ >= src_.size())
            throw ParseError(ParseError::Kind::Syntax, pos_, "empty expression");
        const int root = expr();
        skip_ws();
        if (pos_ < src_.size())
            throw ParseError(ParseError::Kind::Syntax, pos_, std::string("unexpected '") + src_[pos_] + "'");
        return {std::move(nodes_), root, dim_};
    }

private:
    std::string_view src_;
    std::size_t dim_;
    std::size_t pos_ = 0;
    std::size_t level_ = 0;
    std::vector<Node> nodes_;
    std::vector<std::size_t> depth_;

    struct Guard {
        Parser& p;
        explicit Guard(Parser& parser) : p(parser) {
            if (++p.level_ > max_recursion)
                throw ParseError(ParseError::Kind::TooDeep, p.pos_, "expression nested too deeply");
        }
        ~Guard() { --p.level_; }
    };

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])))
            ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    int add(Node n, std::size_t at) {
        std::size_t d = 1;
        if (n.lhs >= 0)
            d = std::max(d, depth_[static_cast<std::size_t>(n.lhs)] + 1);
        if (n.rhs >= 0)
            d = std::max(d, depth_[static_cast<std::size_t>(n.rhs)] + 1);
        if (d > max_tree_depth)
            throw ParseError(ParseError::Kind::TooDeep, at,
                             "expression tree deeper than " + std::to_string(max_tree_depth));
        nodes_.push_back(n);
        depth_.push_back(d);
        return static_cast<int>(nodes_.size() - 1);
    }

    int expr() {
        Guard g(*this);
        int lhs = term();
        for (;;) {
            skip_ws();
            const std::size_t at = pos_;
            if (accept('+'))
                lhs = add({NodeKind::Add, 0.0, 0, lhs, term()}, at);
            else if (accept('-'))
                lhs = add({NodeKind::Sub, 0.0, 0, lhs, term()}, at);
            else
                return lhs;
        }
    }

    int term() {
        Guard g(*this);
        int lhs = unary();
        for (;;) {
            skip_ws();
            const std::size_t at = pos_;
            if (accept('*'))
                lhs = add({NodeKind::Mul, 0.0, 0, lhs, unary()}, at);
            else if (accept('/'))
                lhs = add({NodeKind::Div, 0.0, 0, lhs, unary()}, at);
            else
                return lhs;
        }
    }

    int unary() {
        Guard g(*this);
        skip_ws();
        const std::size_t at = pos_;
        if (accept('-'))
            return add({NodeKind::Neg, 0.0, 0, unary(), -1}, at);
        return power();
    }

    int power() {
        Guard g(*this);
        const int base = primary();
        skip_ws();
        const std::size_t at = pos_;
        if (!accept('^'))
            return base;
        skip_ws();
        const std::size_t exp_at = pos_;
        const int exponent = unary();
        return add({NodeKind::Pow, 0.0, fold_exponent(exponent, exp_at), base, -1}, at);
    }

    // Exponent subtrees are folded to a constant and dropped from the tree.
    unsigned fold_exponent(int root, std::size_t at) {
        std::function<std::optional<double>(int)> fold = [&](int i) -> std::optional<double> {
            const Node& n = nodes_[static_cast<std::size_t>(i)];
            switch (n.kind) {
            case NodeKind::Literal: return n.value;
            case NodeKind::Time:
            case NodeKind::Variable: return std::nullopt;
            case NodeKind::Neg: {
                auto v = fold(n.lhs);
                return v ? std::optional<double>(-*v) : std::nullopt;
            }
            case NodeKind::Pow: {
                auto v = fold(n.lhs);
                return v ? std::optional<double>(ipow(*v, n.index)) : std::nullopt;
            }
            default: {
                auto l = fold(n.lhs);
                auto r = fold(n.rhs);
                if (!l || !r)
                    return std::nullopt;
                switch (n.kind) {
                case NodeKind::Add: return *l + *r;
                case NodeKind::Sub: return *l - *r;
                case NodeKind::Mul: return *l * *r;
                default:
                    if (*r == 0.0)
                        return std::nullopt;
                    return *l / *r;
                }
            }
            }
        };
        const auto v = fold(root);
        if (!v || !(*v >= 0.0) || *v != std::floor(*v) || *v > max_exponent)
            throw ParseError(ParseError::Kind::ExponentNotInteger, at,
                             "exponent must be a nonnegative integer constant");
        return static_cast<unsigned>(*v);
    }

    int primary() {
        Guard g(*this);
        skip_ws();
        const std::size_t at = pos_;
        if (pos_ >= src_.size())
            throw ParseError(ParseError::Kind::Syntax, pos_, "unexpected end of expression");
        const char c = src_[pos_];
        if (c == '(') {
            ++pos_;
            const int inner = expr();
            if (!accept(')'))
                throw ParseError(ParseError::Kind::Syntax, pos_, "expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
            return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t end = pos_;
            while (end < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[end])) || src_[end] == '_'))
                ++end;
            const std::string_view ident = src_.substr(pos_, end - pos_);
            pos_ = end;
            if (ident == "t")
                return add({NodeKind::Time, 0.0, 0, -1, -1}, at);
            if (ident.size() >= 2 && ident[0] == 'x' &&
                std::all_of(ident.begin() + 1, ident.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }) &&
                ident[1] != '0') {
                unsigned k = 0;
                const auto [ptr, ec] = std::from_chars(ident.data() + 1, ident.data() + ident.size(), k);
                if (ec == std::errc() && k >= 1 && k <= dim_)
                    return add({NodeKind::Variable, 0.0, k - 1, -1, -1}, at);
            }
            throw ParseError(ParseError::Kind::UnknownVariable, at, "unknown variable '" + std::string(ident) + "'");
        }
        throw ParseError(ParseError::Kind::Syntax, at, std::string("unexpected '") + c + "'");
    }

    int number() {
        const std::size_t at = pos_;
        std::size_t end = pos_;
        auto digits = [&] {
            while (end < src_.size() && std::isdigit(static_cast<unsigned char>(src_[end])))
                ++end;
        };
        digits();
        if (end < src_.size() && src_[end] == '.') {
            ++end;
            digits();
        }
        if (end < src_.size() && (src_[end] == 'e' || src_[end] == 'E')) {
            std::size_t e = end + 1;
            if (e < src_.size() && (src_[e] == '+' || src_[e] == '-'))
                ++e;
            if (e < src_.size() && std::isdigit(static_cast<unsigned char>(src_[e]))) {
                end = e;
                digits();
            }
        }
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(src_.data() + at, src_.data() + end, v);
        if (ec != std::errc() || ptr != src_.data() + end || !std::isfinite(v))
            throw ParseError(ParseError::Kind::Syntax, at, "malformed number");
        pos_ = end;
        return add({NodeKind::Literal, v, 0, -1, -1}, at);
    }
};

double eval_node(const Expr& e, int i, double t, std::span<const double> x) {
    const Node& n = e.node(i);
    switch (n.kind) {
    case NodeKind::Literal: return n.value;
    case NodeKind::Time: return t;
    case NodeKind::Variable: return x[n.index];
    case NodeKind::Neg: return -eval_node(e, n.lhs, t, x);
    case NodeKind::Pow: return ipow(eval_node(e, n.lhs, t, x), n.index);
    case NodeKind::Add: return eval_node(e, n.lhs, t, x) + eval_node(e, n.rhs, t, x);
    case NodeKind::Sub: return eval_node(e, n.lhs, t, x) - eval_node(e, n.rhs, t, x);
    case NodeKind::Mul: return eval_node(e, n.lhs, t, x) * eval_node(e, n.rhs, t, x);
    case NodeKind::Div: {
        const double num = eval_node(e, n.lhs, t, x);
        const double den = eval_node(e, n.rhs, t, x);
        if (den == 0.0)
            throw EvalError("division by zero");
        return num / den;
    }
    }
    return 0.0;
}

const char* op_symbol(NodeKind k) {
    switch (k) {
    case NodeKind::Add: return "+";
    case NodeKind::Sub: return "-";
    case NodeKind::Mul: return "*";
    case NodeKind::Div: return "/";
    default: return "?";
    }
}

const char* op_name(NodeKind k) {
    switch (k) {
    case NodeKind::Add: return "Add";
    case NodeKind::Sub: return "Sub";
    case NodeKind::Mul: return "Mul";
    case NodeKind::Div: return "Div";
    default: return "?";
    }
}

std::string print(const Expr& e, int i, bool debug) {
    const Node& n = e.node(i);
    switch (n.kind) {
    case NodeKind::Literal: return debug ? "Lit(" + format_double(n.value) + ")" : format_double(n.value);
    case NodeKind::Time: return "t";
    case NodeKind::Variable: return "x" + std::to_string(n.index + 1);
    case NodeKind::Neg:
        return debug ? "Neg(" + print(e, n.lhs, true) + ")" : "(-" + print(e, n.lhs, false) + ")";
    case NodeKind::Pow:
        return debug ? "Pow(" + print(e, n.lhs, true) + "," + std::to_string(n.index) + ")"
                     : "(" + print(e, n.lhs, false) + "^" + std::to_string(n.index) + ")";
    default:
        return debug ? std::string(op_name(n.kind)) + "(" + print(e, n.lhs, true) + "," + print(e, n.rhs, true) + ")"
                     : "(" + print(e, n.lhs, false) + " " + op_symbol(n.kind) + " " + print(e, n.rhs, false) + ")";
    }
}

} // namespace

Expr parse(std::string_view src, std::size_t dim) {
    return Parser(src, dim).run();
}

double evaluate(const Expr& e, double t, std::span<const double> x) {
    if (x.size() != e.dim())
        throw std::invalid_argument("evaluate: state has " + std::to_string(x.size()) + " entries, expected " +
                                    std::to_string(e.dim()));
    return eval_node(e, e.root(), t, x);
}

std::string to_string(const Expr& e) { return print(e, e.root(), false); }
std::string to_debug_string(const Expr& e) { return print(e, e.root(), true); }

// =============================================================================
// System files
// =============================================================================

Rhs make_rhs(std::vector<Expr> components) {
    auto shared = std::make_shared<const std::vector<Expr>>(std::move(components));
    return [shared](double t, std::span<const double> x) {
        std::vector<double> out(shared->size());
        for (std::size_t i = 0; i < shared->size(); ++i)
            out[i] = evaluate((*shared)[i], t, x);
        return out;
    };
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

double parse_real(std::string_view s, std::size_t line, const std::string& key) {
    s = trim(s);
    double v = 0.0;
    const char* first = s.data();
    if (!s.empty() && s.front() == '+')
        ++first;
    const auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
        throw SystemFileError(line, "bad number for '" + key + "': '" + std::string(s) + "'");
    return v;
}

} // namespace

ParsedSystem parse_system(std::string_view text, std::string name) {
    std::optional<OperatorKind> kind;
    std::optional<double> nu;
    double h = 1.0;
    double a = 0.0;
    std::optional<std::vector<double>> x0;
    struct PendingRhs {
        unsigned index;
        std::string source;
        std::size_t line;
    };
    std::vector<PendingRhs> pending;
    std::set<std::string> seen;

    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos)
            end = text.size();
        std::string_view line = text.substr(start, end - start);
        start = end + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw SystemFileError(line_no, "expected 'key = value'");
        const std::string key(trim(line.substr(0, eq)));
        const std::string_view value = trim(line.substr(eq + 1));
        if (key == "kind" || key == "nu" || key == "h" || key == "a" || key == "x0")
            if (!seen.insert(key).second)
                throw SystemFileError(line_no, "duplicate key '" + key + "'");

        if (key == "kind") {
            if (value == "caputo")
                kind = OperatorKind::Caputo;
            else if (value == "rl" || value == "riemann-liouville")
                kind = OperatorKind::RiemannLiouville;
            else
                throw SystemFileError(line_no, "kind must be 'caputo' or 'rl'");
        } else if (key == "nu") {
            nu = parse_real(value, line_no, key);
        } else if (key == "h") {
            h = parse_real(value, line_no, key);
        } else if (key == "a") {
            a = parse_real(value, line_no, key);
        } else if (key == "x0") {
            std::vector<double> v;
            std::size_t p = 0;
            while (p <= value.size()) {
                std::size_t c = value.find(',', p);
                if (c == std::string_view::npos)
                    c = value.size();
                v.push_back(parse_real(value.substr(p, c - p), line_no, key));
                p = c + 1;
            }
            x0 = std::move(v);
        } else if (key.size() >= 2 && key[0] == 'f' &&
                   std::all_of(key.begin() + 1, key.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
            if (key.size() > 7)
                throw SystemFileError(line_no, "component index too large in '" + key + "'");
            const unsigned idx = static_cast<unsigned>(std::stoul(key.substr(1)));
            if (idx == 0)
                throw SystemFileError(line_no, "components are numbered from f1");
            pending.push_back({idx, std::string(value), line_no});
        } else {
            throw SystemFileError(line_no, "unknown key '" + key + "'");
        }
    }

    if (!kind)
        throw SystemFileError(line_no, "missing 'kind'");
    if (!nu)
        throw SystemFileError(line_no, "missing 'nu'");
    if (!x0)
        throw SystemFileError(line_no, "missing 'x0'");
    const std::size_t dim = x0->size();

    std::vector<std::optional<Expr>> exprs(dim);
    for (const auto& p : pending) {
        if (p.index > dim)
            throw SystemFileError(p.line, "f" + std::to_string(p.index) + " exceeds the dimension " +
                                              std::to_string(dim) + " fixed by x0");
        if (exprs[p.index - 1])
            throw SystemFileError(p.line, "duplicate definition of f" + std::to_string(p.index));
        try {
            exprs[p.index - 1] = parse(p.source, dim);
        } catch (const ParseError& e) {
            throw SystemFileError(p.line, "f" + std::to_string(p.index) + ": " + e.what());
        }
    }
    std::vector<Expr> components;
    for (std::size_t i = 0; i < dim; ++i) {
        if (!exprs[i])
            throw SystemFileError(line_no, "missing f" + std::to_string(i + 1));
        components.push_back(*exprs[i]);
    }

    ParsedSystem out{{}, components};
    SystemDef& sys = out.system;
    sys.name = std::move(name);
    sys.dim = dim;
    sys.kind = *kind;
    sys.nu = *nu;
    sys.a = a;
    sys.h = h;
    sys.x0 = *x0;
    sys.time_dependent = std::any_of(components.begin(), components.end(), [](const Expr& e) { return e.uses_time(); });
    sys.rhs = make_rhs(std::move(components));
    try {
        sys.validate();
    } catch (const std::invalid_argument& e) {
        throw SystemFileError(line_no, e.what());
    }
    return out;
}

ParsedSystem load_system_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open system file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_system(ss.str(), path.stem().string());
}

} // namespace hfrac::dsl
