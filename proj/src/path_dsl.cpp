#include "hamflow/path_dsl.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_set>

#include "hamflow/errors.hpp"

namespace hamflow {

namespace {

IntExprPtr make_int(IntExpr e) { return std::make_shared<const IntExpr>(std::move(e)); }
PathExprPtr make_path(PathExpr e) { return std::make_shared<const PathExpr>(std::move(e)); }

IntExprPtr literal(std::int64_t v) {
    IntExpr e;
    e.kind = IntExpr::Kind::Literal;
    e.value = v;
    return make_int(std::move(e));
}

struct Token {
    enum class Type {
        Ident, Int, LParen, RParen, LBrace, RBrace,
        Caret, Hash, Comma, Under, Eq, Plus, Minus, Star, Slash, Bar, End,
    };
    Type type;
    std::string text;
    std::int64_t value = 0;
    size_t pos = 0;
};

class Lexer {
  public:
    explicit Lexer(const std::string& text, size_t offset) {
        size_t i = 0;
        const size_t n = text.size();
        while (i < n) {
            char c = text[i];
            if (std::isspace(static_cast<unsigned char>(c))) {
                ++i;
                continue;
            }
            Token t;
            t.pos = offset + i;
            if (std::isalpha(static_cast<unsigned char>(c))) {
                size_t j = i;
                while (j < n && std::isalnum(static_cast<unsigned char>(text[j]))) ++j;
                t.type = Token::Type::Ident;
                t.text = text.substr(i, j - i);
                i = j;
            } else if (std::isdigit(static_cast<unsigned char>(c))) {
                size_t j = i;
                std::int64_t v = 0;
                while (j < n && std::isdigit(static_cast<unsigned char>(text[j]))) {
                    v = checked_add(checked_mul(v, 10), text[j] - '0');
                    ++j;
                }
                t.type = Token::Type::Int;
                t.value = v;
                i = j;
            } else {
                switch (c) {
                    case '(': t.type = Token::Type::LParen; break;
                    case ')': t.type = Token::Type::RParen; break;
                    case '{': t.type = Token::Type::LBrace; break;
                    case '}': t.type = Token::Type::RBrace; break;
                    case '^': t.type = Token::Type::Caret; break;
                    case '#': t.type = Token::Type::Hash; break;
                    case ',': t.type = Token::Type::Comma; break;
                    case '_': t.type = Token::Type::Under; break;
                    case '=': t.type = Token::Type::Eq; break;
                    case '+': t.type = Token::Type::Plus; break;
                    case '-': t.type = Token::Type::Minus; break;
                    case '*': t.type = Token::Type::Star; break;
                    case '/': t.type = Token::Type::Slash; break;
                    case '|': t.type = Token::Type::Bar; break;
                    default:
                        fail(ErrorCode::SyntaxError, "unexpected character '" +
                                                         std::string(1, c) + "' at position " +
                                                         std::to_string(offset + i));
                }
                ++i;
            }
            tokens_.push_back(std::move(t));
        }
        Token end;
        end.type = Token::Type::End;
        end.pos = offset + n;
        tokens_.push_back(std::move(end));
    }

    const Token& peek() const { return tokens_[cursor_]; }
    const Token& get() { return tokens_[cursor_++]; }
    bool accept(Token::Type type) {
        if (peek().type != type) return false;
        ++cursor_;
        return true;
    }
    const Token& expect(Token::Type type, const char* what) {
        if (peek().type != type) {
            fail(ErrorCode::SyntaxError, std::string("expected ") + what + " at position " +
                                             std::to_string(peek().pos));
        }
        return tokens_[cursor_++];
    }

  private:
    std::vector<Token> tokens_;
    size_t cursor_ = 0;
};

class Parser {
  public:
    explicit Parser(Lexer lex) : lex_(std::move(lex)) {}

    PathExprPtr parse_whole() {
        PathExprPtr e = parse_sequence();
        if (lex_.peek().type != Token::Type::End) {
            fail(ErrorCode::SyntaxError,
                 "trailing input at position " + std::to_string(lex_.peek().pos));
        }
        return e;
    }

  private:
    PathExprPtr parse_sequence() {
        std::vector<PathExprPtr> items;
        items.push_back(parse_item());
        while (lex_.accept(Token::Type::Comma)) items.push_back(parse_item());
        if (items.size() == 1) return items[0];
        PathExpr seq;
        seq.kind = PathExpr::Kind::Sequence;
        seq.items = std::move(items);
        return make_path(std::move(seq));
    }

    PathExprPtr parse_item() {
        PathExprPtr e = parse_atom();
        while (true) {
            if (lex_.accept(Token::Type::Hash)) {
                PathExpr sharp;
                sharp.kind = PathExpr::Kind::Sharp;
                sharp.child = std::move(e);
                e = make_path(std::move(sharp));
            } else if (lex_.accept(Token::Type::Caret)) {
                PathExpr pow;
                pow.kind = PathExpr::Kind::Power;
                pow.child = std::move(e);
                pow.exponent = parse_script("an exponent");
                e = make_path(std::move(pow));
            } else {
                return e;
            }
        }
    }

    PathExprPtr parse_atom() {
        const Token& t = lex_.peek();
        if (t.type == Token::Type::Ident) {
            lex_.get();
            PathExpr gen;
            gen.kind = PathExpr::Kind::Gen;
            gen.symbol = t.text;
            if (lex_.accept(Token::Type::Under)) gen.subscript = parse_script("a subscript");
            return make_path(std::move(gen));
        }
        if (t.type == Token::Type::LParen) {
            lex_.get();
            PathExprPtr body = parse_sequence();
            lex_.expect(Token::Type::RParen, "')'");
            if (lex_.peek().type == Token::Type::Under) return parse_family(std::move(body));
            return body;
        }
        fail(ErrorCode::SyntaxError,
             "expected a generator or '(' at position " + std::to_string(t.pos));
    }

    // Already saw ')'; consumes "_{i=a}^{b}".
    PathExprPtr parse_family(PathExprPtr body) {
        lex_.expect(Token::Type::Under, "'_'");
        lex_.expect(Token::Type::LBrace, "'{'");
        const Token& idx = lex_.expect(Token::Type::Ident, "an index symbol");
        PathExpr fam;
        fam.kind = PathExpr::Kind::Family;
        fam.symbol = idx.text;
        fam.child = std::move(body);
        lex_.expect(Token::Type::Eq, "'='");
        fam.lower = parse_int_expr();
        lex_.expect(Token::Type::RBrace, "'}'");
        lex_.expect(Token::Type::Caret, "'^'");
        fam.upper = parse_script("an upper bound");
        return make_path(std::move(fam));
    }

    // Exponent, subscript, or family bound: INT, IDENT, or {expr}.
    IntExprPtr parse_script(const char* what) {
        const Token& t = lex_.peek();
        if (t.type == Token::Type::Int) {
            lex_.get();
            return literal(t.value);
        }
        if (t.type == Token::Type::Ident) {
            lex_.get();
            IntExpr e;
            e.kind = IntExpr::Kind::Symbol;
            e.symbol = t.text;
            return make_int(std::move(e));
        }
        if (t.type == Token::Type::LBrace) {
            lex_.get();
            IntExprPtr e = parse_int_expr();
            lex_.expect(Token::Type::RBrace, "'}'");
            return e;
        }
        fail(ErrorCode::SyntaxError,
             std::string("expected ") + what + " at position " + std::to_string(t.pos));
    }

    IntExprPtr parse_int_expr() {
        IntExprPtr e = parse_int_term();
        while (true) {
            if (lex_.accept(Token::Type::Plus)) {
                e = binary(IntExpr::Kind::Add, e, parse_int_term());
            } else if (lex_.accept(Token::Type::Minus)) {
                e = binary(IntExpr::Kind::Sub, e, parse_int_term());
            } else {
                return e;
            }
        }
    }

    IntExprPtr parse_int_term() {
        IntExprPtr e = parse_int_unary();
        while (true) {
            if (lex_.accept(Token::Type::Star)) {
                e = binary(IntExpr::Kind::Mul, e, parse_int_unary());
            } else if (lex_.accept(Token::Type::Slash)) {
                e = binary(IntExpr::Kind::Div, e, parse_int_unary());
            } else {
                return e;
            }
        }
    }

    IntExprPtr parse_int_unary() {
        if (lex_.accept(Token::Type::Minus)) {
            IntExpr e;
            e.kind = IntExpr::Kind::Neg;
            e.lhs = parse_int_unary();
            return make_int(std::move(e));
        }
        return parse_int_primary();
    }

    IntExprPtr parse_int_primary() {
        const Token& t = lex_.peek();
        if (t.type == Token::Type::Int) {
            lex_.get();
            return literal(t.value);
        }
        if (t.type == Token::Type::Ident) {
            lex_.get();
            IntExpr e;
            e.kind = IntExpr::Kind::Symbol;
            e.symbol = t.text;
            return make_int(std::move(e));
        }
        if (t.type == Token::Type::Bar) {
            lex_.get();
            const Token& sym = lex_.expect(Token::Type::Ident, "a generator symbol");
            lex_.expect(Token::Type::Bar, "'|'");
            IntExpr e;
            e.kind = IntExpr::Kind::Order;
            e.symbol = sym.text;
            return make_int(std::move(e));
        }
        if (t.type == Token::Type::LParen) {
            lex_.get();
            IntExprPtr e = parse_int_expr();
            lex_.expect(Token::Type::RParen, "')'");
            return e;
        }
        fail(ErrorCode::SyntaxError,
             "expected an integer expression at position " + std::to_string(t.pos));
    }

    static IntExprPtr binary(IntExpr::Kind kind, IntExprPtr lhs, IntExprPtr rhs) {
        IntExpr e;
        e.kind = kind;
        e.lhs = std::move(lhs);
        e.rhs = std::move(rhs);
        return make_int(std::move(e));
    }

    Lexer lex_;
};

using Scope = std::vector<std::pair<std::string, std::int64_t>>;

std::int64_t eval_int(const IntExpr& e, const AbelianGroup& G, const Bindings& b,
                      const Scope& scope) {
    switch (e.kind) {
        case IntExpr::Kind::Literal:
            return e.value;
        case IntExpr::Kind::Symbol: {
            for (auto it = scope.rbegin(); it != scope.rend(); ++it) {
                if (it->first == e.symbol) return it->second;
            }
            auto it = b.ints.find(e.symbol);
            if (it == b.ints.end()) {
                fail(ErrorCode::UnboundSymbol, "no integer binding for '" + e.symbol + "'");
            }
            return it->second;
        }
        case IntExpr::Kind::Order: {
            auto it = b.elements.find(e.symbol);
            if (it == b.elements.end()) {
                fail(ErrorCode::UnboundSymbol, "no generator binding for '" + e.symbol + "'");
            }
            return G.element_order(it->second);
        }
        case IntExpr::Kind::Neg:
            return checked_sub(0, eval_int(*e.lhs, G, b, scope));
        case IntExpr::Kind::Add:
            return checked_add(eval_int(*e.lhs, G, b, scope), eval_int(*e.rhs, G, b, scope));
        case IntExpr::Kind::Sub:
            return checked_sub(eval_int(*e.lhs, G, b, scope), eval_int(*e.rhs, G, b, scope));
        case IntExpr::Kind::Mul:
            return checked_mul(eval_int(*e.lhs, G, b, scope), eval_int(*e.rhs, G, b, scope));
        case IntExpr::Kind::Div: {
            std::int64_t num = eval_int(*e.lhs, G, b, scope);
            std::int64_t den = eval_int(*e.rhs, G, b, scope);
            if (den == 0) fail(ErrorCode::NonIntegerDivision, "division by zero");
            if (num % den != 0) {
                fail(ErrorCode::NonIntegerDivision, std::to_string(num) + " is not a multiple of " +
                                                        std::to_string(den));
            }
            return num / den;
        }
    }
    fail(ErrorCode::InternalCheckFailed, "unhandled integer expression kind");
}

void expand_into(const PathExpr& e, const AbelianGroup& G, const Bindings& b, Scope& scope,
                 std::vector<SymbolicStep>& out) {
    switch (e.kind) {
        case PathExpr::Kind::Gen: {
            SymbolicStep s;
            s.symbol = e.symbol;
            if (e.subscript) s.subscript = eval_int(*e.subscript, G, b, scope);
            out.push_back(std::move(s));
            return;
        }
        case PathExpr::Kind::Power: {
            std::int64_t k = eval_int(*e.exponent, G, b, scope);
            if (e.child->kind == PathExpr::Kind::Gen) {
                SymbolicStep s;
                s.symbol = e.child->symbol;
                if (e.child->subscript) s.subscript = eval_int(*e.child->subscript, G, b, scope);
                s.sign = k < 0 ? -1 : 1;
                for (std::int64_t i = 0; i < (k < 0 ? -k : k); ++i) out.push_back(s);
                return;
            }
            if (k < 0) {
                fail(ErrorCode::NegativeExponent,
                     "negative power applies to single generators only");
            }
            std::vector<SymbolicStep> once;
            expand_into(*e.child, G, b, scope, once);
            for (std::int64_t i = 0; i < k; ++i) out.insert(out.end(), once.begin(), once.end());
            return;
        }
        case PathExpr::Kind::Sharp: {
            std::vector<SymbolicStep> inner;
            expand_into(*e.child, G, b, scope, inner);
            if (inner.empty()) {
                fail(ErrorCode::SharpOnEmpty, "truncation of an empty expansion");
            }
            inner.pop_back();
            out.insert(out.end(), inner.begin(), inner.end());
            return;
        }
        case PathExpr::Kind::Sequence:
            for (const auto& item : e.items) expand_into(*item, G, b, scope, out);
            return;
        case PathExpr::Kind::Family: {
            std::int64_t lo = eval_int(*e.lower, G, b, scope);
            std::int64_t hi = eval_int(*e.upper, G, b, scope);
            if (lo < 0 || hi < 0) {
                fail(ErrorCode::NegativeExponent, "family bounds must be nonnegative");
            }
            for (std::int64_t i = lo; i <= hi; ++i) {
                scope.emplace_back(e.symbol, i);
                expand_into(*e.child, G, b, scope, out);
                scope.pop_back();
            }
            return;
        }
        case PathExpr::Kind::Base:
            expand_into(*e.child, G, b, scope, out);
            return;
    }
    fail(ErrorCode::InternalCheckFailed, "unhandled path expression kind");
}

bool same_int(const IntExprPtr& a, const IntExprPtr& b) {
    if (!a || !b) return !a && !b;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case IntExpr::Kind::Literal: return a->value == b->value;
        case IntExpr::Kind::Symbol:
        case IntExpr::Kind::Order: return a->symbol == b->symbol;
        case IntExpr::Kind::Neg: return same_int(a->lhs, b->lhs);
        default: return same_int(a->lhs, b->lhs) && same_int(a->rhs, b->rhs);
    }
}

int int_prec(IntExpr::Kind kind) {
    switch (kind) {
        case IntExpr::Kind::Add:
        case IntExpr::Kind::Sub: return 1;
        case IntExpr::Kind::Mul:
        case IntExpr::Kind::Div: return 2;
        case IntExpr::Kind::Neg: return 3;
        default: return 4;
    }
}

std::string render_int(const IntExpr& e, int parent_prec) {
    const int prec = int_prec(e.kind);
    std::string body;
    switch (e.kind) {
        case IntExpr::Kind::Literal: body = std::to_string(e.value); break;
        case IntExpr::Kind::Symbol: body = e.symbol; break;
        case IntExpr::Kind::Order: body = "|" + e.symbol + "|"; break;
        case IntExpr::Kind::Neg: body = "-" + render_int(*e.lhs, prec); break;
        case IntExpr::Kind::Add:
            body = render_int(*e.lhs, prec) + "+" + render_int(*e.rhs, prec + 1);
            break;
        case IntExpr::Kind::Sub:
            body = render_int(*e.lhs, prec) + "-" + render_int(*e.rhs, prec + 1);
            break;
        case IntExpr::Kind::Mul:
            body = render_int(*e.lhs, prec) + "*" + render_int(*e.rhs, prec + 1);
            break;
        case IntExpr::Kind::Div:
            body = render_int(*e.lhs, prec) + "/" + render_int(*e.rhs, prec + 1);
            break;
    }
    return prec < parent_prec ? "(" + body + ")" : body;
}

// Script position after '^' or '_': bare when a plain literal or symbol.
std::string render_script(const IntExpr& e) {
    if (e.kind == IntExpr::Kind::Literal && e.value >= 0) return std::to_string(e.value);
    if (e.kind == IntExpr::Kind::Symbol) return e.symbol;
    return "{" + render_int(e, 0) + "}";
}

std::string render_expr(const PathExpr& e) {
    switch (e.kind) {
        case PathExpr::Kind::Gen: {
            std::string s = e.symbol;
            if (e.subscript) s += "_" + render_script(*e.subscript);
            return s;
        }
        case PathExpr::Kind::Power: {
            std::string inner = render_expr(*e.child);
            if (e.child->kind == PathExpr::Kind::Sequence) inner = "(" + inner + ")";
            return inner + "^" + render_script(*e.exponent);
        }
        case PathExpr::Kind::Sharp: {
            std::string inner = render_expr(*e.child);
            if (e.child->kind == PathExpr::Kind::Sequence) inner = "(" + inner + ")";
            return inner + "#";
        }
        case PathExpr::Kind::Sequence: {
            std::string s;
            for (size_t i = 0; i < e.items.size(); ++i) {
                if (i) s += ",";
                std::string inner = render_expr(*e.items[i]);
                if (e.items[i]->kind == PathExpr::Kind::Sequence) inner = "(" + inner + ")";
                s += inner;
            }
            return s;
        }
        case PathExpr::Kind::Family:
            return "(" + render_expr(*e.child) + ")_{" + e.symbol + "=" +
                   render_int(*e.lower, 0) + "}^" + render_script(*e.upper);
        case PathExpr::Kind::Base:
            return "[" + e.symbol + "]" + render_expr(*e.child);
    }
    fail(ErrorCode::InternalCheckFailed, "unhandled path expression kind");
}

}  // namespace

bool same_expr(const PathExpr& a, const PathExpr& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case PathExpr::Kind::Gen:
            return a.symbol == b.symbol && same_int(a.subscript, b.subscript);
        case PathExpr::Kind::Power:
            return same_int(a.exponent, b.exponent) && same_expr(*a.child, *b.child);
        case PathExpr::Kind::Sharp:
            return same_expr(*a.child, *b.child);
        case PathExpr::Kind::Sequence: {
            if (a.items.size() != b.items.size()) return false;
            for (size_t i = 0; i < a.items.size(); ++i) {
                if (!same_expr(*a.items[i], *b.items[i])) return false;
            }
            return true;
        }
        case PathExpr::Kind::Family:
            return a.symbol == b.symbol && same_int(a.lower, b.lower) &&
                   same_int(a.upper, b.upper) && same_expr(*a.child, *b.child);
        case PathExpr::Kind::Base:
            return a.symbol == b.symbol && same_expr(*a.child, *b.child);
    }
    return false;
}

PathExprPtr parse_path(const std::string& text) {
    size_t i = 0;
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i < text.size() && text[i] == '[') {
        size_t close = text.find(']', i + 1);
        if (close == std::string::npos) {
            fail(ErrorCode::SyntaxError, "unterminated base point at position " +
                                             std::to_string(i));
        }
        PathExpr base;
        base.kind = PathExpr::Kind::Base;
        base.symbol = text.substr(i + 1, close - i - 1);
        base.child = Parser(Lexer(text.substr(close + 1), close + 1)).parse_whole();
        return make_path(std::move(base));
    }
    return Parser(Lexer(text, 0)).parse_whole();
}

std::string render(const PathExpr& e) { return render_expr(e); }

std::string SymbolicStep::key() const {
    if (!subscript) return symbol;
    return symbol + "_" + std::to_string(*subscript);
}

std::string SymbolicStep::to_string() const {
    return sign < 0 ? key() + "^{-1}" : key();
}

std::vector<SymbolicStep> expand_steps(const PathExpr& e, const AbelianGroup& G,
                                       const Bindings& b) {
    std::vector<SymbolicStep> out;
    Scope scope;
    expand_into(e, G, b, scope, out);
    return out;
}

Walk expand_walk(const PathExpr& e, const AbelianGroup& G, const Bindings& b) {
    Walk w;
    if (e.kind == PathExpr::Kind::Base) {
        auto it = b.elements.find(e.symbol);
        w.base = it != b.elements.end() ? it->second : parse_element(G, e.symbol);
    } else {
        w.base = G.element_of(0);
    }
    for (const SymbolicStep& s : expand_steps(e, G, b)) {
        auto it = b.elements.find(s.key());
        if (it == b.elements.end()) {
            fail(ErrorCode::UnboundSymbol, "no generator binding for '" + s.key() + "'");
        }
        w.steps.push_back(s.sign < 0 ? G.neg(it->second) : it->second);
    }
    return w;
}

const char* walk_kind_name(WalkKind kind) {
    switch (kind) {
        case WalkKind::Path: return "Path";
        case WalkKind::Cycle: return "Cycle";
        case WalkKind::HamiltonianCycle: return "HamiltonianCycle";
        case WalkKind::NotSimple: return "NotSimple";
    }
    return "?";
}

WalkKind classify_walk(const CayleyGraph& X, const Walk& w) {
    const AbelianGroup& G = X.group();
    for (const GroupElement& s : w.steps) {
        if (!X.conn().contains_index(G.index_of(s))) {
            fail(ErrorCode::StepNotInS, "step " + G.element_to_string(s) +
                                            " is not in the connection set");
        }
    }
    const size_t len = w.steps.size();
    std::unordered_set<int> seen;
    int cur = G.index_of(w.base);
    seen.insert(cur);
    for (size_t i = 0; i < len; ++i) {
        cur = G.add_index(cur, G.index_of(w.steps[i]));
        bool fresh = seen.insert(cur).second;
        if (!fresh) {
            bool closing = i + 1 == len && cur == G.index_of(w.base);
            if (!closing) return WalkKind::NotSimple;
        }
    }
    if (cur != G.index_of(w.base)) return WalkKind::Path;
    if (len == 0) return WalkKind::Path;
    if (len == 2) return WalkKind::NotSimple;
    return seen.size() == static_cast<size_t>(G.order()) ? WalkKind::HamiltonianCycle
                                                         : WalkKind::Cycle;
}

}  // namespace hamflow
