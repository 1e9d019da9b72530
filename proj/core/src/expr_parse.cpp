#include <array>
#include <cctype>

#include "hydra/expr.hpp"

namespace hydra::expr {

namespace {

struct BuiltinInfo {
    const char* name;
    std::size_t arity;
};

constexpr std::array<BuiltinInfo, 6> kBuiltins = {{
    {"pair", 2},
    {"union", 1},
    {"inter", 2},
    {"pow", 1},
    {"exp", 2},
    {"kpair", 2},
}};

const BuiltinInfo* builtin_info(std::string_view name) {
    for (const auto& b : kBuiltins)
        if (name == b.name) return &b;
    return nullptr;
}

struct Token {
    enum class Kind {
        LBrace,
        RBrace,
        LParen,
        RParen,
        Comma,
        Semi,
        Assign,
        Dot,
        Ident,
        Number,
        Command,
        Mu,
        End,
    };

    Kind kind = Kind::End;
    std::string text;
    std::uint64_t number = 0;
    Pos pos;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    Token next() {
        skip_space_and_comments();
        Token t;
        t.pos = pos_;
        if (at_end()) {
            t.kind = Token::Kind::End;
            return t;
        }
        const char c = src_[index_];
        switch (c) {
            case '{': advance(); t.kind = Token::Kind::LBrace; return t;
            case '}': advance(); t.kind = Token::Kind::RBrace; return t;
            case '(': advance(); t.kind = Token::Kind::LParen; return t;
            case ')': advance(); t.kind = Token::Kind::RParen; return t;
            case ',': advance(); t.kind = Token::Kind::Comma; return t;
            case ';': advance(); t.kind = Token::Kind::Semi; return t;
            case '=': advance(); t.kind = Token::Kind::Assign; return t;
            case '.': advance(); t.kind = Token::Kind::Dot; return t;
            default: break;
        }
        if (c == ':') {
            advance();
            if (at_end() || !is_ident_start(src_[index_]))
                throw ParseError("expected a command name after ':'", t.pos.line, t.pos.col);
            t.kind = Token::Kind::Command;
            t.text = lex_ident_text();
            return t;
        }
        // UTF-8 'μ' is 0xCE 0xBC
        if (static_cast<unsigned char>(c) == 0xCE) {
            if (index_ + 1 < src_.size() &&
                static_cast<unsigned char>(src_[index_ + 1]) == 0xBC) {
                advance();
                advance();
                t.kind = Token::Kind::Mu;
                return t;
            }
            throw ParseError("unexpected byte in input", t.pos.line, t.pos.col);
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            t.kind = Token::Kind::Number;
            std::uint64_t value = 0;
            while (!at_end() && std::isdigit(static_cast<unsigned char>(src_[index_]))) {
                const std::uint64_t digit = static_cast<std::uint64_t>(src_[index_] - '0');
                if (value > (UINT64_MAX - digit) / 10)
                    throw ParseError("numeral literal is too large", t.pos.line, t.pos.col);
                value = value * 10 + digit;
                advance();
            }
            t.number = value;
            return t;
        }
        if (is_ident_start(c)) {
            t.text = lex_ident_text();
            t.kind = t.text == "mu" ? Token::Kind::Mu : Token::Kind::Ident;
            return t;
        }
        throw ParseError("unexpected character", t.pos.line, t.pos.col);
    }

private:
    static bool is_ident_start(char c) {
        return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
    }
    static bool is_ident_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    }

    bool at_end() const { return index_ >= src_.size(); }

    void advance() {
        if (src_[index_] == '\n') {
            ++pos_.line;
            pos_.col = 1;
        } else {
            ++pos_.col;
        }
        ++index_;
    }

    void skip_space_and_comments() {
        while (!at_end()) {
            const char c = src_[index_];
            if (c == '#') {
                while (!at_end() && src_[index_] != '\n') advance();
            } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else {
                break;
            }
        }
    }

    std::string lex_ident_text() {
        std::string out;
        while (!at_end() && is_ident_char(src_[index_])) {
            out.push_back(src_[index_]);
            advance();
        }
        return out;
    }

    std::string_view src_;
    std::size_t index_ = 0;
    Pos pos_;
};

class Parser {
public:
    explicit Parser(std::string_view src) : lexer_(src) {
        cur_ = lexer_.next();
        ahead_ = lexer_.next();
    }

    Program parse_program() {
        Program prog;
        skip_semis();
        while (cur_.kind != Token::Kind::End) {
            Statement st = parse_statement();
            const bool is_definition = st.kind == Statement::Kind::Definition;
            prog.statements.push_back(std::move(st));
            if (cur_.kind == Token::Kind::Semi) {
                skip_semis();
            } else if (is_definition) {
                error("expected ';' after definition");
            } else if (cur_.kind != Token::Kind::End) {
                error("expected ';' between statements");
            }
        }
        check_duplicate_definitions(prog);
        return prog;
    }

private:
    [[noreturn]] void error(const std::string& message) const {
        throw ParseError(message, cur_.pos.line, cur_.pos.col);
    }

    void advance() {
        cur_ = ahead_;
        ahead_ = lexer_.next();
    }

    void expect(Token::Kind kind, const char* what) {
        if (cur_.kind != kind) error(std::string("expected ") + what);
        advance();
    }

    void skip_semis() {
        while (cur_.kind == Token::Kind::Semi) advance();
    }

    Statement parse_statement() {
        if (cur_.kind == Token::Kind::Command) return parse_command();
        if (cur_.kind == Token::Kind::Ident && ahead_.kind == Token::Kind::Assign)
            return parse_definition();
        Statement st;
        st.kind = Statement::Kind::Expression;
        st.pos = cur_.pos;
        st.exprs.push_back(parse_expr());
        if (cur_.kind == Token::Kind::Command && cur_.text == "eq") {
            advance();
            st.kind = Statement::Kind::EqTest;
            st.exprs.push_back(parse_expr());
        }
        return st;
    }

    Statement parse_definition() {
        Statement st;
        st.kind = Statement::Kind::Definition;
        st.pos = cur_.pos;
        st.name = cur_.text;
        if (builtin_info(st.name))
            error("'" + st.name + "' is a reserved operator name");
        advance();  // ident
        advance();  // '='
        st.exprs.push_back(parse_expr());
        return st;  // the program loop enforces the trailing ';'
    }

    Statement parse_command() {
        Statement st;
        st.kind = Statement::Kind::Command;
        st.pos = cur_.pos;
        st.name = cur_.text;
        advance();
        if (st.name == "eq") error("':eq' is written between two expressions");
        if (st.name == "min" || st.name == "pow") {
            st.exprs.push_back(parse_expr());
        } else if (st.name == "exp") {
            st.exprs.push_back(parse_expr());
            st.exprs.push_back(parse_expr());
        } else if (st.name == "solve" || st.name == "reset" || st.name == "help" ||
                   st.name == "quit" || st.name == "q") {
            // no arguments
        } else if (st.name == "check") {
            if (cur_.kind == Token::Kind::Ident && ahead_.kind != Token::Kind::Assign) {
                st.options["axiom"] = cur_.text;
                advance();
            }
            parse_command_options(st);
        } else if (st.name == "print") {
            parse_command_options(st);
            if (!st.options.count("depth")) error("':print' expects depth=N");
        } else {
            error("unknown command ':" + st.name +
                  "' (known: eq, min, solve, pow, exp, check, print, reset, help, quit)");
        }
        return st;
    }

    void parse_command_options(Statement& st) {
        while (cur_.kind == Token::Kind::Ident && ahead_.kind == Token::Kind::Assign) {
            const std::string key = cur_.text;
            advance();  // key
            advance();  // '='
            if (cur_.kind == Token::Kind::Number) {
                st.options[key] = std::to_string(cur_.number);
            } else if (cur_.kind == Token::Kind::Ident) {
                st.options[key] = cur_.text;
            } else {
                error("expected a value after '" + key + "='");
            }
            advance();
        }
    }

    Node parse_expr() {
        Node node;
        node.pos = cur_.pos;
        switch (cur_.kind) {
            case Token::Kind::LBrace: {
                node.kind = Node::Kind::SetLiteral;
                advance();
                if (cur_.kind != Token::Kind::RBrace) {
                    node.children.push_back(parse_expr());
                    while (cur_.kind == Token::Kind::Comma) {
                        advance();
                        node.children.push_back(parse_expr());
                    }
                }
                expect(Token::Kind::RBrace, "'}'");
                return node;
            }
            case Token::Kind::Number: {
                node.kind = Node::Kind::Numeral;
                node.number = cur_.number;
                advance();
                return node;
            }
            case Token::Kind::Mu: {
                node.kind = Node::Kind::Binder;
                advance();
                if (cur_.kind != Token::Kind::Ident) error("expected a variable after the binder");
                node.name = cur_.text;
                if (builtin_info(node.name))
                    error("'" + node.name + "' is a reserved operator name");
                advance();
                expect(Token::Kind::Dot, "'.'");
                node.children.push_back(parse_expr());
                return node;
            }
            case Token::Kind::Ident: {
                if (const BuiltinInfo* b = builtin_info(cur_.text)) {
                    node.kind = Node::Kind::Builtin;
                    node.name = cur_.text;
                    advance();
                    expect(Token::Kind::LParen, "'(' after operator name");
                    node.children.push_back(parse_expr());
                    while (cur_.kind == Token::Kind::Comma) {
                        advance();
                        node.children.push_back(parse_expr());
                    }
                    expect(Token::Kind::RParen, "')'");
                    if (node.children.size() != b->arity)
                        throw ParseError("'" + node.name + "' expects " +
                                             std::to_string(b->arity) + " arguments, got " +
                                             std::to_string(node.children.size()),
                                         node.pos.line, node.pos.col);
                    return node;
                }
                node.kind = Node::Kind::Name;
                node.name = cur_.text;
                advance();
                return node;
            }
            default:
                error("expected an expression");
        }
    }

    static void collect_bound_names(const Node& node,
                                    std::map<std::string, Pos>& seen) {
        if (node.kind == Node::Kind::Binder) {
            if (auto [it, inserted] = seen.emplace(node.name, node.pos); !inserted)
                throw ParseError("duplicate definition of '" + node.name + "'",
                                 node.pos.line, node.pos.col);
        }
        for (const Node& child : node.children) collect_bound_names(child, seen);
    }

    static void check_duplicate_definitions(const Program& prog) {
        std::map<std::string, Pos> seen;
        for (const Statement& st : prog.statements) {
            if (st.kind == Statement::Kind::Definition) {
                if (auto [it, inserted] = seen.emplace(st.name, st.pos); !inserted)
                    throw ParseError("duplicate definition of '" + st.name + "'",
                                     st.pos.line, st.pos.col);
            }
            for (const Node& e : st.exprs) collect_bound_names(e, seen);
        }
    }

    Lexer lexer_;
    Token cur_;
    Token ahead_;
};

}  // namespace

Program parse(std::string_view text) { return Parser(text).parse_program(); }

}  // namespace hydra::expr
