#pragma once

#include <cstdint>
#include <memory>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hydra/axioms.hpp"
#include "hydra/hset.hpp"

namespace hydra::expr {

struct Pos {
    int line = 1;
    int col = 1;
};

// Expression tree. Set literals hold their members in children; builtin
// applications hold their arguments; a binder node holds one body child.
struct Node {
    enum class Kind { SetLiteral, Name, Numeral, Builtin, Binder };

    Kind kind = Kind::SetLiteral;
    Pos pos;
    std::string name;  // Name ident, Builtin operator, Binder variable
    std::uint64_t number = 0;
    std::vector<Node> children;
};

struct Statement {
    enum class Kind { Definition, Expression, EqTest, Command };

    Kind kind = Kind::Expression;
    Pos pos;
    std::string name;  // definition target or command name
    std::vector<Node> exprs;
    std::map<std::string, std::string> options;  // command key=val arguments
};

struct Program {
    std::vector<Statement> statements;
};

// Grammar:
//   program  := (statement ';')* statement? ';'?   (definitions require ';')
//   statement:= ident '=' expr | expr (':eq' expr)? | command
//   expr     := '{' [expr (',' expr)*] '}' | ident | nat
//             | builtin '(' expr (',' expr)* ')' | 'μ' ident '.' expr
//   builtin  := pair | union | inter | pow | exp | kpair
//   command  := ':min' expr | ':pow' expr | ':exp' expr expr | ':solve'
//             | ':check' [ident] (key '=' value)* | ':print' 'depth' '=' N
//             | ':reset' | ':help' | ':quit'
// 'mu' is an ASCII alias for 'μ'; '#' starts a line comment. Duplicate
// definition targets (including binder variables) are parse errors.
Program parse(std::string_view text);

// One universe with its named bindings; holds REPL state. reset() discards
// the universe entirely and starts a fresh one with the same limits.
struct Session {
    explicit Session(Limits limits = {})
        : limits(limits), universe(std::make_unique<Universe>(limits)) {}

    Limits limits;
    std::unique_ptr<Universe> universe;
    std::unordered_map<std::string, HSet> env;
    std::vector<std::string> def_order;
    std::optional<std::size_t> print_depth;  // nullopt = unlimited
    GenConfig check_defaults{.seed = 0, .max_nodes = 8, .max_cycle_prob = 0.5, .samples = 1000};
    bool quit_requested = false;

    void reset();
};

struct EvalOutput {
    std::vector<std::string> lines;
    std::optional<HSet> value;  // last evaluated expression
};

// Evaluates a program: all definitions are solved together as one equation
// system (mutual recursion through set literals is allowed; recursion through
// operators or plain aliases is an error), then the remaining statements run
// in order.
EvalOutput eval_program(Session& session, const Program& program);

// Deterministic text form: members in canonical order, one μ-binder per
// cycle at its first occurrence. Unlimited-depth output parses back to the
// same hyperset; depth-limited output replaces deeper parts with "...".
std::string print_canonical(const HSet& x, std::optional<std::size_t> depth = std::nullopt);

}  // namespace hydra::expr
