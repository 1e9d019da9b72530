#include <doctest.h>

#include <random>

#include "hydra/axioms.hpp"
#include "hydra/expr.hpp"

using namespace hydra;
using namespace hydra::expr;

namespace {

std::vector<std::string> run_lines(Session& s, const std::string& text) {
    return eval_program(s, parse(text)).lines;
}

std::vector<std::string> run_lines(const std::string& text) {
    Session s;
    return run_lines(s, text);
}

HSet run_value(Session& s, const std::string& text) {
    const auto out = eval_program(s, parse(text));
    REQUIRE(out.value.has_value());
    return *out.value;
}

}  // namespace

TEST_CASE("parsing shapes") {
    SUBCASE("set literal") {
        const Program p = parse("{ {}, {{}} }");
        REQUIRE(p.statements.size() == 1);
        CHECK(p.statements[0].kind == Statement::Kind::Expression);
        const Node& e = p.statements[0].exprs[0];
        CHECK(e.kind == Node::Kind::SetLiteral);
        REQUIRE(e.children.size() == 2);
        CHECK(e.children[0].children.empty());
        CHECK(e.children[1].children.size() == 1);
    }

    SUBCASE("binder desugars to a definition plus a reference") {
        const Program p = parse("\xCE\xBCx.{x}");
        REQUIRE(p.statements.size() == 1);
        const Node& e = p.statements[0].exprs[0];
        CHECK(e.kind == Node::Kind::Binder);
        CHECK(e.name == "x");
        Session s;
        const HSet v = run_value(s, "\xCE\xBCx.{x}");
        CHECK(equals(v, s.universe->intern(Apg::build(1, {{0, 0}}, 0))));
    }

    SUBCASE("ascii alias for the binder") {
        Session s;
        const HSet v = run_value(s, "mu x.{x}");
        CHECK(equals(v, s.universe->intern(Apg::build(1, {{0, 0}}, 0))));
    }

    SUBCASE("systems desugar nested literals to fresh variables") {
        Session s;
        run_lines(s, "x = {y, {}}; y = {x};");
        CHECK(s.env.count("x") == 1);
        CHECK(s.env.count("y") == 1);
        // x = {y, ∅} and y = {x}: distinct solutions, mutually referring
        CHECK(!equals(s.env.at("x"), s.env.at("y")));
        CHECK(is_member(s.env.at("y"), s.env.at("x")));
        CHECK(is_member(s.env.at("x"), s.env.at("y")));
    }

    SUBCASE("errors carry positions") {
        CHECK_THROWS_AS(parse("{"), ParseError);
        CHECK_THROWS_AS(parse("{ , }"), ParseError);
        CHECK_THROWS_AS(parse("pair({}, {}, {})"), ParseError);  // arity
        CHECK_THROWS_AS(parse("pair"), ParseError);              // reserved
        CHECK_THROWS_AS(parse(":frobnicate {}"), ParseError);
        try {
            parse("x = {};\ny = }");
            FAIL("expected a parse error");
        } catch (const ParseError& e) {
            CHECK(e.line == 2);
            CHECK(e.column >= 5);
        }
    }

    SUBCASE("duplicate definitions are parse errors") {
        CHECK_THROWS_WITH_AS(parse("x = {}; x = {{}};"), doctest::Contains("duplicate"),
                             ParseError);
        CHECK_THROWS_WITH_AS(parse("mu x.{x} :eq mu x.{x}"), doctest::Contains("duplicate"),
                             ParseError);
        CHECK_THROWS_WITH_AS(parse("x = {}; y = mu x.{x};"), doctest::Contains("duplicate"),
                             ParseError);
    }
}

TEST_CASE("evaluation") {
    SUBCASE("numeral sugar") {
        const auto lines = run_lines("2 :eq { {}, {{}} }");
        REQUIRE(lines.size() == 1);
        CHECK(lines[0] == "true");
    }

    SUBCASE("mutually recursive atoms collapse") {
        const auto lines = run_lines("\xCE\xBCx.{x} :eq \xCE\xBCy.{{}, y}");
        REQUIRE(lines.size() == 1);
        CHECK(lines[0] == "false");  // {∅, y} has the empty set as a member
        const auto same = run_lines("\xCE\xBCx.{x} :eq \xCE\xBCy.{y}");
        CHECK(same[0] == "true");
    }

    SUBCASE("builtins evaluate strictly") {
        Session s;
        CHECK(equals(run_value(s, "pair({}, {{}})"), numeral(*s.universe, 2)));
        CHECK(equals(run_value(s, "union({{{}}, {{{}}}})"), numeral(*s.universe, 2)));
        CHECK(equals(run_value(s, "inter(2, {{}})"), numeral(*s.universe, 1)));
        CHECK(equals(run_value(s, "kpair({}, {})"), run_value(s, "{{{}}}")));
        CHECK(elements(run_value(s, "exp({{}}, 2)")).size() == 2);
        CHECK(elements(run_value(s, "pow(3)")).size() == 8);
    }

    SUBCASE("definitions persist across programs in one session") {
        Session s;
        run_lines(s, "a = {{}};");
        CHECK(run_lines(s, "a :eq 1")[0] == "true");
    }

    SUBCASE("unbound names fail") {
        CHECK_THROWS_WITH_AS(run_lines("ghost"), doctest::Contains("unbound"), EvalError);
        CHECK_THROWS_WITH_AS(run_lines("x = {ghost};"), doctest::Contains("unbound"), EvalError);
    }

    SUBCASE("recursion through operators is rejected") {
        CHECK_THROWS_WITH_AS(run_lines("x = pair(x, {});"), doctest::Contains("operator"),
                             EvalError);
        CHECK_THROWS_WITH_AS(run_lines("x = y; y = x;"), doctest::Contains("alias"), EvalError);
        CHECK_THROWS_WITH_AS(run_lines("x = x;"), doctest::Contains("alias"), EvalError);
    }

    SUBCASE("aliases and operator definitions in dependency order") {
        Session s;
        run_lines(s, "a = \xCE\xBCx.{x}; b = a; c = pair(b, {}); d = {c, b};");
        CHECK(equals(s.env.at("b"), s.env.at("a")));
        CHECK(is_member(s.env.at("b"), s.env.at("c")));
        CHECK(is_member(s.env.at("c"), s.env.at("d")));
        // forward references work: the batch is solved as one system
        Session s2;
        run_lines(s2, "p = {q}; q = {r}; r = {};");
        CHECK(is_member(s2.env.at("q"), s2.env.at("p")));
    }

    SUBCASE("resource errors propagate") {
        CHECK_THROWS_AS(run_lines("99999999"), ResourceError);
    }
}

TEST_CASE("printing") {
    Session s;

    SUBCASE("pinned forms") {
        CHECK(print_canonical(s.universe->empty()) == "{}");
        const HSet atom = s.universe->intern(Apg::build(1, {{0, 0}}, 0));
        CHECK(print_canonical(atom) == "\xCE\xBCx0.{x0}");
        CHECK(print_canonical(numeral(*s.universe, 2)) == "{{}, {{}}}");
    }

    SUBCASE("one binder per cycle, references afterwards") {
        const HSet atom = s.universe->intern(Apg::build(1, {{0, 0}}, 0));
        const HSet both = pair(atom, singleton(atom));
        // {Ω} = Ω, so this is just Ω again
        CHECK(print_canonical(both) == "\xCE\xBCx0.{x0}");
        const HSet wrapped = pair(atom, s.universe->empty());
        CHECK(print_canonical(wrapped) == "{{}, \xCE\xBCx0.{x0}}");
    }

    SUBCASE("depth-limited output is cut with dots") {
        CHECK(print_canonical(numeral(*s.universe, 2), 0) == "...");
        CHECK(print_canonical(numeral(*s.universe, 2), 1) == "{..., ...}");
        CHECK(print_canonical(numeral(*s.universe, 2), 2) == "{{}, {...}}");
    }

    SUBCASE(":print depth commands steer statement output") {
        const auto lines = run_lines(":print depth=1; 2; :print depth=unlimited; 2");
        REQUIRE(lines.size() == 2);
        CHECK(lines[0] == "{..., ...}");
        CHECK(lines[1] == "{{}, {{}}}");
    }
}

TEST_CASE("round-trip: parse after print is the identity on hypersets") {
    Session s;
    std::mt19937_64 rng(31415);
    for (int i = 0; i < 300; ++i) {
        const HSet x = s.universe->intern(random_graph(rng, 10, 0.6));
        const std::string text = print_canonical(x);
        CAPTURE(text);
        Session fresh;
        const HSet back = run_value(fresh, text);
        CHECK(s.universe->encoding_of(x) == fresh.universe->encoding_of(back));
    }
}

TEST_CASE("commands") {
    SUBCASE(":pow and :exp print canonical values") {
        const auto lines = run_lines(":pow {{}}");
        REQUIRE(lines.size() == 1);
        CHECK(lines[0] == "{{}, {{}}}");
        const auto expo = run_lines(":exp {{}} 2");
        REQUIRE(expo.size() == 1);
        CHECK(expo[0].find("{") == 0);
    }

    SUBCASE(":min prints the canonical form") {
        const auto lines = run_lines(":min {{}, {}}");
        REQUIRE(lines.size() == 1);
        CHECK(lines[0] == "{{}}");
    }

    SUBCASE(":solve lists definitions in order") {
        const auto lines = run_lines("b = {}; a = {b}; :solve");
        REQUIRE(lines.size() == 2);
        CHECK(lines[0] == "b = {}");
        CHECK(lines[1] == "a = {{}}");
    }

    SUBCASE(":check emits machine-readable lines") {
        const auto lines = run_lines(":check extensionality samples=20 seed=5");
        REQUIRE(lines.size() == 1);
        CHECK(lines[0] == "extensionality\tPASS\t20\t5");
    }

    SUBCASE(":reset discards the universe and the bindings") {
        Session s;
        run_lines(s, "a = {{}, {{}}};");
        CHECK(s.universe->size() > 0);
        run_lines(s, ":reset");
        CHECK(s.env.empty());
        CHECK(s.universe->size() == 0);
        CHECK_THROWS_AS(run_lines(s, "a"), EvalError);
    }

    SUBCASE(":quit stops execution") {
        Session s;
        const auto lines = run_lines(s, "1; :quit; 2");
        CHECK(lines.size() == 1);
        CHECK(s.quit_requested);
    }
}

TEST_CASE("parser survives arbitrary bytes") {
    std::mt19937_64 rng(271828);
    const std::string structured = "{},;=()x0123456789 \n\t:#.\xCE\xBC" "abcdefmu_";
    int parsed_ok = 0;
    for (int i = 0; i < 20000; ++i) {
        const std::size_t len = rng() % 48;
        std::string input;
        input.reserve(len);
        const bool pure_random = (i % 2) == 0;
        for (std::size_t k = 0; k < len; ++k) {
            input.push_back(pure_random
                                ? static_cast<char>(rng() & 0xFF)
                                : structured[rng() % structured.size()]);
        }
        try {
            parse(input);
            ++parsed_ok;
        } catch (const ParseError&) {
            // structured failure is the contract
        }
    }
    CHECK(parsed_ok > 0);  // some random inputs are valid programs
}

TEST_CASE("binders nested in definitions and operator arguments") {
    SUBCASE("binder body may reference the enclosing definition") {
        Session s;
        // x = {y} and y = {y, x}: one mutually recursive system
        run_lines(s, "x = {mu y.{y, x}};");
        const HSet x = s.env.at("x");
        const auto members = elements(x);
        REQUIRE(members.size() == 1);
        CHECK(is_member(x, members[0]));
        CHECK(is_member(members[0], members[0]));
    }

    SUBCASE("binder inside a strict operator argument") {
        Session s;
        const HSet v = run_value(s, "pow(mu q.{q})");
        const HSet atom = s.universe->intern(Apg::build(1, {{0, 0}}, 0));
        CHECK(equals(v, pair(s.universe->empty(), singleton(atom))));
    }

    SUBCASE("binder inside a command argument") {
        const auto lines = run_lines(":min mu q.{q}");
        REQUIRE(lines.size() == 1);
        CHECK(lines[0] == "\xCE\xBCx0.{x0}");
    }

    SUBCASE("cycles through an operator definition are rejected") {
        CHECK_THROWS_WITH_AS(run_lines("x = {y}; y = pair(x, {});"),
                             doctest::Contains("operator"), EvalError);
    }

    SUBCASE("strict members are solved before the system that uses them") {
        Session s;
        run_lines(s, "x = {x, pair({}, {{}})};");
        const HSet x = s.env.at("x");
        CHECK(is_member(x, x));
        CHECK(is_member(numeral(*s.universe, 2), x));  // pair(0, 1) = {0,1} = 2
        CHECK(elements(x).size() == 2);
    }
}
