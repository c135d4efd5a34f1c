#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include "gen.hpp"
#include "lexenum/instance.hpp"

using namespace lexenum;

namespace {

Csp parse_text(const std::string& text) {
    std::istringstream in(text);
    return parse_instance(in);
}

std::optional<ParseError> parse_error(const std::string& text) {
    try {
        parse_text(text);
    } catch (const ParseError& e) {
        return e;
    }
    return std::nullopt;
}

bool mentions(const ParseError& e, const std::string& needle) {
    return std::string(e.what()).find(needle) != std::string::npos;
}

} // namespace

TEST_CASE("minimal difference instance parses") {
    const Csp csp = parse_text("vars 2\n"
                               "dom 1 0 1\n"
                               "dom 2 0 1\n"
                               "neq 1 2\n");
    CHECK(csp.num_vars == 2);
    CHECK(csp.domains == std::vector<Domain>{Domain(0, 1), Domain(0, 1)});
    CHECK(csp.constraints == std::vector<Constraint>{BinaryNeq{0, 1}});
    CHECK(csp.name.empty());
    CHECK(!csp.declared_order);
}

TEST_CASE("alldiff expands to the difference clique") {
    const Csp csp = parse_text("vars 3\n"
                               "dom 1 1 3\ndom 2 1 3\ndom 3 1 3\n"
                               "alldiff 1 2 3\n");
    CHECK(csp.constraints ==
          std::vector<Constraint>{BinaryNeq{0, 1}, BinaryNeq{0, 2},
                                  BinaryNeq{1, 2}});
}

TEST_CASE("sym lines turn into image tables") {
    const Csp csp = parse_text("vars 3\n"
                               "dom 1 0 1\ndom 2 0 1\ndom 3 0 1\n"
                               "sym 2 1 3\n");
    REQUIRE(csp.symmetries.size() == 1);
    CHECK(csp.symmetries[0] == Permutation({1, 0, 2}));
}

TEST_CASE("the full grammar round-trips structurally") {
    const std::string text = "# header comment\n"
                             "csp board\n"
                             "vars 4\n"
                             "\n"
                             "dom 1 0 2\n"
                             "dom 2 0 2   # inline comment\n"
                             "dom 3 1 2\n"
                             "dom 4 0 1\n"
                             "ext 2 1 2 ; 0 1; 1 0 ; 2 2\n"
                             "ext 1 3 ;\n"
                             "neq 3 4\n"
                             "sym 2 1 3 4\n"
                             "lex 2 1 2 <= 2 3\n"
                             "lex 0 <=\n"
                             "order 4 3 2 1\n";
    const Csp csp = parse_text(text);
    CHECK(csp.name == "board");
    CHECK(csp.num_vars == 4);
    CHECK(csp.domains[2] == Domain(1, 2));

    REQUIRE(csp.constraints.size() == 3);
    const auto& ext = std::get<Extensional>(csp.constraints[0]);
    CHECK(ext.scope == std::vector<int>{0, 1});
    CHECK(ext.tuples ==
          std::vector<std::vector<int>>{{0, 1}, {1, 0}, {2, 2}});
    CHECK(std::get<Extensional>(csp.constraints[1]).tuples.empty());
    CHECK(std::get<BinaryNeq>(csp.constraints[2]) == BinaryNeq{2, 3});

    REQUIRE(csp.lex_constraints.size() == 2);
    CHECK(csp.lex_constraints[0] == LexLeq{{0, 1}, {1, 2}});
    CHECK(csp.lex_constraints[1] == LexLeq{{}, {}});
    REQUIRE(csp.declared_order);
    CHECK(*csp.declared_order == std::vector<int>{3, 2, 1, 0});

    CHECK(parse_text(print_instance(csp)) == csp);
}

TEST_CASE("parse errors carry the offending line") {
    struct Case {
        const char* text;
        int line;
        const char* needle;
    };
    const Case cases[] = {
        {"dom 1 0 1\n", 1, "before vars"},
        {"vars 2\ndom 1 0 1\ndom 2 0 1\nvars 2\n", 4, "duplicate vars"},
        {"vars 0\n", 1, "positive"},
        {"vars 1\ndom 1 0 1\ndom 1 0 1\n", 3, "duplicate domain"},
        {"vars 1\ndom 1 2 1\n", 2, "empty domain"},
        {"vars 2\ndom 1 0 1\ndom 2 0 1\nneq 1 3\n", 4, "out of range"},
        {"vars 1\ndom 1 0 1\nbogus 3\n", 3, "unknown directive"},
        {"vars 2 3\n", 1, "trailing tokens"},
        {"vars x\n", 1, "expected integer"},
        {"vars 1\ndom 1 0 1\nneq 1\n", 3, "ends early"},
        {"vars 2\ndom 1 0 1\ndom 2 0 1\next 2 1 2 ; 0 ;\n", 4,
         "shorter than the arity"},
        {"vars 2\ndom 1 0 1\ndom 2 0 1\next 0 ;\n", 4, "arity"},
        {"vars 2\ndom 1 0 1\ndom 2 0 1\nlex 1 1 2\n", 4, "expected '<='"},
        {"vars 2\ndom 1 0 1\ndom 2 0 1\nlex -1 <=\n", 4, "negative"},
        {"vars 2\ndom 1 0 1\ndom 2 0 1\nsym 1 1\n", 4, "not a permutation"},
        {"vars 2\ndom 1 0 1\ndom 2 0 1\norder 1\n", 4, "ends early"},
        {"vars 2\ndom 1 0 1\ndom 2 0 1\norder 1 2\norder 1 2\n", 5,
         "duplicate order"},
        {"vars 1\ndom 1 0 1\nalldiff\n", 3, "no variables"},
        {"csp a\ncsp b\nvars 1\ndom 1 0 1\n", 2, "duplicate csp"},
        {"", 0, "missing vars"},
        {"vars 2\ndom 1 0 1\n", 0, "variable 2 has no domain"},
        {"vars 1\ndom 1 0 1\next 1 1 ; 5\n", 0, "tuple"},
    };
    for (const Case& c : cases) {
        CAPTURE(c.text);
        const auto e = parse_error(c.text);
        REQUIRE(e);
        CHECK(e->line == c.line);
        CHECK(mentions(*e, c.needle));
    }
}

TEST_CASE("random instances survive print and reparse") {
    std::mt19937 rng(601);
    for (int round = 0; round < 40; ++round) {
        const Csp csp = gen::random_symmetric_instance(rng, 5, 3);
        CHECK(parse_text(print_instance(csp)) == csp);
    }
}

TEST_CASE("printing has no spelling for unary value lists") {
    Csp csp;
    csp.num_vars = 1;
    csp.domains.assign(1, Domain(0, 3));
    csp.constraints.emplace_back(UnaryIn{0, {1, 2}});
    CHECK_THROWS_AS(print_instance(csp), std::invalid_argument);
}

TEST_CASE("instance files load from disk") {
    SUBCASE("a missing file reports path, not line") {
        try {
            parse_instance_file("/nonexistent/missing.csp");
            FAIL("expected a parse error");
        } catch (const ParseError& e) {
            CHECK(e.line == 0);
            CHECK(mentions(e, "cannot open"));
            CHECK(mentions(e, "missing.csp"));
        }
    }
    SUBCASE("a real file parses like its text") {
        const std::string path = "/tmp/lexenum_test_instance.csp";
        const std::string text = "vars 2\ndom 1 0 1\ndom 2 0 1\nneq 1 2\n";
        {
            std::ofstream out(path);
            out << text;
        }
        CHECK(parse_instance_file(path) == parse_text(text));
        std::remove(path.c_str());
    }
}
