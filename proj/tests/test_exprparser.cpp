#include "catch_amalgamated.hpp"

#include <random>

#include "morera/exprparser.hpp"
#include "morera/funczoo.hpp"

using namespace morera;
using Catch::Matchers::WithinAbs;

namespace {

std::size_t error_offset(std::string_view src) {
  try {
    expr::parse(src);
  } catch (const expr::ParseError& e) {
    return e.offset();
  }
  FAIL("no parse error for '" << src << "'");
  return 0;
}

}  // namespace

TEST_CASE("reference examples") {
  const expr::Expr ce = expr::parse("z^2 / conj(z)");
  CHECK(expr::print(ce) == "((z ^ 2) / conj(z))");
  CHECK_THAT(std::abs(expr::eval(ce, 0.6) - 0.6), WithinAbs(0.0, 1e-15));
  CHECK(expr::eval(expr::parse("conj(z)"), Complex(0, 1)) == Complex(0, -1));
  CHECK_NOTHROW(expr::parse("exp(z) + 3.5i"));
  CHECK(expr::eval(expr::parse("exp(z) + 3.5i"), 0) == Complex(1, 3.5));
  CHECK(error_offset("z +* 2") == 3);
  CHECK_THROWS_AS(expr::eval(expr::parse("z/ (z - z)"), Complex(0.3, 0.1)), expr::EvalError);
}

TEST_CASE("precedence and associativity") {
  CHECK(expr::print(expr::parse("-z^2")) == "(-(z ^ 2))");
  CHECK(expr::print(expr::parse("z^2^3")) == "(z ^ (2 ^ 3))");
  CHECK(expr::print(expr::parse("1 - 2 - 3")) == "((1 - 2) - 3)");
  CHECK(expr::print(expr::parse("1 + 2 * 3")) == "(1 + (2 * 3))");
  CHECK(expr::print(expr::parse("z ^ -1")) == "(z ^ (-1))");
  CHECK(expr::eval(expr::parse("-2^2"), 0) == Complex(-4, 0));
  CHECK(expr::eval(expr::parse("2^3^2"), 0) == Complex(512, 0));
  CHECK_FALSE(expr::parse("zbar") == expr::parse("conj(z)"));  // distinct trees, same values
  CHECK(expr::eval(expr::parse("zbar"), Complex(1, 2)) == expr::eval(expr::parse("conj(z)"), Complex(1, 2)));
  CHECK(expr::parse(" z\t*\n2 ") == expr::parse("z*2"));
}

TEST_CASE("round trip parse-print-parse") {
  const char* exprs[] = {
      "z", "zbar", "i", "2", "0.5", ".5", "3.5i", "1e-3", "2.5E+2i", "z + 1",
      "z - 1", "z * z", "z / 2", "z ^ 3", "-z", "--z", "-(z + 1)", "z^2/conj(z)", "z^-2", "(z)",
      "((z))", "exp(z)", "sin(z) + cos(z)", "log(z + 2)", "sqrt(z + 3)", "abs(z)", "re(z) + im(z)*i", "conj(z)^2",
      "z^2^3", "1 - 2 - 3 - z", "1/2/3/z", "2*z^3 - 5*z + 1", "exp(-1/(1 - abs(z)^2))", "(z - 0.5i)*(z + 0.5i)",
      "z^3 - 2", "1/(z - 2)", "exp(i*z)", "cos(z)^2 + sin(z)^2", "abs(z)^2", "z*zbar", "-z^2 + -zbar",
      "((1 + z)/(1 - z))", "re(z)^2 - im(z)^2", "sqrt(abs(z))", "log(exp(z))", "z ^ 0.5", "2 ^ z",
      "(z + i) ^ (1 + 2)", "sin(cos(exp(z)))", "0.1 + 0.2 + 0.3*z",
  };
  STATIC_REQUIRE(std::size(exprs) == 50);
  for (const char* src : exprs) {
    INFO(src);
    const expr::Expr a = expr::parse(src);
    const std::string printed = expr::print(a);
    const expr::Expr b = expr::parse(printed);
    CHECK(a == b);
    CHECK(expr::print(b) == printed);
  }
}

TEST_CASE("malformed inputs produce positioned errors") {
  const std::pair<const char*, std::size_t> bad[] = {
      {"", 0}, {"z +", 3}, {"z +* 2", 3}, {"(z", 2}, {"z)", 1}, {"exp z", 4}, {"foo(z)", 0}, {"2z", 1},
      {"z ^", 3}, {"* z", 0}, {"sin()", 4}, {"1..2", 2}, {".", 0}, {"z $ 2", 2}, {"conj(z", 6},
      {"(", 1}, {"z z", 2}, {"1e999", 0}, {"zb", 0}, {"i i", 2},
  };
  STATIC_REQUIRE(std::size(bad) == 20);
  for (const auto& [src, offset] : bad) {
    INFO(src);
    const std::size_t got = error_offset(src);
    CHECK(got == offset);
    CHECK(got <= std::string_view(src).size());
  }
}

TEST_CASE("truncated prefixes never report offsets past the input") {
  const std::string full = "exp(-1/(1 - abs(z)^2)) + 3.25e-1i*conj(z)";
  for (std::size_t len = 0; len < full.size(); ++len) {
    const std::string prefix = full.substr(0, len);
    try {
      expr::parse(prefix);
    } catch (const expr::ParseError& e) {
      CHECK(e.offset() <= prefix.size());
    }
  }
}

TEST_CASE("eval matches hand-coded zoo oracles") {
  const std::pair<const char*, const char*> table[] = {
      {"poly3", "z^3 - 2"},
      {"expz", "exp(z)"},
      {"rational", "1/(z - 2)"},
      {"counterexample", "z^2/conj(z)"},
      {"conjugate", "conj(z)"},
      {"absq", "abs(z)^2"},
  };
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> mod(0.01, 1.0), ang(-kPi, kPi);
  for (const auto& [name, text] : table) {
    const auto& entry = zoo::builtin(name);
    const expr::Expr e = expr::parse(text);
    for (int k = 0; k < 100; ++k) {
      const Complex z = std::polar(mod(rng), ang(rng));
      const Complex want = entry(z);
      INFO(name << " at " << format_complex(z));
      CHECK(std::abs(expr::eval(e, z) - want) <= 1e-14 * std::max(1.0, std::abs(want)));
    }
  }
}

TEST_CASE("evaluation errors carry z") {
  try {
    expr::eval(expr::parse("log(z)"), 0);
    FAIL("expected eval error");
  } catch (const expr::EvalError& e) {
    CHECK(e.z() == Complex{});
    CHECK(e.kind() == ErrorKind::Eval);
  }
  CHECK_THROWS_AS(expr::eval(expr::parse("z^-1"), 0), expr::EvalError);
  CHECK_THROWS_AS(expr::eval(expr::parse("z^(-0.5)"), 0), expr::EvalError);
  CHECK(expr::eval(expr::parse("z^0.5"), 0) == Complex{});
}

TEST_CASE("principal branches and branch-power detection") {
  CHECK_THAT(std::abs(expr::eval(expr::parse("sqrt(z)"), Complex(-4, 0)) - Complex(0, 2)), WithinAbs(0.0, 1e-15));
  CHECK_THAT(std::abs(expr::eval(expr::parse("log(z)"), Complex(-1, 0)) - Complex(0, kPi)), WithinAbs(0.0, 1e-15));
  CHECK(expr::has_branch_power(expr::parse("z^0.5")));
  CHECK(expr::has_branch_power(expr::parse("z^z")));
  CHECK_FALSE(expr::has_branch_power(expr::parse("z^2 / conj(z)")));
  CHECK_FALSE(expr::has_branch_power(expr::parse("z^(1+1)")));
  CHECK_FALSE(expr::has_branch_power(expr::parse("z^-3")));
  // integer powers use exact repeated multiplication
  CHECK(expr::eval(expr::parse("z^3"), Complex(1, 1)) == Complex(1, 1) * Complex(1, 1) * Complex(1, 1));
}

TEST_CASE("parse_constant") {
  CHECK(expr::parse_constant("0.5i") == Complex(0, 0.5));
  CHECK(expr::parse_constant("-1") == Complex(-1, 0));
  CHECK(expr::parse_constant("0.3+0.4i") == Complex(0.3, 0.4));
  CHECK_THROWS_AS(expr::parse_constant("z"), Error);
}

TEST_CASE("ExprFunction is a complex oracle") {
  const expr::ExprFunction f(expr::parse("z*z"));
  static_assert(ComplexOracle<expr::ExprFunction>);
  CHECK(f(Complex(0, 1)) == Complex(-1, 0));
}
