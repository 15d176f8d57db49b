#include "doctest.h"
#include "helpers.hpp"

#include "amsolve/rng.hpp"

using namespace amsolve;
using namespace amsolve::test;

TEST_CASE("parse the toy system") {
  SystemFile s = parse_system("ring x, y over zp(30011)\nx + y^2 - 1\nx*y - 1");
  CHECK(s.num_equations() == 2);
  CHECK(s.ring.nvars() == 2);
  CHECK(s.is_prime_field());
  CHECK(s.zp()[1] == poly("ring x, y over zp(30011)", "y*x - 1"));
}

TEST_CASE("parse errors carry a position") {
  CHECK_THROWS_AS(parse_system("ring x over zp(4)\nx"), ParseError);
  CHECK_THROWS_AS(parse_system("ring x over zp(7)\nx + z"), ParseError);
  CHECK_THROWS_AS(parse_system("ring x over zp(7)\n"), ParseError);
  CHECK_THROWS_AS(parse_system("ring x over zp(7)\nx^-1"), ParseError);
  CHECK_THROWS_AS(parse_system("ring x over zp(7)\n1.5*x"), ParseError);
  CHECK_THROWS_AS(parse_system("ring x, x over zp(7)\nx"), ParseError);
  try {
    parse_system("ring x over zp(7)\nx + z");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 5);
  }
}

TEST_CASE("comments, metadata and complex literals") {
  SystemFile s = parse_system(
      "# name: demo\n# free comment\nring a, b over complex\n"
      "1.5*a^2 - 2.5e-1*b  # trailing\n(a - b)^2\n");
  CHECK(s.name == "demo");
  CHECK_FALSE(s.is_prime_field());
  CHECK(s.complex()[0].coefficient(Monomial{0, 1}) == std::complex<double>(-0.25, 0));
  CHECK(s.complex()[1].size() == 3);
  CHECK_THROWS_AS(s.zp(), Error);
}

TEST_CASE("canonical listing") {
  SystemFile s = parse_system("ring x, y over zp(30011)\nx + y^2 - 1\nx*y - 1");
  CHECK(format_system(s) == "ring x, y over zp(30011)\ny^2 + x - 1\nx*y - 1\n");
  CHECK(format_polynomial(ZpPoly(PrimeField(), 2), kXY) == "0");
}

TEST_CASE("format/parse round trip on random systems") {
  Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng.uniform_int(0, 3);
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("v" + std::to_string(i));
    PrimeField F(trial % 2 ? 30011 : 7);
    std::vector<ZpPoly> eqs;
    const std::size_t m = 1 + rng.uniform_int(0, 3);
    for (std::size_t e = 0; e < m; ++e) {
      std::vector<ZpPoly::Term> terms;
      const std::size_t k = rng.uniform_int(0, 5);
      for (std::size_t t = 0; t < k; ++t) {
        Monomial mono(n);
        for (std::size_t v = 0; v < n; ++v) mono.set(v, static_cast<int>(rng.uniform_int(0, 3)));
        terms.push_back({mono, F.normalize(static_cast<std::int64_t>(rng.uniform_int(0, 20)) - 10)});
      }
      eqs.push_back(ZpPoly::from_terms(F, n, terms));
    }
    SystemFile s = make_system(names, eqs, trial % 3 ? "" : "random");
    CHECK(parse_system(format_system(s)) == s);
  }
}

TEST_CASE("complex round trip is exact") {
  std::vector<std::string> names{"a", "b"};
  ComplexField C;
  CPoly f = CPoly::from_terms(C, 2, {{Monomial{1, 0}, {0.1, 0}}, {Monomial{0, 0}, {-1e-17, 0}},
                                     {Monomial{2, 1}, {123456.789, 0}}});
  SystemFile s = make_system(names, std::vector<CPoly>{f});
  CHECK(parse_system(format_system(s)) == s);
}
