#include "catch_amalgamated.hpp"

#include <random>

#include "mtum/boundary_spec.hpp"
#include "mtum/error.hpp"

using namespace mtum;

namespace {

ErrorCode spec_error(const char* s) {
  try {
    parse_boundary_spec(s);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected ParseError");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("spec grammar examples") {
  const auto a = parse_boundary_spec("0:5:30,inf");
  CHECK(std::vector<double>(a.cuts().begin(), a.cuts().end()) ==
        std::vector<double>{5, 10, 15, 20, 25, 30});
  const auto g1 = parse_boundary_spec("0:1:100,200");
  CHECK(g1.size() == 101);
  CHECK(g1.last() == 200);
  CHECK(parse_boundary_spec("0:50:200").size() == 4);
  CHECK(parse_boundary_spec(" 1.5, 2.5 ,4 ").cut(1) == 1.5);
  CHECK(parse_boundary_spec("0:4:30").last() == 28);
  CHECK(parse_boundary_spec("0:0.1:1").size() == 10);
  CHECK(parse_number_list("0,0.5,1:1:3") == std::vector<double>{0, 0.5, 1, 2, 3});
}

TEST_CASE("spec errors") {
  CHECK(spec_error("") == ErrorCode::ParseError);
  CHECK(spec_error("5") == ErrorCode::ParseError);
  CHECK(spec_error("5,3") == ErrorCode::ParseError);
  CHECK(spec_error("0:0:10") == ErrorCode::ParseError);
  CHECK(spec_error("1:2") == ErrorCode::ParseError);
  CHECK(spec_error("1,inf,3") == ErrorCode::ParseError);
  CHECK(spec_error("1,x") == ErrorCode::ParseError);
}

TEST_CASE("format and parse round trip") {
  for (const char* s : {"0:5:30,inf", "0:1:100,200,inf", "0:1:200,inf", "0:5:50,200,inf",
                        "0:10:100,200,inf", "0:50:200,inf", "0,1.5,2,7.25,inf"}) {
    const auto b = parse_boundary_spec(s);
    CHECK(format_boundary_spec(b) == s);
    CHECK(parse_boundary_spec(format_boundary_spec(b)) == b);
  }
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> w(0.01, 3.0);
  for (int k = 0; k < 200; ++k) {
    std::vector<double> cuts;
    double c = 0;
    const int m = 2 + k % 17;
    for (int j = 0; j < m; ++j) cuts.push_back(c += (k % 3 == 0 ? 0.25 : w(rng)));
    const GroupBoundaries b(cuts);
    CHECK(parse_boundary_spec(format_boundary_spec(b)) == b);
  }
}
