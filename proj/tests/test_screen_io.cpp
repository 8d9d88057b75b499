#include <sstream>

#include "doctest.h"
#include "spinscreen/error.hpp"
#include "spinscreen/exact_oracle.hpp"
#include "spinscreen/geometry.hpp"
#include "spinscreen/recursion.hpp"
#include "spinscreen/screen_io.hpp"
#include "spinscreen/semiclassics.hpp"

using namespace spinscreen;

TEST_CASE("screen round trip is exact") {
  const auto p = screen_ranges(60, 90, 120, 110);
  const auto s = screen_by_eigensolve(p);
  for (Format f : {Format::Csv, Format::Json}) {
    std::ostringstream out;
    write_screen(out, s, f);
    std::istringstream in(out.str());
    const auto r = read_screen(in, f);
    CHECK(r.params() == p);
    CHECK(r.method() == Method::Eigensolve);
    CHECK(max_abs_difference(r, s) == 0.0);
    std::ostringstream again;
    write_screen(again, screen_by_eigensolve(p), f);
    CHECK(again.str() == out.str());
  }
}

TEST_CASE("csv layout") {
  const auto p = screen_ranges(1, 3, 3, 3);
  std::ostringstream out;
  write_screen(out, screen_oracle(p), Format::Csv);
  const auto text = out.str();
  CHECK(text.rfind("# two_a=1\n", 0) == 0);
  CHECK(text.find("# method=oracle\n") != std::string::npos);
  CHECK(text.find("# version=") != std::string::npos);
  CHECK(text.find("two_x,two_y,u\n2,2,") != std::string::npos);
}

TEST_CASE("malformed input") {
  std::istringstream bad("# two_a=60\ntwo_x,two_y,u\n1,2,3\n");
  CHECK_THROWS_AS(read_screen(bad, Format::Csv), Error);
  std::istringstream junk("{\"two_a\": ");
  CHECK_THROWS_AS(read_screen(junk, Format::Json), Error);
  CHECK(parse_format("csv") == Format::Csv);
  CHECK_FALSE(parse_format("xml"));
}

TEST_CASE("curve and field exports") {
  const auto p = screen_ranges(20, 30, 40, 36);
  std::ostringstream c, r, pot, cos, pr;
  const auto data = ridges_and_caustics(p);
  write_caustics(c, p, data);
  write_ridges(r, p, data);
  write_potentials(pot, p, Format::Json);
  write_cos_theta3(cos, p, Format::Csv);
  write_pr_compare(pr, p, pr_compare(p, screen_oracle(p)), Format::Json);
  CHECK(c.str().find("\"y_caustic_minus\":[[") != std::string::npos);
  CHECK(r.str().find("\"v_max\"") != std::string::npos);
  CHECK(pot.str().find("\"geometric\"") != std::string::npos);
  CHECK(cos.str().find("two_x,two_y,cos_theta3") != std::string::npos);
  CHECK(pr.str().find("\"interior_max_rel\"") != std::string::npos);
  CHECK_FALSE(version().empty());
}
