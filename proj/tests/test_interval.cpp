#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "qhb/interval.hpp"
#include "qhb/linalg.hpp"
#include "support.hpp"

using namespace qhb;
using qhb::testing::encloses;
using qhb::testing::exact;

TEST_CASE("construction rejects reversed bounds") {
  CHECK_THROWS_AS(Interval(2.0, 1.0), std::invalid_argument);
  CHECK(Interval(1.0, 1.0).is_point());
}

TEST_CASE("directed primitives bracket the exact result") {
  const double a = 0.1, b = 0.2;
  CHECK(exact(rnd::add_down(a, b)) <= exact(a) + exact(b));
  CHECK(exact(rnd::add_up(a, b)) >= exact(a) + exact(b));
  CHECK(rnd::add_up(a, b) == std::nextafter(rnd::add_down(a, b), 1.0));
  CHECK(exact(rnd::mul_down(a, b)) <= exact(a) * exact(b));
  CHECK(exact(rnd::mul_up(a, b)) >= exact(a) * exact(b));
  CHECK(exact(rnd::div_down(1.0, 3.0)) <= mpq_class(1, 3));
  CHECK(exact(rnd::div_up(1.0, 3.0)) >= mpq_class(1, 3));
  // Exact operations stay exact.
  CHECK(rnd::add_down(0.5, 0.25) == 0.75);
  CHECK(rnd::add_up(0.5, 0.25) == 0.75);
  const double s = rnd::sqrt_up(2.0);
  CHECK(exact(s) * exact(s) >= 2);
  const double t = rnd::sqrt_down(2.0);
  CHECK(exact(t) * exact(t) <= 2);
}

TEST_CASE("pow_int") {
  CHECK(pow_int(Interval(-1, 2), 2) == Interval(0, 4));
  const Interval c = pow_int(Interval(2.0), 3);
  CHECK(c.contains(8.0));
  CHECK(c.width() <= 1e-14);
  CHECK(encloses(pow_int(Interval(0.5), 4), mpq_class(1, 16)));
  CHECK(pow_int(Interval(-3, -2), 3).contains(Interval(-27, -8)));
  CHECK(pow_int(Interval(-3, 2), 0) == Interval(1.0));
}

TEST_CASE("division by an interval containing zero is an error") {
  CHECK_THROWS_AS(Interval(1.0) / Interval(-1, 1), std::domain_error);
  CHECK_THROWS_AS(Interval(1.0) / Interval(0.0), std::domain_error);
  CHECK((Interval(1.0) / Interval(4.0)) == Interval(0.25));
}

TEST_CASE("sqrt and root") {
  CHECK_THROWS_AS(sqrt(Interval(-1, 1)), std::domain_error);
  CHECK(sqrt(Interval(4.0)).contains(2.0));
  const Interval r = root(Interval(27.0), 3);
  CHECK(r.contains(3.0));
  CHECK(r.width() < 1e-14);
}

TEST_CASE("ratio and pi enclosures") {
  const Interval third = Interval::ratio(1, 3);
  CHECK(encloses(third, mpq_class(1, 3)));
  CHECK(third.width() > 0);
  CHECK(Interval::pi().contains(3.141592653589793));
  CHECK(Interval::pi().width() <= 5e-16);
  CHECK(cos(Interval::pi()).contains(-1.0));
}

TEST_CASE("decimal rendering bounds the binary value") {
  for (double x : {0.1, 1.0 / 3.0, -2.718281828459045, 1e-300, 6.02214076e23}) {
    CHECK(parse_down(decimal_down(x)) <= x);
    CHECK(parse_up(decimal_up(x)) >= x);
    CHECK(exact(parse_down(decimal_down(x))) <= exact(x));
  }
  CHECK(parse_down("0.1") < parse_up("0.1"));
  CHECK(encloses(Interval(parse_down("0.1"), parse_up("0.1")), mpq_class(1, 10)));
  CHECK(parse_down("0.5") == 0.5);
  CHECK(parse_up("0.5") == 0.5);
}

TEST_CASE("krawczyk_scalar examples") {
  SUBCASE("quadratic with closed-form root") {
    ScalarMap f{[](const Interval& k) { return sqr(k) - k - Interval(4.0); },
                [](const Interval& k) { return Interval(2.0) * k - Interval(1.0); }};
    auto r = krawczyk_scalar(f, Interval(2, 3));
    REQUIRE(r.has_value());
    CHECK(r->contains((1 + std::sqrt(17.0)) / 2));
    CHECK(r->width() < 1e-13);
  }
  SUBCASE("identity shift") {
    ScalarMap f{[](const Interval& k) { return k - Interval(1.0); }, [](const Interval&) { return Interval(1.0); }};
    auto r = krawczyk_scalar(f, Interval(0.5, 1.5));
    REQUIRE(r.has_value());
    CHECK(r->contains(1.0));
    CHECK(r->width() <= 4.5e-16);
  }
  SUBCASE("quartic at p = 0") {
    ScalarMap f{[](const Interval& k) { return pow_int(k, 4) - pow_int(k, 3); },
                [](const Interval& k) { return Interval(4.0) * pow_int(k, 3) - Interval(3.0) * sqr(k); }};
    auto r = krawczyk_scalar(f, Interval(0.9, 1.1));
    REQUIRE(r.has_value());
    CHECK(r->contains(1.0));
  }
  SUBCASE("no root") {
    ScalarMap f{[](const Interval& k) { return sqr(k) + Interval(1.0); },
                [](const Interval& k) { return Interval(2.0) * k; }};
    CHECK_FALSE(krawczyk_scalar(f, Interval(0.5, 1.5)).has_value());
  }
}

TEST_CASE("hull, intersect and inflate") {
  CHECK(hull(Interval(0, 1), Interval(3, 4)) == Interval(0, 4));
  CHECK_FALSE(intersect(Interval(0, 1), Interval(2, 3)).has_value());
  CHECK(*intersect(Interval(0, 2), Interval(1, 3)) == Interval(1, 2));
  CHECK(inflate(Interval(1.0), 0.5).contains(Interval(0.5, 1.5)));
  CHECK(abs(Interval(-3, 2)) == Interval(0, 3));
  CHECK(Interval(-2, 1).mig() == 0);
  CHECK(Interval(2, 5).mig() == 2);
}
