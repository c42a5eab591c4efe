#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

#include <binpack/model.hpp>

#include "support.hpp"

using namespace binpack;

TEST_SUITE("model") {

TEST_CASE("classify: interior points") {
  CHECK(classify(Rational(1, 10)) == ItemClass::Small);
  CHECK(classify(Rational(2, 5)) == ItemClass::Medium);
  CHECK(classify(Rational(3, 5)) == ItemClass::Large);
  CHECK(classify(Rational(9, 10)) == ItemClass::XLarge);
}

TEST_CASE("classify: boundaries are exact") {
  CHECK(classify(Rational(1, 3)) == ItemClass::Small);    // closed right end of S
  CHECK(classify(Rational(1, 2)) == ItemClass::Medium);   // closed right end of M
  CHECK(classify(Rational(2, 3)) == ItemClass::XLarge);   // L is open on both sides
  CHECK(classify(Rational(1)) == ItemClass::XLarge);
  // A hair to either side of each boundary.
  Rational eps(1, 1000000000);
  CHECK(classify(Rational(1, 3) + eps) == ItemClass::Medium);
  CHECK(classify(Rational(1, 2) + eps) == ItemClass::Large);
  CHECK(classify(Rational(2, 3) - eps) == ItemClass::Large);
  CHECK(classify(Rational(1, 3) - eps) == ItemClass::Small);
}

TEST_CASE("classify: rejects sizes outside (0, 1]") {
  CHECK_THROWS_AS(classify(Rational(0)), std::domain_error);
  CHECK_THROWS_AS(classify(Rational(-1, 2)), std::domain_error);
  CHECK_THROWS_AS(classify(Rational(3, 2)), std::domain_error);
}

TEST_CASE("classify: partitions (0, 1] totally") {
  std::mt19937_64 rng(11);
  for (const Rational& s : testsupport::random_sizes(rng, 3000, 97)) {
    ItemClass got = classify(s);
    ItemClass want;
    if (s <= Rational(1, 3))
      want = ItemClass::Small;
    else if (s <= Rational(1, 2))
      want = ItemClass::Medium;
    else if (s < Rational(2, 3))
      want = ItemClass::Large;
    else
      want = ItemClass::XLarge;
    CHECK(got == want);
  }
}

TEST_CASE("class names") {
  CHECK(std::string(to_string(ItemClass::Small)) == "S");
  CHECK(std::string(to_string(ItemClass::Medium)) == "M");
  CHECK(std::string(to_string(ItemClass::Large)) == "L");
  CHECK(std::string(to_string(ItemClass::XLarge)) == "XL");
}

TEST_CASE("make_instance fills indices and classes") {
  Instance inst = make_instance("t", {Rational(3, 5), Rational(1, 4), Rational(1, 2)});
  REQUIRE(inst.items.size() == 3);
  CHECK(inst.label == "t");
  CHECK(inst.items[0].index == 0);
  CHECK(inst.items[1].index == 1);
  CHECK(inst.items[2].index == 2);
  CHECK(inst.items[0].cls == ItemClass::Large);
  CHECK(inst.items[1].cls == ItemClass::Small);
  CHECK(inst.items[2].cls == ItemClass::Medium);
  CHECK(inst.count(ItemClass::Large) == 1);
  CHECK(inst.count(ItemClass::Small) == 1);
  CHECK(inst.count(ItemClass::Medium) == 1);
  CHECK(inst.count(ItemClass::XLarge) == 0);
  CHECK_FALSE(inst.empty());
  CHECK(inst.size() == 3);
}

TEST_CASE("size_of sums exactly") {
  // A four-item group whose exact total is 2/3 + 8e; floating point would
  // not land on it.
  Rational e(1, 602);
  Instance inst = make_instance("grp", {Rational(1, 3) - Rational(2) * e, Rational(1, 6) - e,
                                        Rational(1, 6) - e, Rational(12) * e});
  CHECK(size_of(inst) == Rational(2, 3) + Rational(8) * e);
  CHECK(size_of(inst, ItemClass::Small) == Rational(2, 3) + Rational(8) * e);
  CHECK(size_of(inst, ItemClass::Large) == Rational(0));
}

TEST_CASE("parse_instance: sizes, comments, blank lines") {
  std::istringstream in(
      "# leading comment\n"
      "\n"
      "1/2\n"
      "0.25   # trailing comment\n"
      "  2/3\n"
      "\n");
  Instance inst = parse_instance(in, "mixed");
  REQUIRE(inst.items.size() == 3);
  CHECK(inst.label == "mixed");
  CHECK(inst.items[0].size == Rational(1, 2));
  CHECK(inst.items[1].size == Rational(1, 4));
  CHECK(inst.items[2].size == Rational(2, 3));
  CHECK(inst.items[2].cls == ItemClass::XLarge);
}

TEST_CASE("parse_instance: errors name the 1-based line") {
  std::istringstream bad(
      "1/2\n"
      "0.25\n"
      "zzz\n");
  try {
    parse_instance(bad, "bad");
    FAIL("expected a parse error");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }

  std::istringstream out_of_range("1/2\n3/2\n");
  try {
    parse_instance(out_of_range, "range");
    FAIL("expected a range error");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }

  std::istringstream zero("0\n");
  CHECK_THROWS_AS(parse_instance(zero, "zero"), std::invalid_argument);
}

TEST_CASE("write/parse round-trip preserves sizes exactly") {
  std::mt19937_64 rng(13);
  Instance orig = testsupport::random_instance(rng, 40, 997, "roundtrip");
  std::ostringstream out;
  write_instance(out, orig);
  std::istringstream in(out.str());
  Instance back = parse_instance(in, "roundtrip");
  REQUIRE(back.items.size() == orig.items.size());
  for (std::size_t i = 0; i < orig.items.size(); ++i) {
    CHECK(back.items[i].size == orig.items[i].size);
    CHECK(back.items[i].index == i);
  }
}

TEST_CASE("file round-trip and label from basename") {
  std::string path = "/tmp/binpack_model_roundtrip.txt";
  Instance orig = make_instance("x", {Rational(1, 3), Rational(2, 3), Rational(1, 7)});
  write_instance_file(path, orig);
  Instance back = parse_instance_file(path);
  REQUIRE(back.items.size() == 3);
  CHECK(back.label == "binpack_model_roundtrip.txt");
  CHECK(back.items[0].size == Rational(1, 3));
  CHECK(back.items[1].size == Rational(2, 3));
  CHECK(back.items[2].size == Rational(1, 7));
  std::remove(path.c_str());
  CHECK_THROWS(parse_instance_file("/tmp/binpack_no_such_file.txt"));
}

}  // TEST_SUITE
