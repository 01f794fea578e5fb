#include <doctest.h>

#include "holoform/surface.hpp"

using namespace holoform;

TEST_CASE("builtin words match the pictures") {
  Backend b = make_backend("abelian_double", 2);

  ColoredPolygon sq = builtin_surface("square", b);
  REQUIRE(sq.size() == 4);
  CHECK(side_token(sq.word[0]) == "r");
  CHECK(side_token(sq.word[1]) == "b");
  CHECK(side_token(sq.word[2]) == "r^-1");
  CHECK(side_token(sq.word[3]) == "b^-1");

  ColoredPolygon g11 = builtin_surface("gamma11", b);
  CHECK(side_token(g11.word[0]) == "r");
  CHECK(side_token(g11.word[1]) == "b");
  CHECK(side_token(g11.word[2]) == "v^-1");
  CHECK(side_token(g11.word[3]) == "b^-1");

  ColoredPolygon g00 = builtin_surface("gamma00", b);
  REQUIRE(g00.size() == 6);
  // hexagon: bottom b, lower sides r, upper sides b, top v
  CHECK(side_token(g00.word[0]) == "b");
  CHECK(side_token(g00.word[1]) == "r");
  CHECK(side_token(g00.word[2]) == "b");
  CHECK(side_token(g00.word[3]) == "v^-1");
  CHECK(side_token(g00.word[4]) == "b^-1");
  CHECK(side_token(g00.word[5]) == "r^-1");

  // gamma10 is the color swap of gamma01
  ColoredPolygon g01 = builtin_surface("gamma01", b);
  ColoredPolygon g10 = builtin_surface("gamma10", b);
  REQUIRE(g01.size() == 5);
  for (int i = 0; i < 5; ++i) {
    std::string swapped = g01.word[i].label == "r"   ? "b"
                          : g01.word[i].label == "b" ? "r"
                                                     : "v";
    CHECK(g10.word[i].label == swapped);
    CHECK(g10.word[i].reversed == g01.word[i].reversed);
  }

  ColoredPolygon an = builtin_surface("annulus_with_cut", b);
  REQUIRE(an.size() == 6);
  CHECK(side_token(an.word[0]) == "r");
  CHECK(side_token(an.word[1]) == "b");
  CHECK(side_token(an.word[2]) == "#c");
  CHECK(side_token(an.word[3]) == "b^-1");
  CHECK(side_token(an.word[4]) == "r^-1");
  CHECK(side_token(an.word[5]) == "#c^-1");

  CHECK_THROWS_AS(builtin_surface("dodecahedron", b), std::invalid_argument);
}

TEST_CASE("validation: squares and annuli pass, degenerate corners fail") {
  for (const char* name : {"abelian_double", "cotangent_double", "sl2c_iwasawa"}) {
    Backend b = make_backend(name, 2);
    CAPTURE(name);
    CHECK(validate(builtin_surface("square", b)).pass);
    CHECK(validate(builtin_surface("annulus_with_cut", b)).pass);
    CHECK(validate(builtin_surface("gamma11", b)).pass);
  }
  // triangle needs v transverse to both r and b: only the abelian backend
  Backend ab = make_backend("abelian_double", 2);
  CHECK(validate(builtin_surface("triangle", ab)).pass);
  CHECK(validate(builtin_surface("gamma00", ab)).pass);
  CHECK(validate(builtin_surface("gamma01", ab)).pass);
  CHECK(validate(builtin_surface("gamma10", ab)).pass);

  // adjacent sides with the same label violate the corner condition
  ColoredPolygon bad = polygon_from_tokens({"r1", "r2", "b^-1", "b2^-1"}, ab,
                                           {{"r1", "r"}, {"r2", "r"}, {"b", "b"}, {"b2", "b"}});
  ValidationReport rep = validate(bad);
  CHECK_FALSE(rep.pass);
  bool corner_failed = false;
  for (const CornerCheck& c : rep.corners)
    if (!c.transverse) corner_failed = true;
  CHECK(corner_failed);

  // cut id must occur exactly twice, once per orientation
  ColoredPolygon badcut =
      polygon_from_tokens({"r", "b", "#c", "b^-1", "r^-1", "#c"}, ab, {{"r", "r"}, {"b", "b"}});
  CHECK_FALSE(validate(badcut).pass);
  CHECK_FALSE(validate(badcut).cuts_consistent);
}

TEST_CASE("annulus through-cut corners are checked") {
  Backend ab = make_backend("abelian_double", 2);
  // b-arc meets r-arc across the re-glued cut on each boundary circle
  ColoredPolygon an = builtin_surface("annulus_with_cut", ab);
  ValidationReport rep = validate(an);
  int through = 0;
  for (const CornerCheck& c : rep.corners) through += c.through_cut ? 1 : 0;
  CHECK(through == 2);
  CHECK(rep.pass);
}

TEST_CASE("moduli dimension formula") {
  Backend a1 = make_backend("abelian_double", 1);
  CHECK(moduli_dimension(builtin_surface("square", a1)) == 2);

  Backend a2 = make_backend("abelian_double", 2);
  CHECK(moduli_dimension(builtin_surface("triangle", a2)) == 2);
  CHECK(moduli_dimension(builtin_surface("gamma00", a2)) == 8);

  Backend sl = make_backend("sl2c_iwasawa");
  CHECK(moduli_dimension(builtin_surface("annulus_with_cut", sl)) == 12);
  CHECK(moduli_dimension(builtin_surface("square", sl)) == 6);
}

TEST_CASE("gluing squares along the b seam reproduces the square") {
  Backend b = make_backend("sl2c_iwasawa");
  ColoredPolygon sq = builtin_surface("square", b);
  GlueResult glued = glue(sq, 1, sq, 3);
  CHECK(words_equal_cyclic(glued.surface.word, sq.word));
  CHECK(validate(glued.surface).pass);

  // merged arcs carry two sources in word order
  int merged = 0;
  for (const GluedSide& s : glued.sides) merged += s.sources.size() == 2 ? 1 : 0;
  CHECK(merged == 2);

  // argument order only rotates the result
  GlueResult other = glue(sq, 3, sq, 1);
  CHECK(words_equal_cyclic(other.surface.word, glued.surface.word));

  // dimension identity for the planar double-merge gluings
  const int seam_dim = static_cast<int>(sq.span_of("b").rows());
  CHECK(moduli_dimension(glued.surface) == 2 * moduli_dimension(sq) - 2 * seam_dim);
}

TEST_CASE("module gluing: r/b/v square absorbs the square along r") {
  Backend b = make_backend("abelian_double", 2);
  ColoredPolygon rbv = builtin_surface("gamma11", b);
  ColoredPolygon sq = builtin_surface("square", b);
  GlueResult glued = glue(rbv, 0, sq, 2);
  CHECK(words_equal_cyclic(glued.surface.word, rbv.word));
  CHECK(validate(glued.surface).pass);
  CHECK(moduli_dimension(glued.surface) ==
        moduli_dimension(rbv) + moduli_dimension(sq) -
            2 * static_cast<int>(sq.span_of("r").rows()));

  // label mismatch is rejected
  CHECK_THROWS_AS(glue(rbv, 0, sq, 3), std::invalid_argument);
  // same-orientation seams are not planar gluings
  CHECK_THROWS_AS(glue(rbv, 0, sq, 0), std::invalid_argument);
}

TEST_CASE("side tokens round-trip") {
  for (const std::string& t : {"r", "b2", "r^-1", "#c", "#c^-1"})
    CHECK(side_token(parse_side_token(t)) == t);
  CHECK_THROWS_AS(parse_side_token("#"), std::invalid_argument);
  CHECK(parse_side_token("#c^-1").kind == SideKind::Cut);
  CHECK(parse_side_token("#c^-1").reversed);
}
