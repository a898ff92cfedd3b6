#include <string>

#include "doctest.h"
#include "ovs/errors.hpp"
#include "ovs/spec_io.hpp"

using namespace ovs;

namespace {

std::string error_of(const std::string& text) {
  try {
    parse_space_spec(text);
  } catch (const SpecError& e) {
    return e.what();
  }
  return "";
}

bool has(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

}  // namespace

TEST_CASE("space specs of every kind") {
  auto s = parse_space_spec(R"({"dim": 2, "cone": {"kind": "orthant"}, "seminorm": {"kind": "lq", "q": 1}})");
  CHECK(s.space.cone.kind() == ConeKind::Orthant);
  CHECK(s.space.seminorm.eval(Vector{1, -2}) == 3.0);
  CHECK_FALSE(s.unit.has_value());
  CHECK(std::holds_alternative<SeminormedSpace>(s.as_map_space()));

  s = parse_space_spec(R"({"dim": 2, "cone": {"kind": "vpoly", "generators": [[1, 0], [1, 1]]},
                           "seminorm": {"kind": "weighted_lq", "weights": [1, 2], "q": "inf"}})");
  CHECK(s.space.cone.contains(Vector{2, 1}));
  CHECK_FALSE(s.space.cone.contains(Vector{0, 1}));
  CHECK(s.space.seminorm.eval(Vector{1, -1}) == 2.0);

  s = parse_space_spec(R"({"dim": 2, "cone": {"kind": "hpoly", "normals": [[0, 1]]},
                           "seminorm": {"kind": "polytope_gauge", "normals": [[1, 0], [-1, 0], [0, 1], [0, -1]],
                                        "offsets": [2, 2, 1, 1]}})");
  CHECK(s.space.seminorm.eval(Vector{2, 0}) == doctest::Approx(1.0));
  CHECK(s.space.cone.contains(Vector{-5, 0}));

  s = parse_space_spec(R"({"dim": 3, "cone": {"kind": "psd", "side": 2},
                           "seminorm": {"kind": "order_unit", "unit": [1, 0, 1]}})");
  CHECK(s.space.seminorm.eval(Vector{-2, 0, 1}) == doctest::Approx(2.0));

  s = parse_space_spec(R"({"dim": 3, "cone": {"kind": "orthant"},
                           "seminorm": {"kind": "pullback", "matrix": [[1, 0, 0], [0, 1, 0]], "inner": {"kind": "lq", "q": "inf"}}})");
  CHECK(s.space.seminorm.eval(Vector{1, -3, 100}) == 3.0);

  s = parse_space_spec(R"({"dim": 2,
    "cone": {"kind": "declared_closure", "pieces": [{"strict": [[0, 1]]}, {"weak": [[1, 0]], "equal": [[0, 1]]}],
             "closure": {"kind": "hpoly", "normals": [[0, 1]]}},
    "seminorm": {"kind": "lq", "q": 2}})");
  CHECK(s.space.cone.kind() == ConeKind::DeclaredClosure);
  CHECK_FALSE(s.space.cone.contains(Vector{-1, 0}));
  CHECK(s.space.cone.contains(Vector{1, 0}));

  s = parse_space_spec(R"({"dim": 2, "cone": {"kind": "orthant"}, "seminorm": {"kind": "order_unit", "unit": [1, 1]},
                           "unit": [1, 1], "tolerance": {"abs_tol": 1e-10, "max_iter": 50}})");
  CHECK(s.tol.abs_tol == 1e-10);
  CHECK(s.tol.max_iter == 50);
  CHECK(std::holds_alternative<AouSpace>(s.as_map_space()));

  CHECK(parse_space_spec(R"({"dim": 2, "cone": {"kind": "zero"}, "seminorm": {"kind": "lq", "q": 2}})").space.cone.kind() ==
        ConeKind::Zero);
  CHECK(parse_space_spec(R"({"dim": 2, "cone": {"kind": "full"}, "seminorm": {"kind": "lq", "q": 2}})").space.cone.kind() ==
        ConeKind::Full);
}

TEST_CASE("diagnostics name the field or the line") {
  CHECK(has(error_of("{\n\"dim\": 2,\n\"cone\": {\"kind\": \"orthant\"}\n\"seminorm\": {}}"), "line 4"));
  CHECK(has(error_of(R"({"cone": {"kind": "orthant"}, "seminorm": {"kind": "lq", "q": 1}})"), "dim: missing field"));
  CHECK(has(error_of(R"({"dim": 2, "cone": {"kind": "cube"}, "seminorm": {"kind": "lq", "q": 1}})"), "cone.kind"));
  CHECK(has(error_of(R"({"dim": 2, "cone": {"kind": "vpoly", "generators": [[1, 0], [0, "a"]]},
                         "seminorm": {"kind": "lq", "q": 1}})"),
            "cone.generators[1][1]"));
  CHECK(has(error_of(R"({"dim": 2, "cone": {"kind": "orthant"}, "seminorm": {"kind": "lq", "q": 3}})"), "seminorm.q"));
  CHECK(has(error_of(R"({"dim": 2, "cone": {"kind": "orthant"}, "seminorm": {"kind": "lq"}})"), "seminorm.q: missing"));
  CHECK(has(error_of(R"({"dim": 4, "cone": {"kind": "psd", "side": 2}, "seminorm": {"kind": "lq", "q": 1}})"), "cone.side"));
  CHECK(has(error_of(R"({"dim": 2, "cone": {"kind": "orthant"}, "seminorm": {"kind": "weighted_lq", "weights": [1, 0], "q": 1}})"),
            "seminorm.weights[1]"));
  CHECK(has(error_of(R"({"dim": 2, "cone": {"kind": "orthant"}, "seminorm": {"kind": "lq", "q": 1}, "tolerance": {"abs": 1}})"),
            "tolerance.abs"));
  // a unit that is not an order unit of the cone
  CHECK_FALSE(error_of(R"({"dim": 2, "cone": {"kind": "orthant"}, "seminorm": {"kind": "lq", "q": 1}, "unit": [1, 0]})").empty());
  CHECK_THROWS_AS(load_space_spec("/nonexistent/space.json"), SpecError);
}

TEST_CASE("map specs") {
  const auto m = parse_map_spec(R"({
    "domain": {"dim": 2, "cone": {"kind": "orthant"}, "seminorm": {"kind": "lq", "q": 1}},
    "codomain": {"dim": 1, "cone": {"kind": "orthant"}, "seminorm": {"kind": "order_unit", "unit": [1]}, "unit": [1]},
    "matrix": [[1, 1]]})");
  CHECK(m.map.apply(Vector{2, 3})[0] == 5.0);
  CHECK(std::holds_alternative<AouSpace>(m.map.codomain));
  CHECK_THROWS_AS(parse_map_spec(R"({
    "domain": {"dim": 2, "cone": {"kind": "orthant"}, "seminorm": {"kind": "lq", "q": 1}},
    "codomain": {"dim": 1, "cone": {"kind": "orthant"}, "seminorm": {"kind": "lq", "q": 1}},
    "matrix": [[1, 1], [0, 1]]})"),
                  SpecError);
}

TEST_CASE("csv vectors") {
  CHECK(parse_csv_vector("1,-2.5,3e-1") == Vector{1, -2.5, 0.3});
  CHECK(parse_csv_vector("-1") == Vector{-1});
  CHECK_THROWS_AS(parse_csv_vector(""), SpecError);
  CHECK_THROWS_AS(parse_csv_vector("1,,2"), SpecError);
  CHECK_THROWS_AS(parse_csv_vector("1,x"), SpecError);
  CHECK_THROWS_AS(parse_csv_vector("1,2,"), SpecError);
  CHECK_THROWS_AS(parse_csv_vector("1,nan"), SpecError);
}
