#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "fialg/documents.hpp"
#include "json.hpp"
#include "support.hpp"

using namespace fialg;
using nlohmann::json;

namespace {

const RingDescriptor kZ = RingDescriptor::integers();
const RingDescriptor kP = RingDescriptor::int_polynomials();

RingValue pnum(int k) { return RingValue::from_int(kP, Int(k)); }
RingValue tval() { return RingValue::poly({Int(0), Int(1)}); }

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string fixture(const std::string& name) {
  return slurp(std::string(FIALG_FIXTURE_DIR) + "/" + name);
}

}  // namespace

TEST_CASE("poset documents parse names and close by default") {
  PosetDocument doc = parse_poset_document(fixture("chain3.json"));
  CHECK(doc.names == std::vector<std::string>{"a", "b", "c"});
  CHECK(doc.index_of("b") == 1);
  CHECK(doc.index_of("zzz") == -1);
  CHECK(doc.name_of(2) == "c");
  CHECK(doc.carrier->leq(0, 2));  // closure supplied the composite pair

  SUBCASE("pairs may mix names and indices") {
    PosetDocument mixed = parse_poset_document(
        R"({"vertices": ["a", "b", "c"], "leq": [["a", 1], [1, "c"]]})");
    CHECK(mixed.carrier->leq(0, 2));
  }

  SUBCASE("close false demands an already transitive relation") {
    const std::string unclosed =
        R"({"vertices": ["a", "b", "c"],
            "leq": [["a", "b"], ["b", "c"]], "close": false})";
    CHECK_THROWS_AS(parse_poset_document(unclosed), ParseError);
    const std::string closed =
        R"({"vertices": ["a", "b", "c"],
            "leq": [["a", "b"], ["b", "c"], ["a", "c"]], "close": false})";
    PosetDocument ok = parse_poset_document(closed);
    CHECK(ok.carrier->leq(0, 2));
  }

  SUBCASE("an explicit override beats the document's flag") {
    const std::string unclosed =
        R"({"vertices": ["a", "b", "c"],
            "leq": [["a", "b"], ["b", "c"]], "close": false})";
    PosetDocument forced = parse_poset_document(unclosed, true);
    CHECK(forced.carrier->leq(0, 2));
    const std::string implicit =
        R"({"vertices": ["a", "b", "c"], "leq": [["a", "b"], ["b", "c"]]})";
    CHECK_THROWS_AS(parse_poset_document(implicit, false), ParseError);
  }

  SUBCASE("malformed documents are rejected") {
    CHECK_THROWS_AS(parse_poset_document("[1, 2]"), ParseError);
    CHECK_THROWS_AS(parse_poset_document("{not json"), ParseError);
    CHECK_THROWS_AS(parse_poset_document(R"({"vertices": "a"})"), ParseError);
    CHECK_THROWS_AS(parse_poset_document(R"({"vertices": ["a", "a"]})"),
                    ParseError);
    CHECK_THROWS_AS(parse_poset_document(R"({"vertices": [""]})"), ParseError);
    CHECK_THROWS_AS(
        parse_poset_document(R"({"vertices": ["a"], "leq": [["a"]]})"),
        ParseError);
    CHECK_THROWS_AS(
        parse_poset_document(R"({"vertices": ["a"], "leq": [["a", "b"]]})"),
        ParseError);
    CHECK_THROWS_AS(
        parse_poset_document(R"({"vertices": ["a"], "leq": [[0, 4]]})"),
        ParseError);
    CHECK_THROWS_AS(
        parse_poset_document(R"({"vertices": ["a"], "close": 1})"),
        ParseError);
  }
}

TEST_CASE("ring values render as text and parse back") {
  SUBCASE("integers") {
    RingValue v = RingValue::integer(Int("-123456789012345678901234567890"));
    std::string text = render_ring_value(v);
    CHECK(text == "\"-123456789012345678901234567890\"");
    CHECK(parse_ring_value_text(kZ, text) == v);
    CHECK(parse_ring_value_text(kZ, "7") == RingValue::integer(7));
  }

  SUBCASE("rationals") {
    RingValue v = RingValue::rational(1, -2);
    std::string text = render_ring_value(v);
    CHECK(text == "\"-1/2\"");
    auto kQ = RingDescriptor::rationals();
    CHECK(parse_ring_value_text(kQ, text) == v);
    CHECK(parse_ring_value_text(kQ, "\"3\"") == RingValue::rational(3, 1));
    CHECK(parse_ring_value_text(kQ, "4") == RingValue::rational(4, 1));
    CHECK_THROWS_AS(parse_ring_value_text(kQ, "\"1/\""), ParseError);
  }

  SUBCASE("residues carry their modulus") {
    auto kM = RingDescriptor::modular(5);
    RingValue v = RingValue::modular(7, 5);
    std::string text = render_ring_value(v);
    CHECK(text == "\"2 mod 5\"");
    CHECK(parse_ring_value_text(kM, text) == v);
    CHECK(parse_ring_value_text(kM, "12") == RingValue::modular(2, 5));
    CHECK_THROWS_AS(parse_ring_value_text(kM, "\"2 mod 7\""), ParseError);
    CHECK_THROWS_AS(parse_ring_value_text(kM, "\"x mod 5\""), ParseError);
  }

  SUBCASE("polynomials are coefficient arrays, constant term first") {
    RingValue v = RingValue::poly({Int(1), Int(0), Int(-2)});
    std::string text = render_ring_value(v);
    CHECK(text == "[\"1\",\"0\",\"-2\"]");
    CHECK(parse_ring_value_text(kP, text) == v);
    CHECK(parse_ring_value_text(kP, "[]") == RingValue::from_int(kP, 0));
    // Trailing zero coefficients trim away.
    CHECK(parse_ring_value_text(kP, "[\"3\", \"0\"]") ==
          RingValue::from_int(kP, 3));
    CHECK_THROWS_AS(parse_ring_value_text(kP, "\"t\""), ParseError);
  }
}

TEST_CASE("derivation documents round-trip every term kind") {
  PosetDocument poset = parse_poset_document(fixture("vee.json"));
  AlgebraContext ctx = AlgebraContext::make(poset.carrier, kP);

  FiElement alpha = ctx.zero();
  alpha.set(0, 1, tval()).set(1, 1, pnum(2));
  auto ddt = AdditiveDerivationSpec::poly_times_ddt({Int(1)});
  MapSpec spec(ctx);
  spec.add(InnerTerm{alpha})
      .add(TransitiveTerm{TransitiveTable::build(
          ctx.carrier, kP, {{{0, 1}, pnum(3)}, {{0, 2}, tval()}})})
      .add(AdditiveInducedTerm{
          {{0, AdditiveDerivationSpec::poly_times_ddt({Int(0), Int(1)})}}})
      .add(CentralTraceTerm{{{0, {Int(0), Int(0), Int(1)}}}})
      .add(WitnessTerm{0, 0, ddt})
      .add(ProperPartTerm{{{0, ddt}}});

  std::string text = render_derivation_document(spec, 3, poset);
  json doc = json::parse(text);
  CHECK(doc["ring"] == "intpoly");
  CHECK(doc["n"] == 3);
  REQUIRE(doc["terms"].size() == 6);
  CHECK(doc["terms"][0]["kind"] == "inner");
  CHECK(doc["terms"][1]["kind"] == "transitive");
  CHECK(doc["terms"][2]["kind"] == "additive_induced");
  CHECK(doc["terms"][3]["kind"] == "central_trace");
  CHECK(doc["terms"][4]["kind"] == "witness");
  CHECK(doc["terms"][5]["kind"] == "proper_part");
  // Vertices travel by name, including the witness anchor.
  CHECK(doc["terms"][0]["alpha"][0][0] == "r");
  CHECK(doc["terms"][4]["t"] == "r");
  CHECK(doc["terms"][4]["class_edge"] == json::array({"r", "u"}));

  DerivationDocument back = parse_derivation_document(text, poset);
  CHECK(back.n == 3);
  CHECK(back.ring.kind == RingDescriptor::Kind::IntPoly);
  REQUIRE(back.map.terms().size() == 6);

  std::vector<FiElement> probes;
  probes.push_back(ctx.basis(0, 1));
  probes.push_back(ctx.basis(0, 2).scaled(tval()));
  probes.push_back(ctx.basis(1, 1).scaled(tval() + pnum(4)));
  FiElement mixed = ctx.zero();
  mixed.set(0, 0, tval()).set(0, 2, pnum(-3)).set(2, 2, tval() * tval());
  probes.push_back(mixed);
  for (const FiElement& b : probes) CHECK(back.map.eval(b) == spec.eval(b));
}

TEST_CASE("derivation parsing sums duplicate table entries") {
  PosetDocument poset = parse_poset_document(fixture("vee.json"));
  const std::string text = R"({
    "ring": "intpoly",
    "terms": [{"kind": "transitive",
               "f": [["r", "u", ["1"]], ["r", "u", ["2"]]]}]
  })";
  DerivationDocument doc = parse_derivation_document(text, poset);
  CHECK(doc.n == 2);
  AlgebraContext ctx = doc.map.context();
  CHECK(doc.map.eval(ctx.basis(0, 1)).at(0, 1) == pnum(3));
}

TEST_CASE("derivation parsing rejects malformed terms") {
  PosetDocument poset = parse_poset_document(fixture("chain3.json"));
  auto reject = [&](const std::string& text) {
    CHECK_THROWS_AS(parse_derivation_document(text, poset), ParseError);
  };
  reject("[]");
  reject(R"({"terms": []})");
  reject(R"({"ring": "field", "terms": []})");
  reject(R"({"ring": "integer", "n": 1, "terms": []})");
  reject(R"({"ring": "integer", "terms": [{"f": []}]})");
  reject(R"({"ring": "integer", "terms": [{"kind": "mystery"}]})");
  reject(R"({"ring": "integer",
             "terms": [{"kind": "inner", "alpha": [["c", "a", "1"]]}]})");
  reject(R"({"ring": "integer",
             "terms": [{"kind": "transitive", "f": [["a", "a", "1"]]}]})");
  reject(R"({"ring": "integer",
             "terms": [{"kind": "central_trace", "h": [[0, ["5"]]]}]})");
  reject(R"({"ring": "integer",
             "terms": [{"kind": "central_trace", "h": [[9, ["0", "1"]]]}]})");
  reject(R"({"ring": "intpoly",
             "terms": [{"kind": "additive_induced",
                        "assign": [["a", ["zero"]]]}]})");
  reject(R"({"ring": "intpoly",
             "terms": [{"kind": "witness", "class_edge": ["a", "b"],
                        "t": "c", "f": ["poly_times_ddt", ["1"]]}]})");

  SUBCASE("ring and term domain must agree") {
    reject(R"({"ring": "integer",
               "terms": [{"kind": "additive_induced",
                          "assign": [[["a", "b"],
                                      ["poly_times_ddt", ["1"]]]]}]})");
  }
}

TEST_CASE("structural reports carry names and a stable shape") {
  PosetDocument poset = parse_poset_document(fixture("chain3.json"));

  SUBCASE("validate") {
    json doc = json::parse(render_validate_report(poset));
    CHECK(doc["command"] == "validate");
    CHECK(doc["valid"] == true);
    CHECK(doc["vertices"] == json::array({"a", "b", "c"}));
    CHECK(doc["related_pairs"] == 6);
    CHECK(doc["strict_edges"].size() == 3);
    CHECK(doc["strict_edges"][0] == json::array({"a", "b"}));
    CHECK(doc["components"] == 1);
  }

  SUBCASE("components") {
    json doc = json::parse(render_components_report(poset));
    CHECK(doc["command"] == "components");
    CHECK(doc["count"] == 1);
    REQUIRE(doc["components"].size() == 1);
    CHECK(doc["components"][0]["vertices"] == json::array({"a", "b", "c"}));
    CHECK(doc["components"][0].contains("full"));
  }

  SUBCASE("classes") {
    AlgebraContext ctx = AlgebraContext::make(poset.carrier, kZ);
    json doc = json::parse(render_classes_report(poset, *ctx.classes));
    CHECK(doc["command"] == "classes");
    CHECK(doc["count"] == 1);
    REQUIRE(doc["classes"].size() == 1);
    CHECK(doc["classes"][0]["edges"].size() == 3);
    CHECK(doc["classes"][0]["vertices"] == json::array({"a", "b", "c"}));
    CHECK(doc["classes"][0]["component"] == 0);
  }

  SUBCASE("properness, both verdicts") {
    AlgebraContext ctx = AlgebraContext::make(poset.carrier, kZ);
    json doc = json::parse(
        render_properness_report(poset, properness_criterion(*ctx.classes)));
    CHECK(doc["command"] == "properness");
    CHECK(doc["proper_capable"] == true);
    CHECK(doc["certificate"].is_null());

    PosetDocument vee = parse_poset_document(fixture("vee.json"));
    AlgebraContext vctx = AlgebraContext::make(vee.carrier, kZ);
    json bad = json::parse(
        render_properness_report(vee, properness_criterion(*vctx.classes)));
    CHECK(bad["proper_capable"] == false);
    CHECK(bad["certificate"]["component"] == 0);
    CHECK(bad["certificate"]["classes"] == json::array({0, 1}));
  }

  SUBCASE("witness, absent and present") {
    AlgebraContext ctx = AlgebraContext::make(poset.carrier, kP);
    json none = json::parse(render_witness_report(poset, emit_witness(ctx)));
    CHECK(none["command"] == "witness");
    CHECK(none["witness"].is_null());

    PosetDocument vee = parse_poset_document(fixture("vee.json"));
    AlgebraContext vctx = AlgebraContext::make(vee.carrier, kP);
    auto witness = emit_witness(vctx);
    REQUIRE(witness.has_value());
    std::string text = render_witness_report(vee, witness);
    // A found witness is itself a loadable derivation document.
    DerivationDocument reload = parse_derivation_document(text, vee);
    FiElement probe = vctx.basis(0, 1).scaled(tval() * tval());
    CHECK(reload.map.eval(probe) == witness->eval(probe));
  }
}

TEST_CASE("analysis reports embed verdicts and recovered parts") {
  PosetDocument poset = parse_poset_document(fixture("chain3.json"));
  AlgebraContext ctx = AlgebraContext::make(poset.carrier, kP);
  DerivationDocument deriv =
      parse_derivation_document(fixture("deriv_chain3.json"), poset);
  ProbeBudget budget;
  budget.seed = 0;
  budget.tuples = 100;

  SUBCASE("check") {
    Verdict v =
        check_lie_n_derivation(deriv.map.black_box(), ctx, deriv.n, budget);
    json doc = json::parse(render_check_report(poset, deriv.n, budget, v));
    CHECK(doc["command"] == "check");
    CHECK(doc["n"] == 2);
    CHECK(doc["seed"] == 0);
    CHECK(doc["verdict"]["law"] == "lie_2_derivation");
    CHECK(doc["verdict"]["pass"] == true);
    CHECK(doc["verdict"]["probes"].is_number_integer());
  }

  SUBCASE("decompose and properize") {
    DecompositionReport rep =
        decompose(deriv.map.black_box(), ctx, deriv.n, budget);
    json doc = json::parse(render_decomposition_report(poset, budget, rep));
    CHECK(doc["command"] == "decompose");
    CHECK(doc["decomposable"] == true);
    CHECK(doc["corner"].size() == 3);
    CHECK(doc["transitive"].size() == 3);
    REQUIRE(doc["classes"].size() == 1);
    CHECK(doc["classes"][0]["fitted"][0] == "poly_times_ddt");
    CHECK(doc["checks"].size() == 13);

    ProperizeOutcome out = properize(rep, budget);
    json prop = json::parse(render_properize_report(poset, rep, out));
    CHECK(prop["command"] == "properize");
    CHECK(prop["proper"] == true);
    CHECK(prop["derivation"]["terms"].size() == 3);
    CHECK(prop["certificate"].is_null());
  }
}
