#include "fialg/documents.hpp"

#include <algorithm>
#include <utility>

#include "fialg/errors.hpp"
#include "json.hpp"

namespace fialg {

using json = nlohmann::ordered_json;

namespace {

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed document: ") + e.what());
  }
}

Int int_from_json(const json& j, const std::string& field) {
  try {
    if (j.is_number_integer()) return Int(j.get<long long>());
    if (j.is_string()) return Int(j.get<std::string>());
  } catch (const std::exception&) {
  }
  throw ParseError(field + ": expected a decimal integer, got " + j.dump());
}

PolyCoeffs coeffs_from_json(const json& j, const std::string& field) {
  if (!j.is_array())
    throw ParseError(field + ": expected a coefficient array, got " +
                     j.dump());
  PolyCoeffs coeffs;
  for (const json& c : j) coeffs.push_back(int_from_json(c, field));
  return poly_trim(std::move(coeffs));
}

json coeffs_to_json(const PolyCoeffs& coeffs) {
  json arr = json::array();
  for (const Int& c : coeffs) arr.push_back(c.str());
  return arr;
}

json value_to_json(const RingValue& v) {
  if (v.descriptor().kind == RingDescriptor::Kind::IntPoly)
    return coeffs_to_json(v.as_poly());
  return v.to_string();
}

RingValue value_from_json(const RingDescriptor& ring, const json& j,
                          const std::string& field) {
  switch (ring.kind) {
    case RingDescriptor::Kind::IntPoly:
      return RingValue::poly(coeffs_from_json(j, field));
    case RingDescriptor::Kind::Integer:
      return RingValue::integer(int_from_json(j, field));
    case RingDescriptor::Kind::Rational: {
      if (j.is_number_integer() || (j.is_string() && j.get<std::string>()
                                        .find('/') == std::string::npos))
        return RingValue::rational(int_from_json(j, field), 1);
      if (j.is_string()) {
        const std::string text = j.get<std::string>();
        auto slash = text.find('/');
        try {
          return RingValue::rational(Int(text.substr(0, slash)),
                                     Int(text.substr(slash + 1)));
        } catch (const std::exception&) {
        }
      }
      throw ParseError(field + ": expected \"p/q\" or an integer, got " +
                       j.dump());
    }
    case RingDescriptor::Kind::Modular: {
      if (j.is_number_integer())
        return RingValue::modular(int_from_json(j, field), ring.modulus);
      if (j.is_string()) {
        std::string text = j.get<std::string>();
        auto mod = text.find(" mod ");
        std::string residue = mod == std::string::npos ? text
                                                       : text.substr(0, mod);
        if (mod != std::string::npos) {
          Int declared;
          try {
            declared = Int(text.substr(mod + 5));
          } catch (const std::exception&) {
            throw ParseError(field + ": bad modulus in " + j.dump());
          }
          if (declared != ring.modulus)
            throw ParseError(field + ": modulus " + declared.str() +
                             " does not match the ring's " +
                             ring.modulus.str());
        }
        try {
          return RingValue::modular(Int(residue), ring.modulus);
        } catch (const std::exception&) {
        }
      }
      throw ParseError(field + ": expected \"k mod m\" or an integer, got " +
                       j.dump());
    }
  }
  throw ParseError(field + ": unreachable ring kind");
}

int vertex_from_json(const PosetDocument& poset, const json& j,
                     const std::string& field) {
  if (j.is_string()) {
    int idx = poset.index_of(j.get<std::string>());
    if (idx < 0)
      throw ParseError(field + ": unknown vertex name " + j.dump());
    return idx;
  }
  if (j.is_number_integer()) {
    long long idx = j.get<long long>();
    if (idx < 0 || idx >= (long long)poset.names.size())
      throw ParseError(field + ": vertex index " + std::to_string(idx) +
                       " out of range");
    return int(idx);
  }
  throw ParseError(field + ": expected a vertex name or index, got " +
                   j.dump());
}

json edge_to_json(const PosetDocument& poset, std::pair<int, int> edge) {
  return json::array({poset.name_of(edge.first), poset.name_of(edge.second)});
}

json element_to_json(const PosetDocument& poset, const FiElement& a) {
  json arr = json::array();
  for (const auto& [key, v] : a.entries())
    arr.push_back(json::array({poset.name_of(key.first),
                               poset.name_of(key.second), value_to_json(v)}));
  return arr;
}

FiElement element_from_json(const PosetDocument& poset,
                            const RingDescriptor& ring, const json& j,
                            const std::string& field) {
  if (!j.is_array())
    throw ParseError(field + ": expected an entry array, got " + j.dump());
  FiElement out(poset.carrier, ring);
  for (const json& entry : j) {
    if (!entry.is_array() || entry.size() != 3)
      throw ParseError(field + ": each entry must be [x, y, value], got " +
                       entry.dump());
    int x = vertex_from_json(poset, entry[0], field);
    int y = vertex_from_json(poset, entry[1], field);
    if (!poset.carrier->leq(x, y))
      throw ParseError(field + ": entry at unrelated pair (" +
                       poset.name_of(x) + ", " + poset.name_of(y) + ")");
    out.set(x, y, out.at(x, y) + value_from_json(ring, entry[2], field));
  }
  return out;
}

json deriv_spec_to_json(const AdditiveDerivationSpec& spec) {
  if (spec.kind() == AdditiveDerivationSpec::Kind::PolyTimesDdt)
    return json::array(
        {"poly_times_ddt", coeffs_to_json(spec.multiplier())});
  return json::array({"zero"});
}

AdditiveDerivationSpec deriv_spec_from_json(const json& j,
                                            const std::string& field) {
  if (j.is_array() && !j.empty() && j[0].is_string()) {
    const std::string kind = j[0].get<std::string>();
    if (kind == "zero" && j.size() == 1) return AdditiveDerivationSpec::zero();
    if (kind == "poly_times_ddt" && j.size() == 2)
      return AdditiveDerivationSpec::poly_times_ddt(
          coeffs_from_json(j[1], field));
  }
  throw ParseError(field +
                   ": expected [\"zero\"] or [\"poly_times_ddt\", "
                   "[coefficients]], got " +
                   j.dump());
}

json verdict_to_json(const PosetDocument& poset, const Verdict& v) {
  json out;
  out["law"] = v.law;
  out["pass"] = v.pass;
  out["probes"] = v.probes;
  out["detail"] = v.detail;
  if (v.pass) {
    out["counterexample"] = nullptr;
  } else {
    json cx;
    json tuple = json::array();
    for (const FiElement& a : v.tuple)
      tuple.push_back(element_to_json(poset, a));
    cx["tuple"] = std::move(tuple);
    json sides = json::array();
    for (const FiElement& a : v.sides)
      sides.push_back(element_to_json(poset, a));
    cx["sides"] = std::move(sides);
    out["counterexample"] = std::move(cx);
  }
  return out;
}

std::string dump_report(const json& j) { return j.dump(2) + "\n"; }

json map_spec_to_json(const MapSpec& map, const PosetDocument& poset) {
  const AlgebraContext& ctx = map.context();
  json terms = json::array();
  for (const MapTerm& term : map.terms()) {
    json t;
    if (const auto* inner = std::get_if<InnerTerm>(&term)) {
      t["kind"] = "inner";
      t["alpha"] = element_to_json(poset, inner->alpha);
    } else if (const auto* trans = std::get_if<TransitiveTerm>(&term)) {
      t["kind"] = "transitive";
      json f = json::array();
      for (const auto& [key, v] : trans->table.entries())
        f.push_back(json::array({poset.name_of(key.first),
                                 poset.name_of(key.second),
                                 value_to_json(v)}));
      t["f"] = std::move(f);
    } else if (const auto* ind = std::get_if<AdditiveInducedTerm>(&term)) {
      t["kind"] = "additive_induced";
      json assign = json::array();
      for (const auto& [cls, spec] : ind->by_class)
        assign.push_back(
            json::array({edge_to_json(poset, ctx.classes->representative(cls)),
                         deriv_spec_to_json(spec)}));
      t["assign"] = std::move(assign);
    } else if (const auto* ct = std::get_if<CentralTraceTerm>(&term)) {
      t["kind"] = "central_trace";
      json h = json::array();
      for (const auto& [comp, coeffs] : ct->by_component)
        h.push_back(json::array({comp, coeffs_to_json(coeffs)}));
      t["h"] = std::move(h);
    } else if (const auto* wit = std::get_if<WitnessTerm>(&term)) {
      t["kind"] = "witness";
      t["class_edge"] = edge_to_json(poset,
                                     ctx.classes->representative(wit->cls));
      t["t"] = poset.name_of(wit->anchor);
      t["f"] = deriv_spec_to_json(wit->deriv);
    } else if (const auto* pp = std::get_if<ProperPartTerm>(&term)) {
      t["kind"] = "proper_part";
      json assign = json::array();
      for (const auto& [comp, spec] : pp->by_component)
        assign.push_back(json::array({comp, deriv_spec_to_json(spec)}));
      t["assign"] = std::move(assign);
    }
    terms.push_back(std::move(t));
  }
  json doc;
  doc["ring"] = ctx.ring.name();
  doc["n"] = 2;  // caller overrides
  doc["terms"] = std::move(terms);
  return doc;
}

}  // namespace

int PosetDocument::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return int(i);
  return -1;
}

PosetDocument parse_poset_document(const std::string& text,
                                   std::optional<bool> close_override) {
  json doc = parse_text(text);
  if (!doc.is_object())
    throw ParseError("poset document must be a JSON object");
  if (!doc.contains("vertices") || !doc["vertices"].is_array())
    throw ParseError("vertices: expected an array of names");
  PosetDocument poset;
  for (const json& v : doc["vertices"]) {
    if (!v.is_string() || v.get<std::string>().empty())
      throw ParseError("vertices: names must be nonempty strings, got " +
                       v.dump());
    if (poset.index_of(v.get<std::string>()) >= 0)
      throw ParseError("vertices: duplicate name " + v.dump());
    poset.names.push_back(v.get<std::string>());
  }
  bool close = true;
  if (doc.contains("close")) {
    if (!doc["close"].is_boolean())
      throw ParseError("close: expected a boolean");
    close = doc["close"].get<bool>();
  }
  if (close_override) close = *close_override;
  std::vector<std::pair<int, int>> pairs;
  if (doc.contains("leq")) {
    if (!doc["leq"].is_array())
      throw ParseError("leq: expected an array of pairs");
    for (const json& pair : doc["leq"]) {
      if (!pair.is_array() || pair.size() != 2)
        throw ParseError("leq: each entry must be [x, y], got " + pair.dump());
      pairs.push_back({vertex_from_json(poset, pair[0], "leq"),
                       vertex_from_json(poset, pair[1], "leq")});
    }
  }
  const int n = int(poset.names.size());
  try {
    poset.carrier = close ? Preorder::from_generators(n, pairs)
                          : Preorder::from_relation(n, pairs);
  } catch (const Error& e) {
    throw ParseError(std::string("leq: ") + e.what());
  }
  return poset;
}

DerivationDocument parse_derivation_document(const std::string& text,
                                             const PosetDocument& poset) {
  json doc = parse_text(text);
  if (!doc.is_object())
    throw ParseError("derivation document must be a JSON object");
  if (!doc.contains("ring") || !doc["ring"].is_string())
    throw ParseError("ring: expected a ring name string");
  auto named = RingDescriptor::from_name(doc["ring"].get<std::string>());
  if (!named) throw ParseError("ring: unknown ring " + doc["ring"].dump());
  RingDescriptor ring = *named;
  int n = 2;
  if (doc.contains("n")) {
    if (!doc["n"].is_number_integer() || doc["n"].get<long long>() < 2)
      throw ParseError("n: expected an integer >= 2");
    n = int(doc["n"].get<long long>());
  }
  AlgebraContext ctx = AlgebraContext::make(poset.carrier, ring);
  MapSpec map(ctx);
  if (doc.contains("terms")) {
    if (!doc["terms"].is_array())
      throw ParseError("terms: expected an array");
    for (const json& t : doc["terms"]) {
      if (!t.is_object() || !t.contains("kind") || !t["kind"].is_string())
        throw ParseError("terms: each term needs a \"kind\", got " + t.dump());
      const std::string kind = t["kind"].get<std::string>();
      try {
        if (kind == "inner") {
          map.add(InnerTerm{
              element_from_json(poset, ring, t.at("alpha"), "alpha")});
        } else if (kind == "transitive") {
          std::map<std::pair<int, int>, RingValue> values;
          const json& f = t.at("f");
          if (!f.is_array())
            throw ParseError("f: expected an entry array");
          for (const json& entry : f) {
            if (!entry.is_array() || entry.size() != 3)
              throw ParseError("f: each entry must be [x, y, value]");
            int x = vertex_from_json(poset, entry[0], "f");
            int y = vertex_from_json(poset, entry[1], "f");
            RingValue v = value_from_json(ring, entry[2], "f");
            auto [it, fresh] = values.insert({{x, y}, v});
            if (!fresh) it->second = it->second + v;
          }
          map.add(TransitiveTerm{
              TransitiveTable::build(poset.carrier, ring, values)});
        } else if (kind == "additive_induced") {
          std::map<int, AdditiveDerivationSpec> by_class;
          for (const json& entry : t.at("assign")) {
            if (!entry.is_array() || entry.size() != 2 ||
                !entry[0].is_array() || entry[0].size() != 2)
              throw ParseError(
                  "assign: each entry must be [[x, y], derivation]");
            int x = vertex_from_json(poset, entry[0][0], "assign");
            int y = vertex_from_json(poset, entry[0][1], "assign");
            by_class.insert_or_assign(
                ctx.classes->class_of(x, y),
                deriv_spec_from_json(entry[1], "assign"));
          }
          map.add(AdditiveInducedTerm{std::move(by_class)});
        } else if (kind == "central_trace") {
          std::map<int, PolyCoeffs> by_component;
          for (const json& entry : t.at("h")) {
            if (!entry.is_array() || entry.size() != 2 ||
                !entry[0].is_number_integer())
              throw ParseError("h: each entry must be [component, [coeffs]]");
            by_component.insert_or_assign(int(entry[0].get<long long>()),
                                          coeffs_from_json(entry[1], "h"));
          }
          map.add(CentralTraceTerm{std::move(by_component)});
        } else if (kind == "witness") {
          const json& edge = t.at("class_edge");
          if (!edge.is_array() || edge.size() != 2)
            throw ParseError("class_edge: expected [x, y]");
          int x = vertex_from_json(poset, edge[0], "class_edge");
          int y = vertex_from_json(poset, edge[1], "class_edge");
          map.add(WitnessTerm{ctx.classes->class_of(x, y),
                              vertex_from_json(poset, t.at("t"), "t"),
                              deriv_spec_from_json(t.at("f"), "f")});
        } else if (kind == "proper_part") {
          std::map<int, AdditiveDerivationSpec> by_component;
          for (const json& entry : t.at("assign")) {
            if (!entry.is_array() || entry.size() != 2 ||
                !entry[0].is_number_integer())
              throw ParseError(
                  "assign: each entry must be [component, derivation]");
            by_component.insert_or_assign(
                int(entry[0].get<long long>()),
                deriv_spec_from_json(entry[1], "assign"));
          }
          map.add(ProperPartTerm{std::move(by_component)});
        } else {
          throw ParseError("terms: unknown kind " + t["kind"].dump());
        }
      } catch (const nlohmann::json::exception& e) {
        throw ParseError("terms (" + kind + "): " + e.what());
      } catch (const ParseError&) {
        throw;
      } catch (const Error& e) {
        throw ParseError("terms (" + kind + "): " + e.what());
      }
    }
  }
  return DerivationDocument{ring, n, std::move(map)};
}

std::string render_derivation_document(const MapSpec& map, int n,
                                       const PosetDocument& poset) {
  json doc = map_spec_to_json(map, poset);
  doc["n"] = n;
  return dump_report(doc);
}

std::string render_ring_value(const RingValue& v) {
  return value_to_json(v).dump();
}

RingValue parse_ring_value_text(const RingDescriptor& ring,
                                const std::string& text) {
  return value_from_json(ring, parse_text(text), "value");
}

std::string render_validate_report(const PosetDocument& poset) {
  const Preorder& p = *poset.carrier;
  json doc;
  doc["command"] = "validate";
  doc["valid"] = true;
  doc["vertices"] = poset.names;
  long related = 0;
  for (int x = 0; x < p.size(); ++x)
    for (int y = 0; y < p.size(); ++y)
      if (p.leq(x, y)) ++related;
  doc["related_pairs"] = related;
  json edges = json::array();
  for (auto edge : p.strict_edges()) edges.push_back(edge_to_json(poset, edge));
  doc["strict_edges"] = std::move(edges);
  doc["components"] = p.component_count();
  return dump_report(doc);
}

std::string render_components_report(const PosetDocument& poset) {
  const Preorder& p = *poset.carrier;
  json doc;
  doc["command"] = "components";
  doc["count"] = p.component_count();
  json comps = json::array();
  for (int c = 0; c < p.component_count(); ++c) {
    json comp;
    comp["id"] = c;
    json verts = json::array();
    for (int x : p.component_vertices(c)) verts.push_back(poset.name_of(x));
    comp["vertices"] = std::move(verts);
    comp["full"] = p.is_full_component(c);
    comps.push_back(std::move(comp));
  }
  doc["components"] = std::move(comps);
  return dump_report(doc);
}

std::string render_classes_report(const PosetDocument& poset,
                                  const EdgeClassification& classes) {
  json doc;
  doc["command"] = "classes";
  doc["count"] = classes.class_count();
  json arr = json::array();
  for (int c = 0; c < classes.class_count(); ++c) {
    json cls;
    cls["id"] = c;
    json edges = json::array();
    for (auto edge : classes.class_edges(c))
      edges.push_back(edge_to_json(poset, edge));
    cls["edges"] = std::move(edges);
    json verts = json::array();
    for (int x : classes.class_vertices(c)) verts.push_back(poset.name_of(x));
    cls["vertices"] = std::move(verts);
    cls["component"] = classes.class_component(c);
    arr.push_back(std::move(cls));
  }
  doc["classes"] = std::move(arr);
  return dump_report(doc);
}

std::string render_properness_report(const PosetDocument& poset,
                                     const PropernessVerdict& verdict) {
  json doc;
  doc["command"] = "properness";
  doc["proper_capable"] = verdict.proper_capable;
  json comps = json::array();
  for (std::size_t c = 0; c < verdict.classes_by_component.size(); ++c) {
    json comp;
    comp["id"] = int(c);
    comp["classes"] = verdict.classes_by_component[c];
    comps.push_back(std::move(comp));
  }
  doc["components"] = std::move(comps);
  if (verdict.certificate) {
    json cert;
    cert["component"] = (*verdict.certificate)[0];
    cert["classes"] =
        json::array({(*verdict.certificate)[1], (*verdict.certificate)[2]});
    doc["certificate"] = std::move(cert);
    doc["note"] =
        "a component hosts two edge classes; maps acting differently on "
        "them cannot split as derivation plus central part";
  } else {
    doc["certificate"] = nullptr;
    doc["note"] =
        "each component hosts at most one edge class; every admissible "
        "map over this carrier splits as derivation plus central part";
  }
  (void)poset;
  return dump_report(doc);
}

std::string render_check_report(const PosetDocument& poset, int n,
                                const ProbeBudget& budget,
                                const Verdict& verdict) {
  json doc;
  doc["command"] = "check";
  doc["n"] = n;
  doc["seed"] = budget.seed;
  doc["probes_requested"] = budget.tuples;
  doc["verdict"] = verdict_to_json(poset, verdict);
  return dump_report(doc);
}

std::string render_decomposition_report(const PosetDocument& poset,
                                        const ProbeBudget& budget,
                                        const DecompositionReport& report) {
  json doc;
  doc["command"] = "decompose";
  doc["ring"] = report.ctx.ring.name();
  doc["n"] = report.n;
  doc["seed"] = budget.seed;
  doc["probes_requested"] = budget.tuples;
  doc["decomposable"] = report.decomposable;
  doc["corner"] = element_to_json(poset, report.corner);
  json f = json::array();
  for (const auto& [key, v] : report.transitive.entries())
    f.push_back(json::array({poset.name_of(key.first),
                             poset.name_of(key.second), value_to_json(v)}));
  doc["transitive"] = std::move(f);
  json classes = json::array();
  for (const auto& [cls, table] : report.class_probes) {
    json entry;
    entry["id"] = cls;
    entry["edge"] =
        edge_to_json(poset, report.ctx.classes->representative(cls));
    json probes = json::array();
    for (const auto& [scalar, value] : table.probes)
      probes.push_back(
          json::array({value_to_json(scalar), value_to_json(value)}));
    entry["probes"] = std::move(probes);
    auto fit = report.fitted.find(cls);
    entry["fitted"] = fit != report.fitted.end() && fit->second
                          ? deriv_spec_to_json(*fit->second)
                          : json(nullptr);
    classes.push_back(std::move(entry));
  }
  doc["classes"] = std::move(classes);
  json checks = json::array();
  for (const Verdict& v : report.checks)
    checks.push_back(verdict_to_json(poset, v));
  doc["checks"] = std::move(checks);
  return dump_report(doc);
}

std::string render_witness_report(const PosetDocument& poset,
                                  const std::optional<MapSpec>& witness) {
  if (!witness) {
    json doc;
    doc["command"] = "witness";
    doc["witness"] = nullptr;
    doc["note"] =
        "each component hosts at most one edge class; no refuting map "
        "exists";
    return dump_report(doc);
  }
  return render_derivation_document(*witness, 2, poset);
}

std::string render_properize_report(const PosetDocument& poset,
                                    const DecompositionReport& report,
                                    const ProperizeOutcome& outcome) {
  json doc;
  doc["command"] = "properize";
  doc["ring"] = report.ctx.ring.name();
  doc["n"] = report.n;
  doc["proper"] = outcome.proper.has_value();
  if (outcome.proper) {
    doc["derivation"] =
        parse_text(render_derivation_document(*outcome.proper, report.n,
                                              poset));
  } else {
    doc["derivation"] = nullptr;
  }
  if (outcome.certificate) {
    json cert;
    cert["component"] = (*outcome.certificate)[0];
    cert["classes"] =
        json::array({(*outcome.certificate)[1], (*outcome.certificate)[2]});
    doc["certificate"] = std::move(cert);
  } else {
    doc["certificate"] = nullptr;
  }
  doc["residual_check"] = verdict_to_json(poset, outcome.residual_check);
  return dump_report(doc);
}

}  // namespace fialg
