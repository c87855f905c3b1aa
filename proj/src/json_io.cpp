#include "chord/json_io.hpp"

#include <fstream>

namespace chord {

Json field_to_json(const Field& k) {
  return Json{{"p", k.p()}, {"e", k.e()}, {"modulus", k.modulus()}};
}

const Field& field_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("p") || !j.contains("e"))
    throw std::invalid_argument("field spec must be {\"p\":..,\"e\":..}");
  return Field::get(j.at("p").get<uint32_t>(), j.at("e").get<uint32_t>());
}

Json elem_to_json(const Field& k, uint32_t a) { return Json(k.coeffs(a)); }

uint32_t elem_from_json(const Field& k, const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("element must be a coefficient array");
  std::vector<uint32_t> c = j.get<std::vector<uint32_t>>();
  return k.from_coeffs(c);
}

Json point_to_json(const ProjPoint& x) {
  Json arr = Json::array();
  for (int i = 0; i <= x.dim; ++i) arr.push_back(elem_to_json(*x.f, x.c[i]));
  return arr;
}

ProjPoint point_from_json(const Field& k, int dim, const Json& j) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim + 1)
    throw std::invalid_argument("point has the wrong number of coordinates");
  std::vector<uint32_t> c;
  for (const auto& e : j) c.push_back(elem_from_json(k, e));
  return ProjPoint::make(k, dim, c);
}

Json form_to_json(const CubicForm& F) {
  Json coeffs = Json::array();
  for (int m = 0; m < F.ncoeffs(); ++m) coeffs.push_back(elem_to_json(*F.f, F.c[m]));
  return Json{{"field", field_to_json(*F.f)}, {"dim", F.dim}, {"coeffs", coeffs}};
}

CubicForm form_from_json(const Json& j) {
  const Field& k = field_from_json(j.at("field"));
  int dim = j.at("dim").get<int>();
  if (dim != 2 && dim != 3) throw std::invalid_argument("dim must be 2 or 3");
  const Json& cj = j.at("coeffs");
  std::vector<uint32_t> c;
  for (const auto& e : cj) c.push_back(elem_from_json(k, e));
  return CubicForm::make(k, dim, c);
}

Json cubic_to_json(const AbstractCubic& P) {
  Json j{{"n", P.size()}, {"triples", P.triples()}, {"line_pairs", P.line_pairs()}};
  if (!P.labels.empty()) j["labels"] = P.labels;
  return j;
}

AbstractCubic cubic_from_json(const Json& j) {
  int n = j.at("n").get<int>();
  std::vector<std::array<int, 3>> triples;
  for (const auto& t : j.at("triples")) {
    if (!t.is_array() || t.size() != 3) throw std::invalid_argument("triple must have 3 indices");
    triples.push_back({t[0].get<int>(), t[1].get<int>(), t[2].get<int>()});
  }
  std::vector<std::array<int, 2>> pairs;
  if (j.contains("line_pairs"))
    for (const auto& t : j.at("line_pairs"))
      pairs.push_back({t[0].get<int>(), t[1].get<int>()});
  auto P = AbstractCubic::from_triples(n, triples, pairs);
  if (j.contains("labels")) P.labels = j.at("labels").get<std::vector<std::string>>();
  return P;
}

Json partition_to_json(const Partition& R) { return Json(R.rep_array()); }

Json trace_to_json(const SaturationTrace& t) {
  Json stages = Json::array();
  for (const auto& s : t.stages) stages.push_back(partition_to_json(s));
  return Json{{"stages", stages}, {"stabilized_at", t.stabilized_at}};
}

Json table_to_json(const QuasigroupTable& Q) {
  Json rows = Json::array();
  for (int X = 0; X < Q.m; ++X) {
    Json row = Json::array();
    for (int Y = 0; Y < Q.m; ++Y) row.push_back(Q.at(X, Y));
    rows.push_back(row);
  }
  return Json{{"m", Q.m}, {"table", rows}};
}

Json word_to_json(const Word& w) { return Json(w); }

Word word_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("word must be an index array");
  return j.get<Word>();
}

Json closure_to_json(const ClosureResult& r) {
  return Json{{"reached", r.reached},
              {"rounds", r.rounds},
              {"complete", r.complete},
              {"generated_all", r.generated_all}};
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  Json j;
  try {
    in >> j;
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument(std::string("invalid JSON in ") + path + ": " + e.what());
  }
  return j;
}

}  // namespace chord
