#include "schurdouble/json_io.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace schurdouble {

using nlohmann::json;
using ordered = nlohmann::ordered_json;

std::string presentation_to_json(const Presentation& p) {
  ordered j;
  j["schema"] = "presentation/1";
  j["name"] = p.name;
  ordered labels = ordered::array();
  for (int i = 0; i < p.dim(); ++i) {
    ordered lab;
    lab["name"] = p.basis.labels[i];
    lab["parity"] = p.basis.parity[i] & 1;
    if (p.basis.graded()) lab["degree"] = p.basis.degree[i];
    labels.push_back(std::move(lab));
  }
  j["labels"] = std::move(labels);
  ordered unit = ordered::object();
  for (const auto& [i, c] : p.unit) unit[p.basis.labels[i]] = c.get_str();
  j["unit"] = std::move(unit);
  ordered kappa = ordered::array();
  for (int i = 0; i < p.dim(); ++i)
    for (int k = 0; k < p.dim(); ++k) {
      if (p.kappa[i][k].empty()) continue;
      ordered rec;
      rec["left"] = p.basis.labels[i];
      rec["right"] = p.basis.labels[k];
      ordered res = ordered::object();
      for (const auto& [t, c] : p.kappa[i][k])
        res[p.basis.labels[t]] = c.get_str();
      rec["result"] = std::move(res);
      kappa.push_back(std::move(rec));
    }
  j["kappa"] = std::move(kappa);
  return j.dump();
}

Presentation presentation_from_json(const std::string& text) {
  json j = json::parse(text);
  if (j.value("schema", "") != "presentation/1")
    throw InputError("presentation file: unsupported schema (expected "
                     "presentation/1)");
  Presentation p;
  p.name = j.value("name", "unnamed");
  bool graded = false;
  for (const auto& lab : j.at("labels")) {
    p.basis.labels.push_back(lab.at("name").get<std::string>());
    p.basis.parity.push_back(lab.at("parity").get<int>() & 1);
    if (lab.contains("degree")) graded = true;
  }
  if (graded) {
    for (const auto& lab : j.at("labels")) {
      if (!lab.contains("degree"))
        throw InputError("presentation file: degrees must be given for all "
                         "labels or none");
      p.basis.degree.push_back(lab.at("degree").get<int>());
    }
  }
  const int m = p.dim();
  p.kappa.assign(m, std::vector<SparseVec>(m));
  auto parse_coeff = [](const json& v) {
    if (v.is_string()) return Int(v.get<std::string>());
    if (v.is_number_integer()) return Int(v.get<long>());
    throw InputError("presentation file: coefficients must be integers or "
                     "decimal strings");
  };
  for (auto it = j.at("unit").begin(); it != j.at("unit").end(); ++it) {
    Int c = parse_coeff(it.value());
    if (c != 0) p.unit[p.label_index(it.key())] = c;
  }
  for (const auto& rec : j.at("kappa")) {
    const int i = p.label_index(rec.at("left").get<std::string>());
    const int k = p.label_index(rec.at("right").get<std::string>());
    for (auto it = rec.at("result").begin(); it != rec.at("result").end(); ++it) {
      Int c = parse_coeff(it.value());
      if (c != 0) p.kappa[i][k][p.label_index(it.key())] = c;
    }
  }
  p.check();
  return p;
}

Quiver quiver_from_json(const std::string& text) {
  json j = json::parse(text);
  Quiver q;
  q.num_vertices = j.at("vertices").get<int>();
  for (const auto& e : j.at("edges"))
    q.edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
  q.validate();
  return q;
}

std::string content_hash(const std::string& canonical) {
  unsigned long long h = 1469598103934665603ULL;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  snprintf(buf, sizeof buf, "%016llx", h);
  return std::string(buf);
}

std::string presentation_hash(const Presentation& p) {
  return content_hash(presentation_to_json(p));
}

void write_table(std::ostream& os, const SchurAlgebra& s,
                 const StructureConstantTable& t,
                 const std::string& scalar_ring) {
  ordered head;
  head["type"] = "structure_constants";
  head["schema"] = "table/1";
  head["presentation_hash"] = presentation_hash(s.algebra());
  head["n"] = t.n;
  head["d"] = t.d;
  head["basis_order_version"] = t.basis_order_version;
  head["mode"] = t.mode;
  head["ring"] = scalar_ring;
  head["dim"] = s.dim();
  os << head.dump() << "\n";
  for (const auto& [key, f] : t.entries) {
    ordered rec;
    rec["c"] = ordered(s.tuples().tuple(key.first));
    rec["d"] = ordered(s.tuples().tuple(key.second));
    ordered out = ordered::array();
    for (const auto& [k, c] : f) {
      ordered term;
      term["e"] = ordered(s.tuples().tuple(k));
      term["f"] = c.get_str();
      out.push_back(std::move(term));
    }
    rec["out"] = std::move(out);
    os << rec.dump() << "\n";
  }
}

StructureConstantTable read_table(std::istream& is, const SchurAlgebra& s) {
  std::string line;
  if (!std::getline(is, line)) throw InputError("table file: empty");
  json head = json::parse(line);
  if (head.value("schema", "") != "table/1")
    throw InputError("table file: unsupported schema");
  if (head.value("basis_order_version", "") != "1")
    throw InputError("table file: stale basis order version");
  if (head.value("presentation_hash", "") != presentation_hash(s.algebra()))
    throw InputError("table file: presentation hash mismatch");
  if (head.value("n", -1) != s.n() || head.value("d", -1) != s.d())
    throw InputError("table file: (n,d) mismatch");
  StructureConstantTable t;
  t.n = s.n();
  t.d = s.d();
  t.presentation_hash = head.value("presentation_hash", "");
  t.mode = head.value("mode", "");
  auto tuple_of = [&](const json& arr) {
    ExpTuple e;
    for (const auto& v : arr) e.push_back(v.get<int>());
    int idx = s.tuples().index(e);
    if (idx < 0) throw InputError("table file: tuple outside M^B(n,d)");
    return idx;
  };
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    json rec = json::parse(line);
    const int i = tuple_of(rec.at("c"));
    const int j = tuple_of(rec.at("d"));
    SparseVec f;
    for (const auto& term : rec.at("out")) {
      Int c(term.at("f").get<std::string>());
      if (c != 0) f[tuple_of(term.at("e"))] = c;
    }
    if (!f.empty()) t.entries.emplace(std::make_pair(i, j), std::move(f));
  }
  return t;
}

}  // namespace schurdouble
