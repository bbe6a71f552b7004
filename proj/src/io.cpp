#include "weylkit/io.hpp"

#include <fstream>
#include <set>

#include "weylkit/error.hpp"

namespace weylkit {

namespace {

std::string escape(const std::string& token) {
  std::string out;
  for (char ch : token) {
    if (ch == '~')
      out += "~0";
    else if (ch == '/')
      out += "~1";
    else
      out += ch;
  }
  return out;
}

std::string ptr(const std::string& parent, const std::string& token) { return parent + "/" + escape(token); }
std::string ptr(const std::string& parent, std::size_t index) { return parent + "/" + std::to_string(index); }

[[noreturn]] void schema(const std::string& message, const std::string& pointer) {
  throw Error(ErrorCode::Schema, message + " at " + (pointer.empty() ? "/" : pointer), pointer);
}

const json& field(const json& obj, const std::string& key, const std::string& pointer) {
  const auto it = obj.find(key);
  if (it == obj.end()) schema("missing field \"" + key + "\"", pointer);
  return *it;
}

std::string as_string(const json& v, const std::string& pointer) {
  if (!v.is_string()) schema("expected a string", pointer);
  return v.get<std::string>();
}

const json& as_object(const json& v, const std::string& pointer) {
  if (!v.is_object()) schema("expected an object", pointer);
  return v;
}

const json& as_array(const json& v, const std::string& pointer) {
  if (!v.is_array()) schema("expected an array", pointer);
  return v;
}

std::int64_t as_int(const json& v, const std::string& pointer) {
  if (!v.is_number_integer()) schema("expected an integer", pointer);
  return v.get<std::int64_t>();
}

Phase as_phase(const json& v, const std::string& pointer) {
  const std::string text = as_string(v, pointer);
  try {
    return Phase::parse(text);
  } catch (const Error&) {
    schema("malformed phase \"" + text + "\"", pointer);
  }
}

Arrow known_arrow(const FiniteGroupoid& g, const std::string& id, const std::string& pointer) {
  const auto a = g.find(id);
  if (!a) throw Error(ErrorCode::UnknownArrowId, "unknown arrow id \"" + id + "\" at " + pointer, id);
  return *a;
}

std::pair<Arrow, Arrow> pair_key(const FiniteGroupoid& g, const std::string& key, const std::string& pointer) {
  std::map<std::string, int> known;
  for (Arrow a = 0; a < g.size(); ++a) known[g.id(a)] = a;
  const auto [l, r] = split_pair_key(key, known, pointer);
  return {known.at(l), known.at(r)};
}

}  // namespace

std::pair<std::string, std::string> split_pair_key(const std::string& key, const std::map<std::string, int>& known,
                                                   const std::string& pointer) {
  std::vector<std::pair<std::string, std::string>> splits;
  for (std::size_t i = 0; i < key.size(); ++i) {
    if (key[i] != ',') continue;
    std::string l = key.substr(0, i), r = key.substr(i + 1);
    if (known.count(l) && known.count(r)) splits.emplace_back(std::move(l), std::move(r));
  }
  if (splits.empty())
    throw Error(ErrorCode::UnknownArrowId, "key \"" + key + "\" is not a pair of known ids at " + pointer, key);
  if (splits.size() > 1) schema("key \"" + key + "\" splits into known ids in more than one way", pointer);
  return splits.front();
}

GroupoidFile parse_groupoid_json(const json& doc) {
  as_object(doc, "");
  GroupoidDescription d;
  if (doc.contains("name")) d.name = as_string(doc["name"], "/name");

  std::map<std::string, int> known;
  const json& units = as_array(field(doc, "units", ""), "/units");
  for (std::size_t i = 0; i < units.size(); ++i) {
    d.units.push_back(as_string(units[i], ptr("/units", i)));
    known[d.units.back()] = 0;
  }
  const json& arrows = as_array(field(doc, "arrows", ""), "/arrows");
  for (std::size_t i = 0; i < arrows.size(); ++i) {
    const std::string p = ptr("/arrows", i);
    const json& rec = as_object(arrows[i], p);
    ArrowRecord r{as_string(field(rec, "id", p), p + "/id"), as_string(field(rec, "source", p), p + "/source"),
                  as_string(field(rec, "target", p), p + "/target")};
    known[r.id] = 0;
    d.arrows.push_back(std::move(r));
  }
  const json& compose = as_object(field(doc, "compose", ""), "/compose");
  for (const auto& [key, value] : compose.items()) {
    const std::string p = ptr("/compose", key);
    d.compose[split_pair_key(key, known, p)] = as_string(value, p);
  }
  if (doc.contains("inverse")) {
    std::map<std::string, std::string> inv;
    for (const auto& [key, value] : as_object(doc["inverse"], "/inverse").items())
      inv[key] = as_string(value, ptr("/inverse", key));
    d.inverse = std::move(inv);
  }

  GroupoidFile file;
  file.groupoid = validate_groupoid(d);
  const FiniteGroupoid& g = file.groupoid;
  file.cocycle = TwoCocycle(g);
  if (doc.contains("cocycle")) {
    for (const auto& [key, value] : as_object(doc["cocycle"], "/cocycle").items()) {
      const std::string p = ptr("/cocycle", key);
      const auto [a, b] = pair_key(g, key, p);
      file.cocycle.set(g, a, b, as_phase(value, p));
    }
  }
  if (doc.contains("grading")) {
    const json& gr = as_object(doc["grading"], "/grading");
    Grading c;
    const json& group = as_array(field(gr, "group", "/grading"), "/grading/group");
    for (std::size_t i = 0; i < group.size(); ++i) {
      const std::int64_t n = as_int(group[i], ptr("/grading/group", i));
      if (n < 0) schema("cyclic order must be nonnegative", ptr("/grading/group", i));
      c.orders.push_back(n);
    }
    const json& values = as_object(field(gr, "values", "/grading"), "/grading/values");
    c.values.assign(g.size(), {});
    std::vector<bool> seen(g.size(), false);
    for (const auto& [key, value] : values.items()) {
      const std::string p = ptr("/grading/values", key);
      const Arrow a = known_arrow(g, key, p);
      const json& vec = as_array(value, p);
      if (vec.size() != c.orders.size()) schema("grading value has the wrong length", p);
      GroupElement e;
      for (std::size_t i = 0; i < vec.size(); ++i) e.push_back(as_int(vec[i], ptr(p, i)));
      c.values[a] = c.normalize(std::move(e));
      seen[a] = true;
    }
    for (Arrow a = 0; a < g.size(); ++a)
      if (!seen[a]) schema("grading has no value for \"" + g.id(a) + "\"", "/grading/values");
    validate_grading(g, c);
    file.grading = std::move(c);
  }
  if (doc.contains("marked_subgroupoid")) {
    const json& m = as_array(doc["marked_subgroupoid"], "/marked_subgroupoid");
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < m.size(); ++i) {
      const std::string p = ptr("/marked_subgroupoid", i);
      ids.push_back(as_string(m[i], p));
      known_arrow(g, ids.back(), p);
    }
    file.marked = std::move(ids);
  }
  if (doc.contains("section")) {
    std::map<std::string, std::string> sec;
    for (const auto& [key, value] : as_object(doc["section"], "/section").items())
      sec[key] = as_string(value, ptr("/section", key));
    file.section = std::move(sec);
  }
  return file;
}

json emit_groupoid_json(const GroupoidFile& file) {
  const FiniteGroupoid& g = file.groupoid;
  json doc;
  doc["name"] = g.name();
  json units = json::array();
  for (Arrow u : g.units()) units.push_back(g.id(u));
  doc["units"] = units;
  json arrows = json::array();
  for (Arrow a = 0; a < g.size(); ++a)
    if (!g.is_unit(a)) arrows.push_back({{"id", g.id(a)}, {"source", g.id(g.source(a))}, {"target", g.id(g.target(a))}});
  doc["arrows"] = arrows;
  json compose = json::object();
  json cocycle = json::object();
  for (Arrow a = 0; a < g.size(); ++a)
    for (Arrow b : g.arrows_to(g.source(a))) {
      const std::string key = g.id(a) + "," + g.id(b);
      compose[key] = g.id(g.compose(a, b));
      if (!file.cocycle(a, b).is_zero()) cocycle[key] = file.cocycle(a, b).to_string();
    }
  doc["compose"] = compose;
  doc["cocycle"] = cocycle;
  if (file.grading) {
    json values = json::object();
    for (Arrow a = 0; a < g.size(); ++a) values[g.id(a)] = file.grading->values[a];
    doc["grading"] = {{"group", file.grading->orders}, {"values", values}};
  }
  if (file.marked) doc["marked_subgroupoid"] = *file.marked;
  if (file.section) {
    json sec = json::object();
    for (const auto& [k, v] : *file.section) sec[k] = v;
    doc["section"] = sec;
  }
  return doc;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string(), path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Schema, path.string() + ": " + e.what(), "");
  }
}

GroupoidFile read_groupoid_file(const std::filesystem::path& path) { return parse_groupoid_json(read_json_file(path)); }

void write_json_file(const std::filesystem::path& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string(), path.string());
  out << doc.dump(2) << "\n";
  if (!out) throw Error(ErrorCode::Io, "write failed for " + path.string(), path.string());
}

GroupoidFile file_from_corpus(const CorpusEntry& entry) {
  GroupoidFile f;
  f.groupoid = entry.g.renamed(entry.name);
  f.cocycle = entry.omega;
  f.grading = entry.c;
  std::vector<std::string> ids;
  for (Arrow a : entry.s.members()) ids.push_back(entry.g.id(a));
  f.marked = std::move(ids);
  return f;
}

bool same_file_content(const GroupoidFile& a, const GroupoidFile& b) {
  const FiniteGroupoid& ga = a.groupoid;
  const FiniteGroupoid& gb = b.groupoid;
  if (ga.name() != gb.name() || ga.ids() != gb.ids()) return false;
  for (Arrow x = 0; x < ga.size(); ++x) {
    if (ga.source(x) != gb.source(x) || ga.target(x) != gb.target(x) || ga.inverse(x) != gb.inverse(x)) return false;
    for (Arrow y : ga.arrows_to(ga.source(x)))
      if (ga.compose(x, y) != gb.compose(x, y) || a.cocycle(x, y) != b.cocycle(x, y)) return false;
  }
  if (a.grading.has_value() != b.grading.has_value()) return false;
  if (a.grading) {
    if (a.grading->orders != b.grading->orders) return false;
    for (Arrow x = 0; x < ga.size(); ++x)
      if (a.grading->normalize(a.grading->values[x]) != b.grading->normalize(b.grading->values[x])) return false;
  }
  auto as_set = [](const std::optional<std::vector<std::string>>& v) {
    return v ? std::optional<std::set<std::string>>(std::set<std::string>(v->begin(), v->end())) : std::nullopt;
  };
  return as_set(a.marked) == as_set(b.marked) && a.section == b.section;
}

// ---------------------------------------------------------------------------

json emit_action_package(const ActionPackage& pkg, const std::string& groupoid_ref) {
  const FiniteGroupoid& h = pkg.h;
  const GroupBundle& t = pkg.t;
  json fibres = json::array();
  for (int b = 0; b < t.base_size(); ++b) {
    json names = json::array();
    json table = json::array();
    for (int x : t.fibre(b)) {
      names.push_back(t.name(x));
      json row = json::array();
      for (int y : t.fibre(b)) row.push_back(t.position(t.mul(x, y)));
      table.push_back(row);
    }
    fibres.push_back({{"base", t.base_name(b)}, {"elements", names}, {"table", table}});
  }
  json unit_of = json::object();
  for (int x = 0; x < t.size(); ++x) unit_of[t.name(x)] = h.id(pkg.unit_of_t[x]);

  json left = json::array(), right = json::array(), lambda = json::array(), rho = json::array();
  for (Arrow eta = 0; eta < h.size(); ++eta) {
    for (int x : t.fibre(pkg.p_r(eta))) {
      left.push_back({t.name(x), h.id(eta), h.id(pkg.left[x][eta])});
      rho.push_back({h.id(eta), t.name(x), t.name(pkg.rho[eta][x])});
    }
    for (int x : t.fibre(pkg.p_s(eta))) {
      right.push_back({h.id(eta), t.name(x), h.id(pkg.right[eta][x])});
      lambda.push_back({h.id(eta), t.name(x), t.name(pkg.lambda[eta][x])});
    }
  }
  json doc;
  doc["kind"] = "action_package";
  doc["groupoid"] = groupoid_ref;
  doc["bundle"] = {{"fibres", fibres}};
  doc["unit_of"] = unit_of;
  doc["left"] = left;
  doc["right"] = right;
  doc["lambda"] = lambda;
  doc["rho"] = rho;
  if (!pkg.orbit_label.empty()) {
    json labels = json::object();
    for (Arrow eta = 0; eta < h.size(); ++eta)
      if (!pkg.orbit_label[eta].empty()) labels[h.id(eta)] = pkg.orbit_label[eta];
    doc["orbit_label"] = labels;
  }
  return doc;
}

ActionPackage parse_action_package(const json& doc, const FiniteGroupoid& h) {
  as_object(doc, "");
  std::vector<std::string> bases;
  std::vector<std::vector<std::string>> names;
  std::vector<std::vector<std::vector<int>>> tables;
  const json& fibres = as_array(field(as_object(field(doc, "bundle", ""), "/bundle"), "fibres", "/bundle"),
                                "/bundle/fibres");
  for (std::size_t b = 0; b < fibres.size(); ++b) {
    const std::string p = ptr("/bundle/fibres", b);
    const json& f = as_object(fibres[b], p);
    bases.push_back(as_string(field(f, "base", p), p + "/base"));
    const json& el = as_array(field(f, "elements", p), p + "/elements");
    names.emplace_back();
    for (std::size_t i = 0; i < el.size(); ++i) names.back().push_back(as_string(el[i], ptr(p + "/elements", i)));
    const json& tb = as_array(field(f, "table", p), p + "/table");
    if (tb.size() != el.size()) schema("table has the wrong number of rows", p + "/table");
    tables.emplace_back();
    for (std::size_t i = 0; i < tb.size(); ++i) {
      const json& row = as_array(tb[i], ptr(p + "/table", i));
      if (row.size() != el.size()) schema("table row has the wrong length", ptr(p + "/table", i));
      tables.back().emplace_back();
      for (std::size_t j = 0; j < row.size(); ++j) {
        const std::int64_t v = as_int(row[j], ptr(ptr(p + "/table", i), j));
        if (v < 0 || v >= static_cast<std::int64_t>(el.size())) schema("table entry out of range", ptr(p + "/table", i));
        tables.back().back().push_back(static_cast<int>(v));
      }
    }
  }

  ActionPackage pkg;
  pkg.h = h;
  pkg.t = GroupBundle::from_tables(bases, names, tables);
  const GroupBundle& t = pkg.t;
  std::map<std::string, int> elem;
  for (int x = 0; x < t.size(); ++x)
    if (!elem.emplace(t.name(x), x).second) schema("duplicate element name \"" + t.name(x) + "\"", "/bundle");
  auto element = [&](const json& v, const std::string& p) {
    const std::string name = as_string(v, p);
    const auto it = elem.find(name);
    if (it == elem.end()) schema("unknown bundle element \"" + name + "\"", p);
    return it->second;
  };
  auto arrow = [&](const json& v, const std::string& p) { return known_arrow(h, as_string(v, p), p); };

  pkg.unit_of_t.assign(t.size(), kNone);
  pkg.t_of_unit.assign(h.size(), -1);
  for (const auto& [key, value] : as_object(field(doc, "unit_of", ""), "/unit_of").items()) {
    const std::string p = ptr("/unit_of", key);
    const int x = element(json(key), p);
    const Arrow u = arrow(value, p);
    pkg.unit_of_t[x] = u;
    pkg.t_of_unit[u] = x;
  }

  pkg.left.assign(t.size(), std::vector<Arrow>(h.size(), kNone));
  pkg.right.assign(h.size(), std::vector<Arrow>(t.size(), kNone));
  pkg.lambda.assign(h.size(), std::vector<int>(t.size(), -1));
  pkg.rho.assign(h.size(), std::vector<int>(t.size(), -1));
  auto triples = [&](const std::string& key, auto&& store) {
    const std::string base = "/" + key;
    const json& list = as_array(field(doc, key, ""), base);
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string p = ptr(base, i);
      const json& tr = as_array(list[i], p);
      if (tr.size() != 3) schema("expected a triple", p);
      store(tr, p);
    }
  };
  triples("left", [&](const json& tr, const std::string& p) {
    pkg.left[element(tr[0], p + "/0")][arrow(tr[1], p + "/1")] = arrow(tr[2], p + "/2");
  });
  triples("right", [&](const json& tr, const std::string& p) {
    pkg.right[arrow(tr[0], p + "/0")][element(tr[1], p + "/1")] = arrow(tr[2], p + "/2");
  });
  triples("lambda", [&](const json& tr, const std::string& p) {
    pkg.lambda[arrow(tr[0], p + "/0")][element(tr[1], p + "/1")] = element(tr[2], p + "/2");
  });
  triples("rho", [&](const json& tr, const std::string& p) {
    pkg.rho[arrow(tr[0], p + "/0")][element(tr[1], p + "/1")] = element(tr[2], p + "/2");
  });
  if (doc.contains("orbit_label")) {
    pkg.orbit_label.assign(h.size(), {});
    for (const auto& [key, value] : as_object(doc["orbit_label"], "/orbit_label").items()) {
      const std::string p = ptr("/orbit_label", key);
      pkg.orbit_label[known_arrow(h, key, p)] = as_string(value, p);
    }
  }
  return pkg;
}

json character_json(const CharacterBundle& dual, int x) {
  const GroupBundle& s = dual.group();
  json values = json::object();
  for (int a : s.fibre(dual.base_of(x))) values[s.name(a)] = dual.pairing(x, a).to_string();
  return {{"id", dual.id(x)}, {"unit", s.base_name(dual.base_of(x))}, {"values", values}};
}

json emit_theta(const QuotientHT& q, const DiamondAction& diamond, const ThetaDatum& theta,
                const std::string& groupoid_ref) {
  const FiniteGroupoid& g = q.groupoid;
  json chars = json::array();
  for (int x = 0; x < diamond.dual.size(); ++x) chars.push_back(character_json(diamond.dual, x));
  json entries = json::array();
  for (Arrow a = 0; a < g.size(); ++a)
    for (Arrow b : g.arrows_to(g.source(a))) entries.push_back({g.id(a), g.id(b), diamond.dual.id(theta[a][b])});
  json doc;
  doc["kind"] = "theta";
  doc["groupoid"] = groupoid_ref;
  doc["characters"] = chars;
  doc["theta"] = entries;
  return doc;
}

ThetaDatum parse_theta(const json& doc, const QuotientHT& q, const DiamondAction& diamond) {
  as_object(doc, "");
  const FiniteGroupoid& g = q.groupoid;
  std::map<std::string, int> chars;
  for (int x = 0; x < diamond.dual.size(); ++x) chars[diamond.dual.id(x)] = x;
  ThetaDatum theta(g.size(), std::vector<int>(g.size(), -1));
  const json& list = as_array(field(doc, "theta", ""), "/theta");
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string p = ptr("/theta", i);
    const json& tr = as_array(list[i], p);
    if (tr.size() != 3) schema("expected a triple", p);
    const Arrow a = known_arrow(g, as_string(tr[0], p + "/0"), p + "/0");
    const Arrow b = known_arrow(g, as_string(tr[1], p + "/1"), p + "/1");
    const std::string id = as_string(tr[2], p + "/2");
    const auto it = chars.find(id);
    if (it == chars.end()) schema("unknown character \"" + id + "\"", p + "/2");
    theta[a][b] = it->second;
  }
  return theta;
}

}  // namespace weylkit
