#pragma once

#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "ionad/construct.hpp"
#include "ionad/site.hpp"
#include "ionad/space.hpp"

namespace ionad::io {

using json = nlohmann::ordered_json;

inline constexpr std::string_view schema_version = "ionad/1";

/// Malformed text; `line` and `column` (1-based) locate the last character read.
struct syntax_error : input_error {
  std::size_t line = 0;
  std::size_t column = 0;
  syntax_error(std::size_t l, std::size_t c, const std::string& what)
      : input_error("syntax error at line " + std::to_string(l) + ", column " + std::to_string(c) + ": " + what),
        line(l), column(c) {}
};

struct unresolved_reference : input_error {
  std::string label;
  unresolved_reference(std::string l, const std::string& where)
      : input_error("unresolved reference '" + l + "' in " + where), label(std::move(l)) {}
};

struct duplicate_label : input_error {
  std::string label;
  duplicate_label(std::string l, const std::string& where)
      : input_error("duplicate label '" + l + "' in " + where), label(std::move(l)) {}
};

/// Dense label table of one namespace.
struct Labels {
  std::vector<std::string> names;
  std::map<std::string, Index, std::less<>> index;

  Index add(const std::string& name, const std::string& where) {
    if (name.empty()) throw input_error("empty label in " + where);
    if (!index.emplace(name, names.size()).second) throw duplicate_label(name, where);
    names.push_back(name);
    return names.size() - 1;
  }
  [[nodiscard]] Index at(const std::string& name, const std::string& where) const {
    auto it = index.find(name);
    if (it == index.end()) throw unresolved_reference(name, where);
    return it->second;
  }
  [[nodiscard]] std::size_t size() const { return names.size(); }
  [[nodiscard]] const std::string& operator[](Index i) const { return names[i]; }

  static Labels of(std::vector<std::string> names) {
    Labels l;
    for (auto& n : names) l.add(n, "generated labels");
    return l;
  }
  friend bool operator==(const Labels& a, const Labels& b) { return a.names == b.names; }
};

namespace detail {

inline std::string at_index(const std::string& where, std::size_t i) { return where + "[" + std::to_string(i) + "]"; }

inline const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) throw input_error(where + " must be an object");
  auto it = j.find(key);
  if (it == j.end()) throw input_error("missing field '" + std::string(key) + "' in " + where);
  return *it;
}

inline const json& array(const json& j, const std::string& where) {
  if (!j.is_array()) throw input_error(where + " must be an array");
  return j;
}

inline std::string text(const json& j, const std::string& where) {
  if (!j.is_string()) throw input_error(where + " must be a string");
  return j.get<std::string>();
}

inline std::size_t number(const json& j, const std::string& where) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
    throw input_error(where + " must be a non-negative integer");
  return j.get<std::size_t>();
}

inline std::string field_text(const json& j, const char* key, const std::string& where) {
  return text(field(j, key, where), where + "." + key);
}

inline Labels label_list(const json& j, const std::string& where) {
  Labels l;
  std::size_t i = 0;
  for (const auto& e : array(j, where)) l.add(text(e, at_index(where, i++)), where);
  return l;
}

inline json label_json(const Labels& l) {
  json a = json::array();
  for (const auto& n : l.names) a.push_back(n);
  return a;
}

/// A row of labels resolved to indices.
inline std::vector<Index> resolve_row(const json& j, const Labels& l, std::size_t expect, const std::string& where) {
  std::vector<Index> out;
  for (const auto& e : array(j, where)) out.push_back(l.at(text(e, at_index(where, out.size())), where));
  if (out.size() != expect) throw input_error(where + " must have " + std::to_string(expect) + " entries");
  return out;
}

inline std::vector<Index> number_row(const json& j, std::size_t expect, std::size_t bound, const std::string& where) {
  std::vector<Index> out;
  for (const auto& e : array(j, where)) {
    std::string w = at_index(where, out.size());
    Index v = number(e, w);
    if (v >= bound) throw input_error(w + " out of range");
    out.push_back(v);
  }
  if (out.size() != expect) throw input_error(where + " must have " + std::to_string(expect) + " entries");
  return out;
}

inline json number_json(const std::vector<Index>& v) {
  json a = json::array();
  for (auto e : v) a.push_back(e);
  return a;
}

/// Entries of a keyed list (`[{key: label, ...}]`), one per label of `l`, in label order.
template <class Read>
void keyed(const json& j, const char* key, const Labels& l, const std::vector<Index>& wanted, const std::string& where,
           Read read) {
  std::vector<bool> seen(l.size(), false);
  std::size_t i = 0;
  for (const auto& e : array(j, where)) {
    std::string w = at_index(where, i++);
    Index k = l.at(field_text(e, key, w), w + "." + key);
    if (std::find(wanted.begin(), wanted.end(), k) == wanted.end())
      throw input_error(w + " names '" + l[k] + "', which takes no entry here");
    if (seen[k]) throw duplicate_label(l[k], where);
    seen[k] = true;
    read(k, e, w);
  }
  for (Index k : wanted)
    if (!seen[k]) throw input_error("missing entry for '" + l[k] + "' in " + where);
}

}  // namespace detail

// --- category ------------------------------------------------------------

/// Identities are implicit and labelled `id_<object>`; composites are listed
/// for composable pairs of non-identity morphisms.
struct CategoryDoc {
  FinCategory category;
  Labels objects;
  Labels morphisms;  // identities first, as in FinCategory
  friend bool operator==(const CategoryDoc&, const CategoryDoc&) = default;
};

inline std::string identity_label(const std::string& object) { return "id_" + object; }

inline CategoryDoc read_category(const json& j, const std::string& where) {
  using namespace detail;
  CategoryDoc d;
  d.objects = label_list(field(j, "objects", where), where + ".objects");
  for (const auto& o : d.objects.names) d.morphisms.add(identity_label(o), where + ".morphisms");
  std::vector<Arrow> extra;
  const std::string mw = where + ".morphisms";
  std::size_t i = 0;
  for (const auto& e : array(field(j, "morphisms", where), mw)) {
    std::string w = at_index(mw, i++);
    d.morphisms.add(field_text(e, "label", w), mw);
    extra.push_back({d.objects.at(field_text(e, "src", w), w + ".src"), d.objects.at(field_text(e, "dst", w), w + ".dst")});
  }
  const std::size_t k = d.objects.size();
  d.category = make_category(k, extra, nullptr);
  const std::size_t n = d.category.morphism_count();
  const std::string cw = where + ".composites";
  i = 0;
  for (const auto& e : array(field(j, "composites", where), cw)) {
    std::string w = at_index(cw, i++);
    Index f = d.morphisms.at(field_text(e, "first", w), w + ".first");
    Index g = d.morphisms.at(field_text(e, "then", w), w + ".then");
    Index h = d.morphisms.at(field_text(e, "result", w), w + ".result");
    if (f < k || g < k) throw input_error(w + " lists a composite with an identity");
    if (!d.category.composable(g, f)) throw input_error(w + " lists a non-composable pair");
    if (d.category.table[g * n + f] != npos) throw input_error(w + " repeats a composite");
    d.category.table[g * n + f] = h;
  }
  for (Index g = k; g < n; ++g)
    for (Index f = k; f < n; ++f)
      if (d.category.composable(g, f) && d.category.table[g * n + f] == npos)
        throw input_error("missing composite of '" + d.morphisms[f] + "' then '" + d.morphisms[g] + "' in " + cw);
  return d;
}

inline json write_category(const CategoryDoc& d) {
  const auto& c = d.category;
  json j;
  j["objects"] = detail::label_json(d.objects);
  json ms = json::array();
  for (Index f = 0; f < c.morphism_count(); ++f)
    if (!c.is_identity(f))
      ms.push_back(json{{"label", d.morphisms[f]}, {"src", d.objects[c.src(f)]}, {"dst", d.objects[c.dst(f)]}});
  j["morphisms"] = ms;
  json cs = json::array();
  for (Index f = 0; f < c.morphism_count(); ++f)
    for (Index g = 0; g < c.morphism_count(); ++g)
      if (!c.is_identity(f) && !c.is_identity(g) && c.composable(g, f))
        cs.push_back(json{{"first", d.morphisms[f]}, {"then", d.morphisms[g]}, {"result", d.morphisms[c.compose(g, f)]}});
  j["composites"] = cs;
  return j;
}

/// Labels `o0, o1, ...` and `m<k>` for a bare category.
inline CategoryDoc label_category(const FinCategory& c, std::vector<std::string> objects = {},
                                  std::vector<std::string> morphisms = {}) {
  CategoryDoc d{c, {}, {}};
  if (objects.empty())
    for (Index o = 0; o < c.object_count; ++o) objects.push_back("o" + std::to_string(o));
  d.objects = Labels::of(std::move(objects));
  if (morphisms.empty())
    for (Index f = 0; f < c.morphism_count(); ++f)
      morphisms.push_back(c.is_identity(f) ? identity_label(d.objects[c.src(f)]) : "m" + std::to_string(f));
  d.morphisms = Labels::of(std::move(morphisms));
  return d;
}

// --- space and family ------------------------------------------------------

struct SpaceDoc {
  FinTopSpace space;
  Labels points;
  friend bool operator==(const SpaceDoc&, const SpaceDoc&) = default;
};

inline SpaceDoc read_space(const json& j, const std::string& where) {
  using namespace detail;
  SpaceDoc d;
  d.points = label_list(field(j, "points", where), where + ".points");
  if (d.points.size() > 63) throw input_error(where + " has more than 63 points");
  std::vector<std::uint64_t> opens;
  const std::string ow = where + ".opens";
  std::size_t i = 0;
  for (const auto& u : array(field(j, "opens", where), ow)) {
    std::string w = at_index(ow, i++);
    std::uint64_t mask = 0;
    std::size_t e = 0;
    for (const auto& p : array(u, w)) mask |= std::uint64_t{1} << d.points.at(text(p, at_index(w, e++)), w);
    opens.push_back(mask);
  }
  d.space = make_space(d.points.size(), std::move(opens));
  return d;
}

inline json write_space(const SpaceDoc& d) {
  json j;
  j["points"] = detail::label_json(d.points);
  json os = json::array();
  for (auto u : d.space.opens) {
    json o = json::array();
    for (Index x = 0; x < d.space.points; ++x)
      if (u >> x & 1u) o.push_back(d.points[x]);
    os.push_back(o);
  }
  j["opens"] = os;
  return j;
}

inline Labels default_points(std::size_t n) {
  std::vector<std::string> names;
  for (Index x = 0; x < n; ++x) names.push_back("p" + std::to_string(x));
  return Labels::of(std::move(names));
}

struct FamilyDoc {
  PointFamily family;
  Labels points;
  friend bool operator==(const FamilyDoc&, const FamilyDoc&) = default;
};

inline FamilyDoc read_family(const json& j, const std::string& where) {
  using namespace detail;
  FamilyDoc d;
  d.points = label_list(field(j, "points", where), where + ".points");
  const std::string fw = where + ".fibers";
  for (const auto& e : array(field(j, "fibers", where), fw))
    d.family.fibers.push_back(number(e, at_index(fw, d.family.fibers.size())));
  if (d.family.fibers.size() != d.points.size()) throw input_error(fw + " must have one entry per point");
  return d;
}

inline json write_family(const FamilyDoc& d) {
  json j;
  j["points"] = detail::label_json(d.points);
  j["fibers"] = detail::number_json(d.family.fibers);
  return j;
}

// --- basis and presheaf -------------------------------------------------

struct BasisDoc {
  BasisFunctor basis;
  CategoryDoc shape;
  Labels points;
  friend bool operator==(const BasisDoc&, const BasisDoc&) = default;
};

namespace detail {

inline std::vector<Index> objects_of(const FinCategory& c) {
  std::vector<Index> out(c.object_count);
  std::iota(out.begin(), out.end(), Index{0});
  return out;
}

inline std::vector<Index> non_identities(const FinCategory& c) {
  std::vector<Index> out;
  for (Index f = 0; f < c.morphism_count(); ++f)
    if (!c.is_identity(f)) out.push_back(f);
  return out;
}

inline std::vector<std::size_t> size_row(const json& j, std::size_t expect, const std::string& where) {
  std::vector<std::size_t> out;
  for (const auto& e : array(j, where)) out.push_back(number(e, at_index(where, out.size())));
  if (out.size() != expect) throw input_error(where + " must have " + std::to_string(expect) + " entries");
  return out;
}

}  // namespace detail

inline BasisDoc read_basis(const json& j, const std::string& where) {
  using namespace detail;
  BasisDoc d;
  d.points = label_list(field(j, "points", where), where + ".points");
  d.shape = read_category(field(j, "shape", where), where + ".shape");
  auto& m = d.basis;
  m.points = d.points.size();
  m.shape = d.shape.category;
  const auto& c = m.shape;
  m.value.resize(c.object_count);
  keyed(field(j, "values", where), "object", d.shape.objects, objects_of(c), where + ".values",
        [&](Index b, const json& e, const std::string& w) {
          m.value[b].fibers = size_row(field(e, "fibers", w), m.points, w + ".fibers");
        });
  m.action.resize(c.morphism_count());
  for (Index o = 0; o < c.object_count; ++o) m.action[c.identity[o]] = identity_map(m.value[o]);
  keyed(field(j, "actions", where), "morphism", d.shape.morphisms, non_identities(c), where + ".actions",
        [&](Index g, const json& e, const std::string& w) {
          FamilyMap f{m.value[c.src(g)], m.value[c.dst(g)], {}};
          const std::string cw = w + ".components";
          const json& rows = array(field(e, "components", w), cw);
          if (rows.size() != m.points) throw input_error(cw + " must have one row per point");
          for (Index x = 0; x < m.points; ++x)
            f.component.push_back(number_row(rows[x], f.src.fibers[x], f.dst.fibers[x], at_index(cw, x)));
          m.action[g] = std::move(f);
        });
  return d;
}

inline json write_basis(const BasisDoc& d) {
  const auto& m = d.basis;
  const auto& c = m.shape;
  json j;
  j["points"] = detail::label_json(d.points);
  j["shape"] = write_category(d.shape);
  json vs = json::array();
  for (Index b = 0; b < c.object_count; ++b)
    vs.push_back(json{{"object", d.shape.objects[b]}, {"fibers", detail::number_json(m.value[b].fibers)}});
  j["values"] = vs;
  json as = json::array();
  for (Index g : detail::non_identities(c)) {
    json rows = json::array();
    for (const auto& row : m.action[g].component) rows.push_back(detail::number_json(row));
    as.push_back(json{{"morphism", d.shape.morphisms[g]}, {"components", rows}});
  }
  j["actions"] = as;
  return j;
}

/// Contravariant Set-valued functor; `map` of g : a → b sends P(b) to P(a).
struct PresheafDoc {
  SetValuedFunctor presheaf;
  CategoryDoc shape;
  friend bool operator==(const PresheafDoc& a, const PresheafDoc& b) {
    return a.shape == b.shape && a.presheaf.value == b.presheaf.value && a.presheaf.action == b.presheaf.action;
  }
};

inline PresheafDoc read_presheaf(const json& j, const std::string& where) {
  using namespace detail;
  PresheafDoc d;
  d.shape = read_category(field(j, "shape", where), where + ".shape");
  auto& p = d.presheaf;
  p.shape = d.shape.category;
  p.variance = Variance::contravariant;
  const auto& c = p.shape;
  p.value.resize(c.object_count);
  keyed(field(j, "values", where), "object", d.shape.objects, objects_of(c), where + ".values",
        [&](Index b, const json& e, const std::string& w) { p.value[b] = number(field(e, "size", w), w + ".size"); });
  p.action.resize(c.morphism_count());
  for (Index o = 0; o < c.object_count; ++o) {
    p.action[c.identity[o]].resize(p.value[o]);
    std::iota(p.action[c.identity[o]].begin(), p.action[c.identity[o]].end(), Index{0});
  }
  keyed(field(j, "actions", where), "morphism", d.shape.morphisms, non_identities(c), where + ".actions",
        [&](Index g, const json& e, const std::string& w) {
          p.action[g] = number_row(field(e, "map", w), p.value[c.dst(g)], p.value[c.src(g)], w + ".map");
        });
  return d;
}

inline json write_presheaf(const PresheafDoc& d) {
  const auto& p = d.presheaf;
  json j;
  j["shape"] = write_category(d.shape);
  json vs = json::array();
  for (Index b = 0; b < p.shape.object_count; ++b) vs.push_back(json{{"object", d.shape.objects[b]}, {"size", p.value[b]}});
  j["values"] = vs;
  json as = json::array();
  for (Index g : detail::non_identities(p.shape))
    as.push_back(json{{"morphism", d.shape.morphisms[g]}, {"map", detail::number_json(p.action[g])}});
  j["actions"] = as;
  return j;
}

// --- group action ------------------------------------------------------------

struct GroupActionDoc {
  GroupAction action;
  CategoryDoc group;
  SpaceDoc space;
  friend bool operator==(const GroupActionDoc& a, const GroupActionDoc& b) {
    return a.group == b.group && a.space == b.space && a.action.act == b.action.act;
  }
};

inline GroupActionDoc read_group_action(const json& j, const std::string& where) {
  using namespace detail;
  GroupActionDoc d;
  d.group = read_category(field(j, "group", where), where + ".group");
  d.space = read_space(field(j, "space", where), where + ".space");
  auto& a = d.action;
  a.group = d.group.category;
  a.space = d.space.space;
  const std::size_t n = a.space.points;
  a.act.assign(a.group.morphism_count(), {});
  for (Index g = 0; g < a.group.morphism_count(); ++g)
    if (a.group.is_identity(g)) {
      a.act[g].resize(n);
      std::iota(a.act[g].begin(), a.act[g].end(), Index{0});
    }
  keyed(field(j, "actions", where), "element", d.group.morphisms, non_identities(a.group), where + ".actions",
        [&](Index g, const json& e, const std::string& w) {
          a.act[g] = resolve_row(field(e, "images", w), d.space.points, n, w + ".images");
        });
  return d;
}

inline json write_group_action(const GroupActionDoc& d) {
  json j;
  j["group"] = write_category(d.group);
  j["space"] = write_space(d.space);
  json as = json::array();
  for (Index g : detail::non_identities(d.action.group)) {
    json row = json::array();
    for (Index y : d.action.act[g]) row.push_back(d.space.points[y]);
    as.push_back(json{{"element", d.group.morphisms[g]}, {"images", row}});
  }
  j["actions"] = as;
  return j;
}

// --- maps ----------------------------------------------------------------

using Endpoint = std::variant<SpaceDoc, BasisDoc>;

inline const Labels& points_of(const Endpoint& e) {
  return std::visit([](const auto& d) -> const Labels& { return d.points; }, e);
}

/// A point map between two spaces or two bases; the liftings of a map of
/// bases are left to the checker.
struct MapDoc {
  Endpoint source;
  Endpoint target;
  std::vector<Index> point_map;
  friend bool operator==(const MapDoc&, const MapDoc&) = default;
};

inline Endpoint read_endpoint(const json& j, const std::string& where) {
  const std::string kind = detail::field_text(j, "kind", where);
  if (kind == "space") return read_space(j, where);
  if (kind == "basis") return read_basis(j, where);
  throw input_error(where + ".kind must be \"space\" or \"basis\"");
}

inline json write_endpoint(const Endpoint& e) {
  json j;
  json body;
  if (const auto* s = std::get_if<SpaceDoc>(&e)) {
    j["kind"] = "space";
    body = write_space(*s);
  } else {
    j["kind"] = "basis";
    body = write_basis(std::get<BasisDoc>(e));
  }
  for (auto& [k, v] : body.items()) j[k] = v;
  return j;
}

inline MapDoc read_map(const json& j, const std::string& where) {
  MapDoc d;
  d.source = read_endpoint(detail::field(j, "source", where), where + ".source");
  d.target = read_endpoint(detail::field(j, "target", where), where + ".target");
  if (d.source.index() != d.target.index()) throw input_error(where + " mixes a space and a basis");
  d.point_map = detail::resolve_row(detail::field(j, "point_map", where), points_of(d.target), points_of(d.source).size(),
                                    where + ".point_map");
  return d;
}

inline json write_map(const MapDoc& d) {
  json j;
  j["source"] = write_endpoint(d.source);
  j["target"] = write_endpoint(d.target);
  json row = json::array();
  for (Index y : d.point_map) row.push_back(points_of(d.target)[y]);
  j["point_map"] = row;
  return j;
}

// --- documents -----------------------------------------------------------

using Document = std::variant<CategoryDoc, BasisDoc, SpaceDoc, GroupActionDoc, MapDoc, PresheafDoc, FamilyDoc>;

inline const char* kind_name(const Document& d) {
  static constexpr const char* names[] = {"category", "basis", "space", "group-action", "map", "presheaf", "family"};
  return names[d.index()];
}

namespace detail {

inline std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

}  // namespace detail

inline Document parse(std::string_view text) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    auto [line, column] = detail::line_column(text, e.byte);
    std::string what = e.what();
    if (auto p = what.find("syntax error"); p != std::string::npos) what = what.substr(p);
    throw syntax_error(line, column, what);
  }
  const std::string schema = detail::field_text(j, "schema", "document");
  if (schema != schema_version) throw input_error("unsupported schema '" + schema + "'");
  const std::string kind = detail::field_text(j, "kind", "document");
  if (kind == "category") return read_category(j, kind);
  if (kind == "basis") return read_basis(j, kind);
  if (kind == "space") return read_space(j, kind);
  if (kind == "group-action") return read_group_action(j, kind);
  if (kind == "map") return read_map(j, kind);
  if (kind == "presheaf") return read_presheaf(j, kind);
  if (kind == "family") return read_family(j, kind);
  throw input_error("unknown document kind '" + kind + "'");
}

inline std::string serialize(const Document& d) {
  json j;
  j["schema"] = schema_version;
  j["kind"] = kind_name(d);
  json body = std::visit(
      [](const auto& x) -> json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, CategoryDoc>) return write_category(x);
        else if constexpr (std::is_same_v<T, BasisDoc>) return write_basis(x);
        else if constexpr (std::is_same_v<T, SpaceDoc>) return write_space(x);
        else if constexpr (std::is_same_v<T, GroupActionDoc>) return write_group_action(x);
        else if constexpr (std::is_same_v<T, MapDoc>) return write_map(x);
        else if constexpr (std::is_same_v<T, PresheafDoc>) return write_presheaf(x);
        else return write_family(x);
      },
      d);
  for (auto& [k, v] : body.items()) j[k] = v;
  return j.dump(2) + "\n";
}

/// Laws of the parsed structure (category axioms, functoriality, open sets,
/// action laws); reference and shape errors are caught by `parse`.
inline Report validate(const Document& d) {
  return std::visit(
      [](const auto& x) -> Report {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, CategoryDoc>) return validate_category(x.category);
        else if constexpr (std::is_same_v<T, BasisDoc>) return check_basis(x.basis);
        else if constexpr (std::is_same_v<T, SpaceDoc>) return validate_space(x.space);
        else if constexpr (std::is_same_v<T, GroupActionDoc>) return validate_action(x.action);
        else if constexpr (std::is_same_v<T, MapDoc>) {
          Report r = std::visit([](const auto& e) { return validate(Document{e}); }, x.source);
          if (r.ok()) r = std::visit([](const auto& e) { return validate(Document{e}); }, x.target);
          return r;
        } else if constexpr (std::is_same_v<T, PresheafDoc>) {
          Report r = validate_category(x.presheaf.shape);
          return r.ok() ? check_functor(x.presheaf) : r;
        } else {
          return Report{};
        }
      },
      d);
}

// --- graph export ----------------------------------------------------------

namespace detail {

inline std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch == '\n' ? ' ' : ch;
  }
  return out + "\"";
}

}  // namespace detail

/// Objects as nodes and every morphism, identities included, as an edge.
/// `notes[o]`, when given, is appended to the node label.
inline std::string to_dot(const CategoryDoc& d, const std::string& name, const std::vector<std::string>& notes = {}) {
  std::ostringstream out;
  out << "digraph " << detail::quote(name) << " {\n";
  for (Index o = 0; o < d.category.object_count; ++o) {
    out << "  " << detail::quote(d.objects[o]);
    if (o < notes.size()) out << " [label=" << detail::quote(d.objects[o] + " | " + notes[o]) << "]";
    out << ";\n";
  }
  for (Index f = 0; f < d.category.morphism_count(); ++f)
    out << "  " << detail::quote(d.objects[d.category.src(f)]) << " -> " << detail::quote(d.objects[d.category.dst(f)])
        << " [label=" << detail::quote(d.morphisms[f]) << "];\n";
  out << "}\n";
  return out.str();
}

/// The basis shape with each object annotated by its covering sieves,
/// written as lists of member morphisms.
inline std::string to_dot(const BasisDoc& d, const Budget& budget = {}) {
  GeneratedTopology t = generate_topology(d.basis, budget);
  std::vector<std::string> notes;
  for (Index u = 0; u < d.basis.shape.object_count; ++u) {
    std::string note = "covers:";
    for (const auto& s : t.covers[u]) {
      note += " {";
      for (Index i = 0; i < s.members.size(); ++i) note += (i ? "," : "") + d.shape.morphisms[s.members[i]];
      note += "}";
    }
    notes.push_back(note);
  }
  return to_dot(d.shape, "site", notes);
}

// --- result documents ----------------------------------------------------

/// `{a,b}` for a set of labelled points.
inline std::string set_label(const Labels& points, std::uint64_t mask) {
  std::string out = "{";
  bool first = true;
  for (Index x = 0; x < points.size(); ++x)
    if (mask >> x & 1u) {
      out += (first ? "" : ",") + points[x];
      first = false;
    }
  return out + "}";
}

inline std::string pair_label(const std::string& a, const std::string& b) { return "(" + a + "," + b + ")"; }

/// Identities get `id_<object>`; every other morphism gets `name(f)`.
template <class Name>
CategoryDoc name_category(const FinCategory& c, Labels objects, Name name) {
  std::vector<std::string> ms;
  for (Index f = 0; f < c.morphism_count(); ++f)
    ms.push_back(c.is_identity(f) ? identity_label(objects[c.src(f)]) : name(f));
  return CategoryDoc{c, std::move(objects), Labels::of(std::move(ms))};
}

inline BasisDoc sigma_doc(const SpaceDoc& s) {
  Ionad x = sigma(s.space);
  std::vector<std::string> opens;
  for (auto u : s.space.opens) opens.push_back(set_label(s.points, u));
  Labels objects = Labels::of(opens);
  CategoryDoc shape = name_category(x.basis.shape, objects, [&](Index f) {
    return opens[x.basis.shape.src(f)] + "->" + opens[x.basis.shape.dst(f)];
  });
  return BasisDoc{std::move(x.basis), std::move(shape), s.points};
}

inline SpaceDoc lambda_doc(const BasisDoc& b, const Budget& budget = {}) {
  return SpaceDoc{lambda(make_ionad(b.basis), budget), b.points};
}

/// Points and basis objects are the objects of C; basis morphisms keep C's labels.
inline BasisDoc alexandroff_doc(const CategoryDoc& c) {
  Ionad x = alexandroff(c.category);
  CategoryDoc shape{x.basis.shape, c.objects, c.morphisms};
  return BasisDoc{std::move(x.basis), std::move(shape), c.objects};
}

inline BasisDoc equivariant_doc(const GroupActionDoc& a) {
  EquivariantBasis e = equivariant_full(a.action);
  const auto& c = e.ionad.basis.shape;
  std::vector<std::string> opens;
  for (auto u : a.space.space.opens) opens.push_back(set_label(a.space.points, u));
  CategoryDoc shape = name_category(c, Labels::of(opens), [&](Index f) {
    return a.group.morphisms[e.element[f]] + ":" + opens[c.src(f)] + "->" + opens[c.dst(f)];
  });
  return BasisDoc{std::move(e.ionad.basis), std::move(shape), a.space.points};
}

/// `x->y#k`, k counting the non-identity morphisms x → y.
inline CategoryDoc label_by_endpoints(const FinCategory& c, Labels objects) {
  std::map<std::pair<Index, Index>, std::size_t> seen;
  std::vector<std::string> names(c.morphism_count());
  for (Index f = 0; f < c.morphism_count(); ++f)
    if (!c.is_identity(f))
      names[f] = objects[c.src(f)] + "->" + objects[c.dst(f)] + "#" + std::to_string(seen[{c.src(f), c.dst(f)}]++);
  return name_category(c, std::move(objects), [&](Index f) { return names[f]; });
}

inline CategoryDoc spec_cat_doc(const BasisDoc& b, const Budget& budget = {}) {
  return label_by_endpoints(specialisation_category(make_ionad(b.basis), budget).category, b.points);
}

/// Objects are named by their point maps, `[y0,y1,...]#k` with k counting the
/// liftings of that point map.
inline CategoryDoc hom_cat_doc(const BasisDoc& x, const BasisDoc& y, const Budget& budget = {}) {
  auto ix = std::make_shared<const Ionad>(make_ionad(x.basis));
  auto iy = std::make_shared<const Ionad>(make_ionad(y.basis));
  HomCategory h = hom_category(ix, iy, budget);
  std::map<std::vector<Index>, std::size_t> seen;
  std::vector<std::string> names;
  for (const auto& m : h.objects) {
    std::string n = "[";
    for (Index p = 0; p < m->point_map.size(); ++p) n += (p ? "," : "") + y.points[m->point_map[p]];
    names.push_back(n + "]#" + std::to_string(seen[m->point_map]++));
  }
  return label_by_endpoints(h.category, Labels::of(std::move(names)));
}

inline BasisDoc product_doc(const BasisDoc& a, const BasisDoc& b) {
  ProductWitness p = product(std::make_shared<const Ionad>(make_ionad(a.basis)),
                             std::make_shared<const Ionad>(make_ionad(b.basis)));
  std::vector<std::string> points, objects;
  for (Index x = 0; x < a.points.size(); ++x)
    for (Index y = 0; y < b.points.size(); ++y) points.push_back(pair_label(a.points[x], b.points[y]));
  for (Index u = 0; u < a.shape.objects.size(); ++u)
    for (Index v = 0; v < b.shape.objects.size(); ++v) objects.push_back(pair_label(a.shape.objects[u], b.shape.objects[v]));
  const std::size_t nb = b.shape.morphisms.size();
  CategoryDoc shape = name_category(p.product->basis.shape, Labels::of(std::move(objects)), [&](Index f) {
    return pair_label(a.shape.morphisms[f / nb], b.shape.morphisms[f % nb]);
  });
  return BasisDoc{p.product->basis, std::move(shape), Labels::of(std::move(points))};
}

/// Labels of summand k are prefixed with `in<k>.`.
inline BasisDoc coproduct_doc(const std::vector<BasisDoc>& xs, const Budget& budget = {}) {
  std::vector<IonadPtr> ionads;
  for (const auto& x : xs) ionads.push_back(std::make_shared<const Ionad>(make_ionad(x.basis)));
  CoproductWitness w = coproduct(ionads, budget);
  std::vector<std::string> points, objects, morphisms;
  for (Index k = 0; k < xs.size(); ++k) {
    const std::string tag = "in" + std::to_string(k) + ".";
    for (const auto& n : xs[k].points.names) points.push_back(tag + n);
    for (const auto& n : xs[k].shape.objects.names) objects.push_back(tag + n);
    for (const auto& n : xs[k].shape.morphisms.names) morphisms.push_back(tag + n);
  }
  CategoryDoc shape = name_category(w.ionad->basis.shape, Labels::of(std::move(objects)),
                                    [&](Index f) { return morphisms[f]; });
  return BasisDoc{w.ionad->basis, std::move(shape), Labels::of(std::move(points))};
}

inline BasisDoc tensor_doc(const CategoryDoc& c, const BasisDoc& x) {
  Ionad t = tensor(c.category, make_ionad(x.basis));
  std::vector<std::string> points, objects;
  for (Index a = 0; a < c.objects.size(); ++a)
    for (Index p = 0; p < x.points.size(); ++p) points.push_back(pair_label(c.objects[a], x.points[p]));
  for (Index a = 0; a < c.objects.size(); ++a)
    for (Index u = 0; u < x.shape.objects.size(); ++u) objects.push_back(pair_label(c.objects[a], x.shape.objects[u]));
  const std::size_t nb = x.shape.morphisms.size();
  CategoryDoc shape = name_category(t.basis.shape, Labels::of(std::move(objects)), [&](Index f) {
    return pair_label(c.morphisms[f / nb], x.shape.morphisms[f % nb]);
  });
  return BasisDoc{std::move(t.basis), std::move(shape), Labels::of(std::move(points))};
}

/// Points are the morphisms of the specialisation category, labelled as in
/// `spec_cat_doc`; basis objects are the basis morphisms of X.
inline BasisDoc cotensor_doc(const BasisDoc& x, const Budget& budget = {}) {
  CotensorWitness w = cotensor_arrow(std::make_shared<const Ionad>(make_ionad(x.basis)), budget);
  CategoryDoc v = label_by_endpoints(w.specialisation.category, x.points);
  const auto& ms = x.shape.morphisms;
  const auto& c = w.shape.category;
  CategoryDoc shape = name_category(c, x.shape.morphisms, [&](Index f) {
    const auto [u, t] = w.shape.squares[f];
    return pair_label(ms[u], ms[t]) + ":" + ms[c.src(f)] + "->" + ms[c.dst(f)];
  });
  return BasisDoc{w.ionad->basis, std::move(shape), v.morphisms};
}

}  // namespace ionad::io
