// Command-line driver: reads labelled documents, runs one operation, prints a
// document or a report. Exit status 0 ok, 1 check failed, 2 input error,
// 3 budget exceeded.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ionad/io.hpp"

namespace {

using namespace ionad;
namespace io = ionad::io;

enum Exit : int { ok = 0, failed = 1, bad_input = 2, over_budget = 3, internal = 4 };

/// A mathematical check failed; the message is the witness.
struct check_failed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Settings {
  Budget budget;
  std::uint64_t seed = 0;
  std::size_t probes = 0;
};

io::Document load(const std::string& path) {
  std::string text;
  if (path == "-") {
    std::ostringstream s;
    s << std::cin.rdbuf();
    text = s.str();
  } else {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw input_error("cannot read '" + path + "'");
    std::ostringstream s;
    s << in.rdbuf();
    text = s.str();
  }
  try {
    return io::parse(text);
  } catch (const input_error& e) {
    throw input_error(path + ": " + e.what());
  }
}

void require_valid(const io::Document& d, const std::string& path) {
  Report r = io::validate(d);
  if (!r.ok()) throw input_error(path + ": invalid " + io::kind_name(d) + ": " + r.first());
}

template <class T>
T load_as(const std::string& path, const char* kind) {
  io::Document d = load(path);
  auto* t = std::get_if<T>(&d);
  if (!t) throw input_error(path + ": expected a " + std::string(kind) + " document, got " + io::kind_name(d));
  require_valid(d, path);
  return std::move(*t);
}

/// A basis document, or the basis Σ S of a space document.
io::BasisDoc load_basis(const std::string& path) {
  io::Document d = load(path);
  require_valid(d, path);
  if (auto* s = std::get_if<io::SpaceDoc>(&d)) return io::sigma_doc(*s);
  if (auto* b = std::get_if<io::BasisDoc>(&d)) return std::move(*b);
  throw input_error(path + ": expected a basis or space document, got " + io::kind_name(d));
}

/// A flat basis; a non-flat one is a failed check with its witness.
io::BasisDoc load_flat(const std::string& path) {
  io::BasisDoc b = load_basis(path);
  FlatnessReport f = flatness_check(b.basis);
  if (!f.ok) throw check_failed(path + ": basis is not flat at point " + b.points[f.point] + ": " + f.detail);
  return b;
}

std::string table(const std::vector<std::vector<Index>>& rows, const io::Labels& points) {
  std::string out;
  for (Index x = 0; x < rows.size(); ++x) {
    out += (x ? " " : "") + points[x] + ":[";
    for (Index i = 0; i < rows[x].size(); ++i) out += (i ? "," : "") + std::to_string(rows[x][i]);
    out += "]";
  }
  return out;
}

std::string members(const Sieve& s, const io::Labels& morphisms) {
  std::string out = "{";
  for (Index i = 0; i < s.members.size(); ++i) out += (i ? "," : "") + morphisms[s.members[i]];
  return out + "}";
}

/// Random families with fibers below `bound`; a fixed generator and plain
/// modular reduction so that reports agree across platforms.
std::vector<PointFamily> random_families(std::size_t points, std::size_t bound, const Settings& s) {
  std::mt19937_64 rng(s.seed);
  std::vector<PointFamily> out;
  for (std::size_t k = 0; k < s.probes; ++k) {
    PointFamily a;
    for (Index x = 0; x < points; ++x) a.fibers.push_back(static_cast<std::size_t>(rng() % bound));
    out.push_back(std::move(a));
  }
  return out;
}

// --- documents out ---------------------------------------------------------

int emit(const io::Document& d) {
  std::cout << io::serialize(d);
  return ok;
}

int cmd_sigma(const std::string& path) { return emit(io::sigma_doc(load_as<io::SpaceDoc>(path, "space"))); }

int cmd_lambda(const std::string& path, const Settings& s) { return emit(io::lambda_doc(load_flat(path), s.budget)); }

int cmd_alexandroff(const std::string& path) {
  return emit(io::alexandroff_doc(load_as<io::CategoryDoc>(path, "category")));
}

int cmd_equivariant(const std::string& path) {
  return emit(io::equivariant_doc(load_as<io::GroupActionDoc>(path, "group-action")));
}

int cmd_spec_cat(const std::string& path, const Settings& s) { return emit(io::spec_cat_doc(load_flat(path), s.budget)); }

int cmd_hom_cat(const std::string& x, const std::string& y, const Settings& s) {
  return emit(io::hom_cat_doc(load_flat(x), load_flat(y), s.budget));
}

int cmd_product(const std::string& x, const std::string& y) { return emit(io::product_doc(load_flat(x), load_flat(y))); }

int cmd_coproduct(const std::vector<std::string>& paths, const Settings& s) {
  std::vector<io::BasisDoc> xs;
  for (const auto& p : paths) xs.push_back(load_flat(p));
  return emit(io::coproduct_doc(xs, s.budget));
}

int cmd_tensor(const std::string& c, const std::string& x) {
  return emit(io::tensor_doc(load_as<io::CategoryDoc>(c, "category"), load_flat(x)));
}

int cmd_cotensor(const std::string& x, const Settings& s) { return emit(io::cotensor_doc(load_flat(x), s.budget)); }

int cmd_export_dot(const std::string& path, const Settings& s) {
  io::Document d = load(path);
  require_valid(d, path);
  if (auto* c = std::get_if<io::CategoryDoc>(&d)) {
    std::cout << io::to_dot(*c, "category");
    return ok;
  }
  io::BasisDoc b = load_flat(path);
  std::cout << io::to_dot(b, s.budget);
  return ok;
}

// --- checks and reports ----------------------------------------------------

int cmd_validate(const std::string& path) {
  io::Document d = load(path);
  Report r = io::validate(d);
  if (!r.ok()) {
    for (const auto& v : r.violations) std::cout << "invalid " << io::kind_name(d) << ": " << v << "\n";
    return failed;
  }
  std::cout << "ok: " << io::kind_name(d) << "\n";
  return ok;
}

int cmd_flatness(const std::string& path) {
  io::BasisDoc b = load_basis(path);
  FlatnessReport f = flatness_check(b.basis);
  if (f.ok) {
    std::cout << "flat\n";
    return ok;
  }
  static const char* names[] = {"", "nonempty", "common source", "equalising morphism"};
  std::cout << "not flat\npoint: " << b.points[f.point] << "\ncondition: " << f.condition << " ("
            << names[f.condition] << ")\n";
  for (const auto& [o, e] : f.elements) std::cout << "element: " << b.shape.objects[o] << "#" << e << "\n";
  for (Index g : f.arrows) std::cout << "morphism: " << b.shape.morphisms[g] << "\n";
  return failed;
}

/// Both documents must live over the same labelled points.
io::FamilyDoc load_family_over(const std::string& path, const io::BasisDoc& b) {
  io::FamilyDoc a = load_as<io::FamilyDoc>(path, "family");
  if (!(a.points == b.points)) throw input_error(path + ": family points differ from the basis points");
  return a;
}

int cmd_interior(const std::string& basis, const std::string& family, const Settings& s) {
  io::BasisDoc b = load_flat(basis);
  io::FamilyDoc a = load_family_over(family, b);
  InteriorValue ia = interior_apply(b.basis, a.family, s.budget);
  std::cout << "fibers:";
  for (Index x = 0; x < b.points.size(); ++x) std::cout << " " << b.points[x] << "=" << ia.carrier.fibers[x];
  std::cout << "\n";
  for (Index x = 0; x < b.points.size(); ++x)
    for (Index k = 0; k < ia.carrier.fibers[x]; ++k) {
      const auto& w = ia.witnesses[x][k];
      std::cout << b.points[x] << "#" << k << " = [" << b.shape.objects[w.object] << ", "
                << table(ia.witness_map(x, k).component, b.points) << ", " << w.element << "]\n";
    }
  Report r = check_comonad_laws(b.basis, ia);
  std::size_t bound = 1;
  for (auto f : a.family.fibers) bound = std::max(bound, f + 1);
  for (const auto& probe : random_families(b.points.size(), bound, s)) {
    if (!r.ok()) break;
    r = check_comonad_laws(b.basis, interior_apply(b.basis, probe, s.budget));
    for (auto& v : r.violations) {
      std::string fib;
      for (auto f : probe.fibers) fib += (fib.empty() ? "" : ",") + std::to_string(f);
      v += " on probe family [" + fib + "]";
    }
  }
  if (!r.ok()) {
    std::cout << "comonad laws fail: " << r.first() << "\n";
    return failed;
  }
  std::cout << "comonad laws hold on the family and " << s.probes << " probes\n";
  return ok;
}

int cmd_opens_enumerate(const std::string& basis, const std::string& family, const Settings& s) {
  io::BasisDoc b = load_flat(basis);
  io::FamilyDoc a = load_family_over(family, b);
  auto cs = enumerate_coalgebra_structures(b.basis, a.family, nullptr, s.budget);
  std::cout << "coalgebra structures: " << cs.size() << "\n";
  for (Index k = 0; k < cs.size(); ++k)
    std::cout << "structure " << k << ": " << table(cs[k].structure.component, b.points) << "\n";
  return ok;
}

int cmd_site(const std::string& basis, const Settings& s) {
  io::BasisDoc b = load_flat(basis);
  GeneratedTopology t = generate_topology(b.basis, s.budget);
  for (Index u = 0; u < b.shape.objects.size(); ++u) {
    std::cout << b.shape.objects[u] << ": " << t.covers[u].size() << " of " << t.sieves[u].size()
              << " sieves cover\n";
    for (const auto& c : t.covers[u]) std::cout << "  " << members(c, b.shape.morphisms) << "\n";
  }
  return ok;
}

int cmd_sheaf_check(const std::string& basis, const std::string& presheaf, const Settings& s) {
  io::BasisDoc b = load_flat(basis);
  io::PresheafDoc p = load_as<io::PresheafDoc>(presheaf, "presheaf");
  if (!(p.shape == b.shape)) throw input_error(presheaf + ": presheaf shape differs from the basis shape");
  GeneratedTopology t = generate_topology(b.basis, s.budget);
  SheafReport r = sheaf_check(t, p.presheaf);
  if (r.ok) {
    std::cout << "sheaf\n";
    return ok;
  }
  std::cout << "not a sheaf\nobject: " << b.shape.objects[r.object]
            << "\nsieve: " << members(make_sieve(b.shape.category, r.object, r.sieve), b.shape.morphisms)
            << "\nreason: " << r.reason << "\n";
  return failed;
}

/// A point map of spaces is checked on opens; one of bases by its liftings.
struct MapCheck {
  bool continuous = false;
  std::string witness;
  std::size_t liftings = 0;
};

MapCheck check_map(const io::MapDoc& m, const Settings& s) {
  MapCheck out;
  const auto& tgt = io::points_of(m.target);
  if (const auto* sx = std::get_if<io::SpaceDoc>(&m.source)) {
    const auto& sy = std::get<io::SpaceDoc>(m.target);
    for (auto v : sy.space.opens) {
      std::uint64_t pre = 0;
      for (Index x = 0; x < m.point_map.size(); ++x)
        if (v >> m.point_map[x] & 1u) pre |= std::uint64_t{1} << x;
      if (!std::binary_search(sx->space.opens.begin(), sx->space.opens.end(), pre)) {
        out.witness = "preimage of open " + io::set_label(tgt, v) + " is " + io::set_label(sx->points, pre) +
                      ", which is not open";
        return out;
      }
    }
    auto ix = std::make_shared<const Ionad>(sigma(sx->space));
    auto iy = std::make_shared<const Ionad>(sigma(sy.space));
    ContinuousMap f = sigma_map(m.point_map, ix, sx->space, iy, sy.space);
    Report r = check_continuous(f);
    if (r.ok()) {
      r = check_comonad_morphism(to_comonad_morphism(f, random_families(sy.points.size(), 3, s), s.budget));
    }
    if (!r.ok()) throw std::logic_error("lifted map of spaces fails: " + r.first());
    out.continuous = true;
    out.liftings = 1;
    return out;
  }
  const auto& bx = std::get<io::BasisDoc>(m.source);
  const auto& by = std::get<io::BasisDoc>(m.target);
  for (Index v = 0; v < by.shape.objects.size(); ++v) {
    PointFamily carrier = pullback_family(m.point_map, by.basis.value[v]);
    if (enumerate_coalgebra_structures(bx.basis, carrier, nullptr, s.budget).empty()) {
      out.witness = "the inverse image of basis object " + by.shape.objects[v] + " carries no coalgebra structure";
      return out;
    }
  }
  auto ix = std::make_shared<const Ionad>(make_ionad(bx.basis));
  auto iy = std::make_shared<const Ionad>(make_ionad(by.basis));
  for (const auto& f : enumerate_continuous_maps(ix, iy, s.budget)) {
    if (f.point_map != m.point_map) continue;
    Report r = check_comonad_morphism(to_comonad_morphism(f, random_families(by.points.size(), 3, s), s.budget));
    if (!r.ok()) throw std::logic_error("enumerated map fails the comonad morphism axioms: " + r.first());
    ++out.liftings;
  }
  out.continuous = out.liftings > 0;
  if (!out.continuous) out.witness = "the inverse-image liftings admit no functorial choice";
  return out;
}

void require_flat_endpoints(const io::MapDoc& m, const std::string& path) {
  for (const auto* e : {&m.source, &m.target})
    if (const auto* b = std::get_if<io::BasisDoc>(e)) {
      FlatnessReport f = flatness_check(b->basis);
      if (!f.ok) throw check_failed(path + ": endpoint basis is not flat at point " + b->points[f.point] + ": " + f.detail);
    }
}

int cmd_map_check(const std::string& path, const Settings& s) {
  io::MapDoc m = load_as<io::MapDoc>(path, "map");
  require_flat_endpoints(m, path);
  MapCheck c = check_map(m, s);
  if (!c.continuous) {
    std::cout << "not continuous\nwitness: " << c.witness << "\n";
    return failed;
  }
  std::cout << "continuous\nliftings: " << c.liftings << "\n";
  return ok;
}

/// `second ∘ first`, both required to be continuous.
int cmd_compose(const std::string& first, const std::string& second, const Settings& s) {
  io::MapDoc f = load_as<io::MapDoc>(first, "map");
  io::MapDoc g = load_as<io::MapDoc>(second, "map");
  if (io::serialize(io::Document{std::visit([](const auto& e) { return io::Document{e}; }, f.target)}) !=
      io::serialize(io::Document{std::visit([](const auto& e) { return io::Document{e}; }, g.source)}))
    throw input_error("the target of '" + first + "' differs from the source of '" + second + "'");
  for (const auto& [m, path] : {std::pair{&f, first}, std::pair{&g, second}}) {
    require_flat_endpoints(*m, path);
    MapCheck c = check_map(*m, s);
    if (!c.continuous) {
      std::cout << "not continuous: " << path << "\nwitness: " << c.witness << "\n";
      return failed;
    }
  }
  io::MapDoc h{f.source, g.target, {}};
  for (Index y : f.point_map) h.point_map.push_back(g.point_map[y]);
  return emit(h);
}

int run(int argc, char** argv) {
  CLI::App app{"Finite ionads: checks, constructions and exports"};
  app.require_subcommand(1);
  app.fallthrough();
  Settings s;
  app.add_option("--budget-fibers", s.budget.interior_pairs, "coend pairs materialised per interior")
      ->capture_default_str();
  app.add_option("--budget-sieves", s.budget.max_sieve_arrows, "incoming morphisms per object for sieve enumeration")
      ->capture_default_str();
  app.add_option("--budget-enumeration", s.budget.enumeration, "candidates visited by brute-force searches")
      ->capture_default_str();
  app.add_option("--budget-points", s.budget.lambda_points, "largest point set for lambda")->capture_default_str();
  app.add_option("--seed", s.seed, "seed for randomized law probes")->capture_default_str();
  app.add_option("--probes", s.probes, "number of random probe families")->capture_default_str();

  std::string a, b;
  std::vector<std::string> many;
  std::function<int()> action;
  auto one = [&](const char* name, const char* help, const char* what, std::function<int()> f) {
    auto* c = app.add_subcommand(name, help);
    c->add_option("file", a, what)->required();
    c->callback([&action, f] { action = f; });
  };
  auto two = [&](const char* name, const char* help, const char* w1, const char* w2, std::function<int()> f) {
    auto* c = app.add_subcommand(name, help);
    c->add_option("first", a, w1)->required();
    c->add_option("second", b, w2)->required();
    c->callback([&action, f] { action = f; });
  };
  one("validate", "check a document's laws", "document", [&] { return cmd_validate(a); });
  one("flatness", "check that a basis is flat", "basis or space", [&] { return cmd_flatness(a); });
  two("interior", "interior of a family, with witnesses", "basis", "family", [&] { return cmd_interior(a, b, s); });
  two("opens-enumerate", "coalgebra structures on a family", "basis", "family",
      [&] { return cmd_opens_enumerate(a, b, s); });
  one("site", "covering sieves of the generated topology", "basis", [&] { return cmd_site(a, s); });
  two("sheaf-check", "check the sheaf condition", "basis", "presheaf", [&] { return cmd_sheaf_check(a, b, s); });
  one("sigma", "basis of opens of a space", "space", [&] { return cmd_sigma(a); });
  one("lambda", "space of opens of a basis", "basis", [&] { return cmd_lambda(a, s); });
  one("alexandroff", "Alexandroff basis of a category", "category", [&] { return cmd_alexandroff(a); });
  one("equivariant", "equivariant basis of a group action", "group-action", [&] { return cmd_equivariant(a); });
  one("spec-cat", "specialisation category", "basis", [&] { return cmd_spec_cat(a, s); });
  two("hom-cat", "category of continuous maps and specialisations", "source basis", "target basis",
      [&] { return cmd_hom_cat(a, b, s); });
  one("map-check", "check continuity of a map", "map", [&] { return cmd_map_check(a, s); });
  two("compose", "compose two maps, first then second", "first map", "second map",
      [&] { return cmd_compose(a, b, s); });
  two("product", "product basis", "basis", "basis", [&] { return cmd_product(a, b); });
  {
    auto* c = app.add_subcommand("coproduct", "coproduct basis");
    c->add_option("files", many, "bases")->required();
    c->callback([&] { action = [&] { return cmd_coproduct(many, s); }; });
  }
  two("tensor", "tensor of a basis by a category", "category", "basis", [&] { return cmd_tensor(a, b); });
  one("cotensor", "cotensor of a basis by the arrow category", "basis", [&] { return cmd_cotensor(a, s); });
  one("export-dot", "category or site as a graph", "category, basis or space", [&] { return cmd_export_dot(a, s); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : bad_input;
  }
  try {
    return action();
  } catch (const check_failed& e) {
    std::cout << "check failed: " << e.what() << "\n";
    return failed;
  } catch (const not_flat& e) {
    std::cout << "check failed: " << e.what() << "\n";
    return failed;
  } catch (const budget_exceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return over_budget;
  } catch (const input_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return bad_input;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return internal;
  }
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
