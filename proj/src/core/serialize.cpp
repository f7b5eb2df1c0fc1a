#include "serialize.hpp"

#include <cmath>
#include <cstdio>
#include <nlohmann/json.hpp>

#include "errors.hpp"

namespace accompany {

namespace {

Vec vec_from_json(const json& j) {
  if (!j.is_array()) throw Error(ErrorCode::ParseError, "expected array of numbers");
  Vec v;
  for (const auto& x : j) v.push_back(x.get<double>());
  return v;
}

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

json to_json(const FiniteLaw& law) {
  json atoms = json::array();
  for (const Vec& a : law.atoms()) atoms.push_back(a);
  return json{{"atoms", atoms}, {"weights", law.weights()}};
}

FiniteLaw finite_law_from_json(const json& j, std::size_t expect_dim) {
  if (!j.contains("atoms") || !j.contains("weights"))
    throw Error(ErrorCode::ParseError, "finite law needs atoms and weights");
  std::vector<Vec> atoms;
  for (const auto& a : j.at("atoms")) atoms.push_back(vec_from_json(a));
  std::vector<double> weights = j.at("weights").get<std::vector<double>>();
  if (atoms.empty()) throw Error(ErrorCode::ParseError, "finite law needs atoms");
  std::size_t dim = expect_dim ? expect_dim : atoms.front().size();
  return FiniteLaw(dim, std::move(atoms), std::move(weights));
}

json to_json(const Scheme& s) {
  json factors = json::array();
  for (const MixtureFactor& f : s.factors)
    factors.push_back(json{{"p", f.p}, {"u", to_json(f.u_law)}, {"v", to_json(f.v_law)}});
  return json{{"tau", s.tau}, {"dimension", s.dimension}, {"factors", factors}};
}

Scheme scheme_from_json(const json& j) {
  Scheme s;
  s.tau = j.at("tau").get<double>();
  s.dimension = j.at("dimension").get<std::size_t>();
  for (const auto& fj : j.at("factors")) {
    s.factors.push_back({fj.at("p").get<double>(),
                         finite_law_from_json(fj.at("u"), s.dimension),
                         finite_law_from_json(fj.at("v"), s.dimension)});
  }
  return s;
}

Scheme scheme_from_string(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw Error(ErrorCode::ParseError, "malformed scheme JSON");
  return scheme_from_json(j);
}

json to_json(const ConvolutionLaw& law) {
  json components = json::array();
  for (const LawComponent& c : law.components()) {
    if (const auto* f = std::get_if<FiniteLaw>(&c)) {
      json cj = to_json(*f);
      cj["type"] = "finite";
      components.push_back(std::move(cj));
    } else if (const auto* cp = std::get_if<CompoundPoissonLaw>(&c)) {
      components.push_back(
          json{{"type", "compound_poisson"}, {"rate", cp->rate}, {"base", to_json(cp->base)}});
    } else {
      const auto& g = std::get<GaussianLaw>(c);
      json rows = json::array();
      for (std::size_t i = 0; i < g.dimension; ++i) {
        Vec row(g.cov.begin() + static_cast<std::ptrdiff_t>(i * g.dimension),
                g.cov.begin() + static_cast<std::ptrdiff_t>((i + 1) * g.dimension));
        rows.push_back(row);
      }
      components.push_back(json{{"type", "gaussian"}, {"mean", g.mean}, {"cov", rows}});
    }
  }
  return json{{"dimension", law.dim()}, {"components", components}};
}

ConvolutionLaw law_from_json(const json& j) {
  std::size_t dim = j.at("dimension").get<std::size_t>();
  ConvolutionLaw law(dim);
  for (const auto& cj : j.at("components")) {
    std::string type = cj.at("type").get<std::string>();
    if (type == "finite") {
      law.push(finite_law_from_json(cj, dim));
    } else if (type == "compound_poisson") {
      law.push(CompoundPoissonLaw(finite_law_from_json(cj.at("base"), dim),
                                  cj.at("rate").get<double>()));
    } else if (type == "gaussian") {
      Vec mean = vec_from_json(cj.at("mean"));
      Mat cov;
      for (const auto& row : cj.at("cov"))
        for (const auto& x : row) cov.push_back(x.get<double>());
      law.push(GaussianLaw(std::move(mean), std::move(cov)));
    } else {
      throw Error(ErrorCode::ParseError, "unknown component type " + type);
    }
  }
  return law;
}

json to_json(const Polyhedron& p) {
  json normals = json::array();
  json offsets = json::array();
  for (const HalfSpace& h : p.halfspaces()) {
    normals.push_back(h.normal);
    if (std::isfinite(h.offset))
      offsets.push_back(h.offset);
    else
      offsets.push_back("inf");
  }
  return json{{"normals", normals}, {"offsets", offsets}};
}

Polyhedron polyhedron_from_json(const json& j) {
  std::vector<Vec> normals;
  std::vector<double> offsets;
  for (const auto& n : j.at("normals")) normals.push_back(vec_from_json(n));
  for (const auto& b : j.at("offsets")) {
    if (b.is_string()) {
      if (b.get<std::string>() != "inf")
        throw Error(ErrorCode::ParseError, "offset must be a number or \"inf\"");
      offsets.push_back(kInfOffset);
    } else {
      offsets.push_back(b.get<double>());
    }
  }
  return make_polyhedron(normals, offsets);
}

json to_json(const DiscrepancyReport& r) {
  return json{{"kind", r.kind == DiscrepancyKind::Inflate ? "inflate" : "neighborhood"},
              {"lambda", r.lambda},
              {"value", r.value},
              {"conf_radius", r.confidence_radius},
              {"family_size", r.family_size},
              {"witness_index", r.witness_index}};
}

std::string csv_row(const DiscrepancyReport& r) {
  std::string kind = r.kind == DiscrepancyKind::Inflate ? "inflate" : "neighborhood";
  return kind + "," + format_double(r.lambda) + "," + format_double(r.value) + "," +
         format_double(r.confidence_radius) + "," + std::to_string(r.family_size) + "," +
         std::to_string(r.witness_index);
}

json to_json(const ProjectionMap& map) {
  json dirs = json::array();
  for (const Vec& t : map.directions()) dirs.push_back(t);
  return json{{"kind", map.kind() == MapKind::Coordinate ? "coordinate" : "orthogonal"},
              {"directions", dirs}};
}

ProjectionMap projection_map_from_json(const json& j) {
  std::vector<Vec> dirs;
  for (const auto& t : j.at("directions")) dirs.push_back(vec_from_json(t));
  std::string kind = j.at("kind").get<std::string>();
  if (kind != "coordinate" && kind != "orthogonal")
    throw Error(ErrorCode::ParseError, "unknown map kind " + kind);
  return ProjectionMap::build(dirs, kind == "coordinate" ? MapKind::Coordinate
                                                         : MapKind::Orthogonal);
}

}  // namespace accompany
