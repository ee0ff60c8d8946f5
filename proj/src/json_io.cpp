#include "hconv/json_io.hpp"

#include "hconv/parser.hpp"

namespace hconv {

namespace {

const nlohmann::json& field(const nlohmann::json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(where + ": missing key \"" + key + "\"");
  return *it;
}

Rational rational_of(const nlohmann::json& v, const std::string& where) {
  if (v.is_number_integer()) {
    return v.is_number_unsigned() ? Rational(Integer(std::to_string(v.get<std::uint64_t>())))
                                  : Rational(Integer(std::to_string(v.get<std::int64_t>())));
  }
  if (!v.is_string()) throw SchemaError(where + ": expected a rational string");
  try {
    return parse_rational(v.get<std::string>());
  } catch (const std::invalid_argument&) {
    throw SchemaError(where + ": malformed rational \"" + v.get<std::string>() + "\"");
  }
}

std::vector<Rational> rational_vector(const nlohmann::json& v, const std::string& where) {
  if (!v.is_array()) throw SchemaError(where + ": expected an array");
  std::vector<Rational> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(rational_of(v[i], where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

MultiIndex index_vector(const nlohmann::json& v, const std::string& where) {
  if (!v.is_array()) throw SchemaError(where + ": expected an array");
  std::vector<unsigned> out;
  for (const auto& e : v) {
    if (!e.is_number_unsigned() || e.get<std::uint64_t>() > 1000) {
      throw SchemaError(where + ": expected small nonnegative integers");
    }
    out.push_back(static_cast<unsigned>(e.get<std::uint64_t>()));
  }
  return MultiIndex(std::move(out));
}

Polynomial polynomial_of(const nlohmann::json& v, std::optional<std::size_t> dim,
                         const std::string& where) {
  if (!v.is_string()) throw SchemaError(where + ": expected a polynomial string");
  return parse_polynomial(v.get<std::string>(), dim);
}

void check_dim(std::optional<std::size_t> dim, std::size_t got, const std::string& where) {
  if (dim && *dim != got) {
    throw SchemaError(where + ": length " + std::to_string(got) + " conflicts with dim " +
                      std::to_string(*dim));
  }
}

}  // namespace

TemperedDistribution distribution_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw SchemaError("distribution: expected a JSON object");
  const auto& family = field(doc, "family", "distribution");
  if (!family.is_string()) throw SchemaError("distribution: \"family\" must be a string");
  std::optional<std::size_t> dim;
  if (auto it = doc.find("dim"); it != doc.end()) {
    if (!it->is_number_unsigned() || it->get<std::uint64_t>() == 0 ||
        it->get<std::uint64_t>() > kMaxVariable) {
      throw SchemaError("distribution: \"dim\" must be an integer in [1, " +
                        std::to_string(kMaxVariable) + "]");
    }
    dim = it->get<std::size_t>();
  }

  const std::string name = family.get<std::string>();
  if (name == "point_masses") {
    const auto& masses = field(doc, "masses", "point_masses");
    if (!masses.is_array() || masses.empty()) {
      throw SchemaError("point_masses: \"masses\" must be a nonempty array");
    }
    std::vector<PointMass> out;
    for (std::size_t i = 0; i < masses.size(); ++i) {
      const std::string where = "masses[" + std::to_string(i) + "]";
      const auto& m = masses[i];
      if (!m.is_object()) throw SchemaError(where + ": expected an object");
      PointMass pm;
      pm.coefficient = m.contains("coefficient")
                           ? rational_of(m["coefficient"], where + ".coefficient")
                           : Rational(1);
      pm.location = rational_vector(field(m, "location", where), where + ".location");
      check_dim(dim, pm.location.size(), where + ".location");
      if (!dim) dim = pm.location.size();
      pm.derivative = m.contains("derivative")
                          ? index_vector(m["derivative"], where + ".derivative")
                          : MultiIndex(pm.location.size());
      check_dim(dim, pm.derivative.size(), where + ".derivative");
      out.push_back(std::move(pm));
    }
    try {
      return TemperedDistribution::point_masses(std::move(out));
    } catch (const DomainError& e) {
      throw SchemaError(std::string("point_masses: ") + e.what());
    }
  }
  if (name == "polynomial_kernel") {
    return TemperedDistribution::polynomial_kernel(
        polynomial_of(field(doc, "polynomial", name), dim, name + ".polynomial"));
  }
  if (name == "gauss_poly_kernel") {
    std::vector<Rational> center;
    if (doc.contains("center")) {
      center = rational_vector(doc["center"], name + ".center");
      check_dim(dim, center.size(), name + ".center");
      if (!dim) dim = center.size();
    }
    Polynomial q = doc.contains("q") ? polynomial_of(doc["q"], dim, name + ".q")
                                     : Polynomial::constant(dim.value_or(1), 1);
    if (!dim) dim = q.dim();
    if (center.empty()) center.assign(*dim, Rational(0));
    const Rational rate = rational_of(field(doc, "rate", name), name + ".rate");
    if (rate <= 0) throw SchemaError(name + ".rate: must be positive");
    return TemperedDistribution::gauss_poly_kernel(GaussPoly(std::move(q), rate, std::move(center)));
  }
  throw SchemaError("distribution: unknown family \"" + name +
                    "\" (expected point_masses, polynomial_kernel or gauss_poly_kernel)");
}

TemperedDistribution parse_distribution(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(std::string("distribution JSON: ") + e.what());
  }
  return distribution_from_json(doc);
}

Json rational_array(std::span<const Rational> values) {
  Json out = Json::array();
  for (const auto& v : values) out.push_back(to_string(v));
  return out;
}

Json index_array(const MultiIndex& alpha) {
  Json out = Json::array();
  for (unsigned e : alpha.exponents()) out.push_back(e);
  return out;
}

Json to_json(const TemperedDistribution& lambda) {
  Json out;
  out["family"] = std::string(family_name(lambda.family()));
  out["dim"] = lambda.dim();
  std::visit(
      [&](const auto& family) {
        using T = std::decay_t<decltype(family)>;
        if constexpr (std::is_same_v<T, PointMasses>) {
          Json masses = Json::array();
          for (const auto& m : family.masses) {
            Json jm;
            jm["coefficient"] = to_string(m.coefficient);
            jm["location"] = rational_array(m.location);
            jm["derivative"] = index_array(m.derivative);
            masses.push_back(std::move(jm));
          }
          out["masses"] = std::move(masses);
        } else if constexpr (std::is_same_v<T, PolynomialKernel>) {
          out["polynomial"] = to_string(family.p);
        } else {
          out["q"] = to_string(family.g.q());
          out["rate"] = to_string(family.g.rate());
          out["center"] = rational_array(family.g.center());
        }
      },
      lambda.value());
  return out;
}

}  // namespace hconv
