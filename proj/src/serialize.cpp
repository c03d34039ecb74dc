#include "proxyvar/serialize.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>

#include "proxyvar/expr.hpp"

namespace proxyvar {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string join(const std::string& path, const std::string& key) { return path + "." + key; }

std::string index_path(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

const Json& field(const Json& obj, const std::string& path, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw SpecError(join(path, key), "missing field");
  return *it;
}

double number(const Json& obj, const std::string& path, const char* key, const Variables& vars) {
  const Json& v = field(obj, path, key);
  const std::string where = join(path, key);
  if (v.is_number()) {
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw SpecError(where, "must be finite");
    return d;
  }
  if (v.is_string()) {
    try {
      return evaluate_expression(v.get<std::string>(), vars);
    } catch (const ExpressionError& e) {
      throw SpecError(where, e.what());
    }
  }
  throw SpecError(where, "expected a number or an expression string");
}

int integer(const Json& obj, const std::string& path, const char* key, const Variables& vars) {
  const double d = number(obj, path, key, vars);
  if (d != std::floor(d) || std::abs(d) > 2e9) throw SpecError(join(path, key), "expected an integer");
  return static_cast<int>(d);
}

const Json& array(const Json& obj, const std::string& path, const char* key) {
  const Json& v = field(obj, path, key);
  if (!v.is_array()) throw SpecError(join(path, key), "expected an array");
  return v;
}

void check_keys(const Json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
  const std::set<std::string> keys(allowed.begin(), allowed.end());
  for (const auto& [k, _] : obj.items()) {
    if (!keys.count(k)) throw SpecError(join(path, k), "unknown field");
  }
}

Distribution parse(const Json& spec, const std::string& path, const Variables& vars) {
  if (!spec.is_object()) throw SpecError(path, "expected an object");
  const Json& fam = field(spec, path, "family");
  if (!fam.is_string()) throw SpecError(join(path, "family"), "expected a string");
  const std::string name = fam.get<std::string>();
  try {
    if (name == "bernoulli") {
      check_keys(spec, path, {"family", "mu"});
      return Distribution::bernoulli(number(spec, path, "mu", vars));
    }
    if (name == "binomial") {
      check_keys(spec, path, {"family", "n", "mu"});
      return Distribution::binomial(integer(spec, path, "n", vars), number(spec, path, "mu", vars));
    }
    if (name == "uniform") {
      check_keys(spec, path, {"family", "a", "b"});
      return Distribution::uniform(number(spec, path, "a", vars), number(spec, path, "b", vars));
    }
    if (name == "triangular") {
      check_keys(spec, path, {"family", "a", "b"});
      return Distribution::triangular(number(spec, path, "a", vars), number(spec, path, "b", vars));
    }
    if (name == "beta") {
      check_keys(spec, path, {"family", "alpha", "beta"});
      return Distribution::beta(number(spec, path, "alpha", vars), number(spec, path, "beta", vars));
    }
    if (name == "kumaraswamy") {
      check_keys(spec, path, {"family", "alpha", "beta"});
      return Distribution::kumaraswamy(number(spec, path, "alpha", vars), number(spec, path, "beta", vars));
    }
    if (name == "rademacher") {
      check_keys(spec, path, {"family"});
      return Distribution::rademacher();
    }
    if (name == "dirac_mixture") {
      check_keys(spec, path, {"family", "atoms"});
      const std::string apath = join(path, "atoms");
      std::vector<family::Atom> atoms;
      const Json& arr = array(spec, path, "atoms");
      for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string p = index_path(apath, i);
        if (!arr[i].is_object()) throw SpecError(p, "expected an object");
        check_keys(arr[i], p, {"location", "weight"});
        atoms.push_back({number(arr[i], p, "location", vars), number(arr[i], p, "weight", vars)});
      }
      return Distribution::dirac_mixture(std::move(atoms));
    }
    if (name == "mixture") {
      check_keys(spec, path, {"family", "components"});
      const std::string cpath = join(path, "components");
      std::vector<family::Component> comps;
      const Json& arr = array(spec, path, "components");
      for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string p = index_path(cpath, i);
        if (!arr[i].is_object()) throw SpecError(p, "expected an object");
        check_keys(arr[i], p, {"weight", "dist"});
        comps.push_back({number(arr[i], p, "weight", vars), parse(field(arr[i], p, "dist"), join(p, "dist"), vars)});
      }
      return Distribution::mixture(std::move(comps));
    }
    if (name == "affine") {
      check_keys(spec, path, {"family", "scale", "shift", "inner"});
      return Distribution::affine(number(spec, path, "scale", vars), number(spec, path, "shift", vars),
                                  parse(field(spec, path, "inner"), join(path, "inner"), vars));
    }
    if (name == "independent_sum") {
      check_keys(spec, path, {"family", "terms"});
      const std::string tpath = join(path, "terms");
      std::vector<Distribution> terms;
      const Json& arr = array(spec, path, "terms");
      for (std::size_t i = 0; i < arr.size(); ++i) terms.push_back(parse(arr[i], index_path(tpath, i), vars));
      return Distribution::independent_sum(std::move(terms));
    }
  } catch (const ParameterError& e) {
    throw SpecError(path, e.what());
  }
  throw SpecError(join(path, "family"), "unknown family '" + name + "'");
}

}  // namespace

Json to_json(const Distribution& dist) {
  Json j;
  j["family"] = std::string(dist.family_name());
  std::visit(Overloaded{
                 [&](const family::Bernoulli& b) { j["mu"] = b.mu; },
                 [&](const family::Binomial& b) {
                   j["n"] = b.n;
                   j["mu"] = b.mu;
                 },
                 [&](const family::Uniform& u) {
                   j["a"] = u.a;
                   j["b"] = u.b;
                 },
                 [&](const family::Triangular& t) {
                   j["a"] = t.a;
                   j["b"] = t.b;
                 },
                 [&](const family::Beta& b) {
                   j["alpha"] = b.alpha;
                   j["beta"] = b.beta;
                 },
                 [&](const family::Kumaraswamy& k) {
                   j["alpha"] = k.alpha;
                   j["beta"] = k.beta;
                 },
                 [&](const family::DiracMixture& d) {
                   Json atoms = Json::array();
                   for (const auto& a : d.atoms) atoms.push_back({{"location", a.location}, {"weight", a.weight}});
                   j["atoms"] = std::move(atoms);
                 },
                 [&](const family::Mixture& m) {
                   Json comps = Json::array();
                   for (const auto& c : m.components) comps.push_back({{"weight", c.weight}, {"dist", to_json(c.dist)}});
                   j["components"] = std::move(comps);
                 },
                 [&](const family::Affine& a) {
                   j["scale"] = a.scale;
                   j["shift"] = a.shift;
                   j["inner"] = to_json(a.inner);
                 },
                 [&](const family::IndependentSum& s) {
                   Json terms = Json::array();
                   for (const auto& t : s.terms) terms.push_back(to_json(t));
                   j["terms"] = std::move(terms);
                 },
             },
             dist.family());
  return j;
}

Distribution distribution_from_json(const Json& spec, const Variables& vars) { return parse(spec, "$", vars); }

std::string fingerprint(const Distribution& dist) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : to_json(dist).dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace proxyvar
