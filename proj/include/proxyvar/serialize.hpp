#pragma once

#include <string>

#include <json.hpp>

#include "proxyvar/distribution.hpp"
#include "proxyvar/errors.hpp"
#include "proxyvar/expr.hpp"

namespace proxyvar {

using Json = nlohmann::ordered_json;

Json to_json(const Distribution& dist);

// Parses the distribution schema: {"family": name, ...parameters}. Numeric
// fields accept numbers or expression strings, which may refer to vars.
// Throws SpecError naming the offending field path.
Distribution distribution_from_json(const Json& spec, const Variables& vars = {});

class SpecError : public Error {
 public:
  SpecError(std::string path, const std::string& message)
      : Error(path + ": " + message), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

// 16 hex digits of FNV-1a over the compact JSON form.
std::string fingerprint(const Distribution& dist);

// Shortest decimal form that round-trips to the same double.
std::string format_double(double v);

}  // namespace proxyvar
