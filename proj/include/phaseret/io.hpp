#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "phaseret/frames.hpp"
#include "phaseret/projection_retrieval.hpp"
#include "phaseret/vector_retrieval.hpp"

namespace phaseret {

using json = nlohmann::ordered_json;

enum class ArithmeticMode {
  Auto,   // keep literals as written: rationals exact, decimals and surds float
  Exact,  // reject any literal that is not rational
  Float,  // convert everything to float
};

/// A parsed input document: either a frame or a projection family.
struct Input {
  std::size_t dim = 0;
  std::optional<Frame> frame;
  std::optional<ProjectionFamily> family;
  std::string source;

  bool is_family() const { return family.has_value(); }
  bool is_exact() const;
};

/// {"dim": n, "vectors": [[s, ...], ...]} or
/// {"dim": n, "subspaces": [{"basis": [[s, ...], ...], "weight": w}, ...]}.
/// Scalars are integers, decimals, or strings ("p/q", "1-sqrt(2)", ...).
/// Every structural problem raises ParseError.
Input parse_input(const json& doc, ArithmeticMode mode = ArithmeticMode::Auto,
                  double tol = 1e-9);
Input load_input(const std::string& path, ArithmeticMode mode = ArithmeticMode::Auto,
                 double tol = 1e-9);

Scalar scalar_from_json(const json& j);

/// Rationals become strings ("3", "-1/2"); floats become numbers.
json to_json(const Scalar& s);
json to_json(const Vector& v);
json to_json(const std::vector<Vector>& vs);
json to_json(const Partition& p);

}  // namespace phaseret
