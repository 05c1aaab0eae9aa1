#include "phaseret/io.hpp"

#include <fstream>
#include <sstream>

#include "phaseret/error.hpp"

namespace phaseret {

namespace {

Scalar apply_mode(const Scalar& s, ArithmeticMode mode) {
  switch (mode) {
    case ArithmeticMode::Auto: return s;
    case ArithmeticMode::Float: return Scalar(s.to_double());
    case ArithmeticMode::Exact:
      if (!s.is_exact()) throw ParseError("literal " + s.str() + " is not rational (--exact)");
      return s;
  }
  return s;
}

Vector vector_from_json(const json& j, std::size_t dim, ArithmeticMode mode, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected an array of scalars");
  if (j.size() != dim)
    throw ParseError(where + ": has " + std::to_string(j.size()) + " entries, expected " +
                     std::to_string(dim));
  Vector v(dim);
  for (std::size_t i = 0; i < dim; ++i) v[i] = apply_mode(scalar_from_json(j[i]), mode);
  return v;
}

}  // namespace

bool Input::is_exact() const {
  if (frame) return frame->is_exact();
  if (family) return family->is_exact();
  return true;
}

Scalar scalar_from_json(const json& j) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Scalar(j.get<std::uint64_t>());
    return Scalar(j.get<std::int64_t>());
  }
  if (j.is_number_float()) return Scalar(j.get<double>());
  if (j.is_string()) return parse_scalar(j.get<std::string>());
  throw ParseError("expected a scalar literal, got " + j.dump());
}

Input parse_input(const json& doc, ArithmeticMode mode, double tol) {
  if (!doc.is_object()) throw ParseError("input must be a JSON object");
  if (!doc.contains("dim") || !doc["dim"].is_number_integer() || doc["dim"].get<long long>() <= 0)
    throw ParseError("input needs a positive integer \"dim\"");
  Input in;
  in.dim = doc["dim"].get<std::size_t>();
  const bool has_vectors = doc.contains("vectors");
  const bool has_subspaces = doc.contains("subspaces");
  if (has_vectors == has_subspaces)
    throw ParseError("input needs exactly one of \"vectors\" or \"subspaces\"");
  try {
    if (has_vectors) {
      const json& vs = doc["vectors"];
      if (!vs.is_array() || vs.empty()) throw ParseError("\"vectors\" must be a non-empty array");
      std::vector<Vector> vectors;
      for (std::size_t i = 0; i < vs.size(); ++i)
        vectors.push_back(vector_from_json(vs[i], in.dim, mode, "vector " + std::to_string(i)));
      in.frame.emplace(in.dim, std::move(vectors), doc.value("label", std::string{}));
    } else {
      const json& ss = doc["subspaces"];
      if (!ss.is_array() || ss.empty()) throw ParseError("\"subspaces\" must be a non-empty array");
      std::vector<Subspace> members;
      std::vector<Scalar> weights;
      for (std::size_t i = 0; i < ss.size(); ++i) {
        const std::string where = "subspace " + std::to_string(i);
        if (!ss[i].is_object() || !ss[i].contains("basis") || !ss[i]["basis"].is_array() ||
            ss[i]["basis"].empty())
          throw ParseError(where + ": needs a non-empty \"basis\" array");
        std::vector<Vector> basis;
        for (std::size_t k = 0; k < ss[i]["basis"].size(); ++k)
          basis.push_back(vector_from_json(ss[i]["basis"][k], in.dim, mode,
                                           where + " basis vector " + std::to_string(k)));
        members.emplace_back(in.dim, std::move(basis), tol);
        weights.push_back(ss[i].contains("weight") ? apply_mode(scalar_from_json(ss[i]["weight"]), mode)
                                                   : Scalar(1));
      }
      in.family.emplace(in.dim, std::move(members), std::move(weights), tol);
    }
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
  return in;
}

Input load_input(const std::string& path, ArithmeticMode mode, double tol) {
  std::ifstream file(path);
  if (!file) throw ParseError("cannot read " + path);
  json doc;
  try {
    doc = json::parse(file);
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  Input in = parse_input(doc, mode, tol);
  in.source = path;
  return in;
}

json to_json(const Scalar& s) {
  if (s.is_exact()) return s.str();
  return s.to_double();
}

json to_json(const Vector& v) {
  json out = json::array();
  for (const Scalar& s : v) out.push_back(to_json(s));
  return out;
}

json to_json(const std::vector<Vector>& vs) {
  json out = json::array();
  for (const Vector& v : vs) out.push_back(to_json(v));
  return out;
}

json to_json(const Partition& p) {
  return json{{"I", p.indices()}, {"Ic", p.complement()}};
}

}  // namespace phaseret
