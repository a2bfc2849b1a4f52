#include "resolvent/instance.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "resolvent/errors.hpp"

namespace resolvent {

int Instance::twist() const {
  int t = 0;
  for (int d : g_degrees) t += d;
  for (int d : f_degrees) t -= d;
  return t;
}

RawInstance parse_instance_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what(), e.byte);
  }
  RawInstance raw;
  try {
    raw.prime = j.value("prime", std::int64_t{101});
    raw.variables = j.at("variables").get<std::vector<std::string>>();
    raw.g = j.at("g").get<std::vector<std::string>>();
    raw.f = j.at("f").get<std::vector<std::string>>();
    raw.A = j.at("A").get<std::vector<std::vector<std::string>>>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad instance object: ") + e.what(), 0);
  }
  return raw;
}

RawInstance load_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open instance file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_instance_json(ss.str());
}

std::string instance_to_json(const RawInstance& raw) {
  nlohmann::ordered_json j;
  j["prime"] = raw.prime;
  j["variables"] = raw.variables;
  j["g"] = raw.g;
  j["f"] = raw.f;
  j["A"] = raw.A;
  return j.dump(2);
}

namespace {

Poly parse_field(const PolyCtxPtr& ctx, const std::string& text, const std::string& where) {
  try {
    return parse_poly(ctx, text);
  } catch (const ParseError& e) {
    throw ParseError(where + ": " + e.what(), e.offset());
  }
}

int positive_degree(const Poly& p, const std::string& where) {
  auto d = p.homogeneous_degree();
  if (!d || *d <= 0) throw ValidationError("NotHomogeneous", where + " must be homogeneous of positive degree");
  return *d;
}

}  // namespace

Instance validate_instance(const RawInstance& raw, int regularity_bound) {
  const std::size_t r = raw.f.size(), s = raw.g.size();
  if (s == 0 || r == 0) throw ValidationError("BadShape", "need at least one g and one f");
  if (r > s) throw ValidationError("BadShape", "r = " + std::to_string(r) + " exceeds s = " + std::to_string(s));
  if (raw.A.size() != r) throw ValidationError("BadShape", "A must have r = " + std::to_string(r) + " rows");
  for (const auto& row : raw.A)
    if (row.size() != s) throw ValidationError("BadShape", "every row of A must have s = " + std::to_string(s) + " entries");

  Instance inst;
  inst.ring = PolyCtx::make(raw.prime, raw.variables);
  for (std::size_t i = 0; i < s; ++i) inst.g.push_back(parse_field(inst.ring, raw.g[i], "g[" + std::to_string(i + 1) + "]"));
  for (std::size_t j = 0; j < r; ++j) inst.f.push_back(parse_field(inst.ring, raw.f[j], "f[" + std::to_string(j + 1) + "]"));
  inst.A.resize(r);
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t i = 0; i < s; ++i)
      inst.A[j].push_back(parse_field(inst.ring, raw.A[j][i],
                                      "A[" + std::to_string(j + 1) + "][" + std::to_string(i + 1) + "]"));

  for (std::size_t i = 0; i < s; ++i) inst.g_degrees.push_back(positive_degree(inst.g[i], "g_" + std::to_string(i + 1)));
  for (std::size_t j = 0; j < r; ++j) inst.f_degrees.push_back(positive_degree(inst.f[j], "f_" + std::to_string(j + 1)));

  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t i = 0; i < s; ++i) {
      const Poly& a = inst.A[j][i];
      const std::string at = "(" + std::to_string(j + 1) + "," + std::to_string(i + 1) + ")";
      if (!a.is_homogeneous()) throw ValidationError("NotHomogeneous", "a" + at + " is not homogeneous");
      if (a.constant_term() != 0)
        throw ValidationError("NotMinimal", "a" + at + " has a nonzero constant term (not in the maximal ideal)");
    }

  for (std::size_t j = 0; j < r; ++j) {
    Poly sum(inst.ring);
    for (std::size_t i = 0; i < s; ++i) sum += inst.A[j][i] * inst.g[i];
    if (sum != inst.f[j])
      throw ValidationError("IdentityMismatch", "f_" + std::to_string(j + 1) + " != sum_i a_{" + std::to_string(j + 1) +
                                                    ",i} g_i (difference " + (inst.f[j] - sum).to_string() + ")");
  }
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t i = 0; i < s; ++i) {
      const Poly& a = inst.A[j][i];
      if (a.is_zero()) continue;
      if (*a.homogeneous_degree() + inst.g_degrees[i] != inst.f_degrees[j])
        throw ValidationError("DegreeMismatch", "deg a(" + std::to_string(j + 1) + "," + std::to_string(i + 1) +
                                                    ") + deg g_" + std::to_string(i + 1) + " != deg f_" +
                                                    std::to_string(j + 1));
    }

  if (!is_regular_sequence(inst.f, inst.ring, regularity_bound))
    throw ValidationError("NotRegular", "f is not a regular sequence");
  if (!is_regular_sequence(inst.g, inst.ring, regularity_bound))
    throw ValidationError("NotRegular", "g is not a regular sequence");
  if (r == s) throw ValidationError("BadShape", "grade s - r must be at least 1");

  inst.R = QuotientCtx::make(inst.ring, inst.f);
  inst.R_mod_J = QuotientCtx::make(inst.ring, inst.g);
  return inst;
}

Poly minor(const Instance& inst, const std::vector<int>& rows, const std::vector<int>& cols) {
  if (rows.size() != cols.size()) throw Error("minor: row/column count mismatch");
  if (rows.empty()) return Poly::constant(inst.ring, 1);
  if (rows.size() == 1) return inst.A[rows[0]][cols[0]];
  // Expand along the first row.
  Poly det(inst.ring);
  std::vector<int> rest_rows(rows.begin() + 1, rows.end());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    const Poly& a = inst.A[rows[0]][cols[c]];
    if (a.is_zero()) continue;
    std::vector<int> rest_cols;
    for (std::size_t k = 0; k < cols.size(); ++k)
      if (k != c) rest_cols.push_back(cols[k]);
    Poly term = a * minor(inst, rest_rows, rest_cols);
    det = (c % 2 == 0) ? det + term : det - term;
  }
  return det;
}

RawInstance catalog_instance(int index) {
  switch (index) {
    case 1:
      return {101, {"x", "y"}, {"x", "y"}, {"x^2"}, {{"x", "0"}}};
    case 2:
      return {101, {"x", "y"}, {"x", "y"}, {"x^2 + y^2"}, {{"x", "y"}}};
    case 3:
      return {101, {"x", "y", "z"}, {"x", "y", "z"}, {"x^2 + z*y"}, {{"x", "z", "0"}}};
    case 4:
      return {101, {"x", "y", "z"}, {"x", "y", "z"}, {"x^2", "y^2 + x*z"}, {{"x", "0", "0"}, {"z", "y", "0"}}};
    default:
      throw Error("catalog has instances 1..4 only");
  }
}

}  // namespace resolvent
