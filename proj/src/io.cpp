#include "clusterforge/io.hpp"

#include <cmath>
#include <cstdio>
#include <set>
#include <utility>

#include <json.hpp>

#include "clusterforge/errors.hpp"

namespace clusterforge {

namespace {

using nlohmann::json;

json parse_json(const std::string& text) {
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) throw FormatError("malformed JSON");
  if (!j.is_object()) throw FormatError("top-level JSON value must be an object");
  return j;
}

int require_int(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_integer())
    throw FormatError(std::string("missing or non-integer \"") + key + "\"");
  return j.at(key).get<int>();
}

double require_finite(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number())
    throw FormatError(std::string("missing or non-numeric \"") + key + "\"");
  const double v = j.at(key).get<double>();
  if (!std::isfinite(v)) throw FormatError(std::string("\"") + key + "\" must be finite");
  return v;
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

// Parses a row-major nested array. cols_hint disambiguates the column count
// of matrices with zero rows.
Matrix matrix_from_json(const json& j, const char* what, Eigen::Index cols_hint = 0) {
  if (!j.is_array()) throw FormatError(std::string(what) + " must be an array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  Eigen::Index cols = cols_hint;
  if (rows > 0) {
    if (!j[0].is_array()) throw FormatError(std::string(what) + " rows must be arrays");
    cols = static_cast<Eigen::Index>(j[0].size());
  }
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const json& row = j[static_cast<size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      throw FormatError(std::string(what) + " rows have inconsistent lengths");
    for (Eigen::Index c = 0; c < cols; ++c) {
      const json& cell = row[static_cast<size_t>(c)];
      if (!cell.is_number()) throw FormatError(std::string(what) + " entries must be numbers");
      m(i, c) = cell.get<double>();
      if (!std::isfinite(m(i, c)))
        throw FormatError(std::string(what) + " entries must be finite");
    }
  }
  return m;
}

std::vector<int> perm_from_json(const json& j, int n) {
  if (!j.is_array() || static_cast<int>(j.size()) != n)
    throw FormatError("\"perm\" must list every mode once");
  std::vector<int> perm(n);
  std::vector<bool> seen(n, false);
  for (int i = 0; i < n; ++i) {
    if (!j[i].is_number_integer()) throw FormatError("\"perm\" entries must be integers");
    const int target = j[i].get<int>() - 1;
    if (target < 0 || target >= n || seen[target])
      throw FormatError("\"perm\" is not a permutation of 1..n");
    seen[target] = true;
    perm[i] = target;
  }
  return perm;
}

json perm_to_json(const std::vector<int>& perm) {
  json out = json::array();
  for (int v : perm) out.push_back(v + 1);
  return out;
}

Matrix parse_weighted_entries(const json& j, const char* list_key, bool allow_diagonal) {
  const int n = require_int(j, "n");
  if (n < 1) throw FormatError("\"n\" must be at least 1");
  Matrix m = Matrix::Zero(n, n);
  if (!j.contains(list_key)) return m;
  const json& entries = j.at(list_key);
  if (!entries.is_array())
    throw FormatError(std::string("\"") + list_key + "\" must be an array");

  std::set<std::pair<int, int>> seen;
  for (const json& e : entries) {
    if (!e.is_object()) throw FormatError("entries must be objects");
    const int i = require_int(e, "i");
    const int k = require_int(e, "j");
    const double w = require_finite(e, "w");
    if (w == 0.0) throw FormatError("weights must be nonzero");
    if (i < 1 || i > n || k < 1 || k > n)
      throw FormatError("node index out of range");
    if (i == k) {
      if (!allow_diagonal)
        throw FormatError("self-loops are not allowed in a cluster graph");
    } else if (i > k) {
      throw FormatError(allow_diagonal ? "entries require i <= j" : "edges require i < j");
    }
    if (!seen.insert({i, k}).second)
      throw FormatError("duplicate entry for the pair (" + std::to_string(i) + ", " +
                        std::to_string(k) + ")");
    m(i - 1, k - 1) = w;
    m(k - 1, i - 1) = w;
  }
  return m;
}

json weighted_entries_to_json(const Matrix& m, bool include_diagonal) {
  json list = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = include_diagonal ? i : i + 1; j < m.cols(); ++j)
      if (m(i, j) != 0.0)
        list.push_back({{"i", static_cast<int>(i) + 1},
                        {"j", static_cast<int>(j) + 1},
                        {"w", m(i, j)}});
  return list;
}

}  // namespace

ClusterGraph parse_graph(const std::string& text) {
  const json j = parse_json(text);
  try {
    return ClusterGraph(parse_weighted_entries(j, "edges", /*allow_diagonal=*/false));
  } catch (const InvalidParam& e) {
    throw FormatError(e.what());
  }
}

std::string serialize_graph(const ClusterGraph& g) {
  json j;
  j["n"] = g.size();
  j["edges"] = weighted_entries_to_json(g.adjacency(), /*include_diagonal=*/false);
  return j.dump();
}

TmsGraph parse_tms(const std::string& text) {
  const json j = parse_json(text);
  try {
    return TmsGraph(parse_weighted_entries(j, "entries", /*allow_diagonal=*/true));
  } catch (const InvalidParam& e) {
    throw FormatError(e.what());
  }
}

std::string serialize_tms(const TmsGraph& g) {
  json j;
  j["n"] = g.size();
  j["entries"] = weighted_entries_to_json(g.matrix(), /*include_diagonal=*/true);
  return j.dump();
}

SynthesisFreedom parse_freedom(const std::string& text) {
  const json j = parse_json(text);
  if (!j.contains("B") || !j.contains("C")) throw FormatError("freedom needs \"B\" and \"C\"");
  SynthesisFreedom f;
  f.plus_factor = matrix_from_json(j.at("B"), "\"B\"");
  f.minus_factor = matrix_from_json(j.at("C"), "\"C\"");
  if (f.plus_factor.rows() != f.plus_factor.cols() ||
      f.minus_factor.rows() != f.minus_factor.cols())
    throw FormatError("freedom matrices must be square");
  return f;
}

std::string serialize_freedom(const SynthesisFreedom& f) {
  json j;
  j["B"] = matrix_to_json(f.plus_factor);
  j["C"] = matrix_to_json(f.minus_factor);
  return j.dump();
}

BipartitePartition parse_partition(const std::string& text) {
  const json j = parse_json(text);
  const int n = require_int(j, "n");
  const int l = require_int(j, "L");
  if (n < 1 || l < 0 || l > n) throw FormatError("invalid partition sizes");

  BipartitePartition p;
  p.perm = perm_from_json(j.contains("perm") ? j.at("perm") : json::array(), n);
  auto read_set = [&](const char* key) {
    if (!j.contains(key) || !j.at(key).is_array())
      throw FormatError(std::string("missing set \"") + key + "\"");
    std::vector<int> out;
    for (const json& e : j.at(key)) {
      if (!e.is_number_integer()) throw FormatError("set entries must be integers");
      const int v = e.get<int>() - 1;
      if (v < 0 || v >= n) throw FormatError("set entry out of range");
      out.push_back(v);
    }
    return out;
  };
  p.plus_set = read_set("plus_set");
  p.minus_set = read_set("minus_set");
  if (static_cast<int>(p.plus_set.size()) != l ||
      static_cast<int>(p.plus_set.size() + p.minus_set.size()) != n)
    throw FormatError("partition sets do not cover the nodes");
  p.cross_block = matrix_from_json(j.contains("A0") ? j.at("A0") : json::array(),
                                   "\"A0\"", n - l);
  if (p.cross_block.rows() != l || p.cross_block.cols() != n - l)
    throw FormatError("\"A0\" has the wrong shape");
  return p;
}

std::string serialize_partition(const BipartitePartition& p) {
  json j;
  j["n"] = p.size();
  j["L"] = p.plus_count();
  json plus = json::array(), minus = json::array();
  for (int v : p.plus_set) plus.push_back(v + 1);
  for (int v : p.minus_set) minus.push_back(v + 1);
  j["plus_set"] = std::move(plus);
  j["minus_set"] = std::move(minus);
  j["perm"] = perm_to_json(p.perm);
  j["A0"] = matrix_to_json(p.cross_block);
  return j.dump();
}

ExtractionResult parse_extraction(const std::string& text) {
  const json j = parse_json(text);
  if (!j.contains("perm")) throw FormatError("extraction needs \"perm\"");
  const int n = static_cast<int>(j.at("perm").size());
  const int l = require_int(j, "L");
  if (n < 1 || l < 0 || l > n) throw FormatError("invalid extraction sizes");

  ExtractionResult r;
  r.plus_count = l;
  r.perm = perm_from_json(j.at("perm"), n);
  r.cross_block = matrix_from_json(j.contains("A0") ? j.at("A0") : json::array(),
                                   "\"A0\"", n - l);
  r.plus_factor = matrix_from_json(j.contains("B") ? j.at("B") : json::array(), "\"B\"");
  r.minus_factor = matrix_from_json(j.contains("C") ? j.at("C") : json::array(),
                                    "\"C\"", n - l);
  if (r.cross_block.rows() != l || r.cross_block.cols() != n - l ||
      r.plus_factor.rows() != l || r.minus_factor.rows() != n - l)
    throw FormatError("extraction blocks have inconsistent shapes");
  return r;
}

std::string serialize_extraction(const ExtractionResult& r) {
  json j;
  j["perm"] = perm_to_json(r.perm);
  j["L"] = r.plus_count;
  j["A0"] = matrix_to_json(r.cross_block);
  j["B"] = matrix_to_json(r.plus_factor);
  j["C"] = matrix_to_json(r.minus_factor);
  return j.dump();
}

NullifierReport parse_report(const std::string& text) {
  const json j = parse_json(text);
  NullifierReport r;
  r.alpha = require_finite(j, "alpha");
  if (!j.contains("variances") || !j.at("variances").is_array())
    throw FormatError("report needs \"variances\"");
  for (const json& v : j.at("variances")) {
    if (!v.is_number()) throw FormatError("variances must be numbers");
    r.variances.push_back(v.get<double>());
  }
  r.max_variance = require_finite(j, "max_variance");
  r.covariance = matrix_from_json(j.contains("covariance") ? j.at("covariance") : json::array(),
                                  "\"covariance\"");
  return r;
}

std::string serialize_report(const NullifierReport& r) {
  json j;
  j["alpha"] = r.alpha;
  j["variances"] = r.variances;
  j["max_variance"] = r.max_variance;
  j["covariance"] = matrix_to_json(r.covariance);
  return j.dump();
}

std::string sweep_to_csv(const std::vector<NullifierReport>& reports,
                         const std::vector<int>& labels) {
  std::string out = "alpha,mode,variance\n";
  char buffer[64];
  for (const auto& r : reports) {
    for (size_t m = 0; m < r.variances.size(); ++m) {
      const int mode = labels.empty() ? static_cast<int>(m) + 1 : labels[m];
      std::snprintf(buffer, sizeof(buffer), "%.17g,%d,%.17g\n", r.alpha, mode,
                    r.variances[m]);
      out += buffer;
    }
  }
  return out;
}

}  // namespace clusterforge
