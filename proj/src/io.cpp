#include "odforge/io.hpp"

#include <algorithm>
#include <iomanip>
#include <json.hpp>
#include <set>
#include <sstream>

#include "odforge/error.hpp"

namespace odforge {

using Json = nlohmann::ordered_json;

namespace {

Json labels_json(const std::vector<BinaryVector>& labels) {
  Json out = Json::array();
  for (const auto& x : labels) out.push_back(x.bits());
  return out;
}

int labels_dim(const std::vector<BinaryVector>& labels) { return labels.empty() ? 0 : labels.front().dim(); }

}  // namespace

std::string render_json(const DesignDocument& doc) {
  const DesignMatrix& d = doc.design;
  const Provenance& pv = d.provenance();
  Json j;
  j["schema"] = kSchema;
  j["kind"] = kind_name(d.kind());
  j["params"] = {{"p", d.p()}, {"n", d.n()}, {"k", d.k()}};
  j["gram_scale"] = d.gram_scale();
  j["provenance"] = {{"family", pv.family},
                     {"r", pv.r},
                     {"case", pv.case_tag},
                     {"columns_dropped", pv.columns_dropped},
                     {"chain", pv.chain}};
  j["label_dims"] = {{"rows", labels_dim(d.rows())}, {"cols", labels_dim(d.cols())},
                     {"variables", labels_dim(d.variables())}};
  j["rows"] = labels_json(d.rows());
  j["cols"] = labels_json(d.cols());
  j["variables"] = labels_json(d.variables());
  Json entries = Json::array();
  for (std::size_t r = 0; r < d.p(); ++r) {
    for (std::size_t c = 0; c < d.n(); ++c) {
      const Monomial& m = d.at(r, c);
      if (m.is_zero()) continue;
      entries.push_back({{"row", r}, {"col", c}, {"var", m.var}, {"sign", static_cast<int>(m.sign)}, {"conj", m.conj}});
    }
  }
  j["entries"] = std::move(entries);
  j["verification"] = {{"symbolic", doc.verification.symbolic},
                       {"numeric", doc.verification.numeric},
                       {"seed", doc.verification.seed},
                       {"trials", doc.verification.trials}};
  return j.dump(1) + "\n";
}

namespace {

template <typename T>
T get(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("field '") + key + "': " + e.what());
  }
}

std::vector<BinaryVector> parse_labels(const Json& j, const char* key, int dim, std::size_t expected) {
  const auto raw = get<std::vector<std::uint32_t>>(j, key);
  if (raw.size() != expected) throw ParseError(std::string("'") + key + "' has the wrong length");
  if (expected > 0 && (dim < 1 || dim > BinaryVector::kMaxDim)) {
    throw ParseError(std::string("bad label dimension for '") + key + "'");
  }
  std::vector<BinaryVector> out;
  out.reserve(raw.size());
  for (std::uint32_t x : raw) {
    if (x & ~dim_mask(dim)) throw ParseError(std::string("label out of range in '") + key + "'");
    out.emplace_back(x, dim);
  }
  if (std::set<BinaryVector>(out.begin(), out.end()).size() != out.size()) {
    throw ParseError(std::string("duplicate label in '") + key + "'");
  }
  return out;
}

std::string check_status(const std::string& s) {
  if (s != "pass" && s != "fail" && s != "skipped") throw ParseError("unknown verification status '" + s + "'");
  return s;
}

}  // namespace

DesignDocument parse_json(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("document is not an object");
  if (get<std::string>(j, "schema") != kSchema) throw ParseError("unsupported schema");
  const std::string kind_text = get<std::string>(j, "kind");
  DesignKind kind;
  if (kind_text == "ROD") {
    kind = DesignKind::Rod;
  } else if (kind_text == "COD") {
    kind = DesignKind::Cod;
  } else {
    throw ParseError("unknown kind '" + kind_text + "'");
  }
  const Json& params = j.contains("params") ? j["params"] : Json();
  const auto p = get<std::size_t>(params, "p"), n = get<std::size_t>(params, "n"), k = get<std::size_t>(params, "k");
  const Json& dims = j.contains("label_dims") ? j["label_dims"] : Json();
  auto rows = parse_labels(j, "rows", get<int>(dims, "rows"), p);
  auto cols = parse_labels(j, "cols", get<int>(dims, "cols"), n);
  auto vars = parse_labels(j, "variables", get<int>(dims, "variables"), k);
  const int scale = get<int>(j, "gram_scale");
  if (scale < 1) throw ParseError("gram_scale must be positive");

  DesignDocument doc{DesignMatrix(kind, std::move(rows), std::move(cols), std::move(vars), scale), {}};
  DesignMatrix& d = doc.design;

  const Json& pv = j.contains("provenance") ? j["provenance"] : Json();
  d.provenance().family = get<std::string>(pv, "family");
  d.provenance().r = get<int>(pv, "r");
  d.provenance().case_tag = get<std::string>(pv, "case");
  d.provenance().columns_dropped = get<int>(pv, "columns_dropped");
  d.provenance().chain = get<std::vector<std::string>>(pv, "chain");

  if (!j.contains("entries") || !j["entries"].is_array()) throw ParseError("missing entry list");
  for (const Json& e : j["entries"]) {
    const auto r = get<std::size_t>(e, "row"), c = get<std::size_t>(e, "col");
    const auto var = get<std::int64_t>(e, "var");
    const int sign = get<int>(e, "sign");
    const bool conj = get<bool>(e, "conj");
    if (r >= p || c >= n) throw ParseError("entry position out of range");
    if (var < 0 || static_cast<std::size_t>(var) >= k) throw ParseError("entry variable out of range");
    if (sign != 1 && sign != -1) throw ParseError("entry sign must be 1 or -1");
    if (conj && kind == DesignKind::Rod) throw ParseError("conjugated entry in a real design");
    if (!d.at(r, c).is_zero()) throw ParseError("duplicate entry position");
    d.set(r, c, Monomial::of(static_cast<int>(var), sign, conj));
  }

  const Json& v = j.contains("verification") ? j["verification"] : Json();
  doc.verification.symbolic = check_status(get<std::string>(v, "symbolic"));
  doc.verification.numeric = check_status(get<std::string>(v, "numeric"));
  doc.verification.seed = get<std::uint64_t>(v, "seed");
  doc.verification.trials = get<int>(v, "trials");
  return doc;
}

std::string render_csv(const DesignMatrix& d) {
  std::ostringstream os;
  os << "row";
  for (const auto& c : d.cols()) os << "," << c.bits();
  os << "\n";
  for (std::size_t r = 0; r < d.p(); ++r) {
    os << d.rows()[r].bits();
    for (std::size_t c = 0; c < d.n(); ++c) os << "," << d.entry_text(r, c);
    os << "\n";
  }
  return os.str();
}

namespace {

std::string latex_entry(const DesignMatrix& d, std::size_t r, std::size_t c) {
  const Monomial& m = d.at(r, c);
  if (m.is_zero()) return "0";
  std::string s = m.sign < 0 ? "-" : "";
  s += d.kind() == DesignKind::Rod ? "x" : "z";
  s += "_{" + std::to_string(m.var) + "}";
  if (m.conj) s += "^{*}";
  return s;
}

}  // namespace

std::string render_latex(const DesignMatrix& d) {
  std::ostringstream os;
  os << "\\begin{pmatrix}\n";
  for (std::size_t r = 0; r < d.p(); ++r) {
    for (std::size_t c = 0; c < d.n(); ++c) os << (c ? " & " : "") << latex_entry(d, r, c);
    os << (r + 1 < d.p() ? " \\\\\n" : "\n");
  }
  os << "\\end{pmatrix}\n";
  return os.str();
}

std::string render_text(const DesignMatrix& d) {
  const std::size_t rows = std::min(d.p(), kTextCap), cols = std::min(d.n(), kTextCap);
  std::vector<std::size_t> width(cols, 1);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) width[c] = std::max(width[c], d.entry_text(r, c).size());
  }
  std::ostringstream os;
  os << kind_name(d.kind()) << " " << d.params().to_string();
  if (d.gram_scale() != 1) os << ", gram scale " << d.gram_scale();
  os << "\n";
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) os << (c ? " " : "") << std::setw(static_cast<int>(width[c])) << d.entry_text(r, c);
    os << (cols < d.n() ? " ..." : "") << "\n";
  }
  if (rows < d.p() || cols < d.n()) {
    os << "(showing " << rows << " of " << d.p() << " rows, " << cols << " of " << d.n() << " columns)\n";
  }
  return os.str();
}

std::string render_ssi_json(const SSIdentity& id, const IdentityCheck& check) {
  Json j;
  j["schema"] = kSchema;
  j["params"] = {{"p", id.p()}, {"n", id.n()}, {"k", id.k()}};
  Json mats = Json::array();
  for (std::size_t i = 0; i < id.k(); ++i) {
    Json m = Json::array();
    for (std::size_t r = 0; r < id.p(); ++r) {
      Json row = Json::array();
      for (std::size_t c = 0; c < id.n(); ++c) row.push_back(static_cast<int>(id.at(i, r, c)));
      m.push_back(std::move(row));
    }
    mats.push_back(std::move(m));
  }
  j["matrices"] = std::move(mats);
  j["check"] = {{"passed", check.passed}, {"trials", check.trials}};
  return j.dump(1) + "\n";
}

}  // namespace odforge
