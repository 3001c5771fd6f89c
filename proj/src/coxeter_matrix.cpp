#include "coxlab/coxeter_matrix.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "coxlab/errors.hpp"

namespace coxlab {

std::uint32_t Order::value() const {
  if (!value_) throw std::logic_error("Order::value() on infinite order");
  return *value_;
}

std::string Order::to_string() const { return value_ ? std::to_string(*value_) : "inf"; }

std::strong_ordering operator<=>(const Order& a, const Order& b) {
  if (a.is_finite() && b.is_finite()) return a.value() <=> b.value();
  return a.is_infinite() <=> b.is_infinite();
}

namespace {

std::string pair_name(int i, int j) {
  return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

}  // namespace

CoxeterMatrix::CoxeterMatrix(std::vector<std::vector<Order>> m, std::vector<std::string> labels)
    : m_(std::move(m)), labels_(std::move(labels)) {
  const int n = static_cast<int>(m_.size());
  if (n == 0) throw InputError("rank must be at least 1");
  if (n > kMaxRank) throw InputError("rank " + std::to_string(n) + " exceeds supported maximum");
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(m_[i].size()) != n)
      throw InputError("row " + std::to_string(i + 1) + " has wrong length");
  }
  for (int i = 0; i < n; ++i) {
    if (m_[i][i] != Order(1)) throw InputError("diagonal entry " + pair_name(i, i) + " must be 1");
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (m_[i][j] != m_[j][i])
        throw InputError("matrix not symmetric at " + pair_name(i, j) + " vs " + pair_name(j, i));
      if (m_[i][j].is_finite() && m_[i][j].value() < 2)
        throw InputError("off-diagonal entry " + pair_name(i, j) + " must be >= 2 or infinity");
    }
  }
  if (!labels_.empty() && static_cast<int>(labels_.size()) != n)
    throw InputError("labels length does not match rank");
}

std::string CoxeterMatrix::label(int i) const {
  if (!labels_.empty()) return labels_[i];
  return "s" + std::to_string(i + 1);
}

CoxeterMatrix CoxeterMatrix::restrict_to(GeneratorSet subset) const {
  std::vector<int> idx;
  for (int i = 0; i < rank(); ++i)
    if (subset >> i & 1u) idx.push_back(i);
  std::vector<std::vector<Order>> sub(idx.size(), std::vector<Order>(idx.size()));
  std::vector<std::string> labels;
  for (std::size_t a = 0; a < idx.size(); ++a) {
    for (std::size_t b = 0; b < idx.size(); ++b) sub[a][b] = m_[idx[a]][idx[b]];
    labels.push_back(label(idx[a]));
  }
  return CoxeterMatrix(std::move(sub), std::move(labels));
}

std::uint32_t CoxeterMatrix::largest_finite_order() const {
  std::uint32_t best = 1;
  for (int i = 0; i < rank(); ++i)
    for (int j = 0; j < rank(); ++j)
      if (i != j && m_[i][j].is_finite()) best = std::max(best, m_[i][j].value());
  return best;
}

std::vector<std::vector<std::uint32_t>> CoxeterMatrix::codes() const {
  std::vector<std::vector<std::uint32_t>> out(rank(), std::vector<std::uint32_t>(rank()));
  for (int i = 0; i < rank(); ++i)
    for (int j = 0; j < rank(); ++j) out[i][j] = m_[i][j].code();
  return out;
}

std::string CoxeterMatrix::digest() const {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](std::uint64_t v) {
    for (int b = 0; b < 4; ++b) {
      h ^= (v >> (8 * b)) & 0xffu;
      h *= 1099511628211ull;
    }
  };
  mix(static_cast<std::uint64_t>(rank()));
  for (const auto& row : codes())
    for (auto c : row) mix(c);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

CoxeterMatrix triangle_matrix(Order a, Order b, Order c) {
  const Order one(1);
  return CoxeterMatrix({{one, a, c}, {a, one, b}, {c, b, one}});
}

namespace {

CoxeterMatrix parse_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("m")) throw InputError("JSON matrix needs an \"m\" field");
  const auto& rows = doc["m"];
  if (!rows.is_array()) throw InputError("\"m\" must be an array of rows");
  const int n = static_cast<int>(rows.size());
  if (doc.contains("rank")) {
    if (!doc["rank"].is_number_integer() || doc["rank"].get<long long>() != n)
      throw InputError("\"rank\" does not match the number of rows");
  }
  std::vector<std::vector<Order>> m(n);
  for (int i = 0; i < n; ++i) {
    if (!rows[i].is_array()) throw InputError("row " + std::to_string(i + 1) + " is not an array");
    for (const auto& v : rows[i]) {
      if (!v.is_number_integer() || v.get<long long>() < 0)
        throw InputError("row " + std::to_string(i + 1) + " holds a non-integer or negative entry");
      m[i].push_back(Order::from_code(v.get<std::uint32_t>()));
    }
  }
  std::vector<std::string> labels;
  if (doc.contains("labels")) labels = doc["labels"].get<std::vector<std::string>>();
  return CoxeterMatrix(std::move(m), std::move(labels));
}

CoxeterMatrix parse_lines(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int n = -1;
  std::vector<std::vector<Order>> m;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (n < 0) {
      if (first != "rank" || !(ls >> n) || n < 1)
        throw InputError("line format must start with \"rank n\" (n >= 1)");
      if (n > kMaxRank) throw InputError("rank exceeds supported maximum");
      m.assign(n, std::vector<Order>(n, Order(2)));
      for (int i = 0; i < n; ++i) m[i][i] = Order(1);
      continue;
    }
    long long i = 0, j = 0, v = 0;
    try {
      i = std::stoll(first);
    } catch (const std::exception&) {
      throw InputError("line " + std::to_string(lineno) + ": expected \"i j m\"");
    }
    if (!(ls >> j >> v)) throw InputError("line " + std::to_string(lineno) + ": expected \"i j m\"");
    if (i < 1 || j < 1 || i > n || j > n || i == j || v < 0)
      throw InputError("line " + std::to_string(lineno) + ": bad entry " + std::to_string(i) + " " +
                       std::to_string(j) + " " + std::to_string(v));
    Order o = Order::from_code(static_cast<std::uint32_t>(v));
    m[i - 1][j - 1] = o;
    m[j - 1][i - 1] = o;
  }
  if (n < 0) throw InputError("empty matrix document");
  return CoxeterMatrix(std::move(m));
}

}  // namespace

CoxeterMatrix parse_matrix(std::string_view text) {
  auto pos = text.find_first_not_of(" \t\r\n");
  if (pos == std::string_view::npos) throw InputError("empty matrix document");
  return text[pos] == '{' ? parse_json(text) : parse_lines(text);
}

CoxeterMatrix load_matrix(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InputError("cannot read " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_matrix(ss.str());
}

std::string to_json_text(const CoxeterMatrix& m) {
  nlohmann::json doc;
  doc["rank"] = m.rank();
  doc["m"] = m.codes();
  if (!m.labels().empty()) doc["labels"] = m.labels();
  return doc.dump();
}

}  // namespace coxlab
