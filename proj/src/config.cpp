#include "gpcm/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace gpcm {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

KeyValueConfig KeyValueConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  KeyValueConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": expected 'key = value'");
    cfg.entries_[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
  }
  return cfg;
}

void KeyValueConfig::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write config file: " + path);
  for (const auto& [k, v] : entries_) out << k << " = " << v << "\n";
}

std::optional<std::string> KeyValueConfig::get_string(const std::string& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::optional<double> KeyValueConfig::get_double(const std::string& key) const {
  auto s = get_string(key);
  if (!s) return std::nullopt;
  size_t pos = 0;
  const double v = std::stod(*s, &pos);
  if (pos != s->size()) throw std::runtime_error("config key " + key + ": not a number");
  return v;
}

std::optional<long> KeyValueConfig::get_int(const std::string& key) const {
  auto s = get_string(key);
  if (!s) return std::nullopt;
  size_t pos = 0;
  const long v = std::stol(*s, &pos);
  if (pos != s->size()) throw std::runtime_error("config key " + key + ": not an integer");
  return v;
}

std::optional<Eigen::VectorXd> KeyValueConfig::get_vector(const std::string& key) const {
  auto s = get_string(key);
  if (!s) return std::nullopt;
  std::istringstream in(*s);
  std::vector<double> vals;
  double v;
  while (in >> v) vals.push_back(v);
  if (!in.eof()) throw std::runtime_error("config key " + key + ": bad vector entry");
  Eigen::VectorXd out(static_cast<Eigen::Index>(vals.size()));
  for (size_t i = 0; i < vals.size(); ++i) out(static_cast<Eigen::Index>(i)) = vals[i];
  return out;
}

std::optional<Eigen::MatrixXd> KeyValueConfig::get_matrix(const std::string& key,
                                                          Eigen::Index rows,
                                                          Eigen::Index cols) const {
  auto flat = get_vector(key);
  if (!flat) return std::nullopt;
  if (flat->size() != rows * cols)
    throw std::runtime_error("config key " + key + ": expected " +
                             std::to_string(rows * cols) + " entries");
  Eigen::MatrixXd out(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) out(r, c) = (*flat)(r * cols + c);
  return out;
}

void KeyValueConfig::set_string(const std::string& key, const std::string& value) {
  entries_[key] = value;
}

void KeyValueConfig::set_double(const std::string& key, double value) {
  entries_[key] = format_double(value);
}

void KeyValueConfig::set_int(const std::string& key, long value) {
  entries_[key] = std::to_string(value);
}

void KeyValueConfig::set_vector(const std::string& key, const Eigen::VectorXd& value) {
  std::string s;
  for (Eigen::Index i = 0; i < value.size(); ++i) {
    if (i) s += ' ';
    s += format_double(value(i));
  }
  entries_[key] = s;
}

void KeyValueConfig::set_matrix(const std::string& key, const Eigen::MatrixXd& value) {
  std::string s;
  for (Eigen::Index r = 0; r < value.rows(); ++r)
    for (Eigen::Index c = 0; c < value.cols(); ++c) {
      if (r || c) s += ' ';
      s += format_double(value(r, c));
    }
  entries_[key] = s;
}

}  // namespace gpcm
