#pragma once

#include <Eigen/Dense>

#include <map>
#include <optional>
#include <string>

namespace gpcm {

// Flat `key = value` configuration file. Values are decimal ASCII; vectors
// and matrices are space-separated, matrices row-major. Lines starting with
// '#' and blank lines are ignored.
class KeyValueConfig {
public:
  KeyValueConfig() = default;

  static KeyValueConfig load(const std::string& path);
  void save(const std::string& path) const;

  bool has(const std::string& key) const { return entries_.count(key) > 0; }

  std::optional<std::string> get_string(const std::string& key) const;
  std::optional<double> get_double(const std::string& key) const;
  std::optional<long> get_int(const std::string& key) const;
  std::optional<Eigen::VectorXd> get_vector(const std::string& key) const;
  std::optional<Eigen::MatrixXd> get_matrix(const std::string& key,
                                            Eigen::Index rows,
                                            Eigen::Index cols) const;

  void set_string(const std::string& key, const std::string& value);
  void set_double(const std::string& key, double value);
  void set_int(const std::string& key, long value);
  void set_vector(const std::string& key, const Eigen::VectorXd& value);
  void set_matrix(const std::string& key, const Eigen::MatrixXd& value);

  const std::map<std::string, std::string>& entries() const { return entries_; }

private:
  std::map<std::string, std::string> entries_;
};

}  // namespace gpcm
