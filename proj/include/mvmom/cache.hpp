#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "mvmom/recurrence.hpp"

namespace mvmom {

// Disk store for discovered recurrences, one JSON file per ray.  Writes are
// atomic (temp file + rename) so concurrent processes can share a directory.
class RecurrenceCache {
 public:
  // An empty directory path disables the store entirely.
  explicit RecurrenceCache(std::filesystem::path dir = {});

  static std::string key_for(const CovarianceSpec& cov, int direction,
                             const std::vector<long>& fixed);

  std::optional<Recurrence> load(const std::string& key) const;
  void store(const std::string& key, const Recurrence& rec) const;

  bool enabled() const { return !dir_.empty(); }
  const std::filesystem::path& directory() const { return dir_; }

 private:
  std::filesystem::path file_for(const std::string& key) const;
  std::filesystem::path dir_;
};

}  // namespace mvmom
