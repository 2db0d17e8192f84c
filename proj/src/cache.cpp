#include "mvmom/cache.hpp"

#include <unistd.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

namespace mvmom {

RecurrenceCache::RecurrenceCache(std::filesystem::path dir)
    : dir_(std::move(dir)) {
  if (!dir_.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) dir_.clear();  // unusable directory: degrade to no caching
  }
}

std::string RecurrenceCache::key_for(const CovarianceSpec& cov, int direction,
                                     const std::vector<long>& fixed) {
  std::string s = cov.fingerprint() + "|dir=" + std::to_string(direction + 1);
  s += "|fixed=";
  for (size_t i = 0; i < fixed.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(fixed[i]);
  }
  return s;
}

std::filesystem::path RecurrenceCache::file_for(const std::string& key) const {
  uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : key) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return dir_ / ("rec-" + std::string(buf) + ".json");
}

std::optional<Recurrence> RecurrenceCache::load(const std::string& key) const {
  if (!enabled()) return std::nullopt;
  std::ifstream in(file_for(key));
  if (!in) return std::nullopt;
  std::ostringstream body;
  body << in.rdbuf();
  try {
    Recurrence rec = Recurrence::from_json(body.str());
    // Guard against hash collisions and stale schema.
    if (key_for(rec.cov, rec.direction, rec.fixed) != key) return std::nullopt;
    return rec;
  } catch (const std::exception&) {
    return std::nullopt;  // corrupt entry: treat as a miss
  }
}

void RecurrenceCache::store(const std::string& key, const Recurrence& rec) const {
  if (!enabled()) return;
  const auto target = file_for(key);
  auto tmp = target;
  tmp += ".tmp" + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) return;
    out << rec.to_json();
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      return;
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) std::filesystem::remove(tmp, ec);
}

}  // namespace mvmom
