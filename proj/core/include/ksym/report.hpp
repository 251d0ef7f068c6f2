#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace ksym {

/// Flat `key = value` report, keys in insertion order, floats printed with
/// 17 significant digits. Used by solver and oracle outputs.
class Report {
  public:
    void put(const std::string& key, const std::string& value);
    void put(const std::string& key, double value);
    void put(const std::string& key, long value);
    void put(const std::string& key, int value) { put(key, static_cast<long>(value)); }
    void put(const std::string& key, std::size_t value) { put(key, static_cast<long>(value)); }

    const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

    void write(std::ostream& os) const;
    void write(const std::string& path) const;
    std::string str() const;

  private:
    std::vector<std::pair<std::string, std::string>> entries_;
};

}  // namespace ksym
