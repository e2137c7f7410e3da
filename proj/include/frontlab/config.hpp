#pragma once

#include <map>
#include <string>
#include <vector>

namespace frontlab {

/// Flat key-value configuration with [sections] and '#' comments. Values are
/// strings; typed getters parse on access. No embedded code.
class Config {
  public:
    static Config parse(const std::string& text);
    static Config parse_file(const std::string& path);

    bool has(const std::string& section, const std::string& key) const;
    std::string get(const std::string& section, const std::string& key,
                    const std::string& fallback) const;
    std::string require(const std::string& section, const std::string& key) const;
    double number(const std::string& section, const std::string& key, double fallback) const;
    int integer(const std::string& section, const std::string& key, int fallback) const;
    bool flag(const std::string& section, const std::string& key, bool fallback) const;
    std::vector<double> list(const std::string& section, const std::string& key) const;

    void set(const std::string& section, const std::string& key, const std::string& value);

    /// canonical text form (sorted sections and keys): the provenance blob
    /// embedded into every report
    std::string dump() const;

  private:
    std::map<std::string, std::map<std::string, std::string>> sections_;
};

}  // namespace frontlab
