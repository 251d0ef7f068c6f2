#include "ksym/report.hpp"

#include <fstream>
#include <sstream>

#include "ksym/errors.hpp"
#include "ksym/grid.hpp"

namespace ksym {

void Report::put(const std::string& key, const std::string& value) {
    entries_.emplace_back(key, value);
}

void Report::put(const std::string& key, double value) { entries_.emplace_back(key, format_double(value)); }

void Report::put(const std::string& key, long value) {
    entries_.emplace_back(key, std::to_string(value));
}

void Report::write(std::ostream& os) const {
    for (const auto& [k, v] : entries_) os << k << " = " << v << "\n";
}

void Report::write(const std::string& path) const {
    std::ofstream os(path);
    if (!os) throw FormatError("cannot open '" + path + "' for writing");
    write(os);
}

std::string Report::str() const {
    std::ostringstream os;
    write(os);
    return os.str();
}

}  // namespace ksym
