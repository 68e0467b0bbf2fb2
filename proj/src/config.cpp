#include "locaos/config.hpp"

#include <fstream>
#include <stdexcept>

#include "locaos/instance.hpp"
#include "locaos/text.hpp"

namespace locaos {

KeyValueConfig KeyValueConfig::parse(std::istream& in, const std::string& source) {
    KeyValueConfig cfg;
    std::string raw;
    int number = 0;
    while (std::getline(in, raw)) {
        ++number;
        const std::string line = trim(raw);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError(source + ": expected key = value", number);
        const std::string key = trim(line.substr(0, eq));
        if (key.empty()) throw ParseError(source + ": empty key", number);
        if (cfg.has(key)) throw ParseError(source + ": duplicate key '" + key + "'", number);
        cfg.values_[key] = trim(line.substr(eq + 1));
    }
    return cfg;
}

KeyValueConfig KeyValueConfig::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string());
    return parse(in, path.string());
}

void KeyValueConfig::set(const std::string& key, const std::string& value) { values_[key] = value; }

void KeyValueConfig::apply_override(const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || trim(assignment.substr(0, eq)).empty()) {
        throw std::invalid_argument("override '" + assignment + "' is not key=value");
    }
    set(trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

std::optional<std::string> KeyValueConfig::get(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    return it->second;
}

std::string KeyValueConfig::get_or(const std::string& key, const std::string& fallback) const {
    return get(key).value_or(fallback);
}

namespace {

template <typename T, typename Conv>
T convert(const std::string& key, const std::string& text, Conv conv) {
    try {
        std::size_t used = 0;
        const T v = conv(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("config key '" + key + "': cannot read '" + text + "'");
    }
}

}  // namespace

int KeyValueConfig::get_int(const std::string& key, int fallback) const {
    const auto v = get(key);
    if (!v) return fallback;
    return convert<int>(key, *v, [](const std::string& s, std::size_t* u) { return std::stoi(s, u); });
}

std::uint64_t KeyValueConfig::get_u64(const std::string& key, std::uint64_t fallback) const {
    const auto v = get(key);
    if (!v) return fallback;
    if (!v->empty() && (*v)[0] == '-') throw std::invalid_argument("config key '" + key + "' must be nonnegative");
    return convert<std::uint64_t>(key, *v, [](const std::string& s, std::size_t* u) { return std::stoull(s, u); });
}

double KeyValueConfig::get_double(const std::string& key, double fallback) const {
    const auto v = get(key);
    if (!v) return fallback;
    return convert<double>(key, *v, [](const std::string& s, std::size_t* u) { return std::stod(s, u); });
}

void KeyValueConfig::require_known(const std::set<std::string>& known) const {
    for (const auto& [key, _] : values_) {
        if (!known.count(key)) throw std::invalid_argument("unknown config key '" + key + "'");
    }
}

}  // namespace locaos
